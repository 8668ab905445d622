//! Independent brute-force and randomized verification: definitional grid
//! checks, sampled suprema, seeded point generators, and the
//! cross-validation / invariance suites.
//!
//! Determinism: every sample draws from its own generator derived from
//! `(seed, index)` by a counter, so reports are identical under a fixed
//! seed regardless of how the work is parallelized.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::autgroup::{
    act_left, act_right, diamond, random_disc_automorphism, star, TetraAutomorphism,
};
use crate::foliation::{
    beta_coords, canonical_radius, normalizing_automorphism, transport_left, transport_right,
};
use crate::membership::{self, classify_with, ClassifyOptions};
use crate::numerics::{psi, TetraPoint};
use crate::schwarz::{interpolant, phi_at, TangentTarget};
use crate::tol;
use crate::{Error, Result};

/// One recorded failure of a suite: the offending input with the verdicts
/// and margins needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub index: u64,
    pub point: TetraPoint,
    pub verdicts: Vec<(String, bool)>,
    pub margins: Vec<(String, f64)>,
    pub deviation: f64,
    pub note: String,
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub samples_run: usize,
    pub seed: u64,
    pub disagreements: Vec<Disagreement>,
    /// Cross-validation: largest inequality margin among disagreeing
    /// samples (0 when clean).  Invariance: largest residual-to-tolerance
    /// ratio.
    pub worst_deviation: f64,
    /// Worst raw residual per checked property.
    pub property_worst: Vec<(String, f64)>,
    /// Samples excluded from cross-checks because some margin fell inside
    /// the boundary band.
    pub borderline_skipped: usize,
    pub elapsed_secs: f64,
}

impl SuiteReport {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Per-sample generator: ChaCha stream selected by the sample counter.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Minimum of `|1 - x1 z - x2 w + x3 z w|` over the sampled closed bidisc.
pub fn def_min_modulus(x: &TetraPoint, n: usize) -> f64 {
    membership::by_definition(x, n).1
}

/// Maximum of `|Psi(., x)|` over `n` equispaced circle points: a lower
/// bound for the true supremum.
pub fn sup_psi_sampled(x: &TetraPoint, n: usize) -> Result<f64> {
    if membership::is_triangular(x) {
        return Err(Error::Precondition(
            "Psi(., x) is constant for a triangular point".into(),
        ));
    }
    if x.x2.norm() >= 1.0 {
        return Err(Error::Precondition(
            "pole of Psi(., x) lies in the closed disc".into(),
        ));
    }
    let mut best: f64 = 0.0;
    for k in 0..n {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
        best = best.max(psi(z, x)?.norm());
    }
    Ok(best)
}

/// Membership-by-construction sample: admissible beta coordinates with
/// `|beta1| + |beta2| <= 0.98` and `|lambda| <= 0.98`.
pub fn random_interior_point<R: Rng>(rng: &mut R) -> TetraPoint {
    let s = 0.98 * rng.gen::<f64>();
    let split = rng.gen::<f64>();
    let b1 = Complex64::from_polar(s * split, rng.gen::<f64>() * std::f64::consts::TAU);
    let b2 = Complex64::from_polar(s * (1.0 - split), rng.gen::<f64>() * std::f64::consts::TAU);
    let lam = Complex64::from_polar(
        0.98 * rng.gen::<f64>().sqrt(),
        rng.gen::<f64>() * std::f64::consts::TAU,
    );
    TetraPoint::new(b1 + b2.conj() * lam, b2 + b1.conj() * lam, lam)
}

/// Uniform sample from the box `{|Re|, |Im| <= 1.2}^3`: a mix of members
/// and non-members.
pub fn random_box_point<R: Rng>(rng: &mut R) -> TetraPoint {
    let coord = |rng: &mut R| {
        Complex64::new(rng.gen_range(-1.2..=1.2), rng.gen_range(-1.2..=1.2))
    };
    TetraPoint::new(coord(rng), coord(rng), coord(rng))
}

#[derive(Debug, Clone, Copy)]
pub struct CrossValidateOptions {
    pub count: usize,
    pub seed: u64,
    /// Samples with any margin inside this band are skipped and counted.
    pub boundary_band: f64,
    pub grid_size: usize,
    /// Definitional-oracle comparisons only apply to samples whose
    /// inequality margin exceeds this (grid resolution limits sharpness).
    pub grid_margin: f64,
    pub definition_tol: f64,
}

impl Default for CrossValidateOptions {
    fn default() -> Self {
        Self {
            count: 10_000,
            seed: 0,
            boundary_band: tol::BOUNDARY_BAND,
            grid_size: 200,
            grid_margin: tol::GRID_MARGIN,
            definition_tol: tol::DEFINITION_TOL,
        }
    }
}

/// Runs `classify` over seeded samples (half constructed members, half box
/// points) and records:
///
/// * samples outside the boundary band where the four closed-form
///   predicates disagree;
/// * samples the formulas place solidly inside (inequality margin beyond
///   the grid margin) where the definitional grid nevertheless found a
///   near-zero of the bilinear form.  The converse direction is not
///   checked: the grid oracle is one-sided, since a coarse grid can miss
///   the zeros of a non-member.
pub fn cross_validate(count: usize, seed: u64, boundary_band: f64) -> SuiteReport {
    cross_validate_with(&CrossValidateOptions {
        count,
        seed,
        boundary_band,
        ..CrossValidateOptions::default()
    })
}

pub fn cross_validate_with(opts: &CrossValidateOptions) -> SuiteReport {
    let start = std::time::Instant::now();
    let classify_opts = ClassifyOptions {
        grid_size: opts.grid_size,
        boundary_band: opts.boundary_band,
        definition_tol: opts.definition_tol,
    };
    let outcomes: Vec<(Option<Disagreement>, bool)> = (0..opts.count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(opts.seed, i);
            let x = if i % 2 == 0 {
                random_interior_point(&mut rng)
            } else {
                random_box_point(&mut rng)
            };
            let report = classify_with(&x, &classify_opts);
            if report.borderline {
                return (None, true);
            }
            let reference = report.inequality;
            let formulas_agree = report
                .formula_verdicts()
                .iter()
                .all(|&v| v == reference);
            let margin = report.margin_inequality;
            if !formulas_agree {
                return (
                    Some(Disagreement {
                        index: i,
                        point: x,
                        verdicts: report
                            .verdicts()
                            .iter()
                            .map(|(n, v)| (n.to_string(), *v))
                            .collect(),
                        margins: report
                            .margins()
                            .iter()
                            .map(|(n, m)| (n.to_string(), *m))
                            .collect(),
                        deviation: margin.abs(),
                        note: "closed-form predicates disagree".into(),
                    }),
                    false,
                );
            }
            if reference && margin > opts.grid_margin && report.min_modulus <= opts.definition_tol
            {
                return (
                    Some(Disagreement {
                        index: i,
                        point: x,
                        verdicts: report
                            .verdicts()
                            .iter()
                            .map(|(n, v)| (n.to_string(), *v))
                            .collect(),
                        margins: report
                            .margins()
                            .iter()
                            .map(|(n, m)| (n.to_string(), *m))
                            .collect(),
                        deviation: margin,
                        note: "definitional grid found a near-zero for a member".into(),
                    }),
                    false,
                );
            }
            (None, false)
        })
        .collect();
    let borderline_skipped = outcomes.iter().filter(|(_, b)| *b).count();
    let disagreements: Vec<Disagreement> =
        outcomes.into_iter().filter_map(|(d, _)| d).collect();
    let worst_deviation = disagreements
        .iter()
        .map(|d| d.deviation)
        .fold(0.0, f64::max);
    SuiteReport {
        suite: "cross-validate".into(),
        samples_run: opts.count,
        seed: opts.seed,
        disagreements,
        worst_deviation,
        property_worst: vec![],
        borderline_skipped,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InvarianceOptions {
    pub count: usize,
    pub seed: u64,
    /// Multiplies every property tolerance.
    pub tol_scale: f64,
}

impl Default for InvarianceOptions {
    fn default() -> Self {
        Self {
            count: 2_000,
            seed: 0,
            tol_scale: 1.0,
        }
    }
}

/// Property list of the invariance suite: name and residual tolerance.
const INVARIANCE_PROPERTIES: &[(&str, f64)] = &[
    ("psi-diamond-homomorphism", 1e-11),
    ("left-action-composition", 1e-11),
    ("right-action-composition", 1e-11),
    ("actions-commute", 1e-12),
    ("star-relation", 1e-12),
    ("flip-diamond-identity", 1e-12),
    ("triangular-invariance", 1e-9),
    ("membership-preservation", 1e-12),
    ("compose-associativity", 1e-10),
    ("canonical-radius-invariance", 1e-9),
    ("leaf-transport-right", 1e-10),
    ("leaf-transport-left", 1e-10),
    ("beta-round-trip", 1e-12),
    ("normal-params-reconstruction", 1e-10),
    ("normalization-to-axis", 1e-9),
    ("schwarz-interpolation", 1e-8),
];

/// Aggregates the group-action and foliation properties over seeded random
/// data.  A sample fails when some residual exceeds its tolerance; the
/// report lists the worst residual per property and the worst
/// residual-to-tolerance ratio overall.
pub fn invariance_suite(count: usize, seed: u64) -> SuiteReport {
    invariance_suite_with(&InvarianceOptions {
        count,
        seed,
        ..InvarianceOptions::default()
    })
}

pub fn invariance_suite_with(opts: &InvarianceOptions) -> SuiteReport {
    let start = std::time::Instant::now();
    let results: Vec<(Vec<f64>, Option<Disagreement>)> = (0..opts.count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(opts.seed, i);
            let residuals = invariance_residuals(&mut rng);
            let mut worst_ratio = 0.0;
            let mut worst_name = "";
            for (r, (name, tol)) in residuals.iter().zip(INVARIANCE_PROPERTIES) {
                let ratio = r / (tol * opts.tol_scale);
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst_name = name;
                }
            }
            let disagreement = if worst_ratio > 1.0 {
                Some(Disagreement {
                    index: i,
                    point: TetraPoint::ORIGIN,
                    verdicts: vec![],
                    margins: INVARIANCE_PROPERTIES
                        .iter()
                        .zip(&residuals)
                        .map(|((n, _), r)| (n.to_string(), *r))
                        .collect(),
                    deviation: worst_ratio,
                    note: format!("property '{worst_name}' exceeded tolerance"),
                })
            } else {
                None
            };
            (residuals, disagreement)
        })
        .collect();
    let mut property_worst: Vec<(String, f64)> = INVARIANCE_PROPERTIES
        .iter()
        .map(|(n, _)| (n.to_string(), 0.0))
        .collect();
    let mut worst_deviation: f64 = 0.0;
    for (residuals, _) in &results {
        for (k, r) in residuals.iter().enumerate() {
            if *r > property_worst[k].1 {
                property_worst[k].1 = *r;
            }
            let ratio = r / (INVARIANCE_PROPERTIES[k].1 * opts.tol_scale);
            worst_deviation = worst_deviation.max(ratio);
        }
    }
    let disagreements: Vec<Disagreement> =
        results.into_iter().filter_map(|(_, d)| d).collect();
    SuiteReport {
        suite: "invariance".into(),
        samples_run: opts.count,
        seed: opts.seed,
        disagreements,
        worst_deviation,
        property_worst,
        borderline_skipped: 0,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

/// Residuals of all invariance properties for one random draw, in the
/// order of `INVARIANCE_PROPERTIES`.  Unexpected errors surface as
/// infinite residuals.
fn invariance_residuals<R: Rng>(rng: &mut R) -> Vec<f64> {
    let inf = f64::INFINITY;
    let x = random_interior_point(rng);
    let y = random_interior_point(rng);
    let u = random_disc_automorphism(rng);
    let v = random_disc_automorphism(rng);
    let g = TetraAutomorphism::random(rng);
    let h = TetraAutomorphism::random(rng);
    let k = TetraAutomorphism::random(rng);
    let z = Complex64::from_polar(
        0.95 * rng.gen::<f64>().sqrt(),
        rng.gen::<f64>() * std::f64::consts::TAU,
    );
    let lam = Complex64::from_polar(
        0.95 * rng.gen::<f64>().sqrt(),
        rng.gen::<f64>() * std::f64::consts::TAU,
    );

    let mut out = Vec::with_capacity(INVARIANCE_PROPERTIES.len());

    // psi-diamond-homomorphism
    out.push(
        (|| {
            let xy = diamond(&x, &y).ok()?;
            let lhs = psi(z, &xy).ok()?;
            let rhs = psi(psi(z, &y).ok()?, &x).ok()?;
            Some((lhs - rhs).norm())
        })()
        .unwrap_or(inf),
    );

    // left-action-composition
    out.push(
        (|| {
            let nested = act_left(&u, &act_left(&v, &x).ok()?).ok()?;
            let direct = act_left(&u.compose(&v), &x).ok()?;
            Some(nested.max_abs_diff(&direct))
        })()
        .unwrap_or(inf),
    );

    // right-action-composition
    out.push(
        (|| {
            let nested = act_right(&act_right(&x, &u).ok()?, &v).ok()?;
            let direct = act_right(&x, &u.compose(&v)).ok()?;
            Some(nested.max_abs_diff(&direct))
        })()
        .unwrap_or(inf),
    );

    // actions-commute
    out.push(
        (|| {
            let a = act_left(&u, &act_right(&x, &v).ok()?).ok()?;
            let b = act_right(&act_left(&u, &x).ok()?, &v).ok()?;
            Some(a.max_abs_diff(&b))
        })()
        .unwrap_or(inf),
    );

    // star-relation
    out.push(
        (|| {
            let lhs = act_left(&u, &x).ok()?.flip();
            let rhs = act_right(&x.flip(), &star(&u)).ok()?;
            Some(lhs.max_abs_diff(&rhs))
        })()
        .unwrap_or(inf),
    );

    // flip-diamond-identity
    out.push(
        (|| {
            let a = diamond(&x, &y).ok()?.flip();
            let b = diamond(&y.flip(), &x.flip()).ok()?;
            Some(a.max_abs_diff(&b))
        })()
        .unwrap_or(inf),
    );

    // triangular-invariance
    out.push(
        (|| {
            let t = TetraPoint::new(x.x1, y.x2, x.x1 * y.x2);
            let gt = g.apply(&t).ok()?;
            Some((gt.x1 * gt.x2 - gt.x3).norm())
        })()
        .unwrap_or(inf),
    );

    // membership-preservation (sign of the inequality margin)
    out.push(
        (|| {
            let gx = g.apply(&x).ok()?;
            let (inside, margin) = membership::by_inequality(&gx);
            Some(if inside { 0.0 } else { -margin })
        })()
        .unwrap_or(inf),
    );

    // compose-associativity
    out.push(
        (|| {
            let a = g.compose(&h.compose(&k)).apply(&x).ok()?;
            let b = g.compose(&h).compose(&k).apply(&x).ok()?;
            Some(a.max_abs_diff(&b))
        })()
        .unwrap_or(inf),
    );

    // canonical-radius-invariance
    out.push(
        (|| {
            let r = canonical_radius(&x).ok()?;
            let rg = canonical_radius(&g.apply(&x).ok()?).ok()?;
            Some((r - rg).abs())
        })()
        .unwrap_or(inf),
    );

    // leaf-transport-right / left
    let leaf = beta_coords(&x).map(|(l, _)| l);
    out.push(
        (|| {
            let leaf = leaf.clone().ok()?;
            let t = transport_right(&leaf, &v).ok()?;
            let acted = act_right(&leaf.point_at(lam), &v).ok()?;
            let transported = t.target.point_at(t.parameter_map(lam));
            Some(acted.max_abs_diff(&transported))
        })()
        .unwrap_or(inf),
    );
    out.push(
        (|| {
            let leaf = leaf.clone().ok()?;
            let t = transport_left(&u, &leaf).ok()?;
            let acted = act_left(&u, &leaf.point_at(lam)).ok()?;
            let transported = t.target.point_at(t.parameter_map(lam));
            Some(acted.max_abs_diff(&transported))
        })()
        .unwrap_or(inf),
    );

    // beta-round-trip
    out.push(
        (|| {
            let (l, l_lam) = beta_coords(&x).ok()?;
            Some(l.point_at(l_lam).max_abs_diff(&x))
        })()
        .unwrap_or(inf),
    );

    // normal-params-reconstruction
    out.push(
        (|| {
            let leaf = leaf.clone().ok()?;
            let (alpha, theta) = crate::foliation::normal_params(&leaf);
            let denom = 1.0 - (alpha * theta).norm_sqr();
            let b1 = alpha * ((1.0 - theta.norm_sqr()) / denom);
            let b2 = theta.conj() * ((1.0 - alpha.norm_sqr()) / denom);
            Some((b1 - leaf.beta1()).norm().max((b2 - leaf.beta2()).norm()))
        })()
        .unwrap_or(inf),
    );

    // normalization-to-axis
    out.push(
        (|| {
            let r = canonical_radius(&x).ok()?;
            let hmap = normalizing_automorphism(&x).ok()?;
            let image = hmap.apply(&x).ok()?;
            let expected = TetraPoint::new(
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(r, 0.0),
            );
            Some(image.max_abs_diff(&expected))
        })()
        .unwrap_or(inf),
    );

    // schwarz-interpolation: finite-difference derivative at 0 matches the
    // target, and the disc stays in the domain at the drawn sample.
    out.push(
        (|| {
            let scale = rng.gen::<f64>();
            let y_t = TangentTarget::new(x.x1 * scale, x.x2 * scale, x.x3 * scale);
            let y_t = if crate::schwarz::is_feasible(&y_t) {
                y_t
            } else {
                let n = crate::schwarz::indicatrix_norm(&y_t);
                TangentTarget::new(y_t.y1 / n, y_t.y2 / n, y_t.y3 / n)
            };
            let sol = interpolant(&y_t).ok()?;
            let h = 1e-5;
            let plus = phi_at(&y_t, Complex64::new(h, 0.0)).ok()?;
            let minus = phi_at(&y_t, Complex64::new(-h, 0.0)).ok()?;
            let d = TetraPoint::new(
                (plus.x1 - minus.x1) / (2.0 * h),
                (plus.x2 - minus.x2) / (2.0 * h),
                (plus.x3 - minus.x3) / (2.0 * h),
            );
            let target_pt = TetraPoint::new(y_t.y1, y_t.y2, y_t.y3);
            let deriv_err = d.max_abs_diff(&target_pt);
            let at_lam = sol.phi(lam).ok()?;
            let (inside, margin) = membership::by_inequality(&at_lam);
            let range_err = if inside { 0.0 } else { -margin };
            Some(deriv_err.max(range_err))
        })()
        .unwrap_or(inf),
    );

    out
}
