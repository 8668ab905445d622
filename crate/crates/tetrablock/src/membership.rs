//! The five equivalent characterizations of the tetrablock as independent
//! predicates, plus triangular-point and distinguished-boundary tests.
//!
//! For a point `x = (x1, x2, x3)` the tests are:
//!
//! 1. *definition*: the bilinear form `1 - x1 z - x2 w + x3 z w` stays away
//!    from zero on a sampled closed bidisc (a one-sided grid oracle);
//! 2. *inequality*: `|x1 - conj(x2) x3| + |x1 x2 - x3| < 1 - |x2|^2`;
//! 3. *lft*: `sup_D |Psi(., x)| < 1`, with the extra clause `|x1|, |x2| < 1`
//!    when `Psi(., x)` is constant (triangular `x`);
//! 4. *symmetric*: some symmetric strict contraction `A` has
//!    `(a11, a22, det A) = x`;
//! 5. *beta*: `x1 = beta1 + conj(beta2) x3`, `x2 = beta2 + conj(beta1) x3`
//!    for some `|beta1| + |beta2| < 1`.
//!
//! Each predicate computes a signed margin (distance of its defining
//! inequality from the threshold) so near-boundary points can be recognized
//! and excluded from cross-checks.

use num_complex::Complex64;

use crate::numerics::{lft_sup_on_circle, Matrix2, TetraPoint};
use crate::tol;

/// Angular sample count on each interior shell of the definitional grid.
const SHELL_ANGLES: usize = 16;

/// Number of interior shells (radii `k / 9`, `k = 1..=8`).
const SHELLS: usize = 8;

/// Verdicts and margins of all five characterizations for one point.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub definition: bool,
    pub inequality: bool,
    pub lft: bool,
    pub symmetric: bool,
    pub beta: bool,
    pub margin_definition: f64,
    pub margin_inequality: f64,
    pub margin_lft: f64,
    pub margin_symmetric: f64,
    pub margin_beta: f64,
    /// Sampled minimum of `|1 - x1 z - x2 w + x3 z w|` over the grid.
    pub min_modulus: f64,
    /// All five verdicts agree.
    pub consensus: bool,
    /// Some margin is within the boundary band; cross-checks should skip
    /// this point.
    pub borderline: bool,
}

impl MembershipReport {
    /// The four closed-form verdicts (inequality, lft, symmetric, beta).
    pub fn formula_verdicts(&self) -> [bool; 4] {
        [self.inequality, self.lft, self.symmetric, self.beta]
    }

    pub fn verdicts(&self) -> [(&'static str, bool); 5] {
        [
            ("definition", self.definition),
            ("inequality", self.inequality),
            ("lft", self.lft),
            ("symmetric", self.symmetric),
            ("beta", self.beta),
        ]
    }

    pub fn margins(&self) -> [(&'static str, f64); 5] {
        [
            ("definition", self.margin_definition),
            ("inequality", self.margin_inequality),
            ("lft", self.margin_lft),
            ("symmetric", self.margin_symmetric),
            ("beta", self.margin_beta),
        ]
    }

    /// All four closed-form predicates accept.
    pub fn is_member(&self) -> bool {
        self.formula_verdicts().iter().all(|&v| v)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Angular resolution of the definitional torus grid.
    pub grid_size: usize,
    /// Margin magnitude below which a report is flagged borderline.
    pub boundary_band: f64,
    /// Floor the sampled minimum modulus must exceed for the definitional
    /// verdict.
    pub definition_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            grid_size: 200,
            boundary_band: tol::BOUNDARY_BAND,
            definition_tol: tol::DEFINITION_TOL,
        }
    }
}

/// Condition (ii): verdict and signed margin
/// `(1 - |x2|^2) - |x1 - conj(x2) x3| - |x1 x2 - x3|`.
pub fn by_inequality(x: &TetraPoint) -> (bool, f64) {
    let margin = (1.0 - x.x2.norm_sqr())
        - (x.x1 - x.x2.conj() * x.x3).norm()
        - (x.x1 * x.x2 - x.x3).norm();
    (margin > 0.0, margin)
}

/// Condition (iii): `sup_D |Psi(., x)| < 1`, plus `|x1|, |x2| < 1` for
/// triangular points where `Psi(., x)` is the constant `x1`.
pub fn by_lft(x: &TetraPoint) -> bool {
    lft_verdict_margin(x).0
}

pub(crate) fn lft_verdict_margin(x: &TetraPoint) -> (bool, f64) {
    if is_triangular(x) {
        let margin = 1.0 - x.x1.norm().max(x.x2.norm());
        return (margin > 0.0, margin);
    }
    if x.x2.norm() >= 1.0 {
        // Pole of Psi in the closed disc: x cannot be a member.
        return (false, 1.0 - x.x2.norm());
    }
    // The guards above make this total.
    let sup = lft_sup_on_circle(x).expect("non-triangular point with |x2| < 1");
    (sup < 1.0, 1.0 - sup)
}

/// Condition (iv): `x` is realized by a symmetric strict contraction.
///
/// The candidate is forced: `A = [[x1, s], [s, x2]]` with
/// `s^2 = x1 x2 - x3`.  Both square roots give the same norm (conjugation
/// by `diag(1, -1)`), so membership holds iff this `A` is a strict
/// contraction.
pub fn by_symmetric(x: &TetraPoint) -> bool {
    symmetric_verdict_margin(x).0
}

pub(crate) fn symmetric_verdict_margin(x: &TetraPoint) -> (bool, f64) {
    let s = (x.x1 * x.x2 - x.x3).sqrt();
    let a = Matrix2::new(x.x1, s, s, x.x2);
    let margin = 1.0 - a.op_norm();
    (margin > 0.0, margin)
}

/// Condition (v): the unique beta coordinates satisfy
/// `|beta1| + |beta2| < 1`.
pub fn by_beta(x: &TetraPoint) -> bool {
    beta_verdict_margin(x).0
}

pub(crate) fn beta_verdict_margin(x: &TetraPoint) -> (bool, f64) {
    let n3 = x.x3.norm();
    if n3 >= 1.0 {
        return (false, 1.0 - n3);
    }
    if 1.0 - n3 < tol::BETA_X3_GUARD {
        // The division below would amplify rounding to O(1); the point is
        // borderline in any case.
        return (false, 0.0);
    }
    let d = 1.0 - n3 * n3;
    let beta1 = (x.x1 - x.x2.conj() * x.x3) / d;
    let beta2 = (x.x2 - x.x1.conj() * x.x3) / d;
    let margin = 1.0 - beta1.norm() - beta2.norm();
    (margin > 0.0, margin)
}

/// Condition (i), sampled: minimum of `|1 - x1 z - x2 w + x3 z w|` over a
/// `grid_size`-point torus grid extended by interior shells.
///
/// Returns `(min > definition floor, min)`.  This is a one-sided oracle: a
/// small minimum is strong evidence of non-membership or near-boundary
/// status, but a coarse grid can miss interior zeros of a non-member.
pub fn by_definition(x: &TetraPoint, grid_size: usize) -> (bool, f64) {
    let n = grid_size.max(8);
    let pts = bidisc_samples(n);
    let mut min_sq = f64::INFINITY;
    for &z in &pts {
        // 1 - x1 z - x2 w + x3 z w = a - b w with a, b fixed per z.
        let a = Complex64::new(1.0, 0.0) - x.x1 * z;
        let b = x.x2 - x.x3 * z;
        for &w in &pts {
            let m = (a - b * w).norm_sqr();
            if m < min_sq {
                min_sq = m;
            }
        }
    }
    let min = min_sq.sqrt();
    (min > tol::DEFINITION_TOL, min)
}

/// Unit-circle grid of `n` points plus `SHELLS` interior shells.  Nested
/// under doubling of `n`, so the sampled minimum is monotone.
fn bidisc_samples(n: usize) -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(n + SHELLS * SHELL_ANGLES);
    for k in 0..n {
        pts.push(Complex64::from_polar(
            1.0,
            std::f64::consts::TAU * k as f64 / n as f64,
        ));
    }
    for j in 1..=SHELLS {
        let r = j as f64 / (SHELLS + 1) as f64;
        for k in 0..SHELL_ANGLES {
            pts.push(Complex64::from_polar(
                r,
                std::f64::consts::TAU * k as f64 / SHELL_ANGLES as f64,
            ));
        }
    }
    pts
}

/// `x1 x2 = x3` within tolerance.
pub fn is_triangular(x: &TetraPoint) -> bool {
    (x.x1 * x.x2 - x.x3).norm() <= tol::TRIANGULAR_TOL
}

/// Shilov-boundary test: `x1 = conj(x2) x3`, `|x2| <= 1`, `|x3| = 1`,
/// all within tolerance.
pub fn in_distinguished_boundary(x: &TetraPoint) -> bool {
    (x.x1 - x.x2.conj() * x.x3).norm() <= tol::DISTINGUISHED_TOL
        && x.x2.norm() <= 1.0 + tol::DISTINGUISHED_TOL
        && (x.x3.norm() - 1.0).abs() <= tol::DISTINGUISHED_TOL
}

/// Runs all five predicates with default options.
pub fn classify(x: &TetraPoint) -> MembershipReport {
    classify_with(x, &ClassifyOptions::default())
}

pub fn classify_with(x: &TetraPoint, opts: &ClassifyOptions) -> MembershipReport {
    let (inequality, margin_inequality) = by_inequality(x);
    let (lft, margin_lft) = lft_verdict_margin(x);
    let (symmetric, margin_symmetric) = symmetric_verdict_margin(x);
    let (beta, margin_beta) = beta_verdict_margin(x);
    let (_, min_modulus) = by_definition(x, opts.grid_size);
    let definition = min_modulus > opts.definition_tol;
    let margin_definition = min_modulus - opts.definition_tol;
    let verdicts = [definition, inequality, lft, symmetric, beta];
    let consensus = verdicts.iter().all(|&v| v) || verdicts.iter().all(|&v| !v);
    let borderline = [
        margin_definition,
        margin_inequality,
        margin_lft,
        margin_symmetric,
        margin_beta,
    ]
    .iter()
    .any(|m| m.abs() < opts.boundary_band);
    MembershipReport {
        definition,
        inequality,
        lft,
        symmetric,
        beta,
        margin_definition,
        margin_inequality,
        margin_lft,
        margin_symmetric,
        margin_beta,
        min_modulus,
        consensus,
        borderline,
    }
}
