//! The analytic disc through the origin of the tetrablock with a prescribed
//! derivative.
//!
//! A target `y` is attainable as `phi'(0)` of an analytic
//! `phi: D -> E` with `phi(0) = O` if and only if
//! `max{|y1|, |y2|} + |y3| <= 1`.  For feasible `y` the interpolant has the
//! closed form
//!
//! ```text
//! phi(lambda) = lambda / (1 + lambda conj(y3) C(y)) * (y1, y2, C(y) lambda + y3)
//! ```
//!
//! and lifts to a matrix function `F` with `pi . F = phi` built from a
//! matricial Mobius transformation applied to a linear contraction whose
//! free entry is fixed by a Parrott completion.  When the feasibility
//! inequality holds with equality, `phi` is a complex geodesic: an explicit
//! linear fractional left inverse is available.
//!
//! The same inequality decides a 2x2 structured mu-synthesis problem: for
//! `A = [A1 A2]` strictly triangular and `B = [b_ij]` not diagonal, an
//! analytic `F` with `F(0) = A`, `F'(0) = B` and `mu(F(lambda)) <= 1` on
//! the disc exists iff `max{|b11|, |b22|} + |A1 ^ B2 + A2 ^ B1| <= 1`.

use num_complex::Complex64;

use crate::numerics::{psi, Matrix2, TetraPoint, C_ONE, C_ZERO};
use crate::tol;
use crate::{Error, Result};

/// The prescribed derivative `y = phi'(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentTarget {
    pub y1: Complex64,
    pub y2: Complex64,
    pub y3: Complex64,
}

impl TangentTarget {
    pub fn new(y1: Complex64, y2: Complex64, y3: Complex64) -> Self {
        Self { y1, y2, y3 }
    }

    pub fn flip(&self) -> Self {
        Self::new(self.y2, self.y1, self.y3)
    }
}

/// `max{|y1|, |y2|} + |y3|`: the norm whose unit ball is the set of
/// attainable derivatives at the origin.
pub fn indicatrix_norm(y: &TangentTarget) -> f64 {
    y.y1.norm().max(y.y2.norm()) + y.y3.norm()
}

/// The interpolation problem for `y` is solvable.
pub fn is_feasible(y: &TangentTarget) -> bool {
    indicatrix_norm(y) <= 1.0 + tol::FEASIBLE_SLACK
}

/// The coefficient `C(y)` of the closed-form interpolant:
/// `y1 y2 (1 - m) / (m (1 - m - |y3|^2))` with `m = max{|y1|, |y2|}`, and
/// `0` when `y1 = y2 = 0`.
///
/// When the denominator vanishes (under feasibility this forces `m = 1`,
/// `y3 = 0`) the continuous limit is `y1 y2`.
pub fn c_coefficient(y: &TangentTarget) -> Result<Complex64> {
    if !is_feasible(y) {
        return Err(Error::Precondition(format!(
            "target is not feasible: max{{|y1|,|y2|}} + |y3| = {}",
            indicatrix_norm(y)
        )));
    }
    let m = y.y1.norm().max(y.y2.norm());
    if m == 0.0 {
        return Ok(C_ZERO);
    }
    let den = m * (1.0 - m - y.y3.norm_sqr());
    if den.abs() < tol::DEGENERATE_GUARD {
        return Ok(y.y1 * y.y2);
    }
    Ok(y.y1 * y.y2 * ((1.0 - m) / den))
}

/// The closed-form interpolant at `lambda`.
///
/// `phi(0) = O` exactly; `phi'(0) = y`; `phi` maps the disc into the
/// tetrablock.  Accepts `|lambda| <= 1` (within a small slack) so boundary
/// behavior can be sampled; the prefactor pole cannot occur there because
/// `|conj(y3) C(y)| <= 1` for feasible targets.
pub fn phi_at(y: &TangentTarget, lambda: Complex64) -> Result<TetraPoint> {
    if lambda.norm() > 1.0 + tol::CIRCLE_EVAL_SLACK {
        return Err(Error::Precondition(
            "phi is defined on the closed unit disc".into(),
        ));
    }
    let c = c_coefficient(y)?;
    let denom = C_ONE + lambda * y.y3.conj() * c;
    if denom.norm() < tol::DEGENERATE_GUARD {
        return Err(Error::AtPole);
    }
    let pre = lambda / denom;
    Ok(TetraPoint::new(
        pre * y.y1,
        pre * y.y2,
        pre * (c * lambda + y.y3),
    ))
}

/// Matricial data of a non-degenerate solution, in the dominant
/// orientation (`|y1| >= |y2|` after the flip bookkeeping).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatricialData {
    /// `zeta = sqrt(1 - |y1|)`; `F(0) = [[0, zeta], [0, 0]]`.
    pub zeta: f64,
    /// The Parrott completion entry of `Y(xi)`.
    pub xi: Complex64,
    /// `Z = [[0, zeta], [0, 0]]`.
    pub z_mat: Matrix2,
    /// `Y(xi)`, a contraction with `pi(M_{-Z}(lambda Y)) = phi(lambda)`.
    pub y_mat: Matrix2,
}

/// All data of the interpolant for one target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzSolution {
    y: TangentTarget,
    flipped: bool,
    c: Complex64,
    matricial: Option<MatricialData>,
}

impl SchwarzSolution {
    pub fn target(&self) -> &TangentTarget {
        &self.y
    }

    /// The construction operated on the flipped target because
    /// `|y1| < |y2|`.
    pub fn is_flipped(&self) -> bool {
        self.flipped
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// `None` for the degenerate case `y1 = y2 = 0`, where
    /// `phi(lambda) = (0, 0, lambda y3)` needs no matricial lift.
    pub fn matricial(&self) -> Option<&MatricialData> {
        self.matricial.as_ref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.matricial.is_none()
    }

    /// Closed-form interpolant for the original (unflipped) target.
    pub fn phi(&self, lambda: Complex64) -> Result<TetraPoint> {
        phi_at(&self.y, lambda)
    }

    /// The dominant-oriented target the matricial data realizes.
    pub fn oriented_target(&self) -> TangentTarget {
        if self.flipped {
            self.y.flip()
        } else {
            self.y
        }
    }

    /// The matrix lift `F(lambda)`, a strict contraction with
    /// `pi(F(lambda))` equal to the interpolant of the dominant-oriented
    /// target (flip the result of [`SchwarzSolution::phi`] when
    /// [`SchwarzSolution::is_flipped`]).
    ///
    /// Computed from the expanded Mobius form
    /// `F(lambda) = Z + lambda / (1 + lambda xi zeta) [[y1, xi |y1|], [w, y2]]`
    /// with `w = -y3 / zeta - lambda zeta C(y)`.
    pub fn lift(&self, lambda: Complex64) -> Result<Matrix2> {
        let md = self
            .matricial
            .ok_or_else(|| Error::Unsupported("degenerate solution has no matricial lift".into()))?;
        if lambda.norm() > 1.0 + tol::CIRCLE_EVAL_SLACK {
            return Err(Error::Precondition(
                "the lift is defined on the closed unit disc".into(),
            ));
        }
        let t = self.oriented_target();
        let denom = C_ONE + lambda * md.xi * md.zeta;
        if denom.norm() < tol::DEGENERATE_GUARD {
            return Err(Error::AtPole);
        }
        let y3_over_zeta = if md.zeta == 0.0 {
            // Feasibility forces y3 = 0 when zeta = 0.
            C_ZERO
        } else {
            t.y3 / md.zeta
        };
        let w = -y3_over_zeta - lambda * md.zeta * self.c;
        let n1 = t.y1.norm();
        let inner = Matrix2::new(t.y1, md.xi * n1, w, t.y2);
        Ok(md.z_mat + inner.scale(lambda / denom))
    }
}

/// Builds the full solution: flip bookkeeping, `C(y)`, and the matricial
/// data `zeta = sqrt(1 - |y1|)`, `Z`, and the Parrott-completed `Y(xi)`
/// with `xi = y1 y2 conj(y3) sqrt(1 - |y1|) / (|y1| (1 - |y1| - |y3|^2))`.
pub fn interpolant(y: &TangentTarget) -> Result<SchwarzSolution> {
    let c = c_coefficient(y)?;
    if y.y1.norm() == 0.0 && y.y2.norm() == 0.0 {
        return Ok(SchwarzSolution {
            y: *y,
            flipped: false,
            c,
            matricial: None,
        });
    }
    let flipped = y.y1.norm() < y.y2.norm();
    let t = if flipped { y.flip() } else { *y };
    let n1 = t.y1.norm();
    let zeta = (1.0 - n1).max(0.0).sqrt();
    let den = n1 * (1.0 - n1 - t.y3.norm_sqr());
    let xi = if den.abs() < tol::DEGENERATE_GUARD {
        // Under feasibility this is the |y1| = 1, y3 = 0 corner, where the
        // completion entry degenerates to 0.
        C_ZERO
    } else {
        t.y1 * t.y2 * t.y3.conj() * (zeta / den)
    };
    let z_mat = Matrix2::new(C_ZERO, Complex64::new(zeta, 0.0), C_ZERO, C_ZERO);
    let sqrt_n1 = n1.sqrt();
    let y21 = if zeta == 0.0 { C_ZERO } else { -t.y3 / zeta };
    let y_mat = Matrix2::new(t.y1 / sqrt_n1, xi, y21, t.y2 / sqrt_n1);
    debug_assert!(y_mat.op_norm() <= 1.0 + 1e-9, "Y(xi) must be a contraction");
    Ok(SchwarzSolution {
        y: *y,
        flipped,
        c,
        matricial: Some(MatricialData {
            zeta,
            xi,
            z_mat,
            y_mat,
        }),
    })
}

/// The analytic left inverse `lambda = omega1 Psi(omega, phi(lambda))` of
/// an extremal interpolant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeftInverse {
    pub omega: Complex64,
    pub omega1: Complex64,
}

impl LeftInverse {
    /// `omega1 * Psi(omega, x)`: maps the tetrablock into the disc and
    /// inverts the extremal interpolant from the left.
    pub fn apply(&self, x: &TetraPoint) -> Result<Complex64> {
        Ok(self.omega1 * psi(self.omega, x)?)
    }
}

/// Left inverse for an extremal target (`|y1| + |y3| = 1` in the dominant
/// orientation): `omega1 y1 = |y1|`, `omega3 y3 = |y3|` (with `omega3 = 1`
/// when `y3 = 0`) and `omega = -conj(omega1) omega3`.
///
/// Requires `|y2| <= |y1|, y1 != 0`; apply the flip first otherwise.
pub fn extremal_left_inverse(y: &TangentTarget) -> Result<LeftInverse> {
    let n1 = y.y1.norm();
    let n2 = y.y2.norm();
    let n3 = y.y3.norm();
    if n2 > n1 || n1 == 0.0 {
        return Err(Error::Precondition(
            "left inverse needs the dominant orientation |y2| <= |y1|, y1 != 0".into(),
        ));
    }
    if (n1 + n3 - 1.0).abs() > tol::EXTREMAL_TOL {
        return Err(Error::Precondition(format!(
            "target is not extremal: |y1| + |y3| = {}",
            n1 + n3
        )));
    }
    let omega1 = y.y1.conj() / n1;
    let omega3 = if n3 == 0.0 { C_ONE } else { y.y3.conj() / n3 };
    Ok(LeftInverse {
        omega: -omega1.conj() * omega3,
        omega1,
    })
}

/// `|y1| = |y2| = 1 - |y3|` within tolerance: exactly the targets whose
/// extremal interpolant has a unimodular third coordinate on the circle.
pub fn is_doubly_extremal(y: &TangentTarget) -> bool {
    let n1 = y.y1.norm();
    let n2 = y.y2.norm();
    let n3 = y.y3.norm();
    (n1 - n2).abs() <= tol::EXTREMAL_TOL && (n1 - (1.0 - n3)).abs() <= tol::EXTREMAL_TOL
}

/// Feasibility of the 2x2 structured mu-synthesis problem with value
/// `F(0) = A` (strictly triangular, nonzero) and derivative `F'(0) = B`
/// (not diagonal): `max{|b11|, |b22|} + |A1 ^ B2 + A2 ^ B1| <= 1`, where
/// the wedge of column vectors is the determinant of the matrix they form.
pub fn mu_feasible(a: &Matrix2, b: &Matrix2) -> Result<bool> {
    let shape_tol = 1e-12;
    if a.a11.norm() > shape_tol || a.a22.norm() > shape_tol {
        return Err(Error::InvalidArgument(
            "first matrix must be strictly triangular (zero diagonal)".into(),
        ));
    }
    let upper = a.a12.norm() > shape_tol;
    let lower = a.a21.norm() > shape_tol;
    if upper && lower {
        return Err(Error::InvalidArgument(
            "first matrix must be strictly triangular (one off-diagonal entry)".into(),
        ));
    }
    if !upper && !lower {
        return Err(Error::InvalidArgument("first matrix must be nonzero".into()));
    }
    if b.a12.norm() <= shape_tol && b.a21.norm() <= shape_tol {
        return Err(Error::InvalidArgument(
            "second matrix must not be diagonal".into(),
        ));
    }
    let y = TangentTarget::new(b.a11, b.a22, wedge_term(a, b));
    Ok(is_feasible(&y))
}

/// `A1 ^ B2 + A2 ^ B1 = det[A1 B2] + det[A2 B1]` for column vectors
/// `A = [A1 A2]`, `B = [B1 B2]`.
pub fn wedge_term(a: &Matrix2, b: &Matrix2) -> Complex64 {
    (a.a11 * b.a22 - a.a21 * b.a12) + (a.a12 * b.a21 - a.a22 * b.a11)
}
