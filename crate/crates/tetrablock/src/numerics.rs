//! Complex scalar / 2x2 matrix primitives and unit-disc Mobius geometry.

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// A point `(x1, x2, x3)` of `C^3`, candidate member of the tetrablock or
/// its closure.  Any point is representable; the predicates in
/// [`crate::membership`] classify it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraPoint {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: Complex64,
}

impl TetraPoint {
    pub const ORIGIN: TetraPoint = TetraPoint {
        x1: C_ZERO,
        x2: C_ZERO,
        x3: C_ZERO,
    };

    pub fn new(x1: Complex64, x2: Complex64, x3: Complex64) -> Self {
        Self { x1, x2, x3 }
    }

    /// Swaps the first two coordinates.
    pub fn flip(&self) -> Self {
        Self::new(self.x2, self.x1, self.x3)
    }

    /// Largest componentwise distance to `other`; convenient in tests and
    /// verification suites.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x1 - other.x1)
            .norm()
            .max((self.x2 - other.x2).norm())
            .max((self.x3 - other.x3).norm())
    }
}

/// A 2x2 complex matrix with closed-form operator norm, determinant and
/// positive-semidefinite square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Matrix2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::diag(C_ONE, C_ONE)
    }

    pub fn zero() -> Self {
        Self::diag(C_ZERO, C_ZERO)
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        Self::new(a, C_ZERO, C_ZERO, b)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() < tol::DEGENERATE_GUARD {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        Ok(Self::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d))
    }

    /// Largest singular value, computed in closed form from the
    /// characteristic polynomial of `m* m`.
    pub fn op_norm(&self) -> f64 {
        let t = self.a11.norm_sqr()
            + self.a12.norm_sqr()
            + self.a21.norm_sqr()
            + self.a22.norm_sqr();
        let d = self.det().norm_sqr();
        // Eigenvalues of m* m are (t +- sqrt(t^2 - 4d)) / 2; rounding can
        // push the discriminant slightly negative.
        let disc = (t * t - 4.0 * d).max(0.0).sqrt();
        (0.5 * (t + disc)).sqrt()
    }

    /// Smallest singular value; used for strict-contraction margins.
    pub fn min_singular_value(&self) -> f64 {
        let t = self.a11.norm_sqr()
            + self.a12.norm_sqr()
            + self.a21.norm_sqr()
            + self.a22.norm_sqr();
        let d = self.det().norm_sqr();
        let disc = (t * t - 4.0 * d).max(0.0).sqrt();
        (0.5 * (t - disc)).max(0.0).sqrt()
    }

    /// The unique positive semidefinite square root of a Hermitian PSD
    /// matrix, via `sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M))`
    /// with an eigendecomposition fallback when the denominator degenerates.
    pub fn psd_sqrt(&self) -> Result<Self> {
        let herm_dev = (self.a12 - self.a21.conj())
            .norm()
            .max(self.a11.im.abs())
            .max(self.a22.im.abs());
        if herm_dev > tol::HERMITIAN_TOL {
            return Err(Error::InvalidArgument(format!(
                "matrix is not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let a = self.a11.re;
        let d = self.a22.re;
        let b = 0.5 * (self.a12 + self.a21.conj());
        let tr = a + d;
        let det = a * d - b.norm_sqr();
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        let lo = 0.5 * (tr - disc);
        if lo < -tol::PSD_EIGEN_SLACK {
            return Err(Error::InvalidArgument(format!(
                "matrix is not positive semidefinite (eigenvalue {lo:.3e})"
            )));
        }
        let m = Self::new(Complex64::new(a, 0.0), b, b.conj(), Complex64::new(d, 0.0));
        let s = det.max(0.0).sqrt();
        let denom_sq = tr + 2.0 * s;
        if denom_sq > tol::DEGENERATE_GUARD {
            return Ok((m + Self::identity().scale(s.into())).scale((1.0 / denom_sq.sqrt()).into()));
        }
        // Spectral route: both eigenvalues are tiny or the gap collapses.
        let hi = (0.5 * (tr + disc)).max(0.0);
        let lo = lo.max(0.0);
        if disc <= tol::DEGENERATE_GUARD {
            return Ok(Self::identity().scale(hi.sqrt().into()));
        }
        let proj = (m - Self::identity().scale(lo.into())).scale((1.0 / disc).into());
        let rest = Self::identity() - proj;
        Ok(proj.scale(hi.sqrt().into()) + rest.scale(lo.sqrt().into()))
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a11 - other.a11)
            .norm()
            .max((self.a12 - other.a12).norm())
            .max((self.a21 - other.a21).norm())
            .max((self.a22 - other.a22).norm())
    }
}

impl std::ops::Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl std::ops::Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl std::ops::Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        Matrix2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl std::ops::Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

/// The matricial Mobius transformation
/// `M_Z(X) = -Z + D_{Z*} X (1 - Z*X)^{-1} D_Z` with defect operators
/// `D_Z = (1 - Z*Z)^{1/2}`: an automorphism of the operator-norm unit ball
/// mapping `Z` to `0`, with inverse `M_{-Z}`.
pub fn mobius_matrix(z: &Matrix2, x: &Matrix2) -> Result<Matrix2> {
    if z.op_norm() >= 1.0 {
        return Err(Error::Precondition(
            "mobius_matrix requires a strict contraction Z".into(),
        ));
    }
    if x.op_norm() >= 1.0 {
        return Err(Error::Precondition(
            "mobius_matrix requires a strict contraction X".into(),
        ));
    }
    let id = Matrix2::identity();
    let dz = (id - z.adjoint() * *z).psd_sqrt()?;
    let dzs = (id - *z * z.adjoint()).psd_sqrt()?;
    let inv = (id - z.adjoint() * *x)
        .inverse()
        .map_err(|_| Error::Precondition("1 - Z*X is singular".into()))?;
    Ok(-*z + dzs * *x * inv * dz)
}

/// A Mobius self-map of the unit disc in the form
/// `z -> omega (z - alpha) / (conj(alpha) z - 1)` with `|omega| = 1`,
/// `|alpha| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscAutomorphism {
    omega: Complex64,
    alpha: Complex64,
}

impl DiscAutomorphism {
    /// Validates `|omega| = 1` (within 1e-9, then renormalized exactly) and
    /// `|alpha| < 1`.
    pub fn new(omega: Complex64, alpha: Complex64) -> Result<Self> {
        let n = omega.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "omega must be unimodular, |omega| = {n}"
            )));
        }
        if alpha.norm() >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in the open disc, |alpha| = {}",
                alpha.norm()
            )));
        }
        Ok(Self {
            omega: omega / n,
            alpha,
        })
    }

    fn unchecked(omega: Complex64, alpha: Complex64) -> Self {
        Self {
            omega: omega / omega.norm(),
            alpha,
        }
    }

    /// The identity map, `(omega, alpha) = (-1, 0)`.
    pub fn identity() -> Self {
        Self {
            omega: -C_ONE,
            alpha: C_ZERO,
        }
    }

    /// The rotation `z -> omega z`, i.e. parameters `(-omega, 0)`.
    ///
    /// Stores `-omega` without renormalizing so that the induced rotation
    /// laws reproduce `omega * x` bit for bit.
    pub fn rotation(omega: Complex64) -> Result<Self> {
        if (omega.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "rotation parameter must be unimodular, |omega| = {}",
                omega.norm()
            )));
        }
        Ok(Self {
            omega: -omega,
            alpha: C_ZERO,
        })
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Evaluates the map.  Sends the unit circle to itself and the open
    /// disc onto itself; the pole `1 / conj(alpha)` lies outside the closed
    /// disc.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.omega * (z - self.alpha) / (self.alpha.conj() * z - C_ONE)
    }

    /// Parameters of `self . other` (apply `other` first) in the same form.
    ///
    /// Writing `u = (w1, a1)`, `v = (w2, a2)`, the composite has
    /// `omega = -w1 (w2 - a1 conj(a2)) / (1 - conj(a1) w2 a2)` and
    /// `alpha = (w2 a2 - a1) / (w2 - a1 conj(a2))`; the denominators cannot
    /// vanish for `|a1|, |a2| < 1`.
    pub fn compose(&self, other: &Self) -> Self {
        let (w1, a1) = (self.omega, self.alpha);
        let (w2, a2) = (other.omega, other.alpha);
        let big_a = w1 * (w2 - a1 * a2.conj());
        let big_b = -w1 * (w2 * a2 - a1);
        let big_d = C_ONE - a1.conj() * w2 * a2;
        Self::unchecked(-big_a / big_d, -big_b / big_a)
    }

    /// The inverse map: `(omega, alpha) -> (conj(omega), omega alpha)`.
    pub fn inverse(&self) -> Self {
        Self::unchecked(self.omega.conj(), self.omega * self.alpha)
    }
}

/// Image of a circle under a Mobius map: a circle with this center and
/// radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleImage {
    pub center: Complex64,
    pub radius: f64,
}

/// Circumcircle of three points of `C`.  Errors on (numerically) collinear
/// input, which has no circumcircle.
pub fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> Result<CircleImage> {
    let denom = a.conj() * (b - c) + b.conj() * (c - a) + c.conj() * (a - b);
    if denom.norm() < tol::DEGENERATE_GUARD {
        return Err(Error::Precondition(
            "collinear points have no circumcircle".into(),
        ));
    }
    let num = a.norm_sqr() * (b - c) + b.norm_sqr() * (c - a) + c.norm_sqr() * (a - b);
    let center = num / denom;
    Ok(CircleImage {
        center,
        radius: (a - center).norm(),
    })
}

/// The linear fractional map `Psi(z, x) = (x3 z - x1) / (x2 z - 1)`.
///
/// For triangular `x` (i.e. `x1 x2 = x3`) the map is constant, equal to
/// `x1`.  Errors at the pole `z = 1 / x2`.
pub fn psi(z: Complex64, x: &TetraPoint) -> Result<Complex64> {
    let denom = x.x2 * z - C_ONE;
    if denom.norm() < tol::DEGENERATE_GUARD {
        return Err(Error::AtPole);
    }
    Ok((x.x3 * z - x.x1) / denom)
}

/// Exact supremum of `|Psi(., x)|` over the closed unit disc.
///
/// Mobius maps send circles to circles, so the image of the unit circle is
/// the circumcircle of the images of three sample points, and by the
/// maximum principle the supremum over the disc is `|center| + radius` of
/// that image circle.
///
/// Requires `|x2| < 1` (pole outside the closed disc) and a non-triangular
/// point (otherwise `Psi` is constant and the circle degenerates).
pub fn lft_sup_on_circle(x: &TetraPoint) -> Result<f64> {
    if (x.x1 * x.x2 - x.x3).norm() <= tol::TRIANGULAR_TOL {
        return Err(Error::Precondition(
            "Psi(., x) is constant for a triangular point".into(),
        ));
    }
    if x.x2.norm() >= 1.0 {
        return Err(Error::Precondition(
            "pole of Psi(., x) lies in the closed disc".into(),
        ));
    }
    let p1 = psi(C_ONE, x)?;
    let p2 = psi(C_I, x)?;
    let p3 = psi(-C_ONE, x)?;
    let image = circumcircle(p1, p2, p3)?;
    Ok(image.center.norm() + image.radius)
}
