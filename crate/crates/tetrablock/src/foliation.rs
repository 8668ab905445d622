//! The foliation of the tetrablock by the analytic discs
//!
//! ```text
//! lambda -> (beta1 + conj(beta2) lambda, beta2 + conj(beta1) lambda, lambda),
//! |beta1| + |beta2| < 1,
//! ```
//!
//! each point of the domain lying on exactly one leaf.  The automorphism
//! group permutes the leaves transitively; the transport formulas give the
//! image leaf and the induced Mobius reparametrization in closed form.
//! Composing a normalization of the leaf to the axis leaf `beta = 0` with a
//! rotation carries any point to `(0, 0, r)` with `r in [0, 1)`, and this
//! canonical radius is a complete orbit invariant.

use num_complex::Complex64;

use crate::autgroup::TetraAutomorphism;
use crate::numerics::{DiscAutomorphism, TetraPoint, C_ONE};
use crate::tol;
use crate::{Error, Result};

/// Leaf coordinates `(beta1, beta2)` with `|beta1| + |beta2| < 1`.
///
/// Leaves within [`tol::LEAF_BOUNDARY_BAND`] of the boundary are rejected:
/// the normalization formulas go through `atanh(|beta1| + |beta2|)`, which
/// blows up at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaLeaf {
    beta1: Complex64,
    beta2: Complex64,
}

impl BetaLeaf {
    pub fn new(beta1: Complex64, beta2: Complex64) -> Result<Self> {
        let s = beta1.norm() + beta2.norm();
        if s > 1.0 - tol::LEAF_BOUNDARY_BAND {
            return Err(Error::InvalidArgument(format!(
                "leaf too close to the boundary: |beta1| + |beta2| = {s}"
            )));
        }
        Ok(Self { beta1, beta2 })
    }

    pub fn beta1(&self) -> Complex64 {
        self.beta1
    }

    pub fn beta2(&self) -> Complex64 {
        self.beta2
    }

    /// The leaf parametrization
    /// `(beta1 + conj(beta2) lambda, beta2 + conj(beta1) lambda, lambda)`;
    /// lies in the tetrablock for `|lambda| < 1`.
    pub fn point_at(&self, lambda: Complex64) -> TetraPoint {
        TetraPoint::new(
            self.beta1 + self.beta2.conj() * lambda,
            self.beta2 + self.beta1.conj() * lambda,
            lambda,
        )
    }
}

/// The unique leaf through `x` and the parameter at which it passes:
/// `lambda = x3`, `beta = (x1 - conj(x2) x3, x2 - conj(x1) x3) / (1 - |x3|^2)`.
pub fn beta_coords(x: &TetraPoint) -> Result<(BetaLeaf, Complex64)> {
    let n3 = x.x3.norm();
    if n3 >= 1.0 || 1.0 - n3 < tol::BETA_X3_GUARD {
        return Err(Error::NotInDomain(format!("|x3| = {n3} is not inside the disc")));
    }
    let d = 1.0 - n3 * n3;
    let beta1 = (x.x1 - x.x2.conj() * x.x3) / d;
    let beta2 = (x.x2 - x.x1.conj() * x.x3) / d;
    Ok((BetaLeaf::new(beta1, beta2)?, x.x3))
}

/// Image of a leaf under a group action together with the induced
/// parameter change `lambda -> eta (lambda + c) / (conj(c) lambda + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafTransport {
    pub target: BetaLeaf,
    pub eta: Complex64,
    pub c: Complex64,
}

impl LeafTransport {
    /// The induced Mobius map of the leaf parameter.
    pub fn parameter_map(&self, lambda: Complex64) -> Complex64 {
        self.eta * (lambda + self.c) / (self.c.conj() * lambda + C_ONE)
    }
}

/// Leaf transport under the right action by `chi = (zeta, theta)` (in the
/// disc-automorphism parameter form): the image of leaf `beta` is leaf
/// `gamma` with
///
/// ```text
/// gamma1 = beta1 (1 - |theta|^2) / D,
/// gamma2 = (conj(theta) (1 - |beta1|^2 + |beta2|^2)
///           - zeta beta2 - conj(zeta) conj(theta)^2 conj(beta2)) / D,
/// D = |1 - zeta theta beta2|^2 - |theta beta1|^2,
/// ```
///
/// and the parameter moves by `eta = -zeta (1 - conj(zeta theta beta2)) /
/// (1 - zeta theta beta2)`, `c = -conj(zeta theta) beta1 /
/// (1 - conj(zeta theta beta2))`.
pub fn transport_right(leaf: &BetaLeaf, chi: &DiscAutomorphism) -> Result<LeafTransport> {
    let zeta = chi.omega();
    let theta = chi.alpha();
    let b1 = leaf.beta1();
    let b2 = leaf.beta2();
    let d = (C_ONE - zeta * theta * b2).norm_sqr() - (theta * b1).norm_sqr();
    let gamma1 = b1 * ((1.0 - theta.norm_sqr()) / d);
    let gamma2 = (theta.conj() * (1.0 - b1.norm_sqr() + b2.norm_sqr())
        - zeta * b2
        - zeta.conj() * theta.conj() * theta.conj() * b2.conj())
        / d;
    let eta = -zeta * (C_ONE - zeta.conj() * theta.conj() * b2.conj())
        / (C_ONE - zeta * theta * b2);
    let c = -(zeta.conj() * theta.conj() * b1) / (C_ONE - zeta.conj() * theta.conj() * b2.conj());
    Ok(LeafTransport {
        target: BetaLeaf::new(gamma1, gamma2)?,
        eta: eta / eta.norm(),
        c,
    })
}

/// Leaf transport under the left action by `upsilon = (omega, alpha)`:
///
/// ```text
/// delta1 = omega (alpha (1 - |beta2|^2 + |beta1|^2)
///                 - beta1 - alpha^2 conj(beta1)) / D,
/// delta2 = beta2 (1 - |alpha|^2) / D,
/// D = |1 - conj(alpha) beta1|^2 - |alpha beta2|^2,
/// ```
///
/// with parameter change `eta' = -omega (1 - alpha conj(beta1)) /
/// (1 - conj(alpha) beta1)`, `c' = -alpha beta2 / (1 - alpha conj(beta1))`.
pub fn transport_left(upsilon: &DiscAutomorphism, leaf: &BetaLeaf) -> Result<LeafTransport> {
    let omega = upsilon.omega();
    let alpha = upsilon.alpha();
    let b1 = leaf.beta1();
    let b2 = leaf.beta2();
    let d = (C_ONE - alpha.conj() * b1).norm_sqr() - (alpha * b2).norm_sqr();
    let delta1 = omega
        * (alpha * (1.0 - b2.norm_sqr() + b1.norm_sqr()) - b1 - alpha * alpha * b1.conj())
        / d;
    let delta2 = b2 * ((1.0 - alpha.norm_sqr()) / d);
    let eta = -omega * (C_ONE - alpha * b1.conj()) / (C_ONE - alpha.conj() * b1);
    let c = -(alpha * b2) / (C_ONE - alpha * b1.conj());
    Ok(LeafTransport {
        target: BetaLeaf::new(delta1, delta2)?,
        eta: eta / eta.norm(),
        c,
    })
}

/// Parameters `(alpha, theta)` of the disc automorphisms (with unimodular
/// parts 1) that carry the axis leaf onto the given leaf:
///
/// ```text
/// alpha = xi1 tanh( (atanh(s) + atanh(d)) / 2 ),
/// theta = xi2 tanh( (atanh(s) - atanh(d)) / 2 ),
/// ```
///
/// where `s = |beta1| + |beta2|`, `d = |beta1| - |beta2|` and `xi1, xi2`
/// are the phases of `beta1` and `conj(beta2)` (taken as 1 at 0).  The
/// reconstruction identities
/// `beta1 = alpha (1 - |theta|^2) / (1 - |alpha theta|^2)` and
/// `beta2 = conj(theta) (1 - |alpha|^2) / (1 - |alpha theta|^2)` hold.
pub fn normal_params(leaf: &BetaLeaf) -> (Complex64, Complex64) {
    let n1 = leaf.beta1().norm();
    let n2 = leaf.beta2().norm();
    let xi1 = if n1 == 0.0 { C_ONE } else { leaf.beta1() / n1 };
    let xi2 = if n2 == 0.0 {
        C_ONE
    } else {
        leaf.beta2().conj() / n2
    };
    let u = 0.5 * (n1 + n2).atanh();
    let v = 0.5 * (n1 - n2).atanh();
    (xi1 * (u + v).tanh(), xi2 * (u - v).tanh())
}

/// The unique `r in [0, 1)` with `(0, 0, r)` in the orbit of `x`:
/// `r = |(lambda - alpha conj(theta)) / (conj(alpha) theta lambda - 1)|`
/// for the leaf parameters of `x`.
pub fn canonical_radius(x: &TetraPoint) -> Result<f64> {
    let (leaf, lambda) = beta_coords(x)?;
    let (alpha, theta) = normal_params(&leaf);
    let num = lambda - alpha * theta.conj();
    let den = alpha.conj() * theta * lambda - C_ONE;
    Ok((num / den).norm())
}

/// An explicit group element carrying `x` to `(0, 0, canonical_radius(x))`.
///
/// The element `L_upsilon R_chi` with `upsilon = (1, alpha)`,
/// `chi = (1, theta)` maps the axis leaf onto the leaf of `x`; its inverse
/// followed by the left rotation aligning the third coordinate with the
/// nonnegative axis is the normalizer.
pub fn normalizing_automorphism(x: &TetraPoint) -> Result<TetraAutomorphism> {
    let (leaf, _) = beta_coords(x)?;
    let (alpha, theta) = normal_params(&leaf);
    let upsilon = DiscAutomorphism::new(C_ONE, alpha)?;
    let chi = DiscAutomorphism::new(C_ONE, theta)?;
    let onto_leaf = TetraAutomorphism::new(upsilon, chi, false);
    let to_axis = onto_leaf.inverse();
    let on_axis = to_axis.apply(x)?;
    let z = on_axis.x3;
    let omega = if z.norm() == 0.0 { C_ONE } else { z.conj() / z.norm() };
    let rotation = TetraAutomorphism::left_rotation(omega)?;
    Ok(rotation.compose(&to_axis))
}

/// Whether two points lie on the same group orbit, decided by comparing
/// canonical radii.
pub fn same_orbit(x: &TetraPoint, y: &TetraPoint) -> Result<bool> {
    Ok((canonical_radius(x)? - canonical_radius(y)?).abs() <= tol::ORBIT_TOL)
}
