//! Constructive function theory of the tetrablock, the domain
//!
//! ```text
//! E = { (x1,x2,x3) in C^3 : 1 - x1*z - x2*w + x3*z*w != 0  whenever |z| <= 1, |w| <= 1 }
//! ```
//!
//! i.e. the image of the open unit ball of 2x2 complex matrices under
//! `A -> (a11, a22, det A)`.  The crate provides:
//!
//! * [`membership`]: five independent characterizations of `E` (defining
//!   bilinear form, a closed inequality, a linear fractional supremum, a
//!   symmetric contraction lift, and beta coordinates), cross-checkable
//!   against each other;
//! * [`schwarz`]: the analytic disc through the origin with a prescribed
//!   derivative, both in closed form and through a matricial Mobius /
//!   Parrott construction, plus the extremal left inverse and a
//!   mu-synthesis feasibility criterion;
//! * [`autgroup`]: the automorphism group of `E` in the normal form
//!   `L_upsilon R_chi F^nu` built from the diamond product;
//! * [`foliation`]: the foliation of `E` by analytic discs, leaf transport
//!   under the group action, and the canonical orbit radius in `[0,1)`;
//! * [`oracle`]: seeded brute-force and randomized verification suites;
//! * [`numerics`]: the 2x2 complex matrix and unit-disc Mobius primitives
//!   everything else is built on.
//!
//! All operations are pure functions over immutable values and are safe to
//! call concurrently.

pub mod autgroup;
pub mod foliation;
pub mod membership;
pub mod numerics;
pub mod oracle;
pub mod schwarz;
pub mod tol;

pub use num_complex::Complex64;

pub use autgroup::TetraAutomorphism;
pub use foliation::BetaLeaf;
pub use membership::MembershipReport;
pub use numerics::{CircleImage, DiscAutomorphism, Matrix2, TetraPoint};
pub use oracle::SuiteReport;
pub use schwarz::{SchwarzSolution, TangentTarget};

/// Errors surfaced by operations whose preconditions can fail.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument violates a structural requirement (shape, definiteness).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A linear fractional map was evaluated at its pole.
    #[error("evaluation at a pole of the linear fractional map")]
    AtPole,
    /// The diamond product is undefined because `x2 * y1 = 1`.
    #[error("diamond product undefined: x2 * y1 = 1")]
    UndefinedProduct,
    /// The point lies outside the open domain required by the operation.
    #[error("point not in the open domain: {0}")]
    NotInDomain(String),
    /// The requested data does not exist for a degenerate solution.
    #[error("unsupported for this solution: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
