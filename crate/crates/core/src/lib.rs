//! Exact-arithmetic polyhedral cones of shaped vectors.
//!
//! A finite sequence can be positive, monotone, convex or concave; each such
//! class (and their intersections) forms a polyhedral cone in n-space. This
//! crate constructs the standard generator families spanning those cones'
//! extreme rays, the closed-form basis-change matrices between the cones and
//! the positive orthant, and greedy algorithms that decompose a vector into
//! nonnegative generator coefficients. An independent exact simplex oracle
//! certifies extreme rays and cross-checks every membership verdict.
//!
//! All arithmetic is exact rational; results are equalities, not
//! approximations.
//!
//! # Modules
//!
//! - [`exactnum`]: rational scalars, dense matrices, exact elimination.
//! - [`shapes`]: shape predicates with failure witnesses.
//! - [`generators`]: the generator families `c(i)`, `a(i)`, `b(i)`, step
//!   vectors and the monotone-concave families `h(i)`, `r(i)`.
//! - [`matrices`]: the basis-change matrices M, N, Z, their exact inverses
//!   and structural reports.
//! - [`decompose`]: greedy decompositions, the canonical convex form and
//!   membership certificates.
//! - [`oracle`]: exact conic feasibility, extreme-ray certification and
//!   seeded sampling.

pub mod decompose;
pub mod error;
pub mod exactnum;
pub mod generators;
pub mod matrices;
pub mod oracle;
pub mod shapes;

pub use error::Error;
pub use exactnum::{RMatrix, Rational};
pub use generators::{ConeKind, GeneratorSet};
pub use shapes::{PredicateKind, ShapeReport, ShapeVector};
