//! Exact computations of Frobenius closure, tight closure and F-purity for the
//! diagonal hypersurfaces `K[X1, ..., Xn] / (X1^n + ... + Xn^n)` over prime
//! fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact_arith`]: big integers, rationals, prime fields, binomials.
//! * [`multipoly`]: sparse multivariate polynomials over `F_p`.
//! * [`linear_solver`]: Gaussian elimination over `F_p` and Bareiss
//!   determinants over `Z`.
//! * [`membership`]: homogeneous ideal membership via Macaulay matrices.
//! * [`determinant_identities`]: the two binomial determinant families and
//!   their closed forms.
//! * [`closure_certifier`]: end-to-end certification pipelines producing
//!   [`closure_certifier::ClosureCertificate`] values.
//!
//! All arithmetic is exact. Nothing in this crate touches floating point.

pub mod closure_certifier;
pub mod determinant_identities;
pub mod error;
pub mod exact_arith;
pub mod linear_solver;
pub mod membership;
pub mod multipoly;

pub use error::{Error, Result};
