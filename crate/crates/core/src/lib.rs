//! Branching laws for discrete series representations of indefinite
//! orthogonal groups `O(p, q)` restricted to `O(p', q') x O(p'', q'')`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`] provides half-integers and exact Gamma values on them.
//! * [`repparams`] describes the representations `pi^{p,q}_{eps,lambda}`.
//! * [`branching`] enumerates the discrete summands of a restriction.
//! * [`hypergeom`] evaluates the Jacobi functions that realise the summands.
//! * [`parseval`] computes the norm constants and checks them by quadrature.
//! * [`geometry`] implements the open embeddings of the hyperbolic spaces.
//! * [`appendix`] classifies complex symmetric triples by boundedness of multiplicities.
//! * [`verify`] bundles ready-made numerical verification suites.

pub mod appendix;
pub mod branching;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod hypergeom;
pub mod parseval;
pub mod quadrature;
pub mod repparams;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use exactnum::HalfInt;
