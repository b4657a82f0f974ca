//! Exact computation of where meromorphic differential forms on affine
//! hypersurface singularities sit in the chain
//! Omega/torsion, alpha, L, omega.

pub mod blowup;
pub mod classify;
pub mod error;
pub mod forms;
pub mod groebner;
pub mod poly;
pub mod session;
pub mod trace;

pub use error::{Error, Result};
pub use poly::{Poly, Rational};
