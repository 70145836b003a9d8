//! Euler-product constants, jets and the asymptotic polynomials predicting
//! moments of quadratic L-functions over 𝔽_q[x].

pub mod constants;
pub mod error;
pub mod euler;
pub mod first;
pub mod funceq;
pub mod genid;
pub mod jet;
pub mod polys;
pub mod real;
pub mod third;

pub use error::{Error, Result};
pub use euler::{Certified, Euler};
pub use jet::Jet;
pub use real::Real;
