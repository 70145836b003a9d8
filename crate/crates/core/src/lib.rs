//! Exact arithmetic for quadratic Dirichlet L-functions over 𝔽_q[x] and
//! brute-force moments over the hyperelliptic ensemble.

pub mod characters;
pub mod enumerate;
pub mod error;
pub mod ext;
pub mod factor;
pub mod field;
pub mod lfunc;
pub mod moments;
pub mod pointcount;
pub mod poly;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
pub use ext::ExtField;
pub use field::FieldParams;
pub use poly::FqPoly;
