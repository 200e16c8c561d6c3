pub mod error;
pub mod graded;
pub mod groebner;
pub mod jacobi;
pub mod jobs;
pub mod koszul;
pub mod lg;
pub mod linalg;
pub mod matfact;
pub mod parse;
pub mod poly;
pub mod polymatrix;
pub mod scalar;
pub mod tft;

pub use error::{Error, Result};
