//! Construction and certification of MDS generalized Reed–Solomon codes
//! whose Euclidean hull is one-dimensional.

pub mod artifact;
pub mod atlas;
pub mod cli;
pub mod code;
pub mod error;
pub mod gf;
pub mod grs;
pub mod hull;
pub mod poly;

pub use error::{Error, ErrorKind, Result};
