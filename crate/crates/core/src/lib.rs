#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod matrix;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub mod antilinear;
pub mod families;
pub mod io;
pub mod morse;
pub mod pairing;
pub mod pseudoherm;
pub mod realform;
pub mod report;
pub mod selftest;
