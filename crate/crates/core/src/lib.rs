//! Windowed quadratic phase Fourier transform toolkit.

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod cli;
pub mod convolution;
pub mod error;
pub mod generate;
pub mod io;
pub mod numerics;
pub mod qpft;
pub mod solver;
pub mod testkit;
pub mod tolerances;
pub mod types;
pub mod windowed;

pub use error::{Error, Result};
pub use types::*;
