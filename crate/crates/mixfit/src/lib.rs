//! File formats, JSON artifacts, text reports and the command-line driver
//! for `mixfit-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atomic;
pub mod cli;
pub mod error;
pub mod records;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
