pub mod classify;
pub mod cli;
pub mod dualcomplex;
pub mod error;
pub mod exact_arith;
pub mod linalg;
pub mod matgroup;
pub mod picard;
pub mod invariants;
pub mod projclassify;

pub use error::{Error, Result};
