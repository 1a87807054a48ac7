//! Exact qualitative analysis of sign pattern matrices.
//!
//! The crate decides sign k-potence, computes Frobenius, reduced and cyclic
//! normal forms, generates every sign idempotent and sign k-potent pattern
//! with column-by-column constructions, decides whether a sign k-potent
//! pattern allows k-potence, and builds exact rational realizations.

pub mod cli;
pub mod cyclic;
pub mod error;
pub mod family;
pub mod idem;
pub mod kpotent;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod realization;
pub mod reduction;
pub mod search;
pub mod sign;
pub mod structure;

pub use cyclic::{make_p, make_q, BlockType, CyclicForm};
pub use error::{Error, Result};
pub use matrix::{PotenceReport, SignMatrix, Transform};
pub use rational::RationalMatrix;
pub use sign::Sign;
