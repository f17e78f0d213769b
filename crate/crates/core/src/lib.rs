//! Exact verification of cooperad-derived chain-level structures.

pub mod cooperad;
pub mod exactlinalg;
pub mod instances;
pub mod derived;
pub mod homology;
pub mod cli;
