//! Command line front end for the brio library: configuration ingestion,
//! deterministic CSV/JSON emission and sweep analysis.

pub mod analysis;
pub mod config;
pub mod emit;
