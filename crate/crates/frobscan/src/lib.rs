//! Command-line front end for `frobscan-core`: variety and surface file
//! formats, built-in fixtures, rayon drivers over primes, report rendering
//! and the reference-value suite.

pub mod cli;
pub mod files;
pub mod fixtures;
pub mod par;
pub mod report;
pub mod suite;
