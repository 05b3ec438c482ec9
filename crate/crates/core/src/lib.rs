//! Counting points of integer varieties over prime fields.
//!
//! `frobscan-core` is the allocation-only half of frobscan. It holds every
//! algorithm: exact integer polynomials and their parser, Legendre-character
//! kernels, brute-force and character-sum point counts, prime sieves, density
//! scans over primes, the closed-form sieve constants, the one-parameter
//! hyperelliptic family experiment and the explicit constructions of curves
//! whose least non-anomalous prime is large.
//!
//! The crate is `#![no_std]` and needs only `alloc`. File formats, JSON
//! reports, the thread pool and the command line live in the `frobscan`
//! crate, which drives these routines prime by prime.
//!
//! Everything here is a pure function of its inputs. Operations that touch
//! many primes are split into a per-prime step and an order-preserving
//! combine step, so that a parallel driver produces the same output as the
//! sequential helpers in this crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod constructions;
pub mod counting;
pub mod density;
pub mod family;
pub mod ff;
pub mod poly;
pub mod primes;
mod sum;

pub use counting::{CountConfig, CountError, PointCountRecord, Variety};
pub use density::DensityReport;
pub use poly::{IntPoly, ParseError, UniPoly};
