//! Recognition of bounded binary configurations by layered cellular
//! automata, and the cost accounting that decides when splitting a
//! recognizer into two layers beats a single wide cell.
//!
//! The crate is organized around four ideas:
//!
//! - [`grid`]: square binary configurations with fixed boundary conditions,
//!   packed windows, and deterministic enumeration of whole configuration
//!   spaces.
//! - [`automaton`]: per-layer local rules, the induced global map with edge
//!   suppression, 1-/2-layer automata, and exhaustive recognition checks.
//! - [`complexity`]: cell-cost measures L(n, p), sequential/parallel costs
//!   of both automaton shapes, and exact-rational speedup diagnostics over
//!   ladders of zone sizes.
//! - [`patterns`]: angular templates, their radius-1 Hamming balls, exact
//!   and Monte Carlo counting of unique-instance configuration classes, and
//!   construction of matched 1-/2-layer recognizer pairs.
//!
//! Everything here is `no_std` (with `alloc`); IO, file formats, and the
//! experiment CLI live in the companion `fdca-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod automaton;
pub mod complexity;
pub mod error;
pub mod grid;
mod numeric;
pub mod patterns;

pub use error::{Error, Result};
