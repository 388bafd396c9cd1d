//! Distributed solvers for symmetric diagonally dominant M-matrices and a
//! dual Newton method for minimum-cost network flow built on top of them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! the terminal or the environment lives in the `lapflow` companion crate.
//!
//! Layout, bottom-up:
//!
//! * [`linalg`]: CSR and dense kernels, Cholesky, Jacobi eigenvalues.
//! * [`graph`]: weighted graphs, generators, Laplacians, grounding.
//! * [`spectral`]: SDDM validation, condition numbers, chain length,
//!   randomized Loewner-order probing.
//! * [`reference`]: centralized direct solver and the sequential
//!   inverse-chain solvers used as differential oracles.
//! * [`netsim`]: synchronous round simulator with hop enforcement and
//!   message accounting.
//! * [`distributed`]: node-local full-communication and R-hop solvers.
//! * [`flow`]: dual calculus, Newton directions, step policies, phases.
//! * [`stats`]: small regression helpers for scaling studies.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod distributed;
pub mod flow;
pub mod graph;
pub mod linalg;
pub mod netsim;
pub mod reference;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
