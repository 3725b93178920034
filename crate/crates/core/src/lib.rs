//! Co-optimisation of generation and transmission capacity in a linearised
//! (DC) power network.
//!
//! The crate bundles everything that is pure computation:
//!
//! * [`netmodel`]: network types, validation and the circuit/capacity algebra.
//! * [`lpcore`]: a bounded-variable two-phase primal simplex with duals.
//! * [`milp`]: best-bound branch and bound for mixed-binary programs.
//! * [`lopf`]: builders for the continuous LOPF and the exact big-M MILP.
//! * [`heuristics`]: the sequential-LP family with impedance updates and
//!   discretisation of line investment.
//! * [`bench`]: brute-force oracle, synthetic networks and method comparison.
//!
//! It is `no_std` and only needs `alloc`. Wall-clock time is injected through
//! [`Clock`] so callers on `std` can supply a real timer.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod clock;
mod math;

pub mod bench;
pub mod heuristics;
pub mod lopf;
pub mod lpcore;
pub mod milp;
pub mod netmodel;

pub use clock::{Clock, NullClock};
