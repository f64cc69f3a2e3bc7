//! Spreading a single excitation over N qubits with pairwise XXZ exchange gates.
//!
//! * [`exchange`]: exchange unitaries on single-excitation and full 2^N states.
//! * [`schedules`]: flying-qubit, sequential and divide-and-conquer gate schedules, their total
//!   times, and the spiral-of-Theodorus angles behind them.
//! * [`verification`]: target checks, phase patterns, W-state invariance, oracle cross-checks.
//! * [`io`]: JSON and CSV formats.
//! * [`cli`]: the `exw` command line.

pub mod cli;
pub mod compensated;
pub mod error;
pub mod exchange;
pub mod io;
pub mod schedules;
pub mod verification;

pub use error::{Error, Result};
pub use exchange::{
    apply_gate_subspace, embed_subspace_into_full, make_initial_subspace, materialize, overlap,
    Amplitudes, Anisotropy, FullState, PairGate, SubspaceState,
};
pub use schedules::theodorus::{spiral_points, theta, SpiralPoint};
pub use schedules::{
    divide_conquer_schedule, flying_schedule, sequential_schedule, total_time, Protocol, Schedule,
};
pub use verification::{
    check_target, no_go_demonstration, oracle_crosscheck, run_schedule, w_invariance_check,
    TargetReport,
};
