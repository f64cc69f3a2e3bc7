//! Gate schedules for spreading one excitation over N qubits.
//!
//! All three protocols use N − 1 pair gates:
//!
//! * [`Protocol::Flying`]: qubit 0 meets qubits 1, 2, …, N−1 in turn. Gate `j` (1-based)
//!   lasts `asin(1/√(N−j+1))`.
//! * [`Protocol::Sequential`]: the excitation walks down the chain, gate `j` on `(j−1, j)`
//!   lasting `acos(1/√(N−j+1))`.
//! * [`Protocol::DivideConquer`]: for N = 2^M, M stages of π/4 splits; stage `s` pairs every
//!   `q` that is a multiple of N/2^{s−1} with `q + N/2^s`.
//!
//! The serial durations are angles of the spiral of Theodorus (see [`theodorus`]).

pub mod theodorus;

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compensated::{multiple_of_half_pi, two_sum, CompensatedSum};
use crate::error::{Error, Result};
use crate::exchange::{Anisotropy, PairGate};
use theodorus::interior_angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Flying,
    Sequential,
    DivideConquer,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [
        Protocol::Flying,
        Protocol::Sequential,
        Protocol::DivideConquer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Flying => "flying",
            Protocol::Sequential => "sequential",
            Protocol::DivideConquer => "divide_conquer",
        }
    }

    /// Whether the protocol is defined for `n` qubits.
    pub fn supports(self, n: usize) -> bool {
        match self {
            Protocol::DivideConquer => n >= 2 && n.is_power_of_two(),
            _ => n >= 2,
        }
    }

    pub fn compile(self, n: usize) -> Result<Schedule> {
        match self {
            Protocol::Flying => flying_schedule(n),
            Protocol::Sequential => sequential_schedule(n),
            Protocol::DivideConquer => divide_conquer_schedule(n),
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flying" => Ok(Protocol::Flying),
            "sequential" => Ok(Protocol::Sequential),
            "divide_conquer" | "divide-conquer" => Ok(Protocol::DivideConquer),
            other => Err(format!("unknown protocol `{other}`")),
        }
    }
}

/// A compiled protocol: gates in execution order plus derived durations.
///
/// Stage indices are non-decreasing along `gates`. `parallel_time` sums the longest gate of
/// each stage; the two serial protocols put every gate in its own stage.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Schedule {
    protocol: Protocol,
    #[serde(rename = "n")]
    n_qubits: usize,
    lambda: Anisotropy,
    gates: Vec<PairGate>,
    serial_time: f64,
    parallel_time: f64,
}

impl Schedule {
    fn from_gates(protocol: Protocol, n_qubits: usize, gates: Vec<PairGate>) -> Self {
        let serial_time = gates
            .iter()
            .map(|g| g.t)
            .collect::<CompensatedSum>()
            .value();
        let parallel_time = stage_maxima(&gates).collect::<CompensatedSum>().value();
        Self {
            protocol,
            n_qubits,
            lambda: Anisotropy::default(),
            gates,
            serial_time,
            parallel_time,
        }
    }

    /// Records the anisotropy the schedule is meant to run under. Gate times do not depend on it.
    pub fn with_lambda(mut self, lambda: Anisotropy) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn lambda(&self) -> Anisotropy {
        self.lambda
    }

    pub fn gates(&self) -> &[PairGate] {
        &self.gates
    }

    pub fn serial_time(&self) -> f64 {
        self.serial_time
    }

    pub fn parallel_time(&self) -> f64 {
        self.parallel_time
    }

    /// Number of stages (max stage index + 1).
    pub fn stage_count(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| g.stage)
            .max()
            .map_or(0, |s| s + 1)
    }

    /// Gates grouped by stage, in execution order.
    pub fn stages(&self) -> Vec<&[PairGate]> {
        self.gates
            .chunk_by(|x, y| x.stage == y.stage && x.stage.is_some())
            .collect()
    }

    /// Serial time as an unevaluated double-double `(hi, lo)`.
    pub fn serial_time_parts(&self) -> (f64, f64) {
        self.gates
            .iter()
            .map(|g| g.t)
            .collect::<CompensatedSum>()
            .parts()
    }

    /// Parses and validates the JSON produced by [`crate::io::write_schedule_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            protocol: Protocol,
            n: usize,
            lambda: f64,
            gates: Vec<PairGate>,
            serial_time: f64,
            parallel_time: f64,
        }
        let raw: Raw = serde_json::from_str(text)?;
        if raw.n < 2 || raw.gates.len() != raw.n - 1 {
            return Err(Error::InvalidSize(format!(
                "{} gates for {} qubits",
                raw.gates.len(),
                raw.n
            )));
        }
        for g in &raw.gates {
            g.check(raw.n)?;
            if !g.is_shortest_time() {
                return Err(Error::InvalidSize(format!(
                    "gate time {} outside [0, 2π)",
                    g.t
                )));
            }
        }
        let stages: Vec<_> = raw.gates.iter().map(|g| g.stage).collect();
        if stages.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSize(
                "stage indices must be non-decreasing".into(),
            ));
        }
        let s = Schedule::from_gates(raw.protocol, raw.n, raw.gates)
            .with_lambda(Anisotropy::new(raw.lambda)?);
        let tol = 1e-12 * s.serial_time.max(1.0);
        if (s.serial_time - raw.serial_time).abs() > tol
            || (s.parallel_time - raw.parallel_time).abs() > tol
        {
            return Err(Error::InvalidSize(
                "recorded times do not match the gates".into(),
            ));
        }
        Ok(s)
    }
}

fn stage_maxima(gates: &[PairGate]) -> impl Iterator<Item = f64> + '_ {
    gates
        .chunk_by(|x, y| x.stage == y.stage && x.stage.is_some())
        .map(|stage| stage.iter().map(|g| g.t).fold(0.0, f64::max))
}

fn check_serial_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "protocol needs n >= 2, got {n}"
        )));
    }
    Ok(())
}

/// Qubit 0 interacts with every other qubit; times increase along the schedule.
pub fn flying_schedule(n: usize) -> Result<Schedule> {
    check_serial_size(n)?;
    // gate k (0-based) leaves 1/√N on qubit k+1: asin(1/√(N−k)) = α_{N−1−k}
    let gates = (0..n - 1)
        .map(|k| PairGate {
            a: 0,
            b: k + 1,
            t: interior_angle(n - 1 - k),
            stage: Some(k),
        })
        .collect();
    Ok(Schedule::from_gates(Protocol::Flying, n, gates))
}

/// Nearest-neighbour hops down the chain; times decrease along the schedule.
pub fn sequential_schedule(n: usize) -> Result<Schedule> {
    check_serial_size(n)?;
    // gate k (0-based) leaves 1/√N on qubit k: acos(1/√(N−k)) = β_{N−1−k}
    let gates = (0..n - 1)
        .map(|k| PairGate {
            a: k,
            b: k + 1,
            t: theodorus::exterior_angle(n - 1 - k),
            stage: Some(k),
        })
        .collect();
    Ok(Schedule::from_gates(Protocol::Sequential, n, gates))
}

/// Hierarchical halving for N = 2^M: M stages of π/4 gates on disjoint pairs.
pub fn divide_conquer_schedule(n: usize) -> Result<Schedule> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let stages = n.trailing_zeros() as usize;
    let mut gates = Vec::with_capacity(n - 1);
    for s in 1..=stages {
        let stride = n >> (s - 1);
        let offset = n >> s;
        for q in (0..n).step_by(stride) {
            gates.push(PairGate {
                a: q,
                b: q + offset,
                t: FRAC_PI_4,
                stage: Some(s - 1),
            });
        }
    }
    Ok(Schedule::from_gates(Protocol::DivideConquer, n, gates))
}

/// Closed-form `(serial, parallel)` durations without compiling the schedule.
pub fn total_time(protocol: Protocol, n: usize) -> Result<(f64, f64)> {
    if !protocol.supports(n) {
        return Err(match protocol {
            Protocol::DivideConquer => Error::NotPowerOfTwo(n),
            _ => Error::InvalidSize(format!("protocol needs n >= 2, got {n}")),
        });
    }
    Ok(match protocol {
        Protocol::Flying => {
            let theta = theodorus::theta(n);
            (theta, theta)
        }
        Protocol::Sequential => {
            let t = sequential_time_from_theta(n, theodorus::theta_sum(n));
            (t, t)
        }
        Protocol::DivideConquer => {
            let stages = n.trailing_zeros() as f64;
            ((n - 1) as f64 * FRAC_PI_4, stages * FRAC_PI_4)
        }
    })
}

/// (N−1)·π/2 − θ_N, evaluated in double-double and rounded once.
pub fn sequential_time_from_theta(n: usize, theta: CompensatedSum) -> f64 {
    let (hi, lo) = theta.parts();
    let (quarter_turns, tail) = multiple_of_half_pi((n - 1) as f64);
    let (d, e) = two_sum(quarter_turns, -hi);
    d + (e + tail - lo)
}
