//! End-to-end checks: run compiled schedules, inspect the final amplitudes and phases, and
//! cross-validate the subspace engine against the full 2^N simulation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::{
    embed_subspace_into_full, overlap, wrap_phase, Amplitudes, Anisotropy, FullState, PairGate,
    SubspaceState,
};
use crate::schedules::{Protocol, Schedule};

/// Phases closer than this count as equal.
pub const PHASE_EQUALITY_TOLERANCE: f64 = 1e-9;
/// A phase spread above this rules out an equal-phase (W) target.
pub const NO_GO_THRESHOLD: f64 = 0.1;
/// Largest register the oracle cross-check runs on.
pub const MAX_ORACLE_QUBITS: usize = 10;

/// Starts from qubit 0 excited and applies the schedule's gates in order.
pub fn run_schedule(schedule: &Schedule, lam: Anisotropy) -> Result<SubspaceState> {
    let mut state = SubspaceState::initial(schedule.n_qubits())?;
    state.apply_all(schedule.gates(), lam)?;
    Ok(state)
}

/// Same as [`run_schedule`] on the full 2^N register.
pub fn run_schedule_full(schedule: &Schedule, lam: Anisotropy) -> Result<FullState> {
    let mut state = FullState::basis(schedule.n_qubits(), 1)?;
    for g in schedule.gates() {
        state.apply(g, lam)?;
    }
    Ok(state)
}

/// How close a single-excitation state is to an equal-weight superposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetReport {
    pub n_qubits: usize,
    pub magnitudes: Vec<f64>,
    /// Relative to component 0, in (−π, π].
    pub phases: Vec<f64>,
    /// max_j ||c_j| − 1/√N|
    pub max_magnitude_error: f64,
    /// Largest circular distance between any two phases.
    pub phase_spread: f64,
    pub phases_all_equal: bool,
}

impl TargetReport {
    pub fn from_amplitudes(amps: &[Complex64]) -> Self {
        let n = amps.len();
        let target = 1.0 / (n as f64).sqrt();
        let magnitudes: Vec<f64> = amps.iter().map(|c| c.norm()).collect();
        let reference = amps.first().map_or(0.0, |c| c.arg());
        let phases: Vec<f64> = amps
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j == 0 {
                    0.0
                } else {
                    wrap_phase(c.arg() - reference)
                }
            })
            .collect();
        let max_magnitude_error = magnitudes
            .iter()
            .map(|m| (m - target).abs())
            .fold(0.0, f64::max);
        let phase_spread = circular_spread(&phases);
        Self {
            n_qubits: n,
            magnitudes,
            phases,
            max_magnitude_error,
            phase_spread,
            phases_all_equal: phase_spread < PHASE_EQUALITY_TOLERANCE,
        }
    }
}

pub fn check_target(state: &SubspaceState) -> TargetReport {
    TargetReport::from_amplitudes(&state.amplitudes())
}

fn circular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Maximum pairwise circular distance, O(n log n): for each angle the farthest one is a
/// neighbour of its antipode in sorted order.
pub fn circular_spread(phases: &[f64]) -> f64 {
    if phases.len() < 2 {
        return 0.0;
    }
    let mut sorted: Vec<f64> = phases.iter().map(|&p| wrap_phase(p)).collect();
    sorted.sort_by(f64::total_cmp);
    let len = sorted.len();
    let mut best = 0.0f64;
    for &p in &sorted {
        let antipode = wrap_phase(p + PI);
        let idx = sorted.partition_point(|&q| q < antipode);
        for k in [idx % len, (idx + len - 1) % len] {
            best = best.max(circular_distance(p, sorted[k]));
        }
    }
    best
}

fn random_gate<R: Rng>(rng: &mut R, n: usize) -> PairGate {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    PairGate {
        a,
        b,
        t: rng.gen_range(0.0..TAU),
        stage: None,
    }
}

fn random_subspace_state<R: Rng>(rng: &mut R, n: usize) -> Result<SubspaceState> {
    let mut amps: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|c| *c /= norm);
    SubspaceState::from_parts(amps, rng.gen_range(-PI..PI))
}

/// `1 − |⟨W|U|W⟩|` for one gate on the full-space W state.
pub fn w_gate_deviation(n: usize, gate: &PairGate, lam: Anisotropy) -> Result<f64> {
    let w = embed_subspace_into_full(&SubspaceState::w_state(n)?)?;
    let mut out = w.clone();
    out.apply(gate, lam)?;
    Ok(1.0 - overlap(&w, &out)?.norm())
}

/// Worst `1 − |⟨W|U|W⟩|` over `trials` random single gates at the Heisenberg point.
pub fn w_invariance_check(n: usize, trials: usize, rng_seed: u64) -> Result<f64> {
    w_invariance_check_with(n, trials, rng_seed, Anisotropy::HEISENBERG)
}

/// [`w_invariance_check`] at arbitrary λ. Away from λ = 1 the two spin sectors pick up
/// different phases and the deviation is generally nonzero.
pub fn w_invariance_check_with(
    n: usize,
    trials: usize,
    rng_seed: u64,
    lam: Anisotropy,
) -> Result<f64> {
    if !(2..=crate::exchange::MAX_FULL_QUBITS).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "W invariance check needs 2 <= n <= 20, got {n}"
        )));
    }
    let w = embed_subspace_into_full(&SubspaceState::w_state(n)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let mut out = w.clone();
        out.apply(&random_gate(&mut rng, n), lam)?;
        worst = worst.max(1.0 - overlap(&w, &out)?.norm());
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoGoOutcome {
    pub protocol: Protocol,
    pub n_qubits: usize,
    pub lambda: f64,
    pub phases: Vec<f64>,
    pub phase_spread: f64,
}

impl NoGoOutcome {
    /// True when the final state is clearly not an equal-phase W state.
    pub fn holds(&self) -> bool {
        self.phase_spread > NO_GO_THRESHOLD
    }
}

/// Runs a protocol and reports how far its output phases are from all being equal.
pub fn no_go_demonstration(protocol: Protocol, n: usize, lam: Anisotropy) -> Result<NoGoOutcome> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "no-go demonstration needs n >= 3, got {n}"
        )));
    }
    let schedule = protocol.compile(n)?.with_lambda(lam);
    let report = check_target(&run_schedule(&schedule, lam)?);
    Ok(NoGoOutcome {
        protocol,
        n_qubits: n,
        lambda: lam.value(),
        phases: report.phases,
        phase_spread: report.phase_spread,
    })
}

/// Applies one random gate sequence to a random single-excitation state and to its full-space
/// embedding; returns the largest componentwise difference of the one-hot amplitudes.
pub fn oracle_crosscheck(
    n: usize,
    gate_count: usize,
    rng_seed: u64,
    lam: Anisotropy,
) -> Result<f64> {
    oracle_crosscheck_with_fault(n, gate_count, rng_seed, lam, false)
}

/// Self-test hook for the verification harness: with `inject_phase_bug` set the subspace side
/// is compared without its global phase, which must be detected.
pub fn oracle_crosscheck_with_fault(
    n: usize,
    gate_count: usize,
    rng_seed: u64,
    lam: Anisotropy,
    inject_phase_bug: bool,
) -> Result<f64> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "oracle cross-check needs 2 <= n <= {MAX_ORACLE_QUBITS}, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut sub = random_subspace_state(&mut rng, n)?;
    let mut full = embed_subspace_into_full(&sub)?;
    for _ in 0..gate_count {
        let g = random_gate(&mut rng, n);
        sub.apply(&g, lam)?;
        full.apply(&g, lam)?;
    }
    let fast = if inject_phase_bug {
        sub.stored_amplitudes().to_vec()
    } else {
        sub.amplitudes()
    };
    Ok(fast
        .iter()
        .zip(full.one_hot_amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// One entry of the committed phase-pattern regression file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub n: usize,
    pub lambda: f64,
    pub protocol: Protocol,
    pub phases: Vec<f64>,
    pub magnitudes: Vec<f64>,
}

/// Phase pattern of a protocol's output computed on the full 2^N register.
pub fn phase_record_full(protocol: Protocol, n: usize, lam: Anisotropy) -> Result<PhaseRecord> {
    let schedule = protocol.compile(n)?.with_lambda(lam);
    let full = run_schedule_full(&schedule, lam)?;
    let report = TargetReport::from_amplitudes(&full.one_hot_amplitudes());
    Ok(PhaseRecord {
        n,
        lambda: lam.value(),
        protocol,
        phases: report.phases,
        magnitudes: report.magnitudes,
    })
}

/// The same pattern from the subspace engine.
pub fn phase_record(protocol: Protocol, n: usize, lam: Anisotropy) -> Result<PhaseRecord> {
    let schedule = protocol.compile(n)?.with_lambda(lam);
    let report = check_target(&run_schedule(&schedule, lam)?);
    Ok(PhaseRecord {
        n,
        lambda: lam.value(),
        protocol,
        phases: report.phases,
        magnitudes: report.magnitudes,
    })
}

/// Largest circular difference between two phase lists of equal length.
pub fn max_phase_difference(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| circular_distance(a, b))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedules::{divide_conquer_schedule, flying_schedule, sequential_schedule};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn flying_four_reaches_equal_split() {
        let s = run_schedule(&flying_schedule(4).unwrap(), Anisotropy::HEISENBERG).unwrap();
        for c in s.amplitudes() {
            assert!((c.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn sequential_two() {
        let s = run_schedule(&sequential_schedule(2).unwrap(), Anisotropy::HEISENBERG).unwrap();
        for c in s.amplitudes() {
            assert!((c.norm() - FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn divide_conquer_eight_xx_limit() {
        let s = run_schedule(&divide_conquer_schedule(8).unwrap(), Anisotropy::XX).unwrap();
        assert!(check_target(&s).max_magnitude_error < 1e-15);
    }

    #[test]
    fn exact_w_state_report() {
        let r = check_target(&SubspaceState::w_state(5).unwrap());
        assert_eq!(r.max_magnitude_error, 0.0);
        assert!(r.phases_all_equal);
        assert_eq!(r.phases[0], 0.0);
    }

    #[test]
    fn basis_state_report() {
        for n in [4, 7, 100] {
            let r = check_target(&SubspaceState::initial(n).unwrap());
            let expected = 1.0 - 1.0 / (n as f64).sqrt();
            assert!((r.max_magnitude_error - expected).abs() < 1e-15);
        }
        // below four qubits the empty components are further from 1/√N
        for n in [2, 3] {
            let r = check_target(&SubspaceState::initial(n).unwrap());
            let expected = 1.0 / (n as f64).sqrt();
            assert!((r.max_magnitude_error - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn flying_three_has_unequal_phases() {
        let s = run_schedule(&flying_schedule(3).unwrap(), Anisotropy::HEISENBERG).unwrap();
        let r = check_target(&s);
        assert!(r.max_magnitude_error <= 1e-12);
        assert!(!r.phases_all_equal);
    }

    #[test]
    fn spread_is_circular() {
        assert_eq!(circular_spread(&[0.0]), 0.0);
        assert!((circular_spread(&[3.0, -3.0]) - (TAU - 6.0)).abs() < 1e-15);
        assert!((circular_spread(&[0.0, -FRAC_PI_2, -FRAC_PI_2]) - FRAC_PI_2).abs() < 1e-15);
        assert!((circular_spread(&[0.0, 1.0, 2.0, 3.0]) - 3.0).abs() < 1e-15);
        assert!((circular_spread(&[0.0, 2.0, -2.0]) - (TAU - 4.0).max(2.0)).abs() < 1e-15);
    }

    #[test]
    fn spread_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in 2..40 {
            let phases: Vec<f64> = (0..len).map(|_| rng.gen_range(-PI..PI)).collect();
            let mut brute = 0.0f64;
            for x in &phases {
                for y in &phases {
                    brute = brute.max(circular_distance(*x, *y));
                }
            }
            assert!((circular_spread(&phases) - brute).abs() < 1e-15);
        }
    }

    #[test]
    fn w_invariance_two_qubits() {
        let g = PairGate::new(0, 1, 1.234).unwrap();
        assert!(w_gate_deviation(2, &g, Anisotropy::HEISENBERG).unwrap() <= 1e-12);
        assert!(w_invariance_check(2, 50, 1).unwrap() <= 1e-12);
    }

    #[test]
    fn w_invariance_seed_5() {
        assert!(w_invariance_check(5, 100, 5).unwrap() <= 1e-12);
    }

    #[test]
    fn w_not_invariant_away_from_heisenberg() {
        let g = PairGate::new(0, 1, FRAC_PI_2).unwrap();
        let d = w_gate_deviation(3, &g, Anisotropy::new(2.0).unwrap()).unwrap();
        // U W = (1, 1, −i)/√3, so |⟨W|U|W⟩| = √5/3
        assert!((d - (1.0 - 5f64.sqrt() / 3.0)).abs() < 1e-15);
        assert!(d > 0.01);
    }

    #[test]
    fn w_invariance_rejects_bad_size() {
        assert!(w_invariance_check(1, 1, 0).is_err());
        assert!(w_invariance_check(21, 1, 0).is_err());
    }

    #[test]
    fn no_go_examples() {
        let cases = [
            (Protocol::Flying, 3, 1.0),
            (Protocol::Sequential, 4, 0.0),
            (Protocol::DivideConquer, 4, 1.0),
        ];
        for (p, n, lam) in cases {
            let out = no_go_demonstration(p, n, Anisotropy::new(lam).unwrap()).unwrap();
            assert!(out.holds(), "{p} n={n} spread {}", out.phase_spread);
        }
        assert!(no_go_demonstration(Protocol::Flying, 2, Anisotropy::HEISENBERG).is_err());
    }

    #[test]
    fn crosscheck_small() {
        assert!(oracle_crosscheck(2, 1, 3, Anisotropy::HEISENBERG).unwrap() <= 1e-15);
        assert!(oracle_crosscheck(6, 50, 11, Anisotropy::new(0.5).unwrap()).unwrap() <= 1e-12);
        assert!(oracle_crosscheck(11, 1, 0, Anisotropy::HEISENBERG).is_err());
    }

    #[test]
    fn injected_phase_bug_is_detected() {
        let lam = Anisotropy::new(2.0).unwrap();
        assert!(oracle_crosscheck_with_fault(4, 20, 9, lam, true).unwrap() > 1e-6);
    }

    #[test]
    fn full_and_subspace_phase_records_agree() {
        for p in Protocol::ALL {
            let lam = Anisotropy::new(0.5).unwrap();
            let a = phase_record(p, 8, lam).unwrap();
            let b = phase_record_full(p, 8, lam).unwrap();
            assert!(max_phase_difference(&a.phases, &b.phases) < 1e-13);
        }
    }
}
