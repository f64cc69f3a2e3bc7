//! XXZ exchange gates and the two state representations they act on.
//!
//! A pulse of duration `t` (in units of 2ħ/J) on qubits `(A, B)` applies
//!
//! ```text
//! U(t) = e^{iλt/2} P_{σA≠σB} (cos t · 1 − i sin t · Π_AB) + e^{−iλt/2} P_{σA=σB}
//! ```
//!
//! where `Π_AB` swaps the two qubits. [`SubspaceState`] restricts this to the
//! single-excitation sector (N amplitudes, O(1) work per gate); [`FullState`] applies it
//! over all 2^N basis states and serves as the brute-force reference.

mod full;
mod subspace;

pub use full::{embed_subspace_into_full, FullState, MAX_FULL_QUBITS};
pub use subspace::{apply_gate_subspace, make_initial_subspace, materialize, SubspaceState};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs whose norm deviates from one by more than this are rejected.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// XXZ anisotropy λ, the ratio of the zz coupling to the transverse coupling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Anisotropy(f64);

impl Anisotropy {
    /// The isotropic (Heisenberg) point, λ = 1.
    pub const HEISENBERG: Anisotropy = Anisotropy(1.0);
    /// Pure XX coupling, λ = 0.
    pub const XX: Anisotropy = Anisotropy(0.0);

    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFinite("anisotropy"));
        }
        Ok(Self(lambda))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Anisotropy {
    fn default() -> Self {
        Self::HEISENBERG
    }
}

/// An exchange pulse between qubits `a` and `b` (0-based) lasting `t` units of 2ħ/J.
///
/// `stage` groups gates that act on disjoint pairs and may run concurrently.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairGate {
    pub a: usize,
    pub b: usize,
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
}

impl PairGate {
    pub fn new(a: usize, b: usize, t: f64) -> Result<Self> {
        if a == b {
            return Err(Error::SameQubit(a));
        }
        if !t.is_finite() {
            return Err(Error::NonFinite("gate duration"));
        }
        Ok(Self {
            a,
            b,
            t,
            stage: None,
        })
    }

    pub fn with_stage(mut self, stage: usize) -> Self {
        self.stage = Some(stage);
        self
    }

    /// True when `t` lies in the shortest-time window `[0, 2π)`.
    pub fn is_shortest_time(&self) -> bool {
        (0.0..std::f64::consts::TAU).contains(&self.t)
    }

    pub(crate) fn check(&self, n_qubits: usize) -> Result<()> {
        if self.a == self.b {
            return Err(Error::SameQubit(self.a));
        }
        for index in [self.a, self.b] {
            if index >= n_qubits {
                return Err(Error::QubitOutOfRange { index, n_qubits });
            }
        }
        if !self.t.is_finite() {
            return Err(Error::NonFinite("gate duration"));
        }
        Ok(())
    }
}

/// Matrix elements of the exchange unitary for one `(t, λ)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ExchangeKernel {
    /// e^{iλt/2} cos t: amplitude to keep an excitation on the opposite-spin pair.
    pub keep: Complex64,
    /// −i e^{iλt/2} sin t: amplitude to move it across.
    pub transfer: Complex64,
    /// e^{−iλt/2}: phase on the equal-spin sector.
    pub equal: Complex64,
    /// −λt/2, the equal-spin phase angle.
    pub equal_angle: f64,
}

impl ExchangeKernel {
    pub fn new(t: f64, lam: Anisotropy) -> Self {
        let half = 0.5 * lam.value() * t;
        let opposite = Complex64::cis(half);
        let (sin, cos) = t.sin_cos();
        Self {
            keep: opposite * cos,
            transfer: opposite * Complex64::new(0.0, -sin),
            equal: Complex64::cis(-half),
            equal_angle: -half,
        }
    }
}

/// Common read access to the two state representations.
pub trait Amplitudes {
    fn n_qubits(&self) -> usize;
    /// Hilbert-space dimension of the representation (N or 2^N).
    fn dim(&self) -> usize;
    /// Materialized amplitudes, global phase included.
    fn amplitudes(&self) -> Vec<Complex64>;
}

/// ⟨x|y⟩ over materialized amplitudes.
pub fn overlap<S: Amplitudes>(x: &S, y: &S) -> Result<Complex64> {
    if x.n_qubits() != y.n_qubits() || x.dim() != y.dim() {
        return Err(Error::SizeMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.amplitudes()
        .iter()
        .zip(y.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

pub(crate) fn check_normalized(amps: &[Complex64]) -> Result<()> {
    if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("amplitude"));
    }
    let deviation = (amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs();
    if deviation > NORM_TOLERANCE {
        return Err(Error::NotNormalized { deviation });
    }
    Ok(())
}

/// Wraps an angle into (−π, π].
pub fn wrap_phase(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gate_rejects_same_qubit() {
        assert!(matches!(PairGate::new(2, 2, 0.1), Err(Error::SameQubit(2))));
    }

    #[test]
    fn gate_rejects_nan() {
        assert!(PairGate::new(0, 1, f64::NAN).is_err());
        assert!(Anisotropy::new(f64::INFINITY).is_err());
    }

    #[test]
    fn shortest_time_window() {
        assert!(PairGate::new(0, 1, 0.0).unwrap().is_shortest_time());
        assert!(!PairGate::new(0, 1, 2.0 * PI).unwrap().is_shortest_time());
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_phase(0.25), 0.25);
    }

    #[test]
    fn kernel_is_unitary_block() {
        let k = ExchangeKernel::new(0.7, Anisotropy::new(0.3).unwrap());
        assert!((k.keep.norm_sqr() + k.transfer.norm_sqr() - 1.0).abs() < 1e-15);
        assert!((k.equal.norm() - 1.0).abs() < 1e-15);
    }
}
