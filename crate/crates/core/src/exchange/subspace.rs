use num_complex::Complex64;

use super::{check_normalized, wrap_phase, Amplitudes, Anisotropy, ExchangeKernel, PairGate};
use crate::error::{Error, Result};

/// A state in the single-excitation sector: `amplitude(j)` is the amplitude of the basis state
/// with only qubit `j` excited.
///
/// The phase `e^{−iλt/2}` that every gate puts on its spectator qubits is not written into the
/// amplitudes. It is accumulated as a single global phase angle, and the two qubits the gate acts
/// on are compensated by an extra `e^{iλt}`, so a gate touches two entries regardless of N.
/// [`SubspaceState::amplitudes`] applies the phase.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceState {
    amps: Vec<Complex64>,
    phase: f64,
}

impl SubspaceState {
    /// Qubit 0 excited, all others in the ground state.
    pub fn initial(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidSize("need at least one qubit".into()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { amps, phase: 0.0 })
    }

    /// Equal-amplitude, equal-phase superposition (the W state).
    pub fn w_state(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidSize("need at least one qubit".into()));
        }
        let c = Complex64::new(1.0 / (n_qubits as f64).sqrt(), 0.0);
        Ok(Self {
            amps: vec![c; n_qubits],
            phase: 0.0,
        })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        Self::from_parts(amps, 0.0)
    }

    /// Builds a state whose materialized amplitudes are `e^{i·global_phase} · amps[j]`.
    pub fn from_parts(amps: Vec<Complex64>, global_phase: f64) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidSize("need at least one qubit".into()));
        }
        if !global_phase.is_finite() {
            return Err(Error::NonFinite("global phase"));
        }
        check_normalized(&amps)?;
        Ok(Self {
            amps,
            phase: wrap_phase(global_phase),
        })
    }

    /// Amplitudes without the lazily tracked global phase.
    pub fn stored_amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Accumulated global phase angle in (−π, π].
    pub fn global_phase_angle(&self) -> f64 {
        self.phase
    }

    pub fn global_phase(&self) -> Complex64 {
        Complex64::cis(self.phase)
    }

    /// Materialized amplitude of qubit `j`.
    pub fn amplitude(&self, j: usize) -> Complex64 {
        self.global_phase() * self.amps[j]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies one exchange gate in place. O(1) in the number of qubits.
    pub fn apply(&mut self, gate: &PairGate, lam: Anisotropy) -> Result<()> {
        gate.check(self.amps.len())?;
        let k = ExchangeKernel::new(gate.t, lam);
        // The spectators' e^{−iλt/2} goes into the global phase, so the pair is divided by it:
        // stored amplitudes evolve with e^{iλt}·(cos t, −i sin t).
        let shift = k.equal.conj();
        let keep = shift * k.keep;
        let transfer = shift * k.transfer;
        let (a, b) = (self.amps[gate.a], self.amps[gate.b]);
        self.amps[gate.a] = keep * a + transfer * b;
        self.amps[gate.b] = keep * b + transfer * a;
        self.phase = wrap_phase(self.phase + k.equal_angle);
        Ok(())
    }

    /// Applies gates in order.
    pub fn apply_all<'a, I>(&mut self, gates: I, lam: Anisotropy) -> Result<()>
    where
        I: IntoIterator<Item = &'a PairGate>,
    {
        gates.into_iter().try_for_each(|g| self.apply(g, lam))
    }
}

impl Amplitudes for SubspaceState {
    fn n_qubits(&self) -> usize {
        self.amps.len()
    }

    fn dim(&self) -> usize {
        self.amps.len()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        let g = self.global_phase();
        self.amps.iter().map(|&c| g * c).collect()
    }
}

pub fn make_initial_subspace(n: usize) -> Result<SubspaceState> {
    SubspaceState::initial(n)
}

/// Functional form of [`SubspaceState::apply`]; consumes the state so no copy is made.
pub fn apply_gate_subspace(
    mut state: SubspaceState,
    gate: &PairGate,
    lam: Anisotropy,
) -> Result<SubspaceState> {
    state.apply(gate, lam)?;
    Ok(state)
}

pub fn materialize(state: &SubspaceState) -> Vec<Complex64> {
    state.amplitudes()
}
