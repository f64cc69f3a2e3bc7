use num_complex::Complex64;

use super::{check_normalized, Amplitudes, Anisotropy, ExchangeKernel, PairGate, SubspaceState};
use crate::error::{Error, Result};

/// Largest register the full-space representation accepts.
pub const MAX_FULL_QUBITS: usize = 20;

/// A state over all 2^N computational basis states. Bit `j` of the basis index is set when
/// qubit `j` is excited.
#[derive(Clone, Debug, PartialEq)]
pub struct FullState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::InvalidSize("need at least one qubit".into()));
    }
    if n_qubits > MAX_FULL_QUBITS {
        return Err(Error::SizeLimit {
            n_qubits,
            max: MAX_FULL_QUBITS,
        });
    }
    Ok(())
}

impl FullState {
    /// The computational basis state with the given bit pattern.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidSize(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::SizeMismatch {
                left: amps.len(),
                right: 1 << n_qubits,
            });
        }
        check_normalized(&amps)?;
        Ok(Self { n_qubits, amps })
    }

    pub fn raw(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies the 4×4 exchange unitary to qubits `(gate.a, gate.b)` of every basis state.
    pub fn apply(&mut self, gate: &PairGate, lam: Anisotropy) -> Result<()> {
        gate.check(self.n_qubits)?;
        let k = ExchangeKernel::new(gate.t, lam);
        let (ma, mb) = (1usize << gate.a, 1usize << gate.b);
        for i in 0..self.amps.len() {
            match (i & ma != 0, i & mb != 0) {
                (true, false) => {
                    let j = i ^ ma ^ mb;
                    let (x, y) = (self.amps[i], self.amps[j]);
                    self.amps[i] = k.keep * x + k.transfer * y;
                    self.amps[j] = k.keep * y + k.transfer * x;
                }
                // handled together with its partner above
                (false, true) => {}
                _ => self.amps[i] *= k.equal,
            }
        }
        Ok(())
    }

    /// Probability weight in each excitation-number sector, indexed by Hamming weight.
    pub fn sector_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.n_qubits + 1];
        for (i, c) in self.amps.iter().enumerate() {
            w[i.count_ones() as usize] += c.norm_sqr();
        }
        w
    }

    /// Amplitudes on the N one-hot basis states, in qubit order.
    pub fn one_hot_amplitudes(&self) -> Vec<Complex64> {
        (0..self.n_qubits).map(|j| self.amps[1 << j]).collect()
    }

    /// Restricts to the single-excitation sector. Fails if weight lies outside it.
    pub fn project_to_subspace(&self) -> Result<SubspaceState> {
        SubspaceState::from_amplitudes(self.one_hot_amplitudes())
    }
}

impl Amplitudes for FullState {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn dim(&self) -> usize {
        self.amps.len()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.amps.clone()
    }
}

/// Places the materialized subspace amplitudes on the one-hot basis states.
pub fn embed_subspace_into_full(state: &SubspaceState) -> Result<FullState> {
    let n_qubits = state.n_qubits();
    check_size(n_qubits)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
    for (j, c) in state.amplitudes().into_iter().enumerate() {
        amps[1 << j] = c;
    }
    Ok(FullState { n_qubits, amps })
}
