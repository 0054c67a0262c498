//! Dense statevector simulation for small n, used to verify the
//! measurement-projection story at the amplitude level.
//!
//! Basis convention: vertex 1 is the most significant bit of the basis
//! index, i.e. bit `n - v` holds vertex v. All public operations keep the
//! state normalized; trajectories through noisy channels renormalize after
//! each branch selection.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{check_completeness, Kraus2};
use crate::pauli::PauliOperator;

/// Largest qubit count the dense simulator accepts.
pub const STATEVECTOR_LIMIT: usize = 16;

#[derive(Clone, Debug)]
pub struct StateVector {
    n: u32,
    amps: Vec<Complex64>,
}

fn check_sim_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("statevector needs at least one qubit"));
    }
    if n > STATEVECTOR_LIMIT {
        return Err(Error::TooLarge {
            what: "dense statevector",
            limit: STATEVECTOR_LIMIT,
            n,
        });
    }
    Ok(())
}

impl StateVector {
    /// Computational basis state |index⟩.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_sim_size(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::invalid(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n: n as u32, amps })
    }

    /// State with explicit amplitudes; must be normalized within 1e-10.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_sim_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::invalid(format!(
                "expected {} amplitudes, got {}",
                1usize << n,
                amps.len()
            )));
        }
        let state = Self { n: n as u32, amps };
        if (state.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::invalid("amplitudes are not normalized"));
        }
        Ok(state)
    }

    /// |+⟩^⊗n.
    pub fn plus_state(n: usize) -> Result<Self> {
        check_sim_size(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n: n as u32,
            amps: vec![amp; dim],
        })
    }

    /// Graph state: CZ along every edge applied to |+⟩^⊗n.
    pub fn graph_state(graph: &Graph) -> Result<Self> {
        let n = graph.n();
        let mut state = Self::plus_state(n)?;
        for (u, v) in graph.edges() {
            let mask = state.vertex_bit(u) | state.vertex_bit(v);
            for (j, amp) in state.amps.iter_mut().enumerate() {
                if j & mask == mask {
                    *amp = -*amp;
                }
            }
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Basis-index bit holding vertex v (vertex 1 = most significant).
    #[inline]
    fn vertex_bit(&self, v: usize) -> usize {
        1usize << (self.n as usize - v)
    }

    /// Convert a vertex mask (bit v−1 ↔ vertex v) into a basis-index mask.
    fn index_mask(&self, vertex_mask: u128) -> usize {
        let n = self.n as usize;
        let mut out = 0usize;
        let mut m = vertex_mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize + 1;
            out |= 1usize << (n - v);
            m &= m - 1;
        }
        out
    }

    fn check_op_size(&self, p: &PauliOperator) -> Result<()> {
        if p.qubit_count() != self.n() {
            return Err(Error::SizeMismatch {
                left: p.qubit_count(),
                right: self.n(),
            });
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// True iff the states agree up to a global phase, within `tol` on the
    /// overlap deficit 1 − |⟨a|b⟩|.
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok((1.0 - self.inner(other)?.norm()).abs() < tol)
    }

    /// Exact action of a Pauli operator, including its global phase.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<Self> {
        self.check_op_size(p)?;
        let x_mask = self.index_mask(p.x_mask());
        let z_mask = self.index_mask(p.z_mask());
        let phase = match p.phase_exp() & 3 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (j, slot) in out.iter_mut().enumerate() {
            // i^p · Z_z X_x |b⟩ = i^p (−1)^{|z ∩ (b⊕x)|} |b ⊕ x⟩, read backwards
            let src = j ^ x_mask;
            let sign = if (j & z_mask).count_ones() & 1 == 1 {
                -phase
            } else {
                phase
            };
            *slot = sign * self.amps[src];
        }
        Ok(Self {
            n: self.n,
            amps: out,
        })
    }

    /// Apply a single-qubit matrix at vertex v. The result is generally not
    /// normalized; Kraus branch selection relies on that.
    pub fn apply_single_qubit(&self, v: usize, m: &Kraus2) -> Result<Self> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        let bit = self.vertex_bit(v);
        let mut out = self.amps.clone();
        for j0 in 0..self.amps.len() {
            if j0 & bit != 0 {
                continue;
            }
            let j1 = j0 | bit;
            let a0 = self.amps[j0];
            let a1 = self.amps[j1];
            out[j0] = m[0][0] * a0 + m[0][1] * a1;
            out[j1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(Self {
            n: self.n,
            amps: out,
        })
    }

    /// One trajectory through a single-qubit Kraus channel on vertex v:
    /// branch j is selected with probability ‖E_j ψ‖² and the state is
    /// renormalized. Averaged over trajectories this reproduces the
    /// operator-sum action of the channel.
    pub fn apply_kraus_channel<R: Rng + ?Sized>(
        &self,
        v: usize,
        ops: &[Kraus2],
        rng: &mut R,
    ) -> Result<Self> {
        if !check_completeness(ops) {
            return Err(Error::invalid(
                "Kraus set fails completeness (sum of E†E is not the identity)",
            ));
        }
        let branches: Vec<StateVector> = ops
            .iter()
            .map(|e| self.apply_single_qubit(v, e))
            .collect::<Result<_>>()?;
        let probs: Vec<f64> = branches.iter().map(|b| b.norm().powi(2)).collect();
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (branch, &p) in branches.iter().zip(&probs) {
            acc += p;
            if u < acc && p > 1e-15 {
                return Ok(branch.normalized());
            }
        }
        // numerical tail: take the heaviest branch
        let (k, _) = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty Kraus set");
        Ok(branches[k].normalized())
    }

    fn normalized(&self) -> Self {
        let norm = self.norm();
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a / norm).collect(),
        }
    }

    /// Projective measurement of a Hermitian Pauli `s`: samples ±1 with the
    /// Born probabilities ‖(I ± s)ψ/2‖² and returns the renormalized
    /// projected state.
    pub fn measure_stabilizer<R: Rng + ?Sized>(
        &self,
        s: &PauliOperator,
        rng: &mut R,
    ) -> Result<(i8, Self)> {
        self.check_op_size(s)?;
        if !s.is_hermitian() {
            return Err(Error::invalid(
                "measurement operator must be Hermitian (phase convention)",
            ));
        }
        let transformed = self.apply_pauli(s)?;
        let overlap = self.inner(&transformed)?.re;
        let p_plus = ((1.0 + overlap) / 2.0).clamp(0.0, 1.0);
        let outcome: i8 = if rng.random::<f64>() < p_plus { 1 } else { -1 };
        let sign = outcome as f64;
        let p = if outcome == 1 { p_plus } else { 1.0 - p_plus };
        if p < 1e-15 {
            return Err(Error::invalid(
                "measurement selected a zero-probability branch",
            ));
        }
        let scale = 1.0 / (2.0 * p.sqrt());
        let amps = self
            .amps
            .iter()
            .zip(&transformed.amps)
            .map(|(a, b)| (a + sign * b) * scale)
            .collect();
        Ok((
            outcome,
            Self {
                n: self.n,
                amps,
            },
        ))
    }
}
