//! Two-mode fixed-particle-number states and their entanglement.
//!
//! A [`TwoModeState`] of `total` particles holds the amplitudes of
//! `|n, total - n>` for `n = 0..=total`. The product of a system and an
//! ancilla is decomposed into sectors of fixed local particle number `k` at
//! site A; within a sector the A-side kets `|n> ⊗ |k - n>` are orthonormal
//! across `n`, so the Schmidt weights are just the normalized moduli
//! `|d_n c_{k-n}|^2 / p_k` and no diagonalization is ever needed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::NORM_TOL;

/// Sectors with a probability below this contribute exactly zero.
const SECTOR_FLOOR: f64 = 1e-300;

/// Pure state of `total` particles shared between two sites.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amps: Vec<Complex64>,
}

impl TwoModeState {
    /// Builds a state from amplitudes indexed by the particle count at A.
    /// The squared norm must be 1 within [`NORM_TOL`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::invalid("a state needs at least one amplitude"));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::invalid("non-finite amplitude"));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!(
                "state is not normalized (squared norm {norm:.17e})"
            )));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::invalid("cannot normalize a zero or non-finite vector"));
        }
        Self::new(amps.into_iter().map(|a| a / norm).collect())
    }

    /// Real amplitudes, rescaled to unit norm.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Real nonnegative amplitudes `sqrt(p_n)` from a probability vector.
    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| **p < 0.0 || !p.is_finite()) {
            return Err(Error::invalid(format!("invalid probability {p}")));
        }
        Self::from_real(&probs.iter().map(|p| p.sqrt()).collect::<Vec<_>>())
    }

    /// The shared phase state: equal real amplitudes `1/sqrt(total + 1)`.
    pub fn uniform(total: usize) -> Self {
        let a = Complex64::new(1.0 / ((total + 1) as f64).sqrt(), 0.0);
        Self { amps: vec![a; total + 1] }
    }

    /// All particles at site A (`at_a = total`) or any other single Fock state.
    pub fn fock(total: usize, at_a: usize) -> Result<Self> {
        if at_a > total {
            return Err(Error::invalid(format!("index {at_a} exceeds total {total}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); total + 1];
        amps[at_a] = Complex64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn total(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude at `n`; indices outside `0..=total` read as zero.
    pub fn amp(&self, n: isize) -> Complex64 {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.amps.get(i).copied())
            .unwrap_or_default()
    }

    /// `|amp(n)|^2`, zero outside `0..=total`.
    pub fn prob(&self, n: isize) -> f64 {
        self.amp(n).norm_sqr()
    }

    pub fn probs(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiplies amplitude `n` by `exp(i * phases[n])`.
    pub fn with_phases(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.amps.len() {
            return Err(Error::invalid(format!(
                "expected {} phases, got {}",
                self.amps.len(),
                phases.len()
            )));
        }
        let amps = self
            .amps
            .iter()
            .zip(phases)
            .map(|(a, &t)| a * Complex64::from_polar(1.0, t))
            .collect();
        Ok(Self { amps })
    }

    /// Builds the state without the normalization check. Used for phase
    /// rotations of an already-valid state.
    pub(crate) fn from_unit_amps(amps: Vec<Complex64>) -> Self {
        debug_assert!(!amps.is_empty());
        Self { amps }
    }
}

/// One fixed-local-number sector of a system ⊗ ancilla product.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    /// Particles at site A.
    pub k: usize,
    pub p: f64,
    /// Schmidt weights, indexed by the system's local number `n` for the
    /// admissible range; empty when `p == 0`.
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorDecomposition {
    pub sectors: Vec<Sector>,
}

impl SectorDecomposition {
    pub fn probabilities(&self) -> Vec<f64> {
        self.sectors.iter().map(|s| s.p).collect()
    }
}

fn check_normalized(state: &TwoModeState, role: &str) -> Result<()> {
    let norm: f64 = state.amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::invalid(format!("{role} is not normalized (squared norm {norm:.17e})")));
    }
    Ok(())
}

/// Splits `system ⊗ ancilla` into the `N + M + 1` sectors of fixed particle
/// number at site A.
pub fn sector_decompose(system: &TwoModeState, ancilla: &TwoModeState) -> Result<SectorDecomposition> {
    check_normalized(system, "system")?;
    check_normalized(ancilla, "ancilla")?;
    let d = system.probs();
    let c = ancilla.probs();
    let (n_sys, m_anc) = (system.total(), ancilla.total());

    let sectors = (0..=n_sys + m_anc)
        .map(|k| {
            let lo = k.saturating_sub(m_anc);
            let hi = k.min(n_sys);
            let terms: Vec<f64> = (lo..=hi).map(|n| d[n] * c[k - n]).collect();
            let p: f64 = terms.iter().sum();
            let weights = if p > 0.0 {
                terms.iter().map(|t| t / p).collect()
            } else {
                Vec::new()
            };
            Sector { k, p, weights }
        })
        .collect();
    Ok(SectorDecomposition { sectors })
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
///
/// For the Schmidt weights of a pure bipartite state this is the von Neumann
/// entropy of either reduced state.
pub fn entanglement_of_modes(weights: &[f64]) -> Result<f64> {
    if let Some(w) = weights.iter().find(|w| **w < 0.0 || !w.is_finite()) {
        return Err(Error::invalid(format!("weight {w} is not a probability")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!("weights sum to {sum}, not 1")));
    }
    Ok(entropy_bits(weights))
}

pub(crate) fn entropy_bits(weights: &[f64]) -> f64 {
    let h: f64 = weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.log2())
        .sum();
    h.max(0.0)
}

/// Entanglement of modes of a single two-mode state, ignoring the
/// superselection rule: the entropy of its number distribution.
pub fn modal_entanglement(state: &TwoModeState) -> f64 {
    entropy_bits(&state.probs())
}

/// Particle entanglement of `system ⊗ ancilla`: the `p_k`-weighted average of
/// the modal entanglement of each sector.
pub fn particle_entanglement(system: &TwoModeState, ancilla: &TwoModeState) -> Result<f64> {
    let dec = sector_decompose(system, ancilla)?;
    Ok(dec
        .sectors
        .iter()
        .filter(|s| s.p >= SECTOR_FLOOR)
        .map(|s| s.p * entropy_bits(&s.weights))
        .sum())
}

/// Closed form of the particle entanglement for the single shared particle
/// `(|0,1> + |1,0>)/sqrt(2)` with the given ancilla.
pub fn particle_entanglement_single(ancilla: &TwoModeState) -> Result<f64> {
    check_normalized(ancilla, "ancilla")?;
    let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    let m = ancilla.total() as isize;
    let sum: f64 = (0..=m + 1)
        .map(|n| {
            let cn = ancilla.prob(n);
            let prev = ancilla.prob(n - 1);
            -2.0 * xlnx(cn) + xlnx(prev + cn)
        })
        .sum();
    Ok((sum / (2.0 * std::f64::consts::LN_2)).max(0.0))
}
