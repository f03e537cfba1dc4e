//! Comparison reference states and the figure of merit `D`.
//!
//! `D = (E_opt - E) / E_opt` is the relative shortfall of an ancilla's
//! particle entanglement with the single shared particle against the optimal
//! ancilla of the same size.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock::{particle_entanglement_single, TwoModeState};
use crate::single::solve_recurrence;

/// `ε` of the Summy-Pegg states. Used for every `M`, including `M < 10`.
pub const SUMMY_PEGG_EPSILON: f64 = 0.84;

/// Tolerance under which `E_P` counts as equal to the optimum.
const MERIT_TOL: f64 = 1e-12;

/// Amplitudes `∝ sin[π(n + ε)/(M + 2ε)]`.
pub fn phase_optimized(m: usize, epsilon: f64) -> Result<TwoModeState> {
    let l = m as f64 + 2.0 * epsilon;
    let amps: Vec<f64> = (0..=m)
        .map(|n| (std::f64::consts::PI * (n as f64 + epsilon) / l).sin())
        .collect();
    TwoModeState::from_real(&amps)
}

pub fn berry_wiseman(m: usize) -> TwoModeState {
    phase_optimized(m, 1.0).expect("sine amplitudes are positive")
}

pub fn summy_pegg(m: usize) -> TwoModeState {
    phase_optimized(m, SUMMY_PEGG_EPSILON).expect("sine amplitudes are positive")
}

/// Truncated two-mode coherent state, amplitudes `∝ sqrt((M/2)^n / n!)`.
pub fn two_mode_coherent(m: usize) -> TwoModeState {
    if m == 0 {
        return TwoModeState::uniform(0);
    }
    let ln_mean = (m as f64 / 2.0).ln();
    let mut ln_fact = 0.0;
    let log_weights: Vec<f64> = (0..=m)
        .map(|n| {
            if n > 0 {
                ln_fact += (n as f64).ln();
            }
            n as f64 * ln_mean - ln_fact
        })
        .collect();
    from_log_weights(&log_weights)
}

/// Binomial number distribution `C(M, n) p^n (1 - p)^{M-n}`.
pub fn binomial_state(m: usize, p: f64) -> Result<TwoModeState> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("binomial p must lie in (0, 1), got {p}")));
    }
    let mut ln_choose = 0.0;
    let log_weights: Vec<f64> = (0..=m)
        .map(|n| {
            if n > 0 {
                ln_choose += ((m - n + 1) as f64).ln() - (n as f64).ln();
            }
            ln_choose + n as f64 * p.ln() + (m - n) as f64 * (1.0 - p).ln()
        })
        .collect();
    Ok(from_log_weights(&log_weights))
}

pub fn shared_phase_state(m: usize) -> TwoModeState {
    TwoModeState::uniform(m)
}

fn from_log_weights(log_weights: &[f64]) -> TwoModeState {
    let top = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let probs: Vec<f64> = log_weights.iter().map(|l| (l - top).exp()).collect();
    TwoModeState::from_probs(&probs).expect("weights are positive and finite")
}

/// `E_P` of the single shared particle with the optimal `M`-particle ancilla.
pub fn optimal_particle_entanglement(m: usize) -> Result<f64> {
    let opt = solve_recurrence(m, 1e-12)?;
    particle_entanglement_single(&opt.state())
}

fn merit(e_opt: f64, e: f64) -> Result<f64> {
    let shortfall = e_opt - e;
    if shortfall.abs() <= MERIT_TOL {
        return Ok(0.0);
    }
    if shortfall < 0.0 {
        return Err(Error::invalid(format!(
            "ancilla exceeds the optimal particle entanglement ({e} > {e_opt})"
        )));
    }
    Ok(shortfall / e_opt)
}

/// Relative shortfall `D` of `ancilla` against the optimal ancilla of size `M`.
pub fn figure_of_merit(ancilla: &TwoModeState, m: usize) -> Result<f64> {
    if ancilla.total() != m {
        return Err(Error::invalid(format!(
            "ancilla holds {} particles, expected {m}",
            ancilla.total()
        )));
    }
    if m == 0 {
        return Err(Error::UndefinedMerit(m));
    }
    merit(optimal_particle_entanglement(m)?, particle_entanglement_single(ancilla)?)
}

/// State families compared against the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Optimal,
    SharedPhase,
    Coherent,
    Binomial,
    SummyPegg,
    BerryWiseman,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Optimal,
        Family::SharedPhase,
        Family::Coherent,
        Family::Binomial,
        Family::SummyPegg,
        Family::BerryWiseman,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::Optimal => "optimal",
            Family::SharedPhase => "shared-phase",
            Family::Coherent => "coherent",
            Family::Binomial => "binomial",
            Family::SummyPegg => "summy-pegg",
            Family::BerryWiseman => "berry-wiseman",
        }
    }

    pub fn build(self, m: usize) -> Result<TwoModeState> {
        Ok(match self {
            Family::Optimal => solve_recurrence(m, 1e-12)?.state(),
            Family::SharedPhase => shared_phase_state(m),
            Family::Coherent => two_mode_coherent(m),
            Family::Binomial => binomial_state(m, 0.5)?,
            Family::SummyPegg => summy_pegg(m),
            Family::BerryWiseman => berry_wiseman(m),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| Error::invalid(format!("unknown state family '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeritEntry {
    pub family: Family,
    pub e_p: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeritReport {
    pub m: usize,
    pub entries: Vec<MeritEntry>,
}

impl MeritReport {
    /// Evaluates `E_P` and `D` for each family at `M >= 1`.
    pub fn compare(m: usize, families: &[Family]) -> Result<Self> {
        if m == 0 {
            return Err(Error::UndefinedMerit(0));
        }
        let e_opt = optimal_particle_entanglement(m)?;
        let entries = families
            .iter()
            .map(|&family| {
                let e_p = particle_entanglement_single(&family.build(m)?)?;
                Ok(MeritEntry { family, e_p, d: merit(e_opt, e_p)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { m, entries })
    }

    pub fn get(&self, family: Family) -> Option<&MeritEntry> {
        self.entries.iter().find(|e| e.family == family)
    }
}
