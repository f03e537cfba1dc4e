//! Phase-difference densities of two-mode states and the decomposition of
//! the Kerr-like factor `exp[-iϑ n(n-1)]` into linear phase shifts.
//!
//! For a state `Σ_n a_n |n, M - n>` the joint phase density of the two modes
//! factors into a uniform marginal `1/2π` times the density of the phase
//! difference `Δ`, `(1/2π) |Σ_n a_n e^{inΔ}|^2`. The particle entanglement
//! only sees `|a_n|`, while this density depends on the arguments of `a_n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fock::TwoModeState;

/// Sampled density of the phase difference on `Δ_k = 2πk / points`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDensity {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

impl PhaseDensity {
    /// Periodic trapezoidal integral over `[0, 2π)`. Exact for trigonometric
    /// polynomials of degree below `points / 2`.
    pub fn integral(&self) -> f64 {
        self.density.iter().sum::<f64>() * TAU / self.density.len() as f64
    }

    /// `(Δ, density)` at the largest sample; the first one on ties.
    pub fn peak(&self) -> (f64, f64) {
        let (i, v) = self
            .density
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        (self.grid[i], v)
    }

    /// `max_k |self_k - other_k|`; both must share a grid.
    pub fn sup_distance(&self, other: &PhaseDensity) -> f64 {
        self.density
            .iter()
            .zip(&other.density)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `Σ_n a_n e^{inx}`.
fn amplitude_sum(amps: &[Complex64], x: f64) -> Complex64 {
    amps.iter()
        .enumerate()
        .map(|(n, a)| a * Complex64::from_polar(1.0, n as f64 * x))
        .sum()
}

fn grid(points: usize) -> Vec<f64> {
    (0..points).map(|k| TAU * k as f64 / points as f64).collect()
}

fn check_points(total: usize, points: usize) -> Result<()> {
    let need = 4 * (total + 1);
    if points < need {
        return Err(Error::invalid(format!("{points} grid points under-sample M = {total}; need at least {need}")));
    }
    Ok(())
}

/// Density of the phase difference between the two modes.
pub fn phase_difference_density(ancilla: &TwoModeState, points: usize) -> Result<PhaseDensity> {
    check_points(ancilla.total(), points)?;
    let grid = grid(points);
    let density = grid
        .iter()
        .map(|&d| amplitude_sum(ancilla.amps(), d).norm_sqr() / TAU)
        .collect();
    Ok(PhaseDensity { grid, density })
}

/// Joint density `P(θ_A, θ_B) = (1/2π) 𝒫(θ_A - θ_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPhaseDensity {
    pub uniform_marginal: f64,
    pub difference_density: PhaseDensity,
    amps: Vec<Complex64>,
}

impl JointPhaseDensity {
    /// Exact difference density at any `Δ`.
    pub fn difference_at(&self, delta: f64) -> f64 {
        amplitude_sum(&self.amps, delta).norm_sqr() / TAU
    }

    pub fn joint(&self, theta_a: f64, theta_b: f64) -> f64 {
        self.uniform_marginal * self.difference_at(theta_a - theta_b)
    }
}

/// Factors the joint phase density; the difference density is sampled on
/// `max(64, 8(M + 1))` points.
pub fn joint_phase_density_factor(ancilla: &TwoModeState) -> JointPhaseDensity {
    let points = (8 * (ancilla.total() + 1)).max(64);
    JointPhaseDensity {
        uniform_marginal: 1.0 / TAU,
        difference_density: phase_difference_density(ancilla, points)
            .expect("default grid satisfies the sampling bound"),
        amps: ancilla.amps().to_vec(),
    }
}

/// `exp[-iϑ n(n-1)] = Σ_k c_k exp(i n φ_k)` for `ϑ = πJ/K`.
#[derive(Debug, Clone, PartialEq)]
pub struct KerrDecomposition {
    pub j: u64,
    pub k: u64,
    pub vartheta: f64,
    pub phi: Vec<f64>,
    pub coeffs: Vec<Complex64>,
}

/// `exp[-iπ J n(n-1)/K]` with the exponent reduced modulo `2K` first.
fn kerr_phase(j: u64, k: u64, n: u64) -> Complex64 {
    let turns = (j % (2 * k)) * ((n * n.saturating_sub(1)) % (2 * k)) % (2 * k);
    Complex64::from_polar(1.0, -PI * turns as f64 / k as f64)
}

impl KerrDecomposition {
    /// `Σ_k c_k exp(i n φ_k)`.
    pub fn reconstruct(&self, n: u64) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&self.phi)
            .map(|(c, p)| c * Complex64::from_polar(1.0, n as f64 * p))
            .sum()
    }

    /// The target factor `exp[-iϑ n(n-1)]`.
    pub fn target(&self, n: u64) -> Complex64 {
        kerr_phase(self.j, self.k, n)
    }

    /// Phase-difference density of `Û|ψ>` computed as the coherent
    /// superposition of phase-shifted copies of `ψ`.
    pub fn superposed_density(&self, state: &TwoModeState, points: usize) -> Result<PhaseDensity> {
        check_points(state.total(), points)?;
        let grid = grid(points);
        let density = grid
            .iter()
            .map(|&d| {
                let sum: Complex64 = self
                    .coeffs
                    .iter()
                    .zip(&self.phi)
                    .map(|(c, p)| c * amplitude_sum(state.amps(), d + p))
                    .sum();
                sum.norm_sqr() / TAU
            })
            .collect();
        Ok(PhaseDensity { grid, density })
    }
}

/// Decomposes the Kerr factor for coprime positive `J`, `K`.
///
/// The coefficients use the conjugated kernel
/// `c_j = (1/K) Σ_{n<K} exp[-iϑ n(n-1)] exp(-i n φ_j)`, which is what makes
/// the reconstruction identity hold.
pub fn kerr_decomposition(j: u64, k: u64) -> Result<KerrDecomposition> {
    if j == 0 || k == 0 || j.gcd(&k) != 1 {
        return Err(Error::invalid(format!("J = {j} and K = {k} must be coprime positive integers")));
    }
    let phi0 = ((j * (k - 1)) % 2) as f64 * PI / k as f64;
    let phi: Vec<f64> = (0..k).map(|i| phi0 + TAU * i as f64 / k as f64).collect();
    let coeffs = phi
        .iter()
        .map(|&p| {
            (0..k)
                .map(|n| kerr_phase(j, k, n) * Complex64::from_polar(1.0, -(n as f64) * p))
                .sum::<Complex64>()
                / k as f64
        })
        .collect();
    Ok(KerrDecomposition { j, k, vartheta: PI * j as f64 / k as f64, phi, coeffs })
}

/// Applies `exp[-iϑ n(n-1)]` to each amplitude.
pub fn apply_kerr(state: &TwoModeState, vartheta: f64) -> TwoModeState {
    let amps = state
        .amps()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let nn = n as f64;
            a * Complex64::from_polar(1.0, -vartheta * nn * (nn - 1.0))
        })
        .collect();
    TwoModeState::from_unit_amps(amps)
}

/// Phases put on top of the moduli of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseAssignment {
    /// `θ_n = 0`.
    Zero,
    /// `θ_n = πn`.
    Linear,
    /// `θ_n` uniform on `[0, 2π)` from a ChaCha8 stream seeded with `seed`.
    Random { seed: u64 },
    /// Real amplitudes followed by the Kerr factor at `ϑ = π/2`.
    Kerr,
}

impl PhaseAssignment {
    pub fn label(&self) -> &'static str {
        match self {
            PhaseAssignment::Zero => "zero",
            PhaseAssignment::Linear => "linear",
            PhaseAssignment::Random { .. } => "random",
            PhaseAssignment::Kerr => "kerr",
        }
    }

    pub fn phases(&self, total: usize) -> Vec<f64> {
        match *self {
            PhaseAssignment::Zero => vec![0.0; total + 1],
            PhaseAssignment::Linear => (0..=total).map(|n| PI * n as f64).collect(),
            PhaseAssignment::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..=total).map(|_| rng.gen_range(0.0..TAU)).collect()
            }
            PhaseAssignment::Kerr => (0..=total)
                .map(|n| {
                    let nn = n as f64;
                    -PI / 2.0 * nn * (nn - 1.0)
                })
                .collect(),
        }
    }

    /// Keeps `|a_n|` and replaces the arguments.
    pub fn apply(&self, state: &TwoModeState) -> TwoModeState {
        let moduli: Vec<Complex64> = state.amps().iter().map(|a| Complex64::new(a.norm(), 0.0)).collect();
        TwoModeState::from_unit_amps(moduli)
            .with_phases(&self.phases(state.total()))
            .expect("one phase per amplitude")
    }
}
