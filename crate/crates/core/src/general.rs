//! Optimal ancillae for general system states.
//!
//! At an interior optimum of the particle entanglement over `|c_m|^2` under
//! normalization, the gradient component
//!
//! ```text
//! α(m) = Σ_n |d_n|^2 [ -log2(|d_n c_m|^2) + log2 p_{n+m} ]
//! ```
//!
//! takes the same value for every `m`. [`lagrange_residual`] evaluates it so
//! any candidate can be checked; the solvers here produce candidates for the
//! cases that reduce to one-dimensional problems.

use crate::error::{Error, Result};
use crate::fock::{modal_entanglement, TwoModeState};
use crate::roots::bisect;
use crate::single::AnsatzParams;

/// `p_k` of the product state, `k = 0..=N+M`.
fn sector_probs(d: &[f64], c: &[f64]) -> Vec<f64> {
    let mut p = vec![0.0; d.len() + c.len() - 1];
    for (n, dn) in d.iter().enumerate() {
        for (m, cm) in c.iter().enumerate() {
            p[n + m] += dn * cm;
        }
    }
    p
}

fn alpha_at(d: &[f64], c: &[f64], p: &[f64], m: usize) -> f64 {
    if c[m] == 0.0 {
        return f64::INFINITY;
    }
    d.iter()
        .enumerate()
        .filter(|(_, dn)| **dn > 0.0)
        .map(|(n, dn)| dn * (-(dn * c[m]).log2() + p[n + m].log2()))
        .sum()
}

/// Gradient component `α(m)` of the particle entanglement with respect to
/// `|c_m|^2`. Returns `+∞` when `c_m = 0`.
pub fn lagrange_residual(system: &TwoModeState, ancilla: &TwoModeState, m: usize) -> Result<f64> {
    if m > ancilla.total() {
        return Err(Error::invalid(format!("index {m} exceeds ancilla total {}", ancilla.total())));
    }
    let d = system.probs();
    let c = ancilla.probs();
    let p = sector_probs(&d, &c);
    Ok(alpha_at(&d, &c, &p, m))
}

/// `max_m α(m) - min_m α(m)`; zero at a stationary point with full support.
pub fn stationarity_spread(system: &TwoModeState, ancilla: &TwoModeState) -> f64 {
    let d = system.probs();
    let c = ancilla.probs();
    let p = sector_probs(&d, &c);
    let (lo, hi) = (0..c.len())
        .map(|m| alpha_at(&d, &c, &p, m))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| (lo.min(a), hi.max(a)));
    if hi.is_infinite() {
        f64::INFINITY
    } else {
        hi - lo
    }
}

/// Optimal `x = |c_1/c_0|^2` for `N = M = 1` with system weights
/// `(|d_0|^2, |d_1|^2)`.
///
/// Equating `α(0)` and `α(1)` gives, with `y = x |d_0|^2 / |d_1|^2`,
/// `|d_1|^2 log2(1 + y) = |d_0|^2 log2(1 + 1/y)`. The left side increases and
/// the right side decreases in `y`, so the root is unique for any system.
pub fn solve_n1m1(d0_sq: f64, d1_sq: f64) -> Result<f64> {
    if !(d0_sq > 0.0 && d1_sq > 0.0) || ((d0_sq + d1_sq) - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "system weights must be positive and sum to 1, got ({d0_sq}, {d1_sq})"
        )));
    }
    // in t = ln y the residual is monotone on the whole real line
    let g = |t: f64| d1_sq * t.exp().ln_1p() - d0_sq * (-t).exp().ln_1p();
    let (mut lo, mut hi) = (-1.0, 1.0);
    while g(lo) > 0.0 {
        lo *= 2.0;
        if lo < -1e3 {
            return Err(Error::NoRoot { what: "N = M = 1 ratio", lo, hi });
        }
    }
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::NoRoot { what: "N = M = 1 ratio", lo, hi });
        }
    }
    let t = bisect(g, lo, hi, 0.0).x;
    Ok(t.exp() * d1_sq / d0_sq)
}

/// Optimal ancilla for the shared-phase system with `N = M`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSolution {
    pub m: usize,
    pub probs: Vec<f64>,
    /// Shooting iterations used.
    pub shots: usize,
    /// `stationarity_spread` of the output against the uniform `N = M` system.
    pub max_stationarity_residual: f64,
}

impl GeneralSolution {
    pub fn state(&self) -> TwoModeState {
        TwoModeState::from_probs(&self.probs).expect("solver output is a distribution")
    }

    pub fn max_symmetry_error(&self) -> f64 {
        (0..=self.m)
            .map(|n| (self.probs[n] - self.probs[self.m - n]).abs())
            .fold(0.0, f64::max)
    }

    /// Nondecreasing up to `⌊M/2⌋` and nonincreasing after, allowing `tol`
    /// of numerical slack.
    pub fn is_unimodal(&self, tol: f64) -> bool {
        let mode = self.m / 2;
        let rising = self.probs[..=mode].windows(2).all(|w| w[1] >= w[0] - tol);
        let falling = self.probs[mode..].windows(2).all(|w| w[1] <= w[0] + tol);
        rising && falling
    }

    /// `Σ_{m <= ⌊M/2⌋} |c_m|^2`. Equals 1/2 for odd `M`; for even `M` the
    /// central coefficient is split, so the sum is `1/2 + |c_{M/2}|^2 / 2`.
    pub fn lower_half_sum(&self) -> f64 {
        self.probs[..=self.m / 2].iter().sum()
    }

    /// `1 - 2 S_m` with `S_m = Σ_{j <= m} |c_j|^2`.
    pub fn cumulative_balance(&self) -> Vec<f64> {
        let mut s = 0.0;
        self.probs
            .iter()
            .map(|p| {
                s += p;
                1.0 - 2.0 * s
            })
            .collect()
    }
}

/// Shoots `|c_{m+1}|^2 = |c_m|^2 ((1 - S_m)/S_m)^{1/(M+1)}` from `c0` and
/// returns the coefficients and `S_M - 1`. Overshooting (`S_m >= 1` before
/// `m = M`) is reported as `+1`.
fn shoot_shared(m: usize, c0: f64) -> (Vec<f64>, f64) {
    let exponent = 1.0 / (m as f64 + 1.0);
    let mut c = Vec::with_capacity(m + 1);
    c.push(c0);
    let mut s = c0;
    for j in 0..m {
        if s >= 1.0 {
            return (c, 1.0);
        }
        let next = c[j] * ((1.0 - s) / s).powf(exponent);
        c.push(next);
        s += next;
    }
    (c, s - 1.0)
}

/// Shooting solver for the optimal ancilla of the `N = M` shared-phase
/// system. The Lagrange parameter cancels between consecutive conditions,
/// so only `|c_0|^2` is searched.
pub fn solve_shared_phase(m: usize, tol: f64) -> Result<GeneralSolution> {
    if m == 0 {
        return Err(Error::invalid("the shared-phase solver needs M >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (1e-15, 1.0 / (m as f64 + 1.0));
    let objective = |c0: f64| shoot_shared(m, c0).1;

    if (objective(lo) < 0.0) == (objective(hi) < 0.0) && objective(hi) != 0.0 {
        // fall back to a logarithmic grid
        let (a, b) = (lo.ln(), hi.ln());
        let grid: Vec<f64> = (0..=400).map(|i| (a + (b - a) * i as f64 / 400.0).exp()).collect();
        let found = grid
            .windows(2)
            .find(|w| (objective(w[0]) < 0.0) != (objective(w[1]) < 0.0))
            .ok_or(Error::NoRoot { what: "shared-phase |c_0|^2", lo, hi })?;
        lo = found[0];
        hi = found[1];
    }

    let root = bisect(objective, lo, hi, tol);
    let (c, excess) = shoot_shared(m, root.x);
    if c.len() != m + 1 || excess.abs() > tol.max(1e-14) {
        return Err(Error::NoRoot { what: "shared-phase |c_0|^2", lo, hi });
    }
    let sum: f64 = c.iter().sum();
    let probs: Vec<f64> = c.iter().map(|x| x / sum).collect();
    let state = TwoModeState::from_probs(&probs)?;
    let spread = stationarity_spread(&TwoModeState::uniform(m), &state);
    Ok(GeneralSolution { m, probs, shots: root.iterations, max_stationarity_residual: spread })
}

/// Best ansatz-form trial state for a target distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialFit {
    pub a: f64,
    pub epsilon: f64,
    /// `Σ_n sqrt(target_n trial_n)`.
    pub overlap: f64,
}

/// Normalized ansatz-form probabilities, or `None` if any is negative or
/// the parameters are degenerate.
pub fn trial_probs(m: usize, a: f64, epsilon: f64) -> Option<Vec<f64>> {
    if !(m as f64 + 2.0 * epsilon > 0.0) {
        return None;
    }
    let p = AnsatzParams::normalized(m, a, epsilon);
    if !(p.b > 0.0) || !p.b.is_finite() {
        return None;
    }
    let probs: Vec<f64> = (0..=m as isize).map(|n| p.unscaled(n) / p.b).collect();
    probs.iter().all(|x| *x >= 0.0 && x.is_finite()).then_some(probs)
}

pub fn amplitude_overlap(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum()
}

/// Maximizes the amplitude overlap with `target` over `(A, ε)`, starting
/// from `(1, 3/2)`. Infeasible trial points are rejected inside the search.
pub fn fit_trial_state(m: usize, target: &[f64]) -> Result<TrialFit> {
    if target.len() != m + 1 {
        return Err(Error::invalid(format!("target has {} entries, expected {}", target.len(), m + 1)));
    }
    if target.iter().any(|t| *t < 0.0 || !t.is_finite()) || (target.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::invalid("target is not a probability distribution"));
    }
    let cost = |x: [f64; 2]| match trial_probs(m, x[0], x[1]) {
        Some(q) => -amplitude_overlap(target, &q),
        None => f64::INFINITY,
    };
    let mut best = nelder_mead(&cost, [1.0, 1.5], [0.25, 0.5]);
    // restart until the simplex stops finding anything better
    for _ in 0..20 {
        let next = nelder_mead(&cost, best.0, [0.1, 0.5]);
        if next.1 >= best.1 - 1e-15 {
            break;
        }
        best = next;
    }
    if !best.1.is_finite() {
        return Err(Error::NoRoot { what: "trial-state fit", lo: 1.0, hi: 1.5 });
    }
    Ok(TrialFit { a: best.0[0], epsilon: best.0[1], overlap: -best.1 })
}

/// Plain Nelder-Mead on two variables. Returns the best vertex and value.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: &F, start: [f64; 2], step: [f64; 2]) -> ([f64; 2], f64) {
    let mut simplex: Vec<([f64; 2], f64)> = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]]
        .into_iter()
        .map(|x| (x, f(x)))
        .collect();
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..10_000 {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[2].1);
        let size = simplex[1..]
            .iter()
            .map(|v| (v.0[0] - simplex[0].0[0]).abs().max((v.0[1] - simplex[0].0[1]).abs()))
            .fold(0.0, f64::max);
        if size < 1e-12 || (worst.is_finite() && (worst - best).abs() < 1e-17 && size < 1e-8) {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let reflected = lerp(simplex[2].0, centroid, 2.0);
        let fr = f(reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(simplex[2].0, centroid, 3.0);
            let fe = f(expanded);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[2].1 {
                lerp(simplex[2].0, centroid, 1.5)
            } else {
                lerp(simplex[2].0, centroid, 0.5)
            };
            let fc = f(contracted);
            if fc < simplex[2].1.min(fr) {
                simplex[2] = (contracted, fc);
            } else {
                let anchor = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let x = lerp(anchor, v.0, 0.5);
                    *v = (x, f(x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// Bounds `(X, X + Y)` on the particle entanglement of `system` with a
/// uniform `M`-particle ancilla, `M >= N`:
/// `X = (M + 1 - N)/(M + 1) E_M`, `Y = 2N/(M + 1) E_M`.
pub fn infinite_ancilla_bounds(system: &TwoModeState, m: usize) -> Result<(f64, f64)> {
    let n = system.total();
    if m < n {
        return Err(Error::invalid(format!("ancilla total {m} is below system total {n}")));
    }
    let e_m = modal_entanglement(system);
    let denom = m as f64 + 1.0;
    let lower = (denom - n as f64) / denom * e_m;
    let gap = 2.0 * n as f64 / denom * e_m;
    Ok((lower, lower + gap))
}
