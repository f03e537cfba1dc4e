//! Optimal M-particle reference ancilla for one shared particle.
//!
//! Three independent routes to the same state:
//!
//! - [`solve_recurrence`]: shoot the stationarity recurrence up from
//!   `|c_0|^2 = 1` and bisect on the Lagrange parameter `β` until the
//!   upper boundary value `|c_{M+1}|^2` vanishes;
//! - [`solve_ansatz_exact`]: the trigonometric form
//!   `|c_n|^2 = (A - cos[2π(n + ε)/(M + 2ε)]) / B` with `(A, ε)` fixed by
//!   the two boundary equations;
//! - [`polynomial_table`]: the exact integer polynomials `P_n(β)` with
//!   `|c_n|^2 = P_n(β) |c_0|^2`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fock::{particle_entanglement_single, TwoModeState};
use crate::roots::{bisect, sign_changes};

/// Initial bracket for `β`. `β = 4A^2 <= 4` and `β(M = 1) = 2`.
const BETA_BRACKET: (f64, f64) = (1.0 + 1e-9, 4.0);
const BETA_SCAN_STEP: f64 = 0.25;
const BETA_SCAN_MAX: f64 = 8.0;

/// One upward step of the stationarity recurrence:
/// `|c_{n+1}|^2 = ((β - 1)|c_n|^4 - |c_n|^2 |c_{n-1}|^2) / (|c_n|^2 + |c_{n-1}|^2)`.
///
/// A negative result means `β` is infeasible.
pub fn recurrence_step(prev: f64, curr: f64, beta: f64) -> Result<f64> {
    let denom = curr + prev;
    if denom == 0.0 {
        return Err(Error::Degenerate(format!(
            "recurrence step with |c_n|^2 + |c_(n-1)|^2 = 0 (beta = {beta})"
        )));
    }
    Ok(((beta - 1.0) * curr * curr - curr * prev) / denom)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSolution {
    pub m: usize,
    /// `|c_n|^2` for `n = 0..=M`, normalized.
    pub probs: Vec<f64>,
    /// `β = e^α`; NaN for `M = 0`, where no interior condition exists.
    pub beta: f64,
    /// Normalized `|c_{M+1}|^2` implied by one more recurrence step.
    pub boundary_residual: f64,
    pub iterations: usize,
}

impl RecurrenceSolution {
    pub fn state(&self) -> TwoModeState {
        TwoModeState::from_probs(&self.probs).expect("solver output is a distribution")
    }

    pub fn max_symmetry_error(&self) -> f64 {
        let m = self.m;
        (0..=m)
            .map(|n| (self.probs[n] - self.probs[m - n]).abs())
            .fold(0.0, f64::max)
    }

    /// Largest relative violation of
    /// `β c_n^2 = c_n^2 + c_{n-1} c_{n+1} + c_n (c_{n-1} + c_{n+1})`
    /// (all in squared moduli) over `n = 0..=M`, each scaled by `|c_n|^4`.
    pub fn max_recurrence_residual(&self) -> f64 {
        if self.m == 0 {
            return 0.0;
        }
        max_abs(&stationarity_residuals(&self.probs, self.beta))
    }
}

/// Unnormalized shot from `|c'_0|^2 = 1`. `Err(j)` reports the first index
/// `j <= M` that went negative (or hit a degenerate step).
fn shoot_recurrence(m: usize, beta: f64) -> std::result::Result<Vec<f64>, usize> {
    let mut c = Vec::with_capacity(m + 2);
    c.push(1.0);
    let mut prev = 0.0;
    for n in 0..=m {
        let curr = c[n];
        let next = recurrence_step(prev, curr, beta).map_err(|_| n + 1)?;
        if next < 0.0 && n < m {
            return Err(n + 1);
        }
        c.push(next);
        prev = curr;
    }
    Ok(c)
}

/// Signed boundary value `|c_{M+1}|^2 / Σ_{n<=M} |c_n|^2`; infeasible `β`
/// maps to `-1`.
fn boundary_value(m: usize, beta: f64) -> f64 {
    match shoot_recurrence(m, beta) {
        Ok(c) => {
            let sum: f64 = c[..=m].iter().sum();
            c[m + 1] / sum
        }
        Err(_) => -1.0,
    }
}

/// Optimal ancilla for a single shared particle by recurrence shooting and
/// bisection on `β`.
pub fn solve_recurrence(m: usize, tol: f64) -> Result<RecurrenceSolution> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if m == 0 {
        return Ok(RecurrenceSolution {
            m,
            probs: vec![1.0],
            beta: f64::NAN,
            boundary_residual: 0.0,
            iterations: 0,
        });
    }

    let (lo, mut hi) = BETA_BRACKET;
    let f_lo = boundary_value(m, lo);
    let mut f_hi = boundary_value(m, hi);
    while (f_lo < 0.0) == (f_hi < 0.0) {
        if hi >= BETA_SCAN_MAX {
            return Err(Error::NoRoot { what: "beta (recurrence boundary)", lo, hi });
        }
        hi += BETA_SCAN_STEP;
        f_hi = boundary_value(m, hi);
    }

    let root = bisect(|b| boundary_value(m, b), lo, hi, tol);
    let c = shoot_recurrence(m, root.x).map_err(|_| Error::NoRoot {
        what: "beta (recurrence boundary)",
        lo,
        hi,
    })?;
    let sum: f64 = c[..=m].iter().sum();
    let probs: Vec<f64> = c[..=m].iter().map(|x| x / sum).collect();
    if (c[m + 1] / sum).abs() > tol.max(1e-14) {
        return Err(Error::NoRoot { what: "beta (boundary residual above tolerance)", lo, hi });
    }
    let (probs, beta) = polish(probs, root.x);
    let boundary_residual = recurrence_step(probs[m.saturating_sub(1)], probs[m], beta)
        .map_err(|_| Error::NoRoot { what: "beta (recurrence boundary)", lo, hi })?;
    Ok(RecurrenceSolution {
        m,
        probs,
        beta,
        boundary_residual,
        iterations: root.iterations,
    })
}

/// `β - 1 - c_{n-1} c_{n+1} / c_n^2 - (c_{n-1} + c_{n+1}) / c_n` for
/// `n = 0..=M`, with `c_{-1} = c_{M+1} = 0`.
fn stationarity_residuals(c: &[f64], beta: f64) -> Vec<f64> {
    let at = |n: isize| usize::try_from(n).ok().and_then(|i| c.get(i).copied()).unwrap_or(0.0);
    (0..c.len() as isize)
        .map(|n| {
            let (p, x, q) = (at(n - 1), at(n), at(n + 1));
            beta - 1.0 - p * q / (x * x) - (p + q) / x
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Newton steps on the stationarity equations plus normalization in
/// `(c_0, ..., c_M, β)`. The shot leaves `β` one ulp from the root, which the
/// forward recurrence amplifies toward `n = M`; this removes that error.
/// Keeps the input unless a step improves the residual.
fn polish(mut c: Vec<f64>, mut beta: f64) -> (Vec<f64>, f64) {
    let m = c.len() - 1;
    let dim = m + 2;
    let mut best = max_abs(&stationarity_residuals(&c, beta));
    for _ in 0..8 {
        let g = stationarity_residuals(&c, beta);
        let mut jac = DMatrix::<f64>::zeros(dim, dim);
        let mut rhs = DVector::<f64>::zeros(dim);
        for n in 0..=m {
            let x = c[n];
            let p = if n > 0 { c[n - 1] } else { 0.0 };
            let q = if n < m { c[n + 1] } else { 0.0 };
            jac[(n, n)] = 2.0 * p * q / (x * x * x) + (p + q) / (x * x);
            if n > 0 {
                jac[(n, n - 1)] = -q / (x * x) - 1.0 / x;
            }
            if n < m {
                jac[(n, n + 1)] = -p / (x * x) - 1.0 / x;
            }
            jac[(n, m + 1)] = 1.0;
            rhs[n] = -g[n];
        }
        for n in 0..=m {
            jac[(m + 1, n)] = 1.0;
        }
        rhs[m + 1] = 1.0 - c.iter().sum::<f64>();
        let Some(step) = jac.lu().solve(&rhs) else { break };
        let trial: Vec<f64> = c.iter().zip(step.iter()).map(|(x, d)| x + d).collect();
        let trial_beta = beta + step[m + 1];
        if trial.iter().any(|x| !(*x > 0.0)) {
            break;
        }
        let r = max_abs(&stationarity_residuals(&trial, trial_beta));
        if !(r < best) {
            break;
        }
        best = r;
        c = trial;
        beta = trial_beta;
    }
    (c, beta)
}

/// Parameters of `|c_n|^2 = (A - cos[2π(n + ε)/(M + 2ε)]) / B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams {
    pub m: usize,
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    /// `ξ = 2π / (M + 2ε)`.
    pub xi: f64,
    /// `β = 4A^2`.
    pub beta: f64,
}

impl AnsatzParams {
    pub fn new(m: usize, a: f64, epsilon: f64, b: f64) -> Self {
        Self { m, a, b, epsilon, xi: TAU / (m as f64 + 2.0 * epsilon), beta: 4.0 * a * a }
    }

    /// Chooses `B` so the coefficients sum to one.
    pub fn normalized(m: usize, a: f64, epsilon: f64) -> Self {
        let mut p = Self::new(m, a, epsilon, 1.0);
        p.b = (0..=m as isize).map(|n| p.unscaled(n)).sum();
        p
    }

    /// `θ = 2πε / (M + 2ε)`.
    pub fn theta(&self) -> f64 {
        self.xi * self.epsilon
    }

    /// `A - cos(ξ n + θ)`, defined for any integer `n`.
    pub fn unscaled(&self, n: isize) -> f64 {
        self.a - (self.xi * n as f64 + self.theta()).cos()
    }

    /// `(β - 1) - (2 cos ξ + 1)`: zero when the form satisfies the recurrence.
    pub fn recurrence_mismatch(&self) -> f64 {
        (self.beta - 1.0) - (2.0 * self.xi.cos() + 1.0)
    }

    /// `A - cos[2π(ε - 1)/(M + 2ε)]`: the lower boundary condition.
    pub fn lower_boundary_mismatch(&self) -> f64 {
        self.unscaled(-1)
    }
}

/// Evaluates the ansatz. Errors if `B <= 0` or any coefficient is negative.
pub fn ansatz_coefficients(params: &AnsatzParams) -> Result<Vec<f64>> {
    if !(params.b > 0.0) {
        return Err(Error::InvalidParams(format!("B must be positive, got {}", params.b)));
    }
    let probs: Vec<f64> = (0..=params.m as isize).map(|n| params.unscaled(n) / params.b).collect();
    if let Some((n, p)) = probs.iter().enumerate().find(|(_, p)| **p < 0.0) {
        return Err(Error::InvalidParams(format!("coefficient {n} is negative ({p:e})")));
    }
    Ok(probs)
}

/// Residual of the `n = 0` condition `|c_1|^2 = (β - 1)|c_0|^2` after
/// substituting `A = cos[2π(ε - 1)/(M + 2ε)]` and `β = 4A^2`.
fn epsilon_equation(m: usize, epsilon: f64) -> f64 {
    let l = m as f64 + 2.0 * epsilon;
    let a = (TAU * (epsilon - 1.0) / l).cos();
    let lhs = a - (TAU * (1.0 + epsilon) / l).cos();
    let rhs = (a - (TAU * epsilon / l).cos()) * (4.0 * a * a - 1.0);
    lhs - rhs
}

/// A root of the boundary equations for `ε`, with the checks used to pick
/// the optimum among several.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzCandidate {
    pub params: AnsatzParams,
    /// Residual of the `n = 0` equation at the root.
    pub residual: f64,
    /// All coefficients nonnegative with `B > 0`.
    pub feasible: bool,
    /// `β - 1 = 2 cos ξ + 1` within `1e-10`.
    pub satisfies_recurrence: bool,
    pub particle_entanglement: Option<f64>,
}

/// Every root of the boundary equations in `ε ∈ (0, M/2 + 2)`.
pub fn ansatz_roots(m: usize) -> Vec<AnsatzCandidate> {
    let (lo, hi) = (0.0, m as f64 / 2.0 + 2.0);
    let pad = 1e-9;
    let steps = 400 * (m + 4);
    let f = |e: f64| epsilon_equation(m, e);
    let mut eps_roots: Vec<f64> = sign_changes(f, lo + pad, hi - pad, steps)
        .into_iter()
        .map(|(a, b)| if a == b { a } else { bisect(f, a, b, 0.0).x })
        .collect();
    // tangent roots (a root of both f and f') do not change sign
    let h = 1e-6;
    let slope = |e: f64| (f(e + h) - f(e - h)) / (2.0 * h);
    for (a, b) in sign_changes(slope, lo + pad + h, hi - pad - h, steps) {
        let e = if a == b { a } else { bisect(slope, a, b, 0.0).x };
        if f(e).abs() < 1e-10 && eps_roots.iter().all(|r| (r - e).abs() > 1e-6) {
            eps_roots.push(e);
        }
    }
    eps_roots.sort_by(f64::total_cmp);
    eps_roots
        .into_iter()
        .map(|eps| {
            let amp = (TAU * (eps - 1.0) / (m as f64 + 2.0 * eps)).cos();
            let params = AnsatzParams::normalized(m, amp, eps);
            let probs = ansatz_coefficients(&params).ok();
            let particle_entanglement = probs
                .as_ref()
                .and_then(|p| TwoModeState::from_probs(p).ok())
                .and_then(|s| particle_entanglement_single(&s).ok());
            AnsatzCandidate {
                params,
                residual: epsilon_equation(m, eps),
                feasible: probs.is_some(),
                satisfies_recurrence: params.recurrence_mismatch().abs() <= 1e-10,
                particle_entanglement,
            }
        })
        .collect()
}

/// Exact ansatz parameters for `M >= 1`: the feasible, recurrence-consistent
/// root of the boundary equations with the largest particle entanglement.
pub fn solve_ansatz_exact(m: usize, tol: f64) -> Result<AnsatzParams> {
    if m == 0 {
        return Err(Error::invalid("the ansatz needs M >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    ansatz_roots(m)
        .into_iter()
        .filter(|c| {
            c.feasible
                && c.satisfies_recurrence
                && c.residual.abs() < tol
                && c.params.lower_boundary_mismatch().abs() < tol
        })
        .filter_map(|c| c.particle_entanglement.map(|e| (e, c.params)))
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, p)| p)
        .ok_or(Error::NoRoot { what: "ansatz epsilon", lo: 0.0, hi: m as f64 / 2.0 + 2.0 })
}

/// Large-M form `(2/(M+1)) sin^2[π(n + 3/2)/(M + 3)]`, renormalized.
pub fn ansatz_large_m(m: usize) -> Vec<f64> {
    let mf = m as f64;
    let raw: Vec<f64> = (0..=m)
        .map(|n| 2.0 / (mf + 1.0) * (PI * (n as f64 + 1.5) / (mf + 3.0)).sin().powi(2))
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / sum).collect()
}

/// Polynomial in `β` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        Self::from_big((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = Self { coeffs: other.coeffs.iter().map(|c| -c).collect() };
        self.add(&neg)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_big(out)
    }

    /// Exact division by a monic polynomial; `None` if a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if !divisor.coeffs[dd].is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(Self::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &lead * d;
            }
            quot[i] = lead;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::from_big(quot))
    }

    /// Exact value at the binary rational `beta`, rounded once to `f64`.
    pub fn eval(&self, beta: f64) -> f64 {
        let Some(x) = BigRational::from_float(beta) else {
            return f64::NAN;
        };
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + BigRational::from_integer(c.clone()));
        acc.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "b")?,
                (1, false) => write!(f, "{mag}*b")?,
                (_, true) => write!(f, "b^{i}")?,
                (_, false) => write!(f, "{mag}*b^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `P_0..=P_M` with `|c_n|^2 = P_n(β) |c_0|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialTable {
    pub m: usize,
    pub polys: Vec<IntPoly>,
}

impl PolynomialTable {
    pub fn eval_all(&self, beta: f64) -> Vec<f64> {
        self.polys.iter().map(|p| p.eval(beta)).collect()
    }

    /// `Σ_n P_n(β)`, which equals `1/|c_0|^2` at the optimum.
    pub fn sum_at(&self, beta: f64) -> f64 {
        self.polys.iter().fold(IntPoly::zero(), |acc, p| acc.add(p)).eval(beta)
    }
}

/// Builds `P_n` by iterating the recurrence symbolically with exact integer
/// arithmetic: `P_{n+1} = P_n ((β - 1) P_n - P_{n-1}) / (P_n + P_{n-1})`.
pub fn polynomial_table(m: usize) -> Result<PolynomialTable> {
    let beta_minus_one = IntPoly::from_coeffs(&[-1, 1]);
    let mut polys = vec![IntPoly::one()];
    let mut prev = IntPoly::zero();
    for n in 0..m {
        let curr = polys[n].clone();
        let numer = curr.mul(&beta_minus_one.mul(&curr).sub(&prev));
        let next = numer.div_exact(&curr.add(&prev)).ok_or_else(|| {
            Error::invalid(format!("P_{} is not a polynomial: inexact division", n + 1))
        })?;
        polys.push(next);
        prev = curr;
    }
    Ok(PolynomialTable { m, polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// `β* = 4 cos^2(π/(M + 3))`: the ansatz with `ε = 3/2` and
    /// `A = cos(ξ/2)` satisfies every condition identically, which gives a
    /// closed form independent of the bisection.
    fn beta_closed_form(m: usize) -> f64 {
        4.0 * (PI / (m as f64 + 3.0)).cos().powi(2)
    }

    #[test]
    fn step_examples() {
        assert_eq!(recurrence_step(0.0, 1.0, 2.0).unwrap(), 1.0);
        assert_eq!(recurrence_step(0.25, 0.25, 2.0).unwrap(), 0.0);
        assert_eq!(recurrence_step(0.0, 1.0, 4.0).unwrap(), 3.0);
        assert!(matches!(recurrence_step(0.0, 0.0, 2.0), Err(Error::Degenerate(_))));
        assert!(recurrence_step(1.0, 0.1, 1.5).unwrap() < 0.0);
    }

    #[test]
    fn recurrence_m0_and_m1() {
        let s0 = solve_recurrence(0, 1e-12).unwrap();
        assert_eq!(s0.probs, vec![1.0]);
        assert!(s0.beta.is_nan());

        let s1 = solve_recurrence(1, 1e-12).unwrap();
        assert_abs_diff_eq!(s1.beta, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s1.probs[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s1.probs[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn recurrence_beta_matches_closed_form() {
        for m in 1..=60 {
            let s = solve_recurrence(m, 1e-12).unwrap();
            assert_abs_diff_eq!(s.beta, beta_closed_form(m), epsilon = 1e-10);
            assert!(s.max_symmetry_error() < 1e-9, "M={m}");
            assert!(s.max_recurrence_residual() < 1e-8, "M={m}: {}", s.max_recurrence_residual());
            assert!(s.boundary_residual.abs() <= 1e-12);
            assert!(s.probs.iter().all(|p| *p >= 0.0));
            assert_abs_diff_eq!(s.probs.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn recurrence_rejects_bad_tolerance() {
        assert!(solve_recurrence(3, 0.0).is_err());
        assert!(solve_recurrence(3, f64::NAN).is_err());
    }

    #[test]
    fn boundary_value_changes_sign_once_on_scan() {
        // bisection assumes a single crossing inside the bracket
        for m in [1usize, 2, 7, 9, 29, 60, 80] {
            let iv = sign_changes(|b| boundary_value(m, b), BETA_BRACKET.0, BETA_BRACKET.1, 4000);
            assert_eq!(iv.len(), 1, "M={m}: {iv:?}");
        }
    }

    #[test]
    fn ansatz_m1_example() {
        let p = AnsatzParams::new(1, 0.5f64.sqrt(), 1.5, 2.0 * 2f64.sqrt());
        let probs = ansatz_coefficients(&p).unwrap();
        assert_abs_diff_eq!(probs[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(probs[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn ansatz_m29_unit_amplitude() {
        let m = 29;
        let p = AnsatzParams::new(m, 1.0, 1.5, 30.0);
        let probs = ansatz_coefficients(&p).unwrap();
        for (n, got) in probs.iter().enumerate() {
            let want = 2.0 / 30.0 * (PI * (n as f64 + 1.5) / 32.0).sin().powi(2);
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn ansatz_rejects_bad_params() {
        assert!(matches!(
            ansatz_coefficients(&AnsatzParams::new(5, 1.0, 1.5, 0.0)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            ansatz_coefficients(&AnsatzParams::new(5, 0.2, 1.5, 1.0)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn ansatz_exact_m1() {
        let p = solve_ansatz_exact(1, 1e-12).unwrap();
        assert_abs_diff_eq!(p.epsilon, 1.5, epsilon = 1e-10);
        assert_abs_diff_eq!(p.a, 0.5f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(p.beta, 2.0, epsilon = 1e-10);
        assert!(solve_ansatz_exact(0, 1e-12).is_err());
    }

    #[test]
    fn ansatz_exact_invariants_and_agreement() {
        for m in 1..=40 {
            let p = solve_ansatz_exact(m, 1e-12).unwrap();
            assert!(p.recurrence_mismatch().abs() < 1e-10);
            assert_abs_diff_eq!(p.beta, 4.0 * p.a * p.a, epsilon = 1e-10);
            assert!(p.lower_boundary_mismatch().abs() < 1e-10);
            let ansatz = ansatz_coefficients(&p).unwrap();
            let rec = solve_recurrence(m, 1e-12).unwrap();
            let diff = ansatz.iter().zip(&rec.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(diff < 1e-6, "M={m}: {diff}");
        }
    }

    #[test]
    fn tangent_root_is_found() {
        // at M = 9 the boundary equation touches zero at ε = 3/2 without
        // changing sign
        let e = |x: f64| epsilon_equation(9, x);
        assert!(e(1.49) > 0.0 && e(1.51) > 0.0);
        let p = solve_ansatz_exact(9, 1e-12).unwrap();
        assert_abs_diff_eq!(p.epsilon, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn spurious_roots_are_reported_but_not_selected() {
        // at M = 29 the boundary equations also vanish near ε = 3.5, which
        // does not satisfy the recurrence
        let roots = ansatz_roots(29);
        assert!(roots.len() >= 2);
        assert!(roots.iter().any(|r| !r.satisfies_recurrence && (r.params.epsilon - 3.5).abs() < 0.01));
        let best = solve_ansatz_exact(29, 1e-12).unwrap();
        assert_abs_diff_eq!(best.epsilon, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn large_m_limits() {
        for m in [20usize, 40, 80, 160] {
            let p = solve_ansatz_exact(m, 1e-12).unwrap();
            let mf = m as f64;
            assert!((p.epsilon - 1.5).abs() < 10.0 / (mf * mf));
            assert!((p.a - 1.0).abs() < 10.0 / (mf * mf));
            assert!((1.0 / p.b - 1.0 / (p.a * (mf + 1.0))).abs() < 10.0 / (mf * mf));
        }
    }

    #[test]
    fn large_m_form() {
        let probs = ansatz_large_m(29);
        let raw0 = 2.0 / 30.0 * (3.0 * PI / 64.0).sin().powi(2);
        let sum: f64 = (0..=29).map(|n| 2.0 / 30.0 * (PI * (n as f64 + 1.5) / 32.0).sin().powi(2)).sum();
        assert_abs_diff_eq!(probs[0], raw0 / sum, epsilon = 1e-15);
        assert_abs_diff_eq!(probs.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
        for n in 0..=29 {
            assert_abs_diff_eq!(probs[n], probs[29 - n], epsilon = 1e-12);
        }
        let rec = solve_recurrence(29, 1e-12).unwrap();
        let diff = probs.iter().zip(&rec.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(diff <= 5e-3, "{diff}");
        assert_eq!(ansatz_large_m(0), vec![1.0]);
    }

    #[test]
    fn low_order_factorizations() {
        let t = polynomial_table(6).unwrap();
        let p = |c: &[i64]| IntPoly::from_coeffs(c);
        let b1 = p(&[-1, 1]);
        let b2 = p(&[-2, 1]);
        let b3 = p(&[-3, 1]);
        let q2 = p(&[1, -3, 1]);
        let c5 = p(&[-1, 6, -5, 1]);
        let c6 = p(&[-4, 10, -6, 1]);
        assert_eq!(t.polys[0], IntPoly::one());
        assert_eq!(t.polys[1], b1);
        assert_eq!(t.polys[2], b1.mul(&b2));
        assert_eq!(t.polys[2], p(&[2, -3, 1]));
        assert_eq!(t.polys[3], q2.mul(&b2));
        assert_eq!(t.polys[4], b3.mul(&b1).mul(&q2));
        assert_eq!(t.polys[5], c5.mul(&b3).mul(&b1));
        assert_eq!(t.polys[6], c6.mul(&c5));
        for (n, poly) in t.polys.iter().enumerate() {
            assert_eq!(poly.degree(), Some(n));
        }
        assert_eq!(t.polys[2].to_string(), "b^2 - 3*b + 2");
    }

    #[test]
    fn polynomials_at_optimal_beta() {
        for m in 1..=20 {
            let t = polynomial_table(m).unwrap();
            let s = solve_recurrence(m, 1e-12).unwrap();
            assert!((t.polys[m].eval(s.beta) - 1.0).abs() < 1e-6);
            let inv_c0 = 1.0 / s.probs[0];
            assert!((t.sum_at(s.beta) - inv_c0).abs() < 1e-6 * inv_c0);
        }
    }

    #[test]
    fn polynomials_beyond_machine_integers() {
        let t = polynomial_table(80).unwrap();
        assert_eq!(t.polys[80].degree(), Some(80));
        let big = t.polys[80].coeffs().iter().map(|c| c.bits()).max().unwrap();
        assert!(big > 63);
    }

    #[test]
    fn div_exact_detects_remainder() {
        let num = IntPoly::from_coeffs(&[1, 0, 1]);
        assert!(num.div_exact(&IntPoly::from_coeffs(&[-1, 1])).is_none());
        let q = IntPoly::from_coeffs(&[-1, 0, 1]).div_exact(&IntPoly::from_coeffs(&[-1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_coeffs(&[1, 1]));
    }
}
