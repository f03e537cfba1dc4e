//! Bracketing helpers shared by the solvers.

/// Outcome of a bisection run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bisection {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Bisects `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Stops once `|f(x)| <= ftol` or the bracket can no longer be split in
/// floating point. Returns the endpoint or midpoint with the smallest `|f|`.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, ftol: f64) -> Bisection
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    let mut best = if f_lo.abs() <= f_hi.abs() {
        Bisection { x: lo, value: f_lo, iterations: 0 }
    } else {
        Bisection { x: hi, value: f_hi, iterations: 0 }
    };
    let mut iterations = 0;
    while best.value.abs() > ftol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid);
        if f_mid.abs() < best.value.abs() {
            best = Bisection { x: mid, value: f_mid, iterations };
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if iterations > 2000 {
            break;
        }
    }
    best.iterations = iterations;
    best
}

/// Samples `f` on a uniform grid of `steps` intervals over `[lo, hi]` and
/// returns the sub-intervals whose endpoints differ in sign. A sample that is
/// exactly zero yields a degenerate interval `(x, x)`.
pub(crate) fn sign_changes<F>(mut f: F, lo: f64, hi: f64, steps: usize) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let h = (hi - lo) / steps as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        out.push((lo, lo));
    }
    for i in 1..=steps {
        let x = if i == steps { hi } else { lo + h * i as f64 };
        let fx = f(x);
        if fx == 0.0 {
            out.push((x, x));
        } else if f_prev != 0.0 && fx.is_finite() && f_prev.is_finite() && (fx < 0.0) != (f_prev < 0.0) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0);
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sign_changes_of_sine() {
        let iv = sign_changes(f64::sin, 0.5, 10.0, 1000);
        assert_eq!(iv.len(), 3);
        for (a, b) in iv {
            let r = bisect(f64::sin, a, b, 0.0);
            let k = (r.x / std::f64::consts::PI).round();
            assert!((r.x - k * std::f64::consts::PI).abs() < 1e-12);
        }
    }
}
