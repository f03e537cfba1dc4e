//! C ABI for the refstate library.
//!
//! States and recurrence solutions cross the boundary as opaque handles that
//! the caller releases with the matching `*_free`. Every fallible function
//! returns an [`RsStatus`]; on failure a message is kept per thread and can
//! be read with [`rs_last_error_message`]. Array results are written into
//! caller-provided buffers whose length is passed alongside.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use refstate::{Error, TwoModeState};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Degenerate = 3,
    NoRoot = 4,
    InvalidParams = 5,
    UndefinedMerit = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<&Error> for RsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidInput(_) => RsStatus::InvalidInput,
            Error::Degenerate(_) => RsStatus::Degenerate,
            Error::NoRoot { .. } => RsStatus::NoRoot,
            Error::InvalidParams(_) => RsStatus::InvalidParams,
            Error::UndefinedMerit(_) => RsStatus::UndefinedMerit,
        }
    }
}

/// Two-mode state of fixed total particle number.
pub struct RsState(TwoModeState);

/// Optimal single-particle ancilla found by the recurrence solver.
pub struct RsRecurrence(refstate::RecurrenceSolution);

/// `|c_n|^2 = (a - cos(xi n + xi epsilon)) / b`, with `beta = 4 a^2`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsAnsatzParams {
    pub m: usize,
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    pub xi: f64,
    pub beta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsComplex {
    pub re: f64,
    pub im: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(RsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(RsStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RsStatus::NullPointer, format!("{what} is null"))
}

fn too_small(need: usize, got: usize) -> Failure {
    Failure(RsStatus::BufferTooSmall, format!("buffer holds {got} values, need {need}"))
}

/// Runs `f`, records any failure and converts panics.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside refstate".into());
            RsStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, need: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len < need {
        return Err(too_small(need, len));
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn state<'a>(p: *const RsState, what: &str) -> Result<&'a TwoModeState, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed_state(s: TwoModeState) -> *mut RsState {
    Box::into_raw(Box::new(RsState(s)))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to fit) and returns the full message length without the NUL.
/// Returns 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn rs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a state from `len` complex amplitudes of `|n, len-1-n>`. `im` may
/// be null for real amplitudes. The norm must be 1 within 1e-12.
///
/// # Safety
/// `re` (and `im` unless null) must point to `len` readable doubles; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_state_new(re: *const f64, im: *const f64, len: usize, out: *mut *mut RsState) -> RsStatus {
    guard(|| {
        let re = slice(re, len, "re")?;
        let amps: Vec<Complex64> = if im.is_null() {
            re.iter().map(|r| Complex64::new(*r, 0.0)).collect()
        } else {
            let im = slice(im, len, "im")?;
            re.iter().zip(im).map(|(r, i)| Complex64::new(*r, *i)).collect()
        };
        let s = TwoModeState::new(amps)?;
        write(out, boxed_state(s), "out")
    })
}

/// Builds a state with real amplitudes `sqrt(probs[n])`.
///
/// # Safety
/// `probs` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_state_from_probs(probs: *const f64, len: usize, out: *mut *mut RsState) -> RsStatus {
    guard(|| {
        let s = TwoModeState::from_probs(slice(probs, len, "probs")?)?;
        write(out, boxed_state(s), "out")
    })
}

/// Equal-weight state of `total` particles. Never null.
#[no_mangle]
pub extern "C" fn rs_state_uniform(total: usize) -> *mut RsState {
    boxed_state(TwoModeState::uniform(total))
}

/// # Safety
/// `state` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_state_free(state: *mut RsState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Total particle number, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_state_total(state: *const RsState) -> usize {
    state.as_ref().map_or(0, |s| s.0.total())
}

/// Writes the `total + 1` probabilities `|a_n|^2`.
///
/// # Safety
/// `state` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_state_probs(state: *const RsState, out: *mut f64, len: usize) -> RsStatus {
    guard(|| {
        let s = self::state(state, "state")?;
        let probs = s.probs();
        slice_mut(out, len, probs.len(), "out")?[..probs.len()].copy_from_slice(&probs);
        Ok(())
    })
}

/// Keeps `|a_n|` and multiplies each amplitude by `exp(-i vartheta n(n-1))`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_apply_kerr(state: *const RsState, vartheta: f64, out: *mut *mut RsState) -> RsStatus {
    guard(|| {
        let s = self::state(state, "state")?;
        write(out, boxed_state(refstate::apply_kerr(s, vartheta)), "out")
    })
}

/// Particle entanglement in bits of `system` with `ancilla`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_particle_entanglement(
    system: *const RsState,
    ancilla: *const RsState,
    out: *mut f64,
) -> RsStatus {
    guard(|| {
        let e = refstate::particle_entanglement(state(system, "system")?, state(ancilla, "ancilla")?)?;
        write(out, e, "out")
    })
}

/// Entanglement between the two modes of one state, in bits.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_modal_entanglement(state: *const RsState, out: *mut f64) -> RsStatus {
    guard(|| write(out, refstate::modal_entanglement(self::state(state, "state")?), "out"))
}

/// Relative shortfall of `ancilla` against the optimal ancilla of the same
/// size, for one shared particle.
///
/// # Safety
/// `ancilla` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_figure_of_merit(ancilla: *const RsState, out: *mut f64) -> RsStatus {
    guard(|| {
        let s = state(ancilla, "ancilla")?;
        write(out, refstate::figure_of_merit(s, s.total())?, "out")
    })
}

/// Solves for the optimal `m`-particle ancilla of one shared particle.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_solve_recurrence(m: usize, tol: f64, out: *mut *mut RsRecurrence) -> RsStatus {
    guard(|| {
        let sol = refstate::solve_recurrence(m, tol)?;
        write(out, Box::into_raw(Box::new(RsRecurrence(sol))), "out")
    })
}

/// # Safety
/// `sol` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_free(sol: *mut RsRecurrence) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Lagrange parameter `beta`; NaN for `m = 0` or a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_beta(sol: *const RsRecurrence) -> f64 {
    sol.as_ref().map_or(f64::NAN, |s| s.0.beta)
}

/// Normalized `|c_{M+1}|^2` left by the solver; NaN for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_boundary_residual(sol: *const RsRecurrence) -> f64 {
    sol.as_ref().map_or(f64::NAN, |s| s.0.boundary_residual)
}

/// Number of coefficients, `m + 1`; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_len(sol: *const RsRecurrence) -> usize {
    sol.as_ref().map_or(0, |s| s.0.probs.len())
}

/// # Safety
/// `sol` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_probs(sol: *const RsRecurrence, out: *mut f64, len: usize) -> RsStatus {
    guard(|| {
        let s = sol.as_ref().ok_or_else(|| null("sol"))?;
        let n = s.0.probs.len();
        slice_mut(out, len, n, "out")?[..n].copy_from_slice(&s.0.probs);
        Ok(())
    })
}

/// New state handle holding the optimal ancilla.
///
/// # Safety
/// `sol` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_recurrence_state(sol: *const RsRecurrence, out: *mut *mut RsState) -> RsStatus {
    guard(|| {
        let s = sol.as_ref().ok_or_else(|| null("sol"))?;
        write(out, boxed_state(s.0.state()), "out")
    })
}

/// Exact trigonometric form of the optimal ancilla for `m >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_solve_ansatz_exact(m: usize, tol: f64, out: *mut RsAnsatzParams) -> RsStatus {
    guard(|| {
        let p = refstate::solve_ansatz_exact(m, tol)?;
        write(out, RsAnsatzParams { m: p.m, a: p.a, b: p.b, epsilon: p.epsilon, xi: p.xi, beta: p.beta }, "out")
    })
}

/// Evaluates the trigonometric form into `m + 1` probabilities.
///
/// # Safety
/// `params` must be readable; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_ansatz_coefficients(params: *const RsAnsatzParams, out: *mut f64, len: usize) -> RsStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        let mut q = refstate::AnsatzParams::new(p.m, p.a, p.epsilon, p.b);
        q.xi = p.xi;
        q.beta = p.beta;
        let probs = refstate::ansatz_coefficients(&q)?;
        slice_mut(out, len, probs.len(), "out")?[..probs.len()].copy_from_slice(&probs);
        Ok(())
    })
}

/// Optimal `m`-particle ancilla for the uniform `N = M` system. Writes
/// `m + 1` probabilities and, unless `spread` is null, the stationarity
/// spread of the result.
///
/// # Safety
/// `out` must point to `len` writable doubles; `spread` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rs_solve_shared_phase(m: usize, tol: f64, out: *mut f64, len: usize, spread: *mut f64) -> RsStatus {
    guard(|| {
        let sol = refstate::solve_shared_phase(m, tol)?;
        slice_mut(out, len, m + 1, "out")?[..=m].copy_from_slice(&sol.probs);
        if !spread.is_null() {
            spread.write(sol.max_stationarity_residual);
        }
        Ok(())
    })
}

/// Ratio `|c_1|^2 / |c_0|^2` of the optimal one-particle ancilla for a
/// one-particle system with weights `d0_sq`, `d1_sq`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rs_solve_n1m1(d0_sq: f64, d1_sq: f64, out: *mut f64) -> RsStatus {
    guard(|| write(out, refstate::solve_n1m1(d0_sq, d1_sq)?, "out"))
}

/// Phase-difference density sampled at `2 pi k / points`, `k < points`.
/// Requires `points >= 4(M + 1)`.
///
/// # Safety
/// `state` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_phase_difference_density(
    state: *const RsState,
    points: usize,
    out: *mut f64,
    len: usize,
) -> RsStatus {
    guard(|| {
        let d = refstate::phase_difference_density(self::state(state, "state")?, points)?;
        slice_mut(out, len, points, "out")?[..points].copy_from_slice(&d.density);
        Ok(())
    })
}

/// Decomposes `exp(-i pi j/k n(n-1))` into `k` phase shifts `phi` with
/// weights `coeffs`.
///
/// # Safety
/// `coeffs` and `phi` must each point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn rs_kerr_decomposition(
    j: u64,
    k: u64,
    coeffs: *mut RsComplex,
    phi: *mut f64,
    len: usize,
) -> RsStatus {
    guard(|| {
        let d = refstate::kerr_decomposition(j, k)?;
        let n = d.coeffs.len();
        let c_out = slice_mut(coeffs, len, n, "coeffs")?;
        let p_out = slice_mut(phi, len, n, "phi")?;
        for i in 0..n {
            c_out[i] = RsComplex { re: d.coeffs[i].re, im: d.coeffs[i].im };
            p_out[i] = d.phi[i];
        }
        Ok(())
    })
}
