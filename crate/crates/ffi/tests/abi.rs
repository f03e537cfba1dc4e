use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use refstate_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        rs_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn uniform_state_round_trip() {
    unsafe {
        let sys = rs_state_uniform(1);
        let anc = rs_state_uniform(9);
        assert_eq!(rs_state_total(anc), 9);
        let mut e = 0.0;
        assert_eq!(rs_particle_entanglement(sys, anc, &mut e), RsStatus::Ok);
        assert!((e - 0.9).abs() < 1e-12);
        let mut modal = 0.0;
        assert_eq!(rs_modal_entanglement(sys, &mut modal), RsStatus::Ok);
        assert!((modal - 1.0).abs() < 1e-15);
        let mut probs = [0.0; 10];
        assert_eq!(rs_state_probs(anc, probs.as_mut_ptr(), 10), RsStatus::Ok);
        assert!(probs.iter().all(|p| (p - 0.1).abs() < 1e-15));
        assert_eq!(rs_state_probs(anc, probs.as_mut_ptr(), 9), RsStatus::BufferTooSmall);
        rs_state_free(sys);
        rs_state_free(anc);
    }
}

#[test]
fn state_validation_reports_message() {
    let re = [1.0, 1.0];
    let mut out = ptr::null_mut();
    let status = unsafe { rs_state_new(re.as_ptr(), ptr::null(), 2, &mut out) };
    assert_eq!(status, RsStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("norm"), "{}", last_error());

    let re = [0.6, 0.0];
    let im = [0.0, 0.8];
    let status = unsafe { rs_state_new(re.as_ptr(), im.as_ptr(), 2, &mut out) };
    assert_eq!(status, RsStatus::Ok);
    unsafe { rs_state_free(out) };

    assert_eq!(unsafe { rs_particle_entanglement(ptr::null(), ptr::null(), ptr::null_mut()) }, RsStatus::NullPointer);
}

#[test]
fn recurrence_handle() {
    unsafe {
        let mut sol = ptr::null_mut();
        assert_eq!(rs_solve_recurrence(1, 1e-12, &mut sol), RsStatus::Ok);
        assert!((rs_recurrence_beta(sol) - 2.0).abs() < 1e-12);
        assert!(rs_recurrence_boundary_residual(sol).abs() < 1e-12);
        assert_eq!(rs_recurrence_len(sol), 2);
        let mut probs = [0.0; 2];
        assert_eq!(rs_recurrence_probs(sol, probs.as_mut_ptr(), 2), RsStatus::Ok);
        assert!((probs[0] - 0.5).abs() < 1e-12);
        let mut st = ptr::null_mut();
        assert_eq!(rs_recurrence_state(sol, &mut st), RsStatus::Ok);
        let mut d = 1.0;
        assert_eq!(rs_figure_of_merit(st, &mut d), RsStatus::Ok);
        assert_eq!(d, 0.0);
        rs_state_free(st);
        rs_recurrence_free(sol);

        assert_eq!(rs_solve_recurrence(4, -1.0, &mut sol), RsStatus::InvalidInput);
    }
}

#[test]
fn ansatz_and_general_solvers() {
    unsafe {
        let mut p = RsAnsatzParams { m: 0, a: 0.0, b: 0.0, epsilon: 0.0, xi: 0.0, beta: 0.0 };
        assert_eq!(rs_solve_ansatz_exact(1, 1e-12, &mut p), RsStatus::Ok);
        assert!((p.epsilon - 1.5).abs() < 1e-10);
        assert!((p.a - 0.5f64.sqrt()).abs() < 1e-10);
        let mut probs = [0.0; 2];
        assert_eq!(rs_ansatz_coefficients(&p, probs.as_mut_ptr(), 2), RsStatus::Ok);
        assert!((probs[0] - 0.5).abs() < 1e-10);

        let mut shared = [0.0; 30];
        let mut spread = 1.0;
        assert_eq!(rs_solve_shared_phase(29, 1e-12, shared.as_mut_ptr(), 30, &mut spread), RsStatus::Ok);
        assert!(spread < 1e-6);
        assert!((shared.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let mut x = 0.0;
        assert_eq!(rs_solve_n1m1(0.5, 0.5, &mut x), RsStatus::Ok);
        assert!((x - 1.0).abs() < 1e-12);
        assert_eq!(rs_solve_n1m1(-0.5, 0.5, &mut x), RsStatus::InvalidInput);

        assert_eq!(rs_figure_of_merit(rs_state_uniform(0), &mut x), RsStatus::UndefinedMerit);
    }
}

#[test]
fn phase_and_kerr() {
    unsafe {
        let s = rs_state_uniform(3);
        let mut density = [0.0; 16];
        assert_eq!(rs_phase_difference_density(s, 16, density.as_mut_ptr(), 16), RsStatus::Ok);
        assert!((density[0] - 4.0 / std::f64::consts::TAU).abs() < 1e-12);
        assert_eq!(rs_phase_difference_density(s, 15, density.as_mut_ptr(), 16), RsStatus::InvalidInput);

        let mut k = ptr::null_mut();
        assert_eq!(rs_apply_kerr(s, std::f64::consts::FRAC_PI_2, &mut k), RsStatus::Ok);
        assert_eq!(rs_phase_difference_density(k, 16, density.as_mut_ptr(), 16), RsStatus::Ok);
        assert!((density[4] - density[12]).abs() < 1e-12);
        rs_state_free(k);
        rs_state_free(s);

        let mut coeffs = [RsComplex { re: 0.0, im: 0.0 }; 2];
        let mut phi = [0.0; 2];
        assert_eq!(rs_kerr_decomposition(1, 2, coeffs.as_mut_ptr(), phi.as_mut_ptr(), 2), RsStatus::Ok);
        assert!((coeffs[0].re - 0.5).abs() < 1e-15 && (coeffs[0].im + 0.5).abs() < 1e-15);
        assert!((phi[1] - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(rs_kerr_decomposition(2, 4, coeffs.as_mut_ptr(), phi.as_mut_ptr(), 2), RsStatus::InvalidInput);
        assert_eq!(rs_kerr_decomposition(1, 3, coeffs.as_mut_ptr(), phi.as_mut_ptr(), 2), RsStatus::BufferTooSmall);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(rs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api_and_compiles() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("refstate.h");
    let text = std::fs::read_to_string(&header).expect("build script writes the header");
    for name in [
        "typedef struct RsState RsState;",
        "RS_STATUS_NO_ROOT = 4",
        "rs_state_new(",
        "rs_solve_recurrence(",
        "rs_kerr_decomposition(",
        "rs_last_error_message(",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"refstate.h\"\nint main(void) { RsState *s = rs_state_uniform(3); rs_state_free(s); return 0; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
