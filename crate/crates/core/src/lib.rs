//! Accessible ("particle") entanglement of bipartite fixed-particle-number
//! bosonic states under the local particle-number superselection rule, and
//! solvers for the reference ancillae that maximize it.
//!
//! Everything works in coefficient space: a two-mode state of `total`
//! particles is the vector of amplitudes of `|n, total - n>`, and every
//! quantity is computed from those amplitudes without building the tensor
//! product Hilbert space.
//!
//! Module map:
//!
//! - [`fock`]: state type, sector decomposition, modal and particle entanglement
//! - [`single`]: optimal ancilla for one shared particle (recurrence, ansatz, polynomials)
//! - [`general`]: Lagrange conditions for general systems, N = M shared-phase solver
//! - [`zoo`]: comparison reference states and the figure of merit
//! - [`phase`]: phase-difference densities and the Kerr decomposition
//! - [`cli`]: the `refstate` command-line driver

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fock;
pub mod general;
pub mod phase;
pub(crate) mod roots;
pub mod single;
pub mod zoo;

pub use error::{Error, Result};
pub use fock::{
    entanglement_of_modes, modal_entanglement, particle_entanglement,
    particle_entanglement_single, sector_decompose, Sector, SectorDecomposition, TwoModeState,
};
pub use general::{
    fit_trial_state, infinite_ancilla_bounds, lagrange_residual, solve_n1m1, solve_shared_phase,
    stationarity_spread, GeneralSolution, TrialFit,
};
pub use phase::{
    apply_kerr, joint_phase_density_factor, kerr_decomposition, phase_difference_density,
    JointPhaseDensity, KerrDecomposition, PhaseAssignment, PhaseDensity,
};
pub use single::{
    ansatz_coefficients, ansatz_large_m, polynomial_table, recurrence_step, solve_ansatz_exact,
    solve_recurrence, AnsatzParams, IntPoly, PolynomialTable, RecurrenceSolution,
};
pub use zoo::{figure_of_merit, Family, MeritEntry, MeritReport};

/// Tolerance on the squared norm of a state accepted as normalized.
pub const NORM_TOL: f64 = 1e-12;
