//! Equivariant rho-invariants of lens spaces and Brieskorn spheres, the
//! cotangent sums behind them, and the generators and gradings of the
//! singular instanton chain complex of odd torus knots.
//!
//! Every quantity is available along two independent routes: a
//! floating-point trigonometric sum ([`cotan`]) and an exact evaluation
//! through Dedekind-sum reciprocity and lattice-point counts ([`arith`],
//! [`lattice`]). The higher layers ([`lens`], [`brieskorn`], [`floer`])
//! compute exactly and check against the float route.

pub mod arith;
pub mod brieskorn;
pub mod cotan;
pub mod error;
pub mod floer;
pub mod lattice;
pub mod lens;

pub use arith::{dedekind_sum, extended_gcd, mod_inverse, Rational};
pub use brieskorn::{
    enumerate_reps, floer_record, fs_grading, mu_grading, rho_brieskorn, solve_seifert, torus_signature,
    BrieskornSphere, FloerRecord, RotationNumbers, SeifertData,
};
pub use cotan::{
    dedekind_d_float, delta_float, delta_tau_float, eta_lens_float, rho_via_defects, FloatSumResult,
};
pub use error::{Error, Result};
pub use floer::{floer_report, ic_natural_ranks, instanton_ranks, FloerReport, GradedRanks};
pub use lattice::{
    bracket_indicator, count_parallelogram, dedekind_d_exact, delta_exact, delta_tau_exact, dieter_sequences,
    lawson_n_mod4, DieterSequences, ParallelogramCount,
};
pub use lens::{rho_lens, rho_lens_with_tolerance, InvolutionKind, LensRho, LensSpace, U1Rep};

/// Absolute tolerance for float-versus-exact comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
