//! Sign-kernel extremal problems: maximize `∬ f(x,y) <g(x), h(y)> dx dy` over
//! unit-vector fields `g`, `h` in `R^d`, for a ±1 kernel `f`.
//!
//! * [`kernels`]: the half-plane and circle-band kernels, discretization,
//!   and the matrix text format.
//! * [`solvers`]: exact `d = 1` enumeration, sign local search, and see-saw
//!   alternating maximization on the discretized problem.
//! * [`continuum`]: exact phase-plane integration of the optimality
//!   dynamics, admissible periods, and closed-form optimizers.
//! * [`bounds`]: odd-harmonic spectra and the spectral upper bound `2/π`.

pub mod bounds;
pub mod continuum;
pub mod error;
pub mod fmt;
pub mod kernels;
pub mod solvers;

pub use error::{Error, Result};
pub use kernels::{discretize, eval_kernel, load_matrix, Example, Sign, SignKernel, SignMatrix};
pub use solvers::{
    best_response, exact_d1, local_search_d1, objective, seesaw, seesaw_restarts,
    stationarity_residual, ReportDocument, ResponseField, SeesawInit, SeesawOptions, Side, SolveReport,
    SolverKind, UnitVectorField,
};

/// The `d >= 2` optimum value for both built-in kernels.
pub const TWO_OVER_PI: f64 = 2.0 / std::f64::consts::PI;
