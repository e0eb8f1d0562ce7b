//! Rational Jacobi spectral collocation for third-order boundary-value
//! problems on `[0, ∞)`.
//!
//! The unknown is expanded as
//!
//! ```text
//! f(x) = x/(x²+1) + x²/(x²+1) · Σ_{j=0}^{N} a_j J_j((x - L)/(x + L))
//! ```
//!
//! which satisfies `f(0) = 0`, `f'(0) = 1` and `f'(∞) = 0` for any
//! coefficients. The nonlinear ODE is linearized by quasilinearization and
//! each linear step is collocated at the mapped roots of `J_{N+1}`. The
//! built-in model is the Eyring-Powell stretching-sheet equation; an RK4
//! shooting solver is included as an independent reference.
//!
//! ```no_run
//! let sol = rjspectral::solve(&rjspectral::SolverConfig64::default()).unwrap();
//! println!("f''(0) = {:.10}", sol.eval(0.0, 2).unwrap());
//! ```
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod collocation;
pub mod error;
pub mod jacobi;
pub mod linalg;
pub mod models;
pub mod oracle_shooting;
pub mod qlm;
pub mod rational_basis;
pub mod scalar;
pub mod solver;
pub mod trial;

pub use error::{Error, Result};
pub use jacobi::{JacobiParams, NodeSet};
pub use models::{EyringPowell, FluidParams, ThirdOrderModel};
pub use oracle_shooting::{ShootingConfig, ShootingResult, Trajectory};
pub use qlm::IterationReport;
pub use rational_basis::{CollocationGrid, RationalMap};
pub use scalar::Scalar;
pub use solver::{solve, solve_model, InitialIterate, SolverConfig, SpectralSolution};
pub use trial::{CoefficientVector, TrialBasis, TrialFunction};

pub type SolverConfig64 = SolverConfig<f64>;
pub type SpectralSolution64 = SpectralSolution<f64>;
pub type FluidParams64 = FluidParams<f64>;
pub type EyringPowell64 = EyringPowell<f64>;
pub type JacobiParams64 = JacobiParams<f64>;
pub type RationalMap64 = RationalMap<f64>;
pub type ShootingConfig64 = ShootingConfig<f64>;
pub type TrialFunction64 = TrialFunction<f64>;
pub type CoefficientVector64 = CoefficientVector<f64>;

pub type SolverConfig32 = SolverConfig<f32>;
pub type SpectralSolution32 = SpectralSolution<f32>;
