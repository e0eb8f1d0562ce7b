//! End-to-end spectral solve: grid, trial basis, QLM with collocation steps.

use serde::{Deserialize, Serialize};

use crate::collocation::CollocationSolver;
use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::models::{EyringPowell, FluidParams, ThirdOrderModel};
use crate::qlm::{qlm_iterate, ConstantState, Iterate, IterationReport, QlmOptions, Stopping};
use crate::rational_basis::{collocation_grid, CollocationGrid, RationalMap};
use crate::scalar::Scalar;
use crate::trial::{CoefficientVector, TrialBasis, TrialFunction};

/// Starting point of the QLM iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialIterate {
    /// The state `f = 1, f' = f'' = f''' = 0` at every abscissa.
    #[default]
    ConstantOne,
    /// The trial with all coefficients zero, `f = x/(x²+1)`.
    ZeroTrial,
}

/// Every tunable of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig<T> {
    /// Number of basis functions and collocation points.
    pub n_basis: usize,
    pub map_scale: T,
    pub alpha: T,
    pub beta: T,
    pub epsilon: T,
    pub delta: T,
    /// Fixed iteration count; `None` runs to `tol` (at most `max_iter`).
    pub iters: Option<usize>,
    pub tol: T,
    pub max_iter: usize,
    #[serde(default)]
    pub init: InitialIterate,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            n_basis: 50,
            map_scale: T::lit(15.0),
            alpha: T::one(),
            beta: T::one(),
            epsilon: T::lit(0.3),
            delta: T::lit(0.1),
            iters: Some(15),
            tol: T::lit(1e-12),
            max_iter: 100,
            init: InitialIterate::ConstantOne,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_basis == 0 {
            return Err(Error::InvalidConfig("n_basis must be at least 1".into()));
        }
        if self.iters == Some(0) || (self.iters.is_none() && self.max_iter == 0) {
            return Err(Error::InvalidConfig(
                "iteration count must be at least 1".into(),
            ));
        }
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive (got {})",
                self.tol
            )));
        }
        RationalMap::new(self.map_scale)?;
        JacobiParams::new(self.alpha, self.beta)?;
        FluidParams::new(self.epsilon, self.delta)?;
        Ok(())
    }

    pub fn stopping(&self) -> Stopping {
        match self.iters {
            Some(n) => Stopping::Fixed(n),
            None => Stopping::Tolerance(self.max_iter),
        }
    }

    pub fn fluid(&self) -> Result<FluidParams<T>> {
        FluidParams::new(self.epsilon, self.delta)
    }
}

/// 201 uniform points on `[0, 10]`.
pub fn default_probe<T: Scalar>() -> Vec<T> {
    (0..=200).map(|i| T::from_count(i) / T::lit(20.0)).collect()
}

/// The converged (or last) iterate plus diagnostics.
#[derive(Debug, Clone)]
pub struct SpectralSolution<T> {
    pub trial: TrialFunction<T>,
    pub grid: CollocationGrid<T>,
    pub reports: Vec<IterationReport>,
    pub converged: bool,
}

impl<T: Scalar> SpectralSolution<T> {
    /// k-th derivative (k ≤ 3) of the approximation at `x`.
    pub fn eval(&self, x: T, k: usize) -> Result<T> {
        crate::trial::eval_trial(&self.trial, x, k)
    }

    /// `[f, f', f'', f''']` at `x`.
    pub fn derivatives(&self, x: T) -> Result<[T; 4]> {
        self.trial.derivatives(x)
    }

    pub fn coefficients(&self) -> &CoefficientVector<T> {
        self.trial.coefficients()
    }

    /// Model residual `res(x)` of the approximation.
    pub fn residual(&self, model: &dyn ThirdOrderModel<T>, x: T) -> Result<T> {
        let [f, fp, fpp, fppp] = self.derivatives(x)?;
        Ok(model.residual(f, fp, fpp, fppp))
    }
}

/// Solves any third-order model with the boundary data `f(0)=0, f'(0)=1, f'(∞)=0`.
pub fn solve_model<T: Scalar>(
    config: &SolverConfig<T>,
    model: &dyn ThirdOrderModel<T>,
) -> Result<SpectralSolution<T>> {
    config.validate()?;
    let map = RationalMap::new(config.map_scale)?;
    let params = JacobiParams::new(config.alpha, config.beta)?;
    let basis = TrialBasis::new(map, params, config.n_basis)?;
    let grid = collocation_grid(&map, &params, basis.degree())?;
    let mut probe = default_probe::<T>();
    probe.extend_from_slice(grid.points());
    let options = QlmOptions {
        stopping: config.stopping(),
        tol: config.tol,
        probe,
    };
    let mut step = CollocationSolver::new(basis, grid.clone())?;
    let zero_trial;
    let constant;
    let initial: &dyn Iterate<T> = match config.init {
        InitialIterate::ConstantOne => {
            constant = ConstantState::one();
            &constant
        }
        InitialIterate::ZeroTrial => {
            zero_trial = TrialFunction::new(basis, CoefficientVector::zeros(basis.len()))?;
            &zero_trial
        }
    };
    let outcome = qlm_iterate(&options, model, basis, initial, |lin| step.step(lin))?;
    Ok(SpectralSolution {
        trial: outcome.solution,
        grid,
        reports: outcome.reports,
        converged: outcome.converged,
    })
}

/// Solves the Eyring-Powell boundary-layer problem.
pub fn solve<T: Scalar>(config: &SolverConfig<T>) -> Result<SpectralSolution<T>> {
    let model = EyringPowell::new(config.fluid()?);
    solve_model(config, &model)
}
