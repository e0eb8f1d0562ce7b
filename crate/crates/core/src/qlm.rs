//! Quasilinearization (Newton-Kantorovich in function space).
//!
//! For `f''' = h(f, f', f'')` the step from `f_i` to `f_{i+1}` solves
//!
//! ```text
//! f'''_{i+1} = h + (f_{i+1} - f_i) h_f + (f'_{i+1} - f'_i) h_fp + (f''_{i+1} - f''_i) h_fpp
//! ```
//!
//! with `h` and its partials frozen at `f_i`, which we store in the form
//! `known + c_f f + c_fp f' + c_fpp f'' - f''' = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::ThirdOrderModel;
use crate::scalar::Scalar;
use crate::trial::{CoefficientVector, TrialBasis, TrialFunction};

/// Anything that can report `[f, f', f'', f''']` at a point.
pub trait Iterate<T: Scalar> {
    fn derivatives(&self, x: T) -> Result<[T; 4]>;

    /// Spectral coefficients, if the iterate is a trial expansion.
    fn coefficients(&self) -> Option<&CoefficientVector<T>> {
        None
    }
}

impl<T: Scalar> Iterate<T> for TrialFunction<T> {
    fn derivatives(&self, x: T) -> Result<[T; 4]> {
        TrialFunction::derivatives(self, x)
    }

    fn coefficients(&self) -> Option<&CoefficientVector<T>> {
        Some(TrialFunction::coefficients(self))
    }
}

/// The same state at every abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantState<T>(pub [T; 4]);

impl<T: Scalar> ConstantState<T> {
    /// `f ≡ 1`.
    pub fn one() -> Self {
        Self([T::one(), T::zero(), T::zero(), T::zero()])
    }
}

impl<T: Scalar> Iterate<T> for ConstantState<T> {
    fn derivatives(&self, _x: T) -> Result<[T; 4]> {
        Ok(self.0)
    }
}

/// Coefficients of the linear step at one abscissa; the `f'''` coefficient is -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTerms<T> {
    pub known_rhs: T,
    pub coef_f: T,
    pub coef_fp: T,
    pub coef_fpp: T,
}

impl<T: Scalar> LinearTerms<T> {
    /// `known + c_f f + c_fp f' + c_fpp f'' - f'''`.
    pub fn residual(&self, d: [T; 4]) -> T {
        self.known_rhs + self.coef_f * d[0] + self.coef_fp * d[1] + self.coef_fpp * d[2] - d[3]
    }
}

/// Linearization of a model about an iterate, evaluated lazily per abscissa.
pub struct LinearizedOde<'a, T: Scalar> {
    model: &'a dyn ThirdOrderModel<T>,
    iterate: &'a dyn Iterate<T>,
}

impl<'a, T: Scalar> LinearizedOde<'a, T> {
    pub fn at(&self, x: T) -> Result<LinearTerms<T>> {
        let [f, fp, fpp, _] = self.iterate.derivatives(x)?;
        let p = self
            .model
            .partials(f, fp, fpp)
            .map_err(|e| with_abscissa(e, x))?;
        Ok(LinearTerms {
            known_rhs: p.h - p.h_f * f - p.h_fp * fp - p.h_fpp * fpp,
            coef_f: p.h_f,
            coef_fp: p.h_fp,
            coef_fpp: p.h_fpp,
        })
    }

    pub fn iterate(&self) -> &dyn Iterate<T> {
        self.iterate
    }
}

fn with_abscissa<T: Scalar>(e: Error, x: T) -> Error {
    match e {
        Error::SingularModel { denominator, .. } => Error::SingularModel {
            x: x.as_f64(),
            denominator,
        },
        other => other,
    }
}

pub fn linearize<'a, T: Scalar>(
    model: &'a dyn ThirdOrderModel<T>,
    iterate: &'a dyn Iterate<T>,
) -> LinearizedOde<'a, T> {
    LinearizedOde { model, iterate }
}

/// One row of the convergence trail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    #[serde(rename = "iter")]
    pub iteration: usize,
    #[serde(rename = "delta_norm")]
    pub coeff_delta_norm: f64,
    #[serde(rename = "res_norm")]
    pub residual_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stopping {
    /// Run exactly this many iterations.
    Fixed(usize),
    /// Stop when the coefficient update falls below `tol`, at most this many iterations.
    Tolerance(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QlmOptions<T> {
    pub stopping: Stopping,
    pub tol: T,
    /// Abscissae for the residual norm in each report.
    pub probe: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct QlmOutcome<T> {
    pub solution: TrialFunction<T>,
    pub reports: Vec<IterationReport>,
    pub converged: bool,
}

/// Max of `|model residual|` over `probe` for the given iterate.
pub fn residual_norm<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    iterate: &dyn Iterate<T>,
    probe: &[T],
) -> Result<T> {
    probe.iter().try_fold(T::zero(), |m, &x| {
        let [f, fp, fpp, fppp] = iterate.derivatives(x)?;
        Ok(m.max(model.residual(f, fp, fpp, fppp).abs()))
    })
}

/// Runs the QLM loop. `step` solves one linearized problem for raw coefficients.
pub fn qlm_iterate<T, F>(
    options: &QlmOptions<T>,
    model: &dyn ThirdOrderModel<T>,
    basis: TrialBasis<T>,
    initial: &dyn Iterate<T>,
    mut step: F,
) -> Result<QlmOutcome<T>>
where
    T: Scalar,
    F: FnMut(&LinearizedOde<'_, T>) -> Result<Vec<T>>,
{
    let max_iter = match options.stopping {
        Stopping::Fixed(n) | Stopping::Tolerance(n) => n,
    };
    if max_iter == 0 {
        return Err(Error::InvalidConfig(
            "QLM needs at least one iteration".into(),
        ));
    }
    let mut previous = initial
        .coefficients()
        .cloned()
        .unwrap_or_else(|| CoefficientVector::zeros(basis.len()));
    let mut reports = Vec::new();
    let mut current: Option<TrialFunction<T>> = None;
    let mut converged = false;

    for iteration in 1..=max_iter {
        let lin = match &current {
            Some(tf) => linearize(model, tf as &dyn Iterate<T>),
            None => linearize(model, initial),
        };
        let raw = step(&lin).map_err(|e| Error::StepFailed {
            iteration,
            source: Box::new(e),
        })?;
        if raw.len() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: raw.len(),
            });
        }
        if let Some(index) = raw.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoefficients { iteration, index });
        }
        let next = CoefficientVector::new(raw)?;
        let delta = next.max_abs_diff(&previous);
        let tf = TrialFunction::new(basis, next.clone())?;
        let res = residual_norm(model, &tf, &options.probe)?;
        log::debug!("qlm iteration {iteration}: delta {delta:e}, residual {res:e}");
        reports.push(IterationReport {
            iteration,
            coeff_delta_norm: delta.as_f64(),
            residual_norm: res.as_f64(),
        });
        previous = next;
        current = Some(tf);
        match options.stopping {
            Stopping::Tolerance(_) if delta < options.tol => {
                converged = true;
                break;
            }
            Stopping::Fixed(_) => {
                converged = delta < options.tol.max(T::lit(FIXED_MODE_FLOOR));
            }
            _ => {}
        }
    }
    Ok(QlmOutcome {
        solution: current.expect("at least one iteration ran"),
        reports,
        converged,
    })
}

/// In fixed-iteration mode a run counts as converged when its last update
/// is below `max(tol, FIXED_MODE_FLOOR)`.
pub const FIXED_MODE_FLOOR: f64 = 1e-10;

/// Least-squares slope of `ln d_{i+1}` against `ln d_i` over the last
/// `pairs` consecutive updates that are still above `floor`.
pub fn convergence_order(deltas: &[f64], floor: f64, pairs: usize) -> Option<f64> {
    let usable: Vec<f64> = deltas.iter().copied().take_while(|d| *d > floor).collect();
    if usable.len() < pairs + 1 || pairs < 2 {
        return None;
    }
    let tail = &usable[usable.len() - pairs - 1..];
    let xs: Vec<f64> = tail[..pairs].iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = tail[1..].iter().map(|d| d.ln()).collect();
    let n = pairs as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}
