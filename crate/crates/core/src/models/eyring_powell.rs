//! Eyring-Powell stretching-sheet similarity equation
//!
//! ```text
//! f f'' + (1 + ε) f''' - ε δ f''² f''' - f'² = 0,
//! f(0) = 0, f'(0) = 1, f'(∞) = 0.
//! ```
//!
//! Solved for the third derivative, `f''' = (f'² - f f'')/D` with
//! `D = (1 + ε) - ε δ f''²`.

use serde::{Deserialize, Serialize};

use super::{Partials, ThirdOrderModel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest admissible `|D|`.
pub const SINGULAR_THRESHOLD: f64 = 1e-10;

/// Dimensionless fluid parameters `ε` and `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidParams<T> {
    pub epsilon: T,
    pub delta: T,
}

impl<T: Scalar> FluidParams<T> {
    pub fn new(epsilon: T, delta: T) -> Result<Self> {
        if !(epsilon >= T::zero())
            || !(delta >= T::zero())
            || !epsilon.is_finite()
            || !delta.is_finite()
        {
            return Err(Error::InvalidConfig(format!(
                "fluid parameters must be finite and non-negative (epsilon = {epsilon}, delta = {delta})"
            )));
        }
        Ok(Self { epsilon, delta })
    }

    /// `ε = δ = 0`: the Crane flow, `f = 1 - e^{-x}`.
    pub fn newtonian() -> Self {
        Self {
            epsilon: T::zero(),
            delta: T::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EyringPowell<T> {
    pub params: FluidParams<T>,
}

impl<T: Scalar> EyringPowell<T> {
    pub fn new(params: FluidParams<T>) -> Self {
        Self { params }
    }

    fn denominator(&self, fpp: T) -> Result<T> {
        let FluidParams { epsilon, delta } = self.params;
        let d = T::one() + epsilon - epsilon * delta * fpp * fpp;
        if !(d.abs() > T::lit(SINGULAR_THRESHOLD)) {
            return Err(Error::SingularModel {
                x: f64::NAN,
                denominator: d.as_f64(),
            });
        }
        Ok(d)
    }
}

impl<T: Scalar> ThirdOrderModel<T> for EyringPowell<T> {
    fn residual(&self, f: T, fp: T, fpp: T, fppp: T) -> T {
        let FluidParams { epsilon, delta } = self.params;
        f * fpp + (T::one() + epsilon) * fppp - epsilon * delta * fpp * fpp * fppp - fp * fp
    }

    fn leading_coefficient(&self, _f: T, _fp: T, fpp: T) -> T {
        let FluidParams { epsilon, delta } = self.params;
        T::one() + epsilon - epsilon * delta * fpp * fpp
    }

    fn explicit_fppp(&self, f: T, fp: T, fpp: T) -> Result<T> {
        let d = self.denominator(fpp)?;
        Ok((fp * fp - f * fpp) / d)
    }

    fn partials(&self, f: T, fp: T, fpp: T) -> Result<Partials<T>> {
        let FluidParams { epsilon, delta } = self.params;
        let d = self.denominator(fpp)?;
        let num = fp * fp - f * fpp;
        let two = T::one() + T::one();
        Ok(Partials {
            h: num / d,
            h_f: -fpp / d,
            h_fp: two * fp / d,
            h_fpp: (-f * d + two * epsilon * delta * fpp * num) / (d * d),
        })
    }
}
