//! Third-order ODE models `f''' = h(f, f', f'')` that the QLM driver can linearize.

pub mod eyring_powell;

pub use eyring_powell::{EyringPowell, FluidParams};

use crate::error::Result;
use crate::scalar::Scalar;

/// `h` and its partial derivatives at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials<T> {
    pub h: T,
    pub h_f: T,
    pub h_fp: T,
    pub h_fpp: T,
}

pub trait ThirdOrderModel<T: Scalar> {
    /// Residual of the ODE in its original (implicit) form.
    fn residual(&self, f: T, fp: T, fpp: T, fppp: T) -> T;

    /// `f'''` solved explicitly from the state.
    fn explicit_fppp(&self, f: T, fp: T, fpp: T) -> Result<T>;

    fn partials(&self, f: T, fp: T, fpp: T) -> Result<Partials<T>>;

    /// Coefficient of `f'''` in the implicit form; the ODE is singular where it vanishes.
    fn leading_coefficient(&self, _f: T, _fp: T, _fpp: T) -> T {
        T::one()
    }
}
