//! Reference solution by fixed-step RK4 and shooting on `s = f''(0)`.
//!
//! The far condition `f'(∞) = 0` is imposed at a finite `x_max`. This is an
//! independent check on the spectral solver: it shares only the model's
//! explicit third derivative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::ThirdOrderModel;
use crate::scalar::Scalar;

/// Above this `|f'|` a trial trajectory is treated as diverged.
const BLOWUP: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig<T> {
    pub x_max: T,
    pub step: T,
    /// Initial interval for `f''(0)`.
    pub bracket: (T, T),
    pub tol_far: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for ShootingConfig<T> {
    fn default() -> Self {
        Self {
            x_max: T::lit(20.0),
            step: T::lit(1e-3),
            bracket: (T::lit(-2.0), T::lit(-0.1)),
            tol_far: T::lit(1e-8),
            max_iter: 200,
        }
    }
}

impl<T: Scalar> ShootingConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > T::zero()) || !(self.step > T::zero()) || !(self.step <= self.x_max) {
            return Err(Error::InvalidConfig(format!(
                "shooting needs 0 < step <= x_max (step = {}, x_max = {})",
                self.step, self.x_max
            )));
        }
        if !(self.bracket.0 < self.bracket.1) {
            return Err(Error::InvalidConfig(format!(
                "empty shooting bracket [{}, {}]",
                self.bracket.0, self.bracket.1
            )));
        }
        if !(self.tol_far > T::zero()) || self.max_iter == 0 {
            return Err(Error::InvalidConfig(
                "shooting tolerance and iteration cap must be positive".into(),
            ));
        }
        Ok(())
    }

    fn steps(&self) -> (usize, T) {
        let n = (self.x_max / self.step)
            .round()
            .to_usize()
            .unwrap_or(1)
            .max(1);
        (n, self.x_max / T::from_count(n))
    }
}

/// Samples `(x, [f, f', f''])` with their rates `[f', f'', f''']`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub x: Vec<T>,
    pub states: Vec<[T; 3]>,
    pub rates: Vec<[T; 3]>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn last(&self) -> Option<[T; 3]> {
        self.states.last().copied()
    }

    /// `[f, f', f'']` at `x` by cubic Hermite interpolation between samples.
    pub fn sample(&self, x: T) -> Option<[T; 3]> {
        let (&x0, &xn) = (self.x.first()?, self.x.last()?);
        if x < x0 || x > xn {
            return None;
        }
        let i = match self
            .x
            .binary_search_by(|p| p.partial_cmp(&x).expect("finite abscissae"))
        {
            Ok(i) => return Some(self.states[i]),
            Err(i) => i - 1,
        };
        let (xa, xb) = (self.x[i], self.x[i + 1]);
        let h = xb - xa;
        let s = (x - xa) / h;
        let one = T::one();
        let two = one + one;
        let three = two + one;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = two * s3 - three * s2 + one;
        let h10 = s3 - two * s2 + s;
        let h01 = -two * s3 + three * s2;
        let h11 = s3 - s2;
        let mut out = [T::zero(); 3];
        for (c, slot) in out.iter_mut().enumerate() {
            *slot = h00 * self.states[i][c]
                + h10 * h * self.rates[i][c]
                + h01 * self.states[i + 1][c]
                + h11 * h * self.rates[i + 1][c];
        }
        Some(out)
    }
}

fn rate<T: Scalar>(model: &dyn ThirdOrderModel<T>, y: [T; 3]) -> Result<[T; 3]> {
    Ok([y[1], y[2], model.explicit_fppp(y[0], y[1], y[2])?])
}

fn rk4_step<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    y: [T; 3],
    k1: [T; 3],
    h: T,
) -> Result<[T; 3]> {
    let two = T::one() + T::one();
    let six = T::lit(6.0);
    let add = |a: [T; 3], b: [T; 3], s: T| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    let k2 = rate(model, add(y, k1, h / two))?;
    let k3 = rate(model, add(y, k2, h / two))?;
    let k4 = rate(model, add(y, k3, h))?;
    let mut out = y;
    for c in 0..3 {
        out[c] = y[c] + h / six * (k1[c] + two * k2[c] + two * k3[c] + k4[c]);
    }
    Ok(out)
}

enum March<T> {
    Complete(Trajectory<T>),
    /// Stopped early at `x` with slope `fp`.
    Broke {
        x: T,
        fp: T,
    },
}

/// A march plus `f'` at the first point where `f''` turns nonnegative.
struct Marched<T> {
    march: March<T>,
    first_min: Option<T>,
}

/// `keep` stores every sample; `blowup` stops once `|f'|` exceeds it.
fn march<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    s: T,
    cfg: &ShootingConfig<T>,
    keep: bool,
    blowup: Option<T>,
) -> Marched<T> {
    let (n, h) = cfg.steps();
    let mut y = [T::zero(), T::one(), s];
    let mut first_min = if s >= T::zero() { Some(T::one()) } else { None };
    let mut traj = Trajectory {
        x: Vec::with_capacity(if keep { n + 1 } else { 0 }),
        states: Vec::new(),
        rates: Vec::new(),
    };
    let blowup = blowup.unwrap_or_else(T::infinity);
    let broke = |x, fp, first_min| Marched {
        march: March::Broke { x, fp },
        first_min,
    };
    for i in 0..=n {
        let x = T::from_count(i) * h;
        let k1 = match rate(model, y) {
            Ok(k) => k,
            Err(_) => return broke(x, y[1], first_min),
        };
        if keep {
            traj.x.push(x);
            traj.states.push(y);
            traj.rates.push(k1);
        }
        if i == n {
            break;
        }
        let lead = model.leading_coefficient(y[0], y[1], y[2]);
        match rk4_step(model, y, k1, h) {
            Ok(next)
                if next.iter().all(|v| v.is_finite())
                    && next[1].abs() <= blowup
                    && (model.leading_coefficient(next[0], next[1], next[2]) > T::zero())
                        == (lead > T::zero()) =>
            {
                if first_min.is_none() && next[2] >= T::zero() {
                    first_min = Some(next[1]);
                }
                y = next
            }
            Ok(next) => {
                let fp = if next[1].is_finite() { next[1] } else { y[1] };
                return broke(x + h, fp, first_min);
            }
            Err(_) => return broke(x, y[1], first_min),
        }
    }
    let traj = if keep {
        traj
    } else {
        Trajectory {
            x: vec![cfg.x_max],
            states: vec![y],
            rates: vec![[T::zero(); 3]],
        }
    };
    Marched {
        march: March::Complete(traj),
        first_min,
    }
}

/// Integrates `(f, f', f'')' = (f', f'', h)` from `(0, 1, s)` to `x_max`.
pub fn integrate_ivp<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    s: T,
    cfg: &ShootingConfig<T>,
) -> Result<Trajectory<T>> {
    cfg.validate()?;
    match march(model, s, cfg, true, None).march {
        March::Complete(t) => Ok(t),
        March::Broke { x, .. } => Err(Error::OracleFailure { x: x.as_f64() }),
    }
}

/// Signed miss for slope `s`, plus `f'(x_max)` when the march completes.
///
/// The miss is `f'` at its first local minimum (or at `x_max` if `f'`
/// decreases throughout). It is negative when `f'` dips below zero and
/// positive when `f'` turns back up while still positive, so it changes sign
/// at the true slope even where `f'(x_max)` itself does not. A diverged march
/// reports `f'` at breakdown.
fn mismatch<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    s: T,
    cfg: &ShootingConfig<T>,
) -> (T, Option<T>) {
    let m = march(model, s, cfg, false, Some(T::lit(BLOWUP)));
    match m.march {
        March::Complete(t) => {
            let end = t.states[0][1];
            (m.first_min.unwrap_or(end), Some(end))
        }
        March::Broke { fp, .. } => (m.first_min.unwrap_or(fp), None),
    }
}

#[derive(Debug, Clone)]
pub struct ShootingResult<T> {
    pub s_star: T,
    pub trajectory: Trajectory<T>,
    pub iterations: usize,
}

/// Illinois regula falsi on the signed miss inside the bracket.
pub fn shoot<T: Scalar>(
    model: &dyn ThirdOrderModel<T>,
    cfg: &ShootingConfig<T>,
) -> Result<ShootingResult<T>> {
    cfg.validate()?;
    let (mut lo, mut hi) = cfg.bracket;
    let mut g_lo = mismatch(model, lo, cfg).0;
    let mut g_hi = mismatch(model, hi, cfg).0;
    if (g_lo < T::zero()) == (g_hi < T::zero()) {
        return Err(Error::Bracketing {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let two = T::one() + T::one();
    let mut side = 0i8;
    let mut best = if g_lo.abs() < g_hi.abs() {
        (lo, g_lo)
    } else {
        (hi, g_hi)
    };
    for iteration in 1..=cfg.max_iter {
        let mut s = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        if !(s > lo && s < hi) || !s.is_finite() {
            s = (lo + hi) / two;
        }
        // Diverged trajectories give saturated mismatches; bisect while the bracket is wide.
        if g_lo.abs() >= T::lit(BLOWUP) * T::lit(0.5) || g_hi.abs() >= T::lit(BLOWUP) * T::lit(0.5)
        {
            s = (lo + hi) / two;
        }
        let (g, end) = mismatch(model, s, cfg);
        if g.abs() < best.1.abs() {
            best = (s, g);
        }
        if g.abs() < cfg.tol_far && end.is_some_and(|e| e.abs() < cfg.tol_far) {
            let trajectory = integrate_ivp(model, s, cfg)?;
            return Ok(ShootingResult {
                s_star: s,
                trajectory,
                iterations: iteration,
            });
        }
        if (g < T::zero()) == (g_lo < T::zero()) {
            lo = s;
            g_lo = g;
            if side == -1 {
                g_hi = g_hi / two;
            }
            side = -1;
        } else {
            hi = s;
            g_hi = g;
            if side == 1 {
                g_lo = g_lo / two;
            }
            side = 1;
        }
        if hi - lo <= T::epsilon() * (lo.abs() + hi.abs()) {
            break;
        }
    }
    Err(Error::ShootingNonConvergence {
        iterations: cfg.max_iter,
        mismatch: best.1.as_f64(),
    })
}
