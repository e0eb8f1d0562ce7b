//! Rational Jacobi functions on the half line.
//!
//! `RJ_n(x) = J_n((x - L)/(x + L))` for `x ∈ [0, ∞)`. The algebraic map
//! sends `0 ↦ -1`, `L ↦ 0` and `∞ ↦ 1`, so every property of the Jacobi
//! family (orthogonality, endpoint values, real simple roots) carries over
//! with the weight
//!
//! ```text
//! w_L(x) = 2^{α+β+1} x^β L^{α+1} / (x + L)^{α+β+2}.
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{
    eval_jacobi_derivative, eval_jacobi_derivatives_all, jacobi_roots, JacobiParams, NodeSet,
};
use crate::scalar::Scalar;

/// The map `t(x) = (x - L)/(x + L)` with scale `L > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalMap<T> {
    scale: T,
}

impl<T: Scalar> RationalMap<T> {
    pub fn new(scale: T) -> Result<Self> {
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::Domain {
                what: "map scale L",
                value: scale.as_f64(),
            });
        }
        Ok(Self { scale })
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    fn check_x(x: T) -> Result<()> {
        if x >= T::zero() && !x.is_nan() {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "abscissa x",
                value: x.as_f64(),
            })
        }
    }

    /// `(x - L)/(x + L)`.
    pub fn forward(&self, x: T) -> Result<T> {
        Self::check_x(x)?;
        if x.is_infinite() {
            return Ok(T::one());
        }
        Ok((x - self.scale) / (x + self.scale))
    }

    /// `L (1 + t)/(1 - t)` for `t ∈ [-1, 1)`.
    pub fn inverse(&self, t: T) -> Result<T> {
        let one = T::one();
        if !(t >= -one && t < one) {
            return Err(Error::Domain {
                what: "mapped coordinate t",
                value: t.as_f64(),
            });
        }
        Ok(self.scale * (one + t) / (one - t))
    }

    /// `dt/dx`, `d²t/dx²`, `d³t/dx³` at `x`.
    pub fn derivatives(&self, x: T) -> [T; 3] {
        let l = self.scale;
        let s = x + l;
        let s2 = s * s;
        let two = T::one() + T::one();
        let d1 = two * l / s2;
        let d2 = -two * two * l / (s2 * s);
        let d3 = T::lit(12.0) * l / (s2 * s2);
        [d1, d2, d3]
    }
}

/// Chain rule: x-derivative of order `k` from t-derivatives `jt[1..=k]`.
#[inline]
fn compose<T: Scalar>(jt: [T; 4], dt: [T; 3], k: usize) -> T {
    let [d1, d2, d3] = dt;
    match k {
        0 => jt[0],
        1 => jt[1] * d1,
        2 => jt[2] * d1 * d1 + jt[1] * d2,
        3 => jt[3] * d1 * d1 * d1 + T::lit(3.0) * jt[2] * d1 * d2 + jt[1] * d3,
        _ => unreachable!("derivative order above 3"),
    }
}

fn check_order(k: usize) -> Result<()> {
    if k > 3 {
        Err(Error::Domain {
            what: "derivative order",
            value: k as f64,
        })
    } else {
        Ok(())
    }
}

/// k-th x-derivative (k ≤ 3) of `RJ_n` at `x`.
pub fn eval_rj<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    n: usize,
    x: T,
    k: usize,
) -> Result<T> {
    check_order(k)?;
    let t = map.forward(x)?;
    let mut jt = [T::zero(); 4];
    for (order, slot) in jt.iter_mut().enumerate().take(k + 1) {
        *slot = eval_jacobi_derivative(params, n, t, order);
    }
    Ok(compose(jt, map.derivatives(x), k))
}

/// x-derivatives of orders 0..=3 of `RJ_0 … RJ_n` at one abscissa.
///
/// `out[k][m]` is the k-th derivative of `RJ_m`.
pub fn eval_rj_all<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    n: usize,
    x: T,
) -> Result<[Vec<T>; 4]> {
    let t = map.forward(x)?;
    let dt = map.derivatives(x);
    let jt = eval_jacobi_derivatives_all(params, n, t, 3);
    let mut out: [Vec<T>; 4] = Default::default();
    for (k, row) in out.iter_mut().enumerate() {
        *row = (0..=n)
            .map(|m| compose([jt[0][m], jt[1][m], jt[2][m], jt[3][m]], dt, k))
            .collect();
    }
    Ok(out)
}

/// `2^{α+β+1} x^β L^{α+1} / (x + L)^{α+β+2}`.
pub fn mapped_weight<T: Scalar>(map: &RationalMap<T>, params: &JacobiParams<T>, x: T) -> Result<T> {
    RationalMap::<T>::check_x(x)?;
    let (a, b) = (params.alpha(), params.beta());
    let one = T::one();
    let two = one + one;
    let l = map.scale();
    if x == T::zero() {
        return Ok(if b > T::zero() {
            T::zero()
        } else if b == T::zero() {
            two.powf(a + one) * l.powf(a + one) / l.powf(a + two)
        } else {
            T::infinity()
        });
    }
    Ok(two.powf(a + b + one) * x.powf(b) * l.powf(a + one) / (x + l).powf(a + b + two))
}

/// `(1 - t)^α (1 + t)^β · dt/dx` with `t = t(x)`; equal to [`mapped_weight`].
pub fn composite_weight<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    x: T,
) -> Result<T> {
    let t = map.forward(x)?;
    Ok(params.weight(t) * map.derivatives(x)[0])
}

/// Mapped Gauss-Jacobi rule for `∫_0^∞ g(x) w_L(x) dx`: x-nodes, unchanged weights.
pub fn mapped_quadrature<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    count: usize,
) -> Result<NodeSet<T>> {
    let rule = jacobi_roots(params, count)?;
    let nodes = rule
        .nodes
        .iter()
        .map(|&t| map.inverse(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(NodeSet {
        nodes,
        weights: rule.weights,
    })
}

/// Collocation abscissae: the images of the roots of `J_{N+1}` under the inverse map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollocationGrid<T> {
    points: Vec<T>,
}

impl<T: Scalar> CollocationGrid<T> {
    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The `N + 1` roots of `RJ_{N+1}`, increasing.
pub fn collocation_grid<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    degree: usize,
) -> Result<CollocationGrid<T>> {
    let roots = jacobi_roots(params, degree + 1)?;
    let points = roots
        .nodes
        .iter()
        .map(|&t| map.inverse(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(CollocationGrid { points })
}
