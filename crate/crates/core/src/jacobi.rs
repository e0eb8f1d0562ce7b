//! Classical Jacobi polynomials `J_n^{α,β}` on `[-1, 1]`.
//!
//! Values come from the three-term recurrence, derivatives from
//!
//! ```text
//! d/dt J_n^{α,β}(t) = (n + α + β + 1)/2 · J_{n-1}^{α+1,β+1}(t)
//! ```
//!
//! applied repeatedly, and roots from bracketed Newton iteration. Gauss-Jacobi
//! weights are returned alongside the roots so the same [`NodeSet`] doubles
//! as a quadrature rule for `∫ g(t) (1-t)^α (1+t)^β dt`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ln_gamma, Scalar};

const ROOT_TOL: f64 = 1e-14;
const ROOT_MAX_ITER: usize = 100;

/// Jacobi exponents `(α, β)`, both strictly greater than -1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let minus_one = -T::one();
        if !(alpha > minus_one && beta > minus_one) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::ParameterDomain {
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `(α + k, β + k)`: the family that carries the k-th derivative.
    pub fn shifted(&self, k: usize) -> Self {
        let k = T::from_count(k);
        Self {
            alpha: self.alpha + k,
            beta: self.beta + k,
        }
    }

    /// `(β, α)`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// The weight `(1 - t)^α (1 + t)^β`.
    pub fn weight(&self, t: T) -> T {
        (T::one() - t).powf(self.alpha) * (T::one() + t).powf(self.beta)
    }

    /// Closed-form `∫ J_n² w dt` over `[-1, 1]`.
    pub fn norm_squared(&self, n: usize) -> T {
        let (a, b) = (self.alpha, self.beta);
        let nf = T::from_count(n);
        let one = T::one();
        let two = one + one;
        let ab1 = a + b + one;
        if n == 0 {
            // Γ(n+α+β+1)·(2n+α+β+1) degenerates to Γ(α+β+2) at n = 0.
            let ln = ab1 * two.ln() + ln_gamma(a + one) + ln_gamma(b + one) - ln_gamma(ab1 + one);
            return ln.exp();
        }
        let ln = ab1 * two.ln() + ln_gamma(nf + a + one) + ln_gamma(nf + b + one)
            - ln_gamma(nf + one)
            - ln_gamma(nf + a + b + one);
        ln.exp() / (two * nf + ab1)
    }
}

/// Recurrence coefficients for `J_m` from `J_{m-1}`, `J_{m-2}` (m ≥ 2).
#[inline]
fn step<T: Scalar>(p: &JacobiParams<T>, m: usize, t: T, prev: T, prev2: T) -> T {
    let (a, b) = (p.alpha, p.beta);
    let one = T::one();
    let two = one + one;
    let mf = T::from_count(m);
    let c = two * mf + a + b;
    let a1 = two * mf * (mf + a + b) * (c - two);
    let a2 = (c - one) * (a * a - b * b);
    let a3 = (c - two) * (c - one) * c;
    let a4 = two * (mf + a - one) * (mf + b - one) * c;
    ((a2 + a3 * t) * prev - a4 * prev2) / a1
}

#[inline]
fn first<T: Scalar>(p: &JacobiParams<T>, t: T) -> T {
    let two = T::one() + T::one();
    ((p.alpha + p.beta + two) * t + (p.alpha - p.beta)) / two
}

/// `J_n^{α,β}(t)` by the three-term recurrence.
pub fn eval_jacobi<T: Scalar>(params: &JacobiParams<T>, n: usize, t: T) -> T {
    match n {
        0 => T::one(),
        1 => first(params, t),
        _ => {
            let mut prev2 = T::one();
            let mut prev = first(params, t);
            for m in 2..=n {
                let next = step(params, m, t, prev, prev2);
                prev2 = prev;
                prev = next;
            }
            prev
        }
    }
}

/// `J_0(t), …, J_n(t)` in one recurrence sweep.
pub fn eval_jacobi_all<T: Scalar>(params: &JacobiParams<T>, n: usize, t: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n >= 1 {
        out.push(first(params, t));
    }
    for m in 2..=n {
        let v = step(params, m, t, out[m - 1], out[m - 2]);
        out.push(v);
    }
    out
}

/// Factor `Π_{i<k} (n + α + β + 1 + i)/2` relating the k-th derivative of
/// `J_n^{α,β}` to `J_{n-k}^{α+k,β+k}`.
fn derivative_factor<T: Scalar>(params: &JacobiParams<T>, n: usize, k: usize) -> T {
    let two = T::one() + T::one();
    let base = T::from_count(n) + params.alpha + params.beta + T::one();
    (0..k).fold(T::one(), |acc, i| acc * (base + T::from_count(i)) / two)
}

/// k-th t-derivative of `J_n^{α,β}` at `t`; zero when `k > n`.
pub fn eval_jacobi_derivative<T: Scalar>(params: &JacobiParams<T>, n: usize, t: T, k: usize) -> T {
    if k == 0 {
        return eval_jacobi(params, n, t);
    }
    if k > n {
        return T::zero();
    }
    derivative_factor(params, n, k) * eval_jacobi(&params.shifted(k), n - k, t)
}

/// t-derivatives of orders `0..=max_order` for every degree `0..=n`.
///
/// `out[k][m]` is `d^k/dt^k J_m^{α,β}(t)`.
pub fn eval_jacobi_derivatives_all<T: Scalar>(
    params: &JacobiParams<T>,
    n: usize,
    t: T,
    max_order: usize,
) -> Vec<Vec<T>> {
    (0..=max_order)
        .map(|k| {
            if k == 0 {
                return eval_jacobi_all(params, n, t);
            }
            let mut row = vec![T::zero(); n + 1];
            if k <= n {
                let shifted = eval_jacobi_all(&params.shifted(k), n - k, t);
                for m in k..=n {
                    row[m] = derivative_factor(params, m, k) * shifted[m - k];
                }
            }
            row
        })
        .collect()
}

/// Nodes and positive weights of a Gauss-Jacobi rule.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Scalar> NodeSet<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i g(t_i)`, approximating `∫ g(t) (1-t)^α (1+t)^β dt`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut g: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&t, &w)| acc + w * g(t))
    }
}

/// Polynomial value and first derivative, used by the Newton iteration.
fn value_and_slope<T: Scalar>(params: &JacobiParams<T>, n: usize, t: T) -> (T, T) {
    let v = eval_jacobi(params, n, t);
    let d = derivative_factor(params, n, 1) * eval_jacobi(&params.shifted(1), n - 1, t);
    (v, d)
}

/// Sign-change brackets of `J_n(cos θ)` on a uniform θ grid, as `t` pairs
/// in increasing order of `t`.
fn brackets<T: Scalar>(params: &JacobiParams<T>, n: usize) -> Vec<(T, T)> {
    let mut samples = 16 * n + 32;
    loop {
        let pi = T::PI();
        let theta = |i: usize| pi * T::from_count(i) / T::from_count(samples);
        let mut out = Vec::with_capacity(n);
        let mut t_prev = theta(1).cos();
        let mut v_prev = eval_jacobi(params, n, t_prev);
        for i in 2..samples {
            let t = theta(i).cos();
            let v = eval_jacobi(params, n, t);
            if (v_prev < T::zero()) != (v < T::zero()) {
                out.push((t, t_prev));
            }
            t_prev = t;
            v_prev = v;
        }
        // Endpoint strips (θ in (0, π/M) and (π - π/M, π)) hold no roots for the
        // sample counts used here; refine if the count is short.
        if out.len() == n || samples > 4096 * (n + 1) {
            out.reverse();
            return out;
        }
        samples *= 4;
    }
}

/// All `n` roots of `J_n^{α,β}` in increasing order with Gauss-Jacobi weights.
pub fn jacobi_roots<T: Scalar>(params: &JacobiParams<T>, n: usize) -> Result<NodeSet<T>> {
    if n == 0 {
        return Err(Error::Domain {
            what: "root count",
            value: 0.0,
        });
    }
    let brackets = brackets(params, n);
    if brackets.len() != n {
        return Err(Error::RootNonConvergence {
            index: brackets.len(),
        });
    }
    let tol = T::lit(ROOT_TOL).max(T::epsilon() * T::lit(8.0));
    let two = T::one() + T::one();
    let mut nodes = Vec::with_capacity(n);
    for (index, &(lo0, hi0)) in brackets.iter().enumerate() {
        let (mut lo, mut hi) = (lo0, hi0);
        let f_lo = eval_jacobi(params, n, lo);
        let lo_negative = f_lo < T::zero();
        let mut t = (lo + hi) / two;
        let mut converged = false;
        for _ in 0..ROOT_MAX_ITER {
            let (v, d) = value_and_slope(params, n, t);
            if v == T::zero() {
                converged = true;
                break;
            }
            if (v < T::zero()) == lo_negative {
                lo = t;
            } else {
                hi = t;
            }
            let mut next = t - v / d;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = (lo + hi) / two;
            }
            let delta = (next - t).abs();
            t = next;
            if delta < tol || hi - lo < tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::RootNonConvergence { index });
        }
        // One more Newton step takes the tolerance-limited iterate to round-off.
        let (v, d) = value_and_slope(params, n, t);
        let polished = t - v / d;
        if polished > lo0 && polished < hi0 && eval_jacobi(params, n, polished).abs() < v.abs() {
            t = polished;
        }
        nodes.push(t);
    }
    let weights = gauss_jacobi_weights(params, &nodes);
    Ok(NodeSet { nodes, weights })
}

fn gauss_jacobi_weights<T: Scalar>(params: &JacobiParams<T>, nodes: &[T]) -> Vec<T> {
    let n = nodes.len();
    let (a, b) = (params.alpha, params.beta);
    let one = T::one();
    let two = one + one;
    let nf = T::from_count(n);
    let ln_c = (a + b + one) * two.ln() + ln_gamma(nf + a + one) + ln_gamma(nf + b + one)
        - ln_gamma(nf + a + b + one)
        - ln_gamma(nf + one);
    let c = ln_c.exp();
    nodes
        .iter()
        .map(|&t| {
            let (_, d) = value_and_slope(params, n, t);
            c / ((one - t * t) * d * d)
        })
        .collect()
}
