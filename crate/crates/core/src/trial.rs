//! Boundary-embedding trial function
//!
//! ```text
//! f(x) = x/(x²+1) + x²/(x²+1) · Σ_j a_j RJ_j(x)
//! ```
//!
//! `f(0) = 0` and `f'(0) = 1` hold for every coefficient vector, and
//! `f'(x) → 0` as `x → ∞` because every `RJ_j` tends to a constant with
//! derivatives decaying like `(x + L)^-2`. The trial is kept in split form,
//! a fixed boundary term plus a linear combination of modified basis
//! functions, so that a linear ODE in `f` becomes a linear system in `a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::rational_basis::{eval_rj, eval_rj_all, RationalMap};
use crate::scalar::Scalar;

const BINOMIAL: [[u8; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];

/// Spectral coefficients `a_0 … a_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefficientVector<T>(Vec<T>);

impl<T: Scalar> CoefficientVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain {
                what: "coefficient",
                value: values[index].as_f64(),
            });
        }
        Ok(Self(values))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `‖self - other‖∞`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}

fn check_input<T: Scalar>(x: T, k: usize) -> Result<()> {
    if !(x >= T::zero()) {
        return Err(Error::Domain {
            what: "abscissa x",
            value: x.as_f64(),
        });
    }
    if k > 3 {
        return Err(Error::Domain {
            what: "derivative order",
            value: k as f64,
        });
    }
    Ok(())
}

fn boundary_all<T: Scalar>(x: T) -> [T; 4] {
    let one = T::one();
    let s = x * x + one;
    let s2 = s * s;
    let x2 = x * x;
    [
        x / s,
        (one - x2) / s2,
        (T::lit(2.0) * x2 * x - T::lit(6.0) * x) / (s2 * s),
        (T::lit(-6.0) * x2 * x2 + T::lit(36.0) * x2 - T::lit(6.0)) / (s2 * s2),
    ]
}

/// Derivatives of the envelope `x²/(x²+1)`.
fn envelope_all<T: Scalar>(x: T) -> [T; 4] {
    let one = T::one();
    let s = x * x + one;
    let s2 = s * s;
    let x2 = x * x;
    [
        x2 / s,
        T::lit(2.0) * x / s2,
        (T::lit(2.0) - T::lit(6.0) * x2) / (s2 * s),
        (T::lit(24.0) * x2 * x - T::lit(24.0) * x) / (s2 * s2),
    ]
}

#[inline]
fn leibniz<T: Scalar>(env: &[T; 4], rj: [T; 4], k: usize) -> T {
    (0..=k).fold(T::zero(), |acc, i| {
        acc + T::from_count(BINOMIAL[k][i] as usize) * env[i] * rj[k - i]
    })
}

/// k-th derivative of `x/(x²+1)`.
pub fn boundary_term<T: Scalar>(x: T, k: usize) -> Result<T> {
    check_input(x, k)?;
    Ok(boundary_all(x)[k])
}

/// k-th derivative of `φ_j(x) = x²/(x²+1) · RJ_j(x)`.
pub fn basis_function<T: Scalar>(
    map: &RationalMap<T>,
    params: &JacobiParams<T>,
    j: usize,
    x: T,
    k: usize,
) -> Result<T> {
    check_input(x, k)?;
    let env = envelope_all(x);
    let mut rj = [T::zero(); 4];
    for (order, slot) in rj.iter_mut().enumerate().take(k + 1) {
        *slot = eval_rj(map, params, j, x, order)?;
    }
    Ok(leibniz(&env, rj, k))
}

/// Boundary term and all basis functions with derivatives 0..=3 at one point.
#[derive(Debug, Clone)]
pub struct BasisRow<T> {
    pub boundary: [T; 4],
    /// `basis[k][j]` = k-th derivative of `φ_j`.
    pub basis: [Vec<T>; 4],
}

impl<T: Scalar> BasisRow<T> {
    /// `[f, f', f'', f''']` of the trial with coefficients `a`.
    pub fn combine(&self, a: &[T]) -> [T; 4] {
        let mut out = self.boundary;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.basis[k]
                .iter()
                .zip(a)
                .fold(*slot, |acc, (&phi, &c)| acc + c * phi);
        }
        out
    }
}

/// The set `{φ_0, …, φ_N}` for a fixed map and Jacobi family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialBasis<T> {
    map: RationalMap<T>,
    params: JacobiParams<T>,
    len: usize,
}

impl<T: Scalar> TrialBasis<T> {
    /// Basis with `len ≥ 1` functions (degrees `0 ..= len - 1`).
    pub fn new(map: RationalMap<T>, params: JacobiParams<T>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidConfig(
                "trial basis needs at least one function".into(),
            ));
        }
        Ok(Self { map, params, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest Jacobi degree in the expansion.
    pub fn degree(&self) -> usize {
        self.len - 1
    }

    pub fn map(&self) -> &RationalMap<T> {
        &self.map
    }

    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn row(&self, x: T) -> Result<BasisRow<T>> {
        check_input(x, 0)?;
        let env = envelope_all(x);
        let rj = eval_rj_all(&self.map, &self.params, self.degree(), x)?;
        let mut basis: [Vec<T>; 4] = Default::default();
        for (k, row) in basis.iter_mut().enumerate() {
            *row = (0..self.len)
                .map(|j| leibniz(&env, [rj[0][j], rj[1][j], rj[2][j], rj[3][j]], k))
                .collect();
        }
        Ok(BasisRow {
            boundary: boundary_all(x),
            basis,
        })
    }
}

/// A concrete trial function: basis plus coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFunction<T> {
    basis: TrialBasis<T>,
    coefficients: CoefficientVector<T>,
}

impl<T: Scalar> TrialFunction<T> {
    pub fn new(basis: TrialBasis<T>, coefficients: CoefficientVector<T>) -> Result<Self> {
        if coefficients.len() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: coefficients.len(),
            });
        }
        Ok(Self {
            basis,
            coefficients,
        })
    }

    pub fn basis(&self) -> &TrialBasis<T> {
        &self.basis
    }

    pub fn coefficients(&self) -> &CoefficientVector<T> {
        &self.coefficients
    }

    /// `[f, f', f'', f''']` at `x`.
    pub fn derivatives(&self, x: T) -> Result<[T; 4]> {
        Ok(self.basis.row(x)?.combine(self.coefficients.as_slice()))
    }
}

/// `boundary_term(x, k) + Σ_j a_j φ_j^{(k)}(x)`.
pub fn eval_trial<T: Scalar>(tf: &TrialFunction<T>, x: T, k: usize) -> Result<T> {
    check_input(x, k)?;
    Ok(tf.derivatives(x)?[k])
}
