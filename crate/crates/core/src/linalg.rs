//! Dense LU with partial pivoting, row equilibration and a 1-norm
//! condition estimate.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pivots below this (after row equilibration) mark the system singular.
pub const PIVOT_THRESHOLD: f64 = 1e-14;

/// Row-major square or rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Max column sum.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, j)].abs()))
            .fold(T::zero(), T::max)
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// `P R A = L U` where `R` scales every row of `A` to unit max-norm.
#[derive(Debug, Clone)]
pub struct LuFactorization<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    row_scale: Vec<T>,
    equilibrated_norm_one: T,
}

impl<T: Scalar> LuFactorization<T> {
    pub fn new(matrix: &DenseMatrix<T>) -> Result<Self> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: matrix.cols(),
            });
        }
        let mut lu = matrix.clone();
        let mut row_scale = Vec::with_capacity(n);
        for i in 0..n {
            let m = lu.row(i).iter().fold(T::zero(), |m, v| m.max(v.abs()));
            if !(m > T::zero()) || !m.is_finite() {
                return Err(Error::SingularSystem { col: i, pivot: 0.0 });
            }
            let s = T::one() / m;
            lu.row_mut(i).iter_mut().for_each(|v| *v = *v * s);
            row_scale.push(s);
        }
        let equilibrated_norm_one = lu.norm_one();

        let mut perm: Vec<usize> = (0..n).collect();
        let threshold = T::lit(PIVOT_THRESHOLD);
        for k in 0..n {
            // Lowest index wins ties, so the pivot sequence is reproducible.
            let (p, pivot) = (k..n).fold((k, T::zero()), |(bi, bv), i| {
                let v = lu[(i, k)].abs();
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
            if !(pivot >= threshold) {
                return Err(Error::SingularSystem {
                    col: k,
                    pivot: pivot.as_f64(),
                });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let diag = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / diag;
                lu[(i, k)] = factor;
                if factor != T::zero() {
                    for j in (k + 1)..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] = lu[(i, j)] - factor * u;
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            row_scale,
            equilibrated_norm_one,
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Solves the equilibrated system for an already-scaled right-hand side.
    fn solve_scaled(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..i {
                acc = acc - self.lu[(i, j)] * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc = acc - self.lu[(i, j)] * y[j];
            }
            y[i] = acc / self.lu[(i, i)];
        }
        y
    }

    /// Transposed solve of the equilibrated system.
    fn solve_scaled_transpose(&self, c: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut w = c.to_vec();
        for i in 0..n {
            let mut acc = w[i];
            for j in 0..i {
                acc = acc - self.lu[(j, i)] * w[j];
            }
            w[i] = acc / self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            let mut acc = w[i];
            for j in (i + 1)..n {
                acc = acc - self.lu[(j, i)] * w[j];
            }
            w[i] = acc;
        }
        let mut z = vec![T::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            z[p] = w[i];
        }
        z
    }

    /// `A x = b` for the original (unscaled) matrix.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if b.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: b.len(),
            });
        }
        let scaled: Vec<T> = b
            .iter()
            .zip(&self.row_scale)
            .map(|(&v, &s)| v * s)
            .collect();
        Ok(self.solve_scaled(&scaled))
    }

    /// Hager's estimate of the 1-norm condition number of the equilibrated matrix.
    pub fn condition_estimate(&self) -> T {
        let n = self.dim();
        if n == 0 {
            return T::one();
        }
        let mut x = vec![T::one() / T::from_count(n); n];
        let mut estimate = T::zero();
        for _ in 0..5 {
            let y = self.solve_scaled(&x);
            estimate = y.iter().fold(T::zero(), |acc, v| acc + v.abs());
            let xi: Vec<T> = y
                .iter()
                .map(|v| if *v >= T::zero() { T::one() } else { -T::one() })
                .collect();
            let z = self.solve_scaled_transpose(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .fold((0, T::zero()), |(bj, bv), (i, v)| {
                    if v.abs() > bv {
                        (i, v.abs())
                    } else {
                        (bj, bv)
                    }
                });
            let ztx = z
                .iter()
                .zip(&x)
                .fold(T::zero(), |acc, (a, b)| acc + *a * *b);
            if zmax <= ztx {
                break;
            }
            x = vec![T::zero(); n];
            x[j] = T::one();
        }
        // Higham's alternating-sign probe guards against Hager underestimating.
        let denom = if n > 1 {
            T::from_count(n - 1)
        } else {
            T::one()
        };
        let b: Vec<T> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { T::one() } else { -T::one() };
                sign * (T::one() + T::from_count(i) / denom)
            })
            .collect();
        let alt = self
            .solve_scaled(&b)
            .iter()
            .fold(T::zero(), |acc, v| acc + v.abs())
            * T::lit(2.0)
            / (T::lit(3.0) * T::from_count(n));
        self.equilibrated_norm_one * estimate.max(alt)
    }
}
