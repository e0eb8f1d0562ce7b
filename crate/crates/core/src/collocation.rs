//! Collocation system for one QLM step.
//!
//! With `f = b + Σ a_j φ_j`, the linear step residual at node `x_k` is
//! affine in `a`. Row `k` of the system is
//!
//! ```text
//! Σ_j [c_f φ_j + c_fp φ'_j + c_fpp φ''_j - φ'''_j](x_k) a_j
//!     = -[known + c_f b + c_fp b' + c_fpp b'' - b'''](x_k)
//! ```

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LuFactorization};
use crate::qlm::{LinearTerms, LinearizedOde};
use crate::rational_basis::CollocationGrid;
use crate::scalar::Scalar;
use crate::trial::{BasisRow, CoefficientVector, TrialBasis};

/// Condition estimates above this are logged as a warning.
pub const CONDITION_WARNING: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct CollocationSystem<T> {
    pub matrix: DenseMatrix<T>,
    pub rhs: Vec<T>,
    pub grid: CollocationGrid<T>,
}

/// Linear-step residual `Res(x; a)` given the basis row at `x`.
pub fn step_residual<T: Scalar>(terms: &LinearTerms<T>, row: &BasisRow<T>, a: &[T]) -> T {
    terms.residual(row.combine(a))
}

fn assemble_rows<T: Scalar>(
    lin: &LinearizedOde<'_, T>,
    grid: &CollocationGrid<T>,
    rows: &[BasisRow<T>],
) -> Result<CollocationSystem<T>> {
    let n = grid.len();
    let cols = rows.first().map_or(0, |r| r.basis[0].len());
    if rows.len() != n || cols != n {
        return Err(Error::Dimension {
            expected: n,
            got: if rows.len() != n { rows.len() } else { cols },
        });
    }
    let mut matrix = DenseMatrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    for (k, (&x, row)) in grid.points().iter().zip(rows).enumerate() {
        let terms = lin.at(x)?;
        let out = matrix.row_mut(k);
        for (j, entry) in out.iter_mut().enumerate() {
            let v = terms.coef_f * row.basis[0][j]
                + terms.coef_fp * row.basis[1][j]
                + terms.coef_fpp * row.basis[2][j]
                - row.basis[3][j];
            if !v.is_finite() {
                return Err(Error::Assembly { row: k, col: j });
            }
            *entry = v;
        }
        let b = row.boundary;
        let r =
            -(terms.known_rhs + terms.coef_f * b[0] + terms.coef_fp * b[1] + terms.coef_fpp * b[2]
                - b[3]);
        if !r.is_finite() {
            return Err(Error::Assembly { row: k, col: n });
        }
        rhs.push(r);
    }
    Ok(CollocationSystem {
        matrix,
        rhs,
        grid: grid.clone(),
    })
}

/// Builds `matrix · a = rhs` equivalent to `Res(x_k; a) = 0` for every node.
pub fn assemble<T: Scalar>(
    lin: &LinearizedOde<'_, T>,
    grid: &CollocationGrid<T>,
    basis: &TrialBasis<T>,
) -> Result<CollocationSystem<T>> {
    let rows = grid
        .points()
        .iter()
        .map(|&x| basis.row(x))
        .collect::<Result<Vec<_>>>()?;
    assemble_rows(lin, grid, &rows)
}

#[derive(Debug, Clone)]
pub struct StepSolution<T> {
    pub coefficients: CoefficientVector<T>,
    pub condition_estimate: T,
}

/// LU solve with the equilibrated condition estimate attached.
pub fn solve_step_with_diagnostics<T: Scalar>(
    sys: &CollocationSystem<T>,
) -> Result<StepSolution<T>> {
    let lu = LuFactorization::new(&sys.matrix)?;
    let a = lu.solve(&sys.rhs)?;
    let cond = lu.condition_estimate();
    if cond.as_f64() > CONDITION_WARNING {
        log::warn!(
            "collocation system is ill-conditioned: estimated cond_1 = {:e}",
            cond.as_f64()
        );
    }
    Ok(StepSolution {
        coefficients: CoefficientVector::new(a)?,
        condition_estimate: cond,
    })
}

pub fn solve_step<T: Scalar>(sys: &CollocationSystem<T>) -> Result<CoefficientVector<T>> {
    solve_step_with_diagnostics(sys).map(|s| s.coefficients)
}

/// Basis rows at the grid, cached across QLM iterations.
#[derive(Debug, Clone)]
pub struct CollocationSolver<T> {
    basis: TrialBasis<T>,
    grid: CollocationGrid<T>,
    rows: Vec<BasisRow<T>>,
    last_condition: Option<T>,
}

impl<T: Scalar> CollocationSolver<T> {
    pub fn new(basis: TrialBasis<T>, grid: CollocationGrid<T>) -> Result<Self> {
        if grid.len() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: grid.len(),
            });
        }
        let rows = grid
            .points()
            .iter()
            .map(|&x| basis.row(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            basis,
            grid,
            rows,
            last_condition: None,
        })
    }

    pub fn basis(&self) -> &TrialBasis<T> {
        &self.basis
    }

    pub fn grid(&self) -> &CollocationGrid<T> {
        &self.grid
    }

    pub fn rows(&self) -> &[BasisRow<T>] {
        &self.rows
    }

    pub fn last_condition(&self) -> Option<T> {
        self.last_condition
    }

    pub fn assemble(&self, lin: &LinearizedOde<'_, T>) -> Result<CollocationSystem<T>> {
        assemble_rows(lin, &self.grid, &self.rows)
    }

    /// Assembles and solves; returns raw coefficients for the QLM driver.
    pub fn step(&mut self, lin: &LinearizedOde<'_, T>) -> Result<Vec<T>> {
        let sys = self.assemble(lin)?;
        let lu = LuFactorization::new(&sys.matrix)?;
        let a = lu.solve(&sys.rhs)?;
        let cond = lu.condition_estimate();
        if cond.as_f64() > CONDITION_WARNING {
            log::warn!(
                "collocation system is ill-conditioned: estimated cond_1 = {:e}",
                cond.as_f64()
            );
        }
        self.last_condition = Some(cond);
        Ok(a)
    }
}
