//! Dense complex linear algebra shared by the bracket engines and the
//! spectral routines.
//!
//! Inversion is a partial-pivot Gauss-Jordan elimination with a 1-norm
//! condition estimate. General eigenproblems go through faer; degenerate
//! clusters are re-resolved with an SVD null space so that
//! degenerate-but-diagonalizable matrices and genuine Jordan blocks can be
//! told apart.

use faer::{c64, Mat};
use nalgebra::{DMatrix, SymmetricEigen};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type CMatrix = DMatrix<C64>;

pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub const ZERO: C64 = c(0.0, 0.0);
pub const ONE: C64 = c(1.0, 0.0);
pub const I: C64 = c(0.0, 1.0);

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Maximum absolute column sum.
pub fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct Inverse {
    pub matrix: CMatrix,
    /// `‖A‖₁ ‖A⁻¹‖₁`
    pub condition: f64,
}

/// Inverts a square matrix, rejecting singular pivots and condition
/// estimates above [`tolerance::MAX_CONDITION`].
pub fn invert(a: &CMatrix) -> Result<Inverse> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "cannot invert a {}x{} matrix",
            n,
            a.ncols()
        )));
    }
    let mut work = a.clone();
    let mut inv = CMatrix::identity(n, n);
    let scale = max_norm(a);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| work[(i, col)].norm().total_cmp(&work[(j, col)].norm()))
            .unwrap_or(col);
        if work[(pivot, col)].norm() <= f64::EPSILON * scale || scale == 0.0 {
            return Err(Error::Singular { pivot: col });
        }
        if pivot != col {
            work.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
        }
        let p = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = work[(row, col)];
            if factor == ZERO {
                continue;
            }
            for j in 0..n {
                let w = work[(col, j)];
                let v = inv[(col, j)];
                work[(row, j)] -= factor * w;
                inv[(row, j)] -= factor * v;
            }
        }
    }
    let condition = one_norm(a) * one_norm(&inv);
    if !condition.is_finite() || condition > tolerance::MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    Ok(Inverse {
        matrix: inv,
        condition,
    })
}

/// Solves `A x = b` through [`invert`].
pub fn solve(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != a.nrows() {
        return Err(Error::InvalidInput(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.nrows()
        )));
    }
    let inv = invert(a)?;
    Ok((0..a.nrows())
        .map(|i| (0..b.len()).map(|j| inv.matrix[(i, j)] * b[j]).sum())
        .collect())
}

fn to_faer(a: &CMatrix) -> Result<Mat<c64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "eigenvalues of a non-square {}x{} matrix",
            n,
            a.ncols()
        )));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    Ok(Mat::<c64>::from_fn(n, n, |i, j| a[(i, j)]))
}

fn non_convergence(a: &CMatrix) -> Error {
    Error::NonConvergence {
        dim: a.nrows(),
        norm: max_norm(a),
    }
}

/// Eigenvalues with multiplicity, in solver order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    to_faer(a)?.eigenvalues().map_err(|_| non_convergence(a))
}

/// Eigenvalues sorted by real part, then imaginary part.
pub fn sorted_eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let mut vals = eigenvalues(a)?;
    vals.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(vals)
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<C64>,
    /// Unit-norm right eigenvectors as columns.
    pub vectors: CMatrix,
}

/// Right eigenvectors of a diagonalizable matrix.
///
/// Isolated eigenvalues keep the solver's vector. For a cluster of `m`
/// (numerically) equal eigenvalues the vectors are replaced by an orthonormal
/// basis of the null space of `A - λ̄`; if that null space has dimension
/// below `m` the matrix has a Jordan block and [`Error::Defective`] is
/// returned.
pub fn eigen(a: &CMatrix) -> Result<EigenDecomposition> {
    let n = a.nrows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
        });
    }
    let evd = to_faer(a)?.eigen().map_err(|_| non_convergence(a))?;
    let s = evd.S();
    let u = evd.U();
    let values: Vec<C64> = (0..n).map(|k| s[k]).collect();
    let mut vectors = CMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    let scale = max_norm(a).max(f64::MIN_POSITIVE);
    for group in clusters(&values, tolerance::EIGEN_CLUSTER * scale) {
        if group.len() < 2 {
            continue;
        }
        let m = group.len();
        let mean = group.iter().map(|&k| values[k]).sum::<C64>() / C64::from(m as f64);
        let shifted = a - CMatrix::identity(n, n) * mean;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
        let sigma_m = svd.singular_values[order[m - 1]];
        if sigma_m > tolerance::EIGEN_CLUSTER * scale {
            return Err(Error::Defective(format!(
                "eigenvalue {:.6e}{:+.6e}i has algebraic multiplicity {} but A - λ has only {} \
                 singular values below {:.3e} (next is {:.3e}; Jordan block)",
                mean.re,
                mean.im,
                m,
                order
                    .iter()
                    .filter(|&&k| svd.singular_values[k] <= tolerance::EIGEN_CLUSTER * scale)
                    .count(),
                tolerance::EIGEN_CLUSTER * scale,
                sigma_m
            )));
        }
        for (slot, &k) in group.iter().zip(order.iter()) {
            for i in 0..n {
                vectors[(i, *slot)] = v_t[(k, i)].conj();
            }
        }
    }
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        col /= C64::from(norm);
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues of a hermitian matrix (independent route via the symmetric
/// tridiagonal solver), ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut vals: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Orthonormal basis of the numerical null space (singular values below
/// `rel_tol * σ_max`).
pub fn null_space(a: &CMatrix, rel_tol: f64) -> Vec<Vec<C64>> {
    let n = a.ncols();
    if n == 0 {
        return Vec::new();
    }
    let svd = a.clone().svd(false, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let v_t = svd.v_t.expect("requested V^T");
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= rel_tol * smax.max(f64::MIN_POSITIVE) {
            out.push(v_t.row(k).iter().map(|z| z.conj()).collect());
        }
    }
    // square but rank deficient matrices can have fewer singular values than columns
    for k in svd.singular_values.len()..n {
        out.push(v_t.row(k).iter().map(|z| z.conj()).collect());
    }
    out
}

/// Groups indices of `values` whose pairwise chain distance is within `tol`.
pub fn clusters(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .re
            .total_cmp(&values[j].re)
            .then(values[i].im.total_cmp(&values[j].im))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        let joined = groups.iter_mut().find(|g| {
            g.iter()
                .any(|&member| (values[member] - values[idx]).norm() <= tol)
        });
        match joined {
            Some(g) => g.push(idx),
            None => groups.push(vec![idx]),
        }
    }
    groups
}
