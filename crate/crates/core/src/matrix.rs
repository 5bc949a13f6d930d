//! Dense complex matrix helpers shared by every analysis module.

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix. All operators in the crate (H, H†, η, T, S, U,
/// O) use this representation.
pub type ComplexMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Checks that `m` is square with finite entries and returns its dimension.
pub fn validate(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(m.nrows())
}

/// Frobenius norm, computed with scaling so that entries near the top of the
/// double range do not overflow when squared.
pub fn norm(m: &ComplexMatrix) -> f64 {
    scaled_norm(m.iter())
}

/// Spectral norm (largest singular value). Infinite if the SVD fails.
pub fn norm2(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m).map_or(f64::INFINITY, |s| s[0])
}

pub fn vec_norm(v: &DVector<Complex64>) -> f64 {
    scaled_norm(v.iter())
}

fn scaled_norm<'a>(it: impl Iterator<Item = &'a Complex64> + Clone) -> f64 {
    let scale = it
        .clone()
        .fold(0.0_f64, |acc, z| acc.max(z.re.abs()).max(z.im.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = it.map(|z| (z / scale).norm_sqr()).sum();
    scale * sum.sqrt()
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_imag(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.im.abs()))
}

/// Entrywise complex conjugate (not the adjoint).
pub fn conj(m: &ComplexMatrix) -> ComplexMatrix {
    m.map(|z| z.conj())
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn diag(values: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_column_slice(values))
}

/// Singular values in descending order, or `None` if the SVD iteration fails.
pub fn singular_values(m: &ComplexMatrix) -> Option<Vec<f64>> {
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, 0)?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Some(s)
}

/// 2-norm condition number σ_max/σ_min. Singular (or SVD failure) maps to
/// infinity.
pub fn cond(m: &ComplexMatrix) -> f64 {
    match singular_values(m) {
        Some(s) if !s.is_empty() => {
            let (hi, lo) = (s[0], s[s.len() - 1]);
            if lo == 0.0 {
                f64::INFINITY
            } else {
                hi / lo
            }
        }
        Some(_) => 1.0,
        None => f64::INFINITY,
    }
}

pub fn inverse(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    m.clone().try_inverse()
}

/// ‖a − b‖ / max(‖b‖, tiny); plain difference norm when `b` vanishes.
pub fn relative_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let d = norm(&(a - b));
    let s = norm(b);
    if s > 0.0 {
        d / s
    } else {
        d
    }
}

/// Row-major `[re, im]` nested arrays, the layout used by the matrix file
/// format and every report.
pub fn to_pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

/// Real-valued convenience constructor, row-major.
pub fn from_real_rows(rows: &[&[f64]]) -> ComplexMatrix {
    let n = rows.len();
    ComplexMatrix::from_fn(n, rows[0].len(), |r, c| Complex64::new(rows[r][c], 0.0))
}
