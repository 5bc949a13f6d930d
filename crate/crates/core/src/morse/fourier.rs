//! Operators diagonal in the discrete Fourier basis, and basis changes
//! between the grid and Fourier representations.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::GridSpec;
use crate::matrix::{self, ComplexMatrix};

/// f(p) for p = −i d/dx, stored as its symbol on the wavenumbers (FFT order).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierMultiplier {
    symbol: Vec<Complex64>,
}

impl FourierMultiplier {
    pub fn new(symbol: Vec<Complex64>) -> Self {
        Self { symbol }
    }

    /// Symbol f(k_m), with the Nyquist mode set to `nyquist`.
    pub fn from_fn(grid: &GridSpec, f: impl Fn(f64) -> Complex64, nyquist: Complex64) -> Self {
        let ny = grid.nyquist_index();
        let symbol = grid
            .wavenumbers()
            .into_iter()
            .enumerate()
            .map(|(m, k)| if m == ny { nyquist } else { f(k) })
            .collect();
        Self { symbol }
    }

    pub fn symbol(&self) -> &[Complex64] {
        &self.symbol
    }

    pub fn len(&self) -> usize {
        self.symbol.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbol.is_empty()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.symbol
                .iter()
                .zip(&other.symbol)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.symbol.iter().map(|a| a.inv()).collect())
    }

    /// Entrywise complex conjugate of the grid matrix, which is again a
    /// multiplier with symbol conj(f(−k)).
    pub fn conj(&self) -> Self {
        let n = self.symbol.len();
        Self::new((0..n).map(|m| self.symbol[(n - m) % n].conj()).collect())
    }

    /// Frobenius distance between two multipliers (equal to the distance of
    /// their grid matrices, the Fourier transform being unitary).
    pub fn distance(&self, other: &Self) -> f64 {
        let d = ComplexMatrix::from_iterator(
            self.symbol.len(),
            1,
            self.symbol.iter().zip(&other.symbol).map(|(a, b)| a - b),
        );
        matrix::norm(&d)
    }

    pub fn frobenius(&self) -> f64 {
        matrix::norm(&ComplexMatrix::from_column_slice(
            self.symbol.len(),
            1,
            &self.symbol,
        ))
    }

    /// Spectral norm: the largest |f(k)|.
    pub fn norm2(&self) -> f64 {
        self.symbol.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn cond(&self) -> f64 {
        let lo = self
            .symbol
            .iter()
            .fold(f64::INFINITY, |acc, z| acc.min(z.norm()));
        self.norm2() / lo
    }

    /// ‖S·S* − 1‖ for the antilinear operator S·K, evaluated on symbols.
    pub fn involution_residual(&self) -> f64 {
        let one = Self::new(vec![Complex64::new(1.0, 0.0); self.len()]);
        self.compose(&self.conj()).distance(&one)
    }

    /// Dense grid-basis matrix F† diag(f) F. It is circulant, so only the
    /// first column is transformed.
    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.symbol.len();
        let mut col = self.symbol.clone();
        FftPlanner::new().plan_fft_inverse(n).process(&mut col);
        let scale = 1.0 / n as f64;
        ComplexMatrix::from_fn(n, n, |j, l| col[(j + n - l) % n] * scale)
    }
}

fn transform_columns(a: &mut ComplexMatrix, fft: &dyn Fft<f64>, scale: f64) {
    let n = a.nrows();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..a.ncols() {
        buf.copy_from_slice(a.column(c).as_slice());
        fft.process(&mut buf);
        for (dst, src) in a.column_mut(c).iter_mut().zip(&buf) {
            *dst = src * scale;
        }
    }
}

fn transform_rows(a: &mut ComplexMatrix, fft: &dyn Fft<f64>, scale: f64) {
    let n = a.ncols();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for r in 0..a.nrows() {
        for (c, z) in buf.iter_mut().enumerate() {
            *z = a[(r, c)];
        }
        fft.process(&mut buf);
        for (c, z) in buf.iter().enumerate() {
            a[(r, c)] = z * scale;
        }
    }
}

/// F·A·F† with F the unitary DFT.
pub fn to_fourier(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let s = 1.0 / (n as f64).sqrt();
    let mut b = a.clone();
    transform_columns(&mut b, fwd.as_ref(), s);
    transform_rows(&mut b, inv.as_ref(), s);
    b
}

/// F†·A·F, the inverse of [`to_fourier`].
pub fn from_fourier(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let s = 1.0 / (n as f64).sqrt();
    let mut b = a.clone();
    transform_columns(&mut b, inv.as_ref(), s);
    transform_rows(&mut b, fwd.as_ref(), s);
    b
}

/// diag(left)·A·diag(right), entrywise.
pub fn scale_rows_cols(
    a: &ComplexMatrix,
    left: &[Complex64],
    right: &[Complex64],
) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.nrows(), a.ncols(), |r, c| left[r] * a[(r, c)] * right[c])
}
