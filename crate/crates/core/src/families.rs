//! Seeded generators for the matrix families used by the property tests, the
//! self-test and the examples.

use nalgebra::{DMatrix, QR};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{self, ComplexMatrix};

/// Minimum distance between distinct eigenvalues (and their conjugates) in the
/// generated spectra.
pub const SEPARATION: f64 = 0.2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    })
}

pub fn real_gaussian<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-like random unitary: Q factor of a complex Gaussian matrix with the
/// phases of R's diagonal folded back in.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = complex_gaussian(n, n, rng);
    let qr = QR::new(g);
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        let d = r[(c, c)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for z in q.column_mut(c).iter_mut() {
                *z *= phase;
            }
        }
    }
    q
}

/// Complex Gaussian matrix with 2-norm condition number at most `max_cond`
/// (rejection sampling).
pub fn random_invertible<R: Rng>(n: usize, max_cond: f64, rng: &mut R) -> ComplexMatrix {
    loop {
        let m = complex_gaussian(n, n, rng);
        if matrix::cond(&m) <= max_cond {
            return m;
        }
    }
}

/// Real Gaussian matrix with bounded condition number.
pub fn random_real_invertible<R: Rng>(n: usize, max_cond: f64, rng: &mut R) -> DMatrix<f64> {
    loop {
        let m = real_gaussian(n, n, rng);
        if matrix::cond(&m.map(|x| Complex64::new(x, 0.0))) <= max_cond {
            return m;
        }
    }
}

/// `M · diag(spectrum) · M⁻¹`.
pub fn similar(spectrum: &[Complex64], m: &ComplexMatrix) -> ComplexMatrix {
    let minv = matrix::inverse(m).expect("similarity transform must be invertible");
    m * matrix::diag(spectrum) * minv
}

struct SpectrumBuilder {
    values: Vec<Complex64>,
    clusters: Vec<Complex64>,
}

impl SpectrumBuilder {
    fn new() -> Self {
        Self {
            values: Vec::new(),
            clusters: Vec::new(),
        }
    }

    fn separated(&self, z: Complex64) -> bool {
        self.clusters
            .iter()
            .all(|c| (c - z).norm() >= SEPARATION && (c.conj() - z).norm() >= SEPARATION)
    }

    fn push(&mut self, z: Complex64, mult: usize) {
        self.clusters.push(z);
        self.values.extend(std::iter::repeat_n(z, mult));
    }

    fn real<R: Rng>(&mut self, rng: &mut R) {
        loop {
            let z = Complex64::new(rng.random_range(-2.0..2.0), 0.0);
            if self.separated(z) {
                self.push(z, 1);
                return;
            }
        }
    }

    fn pair<R: Rng>(&mut self, mult: usize, rng: &mut R) {
        loop {
            let z = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(0.2..2.0));
            if self.separated(z) {
                self.push(z, mult);
                self.push(z.conj(), mult);
                return;
            }
        }
    }

    fn unpaired<R: Rng>(&mut self, rng: &mut R) {
        loop {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let z = Complex64::new(
                rng.random_range(-2.0..2.0),
                sign * rng.random_range(0.3..2.0),
            );
            if self.separated(z) {
                self.push(z, 1);
                return;
            }
        }
    }
}

/// Spectrum made of real eigenvalues and complex-conjugate pairs with equal
/// multiplicities (1 or, when `degenerate`, sometimes 2).
pub fn paired_spectrum<R: Rng>(n: usize, degenerate: bool, rng: &mut R) -> Vec<Complex64> {
    let mut b = SpectrumBuilder::new();
    while b.values.len() < n {
        let left = n - b.values.len();
        let choice = rng.random_range(0..3);
        if degenerate && left >= 4 && choice == 2 {
            b.pair(2, rng);
        } else if left >= 2 && choice >= 1 {
            b.pair(1, rng);
        } else {
            b.real(rng);
        }
    }
    b.values
}

/// Simple real spectrum, well separated.
pub fn real_spectrum<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let mut b = SpectrumBuilder::new();
    while b.values.len() < n {
        b.real(rng);
    }
    b.values
}

/// Paired spectrum with at least one complex-conjugate pair.
pub fn complex_pair_spectrum<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    assert!(n >= 2);
    let mut b = SpectrumBuilder::new();
    b.pair(1, rng);
    while b.values.len() < n {
        if n - b.values.len() >= 2 && rng.random_bool(0.5) {
            b.pair(1, rng);
        } else {
            b.real(rng);
        }
    }
    b.values
}

/// Paired spectrum of size n−1 plus one eigenvalue with |Im| ≥ 0.3 whose
/// conjugate is absent.
pub fn unpaired_spectrum<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    assert!(n >= 1);
    let mut b = SpectrumBuilder::new();
    while b.values.len() < n - 1 {
        if n - 1 - b.values.len() >= 2 && rng.random_bool(0.5) {
            b.pair(1, rng);
        } else {
            b.real(rng);
        }
    }
    b.unpaired(rng);
    b.values
}

/// Real matrix `P · B · P⁻¹` where `B` is block diagonal with 1×1 real blocks
/// and 2×2 blocks [[a, b], [−b, a]] (eigenvalues a ± ib).
pub fn real_diagonalizable<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let spectrum = paired_spectrum(n, false, rng);
    let mut blocks = DMatrix::<f64>::zeros(n, n);
    let mut i = 0;
    while i < n {
        let z = spectrum[i];
        if z.im.abs() > 0.0 {
            blocks[(i, i)] = z.re;
            blocks[(i + 1, i + 1)] = z.re;
            blocks[(i, i + 1)] = z.im;
            blocks[(i + 1, i)] = -z.im;
            i += 2;
        } else {
            blocks[(i, i)] = z.re;
            i += 1;
        }
    }
    let p = random_real_invertible(n, 1e2, rng);
    let pinv = p
        .clone()
        .try_inverse()
        .expect("bounded-condition matrix is invertible");
    p * blocks * pinv
}

pub fn to_complex(m: &DMatrix<f64>) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}
