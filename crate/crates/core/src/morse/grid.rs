use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform periodic grid on [x_min, x_max) with N points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
}

impl GridSpec {
    pub fn new(n: usize, x_min: f64, x_max: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "N = {n} must be a power of two and at least 16"
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "domain [{x_min}, {x_max}] must be finite with x_max > x_min"
            )));
        }
        Ok(Self { n, x_min, x_max })
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n).map(|j| self.x_min + j as f64 * h).collect()
    }

    /// Index of the unpaired mode m = −N/2 in FFT order.
    pub fn nyquist_index(&self) -> usize {
        self.n / 2
    }

    /// Integer mode numbers in FFT order: 0, 1, …, N/2−1, −N/2, …, −1.
    pub fn modes(&self) -> Vec<i64> {
        let n = self.n as i64;
        (0..n).map(|m| if m < n / 2 { m } else { m - n }).collect()
    }

    /// Wavenumbers 2πm/L in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = 2.0 * PI / self.length();
        self.modes().into_iter().map(|m| m as f64 * dk).collect()
    }

    /// Largest |k| on the grid, Nπ/L.
    pub fn k_max(&self) -> f64 {
        self.n as f64 * PI / self.length()
    }

    /// FFT-order index of the mode with wavenumber −k_m.
    pub fn mirror(&self, m: usize) -> usize {
        (self.n - m) % self.n
    }
}
