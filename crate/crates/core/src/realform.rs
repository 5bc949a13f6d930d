//! Real forms: given an involutory antilinear symmetry SK of H, factor
//! S = U·conj(U)⁻¹ and return R = U⁻¹HU, which then equals its own conjugate.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::antilinear::{self, AntilinearOperator};
use crate::error::{Error, Result};
use crate::families;
use crate::matrix::{self, ComplexMatrix};
use crate::pairing;
use crate::spectral;

pub const DEFAULT_MAX_ATTEMPTS: usize = 16;
/// A candidate U is taken immediately when its condition number is below this.
pub const ACCEPT_COND: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealFormOptions {
    pub tol: f64,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for RealFormOptions {
    fn default() -> Self {
        Self {
            tol: spectral::DEFAULT_TOL,
            seed: 0,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RealFormResult {
    #[serde(skip)]
    pub u: ComplexMatrix,
    #[serde(skip)]
    pub r: ComplexMatrix,
    /// max |Im R_ij| / ‖R‖
    pub imag_residual: f64,
    /// ‖S·U* − U‖/‖U‖
    pub factor_residual: f64,
    pub cond_u: f64,
    pub seed: u64,
    pub attempts: usize,
}

impl RealFormResult {
    /// Re R together with the Frobenius norm of the discarded imaginary part.
    pub fn real_part(&self) -> (DMatrix<f64>, f64) {
        let re = self.r.map(|z| z.re);
        let im_norm = self.r.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
        (re, im_norm)
    }

    pub fn max_abs_imag(&self) -> f64 {
        matrix::max_abs_imag(&self.r)
    }
}

fn involution_tolerance(a: &AntilinearOperator, tol: f64) -> f64 {
    tol * matrix::norm(a.linear_part()).powi(2).max(1.0)
}

/// Invertible U with S·U* = U.
///
/// Every candidate has the form U_W = S·W* + W, for which
/// S·U_W* = SS*W + SW* = U_W whenever SS* = 1. W = 1 is tried first, then
/// seeded random unitaries; the best-conditioned candidate wins.
pub fn factor_involution(
    a: &AntilinearOperator,
    opts: &RealFormOptions,
) -> Result<(ComplexMatrix, usize)> {
    let residual = antilinear::is_involutory(a);
    let tolerance = involution_tolerance(a, opts.tol);
    if !(residual <= tolerance) {
        return Err(Error::NotInvolutory {
            residual,
            tolerance,
        });
    }
    let s = a.linear_part();
    let n = a.dim();
    let mut rng = families::rng(opts.seed);
    let mut best: Option<(ComplexMatrix, f64)> = None;
    let mut attempts = 0;
    for attempt in 0..opts.max_attempts.max(1) {
        attempts = attempt + 1;
        let w = if attempt == 0 {
            matrix::identity(n)
        } else {
            families::random_unitary(n, &mut rng)
        };
        let u = s * matrix::conj(&w) + &w;
        let cond = matrix::cond(&u);
        if best.as_ref().is_none_or(|(_, c)| cond < *c) {
            best = Some((u, cond));
        }
        if cond <= ACCEPT_COND {
            break;
        }
    }
    match best {
        Some((u, cond)) if cond <= spectral::DEFAULT_COND_CEILING => Ok((u, attempts)),
        best => Err(Error::FactorizationFailed {
            seed: opts.seed,
            attempts,
            best_cond: best.map_or(f64::INFINITY, |(_, c)| c),
        }),
    }
}

/// R = U⁻¹HU for an involutory antilinear symmetry of H.
pub fn real_form(
    h: &ComplexMatrix,
    a: &AntilinearOperator,
    opts: &RealFormOptions,
) -> Result<RealFormResult> {
    let n = matrix::validate(h)?;
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: a.dim(),
        });
    }
    let commutation = antilinear::antilinear_commutes(h, a);
    let commute_tol = opts.tol * matrix::norm2(a.linear_part()).powi(2).max(1.0);
    if !(commutation <= commute_tol) {
        return Err(Error::NotCommuting {
            residual: commutation,
            tolerance: commute_tol,
        });
    }
    let (u, attempts) = factor_involution(a, opts)?;
    let lu = u.clone().lu();
    let r = lu.solve(&(h * &u)).ok_or(Error::FactorizationFailed {
        seed: opts.seed,
        attempts,
        best_cond: f64::INFINITY,
    })?;
    let r_norm = matrix::norm(&r);
    let imag_residual = if r_norm > 0.0 {
        matrix::max_abs_imag(&r) / r_norm
    } else {
        0.0
    };
    let factor_residual =
        matrix::norm(&(a.linear_part() * matrix::conj(&u) - &u)) / matrix::norm(&u);
    Ok(RealFormResult {
        cond_u: matrix::cond(&u),
        u,
        r,
        imag_residual,
        factor_residual,
        seed: opts.seed,
        attempts,
    })
}

/// eigensystem → pairing → Ω̂ → real form. A spectrum without conjugate
/// partners has no real form and surfaces as `SpectrumNotPaired`.
pub fn realform_pipeline(h: &ComplexMatrix, tol: f64, seed: u64) -> Result<RealFormResult> {
    let opts = RealFormOptions {
        tol,
        seed,
        ..RealFormOptions::default()
    };
    let e = spectral::eigensystem(h, tol)?;
    let p = pairing::classify_spectrum(&e, tol);
    let omega = antilinear::build_omega_hat(&e, &p)?;
    real_form(h, &omega, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{diag, from_real_rows};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn op(rows: &[&[f64]]) -> AntilinearOperator {
        AntilinearOperator::new(from_real_rows(rows)).unwrap()
    }

    #[test]
    fn identity_factor_is_two() {
        let (u, attempts) = factor_involution(
            &AntilinearOperator::conjugation(3),
            &RealFormOptions::default(),
        )
        .unwrap();
        assert_eq!(u, matrix::identity(3) * c(2.0, 0.0));
        assert_eq!(attempts, 1);
    }

    #[test]
    fn minus_identity_needs_a_retry() {
        let a = op(&[&[-1.0, 0.0], &[0.0, -1.0]]);
        let (u, attempts) = factor_involution(&a, &RealFormOptions::default()).unwrap();
        assert!(attempts > 1);
        let res = matrix::norm(&(a.linear_part() * matrix::conj(&u) - &u));
        assert!(res <= 1e-12 * matrix::norm(&u));
        assert!(matrix::cond(&u) < 1e6);
    }

    #[test]
    fn swap_needs_a_retry() {
        let a = op(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let (u, attempts) = factor_involution(&a, &RealFormOptions::default()).unwrap();
        assert!(attempts > 1);
        let res = matrix::norm(&(a.linear_part() * matrix::conj(&u) - &u));
        assert!(res <= 1e-12 * matrix::norm(&u));
    }

    #[test]
    fn non_involution_is_rejected() {
        let a = op(&[&[2.0, 0.0], &[0.0, 2.0]]);
        assert!(matches!(
            factor_involution(&a, &RealFormOptions::default()),
            Err(Error::NotInvolutory { .. })
        ));
    }

    #[test]
    fn real_matrix_with_plain_conjugation() {
        let h = from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let r = real_form(
            &h,
            &AntilinearOperator::conjugation(2),
            &RealFormOptions::default(),
        )
        .unwrap();
        assert_eq!(r.u, matrix::identity(2) * c(2.0, 0.0));
        assert!(matrix::norm(&(&r.r - &h)) < 1e-14);
        assert_eq!(r.imag_residual, 0.0);
    }

    #[test]
    fn non_commuting_symmetry_is_rejected() {
        let h = diag(&[c(0.0, 1.0), c(0.0, 2.0)]);
        assert!(matches!(
            real_form(
                &h,
                &AntilinearOperator::conjugation(2),
                &RealFormOptions::default()
            ),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn rotation_generator_real_form() {
        let h = from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]) * c(1.0, 0.0);
        let m = families::random_invertible(2, 1e2, &mut families::rng(2));
        let h = &m * h * matrix::inverse(&m).unwrap();
        let r = realform_pipeline(&h, spectral::DEFAULT_TOL, 0).unwrap();
        assert!(r.imag_residual <= 1e-10);
        let eig = spectral::eigenvalues(&r.r).unwrap();
        assert!(spectral::spectrum_distance(&eig, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-10);
    }

    #[test]
    fn round_trip_real_form() {
        let m = families::random_invertible(3, 1e3, &mut families::rng(11));
        let spectrum = [c(1.0, 2.0), c(1.0, -2.0), c(3.0, 0.0)];
        let h = families::similar(&spectrum, &m);
        let r = realform_pipeline(&h, spectral::DEFAULT_TOL, 0).unwrap();
        assert!(r.max_abs_imag() <= 1e-9);
        let eig = spectral::eigenvalues(&r.r).unwrap();
        assert!(spectral::spectrum_distance(&eig, &spectrum) <= 1e-9);
        let (re, discarded) = r.real_part();
        assert_eq!(re.nrows(), 3);
        assert!(discarded <= 1e-9);
    }

    #[test]
    fn unpaired_spectrum_has_no_real_form() {
        let h = diag(&[c(0.0, 1.0), c(0.0, 2.0)]);
        assert!(matches!(
            realform_pipeline(&h, spectral::DEFAULT_TOL, 0),
            Err(Error::SpectrumNotPaired { .. })
        ));
    }

    #[test]
    fn seed_fixes_u() {
        let a = op(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let opts = RealFormOptions {
            seed: 9,
            ..RealFormOptions::default()
        };
        let (u1, _) = factor_involution(&a, &opts).unwrap();
        let (u2, _) = factor_involution(&a, &opts).unwrap();
        assert_eq!(u1, u2);
    }
}
