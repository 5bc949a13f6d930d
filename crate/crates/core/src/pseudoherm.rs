//! The Hermitian intertwiner η with ηHη⁻¹ = H†, built from the biorthonormal
//! eigensystem, and the spectral tests that decide pseudo-Hermiticity.

use nalgebra::Cholesky;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::matrix::{self, ComplexMatrix};
use crate::pairing::{self, SpectrumPairing};
use crate::spectral::{self, EigenOptions, Eigensystem};

#[derive(Debug, Clone, Serialize)]
pub struct IntertwinerReport {
    #[serde(skip)]
    pub eta: ComplexMatrix,
    /// ‖η − η†‖/‖η‖
    pub hermiticity_residual: f64,
    /// ‖ηH − H†η‖₂/(‖η‖₂‖H‖₂)
    pub intertwining_residual: f64,
    /// ‖(OO†)⁻¹T − η‖/‖η‖: agreement with the product form.
    pub product_form_residual: f64,
    pub invertibility_cond: f64,
    /// Only computed for the real-spectrum intertwiner.
    pub positive_definite: Option<bool>,
}

/// η = Σ_real |φ⟩⟨φ| + Σ_pairs (|φ₊⟩⟨φ₋| + |φ₋⟩⟨φ₊|).
///
/// Assembled as Z + Z† with Z = ½Σ_real |φ⟩⟨φ| + Σ_pairs |φ₊⟩⟨φ₋|, which is
/// Hermitian entry for entry in floating point.
pub fn build_eta(e: &Eigensystem, p: &SpectrumPairing) -> Result<IntertwinerReport> {
    let perm = pairing::swap_permutation(e, p)?;
    let n = e.dim();
    let phi = e.left();
    let mut weights = ComplexMatrix::zeros(n, n);
    for &c in &p.real {
        for &i in &e.clusters[c] {
            weights[(i, i)] = Complex64::new(0.5, 0.0);
        }
    }
    for &(plus, _) in &p.pairs {
        for &i in &e.clusters[plus] {
            weights[(i, perm[i])] = Complex64::new(1.0, 0.0);
        }
    }
    let z = &phi * weights * phi.adjoint();
    let eta = &z + z.adjoint();

    let t = pairing::build_t(e, p)?;
    let product = phi.clone() * phi.adjoint() * t;
    report(e, eta, Some(&product), None)
}

/// η = (OO†)⁻¹, valid when the whole spectrum is real.
pub fn real_spectrum_eta(e: &Eigensystem, p: &SpectrumPairing) -> Result<IntertwinerReport> {
    if !p.all_real() {
        return Err(Error::SpectrumNotReal {
            max_imag: e.max_abs_imag(),
        });
    }
    let phi = e.left();
    let half = (&phi * phi.adjoint()) * Complex64::new(0.5, 0.0);
    let eta = &half + half.adjoint();
    let o = spectral::build_o(e);
    let product = matrix::inverse(&(&o * o.adjoint())).ok_or(Error::SingularEta {
        cond: f64::INFINITY,
    })?;
    let positive = Cholesky::new(eta.clone()).is_some();
    report(e, eta, Some(&product), Some(positive))
}

fn report(
    e: &Eigensystem,
    eta: ComplexMatrix,
    product: Option<&ComplexMatrix>,
    positive_definite: Option<bool>,
) -> Result<IntertwinerReport> {
    let eta_norm = matrix::norm(&eta);
    let hermiticity_residual = if eta_norm > 0.0 {
        matrix::norm(&(&eta - eta.adjoint())) / eta_norm
    } else {
        0.0
    };
    let invertibility_cond = matrix::cond(&eta);
    let intertwining_residual = intertwining_residual(&e.matrix, &eta);
    let product_form_residual = product.map_or(0.0, |prod| {
        let d = matrix::norm(&(prod - &eta));
        if eta_norm > 0.0 {
            d / eta_norm
        } else {
            d
        }
    });
    Ok(IntertwinerReport {
        eta,
        hermiticity_residual,
        intertwining_residual,
        product_form_residual,
        invertibility_cond,
        positive_definite,
    })
}

/// Spectral-norm relative residual ‖ηH − H†η‖₂/(‖η‖₂‖H‖₂).
fn intertwining_residual(h: &ComplexMatrix, eta: &ComplexMatrix) -> f64 {
    let scale = matrix::norm2(eta) * matrix::norm2(h);
    if scale == 0.0 {
        return 0.0;
    }
    matrix::norm2(&(eta * h - h.adjoint() * eta)) / scale
}

/// ‖ηH − H†η‖₂/(‖η‖₂‖H‖₂) for a caller-supplied invertible η, Hermitian or not.
pub fn verify_intertwining(h: &ComplexMatrix, eta: &ComplexMatrix) -> Result<f64> {
    let n = matrix::validate(h)?;
    if matrix::validate(eta)? != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: eta.nrows(),
        });
    }
    let cond = matrix::cond(eta);
    if !(cond <= spectral::DEFAULT_COND_CEILING) {
        return Err(Error::SingularEta { cond });
    }
    Ok(intertwining_residual(h, eta))
}

/// Which of the three equivalent conditions (weak pseudo-Hermiticity, paired
/// spectrum, pseudo-Hermiticity) was checked directly and which follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    WeaklyPseudoHermitian,
    PairedSpectrum,
    PseudoHermitian,
}

#[derive(Debug, Clone)]
pub struct PseudoHermiticityVerdict {
    pub pseudo_hermitian: bool,
    pub eigensystem: Eigensystem,
    pub pairing: SpectrumPairing,
    /// Constructive η when the spectrum is paired.
    pub certificate: Option<IntertwinerReport>,
    pub checked: Condition,
    pub implied: [Condition; 2],
}

/// Decides (weak) pseudo-Hermiticity from the spectrum and, when it holds,
/// attaches η as a certificate.
pub fn check_weak_pseudo_hermiticity(
    h: &ComplexMatrix,
    tol: f64,
) -> Result<PseudoHermiticityVerdict> {
    check_with(
        h,
        &EigenOptions {
            tol,
            ..EigenOptions::default()
        },
    )
}

pub fn check_with(h: &ComplexMatrix, opts: &EigenOptions) -> Result<PseudoHermiticityVerdict> {
    let e = spectral::eigensystem_with(h, opts)?;
    let p = pairing::classify_spectrum(&e, opts.tol);
    let ph = pairing::is_ph_spectrum(&p);
    let certificate = if ph { Some(build_eta(&e, &p)?) } else { None };
    Ok(PseudoHermiticityVerdict {
        pseudo_hermitian: ph,
        eigensystem: e,
        pairing: p,
        certificate,
        checked: Condition::PairedSpectrum,
        implied: [Condition::WeaklyPseudoHermitian, Condition::PseudoHermitian],
    })
}

/// Smallest intertwining residual over `samples` random invertible candidates
/// η (complex Gaussian, condition ≤ 1e3). Evidence against pseudo-Hermiticity
/// when large; never a proof.
pub fn falsification_probe<R: Rng>(h: &ComplexMatrix, samples: usize, rng: &mut R) -> f64 {
    let n = h.nrows();
    (0..samples)
        .map(|_| {
            let eta = families::random_invertible(n, 1e3, rng);
            intertwining_residual(h, &eta)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{diag, from_real_rows};
    use crate::spectral::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn analyze(h: &ComplexMatrix) -> (Eigensystem, SpectrumPairing) {
        let e = spectral::eigensystem(h, DEFAULT_TOL).unwrap();
        let p = pairing::classify_spectrum(&e, DEFAULT_TOL);
        (e, p)
    }

    #[test]
    fn hermitian_with_orthonormal_vectors_gives_identity() {
        let h = from_real_rows(&[&[2.0, 1.0], &[1.0, -1.0]]);
        let (e, p) = analyze(&h);
        let r = build_eta(&e, &p).unwrap();
        assert!(matrix::norm(&(&r.eta - matrix::identity(2))) < 1e-14);
        let r2 = real_spectrum_eta(&e, &p).unwrap();
        assert!(matrix::norm(&(&r2.eta - matrix::identity(2))) < 1e-14);
        assert_eq!(r2.positive_definite, Some(true));
    }

    #[test]
    fn rotation_generator_eta() {
        let h = from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let (e, p) = analyze(&h);
        let r = build_eta(&e, &p).unwrap();
        assert_eq!(r.eta, r.eta.adjoint());
        let eta_inv = matrix::inverse(&r.eta).unwrap();
        let lhs = &r.eta * &h * eta_inv;
        assert!(matrix::norm(&(lhs - h.adjoint())) <= 1e-12);
        assert!(r.product_form_residual < 1e-12);
    }

    #[test]
    fn verify_intertwining_examples() {
        let herm = from_real_rows(&[&[1.0, 2.0], &[2.0, 0.0]]);
        assert_eq!(
            verify_intertwining(&herm, &matrix::identity(2)).unwrap(),
            0.0
        );

        let h = diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let swap = from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(verify_intertwining(&h, &swap).unwrap(), 0.0);

        let anti = diag(&[c(0.0, 1.0), c(0.0, 2.0)]);
        let r = verify_intertwining(&anti, &matrix::identity(2)).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
    }

    #[test]
    fn singular_candidate_is_rejected() {
        let h = matrix::identity(2);
        let eta = from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(
            verify_intertwining(&h, &eta),
            Err(Error::SingularEta { .. })
        ));
    }

    #[test]
    fn conjugated_diagonal_real_spectrum() {
        let m = from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let h = families::similar(&[c(1.0, 0.0), c(2.0, 0.0)], &m);
        let (e, p) = analyze(&h);
        let r = real_spectrum_eta(&e, &p).unwrap();
        let expected = matrix::inverse(&(&m * m.adjoint())).unwrap();
        // η is fixed only up to the normalization of each eigenvector, so
        // compare the defining relation rather than the entries.
        let lhs = &r.eta * &h * matrix::inverse(&r.eta).unwrap();
        assert!(matrix::norm(&(lhs - h.adjoint())) <= 1e-12);
        let lhs2 = &expected * &h * matrix::inverse(&expected).unwrap();
        assert!(matrix::norm(&(lhs2 - h.adjoint())) <= 1e-12);
        assert_eq!(r.positive_definite, Some(true));
    }

    #[test]
    fn complex_spectrum_has_no_real_eta() {
        let h = diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let (e, p) = analyze(&h);
        assert!(matches!(
            real_spectrum_eta(&e, &p),
            Err(Error::SpectrumNotReal { .. })
        ));
    }

    #[test]
    fn verdicts() {
        let no =
            check_weak_pseudo_hermiticity(&diag(&[c(0.0, 1.0), c(0.0, 2.0)]), DEFAULT_TOL).unwrap();
        assert!(!no.pseudo_hermitian);
        assert!(no.certificate.is_none());
        assert_eq!(no.checked, Condition::PairedSpectrum);

        let m = families::random_invertible(3, 1e3, &mut families::rng(3));
        let h = families::similar(&[c(0.0, 1.0), c(0.0, -1.0), c(4.0, 0.0)], &m);
        let yes = check_weak_pseudo_hermiticity(&h, DEFAULT_TOL).unwrap();
        assert!(yes.pseudo_hermitian);
        let cert = yes.certificate.unwrap();
        assert!(cert.intertwining_residual <= 1e-9);
        assert!(cert.hermiticity_residual <= 1e-12);
    }

    #[test]
    fn jordan_block_propagates() {
        let h = from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            check_weak_pseudo_hermiticity(&h, DEFAULT_TOL),
            Err(Error::NotDiagonalizable { .. })
        ));
    }
}
