//! Antilinear operators A = SK, with K componentwise complex conjugation in
//! the computational basis and S the linear part.
//!
//! Composition follows (S₁K)(S₂K) = S₁S₂*, so A is involutory exactly when
//! SS* = 1 and A commutes with a linear H exactly when SH* = HS.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::matrix::{self, ComplexMatrix};
use crate::pairing::{self, SpectrumPairing};
use crate::spectral::{self, Eigensystem};

#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOperator {
    linear: ComplexMatrix,
}

impl AntilinearOperator {
    pub fn new(linear: ComplexMatrix) -> Result<Self> {
        matrix::validate(&linear)?;
        Ok(Self { linear })
    }

    /// Plain complex conjugation K on n-component vectors.
    pub fn conjugation(n: usize) -> Self {
        Self {
            linear: matrix::identity(n),
        }
    }

    pub fn linear_part(&self) -> &ComplexMatrix {
        &self.linear
    }

    pub fn into_linear_part(self) -> ComplexMatrix {
        self.linear
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    /// v ↦ S·conj(v).
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.linear * v.map(|z| z.conj())
    }

    /// `self ∘ other`. Two antilinear maps compose to a linear one, S₁S₂*.
    pub fn compose(&self, other: &AntilinearOperator) -> ComplexMatrix {
        &self.linear * matrix::conj(&other.linear)
    }

    /// `self ∘ L` for a linear L: the antilinear operator with part S·L*.
    pub fn after_linear(&self, l: &ComplexMatrix) -> AntilinearOperator {
        AntilinearOperator {
            linear: &self.linear * matrix::conj(l),
        }
    }
}

/// Θ_E = Σ_m |ψ_m⟩K⟨φ_m|, whose linear part is V·conj(V⁻¹).
pub fn build_conjugation(e: &Eigensystem) -> AntilinearOperator {
    AntilinearOperator {
        linear: &e.right * matrix::conj(&e.left_adjoint),
    }
}

/// Ω̂ = Θ_E T. Its linear part S_Θ·T* collapses to V_π·conj(V⁻¹), with V_π
/// the right eigenvectors permuted by the pair swap.
pub fn build_omega_hat(e: &Eigensystem, p: &SpectrumPairing) -> Result<AntilinearOperator> {
    let perm = pairing::swap_permutation(e, p)?;
    let n = e.dim();
    let permuted = ComplexMatrix::from_fn(n, n, |r, c| e.right[(r, perm[c])]);
    Ok(AntilinearOperator {
        linear: permuted * matrix::conj(&e.left_adjoint),
    })
}

/// ‖S·H* − H·S‖₂/(‖S‖₂‖H‖₂).
pub fn antilinear_commutes(h: &ComplexMatrix, a: &AntilinearOperator) -> f64 {
    let s = &a.linear;
    let scale = matrix::norm2(s) * matrix::norm2(h);
    if scale == 0.0 {
        return 0.0;
    }
    matrix::norm2(&(s * matrix::conj(h) - h * s)) / scale
}

/// ‖S·S* − 1‖ (Frobenius).
pub fn is_involutory(a: &AntilinearOperator) -> f64 {
    let n = a.dim();
    matrix::norm(&(a.compose(a) - matrix::identity(n)))
}

/// ‖S_Θ H* S_Θ⁻¹ − Σ|ψ_m⟩E_m*⟨φ_m|‖/‖H‖: the conjugation maps H onto the
/// operator with conjugated spectrum.
pub fn conjugation_identity_residual(e: &Eigensystem, theta: &AntilinearOperator) -> f64 {
    let s = theta.linear_part();
    let Some(sinv) = matrix::inverse(s) else {
        return f64::INFINITY;
    };
    let lhs = s * matrix::conj(&e.matrix) * sinv;
    let d = matrix::norm(&(lhs - spectral::conjugated_spectrum(e)));
    if e.norm > 0.0 {
        d / e.norm
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExactnessOutcome {
    /// Θ_E commutes with H and the spectrum is real.
    Exact,
    /// Θ_E fails to commute and the spectrum has complex eigenvalues.
    Broken,
    /// At least one side lies in the gray band between the thresholds, or the
    /// two sides disagree.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessVerdict {
    pub commutation_residual: f64,
    pub max_imag: f64,
    /// Residual below this counts as commuting.
    pub commute_threshold: f64,
    /// max |Im E| below this counts as a real spectrum (tol·max(1, ‖H‖)).
    pub real_threshold: f64,
    /// Both quantities must reach `separation` (residual) and
    /// `separation·max(1, ‖H‖)` (imaginary part) to count as broken.
    pub separation: f64,
    /// commuting ⇒ real spectrum
    pub forward_holds: bool,
    /// real spectrum ⇒ commuting
    pub backward_holds: bool,
    pub outcome: ExactnessOutcome,
}

/// Default width of the gray band relative to `tol`: separation = 1e5·tol.
pub const SEPARATION_FACTOR: f64 = 1e5;

/// Checks that H commutes with the conjugation of its own eigenbasis if and
/// only if its spectrum is real, as a two-threshold test.
pub fn exactness_test(h: &ComplexMatrix, tol: f64) -> Result<ExactnessVerdict> {
    let e = spectral::eigensystem(h, tol)?;
    Ok(exactness_from(&e, tol, SEPARATION_FACTOR * tol))
}

pub fn exactness_from(e: &Eigensystem, tol: f64, separation: f64) -> ExactnessVerdict {
    let theta = build_conjugation(e);
    let residual = antilinear_commutes(&e.matrix, &theta);
    let max_imag = e.max_abs_imag();
    let scale = e.norm.max(1.0);
    let real_threshold = tol * scale;
    let commutes = residual <= tol;
    let real = max_imag <= real_threshold;
    let broken = residual >= separation && max_imag >= separation * scale;
    let outcome = if commutes && real {
        ExactnessOutcome::Exact
    } else if broken {
        ExactnessOutcome::Broken
    } else {
        ExactnessOutcome::Inconclusive
    };
    ExactnessVerdict {
        commutation_residual: residual,
        max_imag,
        commute_threshold: tol,
        real_threshold,
        separation,
        forward_holds: !commutes || real,
        backward_holds: !real || commutes,
        outcome,
    }
}
