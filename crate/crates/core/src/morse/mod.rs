//! The complex Morse Hamiltonian H = p² + V(x),
//! V(x) = (A+iB)²e^{−2x} − (A+iB)(2C+1)e^{−x}, on a periodic Fourier grid.
//!
//! The imaginary coordinate shift e^{−θp} is exactly diagonal in the discrete
//! Fourier basis, so it is kept as a [`FourierMultiplier`] and applied to
//! operators in that basis rather than through dense products, which would
//! lose everything to cancellation once e^{θ k_max} is large.

mod fourier;
mod grid;

pub use fourier::{from_fourier, scale_rows_cols, to_fourier, FourierMultiplier};
pub use grid::GridSpec;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix, I};
use crate::realform::RealFormResult;
use crate::spectral;

/// Largest allowed |θ|·k_max for a shift operator.
pub const SHIFT_GUARD: f64 = 300.0;

pub const DEFAULT_N: usize = 256;
pub const DEFAULT_X_MIN: f64 = -4.0;
pub const DEFAULT_X_MAX: f64 = 14.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorseParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// √(A² + B²)
    pub rho: f64,
    /// arg((A+iB)²) = 2·atan2(B, A)
    pub theta: f64,
    /// 2C + 1
    pub k: f64,
}

/// θ is taken as arg((A+iB)²) so that ρ²e^{iθ} = (A+iB)² and ρe^{iθ/2} = A+iB
/// hold identically.
pub fn morse_params(a: f64, b: f64, c: f64) -> Result<MorseParams> {
    if a == 0.0 && b == 0.0 {
        return Err(Error::DegenerateParams);
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::Parse(format!(
            "non-finite Morse parameters ({a}, {b}, {c})"
        )));
    }
    Ok(MorseParams {
        a,
        b,
        c,
        rho: a.hypot(b),
        theta: 2.0 * b.atan2(a),
        k: 2.0 * c + 1.0,
    })
}

impl MorseParams {
    /// V(z) = ρ²e^{−2z+iθ} − kρe^{−z+iθ/2}, valid for complex z.
    pub fn potential(&self, z: Complex64) -> Complex64 {
        let (rho, k, th) = (self.rho, self.k, self.theta);
        rho * rho * (-2.0 * z + I * th).exp() - k * rho * (-z + I * (th / 2.0)).exp()
    }

    /// V written in the original (A+iB) form; used to cross-check `potential`.
    pub fn potential_direct(&self, x: f64) -> Complex64 {
        let w = Complex64::new(self.a, self.b);
        w * w * (-2.0 * x).exp() - w * self.k * (-x).exp()
    }

    /// ρ²e^{−2x} − kρe^{−x}: V shifted by iθ/2.
    pub fn real_potential(&self, x: f64) -> f64 {
        self.rho * self.rho * (-2.0 * x).exp() - self.k * self.rho * (-x).exp()
    }
}

/// V(x_j + shift) on the grid nodes.
pub fn potential_values(p: &MorseParams, g: &GridSpec, shift: Complex64) -> Vec<Complex64> {
    g.nodes()
        .into_iter()
        .map(|x| p.potential(Complex64::new(x, 0.0) + shift))
        .collect()
}

/// p² with ħ = 2m = 1.
pub fn kinetic(g: &GridSpec) -> FourierMultiplier {
    let k_ny = g.k_max();
    FourierMultiplier::from_fn(
        g,
        |k| Complex64::new(k * k, 0.0),
        Complex64::new(k_ny * k_ny, 0.0),
    )
}

fn with_potential(g: &GridSpec, v: impl Iterator<Item = Complex64>) -> ComplexMatrix {
    let mut h = kinetic(g).to_dense();
    for (j, vj) in v.enumerate() {
        h[(j, j)] += vj;
    }
    h
}

/// H = p² + diag(V(x_j)).
pub fn build_hamiltonian(p: &MorseParams, g: &GridSpec) -> ComplexMatrix {
    with_potential(
        g,
        potential_values(p, g, Complex64::new(0.0, 0.0)).into_iter(),
    )
}

/// p² + diag(ρ²e^{−2x} − kρe^{−x}), built directly from the real potential.
pub fn build_real_hamiltonian(p: &MorseParams, g: &GridSpec) -> ComplexMatrix {
    with_potential(
        g,
        g.nodes()
            .into_iter()
            .map(|x| Complex64::new(p.real_potential(x), 0.0)),
    )
}

/// e^{−θp} as a Fourier multiplier. The Nyquist mode has no ±k partner and is
/// left unshifted (weight 1).
pub fn shift_multiplier(theta_coeff: f64, g: &GridSpec) -> Result<FourierMultiplier> {
    let exponent = theta_coeff.abs() * g.k_max();
    if !(exponent <= SHIFT_GUARD) {
        return Err(Error::ShiftOverflow {
            exponent,
            limit: SHIFT_GUARD,
        });
    }
    Ok(FourierMultiplier::from_fn(
        g,
        |k| Complex64::new((-theta_coeff * k).exp(), 0.0),
        Complex64::new(1.0, 0.0),
    ))
}

/// e^{−θp} as a dense grid-basis matrix (Hermitian).
pub fn shift_operator(theta_coeff: f64, g: &GridSpec) -> Result<ComplexMatrix> {
    Ok(shift_multiplier(theta_coeff, g)?.to_dense())
}

/// e^{−θp}·A·e^{θp} in the Fourier basis: entry (m, n) of F A F† times
/// e^{−θ(k_m − k_n)}.
fn conjugate_by_shift(a_fourier: &ComplexMatrix, shift: &FourierMultiplier) -> ComplexMatrix {
    let inv = shift.inverse();
    scale_rows_cols(a_fourier, shift.symbol(), inv.symbol())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntertwiningReport {
    /// max_j |V(x_j + iθ) − V*(x_j)| / max|V|
    pub pointwise_residual: f64,
    /// max_j |Im V(x_j + iθ/2)| / max|V|
    pub realness_residual: f64,
    /// ‖e^{−θp} diag(V) e^{θp} − diag(V*)‖/‖diag(V)‖ (Frobenius)
    pub operator_residual: f64,
}

/// Pointwise and operator-level checks of e^{−θp}V e^{θp} = V(x+iθ) = V*.
pub fn verify_morse_intertwining(p: &MorseParams, g: &GridSpec) -> Result<IntertwiningReport> {
    let shift = shift_multiplier(p.theta, g)?;
    let v = potential_values(p, g, Complex64::new(0.0, 0.0));
    let shifted = potential_values(p, g, Complex64::new(0.0, p.theta));
    let half = potential_values(p, g, Complex64::new(0.0, p.theta / 2.0));
    let vmax = v.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
    let rel = |x: f64| if vmax > 0.0 { x / vmax } else { x };

    let pointwise = shifted
        .iter()
        .zip(&v)
        .fold(0.0_f64, |acc, (s, z)| acc.max((s - z.conj()).norm()));
    let realness = half.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs()));

    let v_diag = matrix::diag(&v);
    let conj_diag = matrix::diag(&v.iter().map(|z| z.conj()).collect::<Vec<_>>());
    let lhs = conjugate_by_shift(&to_fourier(&v_diag), &shift);
    let diff = lhs - to_fourier(&conj_diag);
    let v_norm = matrix::norm(&v_diag);
    let operator = if v_norm > 0.0 {
        matrix::norm(&diff) / v_norm
    } else {
        matrix::norm(&diff)
    };

    Ok(IntertwiningReport {
        pointwise_residual: rel(pointwise),
        realness_residual: rel(realness),
        operator_residual: operator,
    })
}

#[derive(Debug, Clone)]
pub struct MorseRealForm {
    /// U = e^{θp/2}, R = U⁻¹HU in the grid basis.
    pub result: RealFormResult,
    /// R in the Fourier basis, where it is computed entry by entry.
    pub r_fourier: ComplexMatrix,
    /// ‖R − H_real‖/‖H‖ against the directly built real Morse Hamiltonian.
    pub real_direct_residual: f64,
    /// Ω̂ = e^{θp}K: ‖SS* − 1‖.
    pub omega_involution_residual: f64,
    /// ‖S* − S⁻¹‖/‖S⁻¹‖.
    pub s_conj_inverse_residual: f64,
    /// ‖SH* − HS‖/(‖S‖₂‖H‖), Frobenius numerator.
    pub omega_commutation_residual: f64,
}

/// Real form of H through U = e^{θp/2}, with the accompanying checks on the
/// antilinear symmetry Ω̂ = e^{θp}K.
pub fn morse_real_form(p: &MorseParams, g: &GridSpec) -> Result<MorseRealForm> {
    let h = build_hamiltonian(p, g);
    let h_fourier = to_fourier(&h);
    // e^{θp} and e^{θp/2} are shifts with coefficient −θ and −θ/2.
    let s = shift_multiplier(-p.theta, g)?;
    let u = shift_multiplier(-p.theta / 2.0, g)?;
    let u_inv = u.inverse();

    let r_fourier = scale_rows_cols(&h_fourier, u_inv.symbol(), u.symbol());
    let r = from_fourier(&r_fourier);
    let r_norm = matrix::norm(&r);
    let imag_residual = if r_norm > 0.0 {
        matrix::max_abs_imag(&r) / r_norm
    } else {
        0.0
    };
    let factor_residual = s.compose(&u.conj()).distance(&u) / u.frobenius();

    let h_norm = matrix::norm(&h);
    let real_direct = to_fourier(&build_real_hamiltonian(p, g));
    let real_direct_residual = matrix::norm(&(&r_fourier - real_direct)) / h_norm;

    let s_inv = s.inverse();
    let s_conj_inverse_residual = s.conj().distance(&s_inv) / s_inv.frobenius();

    // [H, Ω̂] = 0 ⇔ S·H* = H·S; both sides formed entrywise in the Fourier
    // basis, where S is diagonal.
    let h_conj_fourier = to_fourier(&matrix::conj(&h));
    let ones = vec![Complex64::new(1.0, 0.0); g.n];
    let lhs = scale_rows_cols(&h_conj_fourier, s.symbol(), &ones);
    let rhs = scale_rows_cols(&h_fourier, &ones, s.symbol());
    let omega_commutation_residual = matrix::norm(&(lhs - rhs)) / (s.norm2() * h_norm);

    Ok(MorseRealForm {
        result: RealFormResult {
            u: u.to_dense(),
            r,
            imag_residual,
            factor_residual,
            cond_u: u.cond(),
            seed: 0,
            attempts: 1,
        },
        r_fourier,
        real_direct_residual,
        omega_involution_residual: s.involution_residual(),
        s_conj_inverse_residual,
        omega_commutation_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumComparison {
    /// Lowest eigenvalues of H (by real part).
    pub h_lowest: Vec<Complex64>,
    /// Eigenvalue of U⁻¹HU matched to each entry of `h_lowest`.
    pub real_form_lowest: Vec<Complex64>,
    /// max |ΔE|/|E| over the compared eigenvalues.
    pub max_relative_deviation: f64,
    /// Negative eigenvalues of the directly built real Hamiltonian.
    pub bound_states_real: Vec<f64>,
    /// Closest eigenvalue of H to each entry of `bound_states_real`.
    pub bound_states_h: Vec<Complex64>,
    /// max |ΔE| between the two bound-state lists.
    pub bound_state_deviation: f64,
    pub h_norm: f64,
}

fn nearest(target: Complex64, pool: &[Complex64]) -> Complex64 {
    *pool
        .iter()
        .min_by(|a, b| (*a - target).norm().total_cmp(&(*b - target).norm()))
        .expect("non-empty spectrum")
}

/// Compares the spectrum of H with that of its real form U⁻¹HU (a similarity,
/// so they agree up to roundoff) and with the directly built real Hamiltonian
/// (which agrees only up to truncation).
pub fn compare_spectra(
    p: &MorseParams,
    g: &GridSpec,
    form: &MorseRealForm,
    count: usize,
) -> Result<SpectrumComparison> {
    let h = build_hamiltonian(p, g);
    let eig_h = spectral::eigenvalues(&h)?;
    let eig_r = spectral::eigenvalues(&form.r_fourier)?;
    let count = count.min(eig_h.len());
    let h_lowest: Vec<Complex64> = eig_h[..count].to_vec();
    let real_form_lowest: Vec<Complex64> = h_lowest.iter().map(|e| nearest(*e, &eig_r)).collect();
    let max_relative_deviation = h_lowest
        .iter()
        .zip(&real_form_lowest)
        .map(|(a, b)| (a - b).norm() / a.norm().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);

    let eig_real = spectral::eigenvalues(&build_real_hamiltonian(p, g))?;
    let bound_states_real: Vec<f64> = eig_real.iter().map(|z| z.re).filter(|&x| x < 0.0).collect();
    let bound_states_h: Vec<Complex64> = bound_states_real
        .iter()
        .map(|&x| nearest(Complex64::new(x, 0.0), &eig_h))
        .collect();
    let bound_state_deviation = bound_states_real
        .iter()
        .zip(&bound_states_h)
        .map(|(&a, b)| (b - a).norm())
        .fold(0.0, f64::max);

    Ok(SpectrumComparison {
        h_lowest,
        real_form_lowest,
        max_relative_deviation,
        bound_states_real,
        bound_states_h,
        bound_state_deviation,
        h_norm: matrix::norm(&h),
    })
}
