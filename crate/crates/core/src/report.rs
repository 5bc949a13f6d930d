//! Machine-readable analysis documents. Every residual is emitted next to the
//! tolerance it was compared against.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::antilinear::{self, ExactnessVerdict};
use crate::error::{Error, Result};
use crate::io::SCHEMA_VERSION;
use crate::matrix::{self, ComplexMatrix};
use crate::morse::{self, GridSpec, MorseParams};
use crate::pairing::{self, PairTag, SpectrumPairing};
use crate::pseudoherm;
use crate::realform::{self, RealFormOptions};
use crate::spectral::{self, EigenOptions, Eigensystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    PseudoHermitian,
    NotPseudoHermitian,
    NotDiagonalizable,
    Inconclusive,
}

/// Run-wide settings taken from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
    /// Halves every tolerance.
    pub strict: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: spectral::DEFAULT_TOL,
            seed: 0,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Clustering, pairing and base relative tolerance.
    pub tol: f64,
    pub cond_ceiling: f64,
    /// Lower edge of the "broken" band for the exactness test.
    pub separation: f64,
    pub hermiticity: f64,
    pub factor: f64,
    pub morse_pointwise: f64,
    pub morse_spectrum: f64,
    pub morse_involution: f64,
    pub strict: bool,
}

impl Tolerances {
    pub fn from_settings(s: &Settings) -> Self {
        let f = if s.strict { 0.5 } else { 1.0 };
        let tol = s.tol * f;
        Self {
            tol,
            cond_ceiling: spectral::DEFAULT_COND_CEILING,
            separation: antilinear::SEPARATION_FACTOR * tol,
            hermiticity: 1e-12 * f,
            factor: 1e-10 * f,
            morse_pointwise: 1e-12 * f,
            morse_spectrum: 1e-8 * f,
            morse_involution: 1e-10 * f,
            strict: s.strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Residual {
    pub fn at_most(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

pub type Residuals = BTreeMap<String, Residual>;

fn all_passed(r: &Residuals) -> bool {
    r.values().all(|x| x.passed)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub index: usize,
    pub value: [f64; 2],
    pub cluster: usize,
    /// Position inside the degeneracy cluster.
    pub degeneracy_index: usize,
    pub tag: PairTag,
    pub partner_cluster: Option<usize>,
}

fn spectrum_entries(e: &Eigensystem, p: &SpectrumPairing) -> Vec<SpectrumEntry> {
    (0..e.dim())
        .map(|i| {
            let (cluster, a) = e.label(i);
            let (tag, partner) = p.tag(cluster);
            SpectrumEntry {
                index: i,
                value: [e.eigenvalues[i].re, e.eigenvalues[i].im],
                cluster,
                degeneracy_index: a,
                tag,
                partner_cluster: partner,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisVerdict {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub verdict: Verdict,
    pub n: usize,
    pub cond_estimate: Option<f64>,
    pub spectrum: Vec<SpectrumEntry>,
    /// Cluster index pairs (plus, minus).
    pub pairs: Vec<(usize, usize)>,
    pub unmatched: Vec<usize>,
    pub residuals: Residuals,
    pub exactness: Option<ExactnessVerdict>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub message: Option<String>,
}

fn eigen_options(t: &Tolerances) -> EigenOptions {
    EigenOptions {
        tol: t.tol,
        cond_ceiling: t.cond_ceiling,
    }
}

/// Unmatched clusters close to the real axis or to a conjugate partner fall in
/// the gray band rather than counting as clear evidence.
fn unmatched_in_gray_zone(e: &Eigensystem, p: &SpectrumPairing, t: &Tolerances) -> bool {
    let band = t.separation * e.norm.max(1.0);
    p.unmatched.iter().any(|&c| {
        let z = e.cluster_value(c);
        let near_conj = (0..e.clusters.len())
            .filter(|&d| d != c)
            .any(|d| (e.cluster_value(d) - z.conj()).norm() <= band);
        z.im.abs() <= band || near_conj
    })
}

/// Spectral classification, η certificate, Ω̂ residuals and the exactness
/// test for one matrix.
pub fn analyze(h: &ComplexMatrix, settings: &Settings) -> Result<AnalysisVerdict> {
    let t = Tolerances::from_settings(settings);
    let n = matrix::validate(h)?;
    let mut doc = AnalysisVerdict {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        verdict: Verdict::Inconclusive,
        n,
        cond_estimate: None,
        spectrum: Vec::new(),
        pairs: Vec::new(),
        unmatched: Vec::new(),
        residuals: Residuals::new(),
        exactness: None,
        tolerances: t,
        seed: settings.seed,
        message: None,
    };
    let e = match spectral::eigensystem_with(h, &eigen_options(&t)) {
        Ok(e) => e,
        Err(err @ Error::NotDiagonalizable { .. }) => {
            doc.verdict = Verdict::NotDiagonalizable;
            doc.message = Some(err.to_string());
            return Ok(doc);
        }
        Err(err) => return Err(err),
    };
    let cond = e.cond_estimate;
    let h_scale = e.norm.max(1.0);
    let tc = t.tol * cond.max(1.0);
    let tc2 = t.tol * cond.max(1.0).powi(2);
    doc.cond_estimate = Some(cond);

    let (gram, completeness) = spectral::verify_biorthonormality(&e);
    let r = &mut doc.residuals;
    r.insert("biorthonormality".into(), Residual::at_most(gram, tc));
    r.insert("completeness".into(), Residual::at_most(completeness, tc));
    let recon = matrix::norm(&(spectral::reconstruct(&e) - h)) / h_scale;
    r.insert("reconstruction".into(), Residual::at_most(recon, tc));

    let p = pairing::classify_spectrum(&e, t.tol);
    doc.spectrum = spectrum_entries(&e, &p);
    doc.pairs = p.pairs.clone();
    doc.unmatched = p.unmatched.clone();
    doc.exactness = Some(antilinear::exactness_from(&e, t.tol, t.separation));

    if pairing::is_ph_spectrum(&p) {
        let cert = pseudoherm::build_eta(&e, &p)?;
        let tm = pairing::build_t(&e, &p)?;
        let omega = antilinear::build_omega_hat(&e, &p)?;
        let r = &mut doc.residuals;
        r.insert(
            "eta_hermiticity".into(),
            Residual::at_most(cert.hermiticity_residual, t.hermiticity),
        );
        r.insert(
            "eta_intertwining".into(),
            Residual::at_most(cert.intertwining_residual, tc2),
        );
        r.insert(
            "eta_product_form".into(),
            Residual::at_most(cert.product_form_residual, tc2),
        );
        r.insert(
            "eta_invertibility_cond".into(),
            Residual::at_most(cert.invertibility_cond, t.cond_ceiling),
        );
        let t_sq = matrix::norm(&(&tm * &tm - matrix::identity(n)));
        r.insert("t_involution".into(), Residual::at_most(t_sq, tc));
        let t_conj = matrix::norm(&(&tm * h * &tm - spectral::conjugated_spectrum(&e))) / h_scale;
        r.insert(
            "t_conjugated_spectrum".into(),
            Residual::at_most(t_conj, tc),
        );
        r.insert(
            "omega_involution".into(),
            Residual::at_most(antilinear::is_involutory(&omega), tc2),
        );
        r.insert(
            "omega_commutation".into(),
            Residual::at_most(antilinear::antilinear_commutes(h, &omega), tc2),
        );
        if all_passed(&doc.residuals) {
            doc.verdict = Verdict::PseudoHermitian;
        } else {
            doc.message =
                Some("spectrum is paired but a certificate residual exceeds its tolerance".into());
        }
    } else if unmatched_in_gray_zone(&e, &p, &t) {
        doc.message = Some("an unmatched eigenvalue lies within the separation band of a conjugate partner or the real axis".into());
    } else {
        doc.verdict = Verdict::NotPseudoHermitian;
        doc.message = Some(format!(
            "{} eigenvalue cluster(s) without a complex-conjugate partner of equal multiplicity",
            p.unmatched.len()
        ));
    }
    Ok(doc)
}

#[derive(Debug, Clone, Serialize)]
pub struct RealformReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub verdict: Verdict,
    pub n: usize,
    pub u: Option<Vec<Vec<[f64; 2]>>>,
    pub r: Option<Vec<Vec<[f64; 2]>>>,
    pub imag_residual: Option<f64>,
    pub factor_residual: Option<f64>,
    pub cond_u: Option<f64>,
    pub attempts: Option<usize>,
    pub residuals: Residuals,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub message: Option<String>,
}

/// Real form U⁻¹HU through the canonical antilinear symmetry, or the reason
/// none exists.
pub fn realform_report(h: &ComplexMatrix, settings: &Settings) -> Result<RealformReport> {
    let t = Tolerances::from_settings(settings);
    let n = matrix::validate(h)?;
    let mut doc = RealformReport {
        schema_version: SCHEMA_VERSION,
        command: "realform",
        verdict: Verdict::Inconclusive,
        n,
        u: None,
        r: None,
        imag_residual: None,
        factor_residual: None,
        cond_u: None,
        attempts: None,
        residuals: Residuals::new(),
        tolerances: t,
        seed: settings.seed,
        message: None,
    };
    let e = match spectral::eigensystem_with(h, &eigen_options(&t)) {
        Ok(e) => e,
        Err(err @ Error::NotDiagonalizable { .. }) => {
            doc.verdict = Verdict::NotDiagonalizable;
            doc.message = Some(err.to_string());
            return Ok(doc);
        }
        Err(err) => return Err(err),
    };
    let p = pairing::classify_spectrum(&e, t.tol);
    if !pairing::is_ph_spectrum(&p) {
        doc.verdict = if unmatched_in_gray_zone(&e, &p, &t) {
            Verdict::Inconclusive
        } else {
            Verdict::NotPseudoHermitian
        };
        doc.message = Some("not pseudo-Hermitian: no real form exists".into());
        return Ok(doc);
    }
    let omega = antilinear::build_omega_hat(&e, &p)?;
    let opts = RealFormOptions {
        tol: t.tol,
        seed: settings.seed,
        ..RealFormOptions::default()
    };
    let res = match realform::real_form(h, &omega, &opts) {
        Ok(res) => res,
        Err(err @ (Error::NotCommuting { .. } | Error::NotInvolutory { .. })) => {
            doc.message = Some(err.to_string());
            return Ok(doc);
        }
        Err(err) => return Err(err),
    };
    let h_scale = e.norm.max(1.0);
    let eig_r = spectral::eigenvalues(&res.r)?;
    let spectrum_gap = spectral::spectrum_distance(&eig_r, &e.eigenvalues);
    let r = &mut doc.residuals;
    r.insert(
        "factorization".into(),
        Residual::at_most(res.factor_residual, t.factor),
    );
    r.insert(
        "max_abs_imag_r".into(),
        Residual::at_most(res.max_abs_imag(), t.tol * res.cond_u.powi(2) * h_scale),
    );
    r.insert(
        "spectrum_agreement".into(),
        Residual::at_most(spectrum_gap, t.tol * e.cond_estimate.max(1.0) * h_scale),
    );
    doc.verdict = if all_passed(&doc.residuals) {
        Verdict::PseudoHermitian
    } else {
        Verdict::Inconclusive
    };
    doc.imag_residual = Some(res.imag_residual);
    doc.factor_residual = Some(res.factor_residual);
    doc.cond_u = Some(res.cond_u);
    doc.attempts = Some(res.attempts);
    doc.u = Some(matrix::to_pairs(&res.u));
    doc.r = Some(matrix::to_pairs(&res.r));
    Ok(doc)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundState {
    pub real_form: f64,
    pub h: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct MorseReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: MorseParams,
    pub grid: GridSpec,
    pub residuals: Residuals,
    /// Truncation-limited quantities with no pass/fail threshold.
    pub diagnostics: BTreeMap<String, f64>,
    pub lowest_eigenvalues_h: Vec<[f64; 2]>,
    pub lowest_eigenvalues_real_form: Vec<[f64; 2]>,
    pub bound_states: Vec<BoundState>,
    pub tolerances: Tolerances,
    pub seed: u64,
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn morse_report(
    params: &MorseParams,
    grid: &GridSpec,
    settings: &Settings,
) -> Result<MorseReport> {
    let t = Tolerances::from_settings(settings);
    let inter = morse::verify_morse_intertwining(params, grid)?;
    let form = morse::morse_real_form(params, grid)?;
    let cmp = morse::compare_spectra(params, grid, &form, 10)?;

    let mut residuals = Residuals::new();
    residuals.insert(
        "pointwise_shift".into(),
        Residual::at_most(inter.pointwise_residual, t.morse_pointwise),
    );
    residuals.insert(
        "pointwise_realness".into(),
        Residual::at_most(inter.realness_residual, t.morse_pointwise),
    );
    residuals.insert(
        "similarity_spectrum".into(),
        Residual::at_most(cmp.max_relative_deviation, t.morse_spectrum),
    );
    residuals.insert(
        "omega_involution".into(),
        Residual::at_most(form.omega_involution_residual, t.morse_involution),
    );
    residuals.insert(
        "s_conj_equals_inverse".into(),
        Residual::at_most(form.s_conj_inverse_residual, t.morse_involution),
    );
    residuals.insert(
        "factorization".into(),
        Residual::at_most(form.result.factor_residual, t.factor),
    );

    let diagnostics = BTreeMap::from([
        (
            "operator_shift_residual".to_string(),
            inter.operator_residual,
        ),
        ("real_form_vs_direct".to_string(), form.real_direct_residual),
        (
            "omega_commutation".to_string(),
            form.omega_commutation_residual,
        ),
        (
            "real_form_imag_residual".to_string(),
            form.result.imag_residual,
        ),
        ("cond_u".to_string(), form.result.cond_u),
        (
            "bound_state_deviation".to_string(),
            cmp.bound_state_deviation,
        ),
        ("h_norm".to_string(), cmp.h_norm),
    ]);

    Ok(MorseReport {
        schema_version: SCHEMA_VERSION,
        command: "morse",
        params: *params,
        grid: *grid,
        residuals,
        diagnostics,
        lowest_eigenvalues_h: cmp.h_lowest.iter().map(pair).collect(),
        lowest_eigenvalues_real_form: cmp.real_form_lowest.iter().map(pair).collect(),
        bound_states: cmp
            .bound_states_real
            .iter()
            .zip(&cmp.bound_states_h)
            .map(|(&r, h)| BoundState {
                real_form: r,
                h: pair(h),
            })
            .collect(),
        tolerances: t,
        seed: settings.seed,
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("report serializes") + "\n"
}
