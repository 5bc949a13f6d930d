//! Deterministic acceptance suite behind `phspec selftest`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::antilinear::{self, AntilinearOperator, ExactnessOutcome};
use crate::error::Result;
use crate::families;
use crate::io::SCHEMA_VERSION;
use crate::matrix::{self, ComplexMatrix};
use crate::morse::{self, GridSpec};
use crate::pairing;
use crate::pseudoherm;
use crate::realform;
use crate::report::{self, Settings, Tolerances, Verdict};
use crate::spectral;

pub const SUITE_SIZE: usize = 200;
pub const FAMILY_SIZE: usize = 100;
pub const PROBE_SAMPLES: usize = 100;
pub const MORSE_PARAMS: (f64, f64, f64) = (3.0, 4.0, 4.0);
pub const CONVERGENCE_SIZES: [usize; 3] = [128, 256, 512];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// `at_most` or `at_least`.
    pub kind: &'static str,
    pub threshold: f64,
    /// Largest value for `at_most`, smallest for `at_least`.
    pub worst: Option<f64>,
    pub cases: usize,
    pub failures: usize,
    pub first_error: Option<String>,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: &str, threshold: f64) -> Self {
        Self::new(name, "at_most", threshold)
    }

    pub fn at_least(name: &str, threshold: f64) -> Self {
        Self::new(name, "at_least", threshold)
    }

    fn new(name: &str, kind: &'static str, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            kind,
            threshold,
            worst: None,
            cases: 0,
            failures: 0,
            first_error: None,
            passed: true,
        }
    }

    pub fn record(&mut self, value: f64) {
        self.cases += 1;
        let upper = self.kind == "at_most";
        let ok = if upper {
            value <= self.threshold
        } else {
            value >= self.threshold
        };
        if !ok {
            self.failures += 1;
            self.passed = false;
        }
        self.worst = Some(match self.worst {
            None => value,
            Some(w) if upper => w.max(value),
            Some(w) => w.min(value),
        });
    }

    pub fn record_error(&mut self, err: impl ToString) {
        self.cases += 1;
        self.failures += 1;
        self.passed = false;
        self.first_error.get_or_insert_with(|| err.to_string());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Informational measurements.
    pub data: BTreeMap<String, f64>,
}

impl CriterionReport {
    fn new(id: u32, title: &'static str, checks: Vec<Check>) -> Self {
        Self::with_data(id, title, checks, BTreeMap::new())
    }

    fn with_data(
        id: u32,
        title: &'static str,
        checks: Vec<Check>,
        data: BTreeMap<String, f64>,
    ) -> Self {
        Self {
            id,
            title,
            passed: checks.iter().all(|c| c.passed),
            checks,
            data,
        }
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let failing: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                format!(
                    "{} (worst {:.3e}, threshold {:.3e})",
                    c.name,
                    c.worst.unwrap_or(f64::NAN),
                    c.threshold
                )
            })
            .collect();
        if failing.is_empty() {
            format!("criterion {}: {status} {}", self.id, self.title)
        } else {
            format!(
                "criterion {}: {status} {} [{}]",
                self.id,
                self.title,
                failing.join("; ")
            )
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Scale applied to every fixed threshold.
fn scale(s: &Settings) -> f64 {
    if s.strict {
        0.5
    } else {
        1.0
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = families::rng(seed);
    rng.set_stream(id);
    rng
}

/// Random H = M·D·M⁻¹ with n ∈ 2..=10, real eigenvalues and conjugate pairs
/// (some doubly degenerate) and cond(M) ≤ 1e3.
pub fn constructive_suite(seed: u64) -> Vec<ComplexMatrix> {
    let mut rng = stream(seed, 1);
    (0..SUITE_SIZE)
        .map(|i| {
            let n = rng.random_range(2..=10);
            let d = families::paired_spectrum(n, i % 2 == 0, &mut rng);
            let m = families::random_invertible(n, 1e3, &mut rng);
            families::similar(&d, &m)
        })
        .collect()
}

/// U·R·U⁻¹ with R real diagonalizable and U a complex similarity.
fn real_form_family(rng: &mut ChaCha8Rng) -> Vec<ComplexMatrix> {
    (0..FAMILY_SIZE)
        .map(|_| {
            let n = rng.random_range(2..=8);
            let r = families::to_complex(&families::real_diagonalizable(n, rng));
            let u = families::random_invertible(n, 1e2, rng);
            &u * r * matrix::inverse(&u).expect("bounded condition")
        })
        .collect()
}

pub fn criterion_1(suite: &[ComplexMatrix], s: &Settings) -> CriterionReport {
    let f = scale(s);
    let mut herm = Check::at_most("eta_hermiticity_residual", 1e-12 * f);
    let mut inter = Check::at_most("eta_intertwining_residual", 1e-8 * f);
    for h in suite {
        match pseudoherm::check_weak_pseudo_hermiticity(h, s.tol * f) {
            Ok(v) => match v.certificate {
                Some(cert) => {
                    herm.record(cert.hermiticity_residual);
                    inter.record(cert.intertwining_residual);
                }
                None => {
                    herm.record_error("spectrum not classified as paired");
                    inter.record_error("spectrum not classified as paired");
                }
            },
            Err(e) => {
                herm.record_error(&e);
                inter.record_error(&e);
            }
        }
    }
    CriterionReport::new(
        1,
        "constructive intertwiner on paired spectra",
        vec![herm, inter],
    )
}

pub fn criterion_2(s: &Settings) -> CriterionReport {
    let f = scale(s);
    let mut rng = stream(s.seed, 2);
    let mut classified = Check::at_most("classified_paired", 0.0);
    let mut probe = Check::at_least("falsification_probe_min_residual", 1e-3 / f);
    for _ in 0..FAMILY_SIZE {
        let n = rng.random_range(2..=10);
        let d = families::unpaired_spectrum(n, &mut rng);
        let m = families::random_invertible(n, 1e3, &mut rng);
        let h = families::similar(&d, &m);
        match spectral::eigensystem(&h, s.tol * f) {
            Ok(e) => {
                let p = pairing::classify_spectrum(&e, s.tol * f);
                classified.record(if pairing::is_ph_spectrum(&p) {
                    1.0
                } else {
                    0.0
                });
            }
            Err(e) => classified.record_error(e),
        }
        probe.record(pseudoherm::falsification_probe(&h, PROBE_SAMPLES, &mut rng));
    }
    CriterionReport::new(2, "unpaired spectra are rejected", vec![classified, probe])
}

pub fn criterion_3(suite: &[ComplexMatrix], s: &Settings) -> CriterionReport {
    let f = scale(s);
    let tol = s.tol * f;
    let mut involution = Check::at_most("omega_involution_residual", 1e-10 * f);
    let mut commutation = Check::at_most("omega_commutation_residual", 1e-8 * f);
    for h in suite {
        let omega = spectral::eigensystem(h, tol).and_then(|e| {
            let p = pairing::classify_spectrum(&e, tol);
            antilinear::build_omega_hat(&e, &p)
        });
        match omega {
            Ok(o) => {
                involution.record(antilinear::is_involutory(&o));
                commutation.record(antilinear::antilinear_commutes(h, &o));
            }
            Err(e) => {
                involution.record_error(&e);
                commutation.record_error(&e);
            }
        }
    }
    let mut rng = stream(s.seed, 3);
    let mut prescribed = Check::at_most("prescribed_symmetry_commutation", 1e-8 * f);
    let mut verdicts = Check::at_most("not_certified_pseudo_hermitian", 0.0);
    for _ in 0..FAMILY_SIZE {
        let n = rng.random_range(2..=8);
        let r = families::to_complex(&families::real_diagonalizable(n, &mut rng));
        let u = families::random_invertible(n, 1e2, &mut rng);
        let u_inv = matrix::inverse(&u).expect("bounded condition");
        let h = &u * r * &u_inv;
        match AntilinearOperator::new(&u * matrix::conj(&u_inv)) {
            Ok(a) => prescribed.record(antilinear::antilinear_commutes(&h, &a)),
            Err(e) => prescribed.record_error(e),
        }
        match report::analyze(&h, &Settings { tol: s.tol, ..*s }) {
            Ok(doc) => verdicts.record(if doc.verdict == Verdict::PseudoHermitian {
                0.0
            } else {
                1.0
            }),
            Err(e) => verdicts.record_error(e),
        }
    }
    CriterionReport::new(
        3,
        "canonical antilinear symmetry and its converse",
        vec![involution, commutation, prescribed, verdicts],
    )
}

/// Paired-spectrum H with ‖H‖₂ = 1 whose non-real eigenvalues keep |Im| ≥ 0.1.
fn normalized_complex_pair(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    loop {
        let n = rng.random_range(2..=10);
        let d = families::complex_pair_spectrum(n, rng);
        let m = families::random_invertible(n, 1e2, rng);
        let h = families::similar(&d, &m);
        let norm = matrix::norm2(&h);
        let min_imag = d
            .iter()
            .filter(|z| z.im != 0.0)
            .map(|z| z.im.abs())
            .fold(f64::INFINITY, f64::min);
        if min_imag / norm >= 0.1 {
            return h * Complex64::new(1.0 / norm, 0.0);
        }
    }
}

pub fn criterion_4(s: &Settings) -> CriterionReport {
    let f = scale(s);
    let tol = s.tol * f;
    let separation = antilinear::SEPARATION_FACTOR * tol;
    let mut rng = stream(s.seed, 4);
    let mut real = Check::at_most("real_spectrum_commutation_residual", 1e-8 * f);
    let mut complex = Check::at_least("complex_pair_commutation_residual", 1e-3 / f);
    let mut inconclusive = Check::at_most("inconclusive_verdicts", 0.0);
    let mut wrong = Check::at_most("wrong_outcomes", 0.0);
    let mut run = |h: &ComplexMatrix, expected: ExactnessOutcome, check: &mut Check| {
        match spectral::eigensystem(h, tol) {
            Ok(e) => {
                let v = antilinear::exactness_from(&e, tol, separation);
                check.record(v.commutation_residual);
                inconclusive.record(if v.outcome == ExactnessOutcome::Inconclusive {
                    1.0
                } else {
                    0.0
                });
                wrong.record(
                    if v.outcome == expected || v.outcome == ExactnessOutcome::Inconclusive {
                        0.0
                    } else {
                        1.0
                    },
                );
            }
            Err(e) => check.record_error(e),
        }
    };
    for _ in 0..FAMILY_SIZE {
        let n = rng.random_range(2..=10);
        let d = families::real_spectrum(n, &mut rng);
        let m = families::random_invertible(n, 1e2, &mut rng);
        run(
            &families::similar(&d, &m),
            ExactnessOutcome::Exact,
            &mut real,
        );
    }
    for _ in 0..FAMILY_SIZE {
        let h = normalized_complex_pair(&mut rng);
        run(&h, ExactnessOutcome::Broken, &mut complex);
    }
    CriterionReport::new(
        4,
        "exact symmetry iff real spectrum",
        vec![real, complex, inconclusive, wrong],
    )
}

struct RealFormChecks {
    factor: Check,
    imag: Check,
    spectrum: Check,
}

impl RealFormChecks {
    fn new(prefix: &str, f: f64) -> Self {
        Self {
            factor: Check::at_most(&format!("{prefix}factor_residual"), 1e-10 * f),
            imag: Check::at_most(
                &format!("{prefix}max_abs_imag_r_over_cond_u_squared"),
                1e-6 * f,
            ),
            spectrum: Check::at_most(&format!("{prefix}spectrum_agreement"), 1e-8 * f),
        }
    }

    fn run(&mut self, h: &ComplexMatrix, tol: f64, seed: u64) {
        let out = realform::realform_pipeline(h, tol, seed).and_then(|res| {
            let eig_h = spectral::eigenvalues(h)?;
            let eig_r = spectral::eigenvalues(&res.r)?;
            let scale = eig_h.iter().map(|z| z.norm()).fold(1.0, f64::max);
            Ok((res, spectral::spectrum_distance(&eig_r, &eig_h) / scale))
        });
        match out {
            Ok((res, gap)) => {
                self.factor.record(res.factor_residual);
                self.imag.record(res.max_abs_imag() / res.cond_u.powi(2));
                self.spectrum.record(gap);
            }
            Err(e) => {
                self.factor.record_error(&e);
                self.imag.record_error(&e);
                self.spectrum.record_error(&e);
            }
        }
    }

    fn into_checks(self) -> [Check; 3] {
        [self.factor, self.imag, self.spectrum]
    }
}

pub fn criterion_5(suite: &[ComplexMatrix], s: &Settings) -> CriterionReport {
    let f = scale(s);
    let tol = s.tol * f;
    let mut forward = RealFormChecks::new("", f);
    for h in suite {
        forward.run(h, tol, s.seed);
    }
    let mut rng = stream(s.seed, 5);
    let mut reverse = RealFormChecks::new("reverse_", f);
    for h in real_form_family(&mut rng) {
        reverse.run(&h, tol, s.seed);
    }
    let mut checks = Vec::from(forward.into_checks());
    checks.extend(reverse.into_checks());
    CriterionReport::new(5, "real form by similarity", checks)
}

pub fn criterion_6(s: &Settings) -> Result<CriterionReport> {
    let f = scale(s);
    let (a, b, c) = MORSE_PARAMS;
    let params = morse::morse_params(a, b, c)?;
    let grid = GridSpec::new(morse::DEFAULT_N, morse::DEFAULT_X_MIN, morse::DEFAULT_X_MAX)?;
    let inter = morse::verify_morse_intertwining(&params, &grid)?;
    let form = morse::morse_real_form(&params, &grid)?;
    let cmp = morse::compare_spectra(&params, &grid, &form, 10)?;

    let mut checks = Vec::new();
    let mut single = |name: &str, value: f64, threshold: f64| {
        let mut c = Check::at_most(name, threshold);
        c.record(value);
        checks.push(c);
    };
    single(
        "pointwise_shift_residual",
        inter.pointwise_residual,
        1e-12 * f,
    );
    single(
        "pointwise_realness_residual",
        inter.realness_residual,
        1e-12 * f,
    );
    single(
        "similarity_spectrum_deviation",
        cmp.max_relative_deviation,
        1e-8 * f,
    );
    single(
        "omega_involution_residual",
        form.omega_involution_residual,
        1e-10 * f,
    );

    let mut data = BTreeMap::new();
    let mut decrease = Check::at_most("operator_residual_growth_ratio", 1.0);
    let mut previous: Option<f64> = None;
    for n in CONVERGENCE_SIZES {
        let g = GridSpec::new(n, morse::DEFAULT_X_MIN, morse::DEFAULT_X_MAX)?;
        match morse::verify_morse_intertwining(&params, &g) {
            Ok(r) => {
                data.insert(format!("operator_residual_n{n}"), r.operator_residual);
                if let Some(p) = previous {
                    decrease.record(r.operator_residual / p);
                }
                previous = Some(r.operator_residual);
            }
            Err(e) => decrease.record_error(e),
        }
    }
    checks.push(decrease);
    data.insert(
        "omega_commutation_residual".into(),
        form.omega_commutation_residual,
    );
    data.insert("cond_u".into(), form.result.cond_u);
    Ok(CriterionReport::with_data(
        6,
        "complex Morse Hamiltonian",
        checks,
        data,
    ))
}

/// Criteria 1 through 6.
pub fn run_criteria(s: &Settings) -> Result<Vec<CriterionReport>> {
    let suite = constructive_suite(s.seed);
    Ok(vec![
        criterion_1(&suite, s),
        criterion_2(s),
        criterion_3(&suite, s),
        criterion_4(s),
        criterion_5(&suite, s),
        criterion_6(s)?,
    ])
}

/// Runs criteria 1 to 6 twice and adds the byte-level determinism check as
/// criterion 7.
pub fn run_selftest(s: &Settings) -> Result<SelftestReport> {
    let first = run_criteria(s)?;
    let second = run_criteria(s)?;
    let a = serde_json::to_string(&first).expect("criteria serialize");
    let b = serde_json::to_string(&second).expect("criteria serialize");
    let mut identical = Check::at_most("differing_bytes", 0.0);
    let differing =
        a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
    identical.record(differing as f64);
    let mut criteria = first;
    criteria.push(CriterionReport::new(
        7,
        "deterministic report",
        vec![identical],
    ));
    Ok(SelftestReport {
        schema_version: SCHEMA_VERSION,
        command: "selftest",
        seed: s.seed,
        tolerances: Tolerances::from_settings(s),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_tracks_worst_value() {
        let mut c = Check::at_most("x", 1.0);
        c.record(0.5);
        c.record(2.0);
        c.record(0.1);
        assert_eq!(c.worst, Some(2.0));
        assert_eq!(c.failures, 1);
        assert!(!c.passed);
        let mut c = Check::at_least("y", 1.0);
        c.record(3.0);
        c.record(1.5);
        assert_eq!(c.worst, Some(1.5));
        assert!(c.passed);
    }

    #[test]
    fn suite_is_seeded() {
        assert_eq!(constructive_suite(3)[..5], constructive_suite(3)[..5]);
        assert_ne!(constructive_suite(3)[0], constructive_suite(4)[0]);
    }
}
