use num_complex::Complex64;
use phspec::antilinear;
use phspec::matrix::{self, ComplexMatrix};
use phspec::report::{self, Settings};
use phspec::{families, pairing, pseudoherm, realform, spectral};
use proptest::prelude::*;

const TOL: f64 = spectral::DEFAULT_TOL;

fn paired(seed: u64, n: usize, degenerate: bool) -> ComplexMatrix {
    let mut rng = families::rng(seed);
    let d = families::paired_spectrum(n, degenerate, &mut rng);
    let m = families::random_invertible(n, 1e3, &mut rng);
    families::similar(&d, &m)
}

fn unpaired(seed: u64, n: usize) -> ComplexMatrix {
    let mut rng = families::rng(seed);
    let d = families::unpaired_spectrum(n, &mut rng);
    let m = families::random_invertible(n, 1e3, &mut rng);
    families::similar(&d, &m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn biorthonormality_scales_with_condition(seed in any::<u64>(), n in 2usize..=9, deg in any::<bool>()) {
        let h = paired(seed, n, deg);
        let e = spectral::eigensystem(&h, TOL).unwrap();
        let (gram, completeness) = spectral::verify_biorthonormality(&e);
        prop_assert!(gram <= 1e-8 * e.cond_estimate);
        prop_assert!(completeness <= 1e-8 * e.cond_estimate);
        let recon = matrix::norm(&(spectral::reconstruct(&e) - &h)) / matrix::norm(&h);
        prop_assert!(recon <= 1e-8 * e.cond_estimate);
    }

    #[test]
    fn spectrum_is_similarity_invariant(seed in any::<u64>(), n in 2usize..=8) {
        let h = paired(seed, n, false);
        let mut rng = families::rng(seed ^ 0xa5a5);
        let p = families::random_invertible(n, 1e2, &mut rng);
        let g = &p * &h * matrix::inverse(&p).unwrap();
        let a = spectral::eigenvalues(&h).unwrap();
        let b = spectral::eigenvalues(&g).unwrap();
        prop_assert!(spectral::spectrum_distance(&a, &b) <= 1e-6);
    }

    #[test]
    fn swap_operator_is_an_involution(seed in any::<u64>(), n in 2usize..=9, deg in any::<bool>()) {
        let h = paired(seed, n, deg);
        let e = spectral::eigensystem(&h, TOL).unwrap();
        let p = pairing::classify_spectrum(&e, TOL);
        prop_assert!(pairing::is_ph_spectrum(&p));
        let t = pairing::build_t(&e, &p).unwrap();
        let scale = e.cond_estimate.max(1.0);
        prop_assert!(matrix::norm(&(&t * &t - matrix::identity(n))) <= 1e-8 * scale);
        let swapped = &t * &h * &t - spectral::conjugated_spectrum(&e);
        prop_assert!(matrix::norm(&swapped) / matrix::norm(&h) <= 1e-8 * scale);
    }

    #[test]
    fn eta_is_hermitian_and_intertwines(seed in any::<u64>(), n in 2usize..=9, deg in any::<bool>()) {
        let v = pseudoherm::check_weak_pseudo_hermiticity(&paired(seed, n, deg), TOL).unwrap();
        let cert = v.certificate.unwrap();
        prop_assert!(cert.hermiticity_residual <= 1e-12);
        prop_assert!(cert.intertwining_residual <= 1e-8);
    }

    #[test]
    fn eta_forms_agree_on_real_spectra(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = families::rng(seed);
        let d = families::real_spectrum(n, &mut rng);
        let h = families::similar(&d, &families::random_invertible(n, 1e2, &mut rng));
        let e = spectral::eigensystem(&h, TOL).unwrap();
        let p = pairing::classify_spectrum(&e, TOL);
        let general = pseudoherm::build_eta(&e, &p).unwrap();
        let positive = pseudoherm::real_spectrum_eta(&e, &p).unwrap();
        let gap = matrix::norm(&(&general.eta - &positive.eta)) / matrix::norm(&positive.eta);
        prop_assert!(gap <= 1e-8);
        prop_assert_eq!(positive.positive_definite, Some(true));
    }

    #[test]
    fn canonical_symmetry_commutes_and_squares_to_one(seed in any::<u64>(), n in 2usize..=9, deg in any::<bool>()) {
        let h = paired(seed, n, deg);
        let e = spectral::eigensystem(&h, TOL).unwrap();
        let p = pairing::classify_spectrum(&e, TOL);
        let omega = antilinear::build_omega_hat(&e, &p).unwrap();
        prop_assert!(antilinear::is_involutory(&omega) <= 1e-10);
        prop_assert!(antilinear::antilinear_commutes(&h, &omega) <= 1e-8);
    }

    #[test]
    fn real_form_exists_iff_spectrum_is_paired(seed in any::<u64>(), n in 2usize..=8, ph in any::<bool>()) {
        let h = if ph { paired(seed, n, false) } else { unpaired(seed, n) };
        let e = spectral::eigensystem(&h, TOL).unwrap();
        let paired_spectrum = pairing::is_ph_spectrum(&pairing::classify_spectrum(&e, TOL));
        let res = realform::realform_pipeline(&h, TOL, seed);
        prop_assert_eq!(paired_spectrum, ph);
        prop_assert_eq!(res.is_ok(), ph);
        if let Ok(r) = res {
            prop_assert!(r.factor_residual <= 1e-10);
            prop_assert!(matrix::max_abs_imag(&r.r) <= 1e-6 * r.cond_u * r.cond_u);
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), n in 2usize..=6) {
        let h = paired(seed, n, true);
        let s = Settings { seed, ..Settings::default() };
        let a = report::to_json(&report::realform_report(&h, &s).unwrap());
        let b = report::to_json(&report::realform_report(&h, &s).unwrap());
        prop_assert_eq!(a, b);
        let a = report::to_json(&report::analyze(&h, &s).unwrap());
        let b = report::to_json(&report::analyze(&h, &s).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exact_symmetry_iff_real_spectrum(seed in any::<u64>(), n in 2usize..=8, real in any::<bool>()) {
        let mut rng = families::rng(seed);
        let d = if real { families::real_spectrum(n, &mut rng) } else { families::complex_pair_spectrum(n, &mut rng) };
        let h = families::similar(&d, &families::random_invertible(n, 1e2, &mut rng));
        let v = antilinear::exactness_test(&h, TOL).unwrap();
        let expected = if real { antilinear::ExactnessOutcome::Exact } else { antilinear::ExactnessOutcome::Broken };
        prop_assert_eq!(v.outcome, expected);
    }
}

#[test]
fn antilinear_composition_rule() {
    let mut rng = families::rng(3);
    let s1 = families::complex_gaussian(3, 3, &mut rng);
    let s2 = families::complex_gaussian(3, 3, &mut rng);
    let a = antilinear::AntilinearOperator::new(s1.clone()).unwrap();
    let b = antilinear::AntilinearOperator::new(s2.clone()).unwrap();
    let v = nalgebra::DVector::from_fn(3, |i, _| Complex64::new(i as f64, 1.0 - i as f64));
    let twice = a.apply(&b.apply(&v));
    let composed = a.compose(&b) * &v;
    assert!((twice - composed).norm() <= 1e-12);
}
