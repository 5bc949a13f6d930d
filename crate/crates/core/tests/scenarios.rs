use num_complex::Complex64;
use phspec::antilinear::{self, AntilinearOperator};
use phspec::matrix::{self, ComplexMatrix};
use phspec::realform::{self, RealFormOptions};
use phspec::{families, pairing, pseudoherm, spectral, Error};

const TOL: f64 = spectral::DEFAULT_TOL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn round_trip() -> (ComplexMatrix, Vec<Complex64>) {
    let mut rng = families::rng(2024);
    let m = families::random_invertible(3, 1e2, &mut rng);
    let d = vec![c(1.0, 2.0), c(1.0, -2.0), c(3.0, 0.0)];
    (families::similar(&d, &m), d)
}

#[test]
fn round_trip_recovers_spectrum_and_basis() {
    let (h, mut d) = round_trip();
    let e = spectral::eigensystem(&h, TOL).unwrap();
    spectral::sort_lexicographic(&mut d);
    for (got, want) in e.eigenvalues.iter().zip(&d) {
        assert!((got - want).norm() <= 1e-10, "{got} vs {want}");
    }
    let (gram, completeness) = spectral::verify_biorthonormality(&e);
    assert!(gram <= 1e-10 && completeness <= 1e-10);
    let recon = matrix::norm(&(spectral::reconstruct(&e) - &h)) / matrix::norm(&h);
    assert!(recon <= 1e-10);
    let o = spectral::build_o(&e);
    let diagonalized = matrix::inverse(&o).unwrap() * &h * &o;
    assert!(matrix::norm(&(diagonalized - matrix::diag(&e.eigenvalues))) <= 1e-10);
}

#[test]
fn round_trip_swap_and_conjugation_identities() {
    let (h, _) = round_trip();
    let e = spectral::eigensystem(&h, TOL).unwrap();
    let p = pairing::classify_spectrum(&e, TOL);
    assert_eq!(p.real.len(), 1);
    assert_eq!(p.pairs.len(), 1);
    let t = pairing::build_t(&e, &p).unwrap();
    let target = spectral::conjugated_spectrum(&e);
    assert!(matrix::norm(&(&t * &h * &t - &target)) <= 1e-10);

    let theta = antilinear::build_conjugation(&e);
    let s = theta.linear_part();
    let conj_h = s * matrix::conj(&h) * matrix::inverse(s).unwrap();
    assert!(matrix::norm(&(conj_h - &target)) <= 1e-10);

    let omega = antilinear::build_omega_hat(&e, &p).unwrap();
    assert!(antilinear::is_involutory(&omega) <= 1e-10);
    assert!(antilinear::antilinear_commutes(&h, &omega) <= 1e-10);
}

#[test]
fn round_trip_intertwiner_and_real_form() {
    let (h, d) = round_trip();
    let v = pseudoherm::check_weak_pseudo_hermiticity(&h, TOL).unwrap();
    let cert = v.certificate.expect("paired spectrum");
    assert!(cert.intertwining_residual <= 1e-9);
    assert!(cert.hermiticity_residual <= 1e-12);

    let res = realform::realform_pipeline(&h, TOL, 0).unwrap();
    assert!(matrix::max_abs_imag(&res.r) <= 1e-9 * matrix::norm(&res.r).max(1.0));
    let eig_r = spectral::eigenvalues(&res.r).unwrap();
    assert!(spectral::spectrum_distance(&eig_r, &d) <= 1e-9);
}

#[test]
fn constructed_gain_loss_instance_is_certified() {
    let mut rng = families::rng(9);
    let m = families::random_invertible(3, 1e2, &mut rng);
    let h = families::similar(&[c(0.0, 1.0), c(0.0, -1.0), c(4.0, 0.0)], &m);
    let v = pseudoherm::check_weak_pseudo_hermiticity(&h, TOL).unwrap();
    assert!(v.pseudo_hermitian);
    let cert = v.certificate.unwrap();
    assert!(cert.intertwining_residual <= 1e-9);
    assert!(cert.hermiticity_residual <= 1e-9);
}

#[test]
fn hermitian_eta_is_inverse_gram_of_eigenvectors() {
    let mut rng = families::rng(5);
    let a = families::complex_gaussian(5, 5, &mut rng);
    let h = (&a + a.adjoint()) * c(0.5, 0.0);
    let v = pseudoherm::check_weak_pseudo_hermiticity(&h, TOL).unwrap();
    assert!(v.pseudo_hermitian);
    let eta = v.certificate.unwrap().eta;
    let vv = &v.eigensystem.right * v.eigensystem.right.adjoint();
    let expected = matrix::inverse(&vv).unwrap();
    assert!(matrix::norm(&(eta - expected)) <= 1e-10);
}

#[test]
fn upper_triangular_similarity_gives_closed_form_eta() {
    let m = matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
    let h = families::similar(&[c(1.0, 0.0), c(2.0, 0.0)], &m);
    let e = spectral::eigensystem(&h, TOL).unwrap();
    let p = pairing::classify_spectrum(&e, TOL);
    let cert = pseudoherm::real_spectrum_eta(&e, &p).unwrap();
    let eta = &cert.eta;
    let lhs = eta * &h * matrix::inverse(eta).unwrap();
    assert!(matrix::norm(&(lhs - h.adjoint())) <= 1e-12);
    assert_eq!(cert.positive_definite, Some(true));
    assert!(pseudoherm::verify_intertwining(&h, eta).unwrap() <= 1e-12);
}

#[test]
fn hermitian_real_form_is_real() {
    let mut rng = families::rng(13);
    let a = families::complex_gaussian(5, 5, &mut rng);
    let h = (&a + a.adjoint()) * c(0.5, 0.0);
    let res = realform::realform_pipeline(&h, TOL, 0).unwrap();
    assert!(res.imag_residual <= 1e-10);
}

#[test]
fn real_form_of_conjugated_real_matrix_has_same_spectrum() {
    let mut rng = families::rng(21);
    let r = families::to_complex(&families::real_diagonalizable(6, &mut rng));
    let m = families::random_invertible(6, 1e2, &mut rng);
    let h = &m * &r * matrix::inverse(&m).unwrap();
    let res = realform::realform_pipeline(&h, TOL, 4).unwrap();
    let eig_r = spectral::eigenvalues(&r).unwrap();
    let eig_found = spectral::eigenvalues(&res.r).unwrap();
    assert!(spectral::spectrum_distance(&eig_r, &eig_found) <= 1e-8);
    assert!(res.imag_residual <= 1e-8);
}

#[test]
fn prescribed_antilinear_symmetry_admits_real_form() {
    let mut rng = families::rng(8);
    let r = families::to_complex(&families::real_diagonalizable(4, &mut rng));
    let u = families::random_invertible(4, 1e2, &mut rng);
    let u_inv = matrix::inverse(&u).unwrap();
    let h = &u * r * &u_inv;
    let a = AntilinearOperator::new(&u * matrix::conj(&u_inv)).unwrap();
    assert!(antilinear::is_involutory(&a) <= 1e-12);
    let res = realform::real_form(&h, &a, &RealFormOptions::default()).unwrap();
    assert!(res.imag_residual <= 1e-10);
    assert!(res.factor_residual <= 1e-10);
}

#[test]
fn errors_surface_as_typed_variants() {
    let rect = ComplexMatrix::zeros(2, 3);
    assert!(matches!(
        spectral::eigensystem(&rect, TOL),
        Err(Error::NotSquare { .. })
    ));
    let mut nan = matrix::identity(2);
    nan[(0, 1)] = c(f64::NAN, 0.0);
    assert!(matches!(
        spectral::eigensystem(&nan, TOL),
        Err(Error::NonFinite { .. })
    ));
    let orphan = matrix::diag(&[c(0.0, 1.0), c(0.0, 2.0)]);
    assert!(matches!(
        realform::realform_pipeline(&orphan, TOL, 0),
        Err(Error::SpectrumNotPaired { .. })
    ));
    let e = spectral::eigensystem(&matrix::diag(&[c(0.0, 1.0), c(0.0, -1.0)]), TOL).unwrap();
    let p = pairing::classify_spectrum(&e, TOL);
    assert!(matches!(
        pseudoherm::real_spectrum_eta(&e, &p),
        Err(Error::SpectrumNotReal { .. })
    ));
}
