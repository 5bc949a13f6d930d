// Hermitian intertwiners η with ηH = H†η: the constructive certificate for
// paired spectra, the positive-definite one for real spectra, and the
// random-candidate probe for spectra without conjugate partners.
//
// cargo run --example intertwiner

use num_complex::Complex64;
use phspec::{families, pairing, pseudoherm, spectral};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run_example() -> phspec::Result<()> {
    let mut rng = families::rng(11);
    let tol = spectral::DEFAULT_TOL;

    let d = [c(0.5, 1.0), c(0.5, -1.0), c(2.0, 0.0), c(-1.0, 0.0)];
    let h = families::similar(&d, &families::random_invertible(4, 1e2, &mut rng));
    let verdict = pseudoherm::check_weak_pseudo_hermiticity(&h, tol)?;
    println!(
        "paired spectrum: pseudo-Hermitian = {}",
        verdict.pseudo_hermitian
    );
    if let Some(cert) = &verdict.certificate {
        println!(
            "  |eta - eta^dag| / |eta|          = {:.3e}",
            cert.hermiticity_residual
        );
        println!(
            "  |eta H - H^dag eta| / (|eta||H|)  = {:.3e}",
            cert.intertwining_residual
        );
        println!(
            "  cond(eta)                         = {:.3e}",
            cert.invertibility_cond
        );
    }

    let real = [c(1.0, 0.0), c(-0.5, 0.0), c(3.0, 0.0)];
    let h = families::similar(&real, &families::random_invertible(3, 1e2, &mut rng));
    let e = spectral::eigensystem(&h, tol)?;
    let p = pairing::classify_spectrum(&e, tol);
    let cert = pseudoherm::real_spectrum_eta(&e, &p)?;
    println!("real spectrum: eta = (O O^dag)^-1");
    println!(
        "  product-form residual = {:.3e}",
        cert.product_form_residual
    );
    println!("  positive definite     = {:?}", cert.positive_definite);

    let orphan = [c(0.0, 1.0), c(0.0, 2.0)];
    let h = families::similar(&orphan, &families::random_invertible(2, 1e2, &mut rng));
    let probe = pseudoherm::falsification_probe(&h, 100, &mut rng);
    println!("unpaired spectrum: smallest residual over 100 random eta = {probe:.3e}");

    let diag = phspec::matrix::diag(&orphan);
    let eta = phspec::matrix::identity(2);
    println!(
        "diag(i, 2i) with eta = I: residual {:.3}",
        pseudoherm::verify_intertwining(&diag, &eta)?
    );
    Ok(())
}

fn main() -> phspec::Result<()> {
    run_example()
}
