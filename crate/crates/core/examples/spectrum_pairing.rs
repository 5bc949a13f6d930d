// Classifying spectra into real eigenvalues and complex-conjugate pairs, and
// the swap operator T that exchanges paired eigenvectors.
//
// cargo run --example spectrum_pairing

use num_complex::Complex64;
use phspec::matrix::{self, ComplexMatrix};
use phspec::{families, pairing, spectral};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn show(label: &str, h: &ComplexMatrix) -> phspec::Result<()> {
    let e = spectral::eigensystem(h, spectral::DEFAULT_TOL)?;
    let p = pairing::classify_spectrum(&e, spectral::DEFAULT_TOL);
    println!("{label}: paired = {}", pairing::is_ph_spectrum(&p));
    for cl in 0..e.clusters.len() {
        let z = e.cluster_value(cl);
        let (tag, partner) = p.tag(cl);
        println!(
            "  cluster {cl} ({:+.4} {:+.4}i) x{}  {tag:?}{}",
            z.re,
            z.im,
            e.clusters[cl].len(),
            partner.map(|q| format!(" <-> {q}")).unwrap_or_default()
        );
    }
    if pairing::is_ph_spectrum(&p) {
        let t = pairing::build_t(&e, &p)?;
        let n = h.nrows();
        let t_sq = matrix::norm(&(&t * &t - matrix::identity(n)));
        let swapped =
            matrix::norm(&(&t * h * &t - spectral::conjugated_spectrum(&e))) / matrix::norm(h);
        println!("  |T^2 - I| = {t_sq:.3e}, |THT - sum E* psi phi| / |H| = {swapped:.3e}");
    }
    Ok(())
}

pub fn run_example() -> phspec::Result<()> {
    let mut rng = families::rng(7);
    let m = families::random_invertible(6, 1e2, &mut rng);
    let degenerate = [
        c(1.0, 0.5),
        c(1.0, 0.5),
        c(1.0, -0.5),
        c(1.0, -0.5),
        c(-2.0, 0.0),
        c(0.5, 0.0),
    ];
    show("degenerate pairs", &families::similar(&degenerate, &m))?;

    let orphan = [c(1.0, 0.5), c(1.0, -0.5), c(0.0, 1.0)];
    let m3 = families::random_invertible(3, 1e2, &mut rng);
    show("orphan", &families::similar(&orphan, &m3))?;

    let unequal = [c(0.0, 1.0), c(0.0, 1.0), c(0.0, -1.0)];
    show("unequal multiplicities", &families::similar(&unequal, &m3))?;
    Ok(())
}

fn main() -> phspec::Result<()> {
    run_example()
}
