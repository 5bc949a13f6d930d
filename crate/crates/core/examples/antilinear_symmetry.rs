// Antilinear operators A = SK: the eigenbasis conjugation Θ_E, the canonical
// symmetry Ω̂ = Θ_E T, and the test separating exact from broken symmetry.
//
// cargo run --example antilinear_symmetry

use num_complex::Complex64;
use phspec::antilinear::{self, ExactnessOutcome};
use phspec::{families, pairing, spectral};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run_example() -> phspec::Result<()> {
    let mut rng = families::rng(5);
    let tol = spectral::DEFAULT_TOL;
    let m = families::random_invertible(4, 1e2, &mut rng);

    let h = families::similar(&[c(1.0, 0.7), c(1.0, -0.7), c(-1.0, 0.0), c(2.0, 0.0)], &m);
    let e = spectral::eigensystem(&h, tol)?;
    let p = pairing::classify_spectrum(&e, tol);
    let theta = antilinear::build_conjugation(&e);
    let omega = antilinear::build_omega_hat(&e, &p)?;
    println!(
        "Theta_E: involution {:.3e}, Theta_E psi_n = psi_n residual {:.3e}",
        antilinear::is_involutory(&theta),
        antilinear::conjugation_identity_residual(&e, &theta)
    );
    println!(
        "Theta_E commutation with H: {:.3e} (complex pair present)",
        antilinear::antilinear_commutes(&h, &theta)
    );
    println!(
        "Omega:   involution {:.3e}, commutation {:.3e}",
        antilinear::is_involutory(&omega),
        antilinear::antilinear_commutes(&h, &omega)
    );

    for (label, spectrum) in [
        (
            "real spectrum",
            [c(1.0, 0.0), c(-0.5, 0.0), c(2.0, 0.0), c(0.3, 0.0)],
        ),
        (
            "complex pair",
            [c(1.0, 0.7), c(1.0, -0.7), c(-1.0, 0.0), c(2.0, 0.0)],
        ),
    ] {
        let h = families::similar(&spectrum, &m);
        let v = antilinear::exactness_test(&h, tol)?;
        let word = match v.outcome {
            ExactnessOutcome::Exact => "exact",
            ExactnessOutcome::Broken => "broken",
            ExactnessOutcome::Inconclusive => "inconclusive",
        };
        println!(
            "{label}: commutation {:.3e}, max|Im E| {:.3e} -> {word}",
            v.commutation_residual, v.max_imag
        );
    }
    Ok(())
}

fn main() -> phspec::Result<()> {
    run_example()
}
