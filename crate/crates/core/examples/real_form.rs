// A pseudo-Hermitian matrix is similar to a real one: factor the canonical
// symmetry as U·K·U⁻¹ and form R = U⁻¹HU.
//
// cargo run --example real_form -- [seed]

use phspec::matrix;
use phspec::realform;
use phspec::{families, spectral};

pub fn run_example(seed: u64) -> phspec::Result<()> {
    let mut rng = families::rng(seed);
    let r0 = families::to_complex(&families::real_diagonalizable(4, &mut rng));
    let u0 = families::random_invertible(4, 1e2, &mut rng);
    let h = &u0 * r0 * matrix::inverse(&u0).expect("bounded condition");
    println!("H has max |Im H_ij| = {:.3e}", matrix::max_abs_imag(&h));

    let res = realform::realform_pipeline(&h, spectral::DEFAULT_TOL, seed)?;
    let (r, discarded) = res.real_part();
    println!(
        "U found after {} attempt(s), cond(U) = {:.3e}",
        res.attempts, res.cond_u
    );
    println!("|S U* - U| / |U|       = {:.3e}", res.factor_residual);
    println!(
        "max |Im R| / |R|       = {:.3e} (discarded {:.3e})",
        res.imag_residual, discarded
    );
    println!("R = {r:.6}");

    let eig_h = spectral::eigenvalues(&h)?;
    let eig_r = spectral::eigenvalues(&res.r)?;
    println!(
        "spectrum distance H vs R = {:.3e}",
        spectral::spectrum_distance(&eig_h, &eig_r)
    );

    let orphan = matrix::diag(&[
        num_complex::Complex64::new(0.0, 1.0),
        num_complex::Complex64::new(0.0, 2.0),
    ]);
    match realform::realform_pipeline(&orphan, spectral::DEFAULT_TOL, seed) {
        Err(err) => println!("diag(i, 2i): {err}"),
        Ok(_) => println!("diag(i, 2i) unexpectedly has a real form"),
    }
    Ok(())
}

fn main() -> phspec::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    run_example(seed)
}
