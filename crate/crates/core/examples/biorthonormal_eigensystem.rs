// Right and left eigenvectors of a non-normal matrix, normalized so that
// ⟨φ_m|ψ_n⟩ = δ_mn, and the spectral resolution H = Σ E_n |ψ_n⟩⟨φ_n|.
//
// cargo run --example biorthonormal_eigensystem

use num_complex::Complex64;
use phspec::matrix::{self, ComplexMatrix};
use phspec::spectral;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run_example() -> phspec::Result<()> {
    let m = ComplexMatrix::from_row_slice(
        3,
        3,
        &[
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(0.0, 1.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(1.0, -1.0),
            c(0.0, 0.0),
            c(2.0, 0.0),
        ],
    );
    let d = matrix::diag(&[c(1.0, 2.0), c(1.0, -2.0), c(3.0, 0.0)]);
    let h = &m * d * matrix::inverse(&m).expect("invertible");

    let e = spectral::eigensystem(&h, spectral::DEFAULT_TOL)?;
    println!("eigenvalues (lexicographic):");
    for (i, z) in e.eigenvalues.iter().enumerate() {
        let (cluster, a) = e.label(i);
        println!(
            "  E[{i}] = {:+.12} {:+.12}i  (cluster {cluster}, slot {a})",
            z.re, z.im
        );
    }

    let (gram, completeness) = spectral::verify_biorthonormality(&e);
    let recon = matrix::norm(&(spectral::reconstruct(&e) - &h)) / matrix::norm(&h);
    println!("max |<phi_m|psi_n> - delta_mn| = {gram:.3e}");
    println!("max |sum |psi><phi| - I|       = {completeness:.3e}");
    println!("reconstruction residual         = {recon:.3e}");
    println!("eigenvector condition estimate  = {:.3e}", e.cond_estimate);

    let degenerate = matrix::diag(&[c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)]);
    let e2 = spectral::eigensystem(&degenerate, spectral::DEFAULT_TOL)?;
    println!(
        "\ndiag(2, 2, -1): {} clusters, sizes {:?}",
        e2.clusters.len(),
        e2.clusters.iter().map(Vec::len).collect::<Vec<_>>()
    );

    let jordan =
        ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    match spectral::eigensystem(&jordan, spectral::DEFAULT_TOL) {
        Err(err) => println!("Jordan block: {err}"),
        Ok(_) => println!("Jordan block unexpectedly diagonalized"),
    }
    Ok(())
}

fn main() -> phspec::Result<()> {
    run_example()
}
