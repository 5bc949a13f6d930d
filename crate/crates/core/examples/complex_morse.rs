// Complex Morse potential: shift-operator intertwining, the antilinear
// symmetry e^{θp}K and the real form through U = e^{θp/2}.
//
// cargo run --example complex_morse -- [A B C N]

use phspec::morse::{self, GridSpec};

pub fn run_example(a: f64, b: f64, c: f64, n: usize) -> phspec::Result<()> {
    let params = morse::morse_params(a, b, c)?;
    println!(
        "A = {a}, B = {b}, C = {c}: rho = {:.6}, theta = {:.6}, k = {}",
        params.rho, params.theta, params.k
    );

    println!("\n  N   pointwise    realness     operator     real-form vs direct  commutation");
    for size in [n / 2, n, 2 * n] {
        let grid = GridSpec::new(size, morse::DEFAULT_X_MIN, morse::DEFAULT_X_MAX)?;
        let rep = morse::verify_morse_intertwining(&params, &grid)?;
        let form = morse::morse_real_form(&params, &grid)?;
        println!(
            "{size:4}  {:.3e}  {:.3e}  {:.3e}  {:.3e}            {:.3e}",
            rep.pointwise_residual,
            rep.realness_residual,
            rep.operator_residual,
            form.real_direct_residual,
            form.omega_commutation_residual
        );
    }

    let grid = GridSpec::new(n, morse::DEFAULT_X_MIN, morse::DEFAULT_X_MAX)?;
    let form = morse::morse_real_form(&params, &grid)?;
    println!(
        "\nOmega = e^(theta p)K: involution {:.3e}, S* - S^-1 {:.3e}; U factor {:.3e}, cond(U) {:.3e}, imag(R) {:.3e}",
        form.omega_involution_residual,
        form.s_conj_inverse_residual,
        form.result.factor_residual,
        form.result.cond_u,
        form.result.imag_residual
    );

    let cmp = morse::compare_spectra(&params, &grid, &form, 10)?;
    println!(
        "\nlowest eigenvalues of H and of U^-1 H U (max rel. deviation {:.3e}):",
        cmp.max_relative_deviation
    );
    for (h, r) in cmp.h_lowest.iter().zip(&cmp.real_form_lowest) {
        println!(
            "  {:>14.6} {:+14.6}i    {:>14.6} {:+14.6}i",
            h.re, h.im, r.re, r.im
        );
    }
    println!("\nbound states: real-form Hamiltonian vs complex H");
    for (e, h) in cmp.bound_states_real.iter().zip(&cmp.bound_states_h) {
        println!("  {e:>12.8}    {:>12.8} {:+.2e}i", h.re, h.im);
    }
    Ok(())
}

fn main() -> phspec::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    match args.as_slice() {
        [a, b, c, n] => run_example(*a, *b, *c, *n as usize),
        [a, b, c] => run_example(*a, *b, *c, morse::DEFAULT_N),
        _ => run_example(3.0, 4.0, 4.0, morse::DEFAULT_N),
    }
}
