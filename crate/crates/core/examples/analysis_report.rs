// Writing a matrix file, reading it back and producing the JSON documents
// that the `phspec analyze` and `phspec realform` subcommands emit.
//
// cargo run --example analysis_report

use num_complex::Complex64;
use phspec::io;
use phspec::matrix::ComplexMatrix;
use phspec::report::{self, Settings};

/// [[1+i, g], [g, 1-i]]: real spectrum for g > 1, conjugate pair for g < 1,
/// a defective double eigenvalue at g = 1.
fn gain_loss(g: f64) -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 1.0),
            Complex64::new(g, 0.0),
            Complex64::new(g, 0.0),
            Complex64::new(1.0, -1.0),
        ],
    )
}

pub fn run_example() -> phspec::Result<()> {
    let settings = Settings::default();
    for g in [0.5, 1.0, 2.0] {
        let doc = report::analyze(&gain_loss(g), &settings)?;
        let outcome = doc.exactness.as_ref().map(|x| x.outcome);
        println!("g = {g}: {:?}, symmetry {:?}", doc.verdict, outcome);
    }

    let h = gain_loss(2.0);
    let text = io::matrix_to_string(&h);
    println!("matrix file:\n{text}");
    let parsed = io::parse_matrix(&text)?;
    assert_eq!(parsed, h);

    let doc = report::analyze(&parsed, &settings)?;
    println!("analyze verdict: {:?}", doc.verdict);
    for (name, r) in &doc.residuals {
        println!(
            "  {name:24} {:.3e} <= {:.3e} {}",
            r.value,
            r.tolerance,
            if r.passed { "ok" } else { "FAIL" }
        );
    }
    let form = report::realform_report(&parsed, &settings)?;
    println!(
        "realform verdict: {:?}, cond(U) = {:?}",
        form.verdict, form.cond_u
    );
    println!("{}", report::to_json(&form));
    Ok(())
}

fn main() -> phspec::Result<()> {
    run_example()
}
