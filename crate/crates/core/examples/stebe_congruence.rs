//! Two hyperbolic torus maps that no finite congruence quotient can tell
//! apart, although they are not conjugate in SL(2, Z).

use procong::torus::{congruence_sweep, normal_form, sl2_conjugate, IntegerMatrix2};

fn main() -> procong::Result<()> {
    let a: IntegerMatrix2 = "188,275;121,177".parse()?;
    let b: IntegerMatrix2 = "188,11;3025,177".parse()?;
    println!("trace {} and {}", a.trace(), b.trace());
    println!("cyclic words {} and {}", normal_form(&a)?.invariant, normal_form(&b)?.invariant);
    println!("SL(2,Z) conjugate: {}", sl2_conjugate(&a, &b)?.is_conjugate());

    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let report = congruence_sweep(&a, &b, max)?;
    println!("conjugate modulo every n <= {max}: {}", report.all_levels_conjugate);
    if let Some(w) = report.levels.iter().find(|l| l.n == 35) {
        println!("n = 35: {:?}", w.verdict);
    }
    Ok(())
}
