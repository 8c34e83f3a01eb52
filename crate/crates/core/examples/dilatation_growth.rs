//! Nielsen numbers of the cat map grow like the stretch factor.

use num_rational::BigRational;
use procong::kernel::{Poly, RealAlgebraic};
use procong::ntform::{anosov_model_table, dilatation_from_nielsen, Dilatation};
use procong::torus::IntegerMatrix2;

fn main() -> procong::Result<()> {
    let table = anosov_model_table(&IntegerMatrix2::from_rows([[2, 1], [1, 1]]), 30);
    let growth = dilatation_from_nielsen(&table)?;
    let dil = Dilatation { base: RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -3, 1]))?, root: 1 };
    for m in [1, 2, 5, 10, 20, 30] {
        let gap = growth.relative_gap(m, &dil).expect("row present");
        println!("m = {m:2}  N_m = {:>14}  relative gap <= {:.3e}", table.rows[m as usize - 1].n_m, ratio(&gap));
    }
    println!("within 1% at m = 30: {}", growth.within(30, &dil, &BigRational::new(1.into(), 100.into())));
    Ok(())
}

fn ratio(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
