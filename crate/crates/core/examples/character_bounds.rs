//! Projects a table of periodic orbits to S3 and bounds the Nielsen number
//! by the classes whose indicator Lefschetz number is nonzero.

use procong::chars::{builtin_group, class_indicator_l, nielsen_bound, twisted_l_from_orbits, OrbitEntry, OrbitProjectionTable};

fn main() -> procong::Result<()> {
    let g = builtin_group("S3")?;
    print!("{g}");
    let entries = [(0, 1, 0), (1, -1, 1), (2, -1, 1), (3, -2, 2), (4, 2, 2)]
        .into_iter()
        .map(|(orbit, index, class)| OrbitEntry { orbit, index, class })
        .collect();
    let table = OrbitProjectionTable::new(1, entries)?;
    for (i, chi) in g.characters.iter().enumerate() {
        println!("L(chi_{i}) = {}", twisted_l_from_orbits(&table, chi)?);
    }
    for c in 0..g.class_count() {
        println!("L(class {c}) = {}", class_indicator_l(&table, &g, c)?);
    }
    // orbits 3 and 4 cancel in class 2
    println!("N_1 >= {}", nielsen_bound(&table, &g)?.bound);
    Ok(())
}
