//! Reads a normal form, then prints its fixed point classes, indexed orbit
//! counts, dilatation, deviation and decomposition graphs.

use procong::ntform::{
    deviation, dilatation, fixed_point_classes, geometric_graph, indexed_orbit_numbers, nt_graph, parse_nt, split_order,
};

fn main() -> procong::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/two_pa_swap.json").to_string());
    let text = std::fs::read_to_string(&path).map_err(|e| procong::Error::InvalidInput(format!("{path}: {e}")))?;
    let nt = parse_nt(&text)?;

    println!("split order {}", split_order(&nt));
    let dil = dilatation(&nt);
    println!("Dil = {dil} ~ {}", dil.to_decimal(15));
    println!("Dev = {}", deviation(&nt));

    for r in &fixed_point_classes(&nt, 2)?.records {
        println!("m=2 case {} on {}: index {} (orbit {})", r.case, r.carrier, r.index, r.orbit);
    }
    for row in &indexed_orbit_numbers(&nt, 8)?.rows {
        println!("N_{} = {}  nu = {:?}", row.m, row.n_m, row.nu);
    }
    println!("{}", nt_graph(&nt).canonical_form());
    print!("{}", geometric_graph(&nt).render());
    Ok(())
}
