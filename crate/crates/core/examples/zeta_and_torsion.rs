//! The flow-cell zeta function of a mapping torus, its periodic Lefschetz
//! numbers, and the comparison with torsion computed from a presentation.

use procong::cellular::{classical_lefschetz, one_vertex, HomologyAction};
use procong::kernel::normalize_unit_class;
use procong::surfgrp::{mapping_torus, twisted_torsion, FiniteRepresentation, GeneratorEndomorphism, SurfacePresentation};

fn main() -> procong::Result<()> {
    // genus-two handle swap: a_1 <-> a_2, b_1 <-> b_2
    let phi = GeneratorEndomorphism { images: vec![vec![3], vec![4], vec![1], vec![2]] };
    let mt = mapping_torus(&SurfacePresentation::closed(2), &phi)?;
    let rep = FiniteRepresentation::trivial(&mt.presentation);
    let cells = one_vertex(&mt);

    let z = cells.zeta(&rep)?;
    println!("zeta = {z}");
    println!("normalized = {}", normalize_unit_class(&z));
    println!("torsion    = {}", twisted_torsion(&mt, &rep)?);

    let act = HomologyAction::of_monodromy(&mt);
    for (m, l) in cells.lefschetz_numbers(&rep, 6)?.iter().enumerate() {
        println!("L_{} = {l} (trace formula {})", m + 1, classical_lefschetz(&act, m as u32 + 1));
    }
    Ok(())
}
