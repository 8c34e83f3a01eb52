//! Twisted Alexander polynomials of the Anosov torus bundle for a few
//! one-dimensional representations factoring through the fibration.

use procong::surfgrp::{
    mapping_torus, named_representation, twisted_alexander, twisted_torsion, GeneratorEndomorphism, SurfacePresentation,
};

fn main() -> procong::Result<()> {
    let phi = GeneratorEndomorphism::torus_from_matrix([[2, 1], [1, 1]])?;
    let mt = mapping_torus(&SurfacePresentation::closed(1), &phi)?;
    for spec in ["trivial", "sign", "cyclic:3:1", "cyclic:4:1"] {
        let rep = named_representation(spec, &mt.presentation)?.expect("builtin representation");
        println!("{spec}:");
        for n in 0..=2 {
            println!("  Delta_{n} = {}", twisted_alexander(&mt, &rep, n)?);
        }
        println!("  torsion = {}", twisted_torsion(&mt, &rep)?);
    }
    Ok(())
}
