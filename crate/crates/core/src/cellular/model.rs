use num_bigint::BigInt;

use super::{CellularMappingTorus, CellularSelfMap, CellularSurface, DecoratedChain};
use crate::kernel::Matrix;
use crate::surfgrp::words;
use crate::surfgrp::MappingTorusPresentation;

/// Free derivatives `∂w/∂x_j` as decorated chains over the 1-cells,
/// each decoration prefixed by `lead`.
fn fox_terms(w: &[i32], lead: &[i32]) -> DecoratedChain {
    let mut out = Vec::new();
    let mut prefix = lead.to_vec();
    for &x in w {
        let j = x.unsigned_abs() as usize - 1;
        if x > 0 {
            out.push((j, 1, words::free_reduce(&prefix)));
            prefix.push(x);
        } else {
            prefix.push(x);
            out.push((j, -1, words::free_reduce(&prefix)));
        }
    }
    out
}

/// The one-vertex cell structure on the fiber (one 0-cell, one 1-cell per
/// generator, and one 2-cell along the relator when the fiber is closed),
/// with the self-map read off from the monodromy words.
///
/// With `x·t = t·φ(x)` the flow matrices are `F_0 = t`,
/// `F_1^{ij} = t·∂φ(x_i)/∂x_j` and `F_2 = ε·t·w` where `φ(R) = w·R^ε·w⁻¹`.
pub fn one_vertex(mt: &MappingTorusPresentation) -> CellularMappingTorus {
    let n = mt.fiber_rank();
    let t = mt.t();
    let mut names = [vec!["v".to_string()], mt.surface.names.clone(), Vec::new()];
    let b1: Vec<DecoratedChain> = (1..=n as i32).map(|x| vec![(0, 1, vec![x]), (0, -1, vec![])]).collect();
    let mut b2 = Vec::new();
    let f0 = vec![vec![(0, 1, vec![t])]];
    let f1: Vec<DecoratedChain> = mt.phi.images.iter().map(|img| fox_terms(img, &[t])).collect();
    let mut f2 = Vec::new();
    if let (Some(rel), Some((w, eps))) = (&mt.surface.relator, &mt.relator_twist) {
        names[2].push("R".into());
        b2.push(fox_terms(rel, &[]));
        let mut deco = vec![t];
        deco.extend(w);
        f2.push(vec![(0, *eps as i64, words::free_reduce(&deco))]);
    }
    CellularMappingTorus {
        group: mt.presentation.clone(),
        surface: CellularSurface { names, boundary: [b1, b2] },
        map: CellularSelfMap { images: [f0, f1, f2] },
    }
}

/// Integer matrices of the induced maps on `H_0`, `H_1`, `H_2` of the fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyAction {
    pub maps: [Matrix<BigInt>; 3],
}

impl HomologyAction {
    pub fn new(h0: Matrix<BigInt>, h1: Matrix<BigInt>, h2: Matrix<BigInt>) -> Self {
        HomologyAction { maps: [h0, h1, h2] }
    }

    /// Action of a monodromy on the homology of its fiber. Only valid for
    /// closed fibers or fibers whose generators form a homology basis.
    pub fn of_monodromy(mt: &MappingTorusPresentation) -> Self {
        let h2 = if mt.surface.relator.is_some() {
            Matrix::from_rows(vec![vec![BigInt::from(mt.orientation())]])
        } else {
            Matrix::zeros(0, 0)
        };
        HomologyAction::new(Matrix::identity(1), mt.phi.abelian_matrix(), h2)
    }
}
