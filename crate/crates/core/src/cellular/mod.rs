//! Cellular model of a mapping torus: fiber cells `c_n^i`, flow cells
//! `d_{n+1}^i = c_n^i × (0,1)`, and the decorated self-map matrices `F_n`.
//!
//! Decorations are words in the mapping-torus group. A fiber boundary
//! `∂c_n^i = Σ E_n^{ik} c_{n-1}^k` uses words of fibered-class value 0; the
//! self-map `c_n^i ↦ Σ F_n^{ij} c_n^j` uses words of value 1.

mod model;

pub use model::{one_vertex, HomologyAction};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::homology::torsion_from_orders;
use crate::kernel::{
    log_coefficients, normalize_unit_class, series_expand, ChainComplex, ExactScalar, LaurentPolynomial, Matrix,
    NormalizedTorsionClass, Poly, RationalFunction,
};
use crate::surfgrp::{FiniteRepresentation, Presentation, Word};

/// `(cell, coefficient, decoration)`.
pub type Term = (usize, i64, Word);
pub type DecoratedChain = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularSurface {
    pub names: [Vec<String>; 3],
    /// `boundary[0]` holds `∂c_1^i`, `boundary[1]` holds `∂c_2^i`.
    pub boundary: [Vec<DecoratedChain>; 2],
}

impl CellularSurface {
    pub fn counts(&self) -> [usize; 3] {
        [self.names[0].len(), self.names[1].len(), self.names[2].len()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [a, b, c] = self.counts();
        a as i64 - b as i64 + c as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularSelfMap {
    /// `images[n][i] = Σ_j F_n^{ij} c_n^j`.
    pub images: [Vec<DecoratedChain>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMappingTorus {
    /// The mapping-torus group; its grading is the fibered class.
    pub group: Presentation,
    pub surface: CellularSurface,
    pub map: CellularSelfMap,
}

type LMat = Matrix<LaurentPolynomial>;

struct Eval<'a> {
    group: &'a Presentation,
    rep: &'a FiniteRepresentation,
}

impl Eval<'_> {
    fn scalar(&self, chain: &[Term], cell: usize) -> Matrix<ExactScalar> {
        let k = self.rep.dim;
        chain.iter().filter(|(c, _, _)| *c == cell).fold(Matrix::zeros(k, k), |acc, (_, coef, w)| {
            acc.add(&self.rep.eval(w).scale(&ExactScalar::from_i64(*coef)))
        })
    }

    fn graded(&self, chain: &[Term], cell: usize) -> LMat {
        let k = self.rep.dim;
        chain.iter().filter(|(c, _, _)| *c == cell).fold(Matrix::zeros(k, k), |acc, (_, coef, w)| {
            let c = LaurentPolynomial::constant(ExactScalar::from_i64(*coef));
            acc.add(&self.rep.eval_graded(self.group, w).map(|e| e.mul(&c)))
        })
    }
}

impl CellularMappingTorus {
    pub fn validate(&self) -> Result<()> {
        let counts = self.surface.counts();
        let gens = self.group.generator_count() as i32;
        let check_chain = |chain: &DecoratedChain, target: usize, grade: i64| -> Result<()> {
            for (c, _, w) in chain {
                if *c >= counts[target] {
                    return Err(Error::InvalidInput(format!("cell index {c} out of range in dimension {target}")));
                }
                if let Some(x) = w.iter().find(|x| **x == 0 || x.abs() > gens) {
                    return Err(Error::InvalidInput(format!("letter {x} out of range")));
                }
                let value = self.group.grade(w);
                if value != grade {
                    return Err(Error::GradingViolation { word: w.clone(), value });
                }
            }
            Ok(())
        };
        for n in 1..=2 {
            if self.surface.boundary[n - 1].len() != counts[n] {
                return Err(Error::InvalidInput(format!("boundary data for dimension {n} has the wrong length")));
            }
            for ch in &self.surface.boundary[n - 1] {
                check_chain(ch, n - 1, 0)?;
            }
        }
        for n in 0..=2 {
            if self.map.images[n].len() != counts[n] {
                return Err(Error::InvalidInput(format!("self-map data for dimension {n} has the wrong length")));
            }
            for ch in &self.map.images[n] {
                check_chain(ch, n, 1)?;
            }
        }
        Ok(())
    }

    /// Full twisted chain complex of fiber and flow cells (column convention).
    /// Fails with a chain-condition error when the data is not a chain map.
    pub fn chain_complex(&self, rep: &FiniteRepresentation) -> Result<ChainComplex> {
        self.validate()?;
        check_rep(&self.group, rep)?;
        let ev = Eval { group: &self.group, rep };
        let k = rep.dim;
        let r = self.surface.counts();
        let id = || -> LMat { Matrix::identity(k) };
        let zero = || -> LMat { Matrix::zeros(k, k) };
        // cells of C_n: fiber c_n (r[n]) then flow d_n (r[n-1])
        let fiber = |n: usize| if n <= 2 { r[n] } else { 0 };
        let flow = |n: usize| if (1..=3).contains(&n) { r[n - 1] } else { 0 };
        let mut dims = Vec::new();
        let mut bounds = Vec::new();
        for n in 0..=3 {
            dims.push(k * (fiber(n) + flow(n)));
        }
        for n in 1..=3 {
            let (rows_f, rows_d) = (fiber(n), flow(n));
            let (cols_f, cols_d) = (fiber(n - 1), flow(n - 1));
            let mut blocks: Vec<Vec<LMat>> = Vec::new();
            for i in 0..rows_f {
                let ch = &self.surface.boundary[n - 1][i];
                let mut row: Vec<LMat> = (0..cols_f).map(|j| ev.graded(ch, j)).collect();
                row.extend((0..cols_d).map(|_| zero()));
                blocks.push(row);
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            for i in 0..rows_d {
                let img = &self.map.images[n - 1][i];
                let mut row: Vec<LMat> = (0..cols_f)
                    .map(|j| {
                        let mut b = ev.graded(img, j);
                        if i == j {
                            b = b.sub(&id());
                        }
                        if sign < 0 {
                            b.neg()
                        } else {
                            b
                        }
                    })
                    .collect();
                row.extend((0..cols_d).map(|j| {
                    if n >= 2 {
                        ev.graded(&self.surface.boundary[n - 2][i], j)
                    } else {
                        zero()
                    }
                }));
                blocks.push(row);
            }
            let (nr, nc) = (k * (rows_f + rows_d), k * (cols_f + cols_d));
            let m = if nr == 0 || nc == 0 { Matrix::zeros(nr, nc) } else { Matrix::from_blocks(&blocks, k) };
            bounds.push(m.transpose());
        }
        ChainComplex::new(dims, bounds)
    }

    /// `ρ_*(F_0), ρ_*(F_1), ρ_*(F_2)`.
    pub fn flow_boundary_matrices(&self, rep: &FiniteRepresentation) -> Result<[Matrix<ExactScalar>; 3]> {
        self.chain_complex(rep)?;
        let ev = Eval { group: &self.group, rep };
        let k = rep.dim;
        let r = self.surface.counts();
        let f = |n: usize| -> Matrix<ExactScalar> {
            if r[n] == 0 || k == 0 {
                return Matrix::zeros(k * r[n], k * r[n]);
            }
            let blocks: Vec<Vec<Matrix<ExactScalar>>> =
                self.map.images[n].iter().map(|ch| (0..r[n]).map(|j| ev.scalar(ch, j)).collect()).collect();
            Matrix::from_blocks(&blocks, k)
        };
        Ok([f(0), f(1), f(2)])
    }

    /// `det(1 − tρ_*(F_1)) / (det(1 − tρ_*(F_0))·det(1 − tρ_*(F_2)))`.
    pub fn zeta(&self, rep: &FiniteRepresentation) -> Result<RationalFunction> {
        let [f0, f1, f2] = self.flow_boundary_matrices(rep)?;
        let num = det_one_minus_t(&f1);
        let den = det_one_minus_t(&f0).mul(&det_one_minus_t(&f2));
        RationalFunction::from_polys(&num, &den)
    }

    pub fn torsion(&self, rep: &FiniteRepresentation) -> Result<CellularTorsion> {
        let formula = normalize_unit_class(&self.zeta(rep)?);
        let orders = self.chain_complex(rep)?.orders()?;
        let acyclic = orders.iter().all(|d| !d.is_zero());
        Ok(CellularTorsion { formula, acyclic, orders })
    }

    /// `L_1..L_upto` from the Taylor expansion of the zeta function.
    pub fn lefschetz_numbers(&self, rep: &FiniteRepresentation, upto: usize) -> Result<Vec<ExactScalar>> {
        let z = self.zeta(rep)?;
        log_coefficients(&series_expand(&z, upto + 1)?, upto)
    }
}

fn check_rep(group: &Presentation, rep: &FiniteRepresentation) -> Result<()> {
    if rep.matrices.len() != group.generator_count() {
        return Err(Error::InvalidInput(format!(
            "representation has {} matrices for {} generators",
            rep.matrices.len(),
            group.generator_count()
        )));
    }
    Ok(())
}

/// `det(I − tM) = t^N·χ_M(1/t)`.
pub fn det_one_minus_t(m: &Matrix<ExactScalar>) -> Poly {
    let n = m.rows();
    if n == 0 {
        return Poly::one();
    }
    m.charpoly().reverse(n)
}

/// Result of the flow-matrix torsion formula together with the homology
/// orders of the full cellular complex, which decide acyclicity.
#[derive(Clone, Debug, PartialEq)]
pub struct CellularTorsion {
    pub formula: NormalizedTorsionClass,
    pub acyclic: bool,
    pub orders: Vec<LaurentPolynomial>,
}

impl CellularTorsion {
    /// The torsion class, zero when acyclicity fails.
    pub fn class(&self) -> NormalizedTorsionClass {
        if self.acyclic {
            self.formula.clone()
        } else {
            NormalizedTorsionClass::zero()
        }
    }

    /// Alternating product of the homology orders.
    pub fn homological(&self) -> NormalizedTorsionClass {
        torsion_from_orders(&self.orders)
    }
}

pub fn flow_boundary_matrices(cmt: &CellularMappingTorus, rep: &FiniteRepresentation) -> Result<[Matrix<ExactScalar>; 3]> {
    cmt.flow_boundary_matrices(rep)
}

pub fn zeta_from_cellular(cmt: &CellularMappingTorus, rep: &FiniteRepresentation) -> Result<RationalFunction> {
    cmt.zeta(rep)
}

pub fn torsion_from_cellular(cmt: &CellularMappingTorus, rep: &FiniteRepresentation) -> Result<CellularTorsion> {
    cmt.torsion(rep)
}

pub fn lefschetz_numbers(cmt: &CellularMappingTorus, rep: &FiniteRepresentation, upto: usize) -> Result<Vec<ExactScalar>> {
    cmt.lefschetz_numbers(rep, upto)
}

/// `Σ_n (−1)^n tr(f_*^m | H_n)`.
pub fn classical_lefschetz(action: &HomologyAction, m: u32) -> BigInt {
    action
        .maps
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let tr = if a.rows() == 0 { BigInt::from(0) } else { a.pow(m).trace() };
            if n % 2 == 0 {
                tr
            } else {
                -tr
            }
        })
        .sum()
}

#[cfg(test)]
mod tests;
