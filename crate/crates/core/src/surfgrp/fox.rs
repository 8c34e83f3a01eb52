//! Fox calculus and the twisted chain complex of the one-vertex cell
//! structure of a mapping torus.

use super::presentation::{MappingTorusPresentation, Presentation};
use super::rep::FiniteRepresentation;
use super::words::Word;
use crate::error::{Error, Result};
use crate::kernel::homology::torsion_from_orders;
use crate::kernel::{ChainComplex, LaurentPolynomial, Matrix, NormalizedTorsionClass};

type LMat = Matrix<LaurentPolynomial>;

/// Evaluates group-ring expressions under `Φ = t^{grade}·ρ`.
pub struct Evaluator<'a> {
    pres: &'a Presentation,
    rep: &'a FiniteRepresentation,
    gens: Vec<LMat>,
    invs: Vec<LMat>,
}

impl<'a> Evaluator<'a> {
    pub fn new(pres: &'a Presentation, rep: &'a FiniteRepresentation) -> Self {
        let n = pres.generator_count();
        let gens = (1..=n as i32).map(|x| rep.eval_graded(pres, &[x])).collect();
        let invs = (1..=n as i32).map(|x| rep.eval_graded(pres, &[-x])).collect();
        Evaluator { pres, rep, gens, invs }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn letter(&self, x: i32) -> &LMat {
        let i = x.unsigned_abs() as usize - 1;
        if x > 0 {
            &self.gens[i]
        } else {
            &self.invs[i]
        }
    }

    pub fn word(&self, w: &[i32]) -> LMat {
        w.iter().fold(Matrix::identity(self.dim()), |acc, &x| acc.mul(self.letter(x)))
    }

    /// `Φ(∂w/∂x_j)` for every generator `j`.
    pub fn fox_row(&self, w: &[i32]) -> Vec<LMat> {
        let k = self.dim();
        let mut out = vec![Matrix::zeros(k, k); self.pres.generator_count()];
        let mut prefix: LMat = Matrix::identity(k);
        for &x in w {
            let j = x.unsigned_abs() as usize - 1;
            if x > 0 {
                out[j] = out[j].add(&prefix);
                prefix = prefix.mul(self.letter(x));
            } else {
                prefix = prefix.mul(self.letter(x));
                out[j] = out[j].sub(&prefix);
            }
        }
        out
    }
}

fn block_row(blocks: Vec<LMat>, k: usize) -> LMat {
    Matrix::from_blocks(&[blocks], k)
}

/// Fox matrix `[Φ(∂r_i/∂x_j)]`, size `(k·#relators) × (k·#generators)`.
pub fn fox_matrix(pres: &Presentation, rep: &FiniteRepresentation) -> LMat {
    let ev = Evaluator::new(pres, rep);
    let k = rep.dim;
    let rows: Vec<Vec<LMat>> = pres.relators.iter().map(|r| ev.fox_row(r)).collect();
    if rows.is_empty() {
        return Matrix::zeros(0, k * pres.generator_count());
    }
    Matrix::from_blocks(&rows, k)
}

pub fn fox_alexander_matrix(mt: &MappingTorusPresentation, rep: &FiniteRepresentation) -> Result<LMat> {
    check_relators(&mt.presentation, rep)?;
    Ok(fox_matrix(&mt.presentation, rep))
}

fn check_relators(pres: &Presentation, rep: &FiniteRepresentation) -> Result<()> {
    if rep.matrices.len() != pres.generator_count() {
        return Err(Error::InvalidInput(format!(
            "representation has {} matrices for {} generators",
            rep.matrices.len(),
            pres.generator_count()
        )));
    }
    for (i, r) in pres.relators.iter().enumerate() {
        if rep.eval(r) != Matrix::identity(rep.dim) {
            return Err(Error::RelatorViolation(i));
        }
    }
    Ok(())
}

/// Row-convention `∂_1`: block column `Φ(x_j) − I`.
fn augmentation(pres: &Presentation, rep: &FiniteRepresentation) -> LMat {
    let ev = Evaluator::new(pres, rep);
    let k = rep.dim;
    let blocks: Vec<Vec<LMat>> = (1..=pres.generator_count() as i32)
        .map(|x| vec![ev.letter(x).sub(&Matrix::identity(k))])
        .collect();
    if blocks.is_empty() {
        return Matrix::zeros(0, k);
    }
    Matrix::from_blocks(&blocks, k)
}

/// Coefficients `β_j` in `t⁻¹·R·t = Π p·r_j^{±1}·p⁻¹ · φ(R)`, as signed words.
fn flow_coefficients(mt: &MappingTorusPresentation) -> Vec<Vec<(i32, Word)>> {
    let n = mt.fiber_rank();
    let mut beta: Vec<Vec<(i32, Word)>> = vec![Vec::new(); n];
    let Some(rel) = &mt.surface.relator else { return beta };
    let mut prefix: Word = Vec::new();
    for &x in rel {
        let j = x.unsigned_abs() as usize - 1;
        let img = &mt.phi.images[j];
        if x > 0 {
            beta[j].push((1, prefix.clone()));
            prefix = super::words::concat(&[&prefix, img]);
        } else {
            prefix = super::words::concat(&[&prefix, &super::words::inverse(img)]);
            beta[j].push((-1, prefix.clone()));
        }
    }
    beta
}

/// Twisted cellular chain complex of the one-vertex structure on `M_f`
/// (column convention), with the 3-cell present for closed fibers.
pub fn chain_complex(mt: &MappingTorusPresentation, rep: &FiniteRepresentation) -> Result<ChainComplex> {
    let pres = &mt.presentation;
    check_relators(pres, rep)?;
    let k = rep.dim;
    let g = pres.generator_count();
    let r = pres.relators.len();
    let d1 = augmentation(pres, rep);
    let d2 = fox_matrix(pres, rep);
    let mut dims = vec![k, k * g, k * r];
    let mut bounds = vec![d1.transpose(), d2.transpose()];
    if let Some((w, eps)) = &mt.relator_twist {
        let ev = Evaluator::new(pres, rep);
        let t = mt.t();
        let mut wmat = ev.word(w);
        if *eps < 0 {
            wmat = wmat.neg();
        }
        let mut blocks = vec![ev.letter(-t).sub(&wmat)];
        for terms in flow_coefficients(mt) {
            let mut acc: LMat = Matrix::zeros(k, k);
            for (s, p) in terms {
                let m = ev.word(&p);
                acc = if s > 0 { acc.add(&m) } else { acc.sub(&m) };
            }
            blocks.push(acc.neg());
        }
        let d3 = block_row(blocks, k);
        dims.push(k);
        bounds.push(d3.transpose());
    }
    ChainComplex::new(dims, bounds)
}

/// Order of the `n`-th twisted homology.
pub fn twisted_alexander(mt: &MappingTorusPresentation, rep: &FiniteRepresentation, n: usize) -> Result<LaurentPolynomial> {
    if n > 3 {
        return Err(Error::UnsupportedDegree(n));
    }
    chain_complex(mt, rep)?.homology_order(n)
}

/// `Δ_0`, `Δ_1` of the presentation 2-complex of an arbitrary graded presentation.
pub fn presentation_alexander(pres: &Presentation, rep: &FiniteRepresentation, n: usize) -> Result<LaurentPolynomial> {
    check_relators(pres, rep)?;
    let k = rep.dim;
    let d1 = augmentation(pres, rep).transpose();
    match n {
        0 => crate::kernel::homology_order(&d1, &Matrix::zeros(0, k)),
        1 => crate::kernel::homology_order(&fox_matrix(pres, rep).transpose(), &d1),
        _ => Err(Error::UnsupportedDegree(n)),
    }
}

pub fn twisted_torsion(mt: &MappingTorusPresentation, rep: &FiniteRepresentation) -> Result<NormalizedTorsionClass> {
    let cc = chain_complex(mt, rep)?;
    let mut orders = cc.orders()?;
    orders.resize(4, LaurentPolynomial::one());
    Ok(torsion_from_orders(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{normalize_unit_class, RationalFunction};
    use crate::surfgrp::presentation::{mapping_torus, GeneratorEndomorphism, SurfacePresentation};
    use crate::surfgrp::rep::cyclic_through_grading;

    fn lp(p: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_i64s(p)
    }

    fn anosov() -> MappingTorusPresentation {
        let phi = GeneratorEndomorphism { images: vec![vec![1, 1, 2], vec![1, 2]] };
        mapping_torus(&SurfacePresentation::closed(1), &phi).unwrap()
    }

    #[test]
    fn torus_bundle_orders() {
        let mt = anosov();
        let rep = FiniteRepresentation::trivial(&mt.presentation);
        assert_eq!(twisted_alexander(&mt, &rep, 0).unwrap(), lp(&[(0, -1), (1, 1)]));
        assert_eq!(twisted_alexander(&mt, &rep, 1).unwrap(), lp(&[(0, 1), (1, -3), (2, 1)]));
        assert_eq!(twisted_alexander(&mt, &rep, 2).unwrap(), lp(&[(0, -1), (1, 1)]));
        assert_eq!(twisted_alexander(&mt, &rep, 3).unwrap(), lp(&[(0, 1)]));
        let want = RationalFunction::new(lp(&[(0, 1), (1, -3), (2, 1)]), lp(&[(0, 1), (1, -2), (2, 1)])).unwrap();
        assert_eq!(twisted_torsion(&mt, &rep).unwrap(), normalize_unit_class(&want));
        assert!(matches!(twisted_alexander(&mt, &rep, 4), Err(Error::UnsupportedDegree(4))));
    }

    #[test]
    fn three_torus() {
        // Infinite cyclic cover is T^2 × R with trivial deck action.
        let mt = mapping_torus(&SurfacePresentation::closed(1), &GeneratorEndomorphism::identity(2)).unwrap();
        let rep = FiniteRepresentation::trivial(&mt.presentation);
        assert_eq!(twisted_alexander(&mt, &rep, 1).unwrap(), lp(&[(0, 1), (1, -2), (2, 1)]));
        assert_eq!(twisted_alexander(&mt, &rep, 2).unwrap(), lp(&[(0, -1), (1, 1)]));
        assert_eq!(twisted_torsion(&mt, &rep).unwrap(), normalize_unit_class(&RationalFunction::one()));
    }

    #[test]
    fn sign_rep_torsion() {
        let mt = anosov();
        let rep = cyclic_through_grading(&mt.presentation, 2, 1).unwrap();
        let want = RationalFunction::new(lp(&[(0, 1), (1, 3), (2, 1)]), lp(&[(0, 1), (1, 2), (2, 1)])).unwrap();
        assert_eq!(twisted_torsion(&mt, &rep).unwrap(), normalize_unit_class(&want));
    }

    #[test]
    fn zero_dimensional_rep_gives_empty_matrix() {
        let mt = anosov();
        let rep = FiniteRepresentation::new(&mt.presentation, "zero", vec![Matrix::zeros(0, 0); 3], 10).unwrap();
        let m = fox_alexander_matrix(&mt, &rep).unwrap();
        assert_eq!(m.shape(), (0, 0));
        assert_eq!(twisted_torsion(&mt, &rep).unwrap(), normalize_unit_class(&RationalFunction::one()));
    }
}
