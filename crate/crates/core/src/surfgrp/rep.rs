use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_rational::BigRational;

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::kernel::{ExactScalar, LaurentPolynomial, Matrix};

pub const DEFAULT_CLOSURE_CAP: usize = 20000;

/// A representation with finite image, given on the generators of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRepresentation {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<Matrix<ExactScalar>>,
    inverses: Vec<Matrix<ExactScalar>>,
    pub image_order: usize,
}

impl FiniteRepresentation {
    pub fn new(pres: &Presentation, name: &str, matrices: Vec<Matrix<ExactScalar>>, cap: usize) -> Result<Self> {
        if matrices.len() != pres.generator_count() {
            return Err(Error::InvalidInput(format!(
                "representation {name} has {} matrices for {} generators",
                matrices.len(),
                pres.generator_count()
            )));
        }
        let dim = matrices.first().map_or(0, |m| m.rows());
        if matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidInput(format!("representation {name} has matrices of mixed shapes")));
        }
        let inverses = matrices
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidInput(format!("representation {name} has a singular matrix"))))
            .collect::<Result<Vec<_>>>()?;
        let mut rep = FiniteRepresentation { name: name.to_string(), dim, matrices, inverses, image_order: 0 };
        for (i, r) in pres.relators.iter().enumerate() {
            if rep.eval(r) != Matrix::identity(dim) {
                return Err(Error::RelatorViolation(i));
            }
        }
        rep.image_order = rep.closure_order(cap)?;
        Ok(rep)
    }

    pub fn trivial(pres: &Presentation) -> Self {
        let one = Matrix::identity(1);
        let n = pres.generator_count();
        FiniteRepresentation {
            name: "trivial".into(),
            dim: 1,
            matrices: vec![one.clone(); n],
            inverses: vec![one; n],
            image_order: 1,
        }
    }

    /// `X·ρ·X⁻¹`.
    pub fn conjugate(&self, x: &Matrix<ExactScalar>) -> Result<Self> {
        let xi = x.inverse().ok_or_else(|| Error::InvalidInput("singular conjugating matrix".into()))?;
        let f = |m: &Matrix<ExactScalar>| x.mul(m).mul(&xi);
        Ok(FiniteRepresentation {
            name: format!("{}^X", self.name),
            dim: self.dim,
            matrices: self.matrices.iter().map(f).collect(),
            inverses: self.inverses.iter().map(f).collect(),
            image_order: self.image_order,
        })
    }

    pub fn generator(&self, x: i32) -> &Matrix<ExactScalar> {
        let i = x.unsigned_abs() as usize - 1;
        if x > 0 {
            &self.matrices[i]
        } else {
            &self.inverses[i]
        }
    }

    pub fn eval(&self, w: &[i32]) -> Matrix<ExactScalar> {
        w.iter().fold(Matrix::identity(self.dim), |acc, &x| acc.mul(self.generator(x)))
    }

    /// `Φ(w) = t^{grade(w)}·ρ(w)` as a matrix over Laurent polynomials.
    pub fn eval_graded(&self, pres: &Presentation, w: &[i32]) -> Matrix<LaurentPolynomial> {
        let e = pres.grade(w);
        self.eval(w).map(|c| LaurentPolynomial::monomial(c.clone(), e))
    }

    fn closure_order(&self, cap: usize) -> Result<usize> {
        let conductor = self
            .matrices
            .iter()
            .chain(&self.inverses)
            .flat_map(|m| m.entries().map(|e| e.conductor()))
            .fold(1u32, |a, b| a.lcm(&b));
        let key = |m: &Matrix<ExactScalar>| -> Vec<Vec<BigRational>> { m.entries().map(|e| e.coeffs_in(conductor)).collect() };
        let id = Matrix::<ExactScalar>::identity(self.dim);
        let mut seen = HashSet::new();
        seen.insert(key(&id));
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.matrices {
                let h = g.mul(s);
                if seen.insert(key(&h)) {
                    if seen.len() > cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.len())
    }
}

/// Builds the representation sending the fiber to 1 and `t` to `ζ_n^k`
/// (a character through `φ_f` mod `n`).
pub fn cyclic_through_grading(pres: &Presentation, n: u32, k: i64) -> Result<FiniteRepresentation> {
    let z = ExactScalar::root_of_unity(n, k);
    let mats = pres
        .grading
        .iter()
        .map(|&g| {
            let v = if g >= 0 { z.pow(g as u32) } else { z.inv().expect("unit").pow((-g) as u32) };
            Matrix::from_rows(vec![vec![v]])
        })
        .collect();
    FiniteRepresentation::new(pres, &format!("grading mod {n}"), mats, DEFAULT_CLOSURE_CAP)
}
