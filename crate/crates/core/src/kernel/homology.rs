use super::laurent::LaurentPolynomial;
use super::matrix::Matrix;
use super::poly::Poly;
use super::ratfunc::{normalize_unit_class, NormalizedTorsionClass, RationalFunction};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Clears negative exponents by multiplying each row by a power of `t`.
fn rows_to_poly(a: &Matrix<LaurentPolynomial>) -> Matrix<Poly> {
    let shifts: Vec<i64> = (0..a.rows())
        .map(|r| a.row(r).iter().filter_map(|p| p.min_exp()).min().unwrap_or(0))
        .collect();
    Matrix::from_fn(a.rows(), a.cols(), |r, c| {
        let (p, s) = a[(r, c)].to_poly();
        p.shift((s - shifts[r]) as usize)
    })
}

/// Same, column by column.
fn cols_to_poly(a: &Matrix<LaurentPolynomial>) -> Matrix<Poly> {
    rows_to_poly(&a.transpose()).transpose()
}

/// Order of `ker(out) / im(in)` over `𝔽[t^{±1}]`, boundaries in the column
/// convention (`in` maps into the middle module, `out` maps out of it).
///
/// Returns the product of the invariant factors, monic with no `t` factor,
/// or zero when the module has positive rank.
pub fn homology_order(boundary_in: &Matrix<LaurentPolynomial>, boundary_out: &Matrix<LaurentPolynomial>) -> Result<LaurentPolynomial> {
    let n = boundary_out.cols();
    if boundary_in.rows() != n {
        return Err(Error::InvalidInput(format!(
            "boundary shapes do not compose: {}x{} after {}x{}",
            boundary_out.rows(),
            boundary_out.cols(),
            boundary_in.rows(),
            boundary_in.cols()
        )));
    }
    if !boundary_out.mul(boundary_in).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    // Unit row scaling of `out` keeps its kernel; unit column scaling of `in` keeps its image.
    let out = rows_to_poly(boundary_out);
    let inn = cols_to_poly(boundary_in);
    let s = smith_normal_form(&out);
    let r = s.rank;
    let moved = s.q_inv.mul(&inn);
    let kept: Vec<usize> = (r..n).collect();
    let all_cols: Vec<usize> = (0..inn.cols()).collect();
    let m = moved.submatrix(&kept, &all_cols);
    let sm = smith_normal_form(&m);
    if sm.rank < n - r {
        return Ok(LaurentPolynomial::zero());
    }
    let prod = sm.diagonal().iter().take(n - r).fold(Poly::one(), |acc, d| acc.mul(d));
    let (p, _) = prod.strip_low();
    Ok(LaurentPolynomial::from_poly(&p.monic(), 0))
}

/// A finite free chain complex over `𝔽[t^{±1}]`, column convention:
/// `boundaries[i]` maps `C_{i+1}` to `C_i`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<Matrix<LaurentPolynomial>>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<Matrix<LaurentPolynomial>>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::InvalidInput("chain complex needs one boundary per adjacent pair".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::InvalidInput(format!(
                    "boundary {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i]).is_zero() {
                return Err(Error::ChainCondition(i + 1));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Order of `H_n`.
    pub fn homology_order(&self, n: usize) -> Result<LaurentPolynomial> {
        let top = self.top();
        if n > top {
            return Ok(LaurentPolynomial::one());
        }
        let out = if n == 0 { Matrix::zeros(0, self.dims[0]) } else { self.boundaries[n - 1].clone() };
        let inn = if n == top { Matrix::zeros(self.dims[n], 0) } else { self.boundaries[n].clone() };
        homology_order(&inn, &out)
    }

    pub fn orders(&self) -> Result<Vec<LaurentPolynomial>> {
        (0..=self.top()).map(|n| self.homology_order(n)).collect()
    }

    /// `Π_{n odd} Δ_n / Π_{n even} Δ_n`, or zero when some order vanishes.
    pub fn torsion(&self) -> Result<NormalizedTorsionClass> {
        Ok(torsion_from_orders(&self.orders()?))
    }
}

pub fn torsion_from_orders(orders: &[LaurentPolynomial]) -> NormalizedTorsionClass {
    if orders.iter().any(|d| d.is_zero()) {
        return NormalizedTorsionClass::zero();
    }
    let mut num = LaurentPolynomial::one();
    let mut den = LaurentPolynomial::one();
    for (n, d) in orders.iter().enumerate() {
        if n % 2 == 1 {
            num = num.mul(d);
        } else {
            den = den.mul(d);
        }
    }
    normalize_unit_class(&RationalFunction::new(num, den).expect("nonzero orders"))
}
