use std::fmt;

use super::laurent::LaurentPolynomial;
use super::poly::Poly;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Quotient of Laurent polynomials in lowest terms.
///
/// Canonical storage: the denominator is an ordinary polynomial with
/// constant term 1, every power of `t` lives in the numerator, and the two
/// polynomial parts are coprime. Structural equality is therefore equality
/// of functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (pn, sn) = num.to_poly();
        let (pd, sd) = den.to_poly();
        let g = pn.gcd(&pd);
        let pn = pn.div_exact(&g);
        let pd = pd.div_exact(&g);
        let c = pd.coeff(0).inv()?;
        Ok(RationalFunction {
            num: LaurentPolynomial::from_poly(&pn.scale(&c), sn - sd),
            den: LaurentPolynomial::from_poly(&pd.scale(&c), 0),
        })
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPolynomial::zero(), den: LaurentPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPolynomial::one())
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        Self::new(p, LaurentPolynomial::one()).expect("unit denominator")
    }

    pub fn from_polys(num: &Poly, den: &Poly) -> Result<Self> {
        Self::new(LaurentPolynomial::from_poly(num, 0), LaurentPolynomial::from_poly(den, 0))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of vanishing at `t = 0` (negative for a pole); `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        self.num.min_exp()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPolynomial::one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPolynomial| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// A rational function modulo monomial units `c·t^m`, stored by its
/// representative with order 0 and value 1 at `t = 0`, or zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizedTorsionClass {
    value: RationalFunction,
}

impl NormalizedTorsionClass {
    pub fn zero() -> Self {
        NormalizedTorsionClass { value: RationalFunction::zero() }
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for NormalizedTorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

pub fn normalize_unit_class(f: &RationalFunction) -> NormalizedTorsionClass {
    if f.is_zero() {
        return NormalizedTorsionClass::zero();
    }
    let (p, _) = f.num().to_poly();
    let c = p.coeff(0).inv().expect("nonzero after stripping t-power");
    let num = LaurentPolynomial::from_poly(&p.scale(&c), 0);
    NormalizedTorsionClass {
        value: RationalFunction { num, den: f.den().clone() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_i64s(p)
    }

    #[test]
    fn normalization_examples() {
        let base = RationalFunction::new(lp(&[(0, 1), (1, -3), (2, 1)]), lp(&[(0, 1), (1, -2), (2, 1)])).unwrap();
        let scaled = base.mul(&RationalFunction::from_laurent(lp(&[(2, 3)])));
        assert_eq!(normalize_unit_class(&scaled), normalize_unit_class(&base));
        assert_eq!(normalize_unit_class(&base).value(), &base);
        assert!(normalize_unit_class(&RationalFunction::zero()).is_zero());

        let f = RationalFunction::new(lp(&[(1, 2), (2, -6), (3, 2)]), lp(&[(1, 1), (2, -1)]))
            .unwrap()
            .scale(&ExactScalar::from_ratio(1, 2));
        let want = RationalFunction::new(lp(&[(0, 1), (1, -3), (2, 1)]), lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(normalize_unit_class(&f).value(), &want);
        assert_eq!(want.to_string(), "(1 - 3t + t^2)/(1 - t)");
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let f = RationalFunction::new(lp(&[(0, -1), (2, 1)]), lp(&[(0, -1), (1, 1)])).unwrap();
        assert_eq!(f, RationalFunction::from_laurent(lp(&[(0, 1), (1, 1)])));
    }
}
