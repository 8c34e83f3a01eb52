use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::poly::Poly;
use super::ring::Ring;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `t`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, ExactScalar>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExactScalar::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(ExactScalar::one(), 1)
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: ExactScalar, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPolynomial { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, ExactScalar)>) -> Self {
        let mut terms: BTreeMap<i64, ExactScalar> = BTreeMap::new();
        for (e, c) in pairs {
            let v = match terms.remove(&e) {
                Some(old) => &old + &c,
                None => c,
            };
            if !v.is_zero() {
                terms.insert(e, v);
            }
        }
        LaurentPolynomial { terms }
    }

    pub fn from_i64s(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, ExactScalar::from_i64(c))))
    }

    /// `t^shift · p`.
    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        Self::from_terms(
            p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactScalar)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> ExactScalar {
        self.terms.get(&e).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Splits as `t^shift · p` with `p(0) ≠ 0`. Zero gives `(0, 0)`.
    pub fn to_poly(&self) -> (Poly, i64) {
        let Some(lo) = self.min_exp() else { return (Poly::zero(), 0) };
        let hi = self.max_exp().unwrap();
        let mut v = vec![ExactScalar::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (Poly::new(v), lo)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(o.terms.iter()).map(|(&e, c)| (e, c.clone())))
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<i64, ExactScalar> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &o.terms {
                let p = c1 * c2;
                let slot = acc.entry(e1 + e2).or_insert_with(ExactScalar::zero);
                *slot = &*slot + &p;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms: acc }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * s)))
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `t ↦ t^{-1}` and conjugates coefficients.
    pub fn bar(&self) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (-e, c.conj())).collect() }
    }

    /// Substitutes `t ↦ c·t`.
    pub fn substitute_scaled(&self, c: &ExactScalar) -> Result<Self> {
        let inv = c.inv()?;
        Ok(Self::from_terms(self.terms.iter().map(|(&e, a)| {
            let f = if e >= 0 { c.pow(e as u32) } else { inv.pow((-e) as u32) };
            (e, a * &f)
        })))
    }

    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                x.pow(e as u32)
            } else {
                x.inv().map_err(|_| Error::DivisionByZero)?.pow((-e) as u32)
            };
            acc = &acc + &(c * &p);
        }
        Ok(acc)
    }

    /// Exact quotient by another Laurent polynomial, if it divides.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (pn, sn) = self.to_poly();
        let (pd, sd) = d.to_poly();
        let (q, r) = pn.div_rem(&pd);
        r.is_zero().then(|| Self::from_poly(&q, sn - sd))
    }

    /// Unit-normalized form: `t`-power stripped, constant term 1. Zero stays zero.
    pub fn normalize_unit(&self) -> Self {
        let (p, _) = self.to_poly();
        if p.is_zero() {
            return Self::zero();
        }
        let c0 = p.coeff(0).inv().expect("nonzero constant");
        Self::from_poly(&p.scale(&c0), 0)
    }

    /// `t`-power stripped, leading coefficient 1.
    pub fn normalize_monic(&self) -> Self {
        let (p, _) = self.to_poly();
        Self::from_poly(&p.monic(), 0)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, ExactScalar::from(-r.clone())),
                _ => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let coef = if mag.is_one() && !mono.is_empty() {
                String::new()
            } else if mag.as_rational().is_some() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let sep = if !coef.is_empty() && !mono.is_empty() && mag.as_rational().is_some_and(|r| !r.is_integer()) {
                "*"
            } else {
                ""
            };
            out.push_str(&format!("{coef}{sep}{mono}"));
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Ring for LaurentPolynomial {
    fn zero() -> Self {
        LaurentPolynomial::zero()
    }
    fn one() -> Self {
        LaurentPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPolynomial::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPolynomial::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPolynomial::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentPolynomial::neg(self)
    }
}

impl serde::Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, ExactScalar)> = Vec::deserialize(d)?;
        Ok(Self::from_terms(pairs))
    }
}
