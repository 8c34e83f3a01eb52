//! Real algebraic numbers: a squarefree rational polynomial together with a
//! rational interval `(lo, hi]` containing exactly one of its roots, with a
//! strict sign change across the interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::{format_rational, ExactScalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum RealAlgebraic {
    Rational(BigRational),
    Root { poly: Poly, lo: BigRational, hi: BigRational },
}

fn eval_q(p: &Poly, x: &BigRational) -> BigRational {
    p.eval(&ExactScalar::Rational(x.clone())).as_rational().cloned().expect("rational polynomial")
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|q| !q.is_zero());
    chain
}

fn variations(chain: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<i32> = chain.iter().map(|q| sign(&eval_q(q, x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots of `p` in `(a, b]`.
pub fn count_roots(p: &Poly, a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(&p.squarefree());
    variations(&chain, a).saturating_sub(variations(&chain, b))
}

fn cauchy_bound(p: &Poly) -> BigRational {
    let lead = p.lead().as_rational().cloned().unwrap();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| (c.as_rational().unwrap() / &lead).abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

impl RealAlgebraic {
    pub fn from_rational(r: BigRational) -> Self {
        RealAlgebraic::Rational(r)
    }

    pub fn from_i64(n: i64) -> Self {
        RealAlgebraic::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The unique root of `poly` in `(lo, hi]`.
    pub fn new(poly: &Poly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if !poly.is_rational() || poly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("algebraic number needs a nonconstant rational polynomial".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidInput("empty isolating interval".into()));
        }
        let p = poly.squarefree();
        if count_roots(&p, &lo, &hi) != 1 {
            return Err(Error::InvalidInput(format!(
                "interval ({}, {}] does not isolate a single root of {}",
                format_rational(&lo),
                format_rational(&hi),
                p
            )));
        }
        Ok(Self::settle(p, lo, hi))
    }

    /// Largest real root of `poly`, if any.
    pub fn largest_root(poly: &Poly) -> Result<Self> {
        if !poly.is_rational() || poly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("algebraic number needs a nonconstant rational polynomial".into()));
        }
        let p = poly.squarefree();
        let b = cauchy_bound(&p);
        let mut lo = -b.clone();
        let hi = b;
        if count_roots(&p, &lo, &hi) == 0 {
            return Err(Error::InvalidInput(format!("{p} has no real root")));
        }
        while count_roots(&p, &lo, &hi) > 1 {
            let mid = (&lo + &hi) / two();
            if count_roots(&p, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                unreachable!("largest root lost during isolation");
            }
        }
        Ok(Self::settle(p, lo, hi))
    }

    // Ensures the sign-change invariant: neither endpoint is a root.
    fn settle(p: Poly, mut lo: BigRational, mut hi: BigRational) -> Self {
        if eval_q(&p, &hi).is_zero() {
            return RealAlgebraic::Rational(hi);
        }
        if p.degree() == Some(1) {
            let c = p.coeffs();
            let r = -(c[0].as_rational().unwrap() / c[1].as_rational().unwrap());
            return RealAlgebraic::Rational(r);
        }
        while eval_q(&p, &lo).is_zero() {
            let mid = (&lo + &hi) / two();
            if eval_q(&p, &mid).is_zero() {
                return RealAlgebraic::Rational(mid);
            }
            if count_roots(&p, &mid, &hi) == 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RealAlgebraic::Root { poly: p, lo, hi }
    }

    pub fn interval(&self) -> (BigRational, BigRational) {
        match self {
            RealAlgebraic::Rational(r) => (r.clone(), r.clone()),
            RealAlgebraic::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealAlgebraic::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Halves the isolating interval.
    pub fn bisect(&mut self) {
        let RealAlgebraic::Root { poly, lo, hi } = self else { return };
        let mid = (&*lo + &*hi) / two();
        let fm = eval_q(poly, &mid);
        if fm.is_zero() {
            *self = RealAlgebraic::Rational(mid);
            return;
        }
        let fh = eval_q(poly, hi);
        if sign(&fm) == sign(&fh) {
            *hi = mid;
        } else {
            *lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while let RealAlgebraic::Root { lo, hi, .. } = self {
            if &(&*hi - &*lo) <= width {
                break;
            }
            self.bisect();
        }
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let mut x = self.clone();
        loop {
            match &x {
                RealAlgebraic::Rational(a) => return a.cmp(r),
                RealAlgebraic::Root { poly, lo, hi } => {
                    if r <= lo {
                        return Ordering::Greater;
                    }
                    if r >= hi {
                        return Ordering::Less;
                    }
                    if eval_q(poly, r).is_zero() {
                        return Ordering::Equal;
                    }
                }
            }
            x.bisect();
        }
    }

    fn same_root(&self, o: &Self) -> bool {
        match (self, o) {
            (RealAlgebraic::Rational(a), _) => o.cmp_rational(a) == Ordering::Equal,
            (_, RealAlgebraic::Rational(b)) => self.cmp_rational(b) == Ordering::Equal,
            (RealAlgebraic::Root { poly: p, lo: l1, hi: h1 }, RealAlgebraic::Root { poly: q, lo: l2, hi: h2 }) => {
                let lo = if l1 > l2 { l1 } else { l2 };
                let hi = if h1 < h2 { h1 } else { h2 };
                if lo >= hi {
                    return false;
                }
                let g = p.gcd(q);
                g.degree().unwrap_or(0) > 0 && count_roots(&g, lo, hi) > 0
            }
        }
    }

    /// Integer power, computed exactly from the characteristic polynomial of
    /// the companion matrix.
    pub fn pow(&self, m: u32) -> Self {
        let (poly, lo, hi) = match self {
            RealAlgebraic::Rational(r) => return RealAlgebraic::Rational(num_traits::pow(r.clone(), m as usize)),
            RealAlgebraic::Root { poly, lo, hi } => (poly.monic(), lo.clone(), hi.clone()),
        };
        if m == 0 {
            return Self::from_i64(1);
        }
        let n = poly.degree().unwrap();
        let c = poly.coeffs();
        let companion = Matrix::from_fn(n, n, |r, col| {
            if col == n - 1 {
                -&c[r]
            } else if r == col + 1 {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        });
        let q = companion.pow(m).charpoly().squarefree();
        let mut base = RealAlgebraic::Root { poly, lo, hi };
        // move the interval off zero so x ↦ x^m is monotone on it
        loop {
            match &base {
                RealAlgebraic::Rational(r) => return RealAlgebraic::Rational(num_traits::pow(r.clone(), m as usize)),
                RealAlgebraic::Root { lo, hi, .. } => {
                    if !(lo.is_negative() && hi.is_positive()) {
                        break;
                    }
                }
            }
            base.bisect();
        }
        loop {
            let (lo, hi) = match &base {
                RealAlgebraic::Rational(r) => return RealAlgebraic::Rational(num_traits::pow(r.clone(), m as usize)),
                RealAlgebraic::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
            };
            let a = num_traits::pow(lo, m as usize);
            let b = num_traits::pow(hi, m as usize);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if !eval_q(&q, &a).is_zero() && !eval_q(&q, &b).is_zero() && count_roots(&q, &a, &b) == 1 {
                return Self::settle(q, a, b);
            }
            base.bisect();
        }
    }

    /// Decimal string with `digits` significant digits, correct to within one
    /// unit in the last place.
    pub fn to_decimal(&self, digits: usize) -> String {
        let mut x = self.clone();
        let ten = BigRational::from_integer(BigInt::from(10));
        loop {
            let (lo, hi) = x.interval();
            let mag = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
            let mut scale = BigRational::one();
            // scale so that mag·scale lies in [10^{digits-1}, 10^digits)
            let target_hi = num_traits::pow(ten.clone(), digits);
            let target_lo = num_traits::pow(ten.clone(), digits.saturating_sub(1));
            if mag.is_zero() {
                return "0".into();
            }
            let mut exp10: i64 = 0;
            while &mag * &scale >= target_hi {
                scale /= &ten;
                exp10 += 1;
            }
            while &mag * &scale < target_lo {
                scale *= &ten;
                exp10 -= 1;
            }
            let width = (&hi - &lo) * &scale;
            if width < BigRational::new(BigInt::from(1), BigInt::from(10)) || x.as_rational().is_some() {
                let mid = (&lo + &hi) / two() * &scale;
                let mut n = mid.round().to_integer();
                let neg = n.is_negative();
                n = n.abs();
                let mut s = n.to_string();
                // digits after the point = -exp10
                let point = s.len() as i64 + exp10;
                let body = if point <= 0 {
                    format!("0.{}{}", "0".repeat((-point) as usize), s)
                } else if point as usize >= s.len() {
                    s.push_str(&"0".repeat(point as usize - s.len()));
                    s
                } else {
                    format!("{}.{}", &s[..point as usize], &s[point as usize..])
                };
                return if neg { format!("-{body}") } else { body };
            }
            x.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mut x = self.clone();
        x.refine_to(&BigRational::new(BigInt::from(1), BigInt::from(1u64 << 60)));
        let (lo, hi) = x.interval();
        ((lo + hi) / two()).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, o: &Self) -> bool {
        self.same_root(o)
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, o: &Self) -> Ordering {
        if let RealAlgebraic::Rational(b) = o {
            return self.cmp_rational(b);
        }
        if let RealAlgebraic::Rational(a) = self {
            return o.cmp_rational(a).reverse();
        }
        if self.same_root(o) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        loop {
            let (al, ah) = a.interval();
            let (bl, bh) = b.interval();
            if ah <= bl {
                return Ordering::Less;
            }
            if bh <= al {
                return Ordering::Greater;
            }
            if let RealAlgebraic::Rational(r) = &a {
                return b.cmp_rational(r).reverse();
            }
            if let RealAlgebraic::Rational(r) = &b {
                return a.cmp_rational(r);
            }
            if ah - al > bh - bl {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Rational(r) => write!(f, "{}", format_rational(r)),
            RealAlgebraic::Root { poly, lo, hi } => {
                write!(f, "root of {} in ({}, {}]", poly, format_rational(lo), format_rational(hi))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> RealAlgebraic {
        RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -3, 1])).unwrap()
    }

    #[test]
    fn golden_square_is_fourth_power_root() {
        let l = golden();
        assert!(l.as_rational().is_none());
        assert!((l.to_f64() - 2.618033988749895).abs() < 1e-12);
        // λ² is the larger root of x² − 7x + 1
        let l2 = RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -7, 1])).unwrap();
        assert_eq!(l.pow(2), l2);
        assert!(l < l2);
        assert_eq!(l.to_decimal(10), "2.618033989");
    }

    #[test]
    fn rational_detection() {
        let two_root = RealAlgebraic::new(&Poly::from_i64s(&[-2, 1]).mul(&Poly::from_i64s(&[-3, 0, 1])), BigRational::new(9.into(), 5.into()), BigRational::from_integer(2.into())).unwrap();
        assert_eq!(two_root, RealAlgebraic::from_i64(2));
        let sqrt2 = RealAlgebraic::largest_root(&Poly::from_i64s(&[-2, 0, 1])).unwrap();
        assert_eq!(sqrt2.pow(2), RealAlgebraic::from_i64(2));
        assert_eq!(sqrt2.cmp_rational(&BigRational::new(141.into(), 100.into())), Ordering::Greater);
    }
}
