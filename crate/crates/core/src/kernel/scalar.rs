//! Exact scalars: rationals and elements of cyclotomic fields `Q(ζ_n)`.
//!
//! A cyclotomic element is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}`
//! reduced modulo the cyclotomic polynomial `Φ_n`. Values that happen to be
//! rational are always demoted to the `Rational` variant, so the two variants
//! never describe the same number.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

/// An element of `Q(ζ_n)` that is not rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic_i64(&num, &den);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn reduce_mod_cyclotomic(mut v: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for j in 0..deg {
            if phi[j] != 0 {
                let t = &c * BigRational::from_integer(BigInt::from(phi[j]));
                v[i - deg + j] -= t;
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

fn qpoly_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    qpoly_trim(&mut r);
    let mut b = b.to_vec();
    qpoly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        qpoly_trim(&mut r);
    }
    (q, r)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qpoly_trim(&mut out);
    out
}

impl Cyclotomic {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        ExactScalar::Rational(q(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar::Rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `Σ c_i ζ_n^i` from an arbitrary-length coefficient vector.
    pub fn cyclotomic(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidInput("cyclotomic conductor must be positive".into()));
        }
        Ok(Self::from_reduced(conductor, reduce_mod_cyclotomic(coeffs, conductor)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_reduced(n, reduce_mod_cyclotomic(v, n))
    }

    fn from_reduced(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            ExactScalar::Rational(coeffs.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            ExactScalar::Cyclotomic(Cyclotomic { conductor, coeffs })
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            ExactScalar::Rational(_) => 1,
            ExactScalar::Cyclotomic(c) => c.conductor,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            ExactScalar::Cyclotomic(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_one())
    }

    /// Power-basis coefficients of this value inside `Q(ζ_n)`; `n` must be a
    /// multiple of the element's own conductor.
    pub fn coeffs_in(&self, n: u32) -> Vec<BigRational> {
        let phi = euler_phi(n) as usize;
        match self {
            ExactScalar::Rational(r) => {
                let mut v = vec![BigRational::zero(); phi];
                v[0] = r.clone();
                v
            }
            ExactScalar::Cyclotomic(c) => {
                assert!(n.is_multiple_of(c.conductor), "conductor {} does not divide {}", c.conductor, n);
                if n == c.conductor {
                    return c.coeffs.clone();
                }
                let step = (n / c.conductor) as usize;
                let mut v = vec![BigRational::zero(); (c.coeffs.len() - 1) * step + 1];
                for (i, x) in c.coeffs.iter().enumerate() {
                    v[i * step] = x.clone();
                }
                reduce_mod_cyclotomic(v, n)
            }
        }
    }

    fn common_conductor(&self, other: &Self) -> u32 {
        let a = self.conductor();
        let b = other.conductor();
        a.lcm(&b)
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        match self {
            ExactScalar::Rational(_) => self.clone(),
            ExactScalar::Cyclotomic(c) => {
                let n = c.conductor as usize;
                let mut v = vec![BigRational::zero(); n];
                for (i, x) in c.coeffs.iter().enumerate() {
                    v[(n - i) % n] += x;
                }
                Self::from_reduced(c.conductor, reduce_mod_cyclotomic(v, c.conductor))
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            ExactScalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ExactScalar::Rational(r.recip()))
                }
            }
            ExactScalar::Cyclotomic(c) => {
                // Extended Euclid: s·a + u·Φ = g, with g a nonzero constant.
                let phi: Vec<BigRational> = cyclotomic_polynomial(c.conductor).iter().map(|&x| q(x)).collect();
                let mut r0 = phi;
                let mut r1 = c.coeffs.clone();
                qpoly_trim(&mut r1);
                let mut s0: Vec<BigRational> = vec![];
                let mut s1: Vec<BigRational> = vec![BigRational::one()];
                while r1.len() > 1 {
                    let (quo, rem) = qpoly_divrem(&r0, &r1);
                    let s2 = qpoly_sub(&s0, &qpoly_mul(&quo, &s1));
                    r0 = std::mem::replace(&mut r1, rem);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                if r1.is_empty() {
                    return Err(Error::DivisionByZero);
                }
                let g = r1[0].clone();
                let s: Vec<BigRational> = s1.into_iter().map(|x| x / &g).collect();
                Ok(Self::from_reduced(c.conductor, reduce_mod_cyclotomic(s, c.conductor)))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactScalar::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn binary(&self, other: &Self, op: impl Fn(&[BigRational], &[BigRational], u32) -> Vec<BigRational>) -> Self {
        let n = self.common_conductor(other);
        let a = self.coeffs_in(n);
        let b = other.coeffs_in(n);
        Self::from_reduced(n, op(&a, &b, n))
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => a == b,
            (ExactScalar::Cyclotomic(a), ExactScalar::Cyclotomic(b)) => {
                if a.conductor == b.conductor {
                    return a.coeffs == b.coeffs;
                }
                let n = self.common_conductor(other);
                self.coeffs_in(n) == other.coeffs_in(n)
            }
            _ => false,
        }
    }
}

impl Eq for ExactScalar {}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if let (ExactScalar::Rational(a), ExactScalar::Rational(b)) = (self, rhs) {
            return ExactScalar::Rational(a + b);
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        if let (ExactScalar::Rational(a), ExactScalar::Rational(b)) = (self, rhs) {
            return ExactScalar::Rational(a - b);
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        match (self, rhs) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => ExactScalar::Rational(a * b),
            (ExactScalar::Rational(a), ExactScalar::Cyclotomic(c)) | (ExactScalar::Cyclotomic(c), ExactScalar::Rational(a)) => {
                if a.is_zero() {
                    return ExactScalar::zero();
                }
                ExactScalar::Cyclotomic(Cyclotomic {
                    conductor: c.conductor,
                    coeffs: c.coeffs.iter().map(|x| x * a).collect(),
                })
            }
            _ => self.binary(rhs, |a, b, n| reduce_mod_cyclotomic(qpoly_mul(a, b), n)),
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::inv`] for a checked inverse.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rational(a) => ExactScalar::Rational(-a),
            ExactScalar::Cyclotomic(c) => ExactScalar::Cyclotomic(Cyclotomic {
                conductor: c.conductor,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_i64(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar::Rational(r)
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for ExactScalar {
    /// Rationals print as `p` or `p/q`; cyclotomic values as `cyc(n):[c0,c1,...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{}", format_rational(r)),
            ExactScalar::Cyclotomic(c) => {
                let parts: Vec<String> = c.coeffs.iter().map(format_rational).collect();
                write!(f, "cyc({}):[{}]", c.conductor, parts.join(","))
            }
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("cyc(") {
            let (n, rest) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("bad cyclotomic literal {s:?}")))?;
            let n: u32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?;
            let body = rest
                .trim()
                .strip_prefix(':')
                .and_then(|b| b.trim().strip_prefix('['))
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad cyclotomic literal {s:?}")))?;
            let coeffs = if body.trim().is_empty() {
                vec![]
            } else {
                body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            ExactScalar::cyclotomic(n, coeffs)
        } else {
            parse_rational(s).map(ExactScalar::Rational)
        }
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(ExactScalar::from_i64(n)),
        }
    }
}

/// Sign of a rational number as -1, 0, 1.
pub fn rational_sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, euler_phi(105) as usize);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..20u32 {
            let mut s = ExactScalar::zero();
            for k in 0..n as i64 {
                s = &s + &ExactScalar::root_of_unity(n, k);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn powers_and_demotion() {
        let i = ExactScalar::root_of_unity(4, 1);
        assert_eq!(&i * &i, ExactScalar::from_i64(-1));
        let w = ExactScalar::root_of_unity(3, 1);
        assert_eq!(w.pow(3), ExactScalar::one());
        // ζ_6^2 = ζ_3 across conductors
        assert_eq!(ExactScalar::root_of_unity(6, 2), w);
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = &ExactScalar::root_of_unity(5, 1) + &ExactScalar::from_i64(2);
        let zi = z.inv().unwrap();
        assert_eq!(&z * &zi, ExactScalar::one());
        let w = ExactScalar::root_of_unity(7, 3);
        assert_eq!(w.conj(), ExactScalar::root_of_unity(7, 4));
        assert_eq!(&w * &w.conj(), ExactScalar::one());
        assert_eq!(ExactScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_print() {
        let a: ExactScalar = "-3/6".parse().unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let c: ExactScalar = "cyc(3):[0,1]".parse().unwrap();
        assert_eq!(c, ExactScalar::root_of_unity(3, 1));
        assert_eq!(c.to_string(), "cyc(3):[0,1]");
        let d: ExactScalar = "cyc(4):[0,0,1]".parse().unwrap();
        assert_eq!(d, ExactScalar::from_i64(-1));
        assert!("1/0".parse::<ExactScalar>().is_err());
    }
}
