use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntegerMatrix2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        IntegerMatrix2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn from_rows(m: [[i64; 2]; 2]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_sl2(&self) -> bool {
        self.det().is_one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        IntegerMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Inverse of a determinant-one matrix.
    pub fn sl2_inverse(&self) -> Self {
        debug_assert!(self.is_sl2());
        Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `Y·self·Y⁻¹` for `Y` of determinant one.
    pub fn conjugate_by(&self, y: &Self) -> Self {
        y.mul(self).mul(&y.sl2_inverse())
    }

    /// Entries reduced into `[0, n)`.
    pub fn reduce_mod(&self, n: &BigInt) -> Self {
        let r = |x: &BigInt| x.mod_floor(n);
        Self::new(r(&self.a), r(&self.b), r(&self.c), r(&self.d))
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_rows(&self) -> [[BigInt; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries().iter().all(|x| !x.is_negative())
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }
}

impl fmt::Display for IntegerMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `"a,b;c,d"` (whitespace and surrounding brackets are ignored).
impl FromStr for IntegerMatrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && !"[]()".contains(*c)).collect();
        let rows: Vec<&str> = cleaned.split(';').collect();
        let bad = || Error::Parse(format!("expected a 2x2 matrix \"a,b;c,d\", got {s:?}"));
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut v = Vec::new();
        for r in rows {
            let parts: Vec<&str> = r.split(',').collect();
            if parts.len() != 2 {
                return Err(bad());
            }
            for p in parts {
                v.push(p.parse::<BigInt>().map_err(|_| bad())?);
            }
        }
        let [a, b, c, d]: [BigInt; 4] = v.try_into().map_err(|_| bad())?;
        Ok(IntegerMatrix2 { a, b, c, d })
    }
}

impl serde::Serialize for IntegerMatrix2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [[self.a.to_string(), self.b.to_string()], [self.c.to_string(), self.d.to_string()]];
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let m: IntegerMatrix2 = "188,275;121,177".parse().unwrap();
        assert_eq!(m, IntegerMatrix2::from_rows([[188, 275], [121, 177]]));
        assert!(m.is_sl2());
        assert_eq!(m.to_string(), "188,275;121,177");
        assert!("1,2,3;4".parse::<IntegerMatrix2>().is_err());
        assert_eq!("[ -1, 0 ; 0, -1 ]".parse::<IntegerMatrix2>().unwrap(), IntegerMatrix2::identity().neg());
    }

    #[test]
    fn powers_and_inverse() {
        let a = IntegerMatrix2::from_rows([[2, 1], [1, 1]]);
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert_eq!(a.mul(&a.sl2_inverse()), IntegerMatrix2::identity());
    }
}
