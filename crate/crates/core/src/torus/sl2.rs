//! Conjugacy in `SL(2, Z)` by reduction to normal forms with tracked conjugators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix2::IntegerMatrix2;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sl2Verdict {
    /// `witness·A·witness⁻¹ = B`.
    Conjugate { witness: IntegerMatrix2 },
    NotConjugate { reason: String },
}

impl Sl2Verdict {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Sl2Verdict::Conjugate { .. })
    }
}

/// The conjugacy-class invariant of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassInvariant {
    Scalar(i32),
    /// `sign · [[1, n], [0, 1]]`.
    Parabolic { sign: i32, shift: BigInt },
    /// Fixed point `i` or `ρ` of the standard fundamental domain.
    Elliptic(IntegerMatrix2),
    /// `sign ·` a positive word in `L = [[1,0],[1,1]]`, `R = [[1,1],[0,1]]`,
    /// as its lexicographically least rotation.
    Hyperbolic { sign: i32, word: String },
}

impl fmt::Display for ClassInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &i32| if *s < 0 { "-" } else { "" };
        match self {
            ClassInvariant::Scalar(s) => write!(f, "{}I", sign(s)),
            ClassInvariant::Parabolic { sign: s, shift } => write!(f, "{}R^{}", sign(s), shift),
            ClassInvariant::Elliptic(m) => write!(f, "elliptic {m}"),
            ClassInvariant::Hyperbolic { sign: s, word } => write!(f, "{}{}", sign(s), compress(word)),
        }
    }
}

/// `RRRLL` → `R^3 L^2`.
fn compress(word: &str) -> String {
    let mut out: Vec<String> = Vec::new();
    let b = word.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let j = (i..b.len()).find(|&j| b[j] != b[i]).unwrap_or(b.len());
        let letter = b[i] as char;
        out.push(if j - i == 1 { letter.to_string() } else { format!("{letter}^{}", j - i) });
        i = j;
    }
    out.join(" ")
}

/// A normal form `X·M·X⁻¹` together with `X`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub invariant: ClassInvariant,
    pub form: IntegerMatrix2,
    pub conjugator: IntegerMatrix2,
}

fn r_pow(k: &BigInt) -> IntegerMatrix2 {
    IntegerMatrix2::new(1, k.clone(), 0, 1)
}

fn l_pow(k: &BigInt) -> IntegerMatrix2 {
    IntegerMatrix2::new(1, 0, k.clone(), 1)
}

fn s_mat() -> IntegerMatrix2 {
    IntegerMatrix2::new(0, -1, 1, 0)
}

struct Tracker {
    m: IntegerMatrix2,
    x: IntegerMatrix2,
}

impl Tracker {
    fn apply(&mut self, y: IntegerMatrix2) {
        self.m = self.m.conjugate_by(&y);
        self.x = y.mul(&self.x);
    }
}

pub fn normal_form(m: &IntegerMatrix2) -> Result<NormalForm> {
    if !m.is_sl2() {
        return Err(Error::NotUnimodular(m.det().to_string()));
    }
    let tr = m.trace();
    let two = BigInt::from(2);
    if m.is_scalar() {
        let s = if m.a.is_positive() { 1 } else { -1 };
        return Ok(NormalForm { invariant: ClassInvariant::Scalar(s), form: m.clone(), conjugator: IntegerMatrix2::identity() });
    }
    let sign = if tr.is_negative() { -1 } else { 1 };
    let base = if sign < 0 { m.neg() } else { m.clone() };
    if tr.abs() == two {
        return Ok(parabolic(&base, sign));
    }
    if tr.abs() < two {
        return Ok(elliptic(m));
    }
    Ok(hyperbolic(&base, sign))
}

fn parabolic(m: &IntegerMatrix2, sign: i32) -> NormalForm {
    // fixed vector of M − I, made primitive
    let (mut p, mut q) = if !m.b.is_zero() || !m.a.is_one() {
        (m.b.clone(), BigInt::one() - &m.a)
    } else {
        (&m.d - 1, -&m.c)
    };
    let g = p.gcd(&q);
    p /= &g;
    q /= &g;
    // complete (p, q) to Y⁻¹ = [[p, x], [q, y]] with p·y − q·x = 1
    let e = p.extended_gcd(&q);
    let (y, x) = if e.gcd.is_one() { (e.x, -e.y) } else { (-e.x, e.y) };
    let yinv = IntegerMatrix2::new(p, x, q, y);
    debug_assert!(yinv.is_sl2());
    let conj = yinv.sl2_inverse();
    let form = m.conjugate_by(&conj);
    debug_assert!(form.c.is_zero() && form.a.is_one());
    let sgn = |f: IntegerMatrix2| if sign < 0 { f.neg() } else { f };
    NormalForm {
        invariant: ClassInvariant::Parabolic { sign, shift: form.b.clone() },
        form: sgn(form),
        conjugator: conj,
    }
}

fn elliptic(m: &IntegerMatrix2) -> NormalForm {
    // Fixed point z = x + iy in the upper half plane; track x and y².
    let tr = m.trace();
    let c2 = BigInt::from(2) * &m.c;
    let mut x = BigRational::new(&m.a - &m.d, c2.clone());
    let mut y2 = BigRational::new(BigInt::from(4) - &tr * &tr, &c2 * &c2);
    let mut t = Tracker { m: m.clone(), x: IntegerMatrix2::identity() };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    loop {
        let k = (&x + &half).floor().to_integer();
        if !k.is_zero() {
            x -= BigRational::from_integer(k.clone());
            t.apply(r_pow(&-k));
        }
        let n2 = &x * &x + &y2;
        if n2 < one {
            x = -&x / &n2;
            y2 = &y2 / (&n2 * &n2);
            t.apply(s_mat());
            continue;
        }
        if x == half {
            x -= &one;
            t.apply(r_pow(&-BigInt::one()));
        }
        if n2 == one && x.is_positive() {
            t.apply(s_mat());
        }
        break;
    }
    NormalForm { invariant: ClassInvariant::Elliptic(t.m.clone()), form: t.m, conjugator: t.x }
}

fn hyperbolic(m: &IntegerMatrix2, sign: i32) -> NormalForm {
    let mut t = Tracker { m: m.clone(), x: IntegerMatrix2::identity() };
    // Move the two real fixed points (roots of c z² + (d − a) z − b) until
    // they straddle 0, which makes all entries positive.
    loop {
        let (a, b, c, d) = (&t.m.a, &t.m.b, &t.m.c, &t.m.d);
        let f = |n: &BigInt| c * n * n + (d - a) * n - b;
        let vertex = BigRational::new(a - d, BigInt::from(2) * c).floor().to_integer();
        let inside = [vertex.clone(), &vertex + 1].into_iter().find(|n| f(n).signum() == -c.signum());
        if let Some(n) = inside {
            t.apply(r_pow(&-n));
            if t.m.c.is_negative() {
                t.apply(s_mat());
            }
            break;
        }
        t.apply(r_pow(&-vertex));
        t.apply(l_pow(&-BigInt::one()));
    }
    debug_assert!(t.m.is_nonnegative());
    let word = lr_word(&t.m);
    // least rotation w[i..] + w[..i]; conjugating by P⁻¹ with P = w[..i]
    let n = word.len();
    let i = (0..n).min_by_key(|&i| format!("{}{}", &word[i..], &word[..i])).unwrap_or(0);
    let p = word_matrix(&word[..i]);
    t.apply(p.sl2_inverse());
    let word = format!("{}{}", &word[i..], &word[..i]);
    debug_assert_eq!(word_matrix(&word), t.m);
    let form = if sign < 0 { t.m.neg() } else { t.m.clone() };
    NormalForm { invariant: ClassInvariant::Hyperbolic { sign, word }, form, conjugator: t.x }
}

/// Factorization of a nonnegative determinant-one matrix into `L` and `R`.
fn lr_word(m: &IntegerMatrix2) -> String {
    let mut m = m.clone();
    let mut out = String::new();
    while m != IntegerMatrix2::identity() {
        if m.a >= m.c && m.b >= m.d {
            m = IntegerMatrix2::new(&m.a - &m.c, &m.b - &m.d, m.c.clone(), m.d.clone());
            out.push('R');
        } else {
            m = IntegerMatrix2::new(m.a.clone(), m.b.clone(), &m.c - &m.a, &m.d - &m.b);
            out.push('L');
        }
    }
    out
}

fn word_matrix(w: &str) -> IntegerMatrix2 {
    let one = BigInt::one();
    w.chars().fold(IntegerMatrix2::identity(), |acc, ch| acc.mul(&if ch == 'R' { r_pow(&one) } else { l_pow(&one) }))
}

/// Decides conjugacy in `SL(2, Z)`; a witness is re-verified before it is returned.
pub fn sl2_conjugate(a: &IntegerMatrix2, b: &IntegerMatrix2) -> Result<Sl2Verdict> {
    for m in [a, b] {
        if !m.is_sl2() {
            return Err(Error::NotUnimodular(m.det().to_string()));
        }
    }
    if a.trace() != b.trace() {
        return Ok(Sl2Verdict::NotConjugate { reason: format!("traces differ ({} vs {})", a.trace(), b.trace()) });
    }
    let na = normal_form(a)?;
    let nb = normal_form(b)?;
    if na.form != nb.form {
        return Ok(Sl2Verdict::NotConjugate {
            reason: format!("normal forms differ ({} vs {})", na.invariant, nb.invariant),
        });
    }
    let witness = nb.conjugator.sl2_inverse().mul(&na.conjugator);
    if !witness.is_sl2() || a.conjugate_by(&witness) != *b {
        return Err(Error::Internal(format!("SL2 witness {witness} fails verification")));
    }
    Ok(Sl2Verdict::Conjugate { witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: [[i64; 2]; 2]) -> IntegerMatrix2 {
        IntegerMatrix2::from_rows(r)
    }

    /// Entry-bounded search for `X` with `X·A = B·X`, `det X = 1`.
    fn brute(a: &IntegerMatrix2, b: &IntegerMatrix2, bound: i64) -> bool {
        let v = |m: &IntegerMatrix2| -> [i64; 4] { m.entries().map(|x| i64::try_from(x).unwrap()) };
        let [a0, a1, a2, a3] = v(a);
        let [b0, b1, b2, b3] = v(b);
        let r = -bound..=bound;
        for p in r.clone() {
            for q in r.clone() {
                for s in r.clone() {
                    for u in r.clone() {
                        if p * u - q * s == 1
                            && p * a0 + q * a2 == b0 * p + b1 * s
                            && p * a1 + q * a3 == b0 * q + b1 * u
                            && s * a0 + u * a2 == b2 * p + b3 * s
                            && s * a1 + u * a3 == b2 * q + b3 * u
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn stebe_pair() {
        let a = m([[188, 275], [121, 177]]);
        let b = m([[188, 11], [3025, 177]]);
        assert!(!sl2_conjugate(&a, &b).unwrap().is_conjugate());
        assert!(matches!(sl2_conjugate(&a, &a).unwrap(), Sl2Verdict::Conjugate { .. }));
    }

    #[test]
    fn small_examples() {
        let a = m([[2, 1], [1, 1]]);
        let b = m([[1, 1], [1, 2]]);
        assert!(brute(&a, &b, 10));
        assert!(sl2_conjugate(&a, &b).unwrap().is_conjugate());
        assert!(!sl2_conjugate(&a, &m([[3, 1], [2, 1]])).unwrap().is_conjugate());
        // S and S⁻¹ are not conjugate; neither are R and R⁻¹
        assert!(!sl2_conjugate(&m([[0, -1], [1, 0]]), &m([[0, 1], [-1, 0]])).unwrap().is_conjugate());
        assert!(!sl2_conjugate(&m([[1, 1], [0, 1]]), &m([[1, -1], [0, 1]])).unwrap().is_conjugate());
        assert!(sl2_conjugate(&m([[1, 1], [0, 1]]), &m([[1, 0], [-1, 1]])).unwrap().is_conjugate());
        assert!(sl2_conjugate(&m([[-1, 0], [0, -1]]), &m([[-1, 0], [0, -1]])).unwrap().is_conjugate());
        assert!(matches!(sl2_conjugate(&m([[2, 0], [0, 1]]), &a), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn agrees_with_bounded_search() {
        // all SL2 matrices with entries in [-3, 3], compared pairwise within a trace
        let mut mats = Vec::new();
        for p in -3..=3i64 {
            for q in -3..=3 {
                for r in -3..=3 {
                    for s in -3..=3 {
                        if p * s - q * r == 1 {
                            mats.push(m([[p, q], [r, s]]));
                        }
                    }
                }
            }
        }
        for (i, x) in mats.iter().enumerate() {
            for y in &mats[i..] {
                if x.trace() != y.trace() {
                    continue;
                }
                let v = sl2_conjugate(x, y).unwrap();
                if !v.is_conjugate() {
                    assert!(!brute(x, y, 6), "{x} ~ {y} missed");
                }
            }
        }
    }
}
