//! Small finite groups with multiplication tables, conjugacy classes computed
//! from the table, and character tables checked against orthogonality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::ExactScalar;

#[derive(Clone, Debug, Serialize)]
pub struct FiniteGroupTable {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(skip)]
    pub mult: Vec<Vec<usize>>,
    /// Classes in order of their least element; class 0 holds the identity.
    pub classes: Vec<Vec<usize>>,
    #[serde(skip)]
    pub class_of: Vec<usize>,
    /// Smallest `n` with every character value in `Q(ζ_n)`.
    pub conductor: u32,
    /// `characters[ρ][c]`, irreducibles ordered by degree (trivial first).
    pub characters: Vec<Vec<ExactScalar>>,
    /// The same values as polynomials in `ζ`, living in `Z[x]/(x^n − 1)`
    /// with `n` the conductor.
    #[serde(skip)]
    pub(crate) lifts: Vec<Vec<Lift>>,
}

/// An element of `Z[x]/(x^n − 1)`, which maps onto `Z[ζ_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lift(pub Vec<i128>);

impl Lift {
    pub fn zero(n: u32) -> Self {
        Lift(vec![0; n as usize])
    }

    pub fn monomial(n: u32, c: i128, e: i64) -> Self {
        let mut v = Self::zero(n);
        v.0[e.rem_euclid(n as i64) as usize] = c;
        v
    }

    pub fn conj(&self) -> Self {
        let n = self.0.len();
        Lift((0..n).map(|i| self.0[(n - i) % n]).collect())
    }

    pub fn add_scaled(&mut self, other: &Lift, c: i128) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += c * y;
        }
    }

    /// `self += a·b`, skipping the zero terms of `a`.
    pub fn add_product(&mut self, a: &Lift, b: &Lift) {
        let n = self.0.len();
        for (i, &x) in a.0.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.0.iter().enumerate().filter(|(_, y)| **y != 0) {
                self.0[(i + j) % n] += x * y;
            }
        }
    }

    pub fn value(&self) -> ExactScalar {
        let n = self.0.len() as u32;
        let coeffs = self.0.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        ExactScalar::cyclotomic(n, coeffs).expect("positive conductor")
    }
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.mult[g][h] == 0).expect("group element without inverse")
    }

    /// Builds classes from the table; `values(ρ, g)` supplies characters
    /// element by element and must be constant on classes.
    fn assemble(
        name: String,
        elements: Vec<String>,
        mult: Vec<Vec<usize>>,
        conductor: u32,
        irreps: usize,
        values: impl Fn(usize, usize) -> Lift,
    ) -> Result<Self> {
        let n = elements.len();
        let mut t = FiniteGroupTable {
            name,
            elements,
            mult,
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            conductor,
            characters: Vec::new(),
            lifts: Vec::new(),
        };
        for g in 0..n {
            if t.class_of[g] != usize::MAX {
                continue;
            }
            let id = t.classes.len();
            let mut class: Vec<usize> = (0..n).map(|h| t.mult[t.mult[h][g]][t.inverse(h)]).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                t.class_of[x] = id;
            }
            t.classes.push(class);
        }
        for rho in 0..irreps {
            let row: Vec<Lift> = t.classes.iter().map(|c| values(rho, c[0])).collect();
            for (c, class) in t.classes.iter().enumerate() {
                if class.iter().any(|&g| values(rho, g).value() != row[c].value()) {
                    return Err(Error::Internal(format!("character {rho} of {} is not a class function", t.name)));
                }
            }
            t.characters.push(row.iter().map(Lift::value).collect());
            t.lifts.push(row);
        }
        t.verify()?;
        Ok(t)
    }

    /// Row orthogonality, class sizes, and a square table.
    pub fn verify(&self) -> Result<()> {
        let n = self.order();
        if self.classes.iter().map(Vec::len).sum::<usize>() != n {
            return Err(Error::Internal(format!("class sizes of {} do not add up", self.name)));
        }
        if self.characters.len() != self.class_count() {
            return Err(Error::Internal(format!("{} has {} characters for {} classes", self.name, self.characters.len(), self.class_count())));
        }
        for (r, a) in self.lifts.iter().enumerate() {
            for (s, b) in self.lifts.iter().enumerate() {
                let mut ip = Lift::zero(self.conductor);
                for (c, class) in self.classes.iter().enumerate() {
                    let mut term = Lift::zero(self.conductor);
                    term.add_product(&a[c], &b[c].conj());
                    ip.add_scaled(&term, class.len() as i128);
                }
                let ip = ip.value();
                let want = ExactScalar::from_i64(if r == s { n as i64 } else { 0 });
                if ip != want {
                    return Err(Error::Internal(format!("characters {r} and {s} of {} are not orthogonal", self.name)));
                }
            }
        }
        Ok(())
    }

    /// `Σ_g a(g)·conj(b(g))` for class functions `a`, `b`.
    pub fn inner_sum(&self, a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (c, class) in self.classes.iter().enumerate() {
            acc = &acc + &(&ExactScalar::from_i64(class.len() as i64) * &(&a[c] * &b[c].conj()));
        }
        acc
    }

    /// Multiplicities `⟨f, χ_ρ⟩` of a class function.
    pub fn decompose(&self, f: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if f.len() != self.class_count() {
            return Err(Error::ClassIdMismatch(f.len()));
        }
        let n = ExactScalar::from_i64(self.order() as i64);
        self.characters.iter().map(|chi| &self.inner_sum(f, chi) / &n).map(Ok).collect()
    }
}

impl fmt::Display for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} of order {}", self.name, self.order())?;
        for (c, class) in self.classes.iter().enumerate() {
            writeln!(f, "class {c}: size {} rep {}", class.len(), self.elements[class[0]])?;
        }
        for (r, row) in self.characters.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "chi{r}: {}", vals.join(" "))?;
        }
        Ok(())
    }
}

fn cyclic(n: usize) -> Result<FiniteGroupTable> {
    let elements = (0..n).map(|j| j.to_string()).collect();
    let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroupTable::assemble(format!("cyclic({n})"), elements, mult, n as u32, n, |k, j| Lift::monomial(n as u32, 1, (j * k) as i64))
}

/// `r^a s^b` at position `2a + b`, with `s r s = r⁻¹`.
fn dihedral(name: &str, n: usize, chars: &[&dyn Fn(usize, usize) -> i64]) -> Result<FiniteGroupTable> {
    let pos = |a: usize, b: usize| 2 * a + b;
    let mut elements = Vec::new();
    for a in 0..n {
        for b in 0..2 {
            elements.push(match (a, b) {
                (0, 0) => "e".to_string(),
                (0, 1) => "s".into(),
                (1, 0) => "r".into(),
                (1, 1) => "rs".into(),
                (_, 0) => format!("r^{a}"),
                _ => format!("r^{a}s"),
            });
        }
    }
    let mult = (0..2 * n)
        .map(|x| {
            let (a, b) = (x / 2, x % 2);
            (0..2 * n)
                .map(|y| {
                    let (c, d) = (y / 2, y % 2);
                    let c = if b == 1 { (n - c) % n } else { c };
                    pos((a + c) % n, (b + d) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroupTable::assemble(name.into(), elements, mult, 1, chars.len(), |rho, x| Lift::monomial(1, chars[rho](x / 2, x % 2) as i128, 0))
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn s3() -> Result<FiniteGroupTable> {
    dihedral("S3", 3, &[&|_, _| 1, &|_, b| sign(b), &|a, b| if b == 1 { 0 } else if a == 0 { 2 } else { -1 }])
}

fn d4() -> Result<FiniteGroupTable> {
    dihedral(
        "D4",
        4,
        &[&|_, _| 1, &|_, b| sign(b), &|a, _| sign(a), &|a, b| sign(a + b), &|a, b| if b == 1 { 0 } else { [2, 0, -2, 0][a] }],
    )
}

/// `±1, ±i, ±j, ±k` at position `2u + s` (unit `u`, sign bit `s`).
fn q8() -> Result<FiniteGroupTable> {
    // unit products: (sign, unit) for u·v with units 1, i, j, k
    const PROD: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let names = ["1", "i", "j", "k"];
    let elements = (0..8).map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2])).collect();
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = PROD[x / 2][y / 2];
                    2 * u + (s + x % 2 + y % 2) % 2
                })
                .collect()
        })
        .collect();
    // linear characters are trivial on ±1 and on the kernel unit
    let linear = |kept: usize| move |u: usize| if u == 0 || u == kept { 1 } else { -1 };
    let chars: [&dyn Fn(usize, usize) -> i64; 5] = [
        &|_, _| 1,
        &|u, _| linear(1)(u),
        &|u, _| linear(2)(u),
        &|u, _| linear(3)(u),
        &|u, s| if u == 0 { 2 * sign(s) } else { 0 },
    ];
    FiniteGroupTable::assemble("Q8".into(), elements, mult, 1, 5, |rho, x| Lift::monomial(1, chars[rho](x / 2, x % 2) as i128, 0))
}

/// `cyclic(n)` (also `C<n>`, `Z/<n>`) for `n ≤ 60`, `S3`, `D4`, `Q8`.
pub fn builtin_group(name: &str) -> Result<FiniteGroupTable> {
    let key = name.trim();
    let lower = key.to_ascii_lowercase();
    let n = lower
        .strip_prefix("cyclic(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| lower.strip_prefix("z/"))
        .or_else(|| lower.strip_prefix('c'))
        .and_then(|s| s.trim().parse::<usize>().ok());
    if let Some(n) = n {
        return if (1..=60).contains(&n) { cyclic(n) } else { Err(Error::UnknownGroup(format!("{key} (cyclic order must be 1..=60)"))) };
    }
    match lower.as_str() {
        "s3" | "d3" => s3(),
        "d4" | "d8" => d4(),
        "q8" => q8(),
        _ => Err(Error::UnknownGroup(key.into())),
    }
}

pub const BUILTIN_GROUPS: [&str; 7] = ["cyclic(1)", "cyclic(2)", "cyclic(6)", "cyclic(12)", "S3", "D4", "Q8"];
