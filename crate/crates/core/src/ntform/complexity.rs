//! Split order, dilatation and deviation, iterates, Nielsen growth and
//! shearing degrees.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::classes::{IndexedOrbitTable, OrbitRow};
use super::{lcm, perm_pow, NTDecomposition, Piece, PieceKind, PointOrbit, ReductionAnnulus, Site};
use crate::error::{Error, Result};
use crate::kernel::scalar::format_rational;
use crate::kernel::RealAlgebraic;
use crate::torus::IntegerMatrix2;

/// Least `d` such that `f^d` is the identity on the periodic part and on
/// every pA boundary circle, and fixes each pA piece.
pub fn split_order(nt: &NTDecomposition) -> u64 {
    let mut d = 1;
    for (i, p) in nt.pieces.iter().enumerate() {
        let len = nt.piece_period(i);
        d = lcm(d, if p.kind == PieceKind::Periodic { len * p.order.unwrap_or(1) } else { len });
    }
    for (c, circle) in nt.circles.iter().enumerate() {
        if nt.pieces[circle.piece].kind == PieceKind::PseudoAnosov {
            let k = circle.singularities;
            d = lcm(d, nt.circle_period(c) * (k / k.gcd(&circle.rotation)));
        }
    }
    d
}

/// `Dil = μ^{1/d}` where `μ` is the largest stretch factor of `f^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dilatation {
    pub base: RealAlgebraic,
    pub root: u64,
}

impl Dilatation {
    pub fn is_one(&self) -> bool {
        self.base == RealAlgebraic::from_i64(1)
    }

    /// `other = self^m`, decided exactly: `μ'^d = μ^{m·d'}`.
    pub fn is_power(&self, other: &Dilatation, m: u64) -> bool {
        other.base.pow(self.root as u32) == self.base.pow((m * other.root) as u32)
    }

    /// `self` and `other` denote the same real number.
    pub fn same_value(&self, other: &Dilatation) -> bool {
        self.is_power(other, 1)
    }

    /// Rational bracket of the value, each end within `10^{-digits}`.
    pub fn bracket(&self, digits: u32) -> (BigRational, BigRational) {
        let mut b = self.base.clone();
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let eps = BigRational::new(BigInt::one(), num_traits::pow(scale.clone(), self.root as usize) * 1000);
        b.refine_to(&eps);
        let (lo, hi) = b.interval();
        let (l, _) = nth_root_bracket(&lo, self.root as u32, &scale);
        let (_, h) = nth_root_bracket(&hi, self.root as u32, &scale);
        (l, h)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        if self.root == 1 {
            return self.base.to_decimal(digits);
        }
        let (lo, hi) = self.bracket(digits as u32 + 3);
        RealAlgebraic::Rational((lo + hi) / BigRational::from_integer(2.into())).to_decimal(digits)
    }
}

impl std::fmt::Display for Dilatation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^(1/{})", self.base, self.root)
        }
    }
}

/// `[⌊x^{1/n}·s⌋/s, (⌊x^{1/n}·s⌋+1)/s]` for `x ≥ 0`.
fn nth_root_bracket(x: &BigRational, n: u32, scale: &BigInt) -> (BigRational, BigRational) {
    let num = x.numer() * num_traits::pow(scale.clone(), n as usize);
    let r = (num / x.denom()).nth_root(n);
    let s = BigRational::from_integer(scale.clone());
    (BigRational::from_integer(r.clone()) / &s, BigRational::from_integer(r + 1) / &s)
}

pub fn dilatation(nt: &NTDecomposition) -> Dilatation {
    let d = split_order(nt);
    let best = nt
        .pieces
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.stretch.as_ref().map(|l| l.pow((d / nt.piece_period(i)) as u32)))
        .max();
    match best {
        Some(mu) => Dilatation { base: mu, root: d },
        None => Dilatation { base: RealAlgebraic::from_i64(1), root: 1 },
    }
}

/// `max |k_U| / d` over annuli, where `k_U` is the twist of `f^d` on `U`;
/// zero when there is no pA part.
pub fn deviation(nt: &NTDecomposition) -> BigRational {
    if !nt.has_pa() {
        return BigRational::zero();
    }
    nt.annuli
        .iter()
        .enumerate()
        .map(|(u, a)| a.twist.abs() / BigRational::from_integer(nt.annulus_period(u).into()))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Deviation ignores twisting when the pA part is empty; say so.
pub fn deviation_warning(nt: &NTDecomposition) -> Option<String> {
    if nt.has_pa() {
        return None;
    }
    let twisted: Vec<String> = nt
        .annuli
        .iter()
        .filter(|a| !a.twist.is_zero())
        .map(|a| format!("{} ({})", a.name, format_rational(&a.twist)))
        .collect();
    (!twisted.is_empty()).then(|| format!("deviation set to 0 (no pA part) although annuli twist: {}", twisted.join(", ")))
}

/// The normal form of `f^m`.
pub fn iterate(nt: &NTDecomposition, m: u64) -> Result<NTDecomposition> {
    if m == 0 {
        return Err(Error::InvalidInput("iterate must be at least 1".into()));
    }
    let pieces = nt
        .pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let g = nt.piece_period(i).gcd(&m);
            let e = m / g;
            Piece {
                name: p.name.clone(),
                kind: p.kind,
                euler: p.euler,
                stretch: p.stretch.as_ref().map(|l| l.pow(e as u32)),
                order: p.order.map(|n| n / n.gcd(&e)),
                complete_upto: p.complete_upto.map(|n| n / m),
            }
        })
        .collect();
    let circles = nt
        .circles
        .iter()
        .enumerate()
        .map(|(c, x)| {
            let e = m / nt.circle_period(c).gcd(&m);
            let mut y = x.clone();
            if y.singularities > 0 {
                y.rotation = (y.rotation * (e % y.singularities)) % y.singularities;
            }
            y
        })
        .collect();
    let annuli = nt
        .annuli
        .iter()
        .enumerate()
        .map(|(u, a)| {
            let e = m / nt.annulus_period(u).gcd(&m);
            ReductionAnnulus { twist: &a.twist * BigRational::from_integer(e.into()), ..a.clone() }
        })
        .collect();
    let mut points = Vec::new();
    for x in &nt.points {
        let g = x.period.gcd(&m);
        let e = m / g;
        let mut site = x.site;
        for j in 0..g {
            points.push(PointOrbit {
                name: if g == 1 { x.name.clone() } else { format!("{}.{j}", x.name) },
                site,
                period: x.period / g,
                prongs: x.prongs,
                rotation: if x.prongs > 0 { (x.rotation * (e % x.prongs)) % x.prongs } else { 0 },
            });
            site = match site {
                Site::Piece(i) => Site::Piece(nt.piece_map[i]),
                Site::Annulus(u) => Site::Annulus(nt.annulus_map[u]),
            };
        }
    }
    let out = NTDecomposition {
        pieces,
        circles,
        annuli,
        points,
        piece_map: perm_pow(&nt.piece_map, m),
        circle_map: perm_pow(&nt.circle_map, m),
        annulus_map: perm_pow(&nt.annulus_map, m),
    };
    out.validate().map_err(|e| Error::Internal(format!("iterate {m} is malformed: {e}")))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthEstimate {
    pub m: u64,
    pub n_m: u64,
    /// `lo ≤ max(1, N_m)^{1/m} ≤ hi`.
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NielsenGrowth {
    pub estimates: Vec<GrowthEstimate>,
}

impl NielsenGrowth {
    /// Certified upper bound on `|estimate_m − Dil| / Dil`.
    pub fn relative_gap(&self, m: u64, dil: &Dilatation) -> Option<BigRational> {
        let e = self.estimates.iter().find(|e| e.m == m)?;
        let (dl, dh) = dil.bracket(15);
        let up = &e.hi - &dl;
        let down = &dh - &e.lo;
        let worst = if up > down { up } else { down };
        Some(if worst.is_negative() { BigRational::zero() } else { worst / dl })
    }

    /// The estimate at `m` is certified to lie within `tol` (relative) of `dil`.
    pub fn within(&self, m: u64, dil: &Dilatation, tol: &BigRational) -> bool {
        self.relative_gap(m, dil).is_some_and(|g| &g <= tol)
    }
}

/// Brackets `max(1, N_m)^{1/m}` to twelve decimals for every row.
pub fn dilatation_from_nielsen(table: &IndexedOrbitTable) -> Result<NielsenGrowth> {
    if table.rows.is_empty() {
        return Err(Error::InvalidInput("empty orbit table".into()));
    }
    let scale = num_traits::pow(BigInt::from(10), 12);
    let estimates = table
        .rows
        .iter()
        .map(|r| {
            let n = BigRational::from_integer(r.n_m.max(1).into());
            let (lo, hi) = if r.n_m <= 1 { (BigRational::one(), BigRational::one()) } else { nth_root_bracket(&n, r.m as u32, &scale) };
            GrowthEstimate { m: r.m, n_m: r.n_m, lo, hi }
        })
        .collect();
    Ok(NielsenGrowth { estimates })
}

/// Orbit table of the linear toral map `A`: `A^m` has `|det(A^m − I)|`
/// fixed points, each its own class, all of index `sign det(I − A^m)`.
/// Rows count fixed classes of `A^m` (not their `A`-orbits), so
/// `N_m = |det(A^m − I)|`.
pub fn anosov_model_table(a: &IntegerMatrix2, upto: u64) -> IndexedOrbitTable {
    let rows = (1..=upto)
        .map(|m| {
            let p = a.pow(m as u32);
            // det(I − P) = 1 − tr P + det P
            let d = BigInt::one() - p.trace() + p.det();
            let mut nu = BTreeMap::new();
            if !d.is_zero() {
                let count: u64 = d.magnitude().try_into().unwrap_or(u64::MAX);
                nu.insert(if d.is_positive() { 1 } else { -1 }, count);
            }
            OrbitRow::from_counts(m, nu)
        })
        .collect();
    IndexedOrbitTable { rows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shearing {
    Degree(BigInt),
    Trivial,
}

impl std::fmt::Display for Shearing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shearing::Degree(n) => write!(f, "{n}"),
            Shearing::Trivial => write!(f, "trivial"),
        }
    }
}

impl Serialize for Shearing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Order of `Z² / ⟨g, g*⟩`, or trivial when the slopes are parallel.
pub fn shearing_from_slopes(g: (BigInt, BigInt), gstar: (BigInt, BigInt)) -> Result<Shearing> {
    if (g.0.is_zero() && g.1.is_zero()) || (gstar.0.is_zero() && gstar.1.is_zero()) {
        return Err(Error::ZeroSlope);
    }
    let d = &g.0 * &gstar.1 - &g.1 * &gstar.0;
    Ok(if d.is_zero() { Shearing::Trivial } else { Shearing::Degree(d.abs()) })
}
