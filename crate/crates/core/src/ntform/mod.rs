//! Nielsen–Thurston normal forms, treated symbolically: pieces, reduction
//! annuli and the permutation they undergo, plus the orbit data needed to
//! enumerate fixed point classes of iterates.
//!
//! Per-orbit data is always stated for the *first-return* map: if a piece
//! has `f_♯`-orbit length `p`, its stretch factor (or periodic order) is that
//! of `f^p` restricted to it. Circles and annuli follow the same rule.

mod classes;
mod complexity;
mod fixture;
mod graph;

#[cfg(test)]
mod tests;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::RealAlgebraic;

pub use classes::{
    fixed_point_classes, indexed_orbit_numbers, CaseTag, FixedClassRecord, FixedClassReport, IndexedOrbitTable, OrbitRow,
};
pub use complexity::{
    anosov_model_table, deviation, deviation_warning, dilatation, dilatation_from_nielsen, iterate, shearing_from_slopes,
    split_order, Dilatation, GrowthEstimate, NielsenGrowth, Shearing,
};
pub use fixture::{parse_nt, NtFile};
pub use graph::{geometric_graph, nt_graph, DecompositionGraph, ElementKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Periodic,
    PseudoAnosov,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub name: String,
    pub kind: PieceKind,
    pub euler: i64,
    /// pA only: stretch factor of the first-return map.
    pub stretch: Option<RealAlgebraic>,
    /// Periodic only: order of the first-return map.
    pub order: Option<u64>,
    /// pA only: declared point orbits are complete for periods up to this
    /// bound. `None` means no singularity data was supplied at all.
    pub complete_upto: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCircle {
    pub name: String,
    pub piece: usize,
    /// Boundary prongs (zero on periodic pieces).
    pub singularities: u64,
    /// Prong rotation of the first-return map, in units of one prong.
    pub rotation: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionAnnulus {
    pub name: String,
    pub ends: [usize; 2],
    /// Fractional Dehn twist coefficient of the first-return map.
    pub twist: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Site {
    Piece(usize),
    Annulus(usize),
}

/// An `f`-orbit of isolated points, given by one representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointOrbit {
    pub name: String,
    pub site: Site,
    pub period: u64,
    /// Prongs at a pA point (2 for a regular marked point, 0 elsewhere).
    pub prongs: u64,
    /// Prong rotation of `f^period` at the point.
    pub rotation: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NTDecomposition {
    pub pieces: Vec<Piece>,
    pub circles: Vec<BoundaryCircle>,
    pub annuli: Vec<ReductionAnnulus>,
    pub points: Vec<PointOrbit>,
    pub piece_map: Vec<usize>,
    pub circle_map: Vec<usize>,
    pub annulus_map: Vec<usize>,
}

pub(crate) fn orbit_len(perm: &[usize], mut i: usize) -> u64 {
    let start = i;
    let mut n = 0;
    loop {
        i = perm[i];
        n += 1;
        if i == start {
            return n;
        }
    }
}

/// Cycles of a permutation, each starting at its least element, in order of
/// that element.
pub(crate) fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut i = perm[s];
        while i != s {
            seen[i] = true;
            c.push(i);
            i = perm[i];
        }
        out.push(c);
    }
    out
}

pub(crate) fn perm_pow(perm: &[usize], m: u64) -> Vec<usize> {
    (0..perm.len())
        .map(|i| {
            let l = orbit_len(perm, i);
            let mut j = i;
            for _ in 0..(m % l) {
                j = perm[j];
            }
            j
        })
        .collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDecomposition(msg.into())
}

impl NTDecomposition {
    pub fn validate(&self) -> Result<()> {
        let (np, nc, na) = (self.pieces.len(), self.circles.len(), self.annuli.len());
        if self.piece_map.len() != np || self.circle_map.len() != nc || self.annulus_map.len() != na {
            return Err(bad("permutation sizes do not match the pieces"));
        }
        for (what, p) in [("piece", &self.piece_map), ("circle", &self.circle_map), ("annulus", &self.annulus_map)] {
            if !is_permutation(p) {
                return Err(bad(format!("the {what} map is not a bijection")));
            }
        }
        let mut names = std::collections::HashSet::new();
        let all = self.pieces.iter().map(|p| &p.name).chain(self.circles.iter().map(|c| &c.name)).chain(self.annuli.iter().map(|a| &a.name));
        for n in all.chain(self.points.iter().map(|p| &p.name)) {
            if !names.insert(n) {
                return Err(bad(format!("duplicate name {n}")));
            }
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if p.euler >= 0 {
                return Err(bad(format!("piece {} has Euler characteristic {} (must be negative)", p.name, p.euler)));
            }
            let q = &self.pieces[self.piece_map[i]];
            if q.kind != p.kind || q.euler != p.euler {
                return Err(bad(format!("f maps {} to a piece of a different type", p.name)));
            }
            match p.kind {
                PieceKind::PseudoAnosov => {
                    let Some(l) = &p.stretch else {
                        return Err(bad(format!("pA piece {} has no stretch factor", p.name)));
                    };
                    if l.cmp_rational(&BigRational::one()) != std::cmp::Ordering::Greater {
                        return Err(bad(format!("stretch factor of {} is not > 1", p.name)));
                    }
                    if q.stretch != p.stretch || q.complete_upto != p.complete_upto {
                        return Err(bad(format!("orbit of {} carries inconsistent pA data", p.name)));
                    }
                    if p.order.is_some() {
                        return Err(bad(format!("pA piece {} cannot have a periodic order", p.name)));
                    }
                }
                PieceKind::Periodic => {
                    match p.order {
                        Some(n) if n >= 1 => {}
                        _ => return Err(bad(format!("periodic piece {} needs an order ≥ 1", p.name))),
                    }
                    if q.order != p.order {
                        return Err(bad(format!("orbit of {} carries inconsistent orders", p.name)));
                    }
                    if p.stretch.is_some() || p.complete_upto.is_some() {
                        return Err(bad(format!("periodic piece {} cannot carry pA data", p.name)));
                    }
                }
            }
        }
        for (i, c) in self.circles.iter().enumerate() {
            if c.piece >= np {
                return Err(bad(format!("circle {} lies on no piece", c.name)));
            }
            let d = &self.circles[self.circle_map[i]];
            if d.piece != self.piece_map[c.piece] {
                return Err(bad(format!("f does not respect the attachment of circle {}", c.name)));
            }
            if d.singularities != c.singularities || d.rotation != c.rotation {
                return Err(bad(format!("orbit of circle {} carries inconsistent prong data", c.name)));
            }
            match self.pieces[c.piece].kind {
                PieceKind::PseudoAnosov => {
                    if c.singularities == 0 || c.rotation >= c.singularities {
                        return Err(bad(format!("circle {} needs k ≥ 1 prongs and rotation < k", c.name)));
                    }
                }
                PieceKind::Periodic => {
                    if c.singularities != 0 || c.rotation != 0 {
                        return Err(bad(format!("circle {} on a periodic piece cannot carry prongs", c.name)));
                    }
                }
            }
        }
        let mut attached = vec![false; nc];
        for (j, u) in self.annuli.iter().enumerate() {
            if u.ends[0] == u.ends[1] {
                return Err(bad(format!("annulus {} has both ends on one circle", u.name)));
            }
            for &e in &u.ends {
                if e >= nc {
                    return Err(bad(format!("annulus {} ends on an unknown circle", u.name)));
                }
                if std::mem::replace(&mut attached[e], true) {
                    return Err(bad(format!("circle {} is attached to two annulus ends", self.circles[e].name)));
                }
            }
            let v = &self.annuli[self.annulus_map[j]];
            let mut img = [self.circle_map[u.ends[0]], self.circle_map[u.ends[1]]];
            let mut tgt = v.ends;
            img.sort_unstable();
            tgt.sort_unstable();
            if img != tgt {
                return Err(bad(format!("f does not respect the ends of annulus {}", u.name)));
            }
            if v.twist != u.twist {
                return Err(bad(format!("orbit of annulus {} carries inconsistent twists", u.name)));
            }
            let periodic = u.ends.iter().all(|&e| self.pieces[self.circles[e].piece].kind == PieceKind::Periodic);
            if periodic && u.twist.is_zero() {
                return Err(bad(format!(
                    "annulus {} joins periodic pieces but some iterate fixes it (twist 0)",
                    u.name
                )));
            }
        }
        for x in &self.points {
            let len = match x.site {
                Site::Piece(i) if i < np => orbit_len(&self.piece_map, i),
                Site::Annulus(j) if j < na => orbit_len(&self.annulus_map, j),
                _ => return Err(bad(format!("point orbit {} sits nowhere", x.name))),
            };
            if x.period == 0 || x.period % len != 0 {
                return Err(bad(format!("period of {} is not a multiple of its carrier's orbit length", x.name)));
            }
            let on_pa = matches!(x.site, Site::Piece(i) if self.pieces[i].kind == PieceKind::PseudoAnosov);
            if on_pa {
                if x.prongs < 2 || x.rotation >= x.prongs {
                    return Err(bad(format!("pA point {} needs ≥ 2 prongs and rotation < prongs", x.name)));
                }
            } else if x.prongs != 0 || x.rotation != 0 {
                return Err(bad(format!("point {} is off the pA part and cannot carry prongs", x.name)));
            }
        }
        Ok(())
    }

    pub fn has_pa(&self) -> bool {
        self.pieces.iter().any(|p| p.kind == PieceKind::PseudoAnosov)
    }

    pub(crate) fn piece_period(&self, i: usize) -> u64 {
        orbit_len(&self.piece_map, i)
    }

    pub(crate) fn circle_period(&self, c: usize) -> u64 {
        orbit_len(&self.circle_map, c)
    }

    pub(crate) fn annulus_period(&self, u: usize) -> u64 {
        orbit_len(&self.annulus_map, u)
    }

    /// `f^m` is the identity on the periodic piece.
    pub(crate) fn piece_pointwise(&self, i: usize, m: u64) -> bool {
        let p = self.piece_period(i);
        let n = self.pieces[i].order.unwrap_or(0);
        self.pieces[i].kind == PieceKind::Periodic && m.is_multiple_of(p) && (m / p).is_multiple_of(n)
    }

    pub(crate) fn circle_pointwise(&self, c: usize, m: u64) -> bool {
        let circle = &self.circles[c];
        match self.pieces[circle.piece].kind {
            PieceKind::Periodic => self.piece_pointwise(circle.piece, m),
            PieceKind::PseudoAnosov => {
                let p = self.circle_period(c);
                m.is_multiple_of(p) && ((m / p) * circle.rotation).is_multiple_of(circle.singularities)
            }
        }
    }

    pub(crate) fn annulus_pointwise(&self, u: usize, m: u64) -> bool {
        let a = &self.annuli[u];
        a.twist.is_zero() && a.ends.iter().all(|&e| self.circle_pointwise(e, m))
    }

    pub(crate) fn circle_annulus(&self, c: usize) -> Option<usize> {
        self.annuli.iter().position(|u| u.ends.contains(&c))
    }

    /// The same decomposition with everything renamed and reindexed:
    /// `sigma_*[i]` is the new position of old item `i`.
    pub fn relabeled(&self, sigma_p: &[usize], sigma_c: &[usize], sigma_a: &[usize], rename: impl Fn(&str) -> String) -> Self {
        fn place<T: Clone>(items: &[T], sigma: &[usize], f: impl Fn(&T) -> T) -> Vec<T> {
            let mut out: Vec<Option<T>> = vec![None; items.len()];
            for (i, x) in items.iter().enumerate() {
                out[sigma[i]] = Some(f(x));
            }
            out.into_iter().map(Option::unwrap).collect()
        }
        let conj = |perm: &[usize], sigma: &[usize]| {
            let mut out = vec![0; perm.len()];
            for i in 0..perm.len() {
                out[sigma[i]] = sigma[perm[i]];
            }
            out
        };
        NTDecomposition {
            pieces: place(&self.pieces, sigma_p, |p| Piece { name: rename(&p.name), ..p.clone() }),
            circles: place(&self.circles, sigma_c, |c| BoundaryCircle { name: rename(&c.name), piece: sigma_p[c.piece], ..c.clone() }),
            annuli: place(&self.annuli, sigma_a, |u| ReductionAnnulus {
                name: rename(&u.name),
                ends: [sigma_c[u.ends[1]], sigma_c[u.ends[0]]],
                twist: u.twist.clone(),
            }),
            points: self
                .points
                .iter()
                .rev()
                .map(|x| PointOrbit {
                    name: rename(&x.name),
                    site: match x.site {
                        Site::Piece(i) => Site::Piece(sigma_p[i]),
                        Site::Annulus(j) => Site::Annulus(sigma_a[j]),
                    },
                    ..x.clone()
                })
                .collect(),
            piece_map: conj(&self.piece_map, sigma_p),
            circle_map: conj(&self.circle_map, sigma_c),
            annulus_map: conj(&self.annulus_map, sigma_a),
        }
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
