//! Fixed point classes of `f^m` read off a normal form, one record per
//! class, and their `f`-orbits.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{cycles, NTDecomposition, PieceKind, Site};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// Isolated point in a non-fixed periodic piece or annulus.
    EllipticPoint,
    /// Interior singular or marked point of a pA piece.
    PseudoAnosovPoint,
    /// A pA boundary circle with unrotated prongs.
    CrownCircle,
    /// A pointwise-fixed annulus between two pA crowns.
    CrownAnnulus,
    /// A pointwise-fixed periodic piece with its fixed collar annuli.
    CrownSubsurface,
}

impl CaseTag {
    pub fn number(self) -> u8 {
        match self {
            CaseTag::EllipticPoint => 1,
            CaseTag::PseudoAnosovPoint => 2,
            CaseTag::CrownCircle => 3,
            CaseTag::CrownAnnulus => 4,
            CaseTag::CrownSubsurface => 5,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClassRecord {
    pub m: u64,
    pub case: CaseTag,
    pub carrier: String,
    pub index: i64,
    /// Records sharing this id form one `f`-orbit of classes.
    pub orbit: usize,
    /// The `k` entering the index formula (prongs, crown size, collar prongs).
    pub k: u64,
    /// `χ(E)` for crown subsurfaces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
}

impl FixedClassRecord {
    /// The index formula for the case tag holds.
    pub fn is_legal(&self) -> bool {
        let k = self.k as i64;
        match self.case {
            CaseTag::EllipticPoint => self.index == 1,
            CaseTag::PseudoAnosovPoint => self.index == 1 || (k >= 2 && self.index == 1 - k),
            CaseTag::CrownCircle => k >= 1 && self.index == -k,
            CaseTag::CrownAnnulus => k >= 2 && self.index == -k,
            CaseTag::CrownSubsurface => self.euler.is_some_and(|e| self.index == e - k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClassReport {
    pub m: u64,
    pub records: Vec<FixedClassRecord>,
    /// Fixed pA pieces whose regular orbits were not declared up to `m`.
    pub remainder: Vec<String>,
}

impl FixedClassReport {
    pub fn orbit_count(&self) -> usize {
        self.records.iter().map(|r| r.orbit + 1).max().unwrap_or(0)
    }
}

struct Builder {
    m: u64,
    records: Vec<FixedClassRecord>,
    next: usize,
}

impl Builder {
    fn orbit(&mut self, case: CaseTag, carriers: Vec<String>, index: i64, k: u64, euler: Option<i64>) {
        for carrier in carriers {
            self.records.push(FixedClassRecord { m: self.m, case, carrier, index, orbit: self.next, k, euler });
        }
        self.next += 1;
    }
}

fn point_name(base: &str, j: u64) -> String {
    match j {
        0 => base.to_string(),
        1 => format!("f({base})"),
        _ => format!("f^{j}({base})"),
    }
}

/// Essential fixed point classes of `f^m` (index-zero classes are dropped).
pub fn fixed_point_classes(nt: &NTDecomposition, m: u64) -> Result<FixedClassReport> {
    if m == 0 {
        return Err(Error::InvalidInput("iterate must be at least 1".into()));
    }
    let mut b = Builder { m, records: Vec::new(), next: 0 };
    let mut remainder = Vec::new();

    // case 1 and 2: declared isolated points
    for x in &nt.points {
        if !m.is_multiple_of(x.period) {
            continue;
        }
        let names: Vec<String> = (0..x.period).map(|j| point_name(&x.name, j)).collect();
        match x.site {
            Site::Piece(i) if nt.pieces[i].kind == PieceKind::PseudoAnosov => {
                let rot = ((m / x.period) * x.rotation) % x.prongs;
                let index = if rot == 0 { 1 - x.prongs as i64 } else { 1 };
                b.orbit(CaseTag::PseudoAnosovPoint, names, index, x.prongs, None);
            }
            Site::Piece(i) => {
                if !nt.piece_pointwise(i, m) {
                    b.orbit(CaseTag::EllipticPoint, names, 1, 0, None);
                }
            }
            Site::Annulus(u) => {
                if !nt.annulus_pointwise(u, m) {
                    b.orbit(CaseTag::EllipticPoint, names, 1, 0, None);
                }
            }
        }
    }

    // case 3: crown circles not swallowed by a fixed annulus
    for cyc in cycles(&nt.circle_map) {
        let c = cyc[0];
        let circle = &nt.circles[c];
        if nt.pieces[circle.piece].kind != PieceKind::PseudoAnosov || !nt.circle_pointwise(c, m) {
            continue;
        }
        if nt.circle_annulus(c).is_some_and(|u| nt.annulus_pointwise(u, m)) {
            continue;
        }
        let k = circle.singularities;
        b.orbit(CaseTag::CrownCircle, cyc.iter().map(|&i| nt.circles[i].name.clone()).collect(), -(k as i64), k, None);
    }

    // case 4: fixed annuli with pA on both sides
    for cyc in cycles(&nt.annulus_map) {
        let u = cyc[0];
        if !nt.annulus_pointwise(u, m) {
            continue;
        }
        let ends = nt.annuli[u].ends;
        if ends.iter().all(|&e| nt.pieces[nt.circles[e].piece].kind == PieceKind::PseudoAnosov) {
            let k: u64 = ends.iter().map(|&e| nt.circles[e].singularities).sum();
            b.orbit(CaseTag::CrownAnnulus, cyc.iter().map(|&i| nt.annuli[i].name.clone()).collect(), -(k as i64), k, None);
        }
    }

    // case 5: fixed periodic pieces absorbing their fixed collars
    for cyc in cycles(&nt.piece_map) {
        let e = cyc[0];
        let piece = &nt.pieces[e];
        if piece.kind != PieceKind::Periodic || !nt.piece_pointwise(e, m) {
            continue;
        }
        let mut k = 0;
        for (c, circle) in nt.circles.iter().enumerate() {
            if circle.piece != e {
                continue;
            }
            if let Some(u) = nt.circle_annulus(c).filter(|&u| nt.annulus_pointwise(u, m)) {
                let far = nt.annuli[u].ends.into_iter().find(|&x| x != c).unwrap();
                k += nt.circles[far].singularities;
            }
        }
        let names = cyc.iter().map(|&i| nt.pieces[i].name.clone()).collect();
        b.orbit(CaseTag::CrownSubsurface, names, piece.euler - k as i64, k, Some(piece.euler));
    }

    // pA pieces fixed by f^m need their orbit data
    for cyc in cycles(&nt.piece_map) {
        let piece = &nt.pieces[cyc[0]];
        if piece.kind != PieceKind::PseudoAnosov || !m.is_multiple_of(cyc.len() as u64) {
            continue;
        }
        match piece.complete_upto {
            None => return Err(Error::OrbitDataIncomplete(piece.name.clone())),
            Some(n) if n < m => {
                remainder.extend(cyc.iter().map(|&i| nt.pieces[i].name.clone()));
            }
            _ => {}
        }
    }

    b.records.retain(|r| r.index != 0);
    // renumber orbits densely after dropping inessential ones
    let mut ids = BTreeMap::new();
    for r in &mut b.records {
        let n = ids.len();
        r.orbit = *ids.entry(r.orbit).or_insert(n);
    }
    for r in &b.records {
        if !r.is_legal() {
            return Err(Error::Internal(format!("record {} violates the index rule of case {}", r.carrier, r.case)));
        }
    }
    Ok(FixedClassReport { m, records: b.records, remainder })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub m: u64,
    /// `ν_m(f; i)` for the indices that occur.
    pub nu: BTreeMap<i64, u64>,
    pub n_m: u64,
    pub remainder: Vec<String>,
}

impl OrbitRow {
    pub fn from_counts(m: u64, nu: BTreeMap<i64, u64>) -> Self {
        let nu: BTreeMap<i64, u64> = nu.into_iter().filter(|&(i, c)| i != 0 && c != 0).collect();
        OrbitRow { m, n_m: nu.values().sum(), nu, remainder: Vec::new() }
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedOrbitTable {
    pub rows: Vec<OrbitRow>,
}

impl IndexedOrbitTable {
    pub fn row(&self, m: u64) -> Option<&OrbitRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn is_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.n_m == r.nu.iter().filter(|(&i, _)| i != 0).map(|(_, c)| c).sum::<u64>())
    }
}

pub fn indexed_orbit_numbers(nt: &NTDecomposition, upto: u64) -> Result<IndexedOrbitTable> {
    let rows = (1..=upto)
        .into_par_iter()
        .map(|m| {
            let rep = fixed_point_classes(nt, m)?;
            let mut nu: BTreeMap<i64, u64> = BTreeMap::new();
            let mut seen = std::collections::HashSet::new();
            for r in &rep.records {
                if seen.insert(r.orbit) {
                    *nu.entry(r.index).or_default() += 1;
                }
            }
            let mut row = OrbitRow::from_counts(m, nu);
            row.remainder = rep.remainder;
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexedOrbitTable { rows })
}
