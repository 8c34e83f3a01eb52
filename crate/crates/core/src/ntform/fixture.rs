//! JSON form of a normal form. Items are referred to by name; the `map`
//! object sends names to names and anything it omits is fixed.
//!
//! ```json
//! { "pieces": [{ "name": "P", "kind": "pA", "euler": -1,
//!                "stretch": { "minpoly": [1, -3, 1], "interval": ["2", "3"] },
//!                "complete_upto": 6 }],
//!   "circles": [{ "name": "c", "piece": "P", "singularities": 1 }],
//!   "annuli": [],
//!   "points": [{ "name": "x", "at": "P", "period": 1, "prongs": 4 }],
//!   "map": {} }
//! ```
//!
//! `minpoly` lists coefficients from the constant term up.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{BoundaryCircle, NTDecomposition, Piece, PieceKind, PointOrbit, ReductionAnnulus, Site};
use crate::error::{Error, Result};
use crate::kernel::scalar::parse_rational;
use crate::kernel::{Poly, RealAlgebraic};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NtFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub pieces: Vec<PieceSpec>,
    #[serde(default)]
    pub circles: Vec<CircleSpec>,
    #[serde(default)]
    pub annuli: Vec<AnnulusSpec>,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub name: String,
    pub kind: String,
    pub euler: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stretch: Option<StretchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_upto: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StretchSpec {
    pub minpoly: Vec<i64>,
    pub interval: [String; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub name: String,
    pub piece: String,
    #[serde(default)]
    pub singularities: u64,
    #[serde(default)]
    pub rotation: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusSpec {
    pub name: String,
    pub ends: [String; 2],
    pub twist: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub name: String,
    pub at: String,
    pub period: u64,
    #[serde(default)]
    pub prongs: u64,
    #[serde(default)]
    pub rotation: u64,
}

fn lookup(names: &HashMap<&str, usize>, key: &str, what: &str) -> Result<usize> {
    names.get(key).copied().ok_or_else(|| Error::InvalidDecomposition(format!("unknown {what} {key:?}")))
}

fn index<'a>(names: impl Iterator<Item = &'a str>) -> HashMap<&'a str, usize> {
    names.enumerate().map(|(i, n)| (n, i)).collect()
}

impl NtFile {
    pub fn build(&self) -> Result<NTDecomposition> {
        let pn = index(self.pieces.iter().map(|p| p.name.as_str()));
        let cn = index(self.circles.iter().map(|c| c.name.as_str()));
        let an = index(self.annuli.iter().map(|a| a.name.as_str()));

        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let kind = match p.kind.as_str() {
                    "pA" | "pseudoAnosov" | "pseudo-Anosov" => PieceKind::PseudoAnosov,
                    "periodic" => PieceKind::Periodic,
                    k => return Err(Error::InvalidDecomposition(format!("unknown piece kind {k:?}"))),
                };
                let stretch = match &p.stretch {
                    None => None,
                    Some(s) => Some(RealAlgebraic::new(&Poly::from_i64s(&s.minpoly), parse_rational(&s.interval[0])?, parse_rational(&s.interval[1])?)?),
                };
                Ok(Piece { name: p.name.clone(), kind, euler: p.euler, stretch, order: p.order, complete_upto: p.complete_upto })
            })
            .collect::<Result<Vec<_>>>()?;
        let circles = self
            .circles
            .iter()
            .map(|c| {
                Ok(BoundaryCircle {
                    name: c.name.clone(),
                    piece: lookup(&pn, &c.piece, "piece")?,
                    singularities: c.singularities,
                    rotation: c.rotation,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let annuli = self
            .annuli
            .iter()
            .map(|a| {
                Ok(ReductionAnnulus {
                    name: a.name.clone(),
                    ends: [lookup(&cn, &a.ends[0], "circle")?, lookup(&cn, &a.ends[1], "circle")?],
                    twist: parse_rational(&a.twist)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let points = self
            .points
            .iter()
            .map(|x| {
                let site = if let Some(&i) = pn.get(x.at.as_str()) {
                    Site::Piece(i)
                } else {
                    Site::Annulus(lookup(&an, &x.at, "piece or annulus")?)
                };
                Ok(PointOrbit { name: x.name.clone(), site, period: x.period, prongs: x.prongs, rotation: x.rotation })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut piece_map: Vec<usize> = (0..pieces.len()).collect();
        let mut circle_map: Vec<usize> = (0..circles.len()).collect();
        let mut annulus_map: Vec<usize> = (0..annuli.len()).collect();
        for (from, to) in &self.map {
            let mismatch = || Error::InvalidDecomposition(format!("map sends {from:?} to {to:?}, which is not of the same sort"));
            if let Some(&i) = pn.get(from.as_str()) {
                piece_map[i] = *pn.get(to.as_str()).ok_or_else(mismatch)?;
            } else if let Some(&i) = cn.get(from.as_str()) {
                circle_map[i] = *cn.get(to.as_str()).ok_or_else(mismatch)?;
            } else if let Some(&i) = an.get(from.as_str()) {
                annulus_map[i] = *an.get(to.as_str()).ok_or_else(mismatch)?;
            } else {
                return Err(Error::InvalidDecomposition(format!("map mentions unknown item {from:?}")));
            }
        }
        let nt = NTDecomposition { pieces, circles, annuli, points, piece_map, circle_map, annulus_map };
        nt.validate()?;
        Ok(nt)
    }
}

/// Parses and validates a JSON normal form.
pub fn parse_nt(json: &str) -> Result<NTDecomposition> {
    let file: NtFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}
