//! JSON forms of mapping tori and finite representations.
//!
//! ```json
//! { "surface": { "genus": 1, "boundary": 0 },
//!   "monodromy": { "matrix": [[2, 1], [1, 1]] } }
//! ```
//!
//! The monodromy is either a torus `matrix` (columns are images of `a1`, `b1`)
//! or `images`, one word per fiber generator such as `"a1 b1^-1 a2^2"`.

use serde::Deserialize;

use super::presentation::{mapping_torus, GeneratorEndomorphism, MappingTorusPresentation, Presentation, SurfacePresentation};
use super::rep::{cyclic_through_grading, FiniteRepresentation, DEFAULT_CLOSURE_CAP};
use super::words::{self, Word};
use crate::error::{Error, Result};
use crate::kernel::{ExactScalar, Matrix};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingTorusFile {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    pub surface: SurfaceSpec,
    pub monodromy: MonodromySpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: usize,
    #[serde(default)]
    pub boundary: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromySpec {
    #[serde(default)]
    pub matrix: Option<[[i64; 2]; 2]>,
    #[serde(default)]
    pub images: Option<Vec<String>>,
}

/// Parses `a1 b1^-1 a2^3` against the generator names; `1` is the empty word.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word> {
    let mut w = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))? as i32
            + 1;
        w.extend(words::power(&[g], exp));
    }
    Ok(words::free_reduce(&w))
}

impl MappingTorusFile {
    pub fn build(&self) -> Result<MappingTorusPresentation> {
        let pres = SurfacePresentation::bounded(self.surface.genus, self.surface.boundary)?;
        let phi = match (&self.monodromy.matrix, &self.monodromy.images) {
            (Some(m), None) => {
                if pres.rank() != 2 || pres.relator.is_none() {
                    return Err(Error::InvalidInput("a monodromy matrix needs the closed torus".into()));
                }
                GeneratorEndomorphism::torus_from_matrix(*m)?
            }
            (None, Some(imgs)) => GeneratorEndomorphism {
                images: imgs.iter().map(|s| parse_word(s, &pres.names)).collect::<Result<_>>()?,
            },
            _ => return Err(Error::InvalidInput("monodromy needs exactly one of matrix or images".into())),
        };
        mapping_torus(&pres, &phi)
    }
}

pub fn parse_mapping_torus(json: &str) -> Result<MappingTorusPresentation> {
    let file: MappingTorusFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

/// `{"name": "...", "matrices": [[["0","1"],["1","0"]], ...]}`, one matrix per
/// generator of the mapping-torus group (fiber generators, then `t`).
/// Entries are rationals or cyclotomic literals `cyc(n):[c0,c1,...]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    #[serde(default)]
    schema: Option<String>,
    name: String,
    matrices: Vec<Vec<Vec<String>>>,
}

pub fn parse_representation(json: &str, pres: &Presentation) -> Result<FiniteRepresentation> {
    let file: RepFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let _ = file.schema;
    let mats = file
        .matrices
        .iter()
        .map(|rows| {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|e| e.parse::<ExactScalar>()).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(Error::InvalidInput(format!("representation {} has a non-square matrix", file.name)));
            }
            Ok(Matrix::from_rows(rows))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteRepresentation::new(pres, &file.name, mats, DEFAULT_CLOSURE_CAP)
}

/// `trivial`, `sign` (through the fibered class mod 2) or `cyclic:n:k`.
pub fn named_representation(spec: &str, pres: &Presentation) -> Result<Option<FiniteRepresentation>> {
    let spec = spec.trim();
    if spec == "trivial" {
        return Ok(Some(FiniteRepresentation::trivial(pres)));
    }
    if spec == "sign" {
        return cyclic_through_grading(pres, 2, 1).map(Some);
    }
    if let Some(rest) = spec.strip_prefix("cyclic:") {
        let bad = || Error::Parse(format!("expected cyclic:n:k, got {spec:?}"));
        let (n, k) = rest.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        return cyclic_through_grading(pres, n, k).map(Some);
    }
    Ok(None)
}
