//! Twisted Lefschetz numbers of periodic orbit classes projected to a finite
//! quotient, and the Nielsen-number lower bounds they give.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::group::{FiniteGroupTable, Lift};
use crate::error::{Error, Result};
use crate::kernel::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub orbit: usize,
    pub index: i64,
    pub class: usize,
}

/// Orbit classes of `m`-periodic trajectories with their indices and image
/// classes. Serialized entries are triples `[orbit, index, class]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProjectionTable {
    pub m: u64,
    pub entries: Vec<OrbitEntry>,
    /// The caller asserts that the Nielsen bound is attained.
    pub attained: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    #[serde(default = "one")]
    m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    entries: Vec<(usize, i64, usize)>,
    #[serde(default)]
    attained: bool,
}

fn one() -> u64 {
    1
}

impl OrbitProjectionTable {
    pub fn new(m: u64, entries: Vec<OrbitEntry>) -> Result<Self> {
        let t = OrbitProjectionTable { m, entries, attained: false };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if e.index == 0 {
                return Err(Error::InvalidInput(format!("orbit {} has index 0", e.orbit)));
            }
            if !seen.insert(e.orbit) {
                return Err(Error::InvalidInput(format!("orbit {} listed twice", e.orbit)));
            }
        }
        Ok(())
    }

    pub fn check_classes(&self, group: &FiniteGroupTable) -> Result<()> {
        match self.entries.iter().find(|e| e.class >= group.class_count()) {
            Some(e) => Err(Error::ClassIdMismatch(e.class)),
            None => Ok(()),
        }
    }

    /// Parses `{"m": 1, "group": "S3", "entries": [[0, -1, 2], ...]}`;
    /// returns the group name if the file names one.
    pub fn from_json(json: &str) -> Result<(Self, Option<String>)> {
        let raw: RawTable = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = raw.entries.iter().map(|&(orbit, index, class)| OrbitEntry { orbit, index, class }).collect();
        let mut t = Self::new(raw.m, entries)?;
        t.attained = raw.attained;
        Ok((t, raw.group))
    }

    pub fn to_json(&self, group: Option<&str>) -> String {
        let raw = RawTable {
            schema: Some("procong/v1".into()),
            m: self.m,
            group: group.map(str::to_string),
            entries: self.entries.iter().map(|e| (e.orbit, e.index, e.class)).collect(),
            attained: self.attained,
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

/// `L_m(f; χ) = Σ_O χ(class(O))·ind(O)`.
pub fn twisted_l_from_orbits(table: &OrbitProjectionTable, chi: &[ExactScalar]) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for e in &table.entries {
        let v = chi.get(e.class).ok_or(Error::ClassIdMismatch(e.class))?;
        acc = &acc + &(v * &ExactScalar::from_i64(e.index));
    }
    Ok(acc)
}

/// `L_m` against the indicator of each class in `which`, computed twice:
/// by the character expansion `(#c/#Γ)·Σ_ρ conj(χ_ρ(c))·L_m(χ_ρ)` and by
/// summing indices directly. The two must agree.
fn indicator_values(table: &OrbitProjectionTable, group: &FiniteGroupTable, which: &[usize]) -> Result<Vec<ExactScalar>> {
    table.check_classes(group)?;
    let k = group.class_count();
    if let Some(&c) = which.iter().find(|&&c| c >= k) {
        return Err(Error::ClassIdMismatch(c));
    }
    let mut direct = vec![0i128; k];
    for e in &table.entries {
        direct[e.class] += e.index as i128;
    }
    // L_m(χ_ρ) for every irreducible, in Z[x]/(x^n − 1)
    let l_rho: Vec<Lift> = group
        .lifts
        .iter()
        .map(|row| {
            let mut acc = Lift::zero(group.conductor);
            for (v, &d) in row.iter().zip(&direct).filter(|(_, d)| **d != 0) {
                acc.add_scaled(v, d);
            }
            acc
        })
        .collect();
    which
        .iter()
        .map(|&c| {
            let mut sum = Lift::zero(group.conductor);
            for (row, l) in group.lifts.iter().zip(&l_rho) {
                sum.add_product(&row[c].conj(), l);
            }
            let via_chars = &sum.value() * &ExactScalar::from_ratio(group.class_size(c) as i64, group.order() as i64);
            let d = ExactScalar::from_bigint((direct[c]).into());
            if via_chars != d {
                return Err(Error::CharacterDisagreement(c));
            }
            Ok(d)
        })
        .collect()
}

/// `L_m(f; χ_c)` for the indicator `χ_c` of class `c`.
pub fn class_indicator_l(table: &OrbitProjectionTable, group: &FiniteGroupTable, c: usize) -> Result<ExactScalar> {
    Ok(indicator_values(table, group, &[c])?.remove(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NielsenBound {
    pub m: u64,
    /// Number of classes with nonzero indicator-L.
    pub bound: usize,
    /// Indicator-L value per class.
    pub values: Vec<ExactScalar>,
    pub attained: bool,
    /// `ν_m(i)` read off the values, only when attainment is asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<BTreeMap<i64, u64>>,
}

/// `N_m ≥ #{c : L_m(f; χ_c) ≠ 0}`.
pub fn nielsen_bound(table: &OrbitProjectionTable, group: &FiniteGroupTable) -> Result<NielsenBound> {
    let all: Vec<usize> = (0..group.class_count()).collect();
    let values = indicator_values(table, group, &all)?;
    let bound = values.iter().filter(|v| !v.is_zero()).count();
    let nu = table.attained.then(|| {
        let mut nu = BTreeMap::new();
        for v in values.iter().filter(|v| !v.is_zero()) {
            let i: i64 = v.as_rational().and_then(|r| r.to_integer().try_into().ok()).expect("indicator values are integers");
            *nu.entry(i).or_default() += 1;
        }
        nu
    });
    Ok(NielsenBound { m: table.m, bound, values, attained: table.attained, nu })
}
