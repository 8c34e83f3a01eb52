//! Decomposition graphs as abstract directed graphs: a finite set with two
//! retractions `d0`, `d1` onto the common subset of vertices. Annuli are
//! vertices too; each annulus end is an element running from its annulus to
//! the piece it is glued to.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{cycles, NTDecomposition, PieceKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    PeriodicPiece,
    PseudoAnosovPiece,
    Annulus,
    AnnulusEnd,
}

impl ElementKind {
    fn tag(self) -> &'static str {
        match self {
            ElementKind::PeriodicPiece => "per",
            ElementKind::PseudoAnosovPiece => "pA",
            ElementKind::Annulus => "ann",
            ElementKind::AnnulusEnd => "end",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionGraph {
    pub names: Vec<String>,
    pub kinds: Vec<ElementKind>,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    /// The automorphism induced by `f`.
    pub action: Vec<usize>,
}

impl DecompositionGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.d0[x] == x).collect()
    }

    pub fn edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.d0[x] != x).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let bad = |m: &str| Err(Error::Internal(format!("malformed decomposition graph: {m}")));
        if [self.kinds.len(), self.d0.len(), self.d1.len(), self.action.len()].iter().any(|&l| l != n) {
            return bad("sizes differ");
        }
        for x in 0..n {
            if self.d0[self.d0[x]] != self.d0[x] || self.d1[self.d1[x]] != self.d1[x] {
                return bad("d0 or d1 is not a retraction");
            }
            if (self.d0[x] == x) != (self.d1[x] == x) {
                return bad("images of d0 and d1 differ");
            }
            let a = &self.action;
            if self.d0[a[x]] != a[self.d0[x]] || self.d1[a[x]] != a[self.d1[x]] || self.kinds[a[x]] != self.kinds[x] {
                return bad("the action is not an automorphism");
            }
        }
        Ok(())
    }

    /// Quotient by the action, with the quotient map.
    pub fn quotient(&self) -> (DecompositionGraph, Vec<usize>) {
        let orbits = cycles(&self.action);
        let mut q = vec![0; self.len()];
        for (k, o) in orbits.iter().enumerate() {
            for &x in o {
                q[x] = k;
            }
        }
        let name = |o: &Vec<usize>| {
            if o.len() == 1 {
                self.names[o[0]].clone()
            } else {
                format!("{{{}}}", o.iter().map(|&x| self.names[x].as_str()).collect::<Vec<_>>().join(","))
            }
        };
        let g = DecompositionGraph {
            names: orbits.iter().map(name).collect(),
            kinds: orbits.iter().map(|o| self.kinds[o[0]]).collect(),
            d0: orbits.iter().map(|o| q[self.d0[o[0]]]).collect(),
            d1: orbits.iter().map(|o| q[self.d1[o[0]]]).collect(),
            action: (0..orbits.len()).collect(),
        };
        (g, q)
    }

    /// A label-free description that two graphs share iff they are
    /// isomorphic (as kinded abstract directed graphs, forgetting the action).
    pub fn canonical_form(&self) -> String {
        let verts = self.vertices();
        let edges = self.edges();
        // colour refinement to shrink the search
        let mut colour: BTreeMap<usize, usize> = verts.iter().map(|&v| (v, self.kinds[v] as usize)).collect();
        loop {
            let sig: BTreeMap<usize, (usize, Vec<(u8, usize)>)> = verts
                .iter()
                .map(|&v| {
                    let mut nb: Vec<(u8, usize)> = edges
                        .iter()
                        .flat_map(|&e| {
                            let mut out = Vec::new();
                            if self.d0[e] == v {
                                out.push((0, colour[&self.d1[e]]));
                            }
                            if self.d1[e] == v {
                                out.push((1, colour[&self.d0[e]]));
                            }
                            out
                        })
                        .collect();
                    nb.sort_unstable();
                    (v, (colour[&v], nb))
                })
                .collect();
            let mut distinct: Vec<_> = sig.values().cloned().collect();
            distinct.sort();
            distinct.dedup();
            let next: BTreeMap<usize, usize> = sig.iter().map(|(&v, s)| (v, distinct.binary_search(s).unwrap())).collect();
            let before = colour.values().collect::<std::collections::BTreeSet<_>>().len();
            let stable = distinct.len() == before;
            colour = next;
            if stable {
                break;
            }
        }
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &verts {
            cells.entry(colour[&v]).or_default().push(v);
        }
        let cells: Vec<Vec<usize>> = cells.into_values().collect();
        let kinds: Vec<&str> = cells.iter().flat_map(|c| c.iter().map(|&v| self.kinds[v].tag())).collect();

        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut order: Vec<Vec<usize>> = cells.clone();
        search(&cells, 0, &mut order, &mut |ord| {
            let mut label = BTreeMap::new();
            for (i, &v) in ord.iter().flatten().enumerate() {
                label.insert(v, i);
            }
            let mut enc: Vec<(usize, usize)> = edges.iter().map(|&e| (label[&self.d0[e]], label[&self.d1[e]])).collect();
            enc.sort_unstable();
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        });
        let enc = best.unwrap_or_default();
        let edges: Vec<String> = enc.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        format!("vertices [{}] edges [{}]", kinds.join(" "), edges.join(" "))
    }

    /// One line per element: `name kind d0 d1`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for x in 0..self.len() {
            s.push_str(&format!(
                "{} {} {} -> {}\n",
                self.names[x],
                self.kinds[x].tag(),
                self.names[self.d0[x]],
                self.names[self.d1[x]]
            ));
        }
        s
    }
}

// Every ordering of vertices that keeps each colour cell contiguous.
fn search(cells: &[Vec<usize>], i: usize, order: &mut Vec<Vec<usize>>, visit: &mut dyn FnMut(&[Vec<usize>])) {
    if i == cells.len() {
        visit(order);
        return;
    }
    permute(&mut cells[i].clone(), 0, &mut |p| {
        order[i] = p.to_vec();
        search(cells, i + 1, order, visit);
    });
}

fn permute(xs: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for j in k..xs.len() {
        xs.swap(k, j);
        permute(xs, k + 1, visit);
        xs.swap(k, j);
    }
}

pub fn nt_graph(nt: &NTDecomposition) -> DecompositionGraph {
    let (np, na) = (nt.pieces.len(), nt.annuli.len());
    let mut names: Vec<String> = nt.pieces.iter().map(|p| p.name.clone()).collect();
    let mut kinds: Vec<ElementKind> = nt
        .pieces
        .iter()
        .map(|p| match p.kind {
            PieceKind::Periodic => ElementKind::PeriodicPiece,
            PieceKind::PseudoAnosov => ElementKind::PseudoAnosovPiece,
        })
        .collect();
    names.extend(nt.annuli.iter().map(|a| a.name.clone()));
    kinds.extend(std::iter::repeat_n(ElementKind::Annulus, na));
    let mut d0: Vec<usize> = (0..np + na).collect();
    let mut d1 = d0.clone();
    let mut action: Vec<usize> = nt.piece_map.iter().copied().chain(nt.annulus_map.iter().map(|&u| np + u)).collect();

    let mut end_pos = BTreeMap::new();
    for (u, a) in nt.annuli.iter().enumerate() {
        for &c in &a.ends {
            end_pos.insert(c, names.len());
            names.push(nt.circles[c].name.clone());
            kinds.push(ElementKind::AnnulusEnd);
            d0.push(np + u);
            d1.push(nt.circles[c].piece);
        }
    }
    for a in &nt.annuli {
        for &c in &a.ends {
            action.push(end_pos[&nt.circle_map[c]]);
        }
    }
    DecompositionGraph { names, kinds, d0, d1, action }
}

pub fn geometric_graph(nt: &NTDecomposition) -> DecompositionGraph {
    nt_graph(nt).quotient().0
}
