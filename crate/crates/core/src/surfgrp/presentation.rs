use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::words::{self, Word};
use crate::error::{Error, Result};
use crate::kernel::smith::smith_normal_form;
use crate::kernel::Matrix;

/// Fundamental group of a compact orientable surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub genus: usize,
    pub boundary_count: usize,
    pub names: Vec<String>,
    /// Product of commutators; present exactly for closed surfaces.
    pub relator: Option<Word>,
}

impl SurfacePresentation {
    pub fn closed(genus: usize) -> Self {
        let mut names = Vec::new();
        let mut rel = Vec::new();
        for i in 1..=genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
            let a = 2 * i as i32 - 1;
            rel.extend(words::commutator(&[a], &[a + 1]));
        }
        SurfacePresentation { genus, boundary_count: 0, names, relator: Some(rel) }
    }

    pub fn bounded(genus: usize, boundary_count: usize) -> Result<Self> {
        if boundary_count == 0 {
            return Ok(Self::closed(genus));
        }
        let mut names = Vec::new();
        for i in 1..=genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        for j in 1..boundary_count {
            names.push(format!("c{j}"));
        }
        Ok(SurfacePresentation { genus, boundary_count, names, relator: None })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count as i64
    }
}

/// Images of the fiber generators under a monodromy representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEndomorphism {
    pub images: Vec<Word>,
}

impl GeneratorEndomorphism {
    pub fn identity(n: usize) -> Self {
        GeneratorEndomorphism { images: (1..=n as i32).map(|i| vec![i]).collect() }
    }

    pub fn apply(&self, w: &[i32]) -> Word {
        words::substitute(w, &self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GeneratorEndomorphism { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    /// Action on the abelianization; column `j` is the image of generator `j`.
    pub fn abelian_matrix(&self) -> Matrix<BigInt> {
        let n = self.images.len();
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| words::abelianize(w, n)).collect();
        Matrix::from_fn(n, n, |r, c| BigInt::from(cols[c][r]))
    }

    /// A free-group automorphism of `⟨a, b⟩` inducing the given 2×2 matrix
    /// (columns are images), built from elementary Nielsen moves.
    pub fn torus_from_matrix(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(Error::InvalidAutomorphism(format!("determinant {det} on first homology")));
        }
        #[derive(Clone, Copy)]
        enum Op {
            Upper(i64), // row0 += k·row1; automorphism b ↦ a^k b
            Lower(i64), // row1 += k·row0; automorphism a ↦ a b^k
            NegA,
            NegB,
        }
        let mut a = m;
        let mut ops = Vec::new();
        let mut apply = |a: &mut [[i64; 2]; 2], op: Op| {
            match op {
                Op::Upper(k) => {
                    for c in 0..2 {
                        a[0][c] += k * a[1][c];
                    }
                }
                Op::Lower(k) => {
                    for c in 0..2 {
                        a[1][c] += k * a[0][c];
                    }
                }
                Op::NegA => a[0] = [-a[0][0], -a[0][1]],
                Op::NegB => a[1] = [-a[1][0], -a[1][1]],
            }
            ops.push(op);
        };
        while a[1][0] != 0 {
            if a[0][0] == 0 {
                apply(&mut a, Op::Upper(1));
            } else if a[0][0].abs() > a[1][0].abs() {
                let q = a[0][0] / a[1][0];
                apply(&mut a, Op::Upper(-q));
            } else {
                let q = a[1][0] / a[0][0];
                apply(&mut a, Op::Lower(-q));
            }
        }
        if a[0][0] < 0 {
            apply(&mut a, Op::NegA);
        }
        if a[1][1] < 0 {
            apply(&mut a, Op::NegB);
        }
        if a[0][1] != 0 {
            let k = -a[0][1];
            apply(&mut a, Op::Upper(k));
        }
        debug_assert_eq!(a, [[1, 0], [0, 1]]);
        // E_k⋯E_1·M = I, so M = E_1⁻¹⋯E_k⁻¹.
        let elementary = |op: Op| -> GeneratorEndomorphism {
            let images = match op {
                Op::Upper(k) => vec![vec![1], words::concat(&[&words::power(&[1], k as i32), &[2]])],
                Op::Lower(k) => vec![words::concat(&[&[1], &words::power(&[2], k as i32)]), vec![2]],
                Op::NegA => vec![vec![-1], vec![2]],
                Op::NegB => vec![vec![1], vec![-2]],
            };
            GeneratorEndomorphism { images }
        };
        let inverse = |op: Op| match op {
            Op::Upper(k) => Op::Upper(-k),
            Op::Lower(k) => Op::Lower(-k),
            o => o,
        };
        let mut phi = GeneratorEndomorphism::identity(2);
        for &op in &ops {
            phi = phi.compose(&elementary(inverse(op)));
        }
        Ok(phi)
    }
}

/// A finite presentation with an integer grading of the generators
/// (the homomorphism to `Z` used as the Alexander variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
    pub grading: Vec<i64>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn grade(&self, w: &[i32]) -> i64 {
        w.iter().map(|&x| x.signum() as i64 * self.grading[x.unsigned_abs() as usize - 1]).sum()
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let n = self.generator_count();
        let rows: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|r| words::abelianize(r, n).into_iter().map(BigInt::from).collect())
            .collect();
        let m = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows) };
        AbelianGroup::cokernel_of_rows(&m)
    }

    /// Tietze move: append a consequence of the relators.
    pub fn with_redundant_relator(&self, w: Word) -> Self {
        let mut p = self.clone();
        p.relators.push(words::free_reduce(&w));
        p
    }

    /// Tietze move: new generator `y` with relator `y·w⁻¹`.
    pub fn with_new_generator(&self, name: &str, w: &[i32]) -> Self {
        let mut p = self.clone();
        let y = (p.names.len() + 1) as i32;
        p.grading.push(self.grade(w));
        p.names.push(name.to_string());
        p.relators.push(words::concat(&[&[y], &words::inverse(w)]));
        p
    }
}

/// `Z^r ⊕ ⊕ Z/d_i` with `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Cokernel of the row span of `m` in `Z^{cols}`.
    pub fn cokernel_of_rows(m: &Matrix<BigInt>) -> Self {
        let s = smith_normal_form(m);
        let torsion = s.diagonal().into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        AbelianGroup { free_rank: m.cols() - s.rank, torsion }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `π1(S) ⋊ ⟨t⟩` with `t⁻¹·x·t = φ(x)`; generator `n+1` is `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingTorusPresentation {
    pub surface: SurfacePresentation,
    pub phi: GeneratorEndomorphism,
    pub presentation: Presentation,
    /// For closed fibers: `(w, ε)` with `φ(R) = w·R^ε·w⁻¹` in the free group.
    pub relator_twist: Option<(Word, i32)>,
}

impl MappingTorusPresentation {
    pub fn fiber_rank(&self) -> usize {
        self.surface.rank()
    }

    pub fn t(&self) -> i32 {
        self.fiber_rank() as i32 + 1
    }

    /// Index of the first flow relator `r_1` in the relator list.
    pub fn flow_offset(&self) -> usize {
        usize::from(self.surface.relator.is_some())
    }

    /// Orientation sign of the monodromy (`ε`; `1` for bounded fibers).
    pub fn orientation(&self) -> i32 {
        self.relator_twist.as_ref().map_or(1, |(_, e)| *e)
    }
}

pub fn validate_automorphism(pres: &SurfacePresentation, phi: &GeneratorEndomorphism) -> Result<Option<(Word, i32)>> {
    let n = pres.rank();
    if phi.images.len() != n {
        return Err(Error::InvalidAutomorphism(format!("{} images for {} generators", phi.images.len(), n)));
    }
    if let Some(bad) = phi.images.iter().flatten().find(|&&x| x == 0 || x.unsigned_abs() as usize > n) {
        return Err(Error::InvalidAutomorphism(format!("letter {bad} out of range")));
    }
    let det = phi.abelian_matrix().det();
    if !(det.is_one() || (-det.clone()).is_one()) {
        return Err(Error::InvalidAutomorphism(format!("determinant {det} on first homology")));
    }
    let Some(rel) = &pres.relator else { return Ok(None) };
    let image = phi.apply(rel);
    for eps in [1, -1] {
        let target = words::power(rel, eps);
        if let Some(w) = words::conjugator(&image, &target) {
            debug_assert_eq!(words::concat(&[&w, &target, &words::inverse(&w)]), image);
            return Ok(Some((w, eps)));
        }
    }
    Err(Error::UnverifiedAutomorphism(format!(
        "image of the surface relator, {}, is not conjugate to the relator or its inverse",
        words::format_word(&image, &pres.names)
    )))
}

pub fn mapping_torus(pres: &SurfacePresentation, phi: &GeneratorEndomorphism) -> Result<MappingTorusPresentation> {
    let relator_twist = validate_automorphism(pres, phi)?;
    let n = pres.rank();
    let t = n as i32 + 1;
    let mut names = pres.names.clone();
    names.push("t".into());
    let mut relators = Vec::new();
    if let Some(r) = &pres.relator {
        relators.push(r.clone());
    }
    for (j, img) in phi.images.iter().enumerate() {
        let x = j as i32 + 1;
        relators.push(words::concat(&[&[-t, x, t], &words::inverse(img)]));
    }
    let mut grading = vec![0; n];
    grading.push(1);
    let mt = MappingTorusPresentation {
        surface: pres.clone(),
        phi: phi.clone(),
        presentation: Presentation { names, relators, grading },
        relator_twist,
    };
    // H1(M_f) = Z ⊕ coker(A − I) (the surface relator abelianizes to zero)
    let a = phi.abelian_matrix();
    let expected = {
        let m = a.sub(&Matrix::identity(n)).transpose();
        let mut g = AbelianGroup::cokernel_of_rows(&m);
        g.free_rank += 1;
        g
    };
    let got = mt.presentation.abelianization();
    if got != expected {
        return Err(Error::Internal(format!("mapping torus abelianization {got} differs from {expected}")));
    }
    Ok(mt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_matrices_lift() {
        for m in [[[2, 1], [1, 1]], [[0, -1], [1, 0]], [[-3, 5], [4, -7]], [[1, 0], [0, -1]], [[5, 2], [-3, -1]]] {
            let phi = GeneratorEndomorphism::torus_from_matrix(m).unwrap();
            let am = phi.abelian_matrix();
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(am[(r, c)], BigInt::from(m[r][c]));
                }
            }
            let pres = SurfacePresentation::closed(1);
            let mt = mapping_torus(&pres, &phi).unwrap();
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert_eq!(mt.orientation() as i64, det);
        }
    }

    #[test]
    fn abelianizations() {
        let torus = SurfacePresentation::closed(1);
        let id = mapping_torus(&torus, &GeneratorEndomorphism::identity(2)).unwrap();
        assert_eq!(id.presentation.abelianization().to_string(), "Z^3");
        let phi = GeneratorEndomorphism { images: vec![vec![1, 1, 2], vec![1, 2]] };
        assert_eq!(mapping_torus(&torus, &phi).unwrap().presentation.abelianization().to_string(), "Z");
        let g2 = SurfacePresentation::closed(2);
        let id2 = mapping_torus(&g2, &GeneratorEndomorphism::identity(4)).unwrap();
        assert_eq!(id2.presentation.abelianization().to_string(), "Z^5");
    }

    #[test]
    fn rejects_non_automorphisms() {
        let torus = SurfacePresentation::closed(1);
        let bad = GeneratorEndomorphism { images: vec![vec![1, 1], vec![2]] };
        assert!(matches!(mapping_torus(&torus, &bad), Err(Error::InvalidAutomorphism(_))));
        // a ↦ a b a b⁻¹ a⁻¹ ... induces the identity on homology but breaks the relator
        let sneaky = GeneratorEndomorphism { images: vec![vec![1, 2, 1, -2, -1], vec![2]] };
        assert!(matches!(mapping_torus(&torus, &sneaky), Err(Error::UnverifiedAutomorphism(_))));
    }
}
