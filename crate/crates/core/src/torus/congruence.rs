//! Conjugacy modulo `n`: `X·A ≡ B·X` with `gcd(det X, n) = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::matrix2::IntegerMatrix2;
use super::sl2::{sl2_conjugate, Sl2Verdict};
use crate::error::{Error, Result};
use crate::kernel::smith::smith_normal_form;
use crate::kernel::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ModVerdict {
    Conjugate { witness: IntegerMatrix2 },
    NotConjugate { reason: String },
}

impl ModVerdict {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ModVerdict::Conjugate { .. })
    }
}

/// The commutation operator `X ↦ X·A − B·X` on `vec X = (x11, x12, x21, x22)`,
/// with its Smith form.
pub struct CommutationSolver {
    a: IntegerMatrix2,
    b: IntegerMatrix2,
    q: Matrix<BigInt>,
    diag: Vec<BigInt>,
}

impl CommutationSolver {
    pub fn new(a: &IntegerMatrix2, b: &IntegerMatrix2) -> Self {
        let (am, bm) = (a.to_rows(), b.to_rows());
        let idx = |i: usize, j: usize| 2 * i + j;
        let op = Matrix::from_fn(4, 4, |row, col| {
            let (i, j) = (row / 2, row % 2);
            let (r, c) = (col / 2, col % 2);
            // (X·A)_{ij} = Σ_k x_{ik} a_{kj};  (B·X)_{ij} = Σ_k b_{ik} x_{kj}
            let mut v = BigInt::zero();
            if r == i {
                v += &am[c][j];
            }
            if c == j {
                v -= &bm[i][r];
            }
            debug_assert_eq!(idx(r, c), col);
            v
        });
        let s = smith_normal_form(&op);
        let diag = (0..4).map(|i| s.d[(i, i)].clone()).collect();
        CommutationSolver { a: a.clone(), b: b.clone(), q: s.q, diag }
    }

    /// Generators of the solution module modulo `q`.
    fn generators(&self, modulus: &BigInt) -> Vec<[BigInt; 4]> {
        (0..4)
            .map(|i| {
                let g = self.diag[i].gcd(modulus);
                let scale = modulus / &g;
                let v: [BigInt; 4] = std::array::from_fn(|r| (&self.q[(r, i)] * &scale).mod_floor(modulus));
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// A solution modulo the prime power `q = p^e` with unit determinant.
    /// The determinant mod `p` is a quadratic form on the solution space, so
    /// it is nonzero somewhere iff it is nonzero on a generator or on a sum
    /// of two generators.
    fn unit_solution(&self, p: &BigInt, q: &BigInt) -> Option<[BigInt; 4]> {
        let gens = self.generators(q);
        let det_unit = |v: &[BigInt; 4]| !(&v[0] * &v[3] - &v[1] * &v[2]).mod_floor(p).is_zero();
        let mut cands: Vec<[BigInt; 4]> = gens.clone();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                cands.push(std::array::from_fn(|r| (&gens[i][r] + &gens[j][r]).mod_floor(q)));
            }
        }
        cands.into_iter().find(det_unit)
    }

    pub fn solve_mod(&self, n: u64) -> Result<ModVerdict> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let nb = BigInt::from(n);
        let (ar, br) = (self.a.reduce_mod(&nb), self.b.reduce_mod(&nb));
        if ar == br {
            return Ok(ModVerdict::Conjugate { witness: IntegerMatrix2::identity().reduce_mod(&nb) });
        }
        let (ta, tb) = (self.a.trace().mod_floor(&nb), self.b.trace().mod_floor(&nb));
        if ta != tb {
            return Ok(ModVerdict::NotConjugate { reason: format!("traces differ mod {n} ({ta} vs {tb})") });
        }
        // solve prime power by prime power, then glue with the CRT
        let mut x: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
        let mut m = BigInt::one();
        for (p, e) in factorize(n) {
            let p = BigInt::from(p);
            let q = num_traits::pow(p.clone(), e as usize);
            let Some(v) = self.unit_solution(&p, &q) else {
                let pe = if e == 1 { p.to_string() } else { format!("{p}^{e}") };
                return Ok(ModVerdict::NotConjugate { reason: format!("no invertible solution of X·A = B·X modulo {pe}") });
            };
            x = std::array::from_fn(|r| crt(&x[r], &m, &v[r], &q));
            m *= &q;
        }
        let [a, b, c, d] = x;
        let w = IntegerMatrix2 { a, b, c, d };
        verify_mod(&self.a, &self.b, &w, &nb)?;
        Ok(ModVerdict::Conjugate { witness: w })
    }
}

fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    // x ≡ r1 (m1), x ≡ r2 (m2), coprime moduli
    let e = m1.extended_gcd(m2);
    let m = m1 * m2;
    let k = ((r2 - r1) * &e.x).mod_floor(m2);
    (r1 + m1 * k).mod_floor(&m)
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn verify_mod(a: &IntegerMatrix2, b: &IntegerMatrix2, x: &IntegerMatrix2, n: &BigInt) -> Result<()> {
    let lhs = x.mul(a).reduce_mod(n);
    let rhs = b.mul(x).reduce_mod(n);
    if lhs != rhs || !x.det().gcd(n).is_one() {
        return Err(Error::Internal(format!("witness {x} fails verification modulo {n}")));
    }
    Ok(())
}

fn check_unimodular(m: &IntegerMatrix2) -> Result<()> {
    let d = m.det();
    if d.is_one() || (-&d).is_one() {
        Ok(())
    } else {
        Err(Error::NotUnimodular(d.to_string()))
    }
}

/// Conjugacy of the induced automorphisms of `(Z/n)²`, with a witness in `GL(2, Z/n)`.
pub fn congruent_conjugate_mod(a: &IntegerMatrix2, b: &IntegerMatrix2, n: u64) -> Result<ModVerdict> {
    check_unimodular(a)?;
    check_unimodular(b)?;
    CommutationSolver::new(a, b).solve_mod(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelVerdict {
    pub n: u64,
    #[serde(flatten)]
    pub verdict: ModVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub a: IntegerMatrix2,
    pub b: IntegerMatrix2,
    pub max: u64,
    pub levels: Vec<LevelVerdict>,
    pub sl2_conjugate: bool,
    pub sl2_detail: String,
    pub all_levels_conjugate: bool,
    pub first_failure: Option<u64>,
    pub procongruence_candidate: bool,
}

/// Tests every modulus `1..=max` (in parallel on the current rayon pool)
/// and compares with conjugacy in `SL(2, Z)`.
pub fn congruence_sweep(a: &IntegerMatrix2, b: &IntegerMatrix2, max: u64) -> Result<CongruenceReport> {
    if max == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let sl2 = sl2_conjugate(a, b)?;
    let solver = CommutationSolver::new(a, b);
    let levels = (1..=max)
        .into_par_iter()
        .map(|n| solver.solve_mod(n).map(|verdict| LevelVerdict { n, verdict }))
        .collect::<Result<Vec<_>>>()?;
    let first_failure = levels.iter().find(|l| !l.verdict.is_conjugate()).map(|l| l.n);
    let all = first_failure.is_none();
    let (sl2_conjugate, sl2_detail) = match &sl2 {
        Sl2Verdict::Conjugate { witness } => (true, format!("conjugate via {witness}")),
        Sl2Verdict::NotConjugate { reason } => (false, reason.clone()),
    };
    Ok(CongruenceReport {
        a: a.clone(),
        b: b.clone(),
        max,
        levels,
        sl2_conjugate,
        sl2_detail,
        all_levels_conjugate: all,
        first_failure,
        procongruence_candidate: all && !sl2_conjugate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: [[i64; 2]; 2]) -> IntegerMatrix2 {
        IntegerMatrix2::from_rows(r)
    }

    /// Exhaustive search over `GL(2, Z/n)`.
    fn brute(a: &IntegerMatrix2, b: &IntegerMatrix2, n: i64) -> bool {
        let nb = BigInt::from(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let x = m([[p, q], [r, s]]);
                        if x.det().gcd(&nb).is_one() && x.mul(a).reduce_mod(&nb) == b.mul(&x).reduce_mod(&nb) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn stebe_mod_small() {
        let a = m([[188, 275], [121, 177]]);
        let b = m([[188, 11], [3025, 177]]);
        for n in [2, 3, 4, 5, 6, 8, 9, 12] {
            assert!(brute(&a, &b, n), "brute n={n}");
            assert!(congruent_conjugate_mod(&a, &b, n as u64).unwrap().is_conjugate(), "n={n}");
        }
    }

    #[test]
    fn identity_and_failures() {
        let a = m([[2, 1], [1, 1]]);
        assert_eq!(
            congruent_conjugate_mod(&a, &a, 7).unwrap(),
            ModVerdict::Conjugate { witness: IntegerMatrix2::identity() }
        );
        assert!(!congruent_conjugate_mod(&m([[1, 1], [0, 1]]), &IntegerMatrix2::identity(), 2).unwrap().is_conjugate());
        assert!(matches!(congruent_conjugate_mod(&a, &a, 0), Err(Error::InvalidModulus(0))));
        let r = congruence_sweep(&a, &m([[3, 1], [2, 1]]), 10).unwrap();
        assert_eq!(r.first_failure, Some(2));
        assert!(!r.procongruence_candidate);
        let r = congruence_sweep(&a, &a, 10).unwrap();
        assert!(r.all_levels_conjugate && !r.procongruence_candidate);
    }

    #[test]
    fn matches_exhaustive_search() {
        let mats = [[[2, 1], [1, 1]], [[1, 1], [1, 2]], [[0, -1], [1, 0]], [[1, 2], [0, 1]], [[3, 2], [1, 1]], [[1, 0], [3, 1]], [[4, 1], [3, 1]]];
        for x in mats {
            for y in mats {
                for n in 2..=9 {
                    let (x, y) = (m(x), m(y));
                    assert_eq!(congruent_conjugate_mod(&x, &y, n as u64).unwrap().is_conjugate(), brute(&x, &y, n), "{x} {y} {n}");
                }
            }
        }
    }
}
