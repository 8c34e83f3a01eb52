//! Characteristic levels: the intersection `K_n` of all subgroups of index at
//! most `n` in `Z²` is `d·Z²` with `d = lcm(1, …, n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::kernel::smith::smith_normal_form;
use crate::kernel::Matrix;

pub fn characteristic_level(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Sublattice of `Z²` in column Hermite form, basis `(a, 0)` and `(b, d)`
/// with `0 ≤ b < a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl Lattice {
    pub fn index(&self) -> BigInt {
        &self.a * &self.d
    }

    /// Hermite form of the span of the given generators (must have rank 2).
    pub fn from_generators(gens: &[[BigInt; 2]]) -> Self {
        let mut cols: Vec<[BigInt; 2]> = gens.iter().filter(|v| !v[0].is_zero() || !v[1].is_zero()).cloned().collect();
        // gcd of second coordinates into one column
        loop {
            let nz: Vec<usize> = (0..cols.len()).filter(|&i| !cols[i][1].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| cols[i][1].magnitude().clone()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = cols[i][1].div_floor(&cols[p][1]);
                    let (x0, x1) = (&cols[p][0] * &q, &cols[p][1] * &q);
                    cols[i][0] -= x0;
                    cols[i][1] -= x1;
                }
            }
        }
        let piv = (0..cols.len()).find(|&i| !cols[i][1].is_zero()).expect("rank 2 lattice");
        let mut pc = cols.remove(piv);
        if pc[1] < BigInt::zero() {
            pc = [-&pc[0], -&pc[1]];
        }
        let a = cols.iter().fold(BigInt::zero(), |g, v| g.gcd(&v[0]));
        assert!(!a.is_zero(), "rank 2 lattice");
        Lattice { b: pc[0].mod_floor(&a), a, d: pc[1].clone() }
    }

    pub fn basis(&self) -> [[BigInt; 2]; 2] {
        [[self.a.clone(), BigInt::zero()], [self.b.clone(), self.d.clone()]]
    }

    /// `L ∩ M` from the integer kernel of `[B_L | −B_M]`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let (bl, bm) = (self.basis(), other.basis());
        let m = Matrix::from_fn(2, 4, |r, c| if c < 2 { bl[c][r].clone() } else { -&bm[c - 2][r] });
        let s = smith_normal_form(&m);
        let gens: Vec<[BigInt; 2]> = (s.rank..4)
            .map(|k| {
                let u = [s.q[(0, k)].clone(), s.q[(1, k)].clone()];
                [&u[0] * &bl[0][0] + &u[1] * &bl[1][0], &u[0] * &bl[0][1] + &u[1] * &bl[1][1]]
            })
            .collect();
        Lattice::from_generators(&gens)
    }

    pub fn all_of_index(k: u64) -> Vec<Lattice> {
        let mut out = Vec::new();
        for a in (1..=k).filter(|a| k.is_multiple_of(*a)) {
            for b in 0..a {
                out.push(Lattice { a: a.into(), b: b.into(), d: (k / a).into() });
            }
        }
        out
    }
}

/// Brute-force `K_n`: intersect every sublattice of index `≤ n`.
pub fn characteristic_lattice_oracle(n: u64) -> Lattice {
    let mut acc = Lattice { a: BigInt::one(), b: BigInt::zero(), d: BigInt::one() };
    for k in 1..=n {
        for l in Lattice::all_of_index(k) {
            acc = acc.intersect(&l);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        assert_eq!(characteristic_level(1), BigInt::from(1));
        assert_eq!(characteristic_level(4), BigInt::from(12));
        assert_eq!(characteristic_level(6), BigInt::from(60));
    }

    #[test]
    fn sublattice_counts_are_divisor_sums() {
        for (k, sigma) in [(1, 1), (2, 3), (4, 7), (6, 12), (9, 13)] {
            assert_eq!(Lattice::all_of_index(k).len(), sigma);
        }
    }

    #[test]
    fn oracle_agrees() {
        for n in 1..=6 {
            let l = characteristic_lattice_oracle(n);
            let d = characteristic_level(n);
            assert_eq!(l, Lattice { a: d.clone(), b: BigInt::zero(), d });
        }
    }
}
