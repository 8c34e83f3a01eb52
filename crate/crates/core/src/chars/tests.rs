use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::kernel::ExactScalar;
use crate::Error;

fn table(entries: &[(usize, i64, usize)]) -> OrbitProjectionTable {
    OrbitProjectionTable::new(1, entries.iter().map(|&(orbit, index, class)| OrbitEntry { orbit, index, class }).collect()).unwrap()
}

fn ints(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| ExactScalar::from_i64(x)).collect()
}

/// Class sums straight from the multiplication table.
fn class_sizes_by_brute_force(g: &FiniteGroupTable) -> Vec<usize> {
    let n = g.order();
    let mut sizes: Vec<usize> = g
        .classes
        .iter()
        .map(|c| {
            let x = c[0];
            (0..n).filter(|&y| (0..n).any(|h| g.mult[h][x] == g.mult[y][h])).count()
        })
        .collect();
    sizes.sort_unstable();
    sizes
}

#[test]
fn builtin_tables() {
    let c2 = builtin_group("cyclic(2)").unwrap();
    assert_eq!(c2.classes, vec![vec![0], vec![1]]);
    assert_eq!(c2.characters, vec![ints(&[1, 1]), ints(&[1, -1])]);

    let s3 = builtin_group("S3").unwrap();
    let mut sizes: Vec<usize> = s3.classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 3]);
    assert_eq!(sizes, class_sizes_by_brute_force(&s3));
    let degrees: Vec<ExactScalar> = s3.characters.iter().map(|r| r[0].clone()).collect();
    assert_eq!(degrees, ints(&[1, 1, 2]));

    let c1 = builtin_group("cyclic(1)").unwrap();
    assert_eq!((c1.order(), c1.characters.len()), (1, 1));

    for name in ["D4", "Q8", "C7", "z/12", "cyclic(60)"] {
        let g = builtin_group(name).unwrap();
        assert_eq!(class_sizes_by_brute_force(&g), {
            let mut s: Vec<usize> = g.classes.iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        });
    }
    assert_eq!(builtin_group("D4").unwrap().class_count(), 5);
    assert!(matches!(builtin_group("A5"), Err(Error::UnknownGroup(_))));
    assert!(matches!(builtin_group("cyclic(61)"), Err(Error::UnknownGroup(_))));
}

#[test]
fn lefschetz_sums() {
    let g = builtin_group("cyclic(2)").unwrap();
    let t = table(&[(0, -1, 0), (1, -1, 1)]);
    assert_eq!(twisted_l_from_orbits(&t, &g.characters[0]).unwrap(), ExactScalar::from_i64(-2));
    assert_eq!(twisted_l_from_orbits(&t, &g.characters[1]).unwrap(), ExactScalar::from_i64(0));
    assert_eq!(twisted_l_from_orbits(&table(&[]), &g.characters[1]).unwrap(), ExactScalar::zero());
    assert_eq!(class_indicator_l(&t, &g, 1).unwrap(), ExactScalar::from_i64(-1));
    assert_eq!(class_indicator_l(&table(&[]), &g, 0).unwrap(), ExactScalar::zero());
    assert_eq!(twisted_l_from_orbits(&table(&[(0, 1, 5)]), &g.characters[0]), Err(Error::ClassIdMismatch(5)));

    let s3 = builtin_group("S3").unwrap();
    let transposition = s3.class_of[1];
    assert_eq!(class_indicator_l(&table(&[(0, 2, transposition)]), &s3, transposition).unwrap(), ExactScalar::from_i64(2));
}

#[test]
fn bounds() {
    let g = builtin_group("cyclic(2)").unwrap();
    let mut t = table(&[(0, -1, 0), (1, -1, 1)]);
    assert_eq!(nielsen_bound(&t, &g).unwrap().bound, 2);
    assert!(nielsen_bound(&t, &g).unwrap().nu.is_none());
    t.attained = true;
    assert_eq!(nielsen_bound(&t, &g).unwrap().nu, Some(BTreeMap::from([(-1, 2)])));
    assert_eq!(nielsen_bound(&table(&[(0, 1, 1), (1, -1, 1)]), &g).unwrap().bound, 0);
    assert_eq!(nielsen_bound(&table(&[]), &g).unwrap().bound, 0);
}

#[test]
fn tables_reject_bad_rows() {
    assert!(OrbitProjectionTable::new(1, vec![OrbitEntry { orbit: 0, index: 0, class: 0 }]).is_err());
    let (t, g) = OrbitProjectionTable::from_json(r#"{"m": 2, "group": "S3", "entries": [[0, -1, 2], [1, 3, 0]]}"#).unwrap();
    assert_eq!((t.m, g.as_deref(), t.entries.len()), (2, Some("S3"), 2));
    assert_eq!(OrbitProjectionTable::from_json(&t.to_json(Some("S3"))).unwrap().0, t);
}

#[test]
fn random_tables_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["cyclic(5)", "cyclic(8)", "S3", "D4", "Q8"] {
        let g = builtin_group(name).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(0..6);
            let rows: Vec<(usize, i64, usize)> = (0..n)
                .map(|o| {
                    let i = rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    (o, i, rng.gen_range(0..g.class_count()))
                })
                .collect();
            let t = table(&rows);
            let b = nielsen_bound(&t, &g).unwrap();
            assert!(b.bound <= n);
            let classes: std::collections::BTreeSet<usize> = rows.iter().map(|r| r.2).collect();
            if classes.len() == n {
                assert_eq!(b.bound, n);
            }
        }
    }
}

#[test]
fn lifted_sums_match_scalar_sums() {
    let g = builtin_group("cyclic(12)").unwrap();
    let t = table(&[(0, 2, 1), (1, -1, 5), (2, 3, 5), (3, -2, 11)]);
    for (row, chi) in g.lifts.iter().zip(&g.characters) {
        let mut acc = super::group::Lift::zero(g.conductor);
        for e in &t.entries {
            acc.add_scaled(&row[e.class], e.index as i128);
        }
        assert_eq!(acc.value(), twisted_l_from_orbits(&t, chi).unwrap());
    }
}
