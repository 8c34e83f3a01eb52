use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::kernel::{Poly, RealAlgebraic};
use crate::torus::IntegerMatrix2;

macro_rules! fixture {
    ($name:literal) => {
        parse_nt(include_str!(concat!("../../../../fixtures/", $name))).unwrap()
    };
}

fn golden() -> RealAlgebraic {
    RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -3, 1])).unwrap()
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn indices(nt: &NTDecomposition, m: u64) -> Vec<(u8, i64)> {
    fixed_point_classes(nt, m).unwrap().records.iter().map(|r| (r.case.number(), r.index)).collect()
}

#[test]
fn five_cases() {
    let nt = fixture!("nt/case1_elliptic.json");
    assert_eq!(indices(&nt, 1), vec![(1, 1)]);
    assert_eq!(indices(&nt, 3), vec![(5, -1)]);

    let nt = fixture!("nt/case2_prongs.json");
    assert_eq!(indices(&nt, 1), vec![(2, -3), (2, 1)]);
    assert_eq!(indices(&nt, 3), vec![(2, -3), (2, -2)]);

    let nt = fixture!("nt/case3_crown.json");
    assert_eq!(indices(&nt, 1), vec![(3, -2)]);

    let nt = fixture!("nt/case4_annulus.json");
    assert_eq!(indices(&nt, 1), vec![(4, -2)]);

    let nt = fixture!("nt/case5_subsurface.json");
    assert_eq!(indices(&nt, 1), vec![(5, -3)]);
}

#[test]
fn swapped_singularities_pair_up() {
    let mut nt = fixture!("nt/case2_prongs.json");
    nt.points = vec![PointOrbit { name: "s".into(), site: Site::Piece(0), period: 2, prongs: 3, rotation: 0 }];
    let t = indexed_orbit_numbers(&nt, 2).unwrap();
    assert_eq!(t.rows[0].n_m, 0);
    assert_eq!(t.rows[1].nu, BTreeMap::from([(-2, 1)]));
    assert_eq!(fixed_point_classes(&nt, 2).unwrap().records.len(), 2);
}

#[test]
fn missing_orbit_data() {
    let mut nt = fixture!("nt/case3_crown.json");
    nt.pieces[0].complete_upto = None;
    assert_eq!(fixed_point_classes(&nt, 1), Err(crate::Error::OrbitDataIncomplete("P".into())));
    let mut nt = fixture!("nt/case3_crown.json");
    nt.pieces[0].complete_upto = Some(2);
    let t = indexed_orbit_numbers(&nt, 3).unwrap();
    assert!(t.rows[1].is_complete() && !t.rows[2].is_complete());
}

#[test]
fn validation() {
    let mut nt = fixture!("nt/case5_subsurface.json");
    nt.pieces[1] = Piece { name: "F".into(), kind: PieceKind::Periodic, euler: -1, stretch: None, order: Some(2), complete_upto: None };
    nt.circles[1].singularities = 0;
    assert!(matches!(nt.validate(), Err(crate::Error::InvalidDecomposition(_))));
    nt.annuli[0].twist = q(1, 3);
    nt.validate().unwrap();

    let mut nt = fixture!("two_pa_swap.json");
    nt.circle_map = vec![0, 1];
    assert!(nt.validate().is_err());
    assert!(parse_nt(r#"{"pieces": [{"name": "P", "kind": "pA", "euler": -1}]}"#).is_err());
    assert!(parse_nt(r#"{"pieces": [], "map": {"x": "y"}}"#).is_err());
}

#[test]
fn split_orders() {
    assert_eq!(split_order(&fixture!("nt/case3_crown.json")), 1);
    assert_eq!(split_order(&fixture!("two_pa_swap.json")), 2);
    assert_eq!(split_order(&fixture!("nt/three_periodic_cycle.json")), 3);
    let mut nt = fixture!("nt/case3_crown.json");
    nt.circles[0].rotation = 1;
    assert_eq!(split_order(&nt), 2);
}

#[test]
fn dilatation_and_deviation() {
    let nt = fixture!("nt/case3_crown.json");
    let d = dilatation(&nt);
    assert_eq!((d.base.clone(), d.root), (golden(), 1));
    assert_eq!(deviation(&nt), q(0, 1));

    let nt = fixture!("two_pa_swap.json");
    let d = dilatation(&nt);
    assert_eq!(d.root, 2);
    assert_eq!(d.to_decimal(12), "1.61803398875");
    assert_eq!(deviation(&nt), q(1, 2));
    assert!(deviation_warning(&nt).is_none());

    let nt = fixture!("nt/three_periodic_cycle.json");
    assert!(dilatation(&nt).is_one());
    assert_eq!(deviation(&nt), q(0, 1));
    assert!(deviation_warning(&nt).is_some());

    let mut nt = fixture!("nt/case4_annulus.json");
    nt.annuli[0].twist = q(4, 1);
    assert_eq!(deviation(&nt), q(4, 1));
    // the larger piece wins: 2 + √3
    assert_eq!(dilatation(&nt).base, RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -4, 1])).unwrap());
}

#[test]
fn iterates() {
    let nt = fixture!("two_pa_swap.json");
    assert_eq!(iterate(&nt, 1).unwrap(), nt);
    let sq = iterate(&nt, 2).unwrap();
    assert_eq!(sq.piece_map, vec![0, 1]);
    assert_eq!(sq.pieces[0].stretch, Some(golden()));
    assert_eq!(sq.annuli[0].twist, q(1, 1));

    let mut nt = fixture!("nt/case4_annulus.json");
    nt.annuli[0].twist = q(3, 2);
    assert_eq!(iterate(&nt, 4).unwrap().annuli[0].twist, q(6, 1));

    for name in ["two_pa_swap.json", "nt/case2_prongs.json", "nt/three_periodic_cycle.json"] {
        let nt = parse_nt(&std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()).unwrap();
        let (dil, dev) = (dilatation(&nt), deviation(&nt));
        for m in 1..=12 {
            let it = iterate(&nt, m).unwrap();
            assert!(dil.is_power(&dilatation(&it), m), "{name} m={m}");
            assert_eq!(deviation(&it), &dev * BigRational::from_integer(m.into()));
            // fixed classes of (f^m)^1 are those of f^m
            assert_eq!(fixed_point_classes(&it, 1).unwrap().records.len(), fixed_point_classes(&nt, m).unwrap().records.len());
        }
    }
}

#[test]
fn two_pa_swap_table() {
    let nt = fixture!("two_pa_swap.json");
    let t = indexed_orbit_numbers(&nt, 6).unwrap();
    assert!(t.is_consistent());
    for r in &t.rows {
        let expect = if r.m % 2 == 1 { BTreeMap::from([(1, 2)]) } else { BTreeMap::from([(-1, 1), (1, 2)]) };
        assert_eq!(r.nu, expect, "m={}", r.m);
    }
}

#[test]
fn graphs() {
    let nt = fixture!("nt/case4_annulus.json");
    let g = nt_graph(&nt);
    g.validate().unwrap();
    assert_eq!((g.vertices().len(), g.edges().len()), (3, 2));
    assert_eq!(geometric_graph(&nt), g);

    let nt = fixture!("two_pa_swap.json");
    let g = nt_graph(&nt);
    g.validate().unwrap();
    let (gd, qmap) = g.quotient();
    gd.validate().unwrap();
    assert_eq!((gd.vertices().len(), gd.edges().len()), (2, 1));
    assert_eq!(qmap.len(), g.len());
    assert_eq!(gd.canonical_form(), "vertices [pA ann] edges [1>0]");
    assert_eq!(g.canonical_form(), "vertices [pA pA ann] edges [2>0 2>1]");

    let g = nt_graph(&fixture!("nt/case2_prongs.json"));
    assert!(g.edges().is_empty());
}

#[test]
fn canonical_form_ignores_labels() {
    let nt = fixture!("nt/three_periodic_cycle.json");
    let r = nt.relabeled(&[2, 0, 1], &[5, 3, 4, 0, 1, 2], &[1, 2, 0], |s| format!("{s}'"));
    r.validate().unwrap();
    assert_eq!(nt_graph(&r).canonical_form(), nt_graph(&nt).canonical_form());
    assert_eq!(geometric_graph(&r).canonical_form(), geometric_graph(&nt).canonical_form());
    assert_eq!(split_order(&r), 3);
}

#[test]
fn nielsen_growth() {
    let t = anosov_model_table(&IntegerMatrix2::from_rows([[2, 1], [1, 1]]), 30);
    assert_eq!(t.rows[0].nu, BTreeMap::from([(-1, 1)]));
    assert_eq!(t.rows[1].n_m, 5);
    let g = dilatation_from_nielsen(&t).unwrap();
    let dil = Dilatation { base: golden(), root: 1 };
    assert!(g.within(30, &dil, &q(1, 100)));
    assert!(!g.within(1, &dil, &q(1, 100)));

    let empty = IndexedOrbitTable { rows: vec![OrbitRow::from_counts(1, BTreeMap::new()), OrbitRow::from_counts(2, BTreeMap::new())] };
    let g = dilatation_from_nielsen(&empty).unwrap();
    assert!(g.estimates.iter().all(|e| e.lo == q(1, 1) && e.hi == q(1, 1)));
    assert!(dilatation_from_nielsen(&IndexedOrbitTable { rows: vec![] }).is_err());
}

#[test]
fn shearing() {
    let s = |a: (i64, i64), b: (i64, i64)| shearing_from_slopes((a.0.into(), a.1.into()), (b.0.into(), b.1.into()));
    assert_eq!(s((1, 0), (1, 5)).unwrap(), Shearing::Degree(BigInt::from(5)));
    assert_eq!(s((1, 0), (1, 0)).unwrap(), Shearing::Trivial);
    assert_eq!(s((2, 1), (1, 1)).unwrap(), Shearing::Degree(BigInt::from(1)));
    assert_eq!(s((0, 0), (1, 1)), Err(crate::Error::ZeroSlope));
}
