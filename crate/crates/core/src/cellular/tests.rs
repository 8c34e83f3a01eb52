use super::*;
use crate::kernel::matrix::int_matrix;
use crate::surfgrp::presentation::{mapping_torus, GeneratorEndomorphism, SurfacePresentation};
use crate::surfgrp::rep::cyclic_through_grading;
use crate::surfgrp::{twisted_torsion, MappingTorusPresentation};

fn lp(p: &[(i64, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_i64s(p)
}

fn rf(n: &[(i64, i64)], d: &[(i64, i64)]) -> RationalFunction {
    RationalFunction::new(lp(n), lp(d)).unwrap()
}

fn torus(m: [[i64; 2]; 2]) -> MappingTorusPresentation {
    mapping_torus(&SurfacePresentation::closed(1), &GeneratorEndomorphism::torus_from_matrix(m).unwrap()).unwrap()
}

fn handle_swap() -> MappingTorusPresentation {
    let phi = GeneratorEndomorphism { images: vec![vec![3], vec![4], vec![1], vec![2]] };
    mapping_torus(&SurfacePresentation::closed(2), &phi).unwrap()
}

fn ints(v: &[ExactScalar]) -> Vec<i64> {
    v.iter().map(|x| x.to_string().parse().unwrap()).collect()
}

#[test]
fn identity_torus_matrices() {
    let mt = torus([[1, 0], [0, 1]]);
    let cmt = one_vertex(&mt);
    let rep = FiniteRepresentation::trivial(&mt.presentation);
    let [f0, f1, f2] = cmt.flow_boundary_matrices(&rep).unwrap();
    assert_eq!(f0, int_matrix(&[&[1]]));
    assert_eq!(f1, int_matrix(&[&[1, 0], &[0, 1]]));
    assert_eq!(f2, int_matrix(&[&[1]]));
    assert_eq!(cmt.zeta(&rep).unwrap(), RationalFunction::one());
    assert_eq!(ints(&cmt.lefschetz_numbers(&rep, 5).unwrap()), vec![0; 5]);
    // the deck action on T^2 × R is trivial but t − 1 is a unit in F(t)
    let tor = cmt.torsion(&rep).unwrap();
    assert!(tor.acyclic);
    assert_eq!(tor.class(), normalize_unit_class(&RationalFunction::one()));
}

#[test]
fn anosov_trivial_rep() {
    let mt = torus([[2, 1], [1, 1]]);
    let cmt = one_vertex(&mt);
    let rep = FiniteRepresentation::trivial(&mt.presentation);
    let [f0, f1, f2] = cmt.flow_boundary_matrices(&rep).unwrap();
    assert_eq!(f0.trace(), ExactScalar::one());
    assert_eq!(f1.trace(), ExactScalar::from_i64(3));
    assert_eq!(f2.trace(), ExactScalar::one());
    assert_eq!(det_one_minus_t(&f1), Poly::from_i64s(&[1, -3, 1]));
    let z = cmt.zeta(&rep).unwrap();
    assert_eq!(z, rf(&[(0, 1), (1, -3), (2, 1)], &[(0, 1), (1, -2), (2, 1)]));
    assert_eq!(ints(&cmt.lefschetz_numbers(&rep, 3).unwrap()), vec![-1, -5, -16]);
    let tor = cmt.torsion(&rep).unwrap();
    assert!(tor.acyclic);
    assert_eq!(tor.class(), normalize_unit_class(&z));
    assert_eq!(tor.homological(), tor.formula);
    assert_eq!(tor.class(), twisted_torsion(&mt, &rep).unwrap());
}

#[test]
fn sign_rep_matches_fox_route() {
    let mt = torus([[2, 1], [1, 1]]);
    let cmt = one_vertex(&mt);
    let rep = cyclic_through_grading(&mt.presentation, 2, 1).unwrap();
    let tor = cmt.torsion(&rep).unwrap();
    assert_eq!(tor.class(), twisted_torsion(&mt, &rep).unwrap());
    assert_eq!(tor.class(), normalize_unit_class(&rf(&[(0, 1), (1, 3), (2, 1)], &[(0, 1), (1, 2), (2, 1)])));
}

#[test]
fn genus_two() {
    let id = mapping_torus(&SurfacePresentation::closed(2), &GeneratorEndomorphism::identity(4)).unwrap();
    let cmt = one_vertex(&id);
    let rep = FiniteRepresentation::trivial(&id.presentation);
    assert_eq!(ints(&cmt.lefschetz_numbers(&rep, 2).unwrap()), vec![-2, -2]);
    assert_eq!(cmt.zeta(&rep).unwrap(), rf(&[(0, 1), (1, -2), (2, 1)], &[(0, 1)]));

    let mt = handle_swap();
    let cmt = one_vertex(&mt);
    let rep = FiniteRepresentation::trivial(&mt.presentation);
    let z = cmt.zeta(&rep).unwrap();
    assert_eq!(z, rf(&[(0, 1), (1, 2), (2, 1)], &[(0, 1)]));
    let tor = cmt.torsion(&rep).unwrap();
    assert!(tor.acyclic);
    assert_eq!(tor.class(), twisted_torsion(&mt, &rep).unwrap());
    assert_eq!(ints(&cmt.lefschetz_numbers(&rep, 4).unwrap()), vec![2, -2, 2, -2]);
}

#[test]
fn conjugate_rep_leaves_zeta() {
    let mt = handle_swap();
    let cmt = one_vertex(&mt);
    // S3-valued rep: the fiber generators a_i, b_i go to transpositions
    // compatible with the swap, t to the swap of the two handles' images.
    let s = |rows: &[&[i64]]| int_matrix(rows);
    let p = s(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let id = Matrix::<ExactScalar>::identity(3);
    let rep = FiniteRepresentation::new(&mt.presentation, "perm", vec![p.clone(), id.clone(), p.clone(), id.clone(), id], 100);
    let rep = rep.unwrap();
    let z = cmt.zeta(&rep).unwrap();
    let x = s(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 1]]);
    assert_eq!(cmt.zeta(&rep.conjugate(&x).unwrap()).unwrap(), z);
    assert_eq!(series_expand(&z, 1).unwrap()[0], ExactScalar::one());
    assert_eq!(cmt.torsion(&rep).unwrap().class(), twisted_torsion(&mt, &rep).unwrap());
}

#[test]
fn rejects_bad_decorations() {
    let mt = torus([[2, 1], [1, 1]]);
    let rep = FiniteRepresentation::trivial(&mt.presentation);
    let mut cmt = one_vertex(&mt);
    cmt.map.images[0][0][0].2 = vec![];
    assert!(matches!(cmt.zeta(&rep), Err(Error::GradingViolation { value: 0, .. })));

    let mt = handle_swap();
    let mut cmt = one_vertex(&mt);
    cmt.map.images[1][0].push((0, 1, vec![5]));
    let p = int_matrix(&[&[0, 1], &[1, 0]]);
    let id = Matrix::<ExactScalar>::identity(2);
    let rep = FiniteRepresentation::new(&mt.presentation, "swap", vec![p.clone(), id.clone(), p, id.clone(), id], 10).unwrap();
    assert!(one_vertex(&mt).zeta(&rep).is_ok());
    assert!(matches!(cmt.zeta(&rep), Err(Error::ChainCondition(_))));
}

#[test]
fn classical_trace_formula() {
    let act = |m: &[&[i64]]| {
        let h1 = Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        HomologyAction::new(Matrix::identity(1), h1, Matrix::identity(1))
    };
    assert_eq!(classical_lefschetz(&act(&[&[2, 1], &[1, 1]]), 1), BigInt::from(-1));
    assert_eq!(classical_lefschetz(&act(&[&[0, -1], &[1, 0]]), 2), BigInt::from(4));
    let g2 = HomologyAction::of_monodromy(
        &mapping_torus(&SurfacePresentation::closed(2), &GeneratorEndomorphism::identity(4)).unwrap(),
    );
    for m in 1..5 {
        assert_eq!(classical_lefschetz(&g2, m), BigInt::from(-2));
    }
}
