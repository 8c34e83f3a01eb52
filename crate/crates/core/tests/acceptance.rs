//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use procong::cellular::{classical_lefschetz, one_vertex, zeta_from_cellular, HomologyAction};
use procong::chars::{builtin_group, class_indicator_l, nielsen_bound, OrbitEntry, OrbitProjectionTable, BUILTIN_GROUPS};
use procong::kernel::{normalize_unit_class, ExactScalar, LaurentPolynomial, Poly, RealAlgebraic};
use procong::ntform::{
    anosov_model_table, deviation, dilatation, dilatation_from_nielsen, fixed_point_classes, geometric_graph,
    indexed_orbit_numbers, iterate, nt_graph, parse_nt, shearing_from_slopes, Dilatation, NTDecomposition, Shearing,
};
use procong::surfgrp::{
    mapping_torus, named_representation, parse_mapping_torus, parse_representation, twisted_alexander, twisted_torsion,
    FiniteRepresentation, GeneratorEndomorphism, MappingTorusPresentation, SurfacePresentation,
};
use procong::torus::{characteristic_lattice_oracle, characteristic_level, congruence_sweep, IntegerMatrix2};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// `(m, nu_m, N_m, incomplete pieces)`.
type Row = (u64, Vec<(i64, u64)>, u64, usize);
type Pinned = (&'static str, u64, Vec<(u8, i64)>);

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> String {
    std::fs::read_to_string(fixtures().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["procong"];
    full.extend_from_slice(args);
    full.push("--json");
    let (code, out) = procong::cli::run(full);
    check(code == 0, || format!("exit {code}: {out}"))?;
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

const STEBE_A: &str = "188,275;121,177";
const STEBE_B: &str = "188,11;3025,177";

fn stebe() -> Outcome {
    let start = Instant::now();
    let conj = cli_json(&["torus", "conj", STEBE_A, STEBE_B])?;
    check(conj["conjugate"] == Value::Bool(false), || format!("torus conj says {}", conj["conjugate"]))?;
    let sweep = cli_json(&["torus", "sweep", STEBE_A, STEBE_B, "--max", "1000"])?;
    let levels = sweep["levels"].as_array().ok_or("no levels")?;
    check(levels.len() == 1000, || format!("{} levels", levels.len()))?;
    let bad: Vec<&Value> = levels.iter().filter(|l| l["verdict"] != "conjugate").collect();
    check(bad.is_empty(), || format!("{} levels fail, first {}", bad.len(), bad[0]["n"]))?;
    check(sweep["sl2_conjugate"] == Value::Bool(false), || "sweep disagrees with conj".into())?;
    // the library route must give the same verdicts
    let r = congruence_sweep(&STEBE_A.parse().unwrap(), &STEBE_B.parse().unwrap(), 1000).map_err(|e| e.to_string())?;
    check(r.all_levels_conjugate && r.procongruence_candidate, || "library sweep disagrees".into())?;
    let t = start.elapsed();
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("not SL2-conjugate, conjugate mod every n <= 1000, {:.2}s", t.as_secs_f64()))
}

fn zeta_torsion() -> Outcome {
    let cases: [(&str, &str); 4] = [
        ("torus_A211.json", "trivial"),
        ("torus_A211.json", "sign"),
        ("mt/genus2_handle_swap.json", "trivial"),
        ("mt/genus2_handle_swap.json", "reps/handle_swap_perm.json"),
    ];
    for (fx, rep) in cases {
        let mt = parse_mapping_torus(&load(fx)).map_err(|e| e.to_string())?;
        let rep = match named_representation(rep, &mt.presentation).unwrap() {
            Some(r) => r,
            None => parse_representation(&load(rep), &mt.presentation).map_err(|e| e.to_string())?,
        };
        let cells = one_vertex(&mt);
        let via_zeta = normalize_unit_class(&zeta_from_cellular(&cells, &rep).map_err(|e| e.to_string())?);
        let via_fox = twisted_torsion(&mt, &rep).map_err(|e| e.to_string())?;
        check(via_zeta == via_fox, || format!("{fx} / {}: zeta gives {via_zeta}, presentation gives {via_fox}", rep.name))?;
        check(cells.torsion(&rep).map_err(|e| e.to_string())?.acyclic, || format!("{fx} not acyclic"))?;
    }
    Ok(format!("{} fixture/representation pairs agree", cases.len()))
}

fn random_sl2(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    loop {
        let m: [[i64; 2]; 2] = [[rng.gen_range(-5..=5), rng.gen_range(-5..=5)], [rng.gen_range(-5..=5), rng.gen_range(-5..=5)]];
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1 {
            return m;
        }
    }
}

fn random_monodromies() -> Vec<([[i64; 2]; 2], MappingTorusPresentation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..10)
        .map(|_| {
            let m = random_sl2(&mut rng);
            let phi = GeneratorEndomorphism::torus_from_matrix(m).unwrap();
            (m, mapping_torus(&SurfacePresentation::closed(1), &phi).unwrap())
        })
        .collect()
}

fn lefschetz() -> Outcome {
    for (m, mt) in random_monodromies() {
        let rep = FiniteRepresentation::trivial(&mt.presentation);
        let ls = one_vertex(&mt).lefschetz_numbers(&rep, 20).map_err(|e| e.to_string())?;
        let act = HomologyAction::of_monodromy(&mt);
        for (k, l) in ls.iter().enumerate() {
            let want = classical_lefschetz(&act, k as u32 + 1);
            check(*l == ExactScalar::from_bigint(want.clone()), || format!("{m:?}: L_{} = {l}, trace formula {want}", k + 1))?;
        }
    }
    Ok("10 monodromies, m <= 20".into())
}

fn alexander_oracle() -> Outcome {
    for (m, mt) in random_monodromies() {
        let rep = FiniteRepresentation::trivial(&mt.presentation);
        let d1 = twisted_alexander(&mt, &rep, 1).map_err(|e| e.to_string())?;
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let charpoly = LaurentPolynomial::from_i64s(&[(0, det), (1, -tr), (2, 1)]);
        check(d1.normalize_unit() == charpoly.normalize_unit(), || format!("{m:?}: Delta_1 = {d1}, charpoly {charpoly}"))?;
    }
    Ok("10 monodromies".into())
}

fn indices(nt: &NTDecomposition, m: u64) -> Result<Vec<(u8, i64)>, String> {
    let rep = fixed_point_classes(nt, m).map_err(|e| e.to_string())?;
    check(rep.records.iter().all(|r| r.is_legal()), || "illegal record".into())?;
    let mut v: Vec<(u8, i64)> = rep.records.iter().map(|r| (r.case.number(), r.index)).collect();
    v.sort();
    Ok(v)
}

fn index_table() -> Outcome {
    let golden: [Pinned; 7] = [
        ("nt/case1_elliptic.json", 1, vec![(1, 1)]),
        ("nt/case1_elliptic.json", 3, vec![(5, -1)]),
        ("nt/case2_prongs.json", 1, vec![(2, -3), (2, 1)]),
        ("nt/case2_prongs.json", 3, vec![(2, -3), (2, -2)]),
        ("nt/case3_crown.json", 1, vec![(3, -2)]),
        ("nt/case4_annulus.json", 1, vec![(4, -2)]),
        ("nt/case5_subsurface.json", 1, vec![(5, -3)]),
    ];
    for (fx, m, want) in &golden {
        let nt = parse_nt(&load(fx)).map_err(|e| e.to_string())?;
        let got = indices(&nt, *m)?;
        check(&got == want, || format!("{fx} m={m}: {got:?}, want {want:?}"))?;
    }
    Ok(format!("{} pinned rows", golden.len()))
}

const NT_FIXTURES: [&str; 7] = [
    "two_pa_swap.json",
    "nt/case1_elliptic.json",
    "nt/case2_prongs.json",
    "nt/case3_crown.json",
    "nt/case4_annulus.json",
    "nt/case5_subsurface.json",
    "nt/three_periodic_cycle.json",
];

struct Invariants {
    rows: Vec<Row>,
    dil: Dilatation,
    dev: BigRational,
    graphs: (String, String),
}

fn invariants(nt: &NTDecomposition) -> Result<Invariants, String> {
    let t = indexed_orbit_numbers(nt, 12).map_err(|e| e.to_string())?;
    Ok(Invariants {
        rows: t.rows.iter().map(|r| (r.m, r.nu.iter().map(|(&i, &c)| (i, c)).collect(), r.n_m, r.remainder.len())).collect(),
        dil: dilatation(nt),
        dev: deviation(nt),
        graphs: (nt_graph(nt).canonical_form(), geometric_graph(nt).canonical_form()),
    })
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut count = 0;
    for fx in NT_FIXTURES {
        let nt = parse_nt(&load(fx)).map_err(|e| e.to_string())?;
        let base = invariants(&nt)?;
        for trial in 0..100 {
            // every third trial relabels by the action of f itself, a graph automorphism
            let r = if trial % 3 == 0 {
                nt.relabeled(&nt.piece_map, &nt.circle_map, &nt.annulus_map, |s| format!("{s}*"))
            } else {
                let (p, c, a) = (shuffled(&mut rng, nt.pieces.len()), shuffled(&mut rng, nt.circles.len()), shuffled(&mut rng, nt.annuli.len()));
                nt.relabeled(&p, &c, &a, |s| format!("r{trial}_{s}"))
            };
            r.validate().map_err(|e| format!("{fx}: relabeling invalid: {e}"))?;
            let inv = invariants(&r)?;
            check(inv.rows == base.rows, || format!("{fx} trial {trial}: orbit counts changed"))?;
            check(inv.dil.same_value(&base.dil), || format!("{fx} trial {trial}: Dil changed"))?;
            check(inv.dev == base.dev, || format!("{fx} trial {trial}: Dev changed"))?;
            check(inv.graphs == base.graphs, || format!("{fx} trial {trial}: graph type changed"))?;
            count += 1;
        }
        for m in 1..=12u64 {
            let it = iterate(&nt, m).map_err(|e| e.to_string())?;
            check(base.dil.is_power(&dilatation(&it), m), || format!("{fx}: Dil(f^{m}) != Dil(f)^{m}"))?;
            let want = &base.dev * BigRational::from_integer(m.into());
            check(deviation(&it) == want, || format!("{fx}: Dev(f^{m}) != {m} Dev(f)"))?;
        }
    }
    Ok(format!("{count} relabelings, power laws for m <= 12 on {} fixtures", NT_FIXTURES.len()))
}

fn nielsen_growth() -> Outcome {
    let table = anosov_model_table(&IntegerMatrix2::from_rows([[2, 1], [1, 1]]), 30);
    let g = dilatation_from_nielsen(&table).map_err(|e| e.to_string())?;
    let dil = Dilatation { base: RealAlgebraic::largest_root(&Poly::from_i64s(&[1, -3, 1])).unwrap(), root: 1 };
    let tol = BigRational::new(1.into(), 100.into());
    check(g.within(30, &dil, &tol), || format!("gap at m=30 is {:?}", g.relative_gap(30, &dil)))?;
    let gap = g.relative_gap(30, &dil).ok_or("no estimate at m=30")?;
    Ok(format!("relative gap at m=30 below {}", procong::kernel::scalar::format_rational(&round_up(&gap))))
}

fn round_up(x: &BigRational) -> BigRational {
    let s = BigInt::from(100000);
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

fn characters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tables = 0;
    for name in BUILTIN_GROUPS {
        let g = builtin_group(name).map_err(|e| e.to_string())?;
        let k = g.class_count();
        for _ in 0..200 {
            let n = rng.gen_range(0..8);
            let entries: Vec<OrbitEntry> = (0..n)
                .map(|o| OrbitEntry { orbit: o, index: rng.gen_range(1..5) * if rng.gen_bool(0.5) { 1 } else { -1 }, class: rng.gen_range(0..k) })
                .collect();
            let t = OrbitProjectionTable::new(1, entries.clone()).map_err(|e| e.to_string())?;
            for c in 0..k {
                // errors if the character expansion and the direct sum differ
                let v = class_indicator_l(&t, &g, c).map_err(|e| format!("{name}: {e}"))?;
                let direct: i64 = entries.iter().filter(|e| e.class == c).map(|e| e.index).sum();
                check(v == ExactScalar::from_i64(direct), || format!("{name} class {c}: {v} vs {direct}"))?;
            }
            let classes: BTreeSet<usize> = entries.iter().map(|e| e.class).collect();
            let b = nielsen_bound(&t, &g).map_err(|e| e.to_string())?;
            if classes.len() == n {
                check(b.bound == n, || format!("{name}: bound {} for {n} distinct classes", b.bound))?;
            }
            tables += 1;
        }
    }
    Ok(format!("{tables} tables over {} groups", BUILTIN_GROUPS.len()))
}

fn levels() -> Outcome {
    let expected = [1u64, 2, 6, 12, 60, 60, 420, 840, 2520, 2520];
    for n in 1..=10u64 {
        let d = characteristic_level(n);
        let l = characteristic_lattice_oracle(n);
        check(l.a == d && l.d == d && l.b == BigInt::from(0), || format!("n={n}: level {d}, oracle {l:?}"))?;
        check(d == BigInt::from(expected[n as usize - 1]), || format!("n={n}: {d}"))?;
    }
    Ok("n <= 10 match the lattice oracle".into())
}

fn shear(g: (i64, i64), h: (i64, i64)) -> Result<Shearing, String> {
    shearing_from_slopes((g.0.into(), g.1.into()), (h.0.into(), h.1.into())).map_err(|e| e.to_string())
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut u = [[1i64, 0], [0, 1]];
    for _ in 0..4 {
        let k = rng.gen_range(-3..=3);
        let e = if rng.gen_bool(0.5) { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
        u = [
            [u[0][0] * e[0][0] + u[0][1] * e[1][0], u[0][0] * e[0][1] + u[0][1] * e[1][1]],
            [u[1][0] * e[0][0] + u[1][1] * e[1][0], u[1][0] * e[0][1] + u[1][1] * e[1][1]],
        ];
    }
    if rng.gen_bool(0.5) {
        u = [[u[0][1], u[0][0]], [u[1][1], u[1][0]]];
    }
    u
}

fn apply(u: &[[i64; 2]; 2], v: (i64, i64)) -> (i64, i64) {
    (u[0][0] * v.0 + u[0][1] * v.1, u[1][0] * v.0 + u[1][1] * v.1)
}

fn shearing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut nonparallel = 0;
    while nonparallel < 1000 {
        let g = (rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        let h = (rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        if g == (0, 0) || h == (0, 0) {
            continue;
        }
        let det = g.0 * h.1 - g.1 * h.0;
        let s = shear(g, h)?;
        let want = if det == 0 { Shearing::Trivial } else { Shearing::Degree(BigInt::from(det.abs())) };
        check(s == want, || format!("{g:?} {h:?}: {s}"))?;
        let u = random_unimodular(&mut rng);
        let s2 = shear(apply(&u, g), apply(&u, h))?;
        check(s2 == s, || format!("{g:?} {h:?} under {u:?}: {s2} vs {s}"))?;
        if det != 0 {
            nonparallel += 1;
        }
    }
    for _ in 0..200 {
        let g = (rng.gen_range(-20..=20), rng.gen_range(1..=20));
        let k = rng.gen_range(-5..=5);
        if k == 0 {
            continue;
        }
        check(shear(g, (k * g.0, k * g.1))? == Shearing::Trivial, || format!("{g:?} x {k} not trivial"))?;
    }
    Ok("1000 nonparallel pairs, parallel pairs trivial, unimodular invariance".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 Stebe pair and congruence sweep", stebe),
        ("2 zeta function equals torsion", zeta_torsion),
        ("3 Lefschetz numbers from zeta", lefschetz),
        ("4 Alexander polynomial of fibered class", alexander_oracle),
        ("5 fixed point class indices", index_table),
        ("6 invariance and power laws", invariance),
        ("7 dilatation from Nielsen growth", nielsen_growth),
        ("8 character reconstruction", characters),
        ("9 characteristic levels", levels),
        ("10 shearing degree", shearing),
    ];
    let mut failed = Vec::new();
    // written past the test harness's capture so the lines always show
    let mut out = std::io::stdout().lock();
    for (name, f) in criteria {
        let line = match f() {
            Ok(detail) => format!("PASS {name}: {detail}\n"),
            Err(why) => {
                failed.push(name);
                format!("FAIL {name}: {why}\n")
            }
        };
        out.write_all(line.as_bytes()).unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
