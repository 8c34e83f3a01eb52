use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{read, resolve, CharsCommand, Command, MtArgs, NtCommand, Report, RunConfig, TorusCommand, SCHEMA};
use crate::cellular::{self, classical_lefschetz, HomologyAction};
use crate::chars::{builtin_group, class_indicator_l, nielsen_bound, twisted_l_from_orbits, FiniteGroupTable, OrbitProjectionTable};
use crate::error::{Error, Result};
use crate::kernel::scalar::format_rational;
use crate::kernel::{log_coefficients, series_expand, ExactScalar, LaurentPolynomial, Matrix, RealAlgebraic};
use crate::ntform::{self, NTDecomposition};
use crate::surfgrp::{self, FiniteRepresentation, MappingTorusPresentation};
use crate::torus::{self, IntegerMatrix2, ModVerdict, Sl2Verdict};

pub(super) fn run(cfg: &RunConfig) -> Result<Report> {
    match &cfg.command {
        Command::Torus(t) => torus_cmd(t),
        Command::Alexander(a) => alexander(a),
        Command::Torsion(a) => torsion(a),
        Command::Zeta(a) => zeta(a),
        Command::Lefschetz(a) => lefschetz(a),
        Command::Nt(NtCommand::Analyze { file, upto }) => nt_analyze(file, *upto, cfg.approx),
        Command::Nt(NtCommand::Shear { g, h }) => nt_shear(g, h),
        Command::Chars(CharsCommand::Decompose { table, group }) => chars_decompose(table, group.as_deref()),
        Command::Chars(CharsCommand::Bound { table, group }) => chars_bound(table, group.as_deref()),
    }
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn report(command: &str, fields: Value, text: String) -> Report {
    let mut m = header(command);
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Report { value: Value::Object(m), text }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

const APPROX_DIGITS: usize = 30;

// ---- torus

fn matrix(s: &str) -> Result<IntegerMatrix2> {
    s.parse()
}

fn torus_cmd(t: &TorusCommand) -> Result<Report> {
    match t {
        TorusCommand::Conj { a, b } => {
            let (a, b) = (matrix(a)?, matrix(b)?);
            let (na, nb) = (torus::normal_form(&a)?, torus::normal_form(&b)?);
            let verdict = torus::sl2_conjugate(&a, &b)?;
            let mut text = format!("A = {a}\nB = {b}\ninvariant(A) = {}\ninvariant(B) = {}\n", na.invariant, nb.invariant);
            let fields = match &verdict {
                Sl2Verdict::Conjugate { witness } => {
                    writeln!(text, "SL(2,Z): conjugate, X = {witness} with X A X^-1 = B").unwrap();
                    json!({ "conjugate": true, "witness": witness })
                }
                Sl2Verdict::NotConjugate { reason } => {
                    writeln!(text, "SL(2,Z): not conjugate ({reason})").unwrap();
                    json!({ "conjugate": false, "reason": reason })
                }
            };
            let mut f = json!({
                "a": a, "b": b,
                "invariants": [na.invariant.to_string(), nb.invariant.to_string()],
            });
            f.as_object_mut().unwrap().extend(fields.as_object().unwrap().clone());
            Ok(report("torus conj", f, text))
        }
        TorusCommand::Congr { a, b, n } => {
            let (a, b) = (matrix(a)?, matrix(b)?);
            let v = torus::congruent_conjugate_mod(&a, &b, *n)?;
            let text = match &v {
                ModVerdict::Conjugate { witness } => format!("mod {n}: conjugate, X = {witness} with X A = B X\n"),
                ModVerdict::NotConjugate { reason } => format!("mod {n}: not conjugate ({reason})\n"),
            };
            Ok(report("torus congr", json!({ "a": a, "b": b, "n": n, "result": v }), text))
        }
        TorusCommand::Sweep { a, b, max } => {
            let (a, b) = (matrix(a)?, matrix(b)?);
            let r = torus::congruence_sweep(&a, &b, *max)?;
            let mut text = format!("A = {a}\nB = {b}\n");
            if r.sl2_conjugate {
                writeln!(text, "SL(2,Z): conjugate ({})", r.sl2_detail).unwrap();
            } else {
                writeln!(text, "SL(2,Z): not conjugate ({})", r.sl2_detail).unwrap();
            }
            let passed = r.levels.iter().filter(|l| l.verdict.is_conjugate()).count();
            writeln!(text, "levels 1..={max}: {passed} of {} conjugate", r.levels.len()).unwrap();
            match r.first_failure {
                Some(n) => writeln!(text, "first failing level: {n}").unwrap(),
                None => writeln!(text, "first failing level: none").unwrap(),
            }
            let fails: Vec<u64> = r.levels.iter().filter(|l| !l.verdict.is_conjugate()).map(|l| l.n).collect();
            if !fails.is_empty() {
                writeln!(text, "failing levels: {}", join(&fails)).unwrap();
            }
            writeln!(text, "procongruence candidate: {}", if r.procongruence_candidate { "yes" } else { "no" }).unwrap();
            Ok(report("torus sweep", serde_json::to_value(&r).expect("serializable"), text))
        }
        TorusCommand::Klevel { n } => {
            if *n == 0 {
                return Err(Error::InvalidInput("klevel needs n >= 1".into()));
            }
            let d = torus::characteristic_level(*n);
            let index = &d * &d;
            let mut text = format!("K_{n} = {d} Z^2 (index {index})\n");
            // the oracle enumerates every sublattice of index <= n
            let oracle = (*n <= 12).then(|| torus::characteristic_lattice_oracle(*n));
            let agrees = oracle.as_ref().map(|l| l.a == d && l.d == d && l.b == BigInt::from(0));
            if let Some(ok) = agrees {
                writeln!(text, "lattice oracle: {}", if ok { "agrees" } else { "DISAGREES" }).unwrap();
                if !ok {
                    return Err(Error::Internal(format!("characteristic level {d} disagrees with the lattice oracle")));
                }
            }
            Ok(report(
                "torus klevel",
                json!({ "n": n, "level": d.to_string(), "index": index.to_string(), "oracle_agrees": agrees }),
                text,
            ))
        }
    }
}

// ---- mapping tori

struct Loaded {
    mt: MappingTorusPresentation,
    rep: FiniteRepresentation,
    name: String,
}

fn load_mt(a: &MtArgs) -> Result<Loaded> {
    let json = read(&a.fixture)?;
    let mt = surfgrp::parse_mapping_torus(&json)?;
    let rep = match surfgrp::named_representation(&a.rep, &mt.presentation)? {
        Some(r) => r,
        None => {
            let path = resolve(&a.rep).map_err(|_| Error::InvalidInput(format!("unknown representation {:?}", a.rep)))?;
            let text = std::fs::read_to_string(&path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            surfgrp::parse_representation(&text, &mt.presentation)?
        }
    };
    let name = serde_json::from_str::<Value>(&json)
        .ok()
        .and_then(|v| v.get("name").and_then(Value::as_str).map(str::to_string))
        .unwrap_or_else(|| a.fixture.clone());
    Ok(Loaded { mt, rep, name })
}

fn mt_fields(l: &Loaded) -> Value {
    json!({
        "fixture": l.name,
        "genus": l.mt.surface.genus,
        "boundary": l.mt.surface.boundary_count,
        "rep": { "name": l.rep.name, "dim": l.rep.dim, "image_order": l.rep.image_order },
    })
}

fn mt_header(l: &Loaded) -> String {
    format!(
        "fixture {} (genus {}, {} boundary), rep {} (dim {}, image order {})\n",
        l.name, l.mt.surface.genus, l.mt.surface.boundary_count, l.rep.name, l.rep.dim, l.rep.image_order
    )
}

fn merge(mut a: Value, b: Value) -> Value {
    a.as_object_mut().unwrap().extend(b.as_object().unwrap().clone());
    a
}

fn alexander(a: &MtArgs) -> Result<Report> {
    let l = load_mt(a)?;
    let orders = surfgrp::chain_complex(&l.mt, &l.rep)?.orders()?;
    let mut text = mt_header(&l);
    for (n, d) in orders.iter().enumerate() {
        writeln!(text, "Delta_{n} = {d}").unwrap();
    }
    let shown: Vec<String> = orders.iter().map(LaurentPolynomial::to_string).collect();
    Ok(report("alexander", merge(mt_fields(&l), json!({ "orders": orders, "orders_text": shown })), text))
}

fn torsion(a: &MtArgs) -> Result<Report> {
    let l = load_mt(a)?;
    let by_presentation = surfgrp::twisted_torsion(&l.mt, &l.rep)?;
    let cells = cellular::one_vertex(&l.mt).torsion(&l.rep)?;
    let class = cells.class();
    if cells.acyclic && class != by_presentation {
        return Err(Error::Internal(format!("cellular torsion {class} differs from presentation torsion {by_presentation}")));
    }
    let mut text = mt_header(&l);
    writeln!(text, "acyclic: {}", if cells.acyclic { "yes" } else { "no" }).unwrap();
    writeln!(text, "torsion (presentation) = {by_presentation}").unwrap();
    writeln!(text, "torsion (flow cells) = {}", cells.formula).unwrap();
    writeln!(text, "torsion class = {class}").unwrap();
    Ok(report(
        "torsion",
        merge(
            mt_fields(&l),
            json!({
                "acyclic": cells.acyclic,
                "presentation": by_presentation.to_string(),
                "flow_formula": cells.formula.to_string(),
                "class": class.to_string(),
            }),
        ),
        text,
    ))
}

fn zeta(a: &MtArgs) -> Result<Report> {
    if a.terms == 0 {
        return Err(Error::InvalidInput("--terms must be positive".into()));
    }
    let l = load_mt(a)?;
    let cmt = cellular::one_vertex(&l.mt);
    let z = cmt.zeta(&l.rep)?;
    let factors: Vec<String> = cmt
        .flow_boundary_matrices(&l.rep)?
        .iter()
        .map(|m| LaurentPolynomial::from_poly(&cellular::det_one_minus_t(m), 0).to_string())
        .collect();
    let series = series_expand(&z, a.terms + 1)?;
    let ls = log_coefficients(&series, a.terms)?;
    let mut text = mt_header(&l);
    writeln!(text, "zeta = {z}").unwrap();
    for (n, f) in factors.iter().enumerate() {
        writeln!(text, "  det(1 - t F_{n}) = {f}").unwrap();
    }
    writeln!(text, "series = {}", join(&series)).unwrap();
    writeln!(text, "L = {}", join(&ls)).unwrap();
    Ok(report(
        "zeta",
        merge(
            mt_fields(&l),
            json!({
                "zeta": z.to_string(),
                "numerator": z.num(),
                "denominator": z.den(),
                "flow_factors": factors,
                "series": series,
                "lefschetz": ls,
            }),
        ),
        text,
    ))
}

fn lefschetz(a: &MtArgs) -> Result<Report> {
    if a.upto == 0 {
        return Err(Error::InvalidInput("--upto must be positive".into()));
    }
    let l = load_mt(a)?;
    let ls = cellular::one_vertex(&l.mt).lefschetz_numbers(&l.rep, a.upto)?;
    let mut text = mt_header(&l);
    // the classical trace formula applies to the trivial representation
    let trivial = l.rep.dim == 1 && l.rep.matrices.iter().all(|m| *m == Matrix::identity(1));
    let classical: Option<Vec<BigInt>> = trivial.then(|| {
        let act = HomologyAction::of_monodromy(&l.mt);
        (1..=a.upto as u32).map(|m| classical_lefschetz(&act, m)).collect()
    });
    for (i, v) in ls.iter().enumerate() {
        match &classical {
            Some(c) => writeln!(text, "L_{} = {v}  (trace formula {})", i + 1, c[i]).unwrap(),
            None => writeln!(text, "L_{} = {v}", i + 1).unwrap(),
        }
    }
    if let Some(c) = &classical {
        let bad = ls.iter().zip(c).position(|(x, y)| *x != ExactScalar::from_bigint(y.clone()));
        if let Some(i) = bad {
            return Err(Error::Internal(format!("L_{} disagrees with the trace formula", i + 1)));
        }
    }
    let classical: Option<Vec<String>> = classical.map(|c| c.iter().map(BigInt::to_string).collect());
    Ok(report("lefschetz", merge(mt_fields(&l), json!({ "lefschetz": ls, "classical": classical })), text))
}

// ---- Nielsen-Thurston

fn load_nt(path: &str) -> Result<(NTDecomposition, String)> {
    let json = read(path)?;
    let file: ntform::NtFile = serde_json::from_str(&json).map_err(|e| Error::Parse(e.to_string()))?;
    let nt = file.build()?;
    Ok((nt, file.name.unwrap_or_else(|| path.to_string())))
}

fn nt_analyze(path: &str, upto: u64, with_approx: bool) -> Result<Report> {
    if upto == 0 {
        return Err(Error::InvalidInput("--upto must be positive".into()));
    }
    let (nt, name) = load_nt(path)?;
    let d = ntform::split_order(&nt);
    let dil = ntform::dilatation(&nt);
    let dev = ntform::deviation(&nt);
    let warning = ntform::deviation_warning(&nt);
    let table = ntform::indexed_orbit_numbers(&nt, upto)?;
    let ntg = ntform::nt_graph(&nt);
    let geo = ntform::geometric_graph(&nt);
    ntg.validate()?;
    geo.validate()?;

    let dil_approx = with_approx.then(|| dil.to_decimal(APPROX_DIGITS));
    let dev_approx = with_approx.then(|| RealAlgebraic::Rational(dev.clone()).to_decimal(APPROX_DIGITS));

    let mut text = format!("normal form {name}\n");
    writeln!(text, "split order = {d}").unwrap();
    writeln!(text, "Dil = {dil}").unwrap();
    if let Some(s) = &dil_approx {
        writeln!(text, "    ~ {s}").unwrap();
    }
    writeln!(text, "Dev = {}", format_rational(&dev)).unwrap();
    if let Some(s) = &dev_approx {
        writeln!(text, "    ~ {s}").unwrap();
    }
    if let Some(w) = &warning {
        writeln!(text, "warning: {w}").unwrap();
    }
    writeln!(text, "m  N_m  nu_m").unwrap();
    for r in &table.rows {
        let nu: Vec<String> = r.nu.iter().map(|(i, c)| format!("{i}:{c}")).collect();
        let rest = if r.remainder.is_empty() { String::new() } else { format!("  (incomplete: {})", r.remainder.join(", ")) };
        writeln!(text, "{}  {}  {{{}}}{rest}", r.m, r.n_m, nu.join(", ")).unwrap();
    }
    let (ntc, geoc) = (ntg.canonical_form(), geo.canonical_form());
    writeln!(text, "NT graph: {ntc}").unwrap();
    text.push_str(&indent(&ntg.render()));
    writeln!(text, "geometric graph: {geoc}").unwrap();
    text.push_str(&indent(&geo.render()));

    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let nu: serde_json::Map<String, Value> = r.nu.iter().map(|(i, c)| (i.to_string(), json!(c))).collect();
            json!({ "m": r.m, "n_m": r.n_m, "nu": nu, "remainder": r.remainder })
        })
        .collect();
    let (lo, hi) = dil.bracket(12);
    Ok(report(
        "nt analyze",
        json!({
            "name": name,
            "split_order": d,
            "dilatation": { "base": dil.base.to_string(), "root": dil.root, "bracket": [format_rational(&lo), format_rational(&hi)], "approx": dil_approx },
            "deviation": { "value": format_rational(&dev), "approx": dev_approx },
            "warnings": warning.into_iter().collect::<Vec<_>>(),
            "orbits": rows,
            "nt_graph": { "canonical": ntc, "graph": ntg },
            "geometric_graph": { "canonical": geoc, "graph": geo },
        }),
        text,
    ))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn slope(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("expected a slope \"p,q\", got {s:?}"));
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn nt_shear(g: &str, h: &str) -> Result<Report> {
    let (g, h) = (slope(g)?, slope(h)?);
    let s = ntform::shearing_from_slopes(g.clone(), h.clone())?;
    let text = format!("shearing degree of ({},{}) and ({},{}) = {s}\n", g.0, g.1, h.0, h.1);
    Ok(report(
        "nt shear",
        json!({ "g": [g.0.to_string(), g.1.to_string()], "h": [h.0.to_string(), h.1.to_string()], "shearing": s }),
        text,
    ))
}

// ---- characters

fn load_table(path: &str, group: Option<&str>) -> Result<(OrbitProjectionTable, FiniteGroupTable)> {
    let (table, named) = OrbitProjectionTable::from_json(&read(path)?)?;
    let name = group
        .map(str::to_string)
        .or(named)
        .ok_or_else(|| Error::InvalidInput("no group given; pass --group or name one in the table".into()))?;
    let g = builtin_group(&name)?;
    table.check_classes(&g)?;
    Ok((table, g))
}

fn chars_decompose(path: &str, group: Option<&str>) -> Result<Report> {
    let (table, g) = load_table(path, group)?;
    let l_rho = g.characters.iter().map(|chi| twisted_l_from_orbits(&table, chi)).collect::<Result<Vec<_>>>()?;
    let ind = (0..g.class_count()).map(|c| class_indicator_l(&table, &g, c)).collect::<Result<Vec<_>>>()?;
    let mut text = g.to_string();
    writeln!(text, "m = {}", table.m).unwrap();
    for (i, v) in l_rho.iter().enumerate() {
        writeln!(text, "L(chi_{i}) = {v}").unwrap();
    }
    for (c, v) in ind.iter().enumerate() {
        writeln!(text, "L(class {c}) = {v}").unwrap();
    }
    Ok(report(
        "chars decompose",
        json!({ "group": g.name, "m": table.m, "characters": g.characters, "l_chi": l_rho, "l_class": ind }),
        text,
    ))
}

fn chars_bound(path: &str, group: Option<&str>) -> Result<Report> {
    let (table, g) = load_table(path, group)?;
    let b = nielsen_bound(&table, &g)?;
    let mut text = format!("group {} (order {}), m = {}\n", g.name, g.order(), b.m);
    writeln!(text, "class values = {}", join(&b.values)).unwrap();
    writeln!(text, "N_{} >= {}", b.m, b.bound).unwrap();
    if let Some(nu) = &b.nu {
        let parts: Vec<String> = nu.iter().map(|(i, c)| format!("{i}:{c}")).collect();
        writeln!(text, "attained; nu_{} = {{{}}}", b.m, parts.join(", ")).unwrap();
    }
    Ok(report("chars bound", json!({ "group": g.name, "bound": b }), text))
}
