//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the lines reach standard
//! output; exits non-zero if any criterion fails.

use omegacat::adjunction::{
    check_extension_adjunction, check_strict_adjunction, compose_adjunctions, extend_trivially, hom_iso_from_unit_counit,
    identity_adjunction, restrict, reverse_equivalence, AdjunctionData,
};
use omegacat::construct::opposite;
use omegacat::duality::{double_dual_report, LiftEntry, synthesize_dual_adjunction, vecf2_duality_input, DualityInput};
use omegacat::equivalence::equiv_degree;
use omegacat::fixtures;
use omegacat::homotopy::{check_eckmann_hilton, formal_homotopy_group, functor_induced};
use omegacat::io::{self, CategoryFile};
use omegacat::limits::{find_strict_limit, Cone, Diagram, Graph};
use omegacat::presheaf::{constant_presheaf, hom_presheaf, Presheaf, YonedaSetup};
use omegacat::validate::{mutations, validate_all, validate_globular, validate_strict};
use omegacat::{Category, CellIx, Functor, VCell};
use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

/// Mutations required per fixture.
const MUTATIONS_PER_FIXTURE: usize = 20;
/// Largest fixture for the brute-force equivalence oracle.
const ORACLE_MAX_CELLS: usize = 200;
/// Largest base for the Yoneda count.
const YONEDA_MAX_CELLS: usize = 50;
/// Wall-clock budget per criterion, in seconds.
const BUDGET_SECS: f64 = 60.0;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn arc(p: Category) -> Arc<Category> {
    Arc::new(p)
}

fn axiom_fixtures() -> Vec<Category> {
    vec![
        fixtures::iso1(),
        fixtures::walking2(),
        fixtures::walking2_parallel(),
        fixtures::bz2(),
        fixtures::walkeq2(),
        fixtures::vecf2(1, 1),
        fixtures::vecf2(2, 1),
        fixtures::discrete(3),
        fixtures::free_arrow(),
    ]
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for p in axiom_fixtures() {
        let g = validate_globular(&p);
        let s = validate_strict(&p);
        ensure(g.passed() && s.passed(), || format!("{} fails its axioms", p.name()))?;
        let ms = mutations(&CategoryFile::from_category(&p), MUTATIONS_PER_FIXTURE);
        ensure(ms.len() == MUTATIONS_PER_FIXTURE, || format!("{}: only {} mutations", p.name(), ms.len()))?;
        for m in ms {
            let r = validate_all(&m.file.to_category().map_err(|e| e.to_string())?);
            let named = r.violated_laws().iter().any(|l| m.expected.contains(l));
            ensure(named, || format!("{}: `{}` gave {:?}, expected one of {:?}", p.name(), m.description, r.violated_laws(), m.expected))?;
            total += 1;
        }
    }
    Ok(format!("{} fixtures valid, {total} mutations each named", axiom_fixtures().len()))
}

/// Direct unfolding of the coinductive definition: no memo, no shared
/// state, composites read straight from the tables.
fn brute_degree(p: &Category, x: VCell, y: VCell) -> Option<usize> {
    if x == y {
        return Some(0);
    }
    let m = p.deg(x);
    if m != p.deg(y) || m >= p.truncation() {
        return None;
    }
    let (ex, ey) = (p.e(x).ok()?, p.e(y).ok()?);
    let above: Vec<VCell> = (0..p.len()).filter(|&i| p.cell(i).degree == m + 1).map(VCell::stored).collect();
    let mut best: Option<usize> = None;
    for &f in above.iter().filter(|&&f| p.dom(f) == Some(x) && p.cod(f) == Some(y)) {
        for &g in above.iter().filter(|&&g| p.dom(g) == Some(y) && p.cod(g) == Some(x)) {
            let (Some(gf), Some(fg)) = (table(p, g, f), table(p, f, g)) else { continue };
            let (Some(l), Some(r)) = (brute_degree(p, gf, ex), brute_degree(p, fg, ey)) else { continue };
            let d = 1 + l.max(r);
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

fn table(p: &Category, g: VCell, f: VCell) -> Option<VCell> {
    if g.ep > 0 || f.ep > 0 {
        return None;
    }
    p.lookup_table(1, g.base, f.base).map(VCell::stored)
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    let mut cats = fixtures::corpus();
    cats.extend([fixtures::walking2_parallel(), fixtures::weak_pullback_sets()]);
    let mut used = 0;
    for p in cats.into_iter().filter(|p| p.len() <= ORACLE_MAX_CELLS) {
        used += 1;
        for d in 0..=p.truncation() {
            for &x in p.of_degree(d) {
                for &y in p.of_degree(d) {
                    let (x, y) = (VCell::stored(x), VCell::stored(y));
                    let fast = equiv_degree(&p, x, y).map_err(|e| e.to_string())?;
                    let slow = brute_degree(&p, x, y);
                    ensure(fast == slow, || format!("{}: {} vs {}: {fast:?} ≠ {slow:?}", p.name(), p.show(x), p.show(y)))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs over {used} fixtures, 100% agreement"))
}

fn criterion_3() -> Outcome {
    let iso = fixtures::iso1();
    let (a, b) = (iso.parse("a").unwrap(), iso.parse("b").unwrap());
    let ea = iso.e(a).unwrap();
    ensure(equiv_degree(&iso, ea, ea).unwrap() == Some(0), || "deg(e a) ≠ 0".into())?;
    ensure(equiv_degree(&iso, a, b).unwrap() == Some(1), || "deg(iso) ≠ 1".into())?;
    let w = fixtures::walkeq2();
    let (a, b) = (w.parse("a").unwrap(), w.parse("b").unwrap());
    ensure(equiv_degree(&w, a, b).unwrap() == Some(2), || "WalkEq2 degree ≠ 2".into())?;
    // exhaustive: no pair (f, g) has both composites equal to identities
    let (ea, eb) = (w.e(a).unwrap(), w.e(b).unwrap());
    let mut tried = 0;
    for f in w.hom_v(a, b) {
        for g in w.hom_v(b, a) {
            tried += 1;
            let strict = w.compose(1, g, f).ok() == Some(ea) && w.compose(1, f, g).ok() == Some(eb);
            ensure(!strict, || format!("degree-1 witness ({}, {})", w.show(f), w.show(g)))?;
        }
    }
    Ok(format!("deg(e a) = 0, deg(iso) = 1, deg(WalkEq2) = 2 with {tried} degree-1 candidates refuted"))
}

fn corpus_presheaves(p: &Arc<Category>) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = p.objects().iter().map(|&b| hom_presheaf(p, b).unwrap()).collect();
    out.push(constant_presheaf(p, &arc(fixtures::iso1())));
    out
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    for p in fixtures::corpus().into_iter().filter(|p| p.len() <= YONEDA_MAX_CELLS) {
        let p = arc(p);
        for fp in corpus_presheaves(&p) {
            for &a in p.objects() {
                let setup = YonedaSetup::new(&fp, a).map_err(|e| e.to_string())?;
                let fa = &fp.values[a];
                for n in 0..=fa.truncation().max(p.truncation()) {
                    let all = setup.enumerate(n).map_err(|e| e.to_string())?;
                    let want = fa.cells_at(n).len();
                    ensure(all.len() == want, || format!("{} at {} n={n}: {} ≠ {want}", fp.name, p.id(a), all.len()))?;
                    let distinct: BTreeSet<String> = all.iter().map(|t| format!("{:?}", t.components)).collect();
                    ensure(distinct.len() == all.len(), || "duplicate transformations".into())?;
                    for tau in &all {
                        ensure(setup.check(tau).passed(), || format!("{}: enumerated τ fails its laws", fp.name))?;
                        let beta = setup.forward(tau).map_err(|e| e.to_string())?;
                        ensure(&setup.backward(beta).map_err(|e| e.to_string())? == tau, || "τ round trip".into())?;
                    }
                    for beta in fa.cells_at(n) {
                        let tau = setup.backward(beta).map_err(|e| e.to_string())?;
                        ensure(setup.forward(&tau).map_err(|e| e.to_string())? == beta, || "β round trip".into())?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} (presheaf, object, level) counts matched, zero discrepancies"))
}

fn criterion_5() -> Outcome {
    let bz2 = fixtures::bz2();
    let s = bz2.lookup("*").unwrap();
    let rep = check_eckmann_hilton(&bz2, s, s, bz2.parse("id").unwrap(), 1).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || format!("BZ2: {:?}", rep.violated_laws()))?;
    let mut instances = rep.counts.values().sum::<usize>();
    let mut cats = axiom_fixtures();
    cats.push(fixtures::product_posets());
    for p in &cats {
        for &a in p.objects() {
            let ea = p.e(VCell::stored(a)).map_err(|e| e.to_string())?;
            let r = check_eckmann_hilton(p, a, a, ea, 1).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{} End(e {}): {:?}", p.name(), p.id(a), r.violated_laws()))?;
            instances += r.counts.values().sum::<usize>();
        }
    }
    Ok(format!("{instances} interchange instances over BZ2 and {} fixtures", cats.len()))
}

fn source_object_node(g: &Graph, mut i: usize) -> usize {
    while let Some(d) = g.nodes[i].dom {
        i = d;
    }
    i
}

fn target_object_node(g: &Graph, mut i: usize) -> usize {
    while let Some(c) = g.nodes[i].cod {
        i = c;
    }
    i
}

/// Cone families at `z` of the given level, by nested enumeration of
/// every cell of degree `level + 1`.
fn brute_cones(d: &Diagram, z: CellIx, level: usize) -> Vec<Vec<VCell>> {
    let p = d.target.as_ref();
    let objs: Vec<usize> = (0..d.graph.nodes.len()).filter(|&i| d.graph.nodes[i].degree == 0).collect();
    let cand: Vec<Vec<VCell>> = objs
        .iter()
        .map(|&b| {
            p.cells_at(level + 1)
                .into_iter()
                .filter(|&c| p.source_object(c).base == z && p.target_object(c) == d.assignment[b])
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0; objs.len()];
    if cand.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let fam: Vec<VCell> = pick.iter().zip(&cand).map(|(&i, c)| c[i]).collect();
        if is_cone(d, &objs, &fam, level) {
            out.push(fam);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < cand[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn is_cone(d: &Diagram, objs: &[usize], fam: &[VCell], level: usize) -> bool {
    let p = d.target.as_ref();
    let at = |node: usize| fam[objs.iter().position(|&o| o == node).unwrap()];
    if level > 0 {
        let dom: Vec<VCell> = fam.iter().map(|&c| p.dom(c).unwrap()).collect();
        let cod: Vec<VCell> = fam.iter().map(|&c| p.cod(c).unwrap()).collect();
        if !is_cone(d, objs, &dom, level - 1) || !is_cone(d, objs, &cod, level - 1) {
            return false;
        }
    }
    (0..d.graph.nodes.len()).filter(|&i| d.graph.nodes[i].degree > 0).all(|i| {
        let m = d.graph.nodes[i].degree;
        let (a, b) = (source_object_node(&d.graph, i), target_object_node(&d.graph, i));
        let k = m.max(level + 1) - 1 - level;
        matches!((p.horizontal(d.assignment[i], at(a)), p.e_pow(at(b), k)), (Ok(x), Ok(y)) if x == y)
    })
}

/// Every cone at every vertex and level factors through exactly one
/// mediating cell.
fn verify_limit(d: &Diagram, cone: &Cone) -> Result<usize, String> {
    let p = d.target.as_ref();
    let mut checked = 0;
    for &z in p.objects() {
        for level in 0..p.truncation() {
            let cones: BTreeSet<Vec<VCell>> = brute_cones(d, z, level).into_iter().collect();
            let arrows: Vec<VCell> = p
                .cells_at(level + 1)
                .into_iter()
                .filter(|&u| p.source_object(u).base == z && p.target_object(u).base == cone.vertex)
                .collect();
            let images: BTreeSet<Vec<VCell>> = arrows
                .iter()
                .map(|&u| cone.edges.iter().map(|&e| p.horizontal(e, u).unwrap()).collect())
                .collect();
            ensure(images.len() == arrows.len() && images == cones, || {
                format!("vertex {} level {level}: {} arrows, {} images, {} cones", p.id(z), arrows.len(), images.len(), cones.len())
            })?;
            checked += cones.len();
        }
    }
    Ok(checked)
}

fn criterion_6() -> Outcome {
    let prod = arc(fixtures::product_posets());
    let pair = Graph::from_nodes(&[("l", None), ("r", None)]).unwrap();
    let d = Diagram::from_names(pair, prod.clone(), &["2", "2"]).unwrap();
    let (cone, _) = find_strict_limit(&d).map_err(|e| e.to_string())?.ok_or("no product found")?;
    ensure(prod.id(cone.vertex) == "4", || format!("product vertex {}", prod.id(cone.vertex)))?;
    let want: BTreeSet<String> = [fixtures::map_id("4", "2", &[0, 1, 0, 1]), fixtures::map_id("4", "2", &[0, 0, 1, 1])].into();
    let got: BTreeSet<String> = cone.edges.iter().map(|&e| prod.show(e)).collect();
    ensure(got == want, || format!("projections {got:?}"))?;
    let n1 = verify_limit(&d, &cone)?;

    let eqp = arc(fixtures::equalizer_posets());
    let g = Graph::from_nodes(&[("A", None), ("B", None), ("F", Some(("A", "B"))), ("G", Some(("A", "B"))), ("α", Some(("F", "G")))])
        .unwrap();
    let (f, gg) = (fixtures::map_id("3", "2", &[0, 0, 1]), fixtures::map_id("3", "2", &[0, 1, 1]));
    let alpha = format!("{f}=>{gg}");
    let d = Diagram::from_names(g, eqp.clone(), &["3", "2", &f, &gg, &alpha]).unwrap();
    let (cone, _) = find_strict_limit(&d).map_err(|e| e.to_string())?.ok_or("no equalizer found")?;
    // the equalizer is the sub-poset {0, 2} of 3, where F and G agree
    ensure(eqp.id(cone.vertex) == "2", || format!("equalizer vertex {}", eqp.id(cone.vertex)))?;
    ensure(eqp.show(cone.edges[0]) == fixtures::map_id("2", "3", &[0, 2]), || "equalizer inclusion".into())?;
    let n2 = verify_limit(&d, &cone)?;
    Ok(format!("product 4 = 2×2 and equalizer 2 ↪ 3 certified by {} independently enumerated cones", n1 + n2))
}

fn hom_sizes_ok(a: &AdjunctionData) -> Result<usize, String> {
    let (isos, rep) = hom_iso_from_unit_counit(a).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || format!("θ laws: {:?}", rep.violated_laws()))?;
    let mut n = 0;
    for s in isos.sizes() {
        let (inner, _) = s.a.rsplit_once(')').ok_or("hom name")?;
        let (_, args) = inner.rsplit_once('(').ok_or("hom name")?;
        let (m, k) = args.split_once(',').ok_or("hom name")?;
        let (m, k): (u32, u32) = (m[1..].parse().map_err(|_| "dim")?, k[1..].parse().map_err(|_| "dim")?);
        ensure(s.left == s.right && s.left == 1 << (m * k), || format!("{}: {} / {}", s.a, s.left, s.right))?;
        n += 1;
    }
    Ok(n)
}

fn vecf2_duality() -> Result<(DualityInput, AdjunctionData), String> {
    let input = vecf2_duality_input(2, 1).map_err(|e| e.to_string())?;
    let w = synthesize_dual_adjunction(&input).map_err(|e| e.to_string())?;
    Ok((input, w.adjunction))
}

fn criterion_7() -> Outcome {
    for p in axiom_fixtures() {
        let id = identity_adjunction(arc(p)).map_err(|e| e.to_string())?;
        let r = check_strict_adjunction(&id);
        ensure(r.passed(), || format!("identity adjunction on {}: {:?}", id.left().name(), r.violated_laws()))?;
    }
    let (_, dual) = vecf2_duality()?;
    let back = reverse_equivalence(&dual).map_err(|e| e.to_string())?;
    let composed = compose_adjunctions(&dual, &back).map_err(|e| e.to_string())?;
    let r = check_strict_adjunction(&composed);
    ensure(r.passed(), || format!("composed duality: {:?}", r.violated_laws()))?;
    let n = hom_sizes_ok(&dual)? + hom_sizes_ok(&composed)?;
    Ok(format!("identity adjunctions and composed Vec_F2 duality pass; {n} hom-sets of size 2^(mn) with θθ* = 1"))
}

fn criterion_8() -> Outcome {
    let input = vecf2_duality_input(2, 1).map_err(|e| e.to_string())?;
    let w = synthesize_dual_adjunction(&input).map_err(|e| e.to_string())?;
    ensure(w.report.passed(), || format!("{:?}", w.report.violated_laws()))?;
    for law in [
        "F/functor-composition",
        "G/functor-composition",
        "unit/naturality",
        "counit/naturality",
        "triangle-left",
        "triangle-right",
        "θ/theta-naturality",
        "θ/theta-inverse",
        "initial-lifting",
    ] {
        ensure(w.report.counts.get(law).copied().unwrap_or(0) > 0, || format!("law `{law}` not enumerated"))?;
    }
    let dd = double_dual_report(&w);
    ensure(dd.passed(), || format!("double dual: {:?}", dd.violated_laws()))?;
    let mut mutated = 0;
    let tables = input.lift_lp.len() + input.lift_l.len();
    for t in 0..tables {
        let rows = row_of;
        let mut probe = input.clone();
        let n = rows(&mut probe, t).iso.map.len();
        let width = rows(&mut probe, t).iso.target.len();
        for i in 0..n {
            for v in 0..width {
                let mut bad = input.clone();
                let row = rows(&mut bad, t);
                if row.iso.map[i] == VCell::stored(v) {
                    continue;
                }
                row.iso.map[i] = VCell::stored(v);
                named_failure(&bad)?;
                mutated += 1;
            }
        }
        let mut bad = input.clone();
        let objs = bad.l.objects().len();
        let row = rows(&mut bad, t);
        row.image = (row.image + 1) % objs;
        named_failure(&bad)?;
        mutated += 1;
    }
    let counts: Vec<String> = w.report.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("    enumeration counts: {}", counts.join(", "));
    Ok(format!("all {} laws pass, GF(Vn) = Vn, η bijective; {mutated} single-entry mutations each named", w.report.counts.len()))
}

fn row_of(d: &mut DualityInput, t: usize) -> &mut LiftEntry {
    let n = d.lift_lp.len();
    if t < n {
        &mut d.lift_lp[t]
    } else {
        &mut d.lift_l[t - n]
    }
}

fn named_failure(d: &DualityInput) -> Result<(), String> {
    match synthesize_dual_adjunction(d) {
        Err(e) => {
            let laws = omegacat::duality::check_initial_lifting(d);
            ensure(!laws.violated_laws().is_empty(), || format!("unnamed failure: {e}"))
        }
        Ok(w) => ensure(!w.report.violated_laws().is_empty(), || "mutation accepted".into()),
    }
}

fn criterion_9() -> Outcome {
    let p = arc(fixtures::bz2());
    let s = p.lookup("*").unwrap();
    let id = p.parse("id").unwrap();
    let g = formal_homotopy_group(&p, s, s, id, 1, true).map_err(|e| e.to_string())?;
    let t = g.table().ok_or("not a group")?;
    let tc = g.class_of(p.parse("t").unwrap()).ok_or("t missing")?;
    ensure(g.len() == 2 && t.strict && tc != t.unit && t.op[tc][tc] == t.unit, || format!("{:?}", g.view(&p)))?;
    let kill = Functor::from_names("t↦1", p.clone(), p.clone(), &[("*", "*"), ("id", "id"), ("1", "1"), ("t", "1")])
        .map_err(|e| e.to_string())?;
    let m = functor_induced(&kill, s, s, id, 1).map_err(|e| e.to_string())?;
    ensure(m.is_trivial(), || "t ↦ 1 induces a non-trivial map".into())?;
    for n in 2..=4 {
        let h = formal_homotopy_group(&p, s, s, id, n, true).map_err(|e| e.to_string())?;
        ensure(h.is_trivial(), || format!("π̃_{n} non-trivial"))?;
    }
    Ok("π̃₁(BZ2) = Z/2 with t² = 1; t ↦ 1 induces the trivial map; π̃ₙ = 1 for n = 2..4".into())
}

fn criterion_10() -> Outcome {
    let (_, low) = vecf2_duality()?;
    let l2 = arc(opposite(&fixtures::vecf2(2, 2)));
    let lp2 = arc(fixtures::vecf2(2, 2));
    let full = extend_trivially(&low, lp2, l2).map_err(|e| e.to_string())?;
    ensure(check_extension_adjunction(&low, &full).map_err(|e| e.to_string())?, || "trivial extension rejected".into())?;

    let w2 = arc(fixtures::walking2_parallel());
    let low = identity_adjunction(arc(restrict(&w2, 1).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
    let collapse: Vec<(String, String)> = w2
        .cells()
        .iter()
        .map(|c| (c.id.clone(), if c.id == "τ" { "σ".to_string() } else { c.id.clone() }))
        .collect();
    let pairs: Vec<(&str, &str)> = collapse.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = Functor::from_names("F", w2.clone(), w2.clone(), &pairs).map_err(|e| e.to_string())?;
    let comps: Vec<VCell> = w2.objects().iter().map(|&x| w2.e(VCell::stored(x)).unwrap()).collect();
    let bad = omegacat::adjunction::adjunction_from_components(f.clone(), f, comps.clone(), comps).map_err(|e| e.to_string())?;
    ensure(!check_extension_adjunction(&low, &bad).map_err(|e| e.to_string())?, || "counterexample accepted".into())?;
    Ok("trivially extended Vec_F2 duality at N = 2 passes; non-natural extension fails".into())
}

fn run_cli(dir: &Path, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_omegacat")).current_dir(dir).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_11() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let (code, _) = run_cli(dir, &["fixtures", "--out", "."]);
    ensure(code == 0, || "fixtures failed".into())?;
    let id = Arc::new(fixtures::iso1());
    let m = omegacat::Modification::identity_of_functor(&Functor::identity(id)).unwrap();
    std::fs::write(dir.join("mod.json"), io::to_canonical_string(&io::modification_file(&m, "functor_id_iso1.json", "functor_id_iso1.json")))
        .unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "walkeq2.json"],
        vec!["hom", "walking2.json", "a", "b"],
        vec!["op", "walking2.json"],
        vec!["approx", "walkeq2.json", "--n", "1"],
        vec!["level", "walking2.json", "--n", "1"],
        vec!["equiv", "walkeq2.json", "a", "b", "--degree"],
        vec!["classify", "iso1.json", "f"],
        vec!["check-functor", "functor_id_iso1.json", "--strict"],
        vec!["check-mod", "mod.json"],
        vec!["represent", "presheaf_walking2_b.json"],
        vec!["limit", "diagram_product.json"],
        vec!["limit", "diagram_equalizer.json", "--colimit"],
        vec!["pi", "bz2.json", "--I", "*", "--a", "*", "--x", "id", "--n", "1"],
        vec!["check-adj", "adjunction_id_iso1.json"],
        vec!["duality", "synth", "duality_vecf2.json"],
        vec!["duality", "synth", "duality_vecf2.json", "-o", "witness.json"],
        vec!["duality", "check", "witness.json"],
        vec!["fixtures", "--out", "again"],
    ];
    for args in &commands {
        let (c1, o1) = run_cli(dir, args);
        let (c2, o2) = run_cli(dir, args);
        ensure(c1 == c2 && o1 == o2, || format!("`{}` differs between runs", args.join(" ")))?;
        ensure(c1 == 0, || format!("`{}` exited {c1}", args.join(" ")))?;
    }
    let sums = |d: &str| std::fs::read(dir.join(d).join("SHA256SUMS")).unwrap();
    ensure(sums(".") == sums("again"), || "fixture checksums differ".into())?;
    Ok(format!("{} commands byte-identical across reruns", commands.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 11] = [
        (1, "axiom suite", criterion_1),
        (2, "equivalence oracle", criterion_2),
        (3, "degree values", criterion_3),
        (4, "Yoneda count", criterion_4),
        (5, "Eckmann-Hilton", criterion_5),
        (6, "strict limits", criterion_6),
        (7, "adjunction laws", criterion_7),
        (8, "duality synthesis", criterion_8),
        (9, "homotopy groups", criterion_9),
        (10, "extension adjunction", criterion_10),
        (11, "determinism", criterion_11),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|s| if secs <= BUDGET_SECS { Ok(s) } else { Err(format!("{s}; took {secs:.1}s")) });
        match outcome {
            Ok(s) => println!("criterion {n:>2} PASS  {name}: {s} ({secs:.2}s)"),
            Err(s) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {s} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
