//! Axiom checking: globular structure and strict laws.

use crate::category::{Category, CellIx, VCell};
use crate::io::{CategoryFile, CompositionEntry};
use crate::report::ValidationReport;
use std::collections::HashMap;

/// Globularity, identity and composition-table structure.
pub fn validate_globular(p: &Category) -> ValidationReport {
    let mut r = ValidationReport::new();
    let s = |v: VCell| p.show(v);
    for (i, c) in p.cells().iter().enumerate() {
        if c.degree >= 2 {
            let x = VCell::stored(i);
            let (d, k) = (p.dom(x).unwrap(), p.cod(x).unwrap());
            let ok = p.dom(d) == p.dom(k) && p.cod(k) == p.cod(d);
            r.check("globularity", ok, &[&c.id]);
        }
    }
    for (z, i) in p.identities() {
        let (cz, ci) = (p.cell(z), p.cell(i));
        let ok = ci.degree == cz.degree + 1 && ci.dom == Some(z) && ci.cod == Some(z);
        r.check("identity-boundary", ok, &[&cz.id, &ci.id]);
    }
    for (z, c) in p.cells().iter().enumerate() {
        if c.degree < p.truncation() {
            r.check("identity-totality", p.identity(z).is_some(), &[&c.id]);
        }
    }
    for (&(k, f, g), &h) in p.table() {
        let (fv, gv, hv) = (VCell::stored(f), VCell::stored(g), VCell::stored(h));
        let names = [p.id(f), p.id(g), p.id(h)];
        let m = p.cell(f).degree;
        let degree_ok = p.cell(g).degree == m && p.cell(h).degree == m && k >= 1 && k <= m;
        if !r.check("composition-degree", degree_ok, &names) {
            continue;
        }
        let composable = p.dom_pow(fv, k) == p.cod_pow(gv, k);
        if !r.check("composition-composability", composable, &names) {
            continue;
        }
        r.tally("composition-boundary");
        let expected = if k == 1 {
            Ok((p.dom(gv), p.cod(fv)))
        } else {
            let (df, dg, cf, cg) = (p.dom(fv).unwrap(), p.dom(gv).unwrap(), p.cod(fv).unwrap(), p.cod(gv).unwrap());
            p.compose(k - 1, df, dg).and_then(|d| p.compose(k - 1, cf, cg).map(|c| (Some(d), Some(c))))
        };
        match expected {
            Ok((d, c)) if d == p.dom(hv) && c == p.cod(hv) => {}
            Ok((d, c)) => r.violate(
                "composition-boundary",
                &names,
                format!(
                    "expected {} -> {}",
                    d.map(s).unwrap_or_default(),
                    c.map(s).unwrap_or_default()
                ),
            ),
            Err(e) => r.violate("composition-boundary", &names, e.to_string()),
        }
    }
    for m in 1..=p.truncation() {
        for k in 1..=m {
            let mut by_cod: HashMap<VCell, Vec<CellIx>> = HashMap::new();
            for &g in p.of_degree(m) {
                if let Some(c) = p.cod_pow(VCell::stored(g), k) {
                    by_cod.entry(c).or_default().push(g);
                }
            }
            for &f in p.of_degree(m) {
                let Some(d) = p.dom_pow(VCell::stored(f), k) else { continue };
                for &g in by_cod.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
                    let ok = p.lookup_table(k, f, g).is_some();
                    if !r.check("composition-totality", ok, &[p.id(f), p.id(g)]) {
                        let last = r.violations.last_mut().unwrap();
                        last.detail = format!("k = {k}");
                    }
                }
            }
        }
    }
    r
}

/// Associativity, units, interchange and identity shift, as equalities.
pub fn validate_strict(p: &Category) -> ValidationReport {
    let mut r = ValidationReport::new();
    let n = p.truncation();
    let cmp = |r: &mut ValidationReport, law: &str, lhs: crate::Result<VCell>, rhs: crate::Result<VCell>, names: &[&str]| {
        r.tally(law);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => r.violate(law, names, format!("{} ≠ {}", p.show(a), p.show(b))),
            (Err(e), _) | (_, Err(e)) => r.violate(law, names, e.to_string()),
        }
    };
    // entries grouped by (k, degree)
    let mut entries: HashMap<(usize, usize), Vec<(CellIx, CellIx, CellIx)>> = HashMap::new();
    for (&(k, f, g), &h) in p.table() {
        entries.entry((k, p.cell(f).degree)).or_default().push((f, g, h));
    }
    for m in 1..=n {
        for k in 1..=m {
            let mut by_cod: HashMap<VCell, Vec<CellIx>> = HashMap::new();
            for &x in p.of_degree(m) {
                if let Some(c) = p.cod_pow(VCell::stored(x), k) {
                    by_cod.entry(c).or_default().push(x);
                }
            }
            for &(f, g, fg) in entries.get(&(k, m)).map(Vec::as_slice).unwrap_or(&[]) {
                let Some(dg) = p.dom_pow(VCell::stored(g), k) else { continue };
                for &h in by_cod.get(&dg).map(Vec::as_slice).unwrap_or(&[]) {
                    let (fv, gv, hv) = (VCell::stored(f), VCell::stored(g), VCell::stored(h));
                    let lhs = p.compose(k, VCell::stored(fg), hv);
                    let rhs = p.compose(k, gv, hv).and_then(|gh| p.compose(k, fv, gh));
                    cmp(&mut r, "associativity", lhs, rhs, &[p.id(f), p.id(g), p.id(h)]);
                }
            }
        }
    }
    for (i, c) in p.cells().iter().enumerate() {
        let f = VCell::stored(i);
        for k in 1..=c.degree {
            let left = p.cod_pow(f, k).ok_or_else(|| crate::Error::Undefined("boundary".into()));
            let lhs = left.and_then(|z| p.e_pow(z, k)).and_then(|u| p.compose(k, u, f));
            cmp(&mut r, "unit-left", lhs, Ok(f), &[&c.id]);
            let right = p.dom_pow(f, k).ok_or_else(|| crate::Error::Undefined("boundary".into()));
            let rhs = right.and_then(|z| p.e_pow(z, k)).and_then(|u| p.compose(k, f, u));
            cmp(&mut r, "unit-right", rhs, Ok(f), &[&c.id]);
        }
    }
    for m in 2..=n {
        for k in 2..=m {
            for j in 1..k {
                let inner = entries.get(&(j, m)).map(Vec::as_slice).unwrap_or(&[]);
                let mut by_cod: HashMap<VCell, Vec<(CellIx, CellIx, CellIx)>> = HashMap::new();
                for &e in inner {
                    if let Some(c) = p.cod_pow(VCell::stored(e.2), k) {
                        by_cod.entry(c).or_default().push(e);
                    }
                }
                for &(a, b, ab) in inner {
                    let Some(d) = p.dom_pow(VCell::stored(ab), k) else { continue };
                    for &(c, dd, cd) in by_cod.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
                        let [av, bv, cv, dv] = [a, b, c, dd].map(VCell::stored);
                        let lhs = p.compose(k, VCell::stored(ab), VCell::stored(cd));
                        let rhs = p
                            .compose(k, av, cv)
                            .and_then(|x| p.compose(k, bv, dv).and_then(|y| p.compose(j, x, y)));
                        cmp(&mut r, "interchange", lhs, rhs, &[p.id(a), p.id(b), p.id(c), p.id(dd)]);
                    }
                }
            }
        }
    }
    for (&(k, f, g), &h) in p.table() {
        if p.cell(f).degree >= n {
            continue;
        }
        let lhs = p
            .e(VCell::stored(f))
            .and_then(|ef| p.e(VCell::stored(g)).and_then(|eg| p.compose(k + 1, ef, eg)));
        cmp(&mut r, "identity-shift", lhs, p.e(VCell::stored(h)), &[p.id(f), p.id(g)]);
    }
    r
}

/// A single-entry corruption of a category file together with the laws
/// that are guaranteed to notice it.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub kind: &'static str,
    pub description: String,
    pub file: CategoryFile,
    pub expected: Vec<&'static str>,
}

/// Up to `count` systematic single-entry mutations, cycling through the
/// mutation kinds so that every kind with an instance is represented.
/// Every result still loads, so it exercises the validators rather than
/// the loader.
pub fn mutations(base: &CategoryFile, count: usize) -> Vec<Mutation> {
    let kinds: [fn(&CategoryFile, usize) -> Option<Mutation>; 6] =
        [delete_composite, delete_identity, retarget_identity, swap_boundary, bogus_composite, retarget_composite];
    let mut out = Vec::new();
    let mut round = 0;
    loop {
        let mut any = false;
        for kind in kinds {
            if out.len() == count {
                return out;
            }
            if let Some(m) = kind(base, round) {
                if m.file.to_category().is_ok() {
                    out.push(m);
                    any = true;
                }
            }
        }
        if !any {
            return out;
        }
        round += 1;
    }
}

fn delete_composite(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let e = base.compositions.get(i)?.clone();
    let mut file = base.clone();
    file.compositions.remove(i);
    Some(Mutation {
        kind: "delete-composite",
        description: format!("drop {} ∘_{} {}", e.left, e.k, e.right),
        file,
        expected: vec!["composition-totality"],
    })
}

fn delete_identity(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let e = base.identities.get(i)?.clone();
    let mut file = base.clone();
    file.identities.remove(i);
    Some(Mutation { kind: "delete-identity", description: format!("drop e({})", e.of), file, expected: vec!["identity-totality"] })
}

fn degree_of(base: &CategoryFile, id: &str) -> Option<usize> {
    base.cells.iter().find(|c| c.id == id).map(|c| c.degree)
}

/// Point `e(z)` at another cell of the right degree.
fn retarget_identity(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let mut candidates = Vec::new();
    for (n, e) in base.identities.iter().enumerate() {
        let d = degree_of(base, &e.is)?;
        for c in base.cells.iter().filter(|c| c.degree == d && c.id != e.is) {
            candidates.push((n, c.id.clone()));
        }
    }
    let (n, to) = candidates.get(spread(i, candidates.len())?)?.clone();
    let mut file = base.clone();
    let from = std::mem::replace(&mut file.identities[n].is, to.clone());
    Some(Mutation {
        kind: "retarget-identity",
        description: format!("e({}) := {to} instead of {from}", file.identities[n].of),
        file,
        expected: vec!["identity-boundary", "unit-left", "unit-right"],
    })
}

fn swap_boundary(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let movable: Vec<usize> = (0..base.cells.len()).filter(|&n| base.cells[n].dom.is_some() && base.cells[n].dom != base.cells[n].cod).collect();
    let n = *movable.get(i)?;
    let mut file = base.clone();
    let c = &mut file.cells[n];
    std::mem::swap(&mut c.dom, &mut c.cod);
    Some(Mutation {
        kind: "swap-boundary",
        description: format!("reverse {}", c.id),
        file,
        expected: vec!["composition-composability", "globularity", "composition-boundary", "identity-boundary"],
    })
}

/// Add an entry for a pair that is not composable.
fn bogus_composite(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let p = base.to_category().ok()?;
    let mut found = Vec::new();
    'outer: for m in 1..=p.truncation() {
        let cells = p.of_degree(m);
        for &f in cells {
            for &g in cells {
                let k = 1;
                if p.dom_pow(VCell::stored(f), k) != p.cod_pow(VCell::stored(g), k) {
                    found.push((f, g));
                    if found.len() > i {
                        break 'outer;
                    }
                }
            }
        }
    }
    let (f, g) = *found.get(i)?;
    let mut file = base.clone();
    file.compositions.push(CompositionEntry { k: 1, left: p.id(f).into(), right: p.id(g).into(), result: p.id(f).into() });
    file.canonicalize();
    Some(Mutation {
        kind: "bogus-composite",
        description: format!("add {} ∘_1 {}", p.id(f), p.id(g)),
        file,
        expected: vec!["composition-composability"],
    })
}

/// Change a composite to a cell of the same degree, preferring cells with
/// different boundaries.
fn retarget_composite(base: &CategoryFile, i: usize) -> Option<Mutation> {
    let p = base.to_category().ok()?;
    let n = spread(i, base.compositions.len())?;
    let e = &base.compositions[n];
    let h = p.lookup(&e.result)?;
    let hv = VCell::stored(h);
    let same: Vec<CellIx> = p.of_degree(p.cell(h).degree).iter().copied().filter(|&x| x != h).collect();
    let off = same.iter().copied().find(|&x| p.dom(VCell::stored(x)) != p.dom(hv) || p.cod(VCell::stored(x)) != p.cod(hv));
    let to = off.or_else(|| same.first().copied())?;
    let mut file = base.clone();
    file.compositions[n].result = p.id(to).into();
    let expected = if off.is_some() {
        vec!["composition-boundary"]
    } else {
        vec!["associativity", "unit-left", "unit-right", "interchange", "identity-shift"]
    };
    Some(Mutation {
        kind: "retarget-composite",
        description: format!("{} ∘_{} {} := {} instead of {}", e.left, e.k, e.right, p.id(to), e.result),
        file,
        expected,
    })
}

/// Spread the i-th pick across a list instead of clustering at the front.
fn spread(i: usize, len: usize) -> Option<usize> {
    if len == 0 || i >= len {
        return None;
    }
    Some((i * 7919) % len)
}

/// Run both validators, merging their reports.
pub fn validate_all(p: &Category) -> ValidationReport {
    let mut r = validate_globular(p);
    r.merge("", validate_strict(p));
    r
}
