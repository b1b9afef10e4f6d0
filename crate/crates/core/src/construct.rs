//! Derived presentations: hom-categories, opposites, approximations,
//! level categories and the ambient extension.

use crate::builder::Builder;
use crate::category::{Category, CellIx, RawCell, VCell};
use crate::equivalence::Equiv;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// `L(x, y)`: cells strictly above `x, y` bounded by them, shifted down.
pub fn hom_category(p: &Category, x: CellIx, y: CellIx) -> Result<Category> {
    let (dx, dy) = (p.cell(x).degree, p.cell(y).degree);
    if dx != dy {
        return Err(Error::DegreeMismatch(format!("{} has degree {dx}, {} has degree {dy}", p.id(x), p.id(y))));
    }
    let name = format!("{}({},{})", p.name(), p.id(x), p.id(y));
    if dx == p.truncation() {
        // only virtual identities live above the top degree
        let raw = if x == y {
            vec![RawCell { id: p.show(p.e(VCell::stored(x))?), degree: 0, dom: None, cod: None }]
        } else {
            Vec::new()
        };
        return Category::from_parts(&name, 0, raw, vec![], vec![]);
    }
    let trunc = p.truncation() - dx - 1;
    let parallel = dx == 0 || (p.cell(x).dom == p.cell(y).dom && p.cell(x).cod == p.cell(y).cod);
    let mut keep = vec![None; p.len()];
    if parallel {
        for (i, c) in p.cells().iter().enumerate() {
            if c.degree <= dx {
                continue;
            }
            let j = c.degree - dx - 1;
            let v = VCell::stored(i);
            if p.dom_pow(v, j + 1) == Some(VCell::stored(x)) && p.cod_pow(v, j + 1) == Some(VCell::stored(y)) {
                keep[i] = Some(j);
            }
        }
    }
    let raw: Vec<RawCell> = p
        .cells()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let j = keep[i]?;
            let (dom, cod) = if j == 0 { (None, None) } else { (c.dom.map(|d| p.id(d).into()), c.cod.map(|d| p.id(d).into())) };
            Some(RawCell { id: c.id.clone(), degree: j, dom, cod })
        })
        .collect();
    let ids = p
        .identities()
        .filter(|&(z, _)| keep[z].is_some())
        .map(|(z, i)| (p.id(z).to_string(), p.id(i).to_string()))
        .collect();
    let comps = p
        .table()
        .iter()
        .filter(|(&(k, f, g), _)| matches!((keep[f], keep[g]), (Some(j), Some(_)) if k <= j))
        .map(|(&(k, f, g), &h)| (k, p.id(f).to_string(), p.id(g).to_string(), p.id(h).to_string()))
        .collect();
    Category::from_parts(&name, trunc, raw, ids, comps)
}

fn op_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// Reverse the 1-cells; composites along objects swap their arguments.
pub fn opposite(p: &Category) -> Category {
    let (mut raw, ids, mut comps) = p.raw_parts();
    for c in raw.iter_mut().filter(|c| c.degree == 1) {
        std::mem::swap(&mut c.dom, &mut c.cod);
    }
    for (k, l, r, _) in comps.iter_mut() {
        let f = p.lookup(l).expect("own cell");
        if *k == p.cell(f).degree {
            std::mem::swap(l, r);
        }
    }
    Category::from_parts(&op_name(p.name()), p.truncation(), raw, ids, comps).expect("opposite of a loaded presentation")
}

/// `L^(n)`: degree-`n` cells replaced by `~`-classes, nothing above.
/// Each class is named after its least member.
pub fn approximation(p: &Category, n: usize) -> Result<Category> {
    if n > p.truncation() {
        return Err(Error::DegreeMismatch(format!("approximation level {n} above truncation {}", p.truncation())));
    }
    let mut eq = Equiv::new(p);
    let level = p.of_degree(n).to_vec();
    let mut class: BTreeMap<CellIx, CellIx> = BTreeMap::new();
    for &c in &level {
        let rep = level
            .iter()
            .copied()
            .find(|&r| r <= c && eq.equiv(VCell::stored(r), VCell::stored(c)))
            .unwrap_or(c);
        class.insert(c, rep);
    }
    let cls = |i: CellIx| -> CellIx { class.get(&i).copied().unwrap_or(i) };
    let mut b = Builder::new(&format!("{}^({n})", p.name()), n);
    for (i, c) in p.cells().iter().enumerate() {
        if c.degree > n || (c.degree == n && cls(i) != i) {
            continue;
        }
        match (c.dom, c.cod) {
            (Some(d), Some(e)) => b.cell(&c.id, p.id(d), p.id(e)),
            _ => b.object(&c.id),
        };
    }
    for (z, i) in p.identities() {
        if p.cell(z).degree < n {
            b.identity(p.id(z), p.id(cls(i)));
        }
    }
    let mut induced: BTreeMap<(usize, CellIx, CellIx), (CellIx, CellIx, CellIx)> = BTreeMap::new();
    for (&(k, f, g), &h) in p.table() {
        if p.cell(f).degree > n {
            continue;
        }
        let key = (k, cls(f), cls(g));
        let val = cls(h);
        match induced.get(&key) {
            Some(&(old, f0, g0)) if old != val => {
                return Err(Error::QuotientNotWellDefined(format!(
                    "[{}] ∘_{k} [{}]: {} ∘ {} = {} but {} ∘ {} = {}",
                    p.id(key.1),
                    p.id(key.2),
                    p.id(f0),
                    p.id(g0),
                    p.id(old),
                    p.id(f),
                    p.id(g),
                    p.id(h)
                )))
            }
            Some(_) => {}
            None => {
                induced.insert(key, (val, f, g));
            }
        }
    }
    for ((k, f, g), (h, _, _)) in induced {
        b.compose(k, p.id(f), p.id(g), p.id(h));
    }
    b.build()
}

/// The 1-category of objects and `n`-cells under `∘_n`.
pub fn level_category(p: &Category, n: usize) -> Result<Category> {
    let mut b = Builder::new(&format!("{}_{n}", p.name()), n.min(1));
    let objs = p.cells_at(0);
    for &o in &objs {
        b.object(&p.show(o));
    }
    if n == 0 {
        return b.build();
    }
    let arrows = p.cells_at(n);
    let mut ends = Vec::new();
    for &f in &arrows {
        let (s, t) = (p.source_object(f), p.target_object(f));
        b.cell(&p.show(f), &p.show(s), &p.show(t));
        ends.push((f, s, t));
    }
    for &o in &objs {
        let e = p.e_pow(o, n)?;
        b.identity(&p.show(o), &p.show(e));
    }
    for &(f, sf, _) in &ends {
        for &(g, _, tg) in &ends {
            if sf == tg {
                b.compose(1, &p.show(f), &p.show(g), &p.show(p.compose(n, f, g)?));
            }
        }
    }
    b.build()
}

pub const AMBIENT_SOURCE: &str = "α";
pub const AMBIENT_TARGET: &str = "β";

/// Two fresh objects `α, β` with `L(α, β)` the given presentation.
pub fn ambient_extend(p: &Category) -> Result<Category> {
    for id in [AMBIENT_SOURCE, AMBIENT_TARGET] {
        if p.lookup(id).is_some() {
            return Err(Error::Malformed(format!("`{id}` already used in `{}`", p.name())));
        }
    }
    let mut b = Builder::new(&format!("Σ{}", p.name()), p.truncation() + 1);
    b.object(AMBIENT_SOURCE).object(AMBIENT_TARGET);
    for c in p.cells() {
        match (c.dom, c.cod) {
            (Some(d), Some(e)) => b.cell(&c.id, p.id(d), p.id(e)),
            _ => b.cell(&c.id, AMBIENT_SOURCE, AMBIENT_TARGET),
        };
    }
    for (z, i) in p.identities() {
        b.identity(p.id(z), p.id(i));
    }
    for (&(k, f, g), &h) in p.table() {
        b.compose(k, p.id(f), p.id(g), p.id(h));
    }
    b.close()
}
