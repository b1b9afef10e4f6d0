//! The coinductive relation `~`, its degrees, and arrow classification.
//!
//! At or above the truncation `~` is equality, since every higher cell is a
//! virtual identity. Below it, `x ~ y` holds when some `f: x → y` and
//! `g: y → x` have `g ∘₁ f ~ e x` and `f ∘₁ g ~ e y` one degree up. The
//! recursion climbs strictly in degree, so a memo over pairs is a complete
//! decision procedure.

use crate::builder::Builder;
use crate::category::{Category, VCell};
use crate::error::{Error, Result};
use crate::functor::Functor;
use serde::Serialize;
use std::collections::HashMap;

/// A witness tree for `x ~ y`. A missing sub-witness means the composite
/// is already equal to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub x: VCell,
    pub y: VCell,
    pub forward: VCell,
    pub backward: VCell,
    /// witnesses `backward ∘₁ forward ~ e(x)`
    pub left: Option<Box<EquivalenceWitness>>,
    /// witnesses `forward ∘₁ backward ~ e(y)`
    pub right: Option<Box<EquivalenceWitness>>,
}

/// Serializable view of a witness, using cell names.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessView {
    pub x: String,
    pub y: String,
    pub forward: String,
    pub backward: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<Box<WitnessView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<Box<WitnessView>>,
}

impl EquivalenceWitness {
    /// The identity witness for `x ~ x`.
    pub fn reflexive(p: &Category, x: VCell) -> Result<Self> {
        let ex = p.e(x)?;
        Ok(EquivalenceWitness { x, y: x, forward: ex, backward: ex, left: None, right: None })
    }

    pub fn is_trivial(&self, p: &Category) -> bool {
        self.x == self.y
            && self.left.is_none()
            && self.right.is_none()
            && p.e(self.x).map(|ex| ex == self.forward && ex == self.backward).unwrap_or(false)
    }

    /// Number of levels carrying non-identity data.
    pub fn degree(&self, p: &Category) -> usize {
        if self.is_trivial(p) {
            return 0;
        }
        let sub = |w: &Option<Box<EquivalenceWitness>>| w.as_ref().map(|w| w.degree(p)).unwrap_or(0);
        1 + sub(&self.left).max(sub(&self.right))
    }

    pub fn depth(&self) -> usize {
        let sub = |w: &Option<Box<EquivalenceWitness>>| w.as_ref().map(|w| w.depth()).unwrap_or(0);
        1 + sub(&self.left).max(sub(&self.right))
    }

    pub fn swap(&self) -> Self {
        EquivalenceWitness {
            x: self.y,
            y: self.x,
            forward: self.backward,
            backward: self.forward,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// Every arrow appearing in the tree, forward and backward.
    pub fn arrows(&self) -> Vec<VCell> {
        let mut out = vec![self.forward, self.backward];
        for w in [&self.left, &self.right].into_iter().flatten() {
            out.extend(w.arrows());
        }
        out
    }

    pub fn view(&self, p: &Category) -> WitnessView {
        WitnessView {
            x: p.show(self.x),
            y: p.show(self.y),
            forward: p.show(self.forward),
            backward: p.show(self.backward),
            left: self.left.as_ref().map(|w| Box::new(w.view(p))),
            right: self.right.as_ref().map(|w| Box::new(w.view(p))),
        }
    }
}

/// Check a witness tree against the tables.
pub fn verify_witness(p: &Category, w: &EquivalenceWitness) -> bool {
    let ok_arrows = p.deg(w.x) == p.deg(w.y)
        && p.dom(w.forward) == Some(w.x)
        && p.cod(w.forward) == Some(w.y)
        && p.dom(w.backward) == Some(w.y)
        && p.cod(w.backward) == Some(w.x);
    if !ok_arrows {
        return false;
    }
    let side = |a: VCell, b: VCell, sub: &Option<Box<EquivalenceWitness>>, base: VCell| -> bool {
        let (Ok(comp), Ok(unit)) = (p.compose(1, a, b), p.e(base)) else { return false };
        match sub {
            None => comp == unit,
            Some(s) => s.x == comp && s.y == unit && verify_witness(p, s),
        }
    };
    side(w.backward, w.forward, &w.left, w.x) && side(w.forward, w.backward, &w.right, w.y)
}

type Choice = Option<(usize, Option<(VCell, VCell)>)>;

/// Memoized decision procedure for `~` on one presentation.
pub struct Equiv<'a> {
    p: &'a Category,
    memo: HashMap<(VCell, VCell), Choice>,
}

impl<'a> Equiv<'a> {
    pub fn new(p: &'a Category) -> Self {
        Equiv { p, memo: HashMap::new() }
    }

    pub fn category(&self) -> &'a Category {
        self.p
    }

    /// Minimal degree together with the chosen top-level pair.
    fn best(&mut self, x: VCell, y: VCell) -> Choice {
        if x == y {
            return Some((0, None));
        }
        let p = self.p;
        if p.deg(x) >= p.truncation() || p.deg(x) != p.deg(y) {
            return None;
        }
        if let Some(c) = self.memo.get(&(x, y)) {
            return *c;
        }
        let (Ok(ex), Ok(ey)) = (p.e(x), p.e(y)) else {
            self.memo.insert((x, y), None);
            return None;
        };
        let mut best: Choice = None;
        let fs = p.hom_v(x, y);
        let gs = p.hom_v(y, x);
        for &f in &fs {
            for &g in &gs {
                let (Ok(gf), Ok(fg)) = (p.compose(1, g, f), p.compose(1, f, g)) else { continue };
                let Some((dl, _)) = self.best(gf, ex) else { continue };
                let Some((dr, _)) = self.best(fg, ey) else { continue };
                let d = 1 + dl.max(dr);
                if best.map(|(b, _)| d < b).unwrap_or(true) {
                    best = Some((d, Some((f, g))));
                }
            }
        }
        self.memo.insert((x, y), best);
        best
    }

    pub fn equiv(&mut self, x: VCell, y: VCell) -> bool {
        self.best(x, y).is_some()
    }

    /// Minimal witness degree, or `None` when `x ≁ y`.
    pub fn degree(&mut self, x: VCell, y: VCell) -> Result<Option<usize>> {
        self.check_degrees(x, y)?;
        Ok(self.best(x, y).map(|(d, _)| d))
    }

    fn check_degrees(&self, x: VCell, y: VCell) -> Result<()> {
        if self.p.deg(x) != self.p.deg(y) {
            return Err(Error::DegreeMismatch(format!(
                "{} has degree {}, {} has degree {}",
                self.p.show(x),
                self.p.deg(x),
                self.p.show(y),
                self.p.deg(y)
            )));
        }
        Ok(())
    }

    /// A minimal-degree witness, ties broken by cell order.
    pub fn witness(&mut self, x: VCell, y: VCell) -> Result<Option<EquivalenceWitness>> {
        self.check_degrees(x, y)?;
        Ok(self.build(x, y))
    }

    fn build(&mut self, x: VCell, y: VCell) -> Option<EquivalenceWitness> {
        let p = self.p;
        let (_, choice) = self.best(x, y)?;
        let Some((f, g)) = choice else {
            return EquivalenceWitness::reflexive(p, x).ok();
        };
        let (gf, fg) = (p.compose(1, g, f).ok()?, p.compose(1, f, g).ok()?);
        let (ex, ey) = (p.e(x).ok()?, p.e(y).ok()?);
        let left = if gf == ex { None } else { Some(Box::new(self.build(gf, ex)?)) };
        let right = if fg == ey { None } else { Some(Box::new(self.build(fg, ey)?)) };
        Some(EquivalenceWitness { x, y, forward: f, backward: g, left, right })
    }

    /// Composite witness for `x ~ z` from `x ~ y` and `y ~ z`: forward
    /// `f₂ ∘ f₁`, backward `g₁ ∘ g₂`, with the higher levels re-derived.
    pub fn compose_witness(&mut self, w1: &EquivalenceWitness, w2: &EquivalenceWitness) -> Option<EquivalenceWitness> {
        let p = self.p;
        if w1.y != w2.x {
            return None;
        }
        let f = p.compose(1, w2.forward, w1.forward).ok()?;
        let g = p.compose(1, w1.backward, w2.backward).ok()?;
        let (gf, fg) = (p.compose(1, g, f).ok()?, p.compose(1, f, g).ok()?);
        let (ex, ez) = (p.e(w1.x).ok()?, p.e(w2.y).ok()?);
        let left = if gf == ex { None } else { Some(Box::new(self.build(gf, ex)?)) };
        let right = if fg == ez { None } else { Some(Box::new(self.build(fg, ez)?)) };
        let w = EquivalenceWitness { x: w1.x, y: w2.y, forward: f, backward: g, left, right };
        verify_witness(p, &w).then_some(w)
    }
}

pub fn decide_equiv(p: &Category, x: VCell, y: VCell) -> Result<Option<EquivalenceWitness>> {
    Equiv::new(p).witness(x, y)
}

pub fn equiv_degree(p: &Category, x: VCell, y: VCell) -> Result<Option<usize>> {
    Equiv::new(p).degree(x, y)
}

/// Largest minimal degree over equivalent pairs of objects.
pub fn category_degree(p: &Category) -> usize {
    let mut eq = Equiv::new(p);
    let objs = p.cells_at(0);
    let mut best = 0;
    for &x in &objs {
        for &y in &objs {
            if let Ok(Some(d)) = eq.degree(x, y) {
                best = best.max(d);
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArrowClass {
    pub monic: bool,
    pub epic: bool,
    pub equivalence: bool,
}

/// Monic, epic and equivalence tests with `~` in place of equality.
pub fn classify_arrow(eq: &mut Equiv<'_>, f: VCell) -> Result<ArrowClass> {
    let p = eq.category();
    let m = p.deg(f);
    if m == 0 {
        return Err(Error::DegreeMismatch(format!("{} is an object", p.show(f))));
    }
    let (a, a2) = (p.dom(f).unwrap(), p.cod(f).unwrap());
    let level = p.cells_at(m);
    let into_a: Vec<VCell> = level.iter().copied().filter(|&g| p.cod(g) == Some(a)).collect();
    let from_a2: Vec<VCell> = level.iter().copied().filter(|&g| p.dom(g) == Some(a2)).collect();
    let mut monic = true;
    'm: for &g in &into_a {
        for &h in &into_a {
            if p.dom(g) != p.dom(h) || g == h {
                continue;
            }
            let (fg, fh) = (p.compose(1, f, g)?, p.compose(1, f, h)?);
            if eq.equiv(fg, fh) && !eq.equiv(g, h) {
                monic = false;
                break 'm;
            }
        }
    }
    let mut epic = true;
    'e: for &g in &from_a2 {
        for &h in &from_a2 {
            if p.cod(g) != p.cod(h) || g == h {
                continue;
            }
            let (gf, hf) = (p.compose(1, g, f)?, p.compose(1, h, f)?);
            if eq.equiv(gf, hf) && !eq.equiv(g, h) {
                epic = false;
                break 'e;
            }
        }
    }
    let (ea, ea2) = (p.e(a)?, p.e(a2)?);
    let mut equivalence = false;
    for f2 in p.hom_v(a2, a) {
        let (l, r) = (p.compose(1, f2, f)?, p.compose(1, f, f2)?);
        if eq.equiv(l, ea) && eq.equiv(r, ea2) {
            equivalence = true;
            break;
        }
    }
    Ok(ArrowClass { monic, epic, equivalence })
}

/// The subpresentation of all cells of degree `≤ k` together with the
/// higher equivalences whose boundaries survive.
pub fn eq_subcategory(p: &Category, k: usize) -> Result<Category> {
    let mut eq = Equiv::new(p);
    let mut keep = vec![false; p.len()];
    for (i, c) in p.cells().iter().enumerate() {
        keep[i] = if c.degree <= k {
            true
        } else {
            let bounds = c.dom.map(|d| keep[d]).unwrap_or(true) && c.cod.map(|d| keep[d]).unwrap_or(true);
            bounds && classify_arrow(&mut eq, VCell::stored(i))?.equivalence
        };
    }
    let mut b = Builder::new(&format!("{}_{}~", p.name(), k), p.truncation());
    for (i, c) in p.cells().iter().enumerate() {
        if !keep[i] {
            continue;
        }
        match (c.dom, c.cod) {
            (Some(d), Some(e)) => b.cell(&c.id, p.id(d), p.id(e)),
            _ => b.object(&c.id),
        };
    }
    for (z, i) in p.identities() {
        if keep[z] {
            if !keep[i] {
                return Err(Error::ClosureFailure(format!("identity of {} dropped", p.id(z))));
            }
            b.identity(p.id(z), p.id(i));
        }
    }
    for (&(kk, f, g), &h) in p.table() {
        if keep[f] && keep[g] {
            if !keep[h] {
                return Err(Error::ClosureFailure(format!("{} ∘_{kk} {} = {} dropped", p.id(f), p.id(g), p.id(h))));
            }
            b.compose(kk, p.id(f), p.id(g), p.id(h));
        }
    }
    b.build()
}

/// Whether every source object pair of degree `≤ m` maps to a pair of degree
/// `≤ n`, with `n` attained.
pub fn check_mn_invariant(fun: &Functor, m: usize, n: usize) -> Result<bool> {
    let (src, tgt) = (fun.source.as_ref(), fun.target.as_ref());
    let mut es = Equiv::new(src);
    let mut et = Equiv::new(tgt);
    let objs = src.cells_at(0);
    let mut attained = false;
    for &x in &objs {
        for &y in &objs {
            let Some(d) = es.degree(x, y)? else { continue };
            if d > m {
                continue;
            }
            match et.degree(fun.apply(x)?, fun.apply(y)?)? {
                Some(t) if t <= n => attained |= t == n,
                _ => return Ok(false),
            }
        }
    }
    Ok(attained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(p: &Category, s: &str) -> VCell {
        p.parse(s).unwrap()
    }

    #[test]
    fn iso1_strict_inverse_witness() {
        let p = fixtures::iso1();
        let w = decide_equiv(&p, v(&p, "a"), v(&p, "b")).unwrap().unwrap();
        assert_eq!((p.show(w.forward), p.show(w.backward)), ("f".into(), "g".into()));
        assert!(w.left.is_none() && w.right.is_none());
        assert_eq!(w.degree(&p), 1);
        assert!(verify_witness(&p, &w));
    }

    #[test]
    fn discrete_objects_not_equivalent() {
        let p = fixtures::discrete(2);
        assert!(decide_equiv(&p, v(&p, "x0"), v(&p, "x1")).unwrap().is_none());
        assert_eq!(category_degree(&p), 0);
    }

    #[test]
    fn walkeq2_needs_depth_two() {
        let p = fixtures::walkeq2();
        let w = decide_equiv(&p, v(&p, "a"), v(&p, "b")).unwrap().unwrap();
        assert_eq!(w.depth(), 2);
        assert_eq!(w.degree(&p), 2);
        assert!(verify_witness(&p, &w));
        assert_eq!(category_degree(&p), 2);
    }

    #[test]
    fn degrees_of_identities_and_isos() {
        let p = fixtures::iso1();
        for c in p.cells_at(0).into_iter().chain(p.cells_at(1)) {
            assert_eq!(equiv_degree(&p, c, c).unwrap(), Some(0));
        }
        assert_eq!(equiv_degree(&p, v(&p, "a"), v(&p, "b")).unwrap(), Some(1));
        assert_eq!(category_degree(&p), 1);
        assert!(equiv_degree(&p, v(&p, "a"), v(&p, "f")).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = fixtures::iso1();
        let mut eq = Equiv::new(&p);
        let c = classify_arrow(&mut eq, v(&p, "f")).unwrap();
        assert!(c.monic && c.epic && c.equivalence);

        let p = fixtures::walking2();
        let mut eq = Equiv::new(&p);
        let c = classify_arrow(&mut eq, v(&p, "σ")).unwrap();
        assert_eq!(c, ArrowClass { monic: true, epic: true, equivalence: false });

        let p = fixtures::free_arrow();
        let mut eq = Equiv::new(&p);
        let c = classify_arrow(&mut eq, v(&p, "f")).unwrap();
        assert_eq!(c, ArrowClass { monic: true, epic: true, equivalence: false });
    }

    #[test]
    fn eq_subcategory_examples() {
        let w = fixtures::walking2();
        let s = eq_subcategory(&w, 0).unwrap();
        assert!(s.lookup("σ").is_none());
        let iso = fixtures::iso1();
        assert_eq!(eq_subcategory(&iso, 0).unwrap().len(), iso.len());
        for p in fixtures::corpus() {
            assert_eq!(eq_subcategory(&p, p.truncation()).unwrap().len(), p.len());
        }
    }

    #[test]
    fn relation_laws_on_corpus() {
        for p in fixtures::corpus() {
            let mut eq = Equiv::new(&p);
            for d in 0..=p.truncation() {
                let cells = p.cells_at(d);
                for &x in &cells {
                    assert!(eq.equiv(x, x));
                    for &y in &cells {
                        let w = eq.witness(x, y).unwrap();
                        assert_eq!(w.is_some(), eq.equiv(y, x), "symmetry");
                        if let Some(w) = &w {
                            assert!(verify_witness(&p, w));
                            assert!(verify_witness(&p, &w.swap()));
                        }
                        for &z in &cells {
                            let Some(w1) = eq.witness(x, y).unwrap() else { continue };
                            let Some(w2) = eq.witness(y, z).unwrap() else { continue };
                            assert!(eq.compose_witness(&w1, &w2).is_some(), "transitivity {}", p.name());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witness_arrows_are_equivalences() {
        for p in fixtures::corpus() {
            let mut eq = Equiv::new(&p);
            for d in 0..p.truncation() {
                for &x in &p.cells_at(d) {
                    for &y in &p.cells_at(d) {
                        let Some(w) = eq.witness(x, y).unwrap() else { continue };
                        for a in w.arrows() {
                            if p.deg(a) <= p.truncation() {
                                assert!(classify_arrow(&mut eq, a).unwrap().equivalence);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identities_detect_equality() {
        for p in fixtures::corpus() {
            let mut eq = Equiv::new(&p);
            for d in 0..p.truncation() {
                for &x in &p.cells_at(d) {
                    for &y in &p.cells_at(d) {
                        let (ex, ey) = (p.e(x).unwrap(), p.e(y).unwrap());
                        assert_eq!(eq.equiv(ex, ey), x == y);
                    }
                }
            }
        }
    }

    #[test]
    fn quasi_inverses_agree_up_to_equivalence() {
        let p = fixtures::walkeq2();
        let mut eq = Equiv::new(&p);
        let (a, b) = (v(&p, "a"), v(&p, "b"));
        let f = v(&p, "f");
        let ea = p.e(a).unwrap();
        let eb = p.e(b).unwrap();
        let inverses: Vec<VCell> = p
            .hom_v(b, a)
            .into_iter()
            .filter(|&g| {
                let gf = p.compose(1, g, f).unwrap();
                let fg = p.compose(1, f, g).unwrap();
                eq.equiv(gf, ea) && eq.equiv(fg, eb)
            })
            .collect();
        for &g in &inverses {
            for &h in &inverses {
                assert!(eq.equiv(g, h));
            }
        }
    }

    #[test]
    fn monic_epic_equivalence_closure() {
        for p in fixtures::corpus() {
            let mut eq = Equiv::new(&p);
            for (&(k, f, g), &h) in p.table() {
                if k != 1 {
                    continue;
                }
                let (fc, gc) = (classify_arrow(&mut eq, VCell::stored(f)).unwrap(), classify_arrow(&mut eq, VCell::stored(g)).unwrap());
                let hc = classify_arrow(&mut eq, VCell::stored(h)).unwrap();
                assert!(!(fc.monic && gc.monic) || hc.monic);
                assert!(!(fc.epic && gc.epic) || hc.epic);
                assert!(!(fc.equivalence && gc.equivalence) || hc.equivalence);
            }
        }
    }
}
