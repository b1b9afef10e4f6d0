//! Functors, n-modifications and their composites, plus the equivalence
//! and quasiisomorphism tests for pairs of functors.
//!
//! Functor values may be virtual cells of the target, so a functor into a
//! higher truncation can send top cells to iterated identities.

use crate::category::{Category, CellIx, VCell};
use crate::equivalence::{classify_arrow, Equiv};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::search_limit;
use serde::Serialize;
use std::sync::Arc;

/// Equality ignores the name.
#[derive(Debug, Clone, Eq)]
pub struct Functor {
    pub name: String,
    pub source: Arc<Category>,
    pub target: Arc<Category>,
    /// Image of each stored source cell, by index.
    pub map: Vec<VCell>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Functor {
    pub fn new(name: &str, source: Arc<Category>, target: Arc<Category>, map: Vec<VCell>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::Malformed(format!(
                "functor `{name}` maps {} cells, source has {}",
                map.len(),
                source.len()
            )));
        }
        Ok(Functor { name: name.to_string(), source, target, map })
    }

    /// Build from a rule on stored source cells.
    pub fn from_fn(
        name: &str,
        source: Arc<Category>,
        target: Arc<Category>,
        rule: impl Fn(CellIx) -> Result<VCell>,
    ) -> Result<Self> {
        let map = (0..source.len()).map(rule).collect::<Result<Vec<_>>>()?;
        Functor::new(name, source, target, map)
    }

    /// Build from `(source id, target cell)` pairs covering every source cell.
    pub fn from_names(name: &str, source: Arc<Category>, target: Arc<Category>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (from, to) in pairs {
            let i = source
                .lookup(from)
                .ok_or_else(|| Error::Malformed(format!("functor `{name}`: unknown source cell `{from}`")))?;
            map[i] = Some(target.parse(to)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Malformed(format!("functor `{name}`: `{}` unmapped", source.id(i)))))
            .collect::<Result<Vec<_>>>()?;
        Functor::new(name, source, target, map)
    }

    pub fn identity(p: Arc<Category>) -> Self {
        let map = (0..p.len()).map(VCell::stored).collect();
        Functor { name: format!("id_{}", p.name()), source: p.clone(), target: p, map }
    }

    /// Every `n`-cell goes to `e^n(object)`.
    pub fn constant(source: Arc<Category>, target: Arc<Category>, object: CellIx) -> Result<Self> {
        let o = VCell::stored(object);
        let name = format!("const_{}", target.id(object));
        let t = target.clone();
        Functor::from_fn(&name, source.clone(), target, |i| t.e_pow(o, source.cell(i).degree))
    }

    /// Same-named cells; fails when a name is missing from the target.
    pub fn inclusion(source: Arc<Category>, target: Arc<Category>) -> Result<Self> {
        let (s, t) = (source.clone(), target.clone());
        Functor::from_fn(&format!("incl_{}", source.name()), source, target, |i| s.translate(VCell::stored(i), &t))
    }

    /// `F(e^j x) = e^j F(x)`.
    pub fn apply(&self, v: VCell) -> Result<VCell> {
        self.target.e_pow(self.map[v.base], v.ep)
    }

    pub fn apply_stored(&self, i: CellIx) -> VCell {
        self.map[i]
    }

    pub fn show(&self) -> Vec<(String, String)> {
        (0..self.source.len()).map(|i| (self.source.id(i).to_string(), self.target.show(self.map[i]))).collect()
    }
}

/// `g ∘ f`.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!("{} after {}", g.name, f.name)));
    }
    let map = f.map.iter().map(|&v| g.apply(v)).collect::<Result<Vec<_>>>()?;
    Ok(Functor { name: format!("{}∘{}", g.name, f.name), source: f.source.clone(), target: g.target.clone(), map })
}

/// Grading and boundaries strictly; identities and composites strictly
/// (`strict`) or up to `~` in the target.
pub fn check_functor(fun: &Functor, strict: bool) -> ValidationReport {
    let (s, t) = (fun.source.as_ref(), fun.target.as_ref());
    let mut rep = ValidationReport::new();
    let mut eq = Equiv::new(t);
    let mut same = |a: VCell, b: VCell| a == b || (!strict && t.deg(a) == t.deg(b) && eq.equiv(a, b));
    for i in 0..s.len() {
        let x = VCell::stored(i);
        let fx = fun.map[i];
        let sid = s.id(i);
        if !rep.check("functor-grading", t.deg(fx) == s.deg(x), &[sid]) {
            continue;
        }
        if let (Some(d), Some(c)) = (s.dom(x), s.cod(x)) {
            let ok = t.dom(fx) == Some(fun.map[d.base]) && t.cod(fx) == Some(fun.map[c.base]);
            rep.check("functor-boundary", ok, &[sid]);
        }
        if let Some(ei) = s.identity(i) {
            let ok = t.e(fx).map(|e| same(fun.map[ei], e)).unwrap_or(false);
            rep.check("functor-identity", ok, &[sid]);
        }
    }
    if !rep.passed() {
        return rep;
    }
    for (&(k, f, g), &h) in s.table() {
        let ok = t.compose(k, fun.map[f], fun.map[g]).map(|r| same(fun.map[h], r)).unwrap_or(false);
        rep.check("functor-composition", ok, &[s.id(f), s.id(g)]);
    }
    // identity lifts of top-degree source composites, up to the target truncation
    let top = s.truncation();
    for (&(k, f, g), &h) in s.table() {
        if s.cell(f).degree != top {
            continue;
        }
        for j in 1..=t.truncation().saturating_sub(top) {
            let lift = |v: CellIx| s.e_pow(VCell::stored(v), j).and_then(|x| fun.apply(x));
            let ok = match (lift(f), lift(g), lift(h)) {
                (Ok(ff), Ok(gg), Ok(hh)) => t.compose(k + j, ff, gg).map(|r| same(hh, r)).unwrap_or(false),
                _ => false,
            };
            rep.check("functor-composition", ok, &[s.id(f), s.id(g)]);
        }
    }
    rep
}

/// Whether `x ~ y` in the source implies `F x ~ F y` in the target.
pub fn check_preserves_equiv(fun: &Functor) -> bool {
    let (s, t) = (fun.source.as_ref(), fun.target.as_ref());
    let mut es = Equiv::new(s);
    let mut et = Equiv::new(t);
    for d in 0..=s.truncation() {
        let cells = s.of_degree(d);
        for &x in cells {
            for &y in cells {
                if es.equiv(VCell::stored(x), VCell::stored(y)) {
                    let (fx, fy) = (fun.map[x], fun.map[y]);
                    if t.deg(fx) != t.deg(fy) || !et.equiv(fx, fy) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Componentwise `~` of two parallel functors; by the quasiequality
/// lemma this forces equality, which is reported separately.
pub fn quasiequal_functors(f: &Functor, g: &Functor) -> (bool, bool) {
    let t = f.target.as_ref();
    let mut eq = Equiv::new(t);
    let quasi = f.map.iter().zip(&g.map).all(|(&a, &b)| t.deg(a) == t.deg(b) && eq.equiv(a, b));
    (quasi, f.map == g.map)
}

/// An `n`-modification. Components are indexed by source object, which
/// are the first cells of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modification {
    pub level: usize,
    pub from: Functor,
    pub to: Functor,
    pub dom: Option<Box<Modification>>,
    pub cod: Option<Box<Modification>>,
    pub components: Vec<VCell>,
}

impl Modification {
    /// A 0-modification `from ⇒ to`.
    pub fn natural(from: Functor, to: Functor, components: Vec<VCell>) -> Self {
        Modification { level: 0, from, to, dom: None, cod: None, components }
    }

    /// An `(n+1)`-modification between two `n`-modifications.
    pub fn between(dom: Modification, cod: Modification, components: Vec<VCell>) -> Self {
        Modification {
            level: dom.level + 1,
            from: dom.from.clone(),
            to: dom.to.clone(),
            dom: Some(Box::new(dom)),
            cod: Some(Box::new(cod)),
            components,
        }
    }

    /// `e F`: components `e(F a)`.
    pub fn identity_of_functor(f: &Functor) -> Result<Self> {
        let comps = f.source.objects().iter().map(|&a| f.target.e(f.map[a])).collect::<Result<Vec<_>>>()?;
        Ok(Modification::natural(f.clone(), f.clone(), comps))
    }

    /// `e M`, one level up.
    pub fn identity(&self) -> Result<Self> {
        let t = self.from.target.clone();
        let comps = self.components.iter().map(|&c| t.e(c)).collect::<Result<Vec<_>>>()?;
        Ok(Modification::between(self.clone(), self.clone(), comps))
    }

    /// The level-`n` identity on a functor.
    pub fn identity_at_level(f: &Functor, n: usize) -> Result<Self> {
        (0..n).try_fold(Modification::identity_of_functor(f)?, |m, _| m.identity())
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.from.source
    }

    pub fn target(&self) -> &Arc<Category> {
        &self.from.target
    }

    pub fn component(&self, a: CellIx) -> VCell {
        self.components[a]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Boundary<'a> {
    Mod(&'a Modification),
    Fun(&'a Functor),
    Cat(&'a Category),
}

impl<'a> Boundary<'a> {
    fn d(self) -> Option<Boundary<'a>> {
        match self {
            Boundary::Mod(m) => Some(match &m.dom {
                Some(d) => Boundary::Mod(d),
                None => Boundary::Fun(&m.from),
            }),
            Boundary::Fun(f) => Some(Boundary::Cat(&f.source)),
            Boundary::Cat(_) => None,
        }
    }

    fn c(self) -> Option<Boundary<'a>> {
        match self {
            Boundary::Mod(m) => Some(match &m.cod {
                Some(d) => Boundary::Mod(d),
                None => Boundary::Fun(&m.to),
            }),
            Boundary::Fun(f) => Some(Boundary::Cat(&f.target)),
            Boundary::Cat(_) => None,
        }
    }

    fn d_pow(self, k: usize) -> Option<Boundary<'a>> {
        (0..k).try_fold(self, |b, _| b.d())
    }

    fn c_pow(self, k: usize) -> Option<Boundary<'a>> {
        (0..k).try_fold(self, |b, _| b.c())
    }
}

/// Boundary typing and naturality of every component.
///
/// For a stored cell `f₀` the square is checked at `f = e^j f₀` with `j`
/// the least lift reaching degree `n + 1`; cells above the source
/// truncation are identities of those and are not revisited.
pub fn check_modification(m: &Modification) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = m.level;
    let (s, t) = (m.from.source.as_ref(), m.from.target.as_ref());
    let stack_ok = m.to.source.as_ref() == s
        && m.to.target.as_ref() == t
        && m.components.len() == s.objects().len()
        && match (&m.dom, &m.cod) {
            (None, None) => n == 0,
            (Some(d), Some(c)) => {
                n >= 1
                    && d.level + 1 == n
                    && c.level + 1 == n
                    && d.from == m.from
                    && d.to == m.to
                    && c.from == m.from
                    && c.to == m.to
                    && d.dom == c.dom
                    && d.cod == c.cod
            }
            _ => false,
        };
    if !rep.check("modification-stack", stack_ok, &[]) {
        return rep;
    }
    if let (Some(d), Some(c)) = (&m.dom, &m.cod) {
        rep.merge("dom", check_modification(d));
        rep.merge("cod", check_modification(c));
    }
    let mut eq = Equiv::new(t);
    for &a in s.objects() {
        let x = m.components[a];
        let (want_d, want_c) = match (&m.dom, &m.cod) {
            (Some(d), Some(c)) => (d.components[a], c.components[a]),
            _ => (m.from.map[a], m.to.map[a]),
        };
        let ok = t.deg(x) == n + 1 && t.dom(x) == Some(want_d) && t.cod(x) == Some(want_c);
        rep.check("modification-boundary", ok, &[s.id(a), &t.show(x)]);
    }
    if !rep.passed() {
        return rep;
    }
    for f0 in 0..s.len() {
        let d0 = s.cell(f0).degree;
        if d0 == 0 {
            continue;
        }
        let lift = (n + 1).saturating_sub(d0);
        let Ok(f) = s.e_pow(VCell::stored(f0), lift) else { continue };
        let k = s.deg(f) - 1 - n;
        let (a, b) = (s.source_object(f).base, s.target_object(f).base);
        let sides = (|| -> Result<(VCell, VCell)> {
            let lhs = t.horizontal(t.e_pow(m.components[b], k)?, m.from.apply(f)?)?;
            let rhs = t.horizontal(m.to.apply(f)?, t.e_pow(m.components[a], k)?)?;
            Ok((lhs, rhs))
        })();
        match sides {
            Ok((l, r)) => {
                let weak = l == r || eq.equiv(l, r);
                rep.check("naturality", weak, &[&s.show(f)]);
                if weak {
                    rep.check("naturality-strict", l == r, &[&s.show(f), &t.show(l), &t.show(r)]);
                }
            }
            Err(e) => rep.violate("naturality", &[&s.show(f)], e.to_string()),
        }
    }
    rep
}

/// `M₁ ∘_k M₂`: componentwise for `k ≤ n + 1`, across categories for
/// `k = n + 2`.
pub fn compose_modifications(k: usize, m1: &Modification, m2: &Modification) -> Result<Modification> {
    let n = m1.level;
    if m2.level != n {
        return Err(Error::LevelMismatch(format!("levels {} and {}", m1.level, m2.level)));
    }
    if k == 0 || k > n + 2 {
        return Err(Error::NotComposable(format!("∘_{k} of {n}-modifications")));
    }
    if Boundary::Mod(m1).d_pow(k) != Boundary::Mod(m2).c_pow(k) {
        return Err(Error::NotComposable(format!("d^{k} and c^{k} disagree")));
    }
    if k <= n + 1 {
        let t = m1.target().clone();
        let comps = m1
            .components
            .iter()
            .zip(&m2.components)
            .map(|(&x, &y)| t.compose(k, x, y))
            .collect::<Result<Vec<_>>>()?;
        return Ok(match (n, k) {
            (0, _) => Modification::natural(m2.from.clone(), m1.to.clone(), comps),
            (_, 1) => Modification::between((**m2.dom.as_ref().unwrap()).clone(), (**m1.cod.as_ref().unwrap()).clone(), comps),
            _ => {
                let dom = compose_modifications(k - 1, m1.dom.as_ref().unwrap(), m2.dom.as_ref().unwrap())?;
                let cod = compose_modifications(k - 1, m1.cod.as_ref().unwrap(), m2.cod.as_ref().unwrap())?;
                Modification::between(dom, cod, comps)
            }
        });
    }
    let comps = horizontal_components(m1, m2)?;
    if n == 0 {
        let from = compose_functors(&m1.from, &m2.from)?;
        let to = compose_functors(&m1.to, &m2.to)?;
        return Ok(Modification::natural(from, to, comps));
    }
    let dom = compose_modifications(n + 1, m1.dom.as_ref().unwrap(), m2.dom.as_ref().unwrap())?;
    let cod = compose_modifications(n + 1, m1.cod.as_ref().unwrap(), m2.cod.as_ref().unwrap())?;
    Ok(Modification::between(dom, cod, comps))
}

/// `M₁(F' a) ∘_{n+1} G(M₂ a)` with `F' = c^{n+1} M₂`, `G = d^{n+1} M₁`.
pub fn horizontal_components(m1: &Modification, m2: &Modification) -> Result<Vec<VCell>> {
    let n = m1.level;
    let t = m1.target();
    m2.source()
        .objects()
        .iter()
        .map(|&a| t.compose(n + 1, m1.components[m2.to.map[a].base], m1.from.apply(m2.components[a])?))
        .collect()
}

/// The other horizontal formula, `G'(M₂ a) ∘_{n+1} M₁(F a)`.
pub fn horizontal_components_alt(m1: &Modification, m2: &Modification) -> Result<Vec<VCell>> {
    let n = m1.level;
    let t = m1.target();
    m2.source()
        .objects()
        .iter()
        .map(|&a| t.compose(n + 1, m1.to.apply(m2.components[a])?, m1.components[m2.from.map[a].base]))
        .collect()
}

/// Parallel modifications: same level, functors and lower boundaries.
fn parallel(m1: &Modification, m2: &Modification) -> bool {
    m1.level == m2.level && m1.from == m2.from && m1.to == m2.to && m1.dom == m2.dom && m1.cod == m2.cod
}

fn product(choices: &[Vec<VCell>], budget: &mut u64) -> Result<Vec<Vec<VCell>>> {
    let mut out: Vec<Vec<VCell>> = vec![Vec::new()];
    for c in choices {
        let size = out.len() as u64 * c.len() as u64;
        if size > *budget {
            return Err(Error::SearchLimit(format!("{size} candidate component families")));
        }
        *budget -= size;
        out = out.into_iter().flat_map(|v| c.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
    }
    Ok(out)
}

/// All valid `(n+1)`-modifications `m1 → m2`.
pub fn modifications_between(m1: &Modification, m2: &Modification) -> Result<Vec<Modification>> {
    let t = m1.target().clone();
    let choices: Vec<Vec<VCell>> = m1.components.iter().zip(&m2.components).map(|(&x, &y)| t.hom_v(x, y)).collect();
    let mut budget = search_limit();
    Ok(product(&choices, &mut budget)?
        .into_iter()
        .map(|c| Modification::between(m1.clone(), m2.clone(), c))
        .filter(|m| check_modification(m).passed())
        .collect())
}

/// `~` between parallel modifications, inside the functor category.
fn modifications_equiv(m1: &Modification, m2: &Modification) -> Result<bool> {
    if !parallel(m1, m2) {
        return Ok(false);
    }
    if m1.components == m2.components {
        return Ok(true);
    }
    if m1.level + 1 >= m1.target().truncation() {
        return Ok(false);
    }
    let forward = modifications_between(m1, m2)?;
    let backward = modifications_between(m2, m1)?;
    let (e1, e2) = (m1.identity()?, m2.identity()?);
    for p in &forward {
        for q in &backward {
            if modifications_equiv(&compose_modifications(1, q, p)?, &e1)?
                && modifications_equiv(&compose_modifications(1, p, q)?, &e2)?
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `M₁ ≈_k M₂` for `k ∈ {0, 1}`.
pub fn quasiequal_depth(m1: &Modification, m2: &Modification, k: usize) -> Result<bool> {
    if m1.level != m2.level {
        return Err(Error::LevelMismatch(format!("levels {} and {}", m1.level, m2.level)));
    }
    if m1.source() != m2.source() || m1.target() != m2.target() {
        return Err(Error::LevelMismatch("modifications over different categories".into()));
    }
    match k {
        0 => modifications_equiv(m1, m2),
        1 => {
            let t = m1.target();
            let mut eq = Equiv::new(t);
            let ends = |m| (Boundary::Mod(m).d(), Boundary::Mod(m).c());
            Ok(ends(m1) == ends(m2) && m1.components.iter().zip(&m2.components).all(|(&a, &b)| eq.equiv(a, b)))
        }
        k => Err(Error::UnsupportedDepth(k)),
    }
}

/// Evidence that `F` and `G` form an equivalence of categories.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalencePair {
    /// Chosen `a → G F a` per source object.
    pub unit: Vec<(String, String)>,
    /// Chosen `b → F G b` per target object.
    pub counit: Vec<(String, String)>,
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
}

/// Equivalence arrows `u_a: a → H a`, natural up to `~` on 1-cells.
fn natural_equivalence(h: &Functor) -> Option<Vec<VCell>> {
    let p = h.source.as_ref();
    let objs = p.objects();
    let mut eq = Equiv::new(p);
    let candidates: Vec<Vec<VCell>> = objs
        .iter()
        .map(|&a| {
            let x = VCell::stored(a);
            p.hom_v(x, h.map[a])
                .into_iter()
                .filter(|&u| p.deg(u) > p.truncation() || classify_arrow(&mut eq, u).map(|c| c.equivalence).unwrap_or(false))
                .collect()
        })
        .collect();
    let arrows = p.cells_at(1);
    let mut chosen: Vec<VCell> = Vec::new();
    fn go(
        i: usize,
        chosen: &mut Vec<VCell>,
        candidates: &[Vec<VCell>],
        arrows: &[VCell],
        h: &Functor,
        eq: &mut Equiv<'_>,
    ) -> bool {
        let p = h.source.as_ref();
        if i == candidates.len() {
            return true;
        }
        for &u in &candidates[i] {
            chosen.push(u);
            let ok = arrows.iter().all(|&f| {
                let (a, b) = (p.dom(f).unwrap().base, p.cod(f).unwrap().base);
                if a > i || b > i || (a != i && b != i) {
                    return true;
                }
                let sq = || -> Result<(VCell, VCell)> {
                    Ok((p.compose(1, h.apply(f)?, chosen[a])?, p.compose(1, chosen[b], f)?))
                };
                matches!(sq(), Ok((l, r)) if l == r || eq.equiv(l, r))
            });
            if ok && go(i + 1, chosen, candidates, arrows, h, eq) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(0, &mut chosen, &candidates, &arrows, h, &mut eq).then_some(chosen)
}

/// Faithful, full and essentially surjective, all up to `~`.
pub fn functor_properties(f: &Functor) -> (bool, bool, bool) {
    let (s, t) = (f.source.as_ref(), f.target.as_ref());
    let mut es = Equiv::new(s);
    let mut et = Equiv::new(t);
    let arrows = s.cells_at(1);
    let mut faithful = true;
    for &x in &arrows {
        for &y in &arrows {
            if s.dom(x) == s.dom(y) && s.cod(x) == s.cod(y) {
                let (fx, fy) = (f.apply(x).unwrap(), f.apply(y).unwrap());
                if et.equiv(fx, fy) && !es.equiv(x, y) {
                    faithful = false;
                }
            }
        }
    }
    let mut full = true;
    for &a in s.objects() {
        for &b in s.objects() {
            let image: Vec<VCell> = s
                .hom_v(VCell::stored(a), VCell::stored(b))
                .into_iter()
                .filter_map(|x| f.apply(x).ok())
                .collect();
            for h in t.hom_v(f.map[a], f.map[b]) {
                if !image.iter().any(|&g| et.equiv(g, h)) {
                    full = false;
                }
            }
        }
    }
    let surjective = t
        .objects()
        .iter()
        .all(|&b| s.objects().iter().any(|&a| et.equiv(f.map[a], VCell::stored(b))));
    (faithful, full, surjective)
}

pub fn check_equivalence_pair(f: &Functor, g: &Functor) -> Result<Option<EquivalencePair>> {
    let gf = compose_functors(g, f)?;
    let fg = compose_functors(f, g)?;
    let (Some(unit), Some(counit)) = (natural_equivalence(&gf), natural_equivalence(&fg)) else {
        return Ok(None);
    };
    let (s, t) = (f.source.as_ref(), f.target.as_ref());
    let (faithful, full, essentially_surjective) = functor_properties(f);
    let name = |p: &Category, v: &[VCell]| -> Vec<(String, String)> {
        p.objects().iter().map(|&a| (p.id(a).to_string(), p.show(v[a]))).collect()
    };
    Ok(Some(EquivalencePair { unit: name(s, &unit), counit: name(t, &counit), faithful, full, essentially_surjective }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiIsomorphism {
    /// `G F x ~ x` and `F G y ~ y` for every cell.
    pub cellwise: bool,
    /// `F` is a bijection on cells with inverse `G`.
    pub bijective: bool,
}

impl QuasiIsomorphism {
    /// A cellwise pass without bijectivity would contradict the fact that
    /// isomorphism and quasiisomorphism coincide; it counts as failure.
    pub fn holds(&self) -> bool {
        self.cellwise && self.bijective
    }
}

pub fn check_quasiisomorphism(f: &Functor, g: &Functor) -> Result<QuasiIsomorphism> {
    let gf = compose_functors(g, f)?;
    let fg = compose_functors(f, g)?;
    let round = |h: &Functor| -> bool {
        let p = h.source.as_ref();
        let mut eq = Equiv::new(p);
        (0..p.len()).all(|i| {
            let (x, y) = (VCell::stored(i), h.map[i]);
            p.deg(x) == p.deg(y) && eq.equiv(x, y)
        })
    };
    let cellwise = round(&gf) && round(&fg);
    let exact = |h: &Functor| h.map.iter().enumerate().all(|(i, v)| *v == VCell::stored(i));
    Ok(QuasiIsomorphism { cellwise, bijective: exact(&gf) && exact(&fg) })
}

/// Every strict functor `source → target`, by backtracking in cell order.
pub fn enumerate_functors(source: &Arc<Category>, target: &Arc<Category>) -> Result<Vec<Functor>> {
    let (s, t) = (source.as_ref(), target.as_ref());
    // constraints indexed by their largest cell
    let mut entries: Vec<Vec<(usize, CellIx, CellIx, CellIx)>> = vec![Vec::new(); s.len()];
    for (&(k, f, g), &h) in s.table() {
        entries[f.max(g).max(h)].push((k, f, g, h));
    }
    let mut out = Vec::new();
    let mut map: Vec<VCell> = Vec::with_capacity(s.len());
    let mut budget = search_limit();
    fn go(
        s: &Category,
        t: &Category,
        entries: &[Vec<(usize, CellIx, CellIx, CellIx)>],
        map: &mut Vec<VCell>,
        out: &mut Vec<Vec<VCell>>,
        budget: &mut u64,
    ) -> Result<()> {
        let i = map.len();
        if i == s.len() {
            out.push(map.clone());
            return Ok(());
        }
        let c = s.cell(i);
        let candidates = match (c.dom, c.cod) {
            (Some(d), Some(k)) => t.hom_v(map[d], map[k]),
            _ => t.cells_at(0),
        };
        for v in candidates {
            if *budget == 0 {
                return Err(Error::SearchLimit("functor enumeration".into()));
            }
            *budget -= 1;
            if let Some(z) = s.identity_of(i) {
                if t.e(map[z]).ok() != Some(v) {
                    continue;
                }
            }
            map.push(v);
            let ok = entries[i]
                .iter()
                .all(|&(k, f, g, h)| t.compose(k, map[f], map[g]).ok() == Some(map[h]));
            if ok {
                go(s, t, entries, map, out, budget)?;
            }
            map.pop();
        }
        Ok(())
    }
    let mut maps = Vec::new();
    go(s, t, &entries, &mut map, &mut maps, &mut budget)?;
    for (n, m) in maps.into_iter().enumerate() {
        out.push(Functor { name: format!("F{n}"), source: source.clone(), target: target.clone(), map: m });
    }
    Ok(out)
}
