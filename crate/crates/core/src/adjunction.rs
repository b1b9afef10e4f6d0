//! Strict adjunctions: triangle identities, the hom-isomorphisms they
//! induce, composition, and extension along truncations.

use crate::category::{Category, CellIx, VCell};
use crate::construct::hom_category;
use crate::error::{Error, Result};
use crate::functor::{check_functor, check_modification, compose_functors, Functor, Modification};
use crate::presheaf::{from_hom, to_hom, Presheaf};
use crate::report::ValidationReport;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `F: L → L'` left adjoint to `G: L' → L`, with `η: 1 ⇒ GF` and
/// `ε: FG ⇒ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionData {
    pub f: Functor,
    pub g: Functor,
    pub unit: Modification,
    pub counit: Modification,
}

impl AdjunctionData {
    pub fn left(&self) -> &Arc<Category> {
        &self.f.source
    }

    pub fn right(&self) -> &Arc<Category> {
        &self.f.target
    }
}

pub fn identity_adjunction(p: Arc<Category>) -> Result<AdjunctionData> {
    let id = Functor::identity(p);
    let m = Modification::identity_of_functor(&id)?;
    Ok(AdjunctionData { f: id.clone(), g: id, unit: m.clone(), counit: m })
}

/// Adjunction from functors and unit/counit components, building the
/// composite functors `GF` and `FG`.
pub fn adjunction_from_components(f: Functor, g: Functor, unit: Vec<VCell>, counit: Vec<VCell>) -> Result<AdjunctionData> {
    let gf = compose_functors(&g, &f)?;
    let fg = compose_functors(&f, &g)?;
    let unit = Modification::natural(Functor::identity(f.source.clone()), gf, unit);
    let counit = Modification::natural(fg, Functor::identity(f.target.clone()), counit);
    Ok(AdjunctionData { f, g, unit, counit })
}

/// Strict functors, strictly natural unit and counit, and both triangle
/// identities as cell equalities.
pub fn check_strict_adjunction(a: &AdjunctionData) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let (l, lp) = (a.left().clone(), a.right().clone());
    let shape = *a.g.source == *lp
        && *a.g.target == *l
        && a.unit.level == 0
        && a.counit.level == 0
        && *a.unit.from.source == *l
        && *a.unit.from.target == *l
        && *a.counit.from.source == *lp
        && *a.counit.from.target == *lp
        && compose_functors(&a.g, &a.f).map(|gf| a.unit.to == gf && a.unit.from == Functor::identity(l.clone())).unwrap_or(false)
        && compose_functors(&a.f, &a.g).map(|fg| a.counit.from == fg && a.counit.to == Functor::identity(lp.clone())).unwrap_or(false);
    if !rep.check("adjunction-shape", shape, &[]) {
        return rep;
    }
    rep.merge("F", check_functor(&a.f, true));
    rep.merge("G", check_functor(&a.g, true));
    if !rep.passed() {
        return rep;
    }
    rep.merge("unit", check_modification(&a.unit));
    rep.merge("counit", check_modification(&a.counit));
    if !rep.passed() {
        return rep;
    }
    // ε_{Fx} ∘₁ F(η_x) = e(Fx)
    for &x in l.objects() {
        let fx = a.f.map[x];
        let ok = (|| -> Result<bool> {
            let lhs = lp.compose(1, a.counit.components[fx.base], a.f.apply(a.unit.components[x])?)?;
            Ok(lhs == lp.e(fx)?)
        })()
        .unwrap_or(false);
        rep.check("triangle-left", ok, &[l.id(x)]);
    }
    // G(ε_y) ∘₁ η_{Gy} = e(Gy)
    for &y in lp.objects() {
        let gy = a.g.map[y];
        let ok = (|| -> Result<bool> {
            let lhs = l.compose(1, a.g.apply(a.counit.components[y])?, a.unit.components[gy.base])?;
            Ok(lhs == l.e(gy)?)
        })()
        .unwrap_or(false);
        rep.check("triangle-right", ok, &[lp.id(y)]);
    }
    rep
}

/// `θ_{a,b}: L(a, G b) → L'(F a, b)` and its inverse at one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomIso {
    pub a: CellIx,
    pub b: CellIx,
    pub theta: Functor,
    pub theta_star: Functor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct HomIsoSize {
    pub a: String,
    pub b: String,
    /// Cells of `L(a, G b)`, and of `L'(F a, b)`.
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomIsoPair {
    pub isos: Vec<HomIso>,
}

impl HomIsoPair {
    pub fn sizes(&self) -> Vec<HomIsoSize> {
        self.isos
            .iter()
            .map(|h| HomIsoSize {
                a: h.theta.source.name().to_string(),
                b: h.theta.target.name().to_string(),
                left: h.theta.source.len(),
                right: h.theta.target.len(),
            })
            .collect()
    }
}

/// `θ(f) = μ(ε_b, F f)` and `θ*(g) = μ(G g, η_a)`, with both inverse laws,
/// functoriality and naturality in `a` and `b` checked by enumeration.
pub fn hom_iso_from_unit_counit(a: &AdjunctionData) -> Result<(HomIsoPair, ValidationReport)> {
    let (l, lp) = (a.left().clone(), a.right().clone());
    let mut rep = ValidationReport::new();
    let mut isos = Vec::new();
    for &x in l.objects() {
        for &y in lp.objects() {
            let gy = a.g.map[y].base;
            let fx = a.f.map[x].base;
            let left = Arc::new(hom_category(&l, x, gy)?);
            let right = Arc::new(hom_category(&lp, fx, y)?);
            let eps = a.counit.components[y];
            let eta = a.unit.components[x];
            let (lc, rc) = (left.clone(), right.clone());
            let theta = Functor::from_fn("θ", left.clone(), right.clone(), |i| {
                let f = from_hom(&l, &lc, VCell::stored(i))?;
                to_hom(&lp, &rc, lp.horizontal(eps, a.f.apply(f)?)?)
            })?;
            let theta_star = Functor::from_fn("θ*", right.clone(), left.clone(), |i| {
                let g = from_hom(&lp, &rc, VCell::stored(i))?;
                to_hom(&l, &lc, l.horizontal(a.g.apply(g)?, eta)?)
            })?;
            let names = [l.id(x), lp.id(y)];
            rep.merge("θ", check_functor(&theta, true));
            rep.merge("θ*", check_functor(&theta_star, true));
            let back = (0..left.len()).all(|i| theta.map[i].ep == 0 && theta_star.map[theta.map[i].base] == VCell::stored(i));
            let forth = (0..right.len()).all(|i| theta_star.map[i].ep == 0 && theta.map[theta_star.map[i].base] == VCell::stored(i));
            rep.check("theta-inverse", back && forth, &names);
            isos.push(HomIso { a: x, b: y, theta, theta_star });
        }
    }
    // θ(G(k) ∘ f ∘ h) = k ∘ θ(f) ∘ F(h) for 1-cells h: x' → x, k: y → y'
    let at = |x: CellIx, y: CellIx| isos.iter().find(|h| h.a == x && h.b == y).expect("all pairs");
    for h in l.cells_at(1) {
        for k in lp.cells_at(1) {
            let (x1, x) = (l.dom(h).unwrap().base, l.cod(h).unwrap().base);
            let (y, y1) = (lp.dom(k).unwrap().base, lp.cod(k).unwrap().base);
            let (src, dst) = (at(x, y), at(x1, y1));
            for i in 0..src.theta.source.len() {
                let ok = (|| -> Result<bool> {
                    let f = from_hom(&l, &src.theta.source, VCell::stored(i))?;
                    let moved = l.horizontal(l.horizontal(a.g.apply(k)?, f)?, h)?;
                    let lhs = from_hom(&lp, &dst.theta.target, dst.theta.apply(to_hom(&l, &dst.theta.source, moved)?)?)?;
                    let tf = from_hom(&lp, &src.theta.target, src.theta.map[i])?;
                    let rhs = lp.horizontal(lp.horizontal(k, tf)?, a.f.apply(h)?)?;
                    Ok(lhs == rhs)
                })()
                .unwrap_or(false);
                rep.check("theta-naturality", ok, &[&l.show(h), &lp.show(k)]);
            }
        }
    }
    Ok((HomIsoPair { isos }, rep))
}

/// `F₂F₁ ⊣ G₁G₂` with `η = G₁ η₂ F₁ ∘₁ η₁` and `ε = ε₂ ∘₁ F₂ ε₁ G₂`.
pub fn compose_adjunctions(a1: &AdjunctionData, a2: &AdjunctionData) -> Result<AdjunctionData> {
    if a1.right() != a2.left() {
        return Err(Error::NotComposable(format!(
            "adjunctions meet at {} and {}",
            a1.right().name(),
            a2.left().name()
        )));
    }
    let (l, m, n) = (a1.left().clone(), a1.right().clone(), a2.right().clone());
    let f = compose_functors(&a2.f, &a1.f)?;
    let g = compose_functors(&a1.g, &a2.g)?;
    let unit = l
        .objects()
        .iter()
        .map(|&x| {
            let inner = a2.unit.components[a1.f.map[x].base];
            l.compose(1, a1.g.apply(inner)?, a1.unit.components[x])
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = n
        .objects()
        .iter()
        .map(|&z| {
            let inner = a1.counit.components[a2.g.map[z].base];
            n.compose(1, a2.counit.components[z], a2.f.apply(inner)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let _ = m;
    adjunction_from_components(f, g, unit, counit)
}

/// A strict two-sided inverse of a 1-cell, if any.
fn inverse(p: &Category, u: VCell) -> Option<VCell> {
    let (x, y) = (p.dom(u)?, p.cod(u)?);
    p.hom_v(y, x).into_iter().find(|&v| {
        matches!((p.compose(1, v, u), p.e(x)), (Ok(a), Ok(b)) if a == b)
            && matches!((p.compose(1, u, v), p.e(y)), (Ok(a), Ok(b)) if a == b)
    })
}

/// For an adjoint equivalence with invertible unit and counit, the
/// adjunction `G ⊣ F` with unit `ε⁻¹` and counit `η⁻¹`.
pub fn reverse_equivalence(a: &AdjunctionData) -> Result<AdjunctionData> {
    let (l, lp) = (a.left().clone(), a.right().clone());
    let inv = |p: &Category, u: VCell| {
        inverse(p, u).ok_or_else(|| Error::HypothesisNotMet(format!("{} is not invertible", p.show(u))))
    };
    let unit = lp.objects().iter().map(|&y| inv(&lp, a.counit.components[y])).collect::<Result<Vec<_>>>()?;
    let counit = l.objects().iter().map(|&x| inv(&l, a.unit.components[x])).collect::<Result<Vec<_>>>()?;
    adjunction_from_components(a.g.clone(), a.f.clone(), unit, counit)
}

/// Cells of degree at most `n`, with truncation `n`.
pub fn restrict(p: &Category, n: usize) -> Result<Category> {
    let (raw, ids, comps) = p.raw_parts();
    let deg: BTreeMap<String, usize> = raw.iter().map(|c| (c.id.clone(), c.degree)).collect();
    let raw = raw.into_iter().filter(|c| c.degree <= n).collect();
    let ids = ids.into_iter().filter(|(of, _)| deg[of] < n).collect();
    let comps = comps.into_iter().filter(|(_, l, _, _)| deg[l] <= n).collect();
    Category::from_parts(&format!("{}≤{n}", p.name()), n.min(p.truncation()), raw, ids, comps)
}

/// Compare a functor with its restriction to cells of degree `≤ 1`, by name.
fn restricts_to(full: &Functor, low: &Functor) -> bool {
    let (s, t) = (full.source.as_ref(), full.target.as_ref());
    (0..low.source.len()).all(|i| {
        let id = low.source.id(i);
        match s.lookup(id) {
            Some(j) => t.show(full.map[j]) == low.target.show(low.map[i]),
            None => false,
        }
    })
}

fn same_components(full: &Modification, low: &Modification) -> bool {
    let (t, lt) = (full.target().as_ref(), low.target().as_ref());
    full.components.len() == low.components.len()
        && full.components.iter().zip(&low.components).all(|(&x, &y)| t.show(x) == lt.show(y))
}

/// The extended adjunction passes the strict checks, given that it agrees
/// with a 1-truncated adjunction on cells of degree at most 1.
pub fn check_extension_adjunction(low: &AdjunctionData, full: &AdjunctionData) -> Result<bool> {
    let agree = restricts_to(&full.f, &low.f)
        && restricts_to(&full.g, &low.g)
        && same_components(&full.unit, &low.unit)
        && same_components(&full.counit, &low.counit)
        && low.left().truncation() <= 1
        && low.right().truncation() <= 1;
    if !agree {
        return Err(Error::RestrictionMismatch(format!(
            "{} ⊣ {} does not restrict to the given low adjunction",
            full.f.name, full.g.name
        )));
    }
    let mods = check_modification(&full.unit);
    let mods2 = check_modification(&full.counit);
    if !mods.has_violation("modification-boundary") && !mods2.has_violation("modification-boundary") {
        return Ok(check_strict_adjunction(full).passed());
    }
    Ok(false)
}

/// Carry an adjunction to categories with the same cells of degree `≤ 1`
/// and only identities above, by name.
pub fn extend_trivially(low: &AdjunctionData, l: Arc<Category>, lp: Arc<Category>) -> Result<AdjunctionData> {
    let lift = |fun: &Functor, s: &Arc<Category>, t: &Arc<Category>| -> Result<Functor> {
        Functor::from_fn(&fun.name, s.clone(), t.clone(), |i| {
            let mut v = VCell::stored(i);
            let mut k = 0;
            while let Some(u) = s.unit_of(v).filter(|_| s.deg(v) > 1) {
                v = u;
                k += 1;
            }
            let j = fun.source.lookup(s.id(v.base)).ok_or_else(|| Error::Undefined(format!("`{}` not in the low source", s.id(v.base))))?;
            let img = t.parse(&fun.target.show(fun.map[j]))?;
            t.e_pow(img, k + v.ep)
        })
    };
    let f = lift(&low.f, &l, &lp)?;
    let g = lift(&low.g, &lp, &l)?;
    let tr = |m: &Modification, p: &Arc<Category>| -> Result<Vec<VCell>> {
        m.components.iter().map(|&c| p.parse(&m.target().show(c))).collect()
    };
    adjunction_from_components(f, g, tr(&low.unit, &l)?, tr(&low.counit, &lp)?)
}

/// The presheaf `a ↦ L'(F a, b)` on `L`.
pub fn adjoint_presheaf(a: &AdjunctionData, b: CellIx) -> Result<Presheaf> {
    let (l, lp) = (a.left().clone(), a.right().clone());
    let values: Vec<Arc<Category>> =
        l.objects().iter().map(|&x| hom_category(&lp, a.f.map[x].base, b).map(Arc::new)).collect::<Result<_>>()?;
    let mut action0 = BTreeMap::new();
    let mut action_n = BTreeMap::new();
    for h in 0..l.len() {
        let deg = l.cell(h).degree;
        if deg == 0 {
            continue;
        }
        let hv = VCell::stored(h);
        let (x1, x) = (l.source_object(hv).base, l.target_object(hv).base);
        let (vx, vx1) = (values[x].clone(), values[x1].clone());
        let fh = a.f.apply(hv)?;
        let act = |i: CellIx| -> Result<VCell> {
            let y = from_hom(&lp, &vx, VCell::stored(i))?;
            to_hom(&lp, &vx1, lp.horizontal(y, fh)?)
        };
        if deg == 1 {
            action0.insert(h, Functor::from_fn(&format!("L'(F{},{})", l.id(h), lp.id(b)), vx.clone(), vx1.clone(), act)?);
        } else {
            action_n.insert(h, vx.objects().iter().map(|&i| act(i)).collect::<Result<Vec<_>>>()?);
        }
    }
    Ok(Presheaf { name: format!("{}(F-,{})", lp.name(), lp.id(b)), base: l, values, action0, action_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::Equiv;
    use crate::fixtures;
    use crate::functor::enumerate_functors;
    use crate::presheaf::check_universal_element;

    fn arc(p: Category) -> Arc<Category> {
        Arc::new(p)
    }

    #[test]
    fn identity_adjunctions_pass() {
        for p in fixtures::corpus() {
            let a = identity_adjunction(arc(p)).unwrap();
            let r = check_strict_adjunction(&a);
            assert!(r.passed(), "{:?}", r.violations);
            let (isos, rep) = hom_iso_from_unit_counit(&a).unwrap();
            assert!(rep.passed(), "{:?}", rep.violations);
            for h in &isos.isos {
                assert!(h.theta.map.iter().enumerate().all(|(i, &v)| v == VCell::stored(i)));
            }
        }
    }

    #[test]
    fn mutated_counit_breaks_triangle() {
        // ε_a := p stays natural since p is absorbed by f and g
        let q = arc(fixtures::walkeq2());
        let mut a = identity_adjunction(q.clone()).unwrap();
        let x = q.lookup("a").unwrap();
        a.counit.components[x] = q.parse("p").unwrap();
        let r = check_strict_adjunction(&a);
        assert_eq!(r.violated_laws(), vec!["triangle-left", "triangle-right"]);
    }

    #[test]
    fn composition_with_identity() {
        let p = arc(fixtures::walking2());
        let id = identity_adjunction(p.clone()).unwrap();
        let c = compose_adjunctions(&id, &id).unwrap();
        assert_eq!(c, id);
        assert!(compose_adjunctions(&id, &identity_adjunction(arc(fixtures::iso1())).unwrap()).is_err());
    }

    #[test]
    fn right_adjoints_of_identity_agree_up_to_equivalence() {
        let p = arc(fixtures::iso1());
        let id = Functor::identity(p.clone());
        let mut found = Vec::new();
        for g in enumerate_functors(&p, &p).unwrap() {
            let unit: Vec<VCell> = p.objects().iter().map(|&x| p.hom_v(VCell::stored(x), g.map[x])[0]).collect();
            let counit: Vec<VCell> = p.objects().iter().map(|&y| p.hom_v(g.map[y], VCell::stored(y))[0]).collect();
            let a = adjunction_from_components(id.clone(), g.clone(), unit, counit).unwrap();
            if check_strict_adjunction(&a).passed() && hom_iso_from_unit_counit(&a).unwrap().1.passed() {
                found.push(g);
            }
        }
        assert_eq!(found.len(), 4);
        let mut eq = Equiv::new(&p);
        for g in &found {
            for h in &found {
                assert!(p.objects().iter().all(|&b| eq.equiv(g.map[b], h.map[b])));
            }
        }
    }

    #[test]
    fn adjoint_presheaf_represented_by_counit() {
        let p = arc(fixtures::walking2());
        let a = identity_adjunction(p.clone()).unwrap();
        for &b in p.objects() {
            let fp = adjoint_presheaf(&a, b).unwrap();
            let gb = a.g.map[b].base;
            let eps = to_hom(&p, &fp.values[gb], a.counit.components[b]).unwrap();
            assert!(check_universal_element(&fp, gb, eps).unwrap().is_some());
        }
    }

    #[test]
    fn extension_counterexample() {
        let full = arc(fixtures::walking2_parallel());
        let low = arc(restrict(&full, 1).unwrap());
        let low_adj = identity_adjunction(low.clone()).unwrap();
        let ok = identity_adjunction(full.clone()).unwrap();
        assert!(check_extension_adjunction(&low_adj, &ok).unwrap());

        fn collapse(s: &str) -> &str {
            if s == "τ" { "σ" } else { s }
        }
        let pairs: Vec<(String, String)> = full.cells().iter().map(|c| (c.id.clone(), collapse(&c.id).to_string())).collect();
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let f = Functor::from_names("C", full.clone(), full.clone(), &refs).unwrap();
        assert!(check_functor(&f, true).passed());
        let units: Vec<VCell> = full.objects().iter().map(|&x| full.e(VCell::stored(x)).unwrap()).collect();
        let bad = adjunction_from_components(f.clone(), f, units.clone(), units).unwrap();
        assert!(!check_extension_adjunction(&low_adj, &bad).unwrap());
        let rep = check_strict_adjunction(&bad);
        assert!(rep.has_violation("unit/naturality"), "{:?}", rep.violated_laws());

        let other = identity_adjunction(arc(fixtures::point(2))).unwrap();
        assert!(matches!(check_extension_adjunction(&low_adj, &other), Err(Error::RestrictionMismatch(_))));
    }
}
