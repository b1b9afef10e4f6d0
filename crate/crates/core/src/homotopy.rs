//! Formal homotopy groups `π̃ᴵₙ(a, x)` of an object at a point `x: I → a`.
//!
//! For `n = 0` this is the pointed set of 1-cells `I → a`; for `n ≥ 1` the
//! automorphisms of `eⁿ⁻¹x` that are equivalences, under `∘₁`. Quotienting
//! by `~` gives a strict group; the raw table is kept for inspection.

use crate::category::{Category, CellIx, VCell};
use crate::equivalence::{classify_arrow, Equiv};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::report::ValidationReport;
use serde::Serialize;

/// Elements of `π̃ᴵ₀(a, x)`, as `~`-classes when quotiented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSet {
    pub classes: Vec<Vec<VCell>>,
    pub point: usize,
}

/// Multiplication table of `π̃ᴵₙ(a, x)` for `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub classes: Vec<Vec<VCell>>,
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
    /// `None` when some element has no two-sided inverse (raw tables only).
    pub inverse: Option<Vec<usize>>,
    /// Whether associativity, unit and inverse laws hold on the table.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyGroup {
    Pointed(PointedSet),
    Group(GroupTable),
}

impl HomotopyGroup {
    pub fn classes(&self) -> &[Vec<VCell>] {
        match self {
            HomotopyGroup::Pointed(s) => &s.classes,
            HomotopyGroup::Group(g) => &g.classes,
        }
    }

    /// Index of the point, or of the unit.
    pub fn base(&self) -> usize {
        match self {
            HomotopyGroup::Pointed(s) => s.point,
            HomotopyGroup::Group(g) => g.unit,
        }
    }

    pub fn len(&self) -> usize {
        self.classes().len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes().is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn class_of(&self, v: VCell) -> Option<usize> {
        self.classes().iter().position(|c| c.contains(&v))
    }

    pub fn table(&self) -> Option<&GroupTable> {
        match self {
            HomotopyGroup::Group(g) => Some(g),
            HomotopyGroup::Pointed(_) => None,
        }
    }

    pub fn view(&self, p: &Category) -> GroupView {
        let elements = self.classes().iter().map(|c| c.iter().map(|&v| p.show(v)).collect()).collect();
        match self {
            HomotopyGroup::Pointed(s) => GroupView {
                kind: "pointed-set",
                elements,
                base: s.point,
                op: None,
                inverse: None,
                strict: true,
            },
            HomotopyGroup::Group(g) => GroupView {
                kind: "group",
                elements,
                base: g.unit,
                op: Some(g.op.clone()),
                inverse: g.inverse.clone(),
                strict: g.strict,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupView {
    pub kind: &'static str,
    pub elements: Vec<Vec<String>>,
    /// The point of a pointed set, the unit of a group.
    pub base: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<usize>>,
    pub strict: bool,
}

fn partition(eq: &mut Equiv<'_>, cells: Vec<VCell>, quotient: bool) -> Vec<Vec<VCell>> {
    let mut classes: Vec<Vec<VCell>> = Vec::new();
    for v in cells {
        match classes.iter_mut().find(|c| quotient && eq.equiv(c[0], v)) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

/// The automorphisms of `eⁿ⁻¹x` that are equivalences.
fn automorphisms(eq: &mut Equiv<'_>, x: VCell, n: usize) -> Result<Vec<VCell>> {
    let p = eq.category();
    let base = p.e_pow(x, n - 1)?;
    let mut out = Vec::new();
    for g in p.hom_v(base, base) {
        if classify_arrow(eq, g)?.equivalence {
            out.push(g);
        }
    }
    Ok(out)
}

fn check_point(p: &Category, i: CellIx, a: CellIx, x: VCell) -> Result<()> {
    if p.deg(x) != 1 || p.source_object(x).base != i || p.target_object(x).base != a {
        return Err(Error::DegreeMismatch(format!(
            "{} is not a 1-cell {} → {}",
            p.show(x),
            p.id(i),
            p.id(a)
        )));
    }
    Ok(())
}

/// `π̃ᴵₙ(a, x)`; `quotient` selects `~`-classes over raw cells.
pub fn formal_homotopy_group(p: &Category, i: CellIx, a: CellIx, x: VCell, n: usize, quotient: bool) -> Result<HomotopyGroup> {
    let mut eq = Equiv::new(p);
    formal_homotopy_group_with(&mut eq, i, a, x, n, quotient)
}

pub fn formal_homotopy_group_with(
    eq: &mut Equiv<'_>,
    i: CellIx,
    a: CellIx,
    x: VCell,
    n: usize,
    quotient: bool,
) -> Result<HomotopyGroup> {
    let p = eq.category();
    check_point(p, i, a, x)?;
    if n == 0 {
        let classes = partition(eq, p.hom_v(VCell::stored(i), VCell::stored(a)), quotient);
        let point = classes.iter().position(|c| c.contains(&x)).expect("x is a 1-cell I → a");
        return Ok(HomotopyGroup::Pointed(PointedSet { classes, point }));
    }
    if n + 1 > p.truncation() {
        let unit = p.e_pow(x, n)?;
        return Ok(HomotopyGroup::Group(GroupTable {
            classes: vec![vec![unit]],
            op: vec![vec![0]],
            unit: 0,
            inverse: Some(vec![0]),
            strict: true,
        }));
    }
    let autos = automorphisms(eq, x, n)?;
    let classes = partition(eq, autos, quotient);
    let find = |v: VCell| classes.iter().position(|c| c.contains(&v));
    let unit_cell = p.e_pow(x, n)?;
    let unit = find(unit_cell).ok_or_else(|| Error::GroupAxiom(format!("{} is not an automorphism", p.show(unit_cell))))?;
    let m = classes.len();
    let mut op = vec![vec![0; m]; m];
    for (s, cs) in classes.iter().enumerate() {
        for (t, ct) in classes.iter().enumerate() {
            let mut image = None;
            for &g in cs {
                for &h in ct {
                    let gh = p.compose(1, g, h)?;
                    let c = find(gh).ok_or_else(|| Error::GroupAxiom(format!("{} is not an automorphism", p.show(gh))))?;
                    if image.replace(c).is_some_and(|old| old != c) {
                        return Err(Error::GroupAxiom(format!(
                            "∘₁ is not well defined on the classes of {} and {}",
                            p.show(g),
                            p.show(h)
                        )));
                    }
                }
            }
            op[s][t] = image.expect("classes are non-empty");
        }
    }
    let table = finish_table(classes, op, unit);
    if quotient && !table.strict {
        return Err(Error::GroupAxiom(format!("group laws fail for π̃_{n} at {}", p.show(x))));
    }
    Ok(HomotopyGroup::Group(table))
}

fn finish_table(classes: Vec<Vec<VCell>>, op: Vec<Vec<usize>>, unit: usize) -> GroupTable {
    let m = classes.len();
    let assoc = (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| op[op[a][b]][c] == op[a][op[b][c]])));
    let unital = (0..m).all(|a| op[unit][a] == a && op[a][unit] == a);
    let inverse: Option<Vec<usize>> = (0..m).map(|a| (0..m).find(|&b| op[a][b] == unit && op[b][a] == unit)).collect();
    let strict = assoc && unital && inverse.is_some();
    GroupTable { classes, op, unit, inverse, strict }
}

/// Eckmann–Hilton on classes: every admissible `α ∘ₖ β` that stays in the
/// group lies in the class of `α ∘₁ β`, and then `∘₁` is commutative.
pub fn check_eckmann_hilton(p: &Category, i: CellIx, a: CellIx, x: VCell, n: usize) -> Result<ValidationReport> {
    let mut eq = Equiv::new(p);
    let g = formal_homotopy_group_with(&mut eq, i, a, x, n, true)?;
    let mut rep = ValidationReport::new();
    let HomotopyGroup::Group(t) = &g else {
        return Ok(rep);
    };
    let mut interchange = false;
    for (s, cs) in t.classes.iter().enumerate() {
        for (u, cu) in t.classes.iter().enumerate() {
            for &al in cs {
                for &be in cu {
                    for k in 2..=n + 1 {
                        let Ok(c) = p.compose(k, al, be) else { continue };
                        let Some(cls) = g.class_of(c) else { continue };
                        interchange = true;
                        let (sa, sb) = (p.show(al), p.show(be));
                        rep.check("eckmann-hilton", cls == t.op[s][u], &[&sa, &sb, &format!("k={k}")]);
                    }
                }
            }
        }
    }
    if interchange {
        for s in 0..t.classes.len() {
            for u in 0..t.classes.len() {
                let (a0, b0) = (p.show(t.classes[s][0]), p.show(t.classes[u][0]));
                rep.check("commutative", t.op[s][u] == t.op[u][s], &[&a0, &b0]);
            }
        }
    }
    Ok(rep)
}

/// A map of homotopy groups on classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub source: HomotopyGroup,
    pub target: HomotopyGroup,
    pub map: Vec<usize>,
}

impl InducedMap {
    pub fn is_trivial(&self) -> bool {
        self.map.iter().all(|&c| c == self.target.base())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn is_isomorphism(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.len() == self.target.len() && self.map.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
    }

    /// Class map followed by `other`.
    pub fn then(&self, other: &InducedMap) -> Vec<usize> {
        self.map.iter().map(|&c| other.map[c]).collect()
    }
}

/// Push every class through `f`, requiring a single image class, and
/// check the homomorphism (or pointed map) law.
fn induce(source: HomotopyGroup, target: HomotopyGroup, f: impl Fn(VCell) -> Result<VCell>) -> Result<InducedMap> {
    let mut map = Vec::with_capacity(source.len());
    for class in source.classes() {
        let mut image = None;
        for &g in class {
            let v = f(g)?;
            let c = target
                .class_of(v)
                .ok_or_else(|| Error::GroupAxiom(format!("image of a class member leaves the target group ({v:?})")))?;
            if image.replace(c).is_some_and(|old| old != c) {
                return Err(Error::GroupAxiom("induced map is not well defined on classes".into()));
            }
        }
        map.push(image.expect("classes are non-empty"));
    }
    if map[source.base()] != target.base() {
        return Err(Error::GroupAxiom("induced map does not preserve the base".into()));
    }
    if let (Some(s), Some(t)) = (source.table(), target.table()) {
        let m = s.classes.len();
        for a in 0..m {
            for b in 0..m {
                if map[s.op[a][b]] != t.op[map[a]][map[b]] {
                    return Err(Error::GroupAxiom("induced map is not a homomorphism".into()));
                }
            }
        }
    }
    Ok(InducedMap { source, target, map })
}

/// `f_*: π̃ᴵₙ(a, x) → π̃ᴵₙ(b, y)`, `[g] ↦ [μ(eⁿf, g)]`, defined when
/// `f ∘₁ x = y`.
pub fn induced_homomorphism(p: &Category, f: VCell, i: CellIx, x: VCell, y: VCell, n: usize) -> Result<InducedMap> {
    if p.deg(f) != 1 {
        return Err(Error::DegreeMismatch(format!("{} is not a 1-cell", p.show(f))));
    }
    let fx = p.compose(1, f, x)?;
    if fx != y {
        return Err(Error::BasepointMismatch(format!("{} ∘ {} = {}, not {}", p.show(f), p.show(x), p.show(fx), p.show(y))));
    }
    let (a, b) = (p.source_object(f).base, p.target_object(f).base);
    let mut eq = Equiv::new(p);
    let source = formal_homotopy_group_with(&mut eq, i, a, x, n, true)?;
    let target = formal_homotopy_group_with(&mut eq, i, b, y, n, true)?;
    induce(source, target, |g| p.horizontal(f, g))
}

/// `F_*: π̃ᴵₙ(a, x) → π̃^{FI}ₙ(Fa, Fx)`, `[g] ↦ [F g]`.
pub fn functor_induced(fun: &Functor, i: CellIx, a: CellIx, x: VCell, n: usize) -> Result<InducedMap> {
    let (p, q) = (fun.source.as_ref(), fun.target.as_ref());
    let source = formal_homotopy_group(p, i, a, x, n, true)?;
    let (fi, fa, fx) = (fun.apply(VCell::stored(i))?, fun.apply(VCell::stored(a))?, fun.apply(x)?);
    if fi.ep != 0 || fa.ep != 0 {
        return Err(Error::DegreeMismatch("functor sends an object to a non-object".into()));
    }
    let target = formal_homotopy_group(q, fi.base, fa.base, fx, n, true)?;
    induce(source, target, |g| fun.apply(g))
}

/// Whether `f_* = f'_*` on quotient groups for every `n ≤ N − 1`, given
/// `f ~ f'` and `f ∘₁ x = f' ∘₁ x`.
pub fn check_homotopy_invariance(p: &Category, f: VCell, f2: VCell, i: CellIx, x: VCell) -> Result<bool> {
    let mut eq = Equiv::new(p);
    if p.deg(f) != 1 || p.deg(f2) != 1 || !eq.equiv(f, f2) {
        return Err(Error::HypothesisNotMet(format!("{} ≁ {}", p.show(f), p.show(f2))));
    }
    let (y, y2) = (p.compose(1, f, x)?, p.compose(1, f2, x)?);
    if y != y2 {
        return Err(Error::HypothesisNotMet(format!(
            "{} ∘ {} and {} ∘ {} are not trivially equivalent",
            p.show(f),
            p.show(x),
            p.show(f2),
            p.show(x)
        )));
    }
    for n in 0..p.truncation() {
        let m1 = induced_homomorphism(p, f, i, x, y, n)?;
        let m2 = induced_homomorphism(p, f2, i, x, y, n)?;
        if m1.map != m2.map {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    fn at(p: &Category, id: &str) -> VCell {
        p.parse(id).unwrap()
    }

    #[test]
    fn bz2_fundamental_group_is_z2() {
        let p = fixtures::bz2();
        let s = p.lookup("*").unwrap();
        let g = formal_homotopy_group(&p, s, s, at(&p, "id"), 1, true).unwrap();
        let t = g.table().unwrap();
        assert_eq!(g.len(), 2);
        assert!(t.strict);
        let ti = g.class_of(at(&p, "t")).unwrap();
        assert_ne!(ti, t.unit);
        assert_eq!(t.op[ti][ti], t.unit);
        assert_eq!(t.inverse.as_ref().unwrap()[ti], ti);
    }

    #[test]
    fn truncation_gives_trivial_groups() {
        let p = fixtures::bz2();
        let s = p.lookup("*").unwrap();
        for n in 2..5 {
            assert!(formal_homotopy_group(&p, s, s, at(&p, "id"), n, true).unwrap().is_trivial());
        }
    }

    #[test]
    fn walking2_sigma_is_not_an_automorphism() {
        let p = fixtures::walking2();
        let (a, b) = (p.lookup("a").unwrap(), p.lookup("b").unwrap());
        let g = formal_homotopy_group(&p, a, b, at(&p, "f"), 1, true).unwrap();
        assert!(g.is_trivial());
        let pts = formal_homotopy_group(&p, a, b, at(&p, "f"), 0, false).unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn walkeq2_point_set_quotient() {
        let p = fixtures::walkeq2();
        let a = p.lookup("a").unwrap();
        let raw = formal_homotopy_group(&p, a, a, at(&p, "1a"), 0, false).unwrap();
        let q = formal_homotopy_group(&p, a, a, at(&p, "1a"), 0, true).unwrap();
        assert_eq!((raw.len(), q.len()), (2, 1));
        // every 2-cell of the chaotic hom is invertible
        let g = formal_homotopy_group(&p, a, a, at(&p, "1a"), 1, true).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn eckmann_hilton() {
        let p = fixtures::bz2();
        let s = p.lookup("*").unwrap();
        let rep = check_eckmann_hilton(&p, s, s, at(&p, "id"), 1).unwrap();
        assert!(rep.passed());
        assert!(rep.counts["eckmann-hilton"] >= 4);
        for q in fixtures::corpus() {
            for &a in q.objects() {
                let Ok(ea) = q.e(VCell::stored(a)) else { continue };
                assert!(check_eckmann_hilton(&q, a, a, ea, 1).unwrap().passed(), "{}", q.name());
            }
        }
    }

    #[test]
    fn broken_interchange_detected() {
        let p = fixtures::bz2_with("BZ2bad", "t");
        let s = p.lookup("*").unwrap();
        let rep = check_eckmann_hilton(&p, s, s, at(&p, "id"), 1).unwrap();
        assert!(rep.has_violation("eckmann-hilton"));
    }

    #[test]
    fn identity_and_collapse_homomorphisms() {
        let p = Arc::new(fixtures::bz2());
        let s = p.lookup("*").unwrap();
        let id = at(&p, "id");
        assert!(induced_homomorphism(&p, id, s, id, id, 1).unwrap().is_identity());
        let collapse =
            Functor::from_names("kill", p.clone(), p.clone(), &[("*", "*"), ("id", "id"), ("1", "1"), ("t", "1")]).unwrap();
        let m = functor_induced(&collapse, s, s, id, 1).unwrap();
        assert!(m.is_trivial());
        assert!(!m.is_isomorphism());
        let ident = functor_induced(&Functor::identity(p.clone()), s, s, id, 1).unwrap();
        assert!(ident.is_isomorphism());
    }

    #[test]
    fn basepoint_mismatch() {
        let p = fixtures::free_arrow();
        let a = p.lookup("a").unwrap();
        let r = induced_homomorphism(&p, at(&p, "f"), a, at(&p, "1a"), at(&p, "1a"), 0);
        assert!(matches!(r, Err(Error::BasepointMismatch(_))));
    }

    #[test]
    fn composite_functoriality() {
        let p = fixtures::walkeq2();
        let a = p.lookup("a").unwrap();
        let (f, g, x) = (at(&p, "f"), at(&p, "g"), at(&p, "1a"));
        let gf = p.compose(1, g, f).unwrap();
        for n in 0..2 {
            let fx = p.compose(1, f, x).unwrap();
            let m1 = induced_homomorphism(&p, f, a, x, fx, n).unwrap();
            let m2 = induced_homomorphism(&p, g, a, fx, p.compose(1, g, fx).unwrap(), n).unwrap();
            let m = induced_homomorphism(&p, gf, a, x, p.compose(1, gf, x).unwrap(), n).unwrap();
            assert_eq!(m1.then(&m2), m.map);
        }
    }

    #[test]
    fn homotopy_invariance() {
        let p = fixtures::bz2();
        let (s, id) = (p.lookup("*").unwrap(), at(&p, "id"));
        assert!(check_homotopy_invariance(&p, id, id, s, id).unwrap());
        let q = fixtures::walkeq2();
        let a = q.lookup("a").unwrap();
        let (one, pp) = (at(&q, "1a"), at(&q, "p"));
        assert!(check_homotopy_invariance(&q, one, pp, a, pp).unwrap());
        assert!(matches!(check_homotopy_invariance(&q, one, pp, a, one), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(check_homotopy_invariance(&q, one, at(&q, "f"), a, one), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn pointed_naturality_on_groupoid() {
        // F_* ∘ f_* = (F f)_* ∘ F_* on π̃₀ of Iso1 under its swap
        let p = Arc::new(fixtures::iso1());
        let swap: Vec<(String, String)> = p
            .cells()
            .iter()
            .map(|c| {
                let s: String = c.id.chars().map(|ch| match ch { 'a' => 'b', 'b' => 'a', 'f' => 'g', 'g' => 'f', o => o }).collect();
                (c.id.clone(), s)
            })
            .collect();
        let pairs: Vec<(&str, &str)> = swap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let fun = Functor::from_names("swap", p.clone(), p.clone(), &pairs).unwrap();
        let a = p.lookup("a").unwrap();
        let (f, x) = (at(&p, "f"), at(&p, "1a"));
        let lhs = induced_homomorphism(&p, f, a, x, f, 0).unwrap().then(&functor_induced(&fun, a, p.lookup("b").unwrap(), f, 0).unwrap());
        let ff = fun.apply(f).unwrap();
        let fa = fun.apply(VCell::stored(a)).unwrap().base;
        let right = functor_induced(&fun, a, a, x, 0).unwrap();
        let fx = fun.apply(x).unwrap();
        let rhs = right.then(&induced_homomorphism(&p, ff, fa, fx, p.compose(1, ff, fx).unwrap(), 0).unwrap());
        assert_eq!(lhs, rhs);
    }
}
