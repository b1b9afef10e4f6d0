//! Concrete dual adjunctions between categories with representable
//! forgetful functors `U = L(A₀, −)` and `V = L'(B₀, −)`.
//!
//! The synthesized data are a contravariant pair `G: L^op → L'` and
//! `F: L'^op → L`, packaged as the strict adjunction
//! `F^op: L' → L^op ⊣ G: L^op → L'`. Every cell of `G` is the unique cell
//! whose action on the points of `V(GA)` matches the conjugate of
//! precomposition `L(f, Ã)` through the lifting isomorphisms, and
//! symmetrically for `F`. Units and counits are the lifted evaluation
//! families.

use crate::adjunction::{adjunction_from_components, check_strict_adjunction, hom_iso_from_unit_counit, AdjunctionData, HomIsoPair};
use crate::category::{Category, CellIx, VCell};
use crate::construct::{hom_category, opposite};
use crate::equivalence::decide_equiv;
use crate::error::{Error, Result};
use crate::functor::{check_functor, enumerate_functors, Functor, Modification};
use crate::presheaf::{from_hom, to_hom};
use crate::report::ValidationReport;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One row of a lifting table: `object ↦ image`, with `iso` a strict
/// isomorphism from the forgetful value of `image` onto the hom into the
/// dualizing object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftEntry {
    pub object: CellIx,
    pub image: CellIx,
    pub iso: Functor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityInput {
    pub l: Arc<Category>,
    pub lp: Arc<Category>,
    pub a0: CellIx,
    pub b0: CellIx,
    pub atilde: CellIx,
    pub btilde: CellIx,
    /// `A ↦ GA`, iso `L'(B₀, GA) → L(A, Ã)`.
    pub lift_lp: Vec<LiftEntry>,
    /// `B ↦ FB`, iso `L(A₀, FB) → L'(B, B̃)`.
    pub lift_l: Vec<LiftEntry>,
    /// `L(A₀, Ã) → L'(B₀, B̃)`.
    pub comparison: Functor,
}

/// One direction of the construction: lifts happen in `cat`, whose
/// forgetful functor is represented by `anchor` and whose dualizing object
/// is `tilde`; the table is indexed by objects of `other`.
struct Side<'a> {
    cat: &'a Arc<Category>,
    anchor: CellIx,
    other: &'a Arc<Category>,
    tilde: CellIx,
    table: BTreeMap<CellIx, (CellIx, &'a Functor, Vec<VCell>)>,
}

fn inverse_map(f: &Functor) -> Option<Vec<VCell>> {
    let mut inv = vec![None; f.target.len()];
    for (i, &v) in f.map.iter().enumerate() {
        if v.ep != 0 || inv[v.base].replace(VCell::stored(i)).is_some() {
            return None;
        }
    }
    inv.into_iter().collect()
}

impl<'a> Side<'a> {
    fn new(cat: &'a Arc<Category>, anchor: CellIx, other: &'a Arc<Category>, tilde: CellIx, rows: &'a [LiftEntry]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for r in rows {
            let inv = inverse_map(&r.iso)
                .ok_or_else(|| Error::HypothesisNotMet(format!("lifting iso at {} is not bijective", other.id(r.object))))?;
            if table.insert(r.object, (r.image, &r.iso, inv)).is_some() {
                return Err(Error::Malformed(format!("two lifting rows for {}", other.id(r.object))));
            }
        }
        Ok(Side { cat, anchor, other, tilde, table })
    }

    fn row(&self, x: CellIx) -> Result<&(CellIx, &'a Functor, Vec<VCell>)> {
        self.table
            .get(&x)
            .ok_or_else(|| Error::LiftNotFound(format!("no lifting row for {}", self.other.id(x))))
    }

    /// Points of the forgetful value of `y`.
    fn points(&self, y: CellIx) -> Vec<VCell> {
        self.cat.hom_v(VCell::stored(self.anchor), VCell::stored(y))
    }

    /// Through the iso at `x`: a cell of `cat` from the anchor to the image
    /// of `x`, sent to a cell of `other` from `x` to `tilde`.
    fn forward(&self, x: CellIx, v: VCell) -> Result<VCell> {
        let (_, iso, _) = self.row(x)?;
        from_hom(self.other, &iso.target, iso.apply(to_hom(self.cat, &iso.source, v)?)?)
    }

    fn backward(&self, x: CellIx, v: VCell) -> Result<VCell> {
        let (_, iso, inv) = self.row(x)?;
        let h = to_hom(self.other, &iso.target, v)?;
        if h.ep != 0 {
            return Err(Error::LiftNotFound(format!("{} is above the iso's cells", self.other.show(v))));
        }
        from_hom(self.cat, &iso.source, inv[h.base])
    }

    /// The unique cell `c: src → tgt` of the given degree with
    /// `μ(c, x) = expect(x)` at every point `x` of `src`.
    fn lift(&self, src: CellIx, tgt: CellIx, degree: usize, what: &str, expect: impl Fn(VCell) -> Result<VCell>) -> Result<VCell> {
        let p = self.cat.as_ref();
        let points = self.points(src);
        let wanted = points.iter().map(|&x| expect(x)).collect::<Result<Vec<_>>>();
        let Ok(wanted) = wanted else {
            return Err(Error::LiftNotFound(format!("{what}: the conjugated map is undefined")));
        };
        let mut found = Vec::new();
        for c in p.cells_at(degree) {
            if p.source_object(c).base != src || p.target_object(c).base != tgt {
                continue;
            }
            if points.iter().zip(&wanted).all(|(&x, &w)| p.horizontal(c, x).ok() == Some(w)) {
                found.push(c);
            }
        }
        match found.len() {
            1 => Ok(found[0]),
            0 => Err(Error::LiftNotFound(format!("{what} has no lift in {}", p.name()))),
            _ => Err(Error::AmbiguousLift(format!(
                "{what} lifts to {} and {}",
                p.show(found[0]),
                p.show(found[1])
            ))),
        }
    }

    /// The lift of `L(f, tilde)` for a cell `f: x' → x` of `other`.
    fn lift_precomposition(&self, f: VCell) -> Result<VCell> {
        let o = self.other.as_ref();
        let (x1, x) = (o.source_object(f).base, o.target_object(f).base);
        let (gx, gx1) = (self.row(x)?.0, self.row(x1)?.0);
        self.lift(gx, gx1, o.deg(f), &format!("precomposition with {}", o.show(f)), |pt| {
            let y = self.forward(x, pt)?;
            self.backward(x1, o.horizontal(y, f)?)
        })
    }

    /// The contravariant functor `other^op → cat`.
    fn functor(&self, name: &str, source: Arc<Category>) -> Result<Functor> {
        let o = self.other.as_ref();
        Functor::from_fn(name, source.clone(), self.cat.clone(), |i| {
            let f = o.parse(source.id(i))?;
            if o.deg(f) == 0 {
                Ok(VCell::stored(self.row(f.base)?.0))
            } else {
                self.lift_precomposition(f)
            }
        })
    }
}

/// Named record of one lifted cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LiftRecord {
    pub at: String,
    pub point: String,
    pub lift: String,
}

/// The synthesized duality and its certificate.
#[derive(Debug, Clone)]
pub struct DualityWitness {
    pub adjunction: AdjunctionData,
    pub hom_isos: HomIsoPair,
    /// Lifts of the evaluations `ev_{B,b}` (into `L(FB, Ã)`) used by the unit.
    pub unit_evaluations: Vec<LiftRecord>,
    /// Lifts of the evaluations `ev_{A,a}` (into `L'(GA, B̃)`) used by the counit.
    pub counit_evaluations: Vec<LiftRecord>,
    pub report: ValidationReport,
}

/// Evaluation at a point: precomposition with `x: A₀ → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvaluationCell {
    Functor(Functor),
    Modification(Modification),
}

/// `ev_{A,x} = L(x, Ã): L(A, Ã) → L(A₀, Ã)`: a functor for 1-cells `x`, a
/// natural transformation between the evaluations at `d x` and `c x` for
/// 2-cells.
pub fn evaluation_cell(p: &Category, atilde: CellIx, x: VCell) -> Result<EvaluationCell> {
    let functor_at = |x: VCell| -> Result<Functor> {
        let (a0, a) = (p.source_object(x).base, p.target_object(x).base);
        let src = Arc::new(hom_category(p, a, atilde)?);
        let tgt = Arc::new(hom_category(p, a0, atilde)?);
        let s = src.clone();
        let t = tgt.clone();
        Functor::from_fn(&format!("ev_{}", p.show(x)), src, tgt, move |i| {
            let y = from_hom(p, &s, VCell::stored(i))?;
            to_hom(p, &t, p.horizontal(y, x)?)
        })
    };
    match p.deg(x) {
        0 => Err(Error::DegreeMismatch(format!("{} is an object, not a point", p.show(x)))),
        1 => Ok(EvaluationCell::Functor(functor_at(x)?)),
        2 => {
            let (from, to) = (functor_at(p.dom(x).unwrap())?, functor_at(p.cod(x).unwrap())?);
            let comps = from
                .source
                .objects()
                .iter()
                .map(|&i| {
                    let y = from_hom(p, &from.source, VCell::stored(i))?;
                    to_hom(p, &from.target, p.horizontal(y, x)?)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EvaluationCell::Modification(Modification::natural(from, to, comps)))
        }
        k => Err(Error::UnsupportedDepth(k - 1)),
    }
}

fn check_iso(rep: &mut ValidationReport, law: &str, iso: &Functor, src: &Category, tgt: &Category, at: &str) -> bool {
    let typed = *iso.source == *src && *iso.target == *tgt;
    let ok = typed && check_functor(iso, true).passed() && inverse_map(iso).is_some();
    rep.check(law, ok, &[at])
}

/// Tables, isomorphisms, the evaluation lifts (i) and the initial lifting
/// condition (ii), both directions.
pub fn check_initial_lifting(d: &DualityInput) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let (l, lp) = (&d.l, &d.lp);
    let cmp_ok = (|| -> Result<bool> {
        let src = hom_category(l, d.a0, d.atilde)?;
        let tgt = hom_category(lp, d.b0, d.btilde)?;
        Ok(check_iso(&mut rep, "comparison-iso", &d.comparison, &src, &tgt, "comparison"))
    })();
    if !matches!(cmp_ok, Ok(true)) {
        if cmp_ok.is_err() {
            rep.violate("comparison-iso", &["comparison"], "hom-categories undefined");
        }
        return rep;
    }
    let tables = [(&d.lift_lp, lp, d.b0, l, d.atilde), (&d.lift_l, l, d.a0, lp, d.btilde)];
    for (rows, cat, anchor, other, tilde) in tables {
        for &x in other.objects() {
            let n = rows.iter().filter(|r| r.object == x).count();
            rep.check("lift-table", n == 1, &[other.id(x)]);
        }
        for r in rows.iter() {
            let ok = (|| -> Result<bool> {
                let src = hom_category(cat, anchor, r.image)?;
                let tgt = hom_category(other, r.object, tilde)?;
                Ok(check_iso(&mut rep, "lift-iso", &r.iso, &src, &tgt, other.id(r.object)))
            })();
            if ok.is_err() {
                rep.violate("lift-iso", &[other.id(r.object)], "hom-categories undefined");
            }
        }
    }
    if !rep.passed() {
        return rep;
    }
    let cmp_inv = inverse_map(&d.comparison).expect("checked bijective");
    let (Ok(g_side), Ok(f_side)) = (
        Side::new(lp, d.b0, l, d.btilde, &d.lift_lp),
        Side::new(l, d.a0, lp, d.atilde, &d.lift_l),
    ) else {
        rep.violate("lift-iso", &[], "tables not bijective");
        return rep;
    };
    let to_cmp = |v: VCell| -> Result<VCell> {
        from_hom(lp, &d.comparison.target, d.comparison.apply(to_hom(l, &d.comparison.source, v)?)?)
    };
    let from_cmp = |v: VCell| -> Result<VCell> {
        let h = to_hom(lp, &d.comparison.target, v)?;
        from_hom(l, &d.comparison.source, cmp_inv[h.base])
    };
    // (i) evaluations lift, and the evaluation maps used in (ii)
    for (side, flip, conv) in [
        (&g_side, &f_side, &to_cmp as &dyn Fn(VCell) -> Result<VCell>),
        (&f_side, &g_side, &from_cmp as &dyn Fn(VCell) -> Result<VCell>),
    ] {
        let (cat, other) = (side.cat.as_ref(), side.other.as_ref());
        for &x in other.objects() {
            let Ok(&(gx, _, _)) = side.row(x) else { continue };
            for a in flip.points(x) {
                let lifted = side.lift(gx, side.tilde, 1, &format!("ev at {}", other.show(a)), |pt| {
                    conv(other.horizontal(side.forward(x, pt)?, a)?)
                });
                rep.check("evaluation-lift", lifted.is_ok(), &[other.id(x), &other.show(a)]);
            }
            // (ii) over every base map into V(GX)
            let Ok(vgx) = hom_category(cat, side.anchor, gx).map(Arc::new) else { continue };
            for &y in cat.objects() {
                let Ok(vy) = hom_category(cat, side.anchor, y).map(Arc::new) else { continue };
                let Ok(maps) = enumerate_functors(&vy, &vgx) else {
                    rep.violate("initial-lifting", &[cat.id(y), other.id(x)], "search limit");
                    continue;
                };
                for phi in maps {
                    let base = |pt: VCell| -> Result<VCell> {
                        from_hom(cat, &vgx, phi.apply(to_hom(cat, &vy, pt)?)?)
                    };
                    let whole = side.lift(y, gx, 1, "base map", base).is_ok();
                    let parts = flip.points(x).into_iter().all(|a| {
                        side.lift(y, side.tilde, 1, "composite", |pt| conv(other.horizontal(side.forward(x, base(pt)?)?, a)?))
                            .is_ok()
                    });
                    rep.check("initial-lifting", whole == parts, &[cat.id(y), other.id(x)]);
                }
            }
        }
    }
    rep
}

/// Build `F`, `G`, the lifted evaluation units and counits, and verify
/// every law of the resulting strict adjunction.
pub fn synthesize_dual_adjunction(d: &DualityInput) -> Result<DualityWitness> {
    let (l, lp) = (&d.l, &d.lp);
    let pre = check_initial_lifting(d);
    if !pre.passed() {
        return Err(Error::HypothesisNotMet(format!("initial lifting fails: {:?}", pre.violated_laws())));
    }
    let g_side = Side::new(lp, d.b0, l, d.btilde, &d.lift_lp)?;
    let f_side = Side::new(l, d.a0, lp, d.atilde, &d.lift_l)?;
    let cmp_inv = inverse_map(&d.comparison).expect("checked by initial lifting");
    let lop = Arc::new(opposite(l));
    let lpop = Arc::new(opposite(lp));
    let g = g_side.functor("G", lop.clone())?;
    let f_contra = f_side.functor("F", lpop)?;
    // F^op: L' → L^op, the same cells
    let f = Functor::from_fn("F", lp.clone(), lop.clone(), |i| lop.parse(&l.show(f_contra.map[i])))?;

    let mut unit_evaluations = Vec::new();
    let mut unit = Vec::new();
    for &b in lp.objects() {
        let fb = f_side.row(b)?.0;
        let gfb = g_side.row(fb)?.0;
        let mut point_images = BTreeMap::new();
        for pt in g_side.points(b) {
            // ev_{B,b} lifted to L(FB, Ã), then read as a point of G F B
            let h = f_side.lift(fb, d.atilde, 1, &format!("ev_{{{},{}}}", lp.id(b), lp.show(pt)), |y| {
                let z = lp.horizontal(f_side.forward(b, y)?, pt)?;
                let hz = to_hom(lp, &d.comparison.target, z)?;
                from_hom(l, &d.comparison.source, cmp_inv[hz.base])
            })?;
            unit_evaluations.push(LiftRecord { at: lp.id(b).into(), point: lp.show(pt), lift: l.show(h) });
            point_images.insert(pt, g_side.backward(fb, h)?);
        }
        unit.push(g_side.lift(b, gfb, 1, &format!("η_{}", lp.id(b)), |pt| Ok(point_images[&pt]))?);
    }
    let mut counit_evaluations = Vec::new();
    let mut counit = Vec::new();
    for &a in l.objects() {
        let ga = g_side.row(a)?.0;
        let fga = f_side.row(ga)?.0;
        let mut point_images = BTreeMap::new();
        for pt in f_side.points(a) {
            let k = g_side.lift(ga, d.btilde, 1, &format!("ev_{{{},{}}}", l.id(a), l.show(pt)), |x| {
                let z = l.horizontal(g_side.forward(a, x)?, pt)?;
                from_hom(lp, &d.comparison.target, d.comparison.apply(to_hom(l, &d.comparison.source, z)?)?)
            })?;
            counit_evaluations.push(LiftRecord { at: l.id(a).into(), point: l.show(pt), lift: lp.show(k) });
            point_images.insert(pt, f_side.backward(ga, k)?);
        }
        let eps = f_side.lift(a, fga, 1, &format!("ε_{}", l.id(a)), |pt| Ok(point_images[&pt]))?;
        counit.push(lop.parse(&l.show(eps))?);
    }
    let adjunction = adjunction_from_components(f, g, unit, counit)?;
    let mut report = pre;
    report.merge("", check_strict_adjunction(&adjunction));
    let (hom_isos, iso_rep) = hom_iso_from_unit_counit(&adjunction)?;
    report.merge("θ", iso_rep);
    report.merge("concrete", check_concrete_duality(d, &adjunction.f, &adjunction.g));
    Ok(DualityWitness { adjunction, hom_isos, unit_evaluations, counit_evaluations, report })
}

/// The comparison iso, the factorizations `V ∘ G ≅ L(−, Ã)` and
/// `U ∘ F ≅ L'(−, B̃)` through the tables, and the anchor conditions
/// `F(B₀) ~ Ã`, `G(A₀) ~ B̃`. `f` is `F^op: L' → L^op`, `g` is
/// `G: L^op → L'`.
pub fn check_concrete_duality(d: &DualityInput, f: &Functor, g: &Functor) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let (l, lp) = (&d.l, &d.lp);
    let cmp = (|| -> Result<bool> {
        let src = hom_category(l, d.a0, d.atilde)?;
        let tgt = hom_category(lp, d.b0, d.btilde)?;
        Ok(check_iso(&mut rep, "comparison-iso", &d.comparison, &src, &tgt, "comparison"))
    })();
    if cmp.is_err() {
        rep.violate("comparison-iso", &["comparison"], "hom-categories undefined");
    }
    let typed = f.source.as_ref() == lp.as_ref()
        && g.target.as_ref() == lp.as_ref()
        && f.target.name() == g.source.name()
        && f.target.len() == l.len();
    if !rep.check("functor-types", typed, &[]) {
        return rep;
    }
    let lop = g.source.clone();
    for (side_rows, cat, anchor, other, tilde, fun, other_op, name) in [
        (&d.lift_lp, lp, d.b0, l, d.btilde, g, &lop, "factor-G"),
        (&d.lift_l, l, d.a0, lp, d.atilde, f, lp, "factor-F"),
    ] {
        let side = match Side::new(cat, anchor, other, tilde, side_rows) {
            Ok(s) => s,
            Err(e) => {
                rep.violate(name, &[], e.to_string());
                continue;
            }
        };
        // image of an `other` cell under the functor, read in `cat`
        let image = |v: VCell| -> Result<VCell> {
            if name == "factor-G" {
                fun.apply(other_op.parse(&other.show(v))?)
            } else {
                cat.parse(&fun.target.show(fun.apply(v)?))
            }
        };
        for &x in other.objects() {
            let ok = side.row(x).ok().map(|r| r.0) == image(VCell::stored(x)).ok().map(|v| v.base);
            rep.check(name, ok, &[other.id(x)]);
        }
        for h in other.cells_at(1) {
            let (x1, x) = (other.dom(h).unwrap().base, other.cod(h).unwrap().base);
            let Ok(gx) = side.row(x).map(|r| r.0) else { continue };
            for pt in side.points(gx) {
                let ok = (|| -> Result<bool> {
                    let lhs = side.forward(x1, cat.horizontal(image(h)?, pt)?)?;
                    let rhs = other.horizontal(side.forward(x, pt)?, h)?;
                    Ok(lhs == rhs)
                })()
                .unwrap_or(false);
                rep.check(name, ok, &[&other.show(h), &cat.show(pt)]);
            }
        }
    }
    let fb0 = f.map.get(d.b0).and_then(|v| l.parse(&f.target.show(*v)).ok());
    let ga0 = lop.lookup(l.id(d.a0)).and_then(|i| g.map.get(i).copied());
    let anchor_f = fb0.map(|v| matches!(decide_equiv(l, v, VCell::stored(d.atilde)), Ok(Some(_)))).unwrap_or(false);
    let anchor_g = ga0.map(|v| matches!(decide_equiv(lp, v, VCell::stored(d.btilde)), Ok(Some(_)))).unwrap_or(false);
    rep.check("anchor-F", anchor_f, &[lp.id(d.b0)]);
    rep.check("anchor-G", anchor_g, &[l.id(d.a0)]);
    rep
}

/// `GF B = B` on objects and every unit component acts bijectively on
/// points.
pub fn double_dual_report(w: &DualityWitness) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let a = &w.adjunction;
    let lp = a.right().clone();
    for &b in lp.objects() {
        let gfb = a.g.map[a.f.map[b].base];
        rep.check("double-dual-object", gfb == VCell::stored(b), &[lp.id(b)]);
    }
    for (&b, &eta) in lp.objects().iter().zip(&a.unit.components) {
        let anchors: Vec<VCell> = lp.objects().iter().map(|&x| VCell::stored(x)).collect();
        let ok = anchors.iter().all(|&z| {
            let gfb = lp.target_object(eta);
            let pts = lp.hom_v(z, VCell::stored(b));
            let imgs: std::collections::BTreeSet<VCell> = pts.iter().filter_map(|&p| lp.horizontal(eta, p).ok()).collect();
            imgs.len() == pts.len() && imgs.len() == lp.hom_v(z, gfb).len()
        });
        rep.check("unit-bijective", ok, &[lp.id(b)]);
    }
    rep
}

/// Names for the synthesized functors and transformations.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessView {
    pub g: Vec<(String, String)>,
    pub f: Vec<(String, String)>,
    pub unit: Vec<(String, String)>,
    pub counit: Vec<(String, String)>,
    pub unit_evaluations: Vec<LiftRecord>,
    pub counit_evaluations: Vec<LiftRecord>,
    pub hom_sizes: Vec<crate::adjunction::HomIsoSize>,
}

impl DualityWitness {
    pub fn view(&self) -> WitnessView {
        let a = &self.adjunction;
        let comps = |m: &Modification| -> Vec<(String, String)> {
            let (s, t) = (m.source().clone(), m.target().clone());
            s.objects().iter().map(|&x| (s.id(x).to_string(), t.show(m.components[x]))).collect()
        };
        WitnessView {
            g: a.g.show(),
            f: a.f.show(),
            unit: comps(&a.unit),
            counit: comps(&a.counit),
            unit_evaluations: self.unit_evaluations.clone(),
            counit_evaluations: self.counit_evaluations.clone(),
            hom_sizes: self.hom_isos.sizes(),
        }
    }
}

/// Iso between hom-categories given by a rule on ambient cells.
pub fn iso_from_rule(
    cat: &Category,
    src: (CellIx, CellIx),
    other: &Category,
    tgt: (CellIx, CellIx),
    rule: impl Fn(VCell) -> Result<VCell>,
) -> Result<Functor> {
    let s = Arc::new(hom_category(cat, src.0, src.1)?);
    let t = Arc::new(hom_category(other, tgt.0, tgt.1)?);
    let (s2, t2) = (s.clone(), t.clone());
    Functor::from_fn("iso", s, t, move |i| to_hom(other, &t2, rule(from_hom(cat, &s2, VCell::stored(i))?)?))
}

/// The F2 self-duality of `VecF2_d{d}` at the given truncation: anchors and
/// dualizing objects `V1`, `GA = A`, `FB = B`, transpose isomorphisms.
pub fn vecf2_duality_input(d: usize, truncation: usize) -> Result<DualityInput> {
    let l = Arc::new(crate::fixtures::vecf2(d, truncation));
    let lp = l.clone();
    let v1 = l.lookup("V1").ok_or_else(|| Error::Malformed("no V1".into()))?;
    let transpose = |p: &Category| {
        let p = p.clone();
        move |v: VCell| -> Result<VCell> {
            let mut v = v;
            let mut k = 0;
            while p.deg(v) > 1 {
                v = p.unit_of(v).ok_or_else(|| Error::Undefined(format!("{} is not an identity", p.show(v))))?;
                k += 1;
            }
            let (dims, bits) = p.id(v.base).split_once('[').ok_or_else(|| Error::Malformed(p.show(v)))?;
            let (cols, rows) = dims.split_once("->").ok_or_else(|| Error::Malformed(p.show(v)))?;
            let (cols, rows): (usize, usize) = (cols[1..].parse().unwrap_or(0), rows[1..].parse().unwrap_or(0));
            let bits = bits.trim_end_matches(']').chars().enumerate().fold(0u32, |acc, (i, c)| acc | u32::from(c == '1') << i);
            let t = crate::fixtures::transpose(bits, rows, cols);
            let id = crate::fixtures::matrix_id(rows, cols, t);
            p.e_pow(p.parse(&id)?, k + v.ep)
        }
    };
    let rows = |cat: &Arc<Category>, anchor: CellIx, other: &Arc<Category>, tilde: CellIx| -> Result<Vec<LiftEntry>> {
        other
            .objects()
            .iter()
            .map(|&a| {
                let iso = iso_from_rule(cat, (anchor, a), other, (a, tilde), transpose(other))?;
                Ok(LiftEntry { object: a, image: a, iso })
            })
            .collect()
    };
    let lift_lp = rows(&lp, v1, &l, v1)?;
    let lift_l = rows(&l, v1, &lp, v1)?;
    let comparison = iso_from_rule(&l, (v1, v1), &lp, (v1, v1), Ok)?;
    Ok(DualityInput { l: l.clone(), lp, a0: v1, b0: v1, atilde: v1, btilde: v1, lift_lp, lift_l, comparison })
}

/// The one-object duality with everything the identity.
pub fn trivial_duality_input(p: Arc<Category>) -> Result<DualityInput> {
    let x = *p.objects().first().ok_or_else(|| Error::Malformed("empty category".into()))?;
    let iso = iso_from_rule(&p, (x, x), &p, (x, x), Ok)?;
    let row = LiftEntry { object: x, image: x, iso: iso.clone() };
    Ok(DualityInput {
        l: p.clone(),
        lp: p,
        a0: x,
        b0: x,
        atilde: x,
        btilde: x,
        lift_lp: vec![row.clone()],
        lift_l: vec![row],
        comparison: iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_duality() {
        let d = trivial_duality_input(Arc::new(fixtures::point(1))).unwrap();
        assert!(check_initial_lifting(&d).passed());
        let w = synthesize_dual_adjunction(&d).unwrap();
        assert!(w.report.passed(), "{:?}", w.report.violations);
    }

    #[test]
    fn vecf2_self_duality() {
        let d = vecf2_duality_input(2, 1).unwrap();
        let pre = check_initial_lifting(&d);
        assert!(pre.passed(), "{:?}", pre.violations.iter().take(3).collect::<Vec<_>>());
        let w = synthesize_dual_adjunction(&d).unwrap();
        assert!(w.report.passed(), "{:?}", w.report.violations.iter().take(3).collect::<Vec<_>>());
        assert!(double_dual_report(&w).passed());
        let l = &d.l;
        // G on arrows is transposition
        let f = l.parse(&fixtures::matrix_id(1, 2, 0b10)).unwrap();
        let gop = w.adjunction.g.source.clone();
        let gf = w.adjunction.g.apply(gop.parse(&l.show(f)).unwrap()).unwrap();
        assert_eq!(l.show(gf), fixtures::matrix_id(2, 1, 0b10));
        // |L'(V1, G V2)| = |L(V2, F V1)| = 4
        let sizes = w.hom_isos.sizes();
        let s = sizes.iter().find(|s| s.a == "VecF2_d2(V1,V2)").unwrap();
        assert_eq!(s.left, 4);
        assert_eq!(s.right, 4);
    }

    #[test]
    fn evaluation_composite_law() {
        for p in [fixtures::iso1(), fixtures::walking2(), fixtures::vecf2(2, 1)] {
            for &t in p.objects() {
                for x in p.cells_at(1) {
                    let a = p.target_object(x).base;
                    for f in p.cells_at(1) {
                        if p.source_object(f).base != a {
                            continue;
                        }
                        let (Ok(EvaluationCell::Functor(lhs)), Ok(EvaluationCell::Functor(ev))) =
                            (evaluation_cell(&p, t, p.compose(1, f, x).unwrap()), evaluation_cell(&p, t, x))
                        else {
                            continue;
                        };
                        let pre = evaluation_cell(&p, t, f);
                        let Ok(EvaluationCell::Functor(pre)) = pre else { panic!() };
                        assert_eq!(lhs, crate::functor::compose_functors(&ev, &pre).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_at_identity_is_identity() {
        let p = fixtures::vecf2(2, 1);
        let v1 = p.lookup("V1").unwrap();
        let Ok(EvaluationCell::Functor(ev)) = evaluation_cell(&p, v1, p.e(VCell::stored(v1)).unwrap()) else { panic!() };
        assert!(ev.map.iter().enumerate().all(|(i, &v)| v == VCell::stored(i)));
        assert!(evaluation_cell(&p, v1, VCell::stored(v1)).is_err());
    }

    #[test]
    fn missing_row_is_lift_not_found() {
        let p = Arc::new(fixtures::discrete(2));
        let mut d = trivial_duality_input(p.clone()).unwrap();
        d.lift_lp.clear();
        assert!(!check_initial_lifting(&d).passed());
        let g_side = Side::new(&d.lp, d.b0, &d.l, d.btilde, &d.lift_lp).unwrap();
        assert!(matches!(g_side.functor("G", Arc::new(opposite(&p))), Err(Error::LiftNotFound(_))));
    }

    #[test]
    fn scrambled_iso_fails() {
        let mut d = vecf2_duality_input(2, 1).unwrap();
        let row = d.lift_lp.iter_mut().find(|r| d.l.id(r.object) == "V2").unwrap();
        row.iso.map.swap(0, 1);
        let rep = check_initial_lifting(&d);
        assert!(!rep.passed());
        assert!(synthesize_dual_adjunction(&d).is_err());
    }

    #[test]
    fn wrong_dualizing_object() {
        let d = vecf2_duality_input(2, 1).unwrap();
        let w = synthesize_dual_adjunction(&d).unwrap();
        let mut bad = d.clone();
        bad.atilde = d.l.lookup("V2").unwrap();
        let rep = check_concrete_duality(&bad, &w.adjunction.f, &w.adjunction.g);
        assert!(rep.has_violation("comparison-iso"));
        assert!(rep.has_violation("anchor-F"));
    }
}
