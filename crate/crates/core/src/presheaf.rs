//! Presheaves of finite categories, hom-presheaves, the Yoneda
//! correspondence and representability.
//!
//! A presheaf assigns a value category to each object, a functor to each
//! 1-cell `f: b → a` (acting `F a → F b`), and to each higher cell a map
//! from the objects of `F a` to cells of `F b`.

use crate::category::{Category, CellIx, VCell};
use crate::construct::{hom_category, opposite};
use crate::equivalence::Equiv;
use crate::error::{Error, Result};
use crate::functor::{check_equivalence_pair, check_functor, compose_functors, EquivalencePair, Functor};
use crate::report::ValidationReport;
use crate::search_limit;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub name: String,
    pub base: Arc<Category>,
    /// Indexed by base object.
    pub values: Vec<Arc<Category>>,
    /// For each stored 1-cell `f: b → a`, the functor `F a → F b`.
    pub action0: BTreeMap<CellIx, Functor>,
    /// For each stored cell of degree `≥ 2` from `b` to `a` (as objects),
    /// its value on each object of `F a`.
    pub action_n: BTreeMap<CellIx, Vec<VCell>>,
}

/// Cell of a hom-category named after a cell of the ambient category.
pub fn to_hom(p: &Category, hom: &Category, v: VCell) -> Result<VCell> {
    match hom.parse(&p.show(v)) {
        Ok(x) => Ok(x),
        Err(_) if v.ep > 0 => hom.e(to_hom(p, hom, VCell { base: v.base, ep: v.ep - 1 })?),
        Err(e) => Err(e),
    }
}

pub fn from_hom(p: &Category, hom: &Category, v: VCell) -> Result<VCell> {
    match p.parse(&hom.show(v)) {
        Ok(x) => Ok(x),
        Err(_) if v.ep > 0 => p.e(from_hom(p, hom, VCell { base: v.base, ep: v.ep - 1 })?),
        Err(e) => Err(e),
    }
}

impl Presheaf {
    /// `F(f)(x)` for a base cell `f: b → a` and `x` in `F a`; cells of
    /// degree `≥ 2` (and identities of 1-cells) act on objects only.
    pub fn act(&self, f: VCell, x: VCell) -> Result<VCell> {
        let base = self.base.as_ref();
        let (b, a) = (base.source_object(f).base, base.target_object(f).base);
        let (va, vb) = (&self.values[a], &self.values[b]);
        if x.base >= va.len() {
            return Err(Error::Undefined(format!("cell {} is not in {}", x.base, va.name())));
        }
        let on_object = |x: VCell| -> Result<()> {
            if va.deg(x) != 0 {
                return Err(Error::DegreeMismatch(format!(
                    "{} acts on objects of {}, got {}",
                    base.show(f),
                    va.name(),
                    va.show(x)
                )));
            }
            Ok(())
        };
        match base.cell(f.base).degree {
            0 => match f.ep {
                0 => Err(Error::DegreeMismatch(format!("{} is an object", base.show(f)))),
                1 => Ok(x),
                j => {
                    on_object(x)?;
                    vb.e_pow(x, j - 1)
                }
            },
            1 => {
                if f.ep > 0 {
                    on_object(x)?;
                }
                let fun = self
                    .action0
                    .get(&f.base)
                    .ok_or_else(|| Error::Undefined(format!("no action for {}", base.show(f))))?;
                vb.e_pow(fun.apply(x)?, f.ep)
            }
            _ => {
                on_object(x)?;
                let m = self
                    .action_n
                    .get(&f.base)
                    .ok_or_else(|| Error::Undefined(format!("no action for {}", base.show(f))))?;
                vb.e_pow(m[x.base], f.ep)
            }
        }
    }
}

/// `b ↦ L(b, a)`, acting by precomposition.
pub fn hom_presheaf(p: &Arc<Category>, a: CellIx) -> Result<Presheaf> {
    let values: Vec<Arc<Category>> = p
        .objects()
        .iter()
        .map(|&b| hom_category(p, b, a).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut action0 = BTreeMap::new();
    let mut action_n = BTreeMap::new();
    for g in 0..p.len() {
        let deg = p.cell(g).degree;
        if deg == 0 {
            continue;
        }
        let gv = VCell::stored(g);
        let (b, c) = (p.source_object(gv).base, p.target_object(gv).base);
        let (vc, vb) = (values[c].clone(), values[b].clone());
        if deg == 1 {
            let fun = Functor::from_fn(&format!("L({},{})", p.id(g), p.id(a)), vc.clone(), vb.clone(), |x| {
                let px = from_hom(p, &vc, VCell::stored(x))?;
                to_hom(p, &vb, p.horizontal(px, gv)?)
            })?;
            action0.insert(g, fun);
        } else {
            let comps = vc
                .objects()
                .iter()
                .map(|&x| {
                    let px = from_hom(p, &vc, VCell::stored(x))?;
                    to_hom(p, &vb, p.horizontal(px, gv)?)
                })
                .collect::<Result<Vec<_>>>()?;
            action_n.insert(g, comps);
        }
    }
    Ok(Presheaf { name: format!("{}(-,{})", p.name(), p.id(a)), base: p.clone(), values, action0, action_n })
}

/// `L(a, −)`, as a presheaf on the opposite.
pub fn covariant_hom_functor(p: &Category, a: CellIx) -> Result<Presheaf> {
    hom_presheaf(&Arc::new(opposite(p)), a)
}

/// Every value `C`, every 1-cell acting as the identity, higher cells as
/// iterated identities.
pub fn constant_presheaf(base: &Arc<Category>, value: &Arc<Category>) -> Presheaf {
    let mut action0 = BTreeMap::new();
    let mut action_n = BTreeMap::new();
    for g in 0..base.len() {
        match base.cell(g).degree {
            0 => {}
            1 => {
                action0.insert(g, Functor::identity(value.clone()));
            }
            d => {
                let comps = value.objects().iter().map(|&x| value.e_pow(VCell::stored(x), d - 1).unwrap()).collect();
                action_n.insert(g, comps);
            }
        }
    }
    Presheaf {
        name: format!("Δ{}", value.name()),
        base: base.clone(),
        values: vec![value.clone(); base.objects().len()],
        action0,
        action_n,
    }
}

/// Componentwise `~` of two functors with the same source and target.
fn approx1(f: &Functor, g: &Functor) -> bool {
    let t = f.target.as_ref();
    let mut eq = Equiv::new(t);
    f.source == g.source
        && f.target == g.target
        && f.map.iter().zip(&g.map).all(|(&x, &y)| x == y || (t.deg(x) == t.deg(y) && eq.equiv(x, y)))
}

/// Shapes, functoriality up to `≈₁`, and higher-action boundaries.
pub fn validate_presheaf(fp: &Presheaf) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let base = fp.base.as_ref();
    if !rep.check("presheaf-values", fp.values.len() == base.objects().len(), &[]) {
        return rep;
    }
    for g in 0..base.len() {
        let deg = base.cell(g).degree;
        if deg == 0 {
            continue;
        }
        let gv = VCell::stored(g);
        let (b, a) = (base.source_object(gv).base, base.target_object(gv).base);
        let gid = base.id(g);
        if deg == 1 {
            let Some(fun) = fp.action0.get(&g) else {
                rep.violate("presheaf-action", &[gid], "missing functor");
                continue;
            };
            let typed = *fun.source == *fp.values[a] && *fun.target == *fp.values[b];
            if rep.check("presheaf-action", typed, &[gid]) {
                rep.merge(&format!("F({gid})"), check_functor(fun, false));
            }
        } else {
            let Some(m) = fp.action_n.get(&g) else {
                rep.violate("presheaf-action", &[gid], "missing component map");
                continue;
            };
            rep.check("presheaf-action", m.len() == fp.values[a].objects().len(), &[gid]);
        }
    }
    if !rep.passed() {
        return rep;
    }
    // F(e a) ≈₁ 1
    for (z, i) in base.identities() {
        if base.cell(z).degree != 0 {
            continue;
        }
        let id = Functor::identity(fp.values[z].clone());
        rep.check("presheaf-identity", approx1(&fp.action0[&i], &id), &[base.id(i)]);
    }
    // F(f ∘₁ g) ≈₁ F(g) ∘ F(f)
    for (&(k, f, g), &h) in base.table() {
        if k != 1 || base.cell(f).degree != 1 {
            continue;
        }
        let ok = compose_functors(&fp.action0[&g], &fp.action0[&f])
            .map(|c| approx1(&fp.action0[&h], &c))
            .unwrap_or(false);
        rep.check("presheaf-composition", ok, &[base.id(f), base.id(g)]);
    }
    // boundaries and identities of the higher actions
    for (&g, comps) in &fp.action_n {
        let gv = VCell::stored(g);
        let (b, a) = (base.source_object(gv).base, base.target_object(gv).base);
        let vb = fp.values[b].as_ref();
        let n = base.cell(g).degree - 1;
        let mut eq = Equiv::new(vb);
        for (&x, &y) in fp.values[a].objects().iter().zip(comps) {
            let xv = VCell::stored(x);
            let (d, c) = (base.dom(gv).unwrap(), base.cod(gv).unwrap());
            let ok = match (fp.act(d, xv), fp.act(c, xv)) {
                (Ok(dy), Ok(cy)) => vb.deg(y) == n && vb.dom(y) == Some(dy) && vb.cod(y) == Some(cy),
                _ => false,
            };
            rep.check("presheaf-higher-boundary", ok, &[base.id(g), fp.values[a].id(x)]);
            if let Some(z) = base.unit_of(gv) {
                let ok = fp.act(z, xv).and_then(|w| vb.e(w)).map(|w| w == y || eq.equiv(w, y)).unwrap_or(false);
                rep.check("presheaf-higher-identity", ok, &[base.id(g), fp.values[a].id(x)]);
            }
        }
    }
    rep
}

/// A transformation `L(−, a) → F` of level `n`. Components are indexed by
/// base object, then by cell of `L(b, a)`; above level 0 only objects of
/// `L(b, a)` carry components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    pub a: CellIx,
    pub level: usize,
    pub components: Vec<Vec<VCell>>,
}

/// The representable `L(−, a)` together with the presheaf it maps into.
pub struct YonedaSetup<'a> {
    pub hom: Presheaf,
    pub target: &'a Presheaf,
    pub a: CellIx,
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    Boundary { var: usize, d: usize, c: usize, b: CellIx },
    Identity { z: usize, ez: usize, b: CellIx },
    Composite { k: usize, f: usize, g: usize, h: usize, b: CellIx },
    /// `τ_c(e^ep y) = F(g)(τ_b(x))`
    Natural { g: CellIx, x: usize, y: usize, ep: usize, c: CellIx },
}

impl<'s> YonedaSetup<'s> {
    pub fn new(target: &'s Presheaf, a: CellIx) -> Result<Self> {
        Ok(YonedaSetup { hom: hom_presheaf(&target.base, a)?, target, a })
    }

    fn base(&self) -> &Category {
        self.target.base.as_ref()
    }

    /// Variables as `(b, cell of L(b, a))`, flattened.
    fn variables(&self, level: usize) -> Vec<(CellIx, CellIx)> {
        let mut vars = Vec::new();
        for &b in self.base().objects() {
            let h = &self.hom.values[b];
            let cells = if level == 0 { h.len() } else { h.objects().len() };
            vars.extend((0..cells).map(|i| (b, i)));
        }
        vars
    }

    fn unit_cell(&self) -> Result<VCell> {
        let p = self.base();
        to_hom(p, &self.hom.values[self.a], p.e(VCell::stored(self.a))?)
    }

    fn constraints(&self, level: usize, var_of: &BTreeMap<(CellIx, CellIx), usize>) -> Result<Vec<Constraint>> {
        let p = self.base();
        let mut out = Vec::new();
        for &b in p.objects() {
            let h = self.hom.values[b].as_ref();
            if level == 0 {
                for (i, c) in h.cells().iter().enumerate() {
                    if let (Some(d), Some(e)) = (c.dom, c.cod) {
                        out.push(Constraint::Boundary { var: var_of[&(b, i)], d: var_of[&(b, d)], c: var_of[&(b, e)], b });
                    }
                }
                for (z, ez) in h.identities() {
                    out.push(Constraint::Identity { z: var_of[&(b, z)], ez: var_of[&(b, ez)], b });
                }
                for (&(k, f, g), &r) in h.table() {
                    out.push(Constraint::Composite { k, f: var_of[&(b, f)], g: var_of[&(b, g)], h: var_of[&(b, r)], b });
                }
            }
        }
        for g in 0..p.len() {
            let deg = p.cell(g).degree;
            if deg == 0 || (level > 0 && deg > 1) {
                continue;
            }
            let gv = VCell::stored(g);
            let (c, b) = (p.source_object(gv).base, p.target_object(gv).base);
            let hb = self.hom.values[b].as_ref();
            let xs = if level == 0 && deg == 1 { hb.len() } else { hb.objects().len() };
            for x in 0..xs {
                let y = self.hom.act(gv, VCell::stored(x))?;
                out.push(Constraint::Natural { g, x: var_of[&(b, x)], y: var_of[&(c, y.base)], ep: y.ep, c });
            }
        }
        Ok(out)
    }

    fn holds(&self, con: &Constraint, val: &[Option<VCell>]) -> Option<bool> {
        let f = self.target;
        Some(match *con {
            Constraint::Boundary { var, d, c, b } => {
                let (x, dx, cx) = (val[var]?, val[d]?, val[c]?);
                let v = &f.values[b];
                v.dom(x) == Some(dx) && v.cod(x) == Some(cx)
            }
            Constraint::Identity { z, ez, b } => f.values[b].e(val[z]?).ok() == Some(val[ez]?),
            Constraint::Composite { k, f: l, g, h, b } => f.values[b].compose(k, val[l]?, val[g]?).ok() == Some(val[h]?),
            Constraint::Natural { g, x, y, ep, c } => {
                let lhs = f.values[c].e_pow(val[y]?, ep).ok();
                lhs.is_some() && lhs == f.act(VCell::stored(g), val[x]?).ok()
            }
        })
    }

    /// Check every naturality and functoriality condition of `τ`.
    pub fn check(&self, tau: &Transformation) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let vars = self.variables(tau.level);
        let shape_ok = tau.a == self.a
            && tau.components.len() == self.base().objects().len()
            && vars.iter().all(|&(b, i)| i < tau.components[b].len());
        if !rep.check("transformation-shape", shape_ok, &[]) {
            return rep;
        }
        let var_of: BTreeMap<(CellIx, CellIx), usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let val: Vec<Option<VCell>> = vars.iter().map(|&(b, i)| Some(tau.components[b][i])).collect();
        for (&(b, i), v) in vars.iter().zip(&val) {
            let want = if tau.level == 0 { self.hom.values[b].deg(VCell::stored(i)) } else { tau.level };
            rep.check("transformation-degree", self.target.values[b].deg(v.unwrap()) == want, &[]);
        }
        let Ok(cons) = self.constraints(tau.level, &var_of) else {
            rep.violate("transformation-naturality", &[], "action undefined");
            return rep;
        };
        for con in &cons {
            let law = match con {
                Constraint::Natural { .. } => "transformation-naturality",
                _ => "transformation-functoriality",
            };
            rep.check(law, self.holds(con, &val) == Some(true), &[]);
        }
        rep
    }

    /// `τ_b(f) = F(f)(β)`.
    pub fn backward(&self, beta: VCell) -> Result<Transformation> {
        let p = self.base();
        let level = self.target.values[self.a].deg(beta);
        let mut components = Vec::new();
        for &b in p.objects() {
            let h = self.hom.values[b].as_ref();
            let cells = if level == 0 { h.len() } else { h.objects().len() };
            let comps = (0..cells)
                .map(|i| {
                    let f = from_hom(p, h, VCell::stored(i))?;
                    self.target.act(f, beta)
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(comps);
        }
        let tau = Transformation { a: self.a, level, components };
        let rep = self.check(&tau);
        if !rep.passed() {
            return Err(Error::NaturalityViolated(format!("{:?}", rep.violated_laws())));
        }
        Ok(tau)
    }

    /// `τ ↦ τ_a(e a)`.
    pub fn forward(&self, tau: &Transformation) -> Result<VCell> {
        let rep = self.check(tau);
        if !rep.passed() {
            return Err(Error::NaturalityViolated(format!("{:?}", rep.violated_laws())));
        }
        let u = self.unit_cell()?;
        self.target.values[self.a].e_pow(tau.components[self.a][u.base], u.ep)
    }

    /// Every level-`n` transformation, by constraint-pruned search over
    /// all component families.
    pub fn enumerate(&self, level: usize) -> Result<Vec<Transformation>> {
        let mut vars = self.variables(level);
        // start from the identity of `a` so that pruning bites early
        let u = self.unit_cell()?;
        if u.ep == 0 {
            if let Some(pos) = vars.iter().position(|&v| v == (self.a, u.base)) {
                let first = vars.remove(pos);
                vars.insert(0, first);
            }
        }
        let var_of: BTreeMap<(CellIx, CellIx), usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let cons = self.constraints(level, &var_of)?;
        let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); vars.len()];
        for con in cons {
            let vs = match con {
                Constraint::Boundary { var, d, c, .. } => vec![var, d, c],
                Constraint::Identity { z, ez, .. } => vec![z, ez],
                Constraint::Composite { f, g, h, .. } => vec![f, g, h],
                Constraint::Natural { x, y, .. } => vec![x, y],
            };
            by_last[*vs.iter().max().unwrap()].push(con);
        }
        let mut val: Vec<Option<VCell>> = vec![None; vars.len()];
        let mut found = Vec::new();
        let mut budget = search_limit();
        self.search(0, level, &vars, &var_of, &by_last, &mut val, &mut found, &mut budget)?;
        Ok(found
            .into_iter()
            .map(|v| {
                let mut components: Vec<Vec<VCell>> = self.base().objects().iter().map(|_| Vec::new()).collect();
                let mut order: Vec<(usize, CellIx, CellIx)> =
                    vars.iter().enumerate().map(|(k, &(b, i))| (k, b, i)).collect();
                order.sort_by_key(|&(_, b, i)| (b, i));
                for (k, b, _) in order {
                    components[b].push(v[k]);
                }
                Transformation { a: self.a, level, components }
            })
            .collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        k: usize,
        level: usize,
        vars: &[(CellIx, CellIx)],
        var_of: &BTreeMap<(CellIx, CellIx), usize>,
        by_last: &[Vec<Constraint>],
        val: &mut Vec<Option<VCell>>,
        found: &mut Vec<Vec<VCell>>,
        budget: &mut u64,
    ) -> Result<()> {
        if k == vars.len() {
            found.push(val.iter().map(|v| v.unwrap()).collect());
            return Ok(());
        }
        let (b, i) = vars[k];
        let fb = self.target.values[b].as_ref();
        let h = self.hom.values[b].as_ref();
        let candidates = if level > 0 {
            fb.cells_at(level)
        } else {
            match (h.cell(i).dom, h.cell(i).cod) {
                (Some(d), Some(c)) => match (val[var_of[&(b, d)]], val[var_of[&(b, c)]]) {
                    (Some(x), Some(y)) => fb.hom_v(x, y),
                    _ => fb.cells_at(h.cell(i).degree),
                },
                _ => fb.cells_at(0),
            }
        };
        for c in candidates {
            if *budget == 0 {
                return Err(Error::SearchLimit("transformation enumeration".into()));
            }
            *budget -= 1;
            val[k] = Some(c);
            if by_last[k].iter().all(|con| self.holds(con, val) == Some(true)) {
                self.search(k + 1, level, vars, var_of, by_last, val, found, budget)?;
            }
        }
        val[k] = None;
        Ok(())
    }
}

pub fn yoneda_backward(fp: &Presheaf, a: CellIx, beta: VCell) -> Result<Transformation> {
    YonedaSetup::new(fp, a)?.backward(beta)
}

pub fn yoneda_forward(fp: &Presheaf, tau: &Transformation) -> Result<(CellIx, VCell)> {
    let setup = YonedaSetup::new(fp, tau.a)?;
    Ok((tau.a, setup.forward(tau)?))
}

/// Witness of strict representability: `(a, β)` and, per object `b` and
/// degree, how many cells of `F b` were matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub a: CellIx,
    pub beta: VCell,
    pub matched: Vec<usize>,
}

fn is_bijection(setup: &YonedaSetup<'_>, beta: VCell) -> Result<Option<Vec<usize>>> {
    let fp = setup.target;
    let p = setup.base();
    let mut matched = Vec::new();
    for &b in p.objects() {
        let (h, fb) = (setup.hom.values[b].as_ref(), fp.values[b].as_ref());
        let top = h.truncation().max(fb.truncation());
        let mut count = 0;
        for d in 0..=top {
            let mut hits: BTreeMap<VCell, usize> = BTreeMap::new();
            for f in h.cells_at(d) {
                let img = fp.act(from_hom(p, h, f)?, beta)?;
                *hits.entry(img).or_insert(0) += 1;
            }
            let targets = fb.cells_at(d);
            if hits.len() != targets.len() || targets.iter().any(|t| hits.get(t) != Some(&1)) {
                return Ok(None);
            }
            count += targets.len();
        }
        matched.push(count);
    }
    Ok(Some(matched))
}

/// Whether `β ∈ F a` is a universal element: every cell of every `F b` is
/// `F(f)(β)` for exactly one `f`. Returns the matched cell counts.
pub fn check_universal_element(fp: &Presheaf, a: CellIx, beta: VCell) -> Result<Option<Vec<usize>>> {
    is_bijection(&YonedaSetup::new(fp, a)?, beta)
}

/// Strict mode: the first `(a, β⁰)` for which every cell of every `F b`
/// is `F(f)(β)` for exactly one `f`.
pub fn check_representable_strict(fp: &Presheaf) -> Result<Option<Representation>> {
    for &a in fp.base.objects() {
        let setup = YonedaSetup::new(fp, a)?;
        for beta in fp.values[a].cells_at(0) {
            if let Some(matched) = is_bijection(&setup, beta)? {
                return Ok(Some(Representation { a, beta, matched }));
            }
        }
    }
    Ok(None)
}

/// The functor `L(b, a) → F b`, `f ↦ F(f)(β⁰)`.
pub fn evaluation_functor(fp: &Presheaf, a: CellIx, beta: VCell, b: CellIx) -> Result<Functor> {
    let p = fp.base.as_ref();
    let h = Arc::new(hom_category(p, b, a)?);
    let hh = h.clone();
    Functor::from_fn(&format!("ev_{}", p.id(b)), h, fp.values[b].clone(), |i| {
        fp.act(from_hom(p, &hh, VCell::stored(i))?, beta)
    })
}

/// Weak mode: with `(a, β⁰)` given and a proposed quasi-inverse per base
/// object, check each evaluation functor is an equivalence.
pub fn check_representable_weak(
    fp: &Presheaf,
    a: CellIx,
    beta: VCell,
    inverses: &[Functor],
) -> Result<Option<Vec<EquivalencePair>>> {
    if fp.values[a].deg(beta) != 0 {
        return Err(Error::MalformedWitness(format!("β = {} is not an object", fp.values[a].show(beta))));
    }
    if inverses.len() != fp.base.objects().len() {
        return Err(Error::MalformedWitness(format!("{} inverses for {} objects", inverses.len(), fp.base.objects().len())));
    }
    let mut out = Vec::new();
    for (&b, inv) in fp.base.objects().iter().zip(inverses) {
        let ev = evaluation_functor(fp, a, beta, b)?;
        if inv.source != ev.target || inv.target != ev.source {
            return Err(Error::MalformedWitness(format!("inverse at {} has the wrong type", fp.base.id(b))));
        }
        if !check_functor(&ev, false).passed() || !check_functor(inv, false).passed() {
            return Ok(None);
        }
        match check_equivalence_pair(&ev, inv)? {
            Some(e) => out.push(e),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}
