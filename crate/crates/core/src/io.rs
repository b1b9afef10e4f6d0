//! JSON interchange for presentations, functors, modifications, diagrams,
//! presheaves, adjunctions and duality data. Documents refer to each other
//! by relative path or carry the referenced document inline.
//!
//! Canonical form: cells sorted by `(degree, id)`, identities by `of`,
//! compositions by `(k, left, right)`; unknown fields are rejected.

use crate::adjunction::{adjunction_from_components, AdjunctionData, HomIsoSize};
use crate::category::{Category, CellIx, RawCell, VCell};
use crate::construct::{hom_category, opposite};
use crate::duality::{DualityInput, DualityWitness, LiftEntry, LiftRecord};
use crate::error::{Error, Result};
use crate::functor::{Functor, Modification};
use crate::limits::{Diagram, Graph};
use crate::presheaf::Presheaf;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub id: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityEntry {
    pub of: String,
    pub is: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub k: usize,
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub name: String,
    pub truncation: usize,
    pub cells: Vec<CellEntry>,
    #[serde(default)]
    pub identities: Vec<IdentityEntry>,
    #[serde(default)]
    pub compositions: Vec<CompositionEntry>,
}

impl CategoryFile {
    pub fn from_category(p: &Category) -> Self {
        let (raw, ids, comps) = p.raw_parts();
        let mut f = CategoryFile {
            name: p.name().to_string(),
            truncation: p.truncation(),
            cells: raw
                .into_iter()
                .map(|c| CellEntry { id: c.id, degree: c.degree, dom: c.dom, cod: c.cod })
                .collect(),
            identities: ids.into_iter().map(|(of, is)| IdentityEntry { of, is }).collect(),
            compositions: comps
                .into_iter()
                .map(|(k, left, right, result)| CompositionEntry { k, left, right, result })
                .collect(),
        };
        f.canonicalize();
        f
    }

    pub fn canonicalize(&mut self) {
        self.cells.sort_by(|a, b| (a.degree, &a.id).cmp(&(b.degree, &b.id)));
        self.identities.sort_by(|a, b| a.of.cmp(&b.of));
        self.compositions.sort_by(|a, b| (a.k, &a.left, &a.right).cmp(&(b.k, &b.left, &b.right)));
    }

    pub fn to_category(&self) -> Result<Category> {
        Category::from_parts(
            &self.name,
            self.truncation,
            self.cells
                .iter()
                .map(|c| RawCell { id: c.id.clone(), degree: c.degree, dom: c.dom.clone(), cod: c.cod.clone() })
                .collect(),
            self.identities.iter().map(|e| (e.of.clone(), e.is.clone())).collect(),
            self.compositions
                .iter()
                .map(|c| (c.k, c.left.clone(), c.right.clone(), c.result.clone()))
                .collect(),
        )
    }
}

pub fn category_from_str(s: &str) -> Result<Category> {
    let f: CategoryFile = serde_json::from_str(s)?;
    f.to_category()
}

/// Canonical pretty JSON with a trailing newline.
pub fn category_to_string(p: &Category) -> String {
    to_canonical_string(&CategoryFile::from_category(p))
}

pub fn to_canonical_string<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_category(path: &Path) -> Result<Category> {
    category_from_str(&read_to_string(path)?).map_err(|e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_category(p: &Category, path: &Path) -> Result<()> {
    std::fs::write(path, category_to_string(p)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Resolve a reference relative to the file that contains it.
pub fn resolve_ref(referrer: &Path, reference: &str) -> PathBuf {
    let r = Path::new(reference);
    if r.is_absolute() {
        r.to_path_buf()
    } else {
        referrer.parent().unwrap_or(Path::new(".")).join(r)
    }
}


/// A file reference or the document inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(Box<T>),
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub epower: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub name: String,
    pub source: Ref<CategoryFile>,
    pub target: Ref<CategoryFile>,
    pub map: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub at: String,
    pub cell: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub epower: usize,
}

/// `stack` holds the two boundaries: functors for a 0-modification,
/// modifications one level down otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModificationFile {
    pub level: usize,
    pub stack: Vec<String>,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub nodes: Vec<CellEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub graph: Ref<GraphFile>,
    pub target: Ref<CategoryFile>,
    /// Node id to cell name.
    pub assignment: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub cell: String,
    pub functor: Ref<FunctorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherActionEntry {
    pub cell: String,
    pub map: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    #[serde(default)]
    pub name: String,
    pub base: Ref<CategoryFile>,
    pub values: BTreeMap<String, Ref<CategoryFile>>,
    #[serde(default)]
    pub action0: Vec<ActionEntry>,
    #[serde(default, rename = "actionN")]
    pub action_n: Vec<HigherActionEntry>,
}

/// Universal element and per-object inverse functors `F b → L(b, a)` for
/// weak representability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentWitnessFile {
    pub a: String,
    pub beta: String,
    pub inverses: BTreeMap<String, Ref<FunctorFile>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionFile {
    #[serde(rename = "F")]
    pub f: Ref<FunctorFile>,
    #[serde(rename = "G")]
    pub g: Ref<FunctorFile>,
    pub unit: Vec<ComponentEntry>,
    pub counit: Vec<ComponentEntry>,
}

/// Row of the table indexed by objects of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftLFile {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "GA")]
    pub ga: String,
    pub iso: Vec<MapEntry>,
}

/// Row of the table indexed by objects of `L'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftLpFile {
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "FB")]
    pub fb: String,
    pub iso: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityFile {
    #[serde(rename = "L")]
    pub l: Ref<CategoryFile>,
    #[serde(rename = "Lp")]
    pub lp: Ref<CategoryFile>,
    #[serde(rename = "A0")]
    pub a0: String,
    #[serde(rename = "B0")]
    pub b0: String,
    #[serde(rename = "Atilde")]
    pub atilde: String,
    #[serde(rename = "Btilde")]
    pub btilde: String,
    #[serde(rename = "liftL")]
    pub lift_l: Vec<LiftLFile>,
    #[serde(rename = "liftLp")]
    pub lift_lp: Vec<LiftLpFile>,
    pub comparison: Vec<MapEntry>,
}

/// Synthesized duality with its input inlined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityWitnessFile {
    pub input: DualityFile,
    #[serde(rename = "F")]
    pub f: Vec<MapEntry>,
    #[serde(rename = "G")]
    pub g: Vec<MapEntry>,
    pub unit: Vec<ComponentEntry>,
    pub counit: Vec<ComponentEntry>,
    #[serde(rename = "unitEvaluations")]
    pub unit_evaluations: Vec<LiftRecord>,
    #[serde(rename = "counitEvaluations")]
    pub counit_evaluations: Vec<LiftRecord>,
    #[serde(rename = "homSizes")]
    pub hom_sizes: Vec<HomIsoSize>,
    pub counts: BTreeMap<String, usize>,
}

fn cell(p: &Category, name: &str, epower: usize) -> Result<VCell> {
    p.e_pow(p.parse(name)?, epower)
}

fn object(p: &Category, name: &str) -> Result<CellIx> {
    let v = p.parse(name)?;
    if p.deg(v) != 0 {
        return Err(Error::Malformed(format!("`{name}` is not an object of {}", p.name())));
    }
    Ok(v.base)
}

fn map_entries(f: &Functor) -> Vec<MapEntry> {
    let (s, t) = (f.source.as_ref(), f.target.as_ref());
    (0..s.len()).map(|i| MapEntry { from: s.id(i).into(), to: t.show(f.map[i]), epower: 0 }).collect()
}

fn component_entries(m: &Modification) -> Vec<ComponentEntry> {
    let (s, t) = (m.source().clone(), m.target().clone());
    s.objects().iter().map(|&a| ComponentEntry { at: s.id(a).into(), cell: t.show(m.components[a]), epower: 0 }).collect()
}

/// Functor from name pairs covering every source cell exactly once.
pub fn functor_from_entries(name: &str, source: Arc<Category>, target: Arc<Category>, map: &[MapEntry]) -> Result<Functor> {
    let mut out = vec![None; source.len()];
    for e in map {
        let i = source
            .lookup(&e.from)
            .ok_or_else(|| Error::Malformed(format!("`{name}`: unknown source cell `{}`", e.from)))?;
        if out[i].replace(cell(&target, &e.to, e.epower)?).is_some() {
            return Err(Error::Malformed(format!("`{name}`: `{}` mapped twice", e.from)));
        }
    }
    let map = out
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Malformed(format!("`{name}`: `{}` is not mapped", source.id(i)))))
        .collect::<Result<Vec<_>>>()?;
    Functor::new(name, source, target, map)
}

fn components(name: &str, source: &Category, target: &Category, entries: &[ComponentEntry]) -> Result<Vec<VCell>> {
    let mut out = vec![None; source.objects().len()];
    for e in entries {
        let a = object(source, &e.at)?;
        if out[a].replace(cell(target, &e.cell, e.epower)?).is_some() {
            return Err(Error::Malformed(format!("`{name}`: two components at `{}`", e.at)));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| Error::Malformed(format!("`{name}`: no component at `{}`", source.id(a)))))
        .collect()
}

/// Loads documents and their references, sharing categories by path.
#[derive(Debug, Default)]
pub struct Loader {
    categories: BTreeMap<PathBuf, Arc<Category>>,
    /// Reject presentations that fail `validate_globular`.
    pub eager_validation: bool,
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| Error::Malformed(format!("{}: {}", path.display(), Error::from(e))))
}

impl Loader {
    pub fn new() -> Self {
        Loader { categories: BTreeMap::new(), eager_validation: true }
    }

    fn admit(&self, p: Category, origin: &Path) -> Result<Arc<Category>> {
        if self.eager_validation {
            let rep = crate::validate::validate_globular(&p);
            if !rep.passed() {
                return Err(Error::Malformed(format!(
                    "{}: not globular ({})",
                    origin.display(),
                    rep.violated_laws().join(", ")
                )));
            }
        }
        Ok(Arc::new(p))
    }

    pub fn category(&mut self, path: &Path) -> Result<Arc<Category>> {
        if let Some(p) = self.categories.get(path) {
            return Ok(p.clone());
        }
        let p = self.admit(load_category(path)?, path)?;
        self.categories.insert(path.to_path_buf(), p.clone());
        Ok(p)
    }

    pub fn category_ref(&mut self, referrer: &Path, r: &Ref<CategoryFile>) -> Result<Arc<Category>> {
        match r {
            Ref::Path(s) => self.category(&resolve_ref(referrer, s)),
            Ref::Inline(f) => self.admit(f.to_category()?, referrer),
        }
    }

    fn doc<T: Clone + for<'de> Deserialize<'de>>(&self, referrer: &Path, r: &Ref<T>) -> Result<(T, PathBuf)> {
        match r {
            Ref::Path(s) => {
                let path = resolve_ref(referrer, s);
                Ok((parse(&path)?, path))
            }
            Ref::Inline(v) => Ok(((**v).clone(), referrer.to_path_buf())),
        }
    }

    pub fn functor(&mut self, path: &Path) -> Result<Functor> {
        let f: FunctorFile = parse(path)?;
        self.functor_doc(path, &f)
    }

    pub fn functor_doc(&mut self, origin: &Path, f: &FunctorFile) -> Result<Functor> {
        let source = self.category_ref(origin, &f.source)?;
        let target = self.category_ref(origin, &f.target)?;
        functor_from_entries(&f.name, source, target, &f.map)
    }

    pub fn functor_ref(&mut self, referrer: &Path, r: &Ref<FunctorFile>) -> Result<Functor> {
        let (f, origin) = self.doc(referrer, r)?;
        self.functor_doc(&origin, &f)
    }

    pub fn modification(&mut self, path: &Path) -> Result<Modification> {
        let m: ModificationFile = parse(path)?;
        let [from, to] = m.stack.as_slice() else {
            return Err(Error::Malformed(format!("{}: stack must name two boundaries", path.display())));
        };
        let (from, to) = (resolve_ref(path, from), resolve_ref(path, to));
        let name = path.display().to_string();
        if m.level == 0 {
            let (f, g) = (self.functor(&from)?, self.functor(&to)?);
            let comps = components(&name, &f.source, &f.target, &m.components)?;
            Ok(Modification::natural(f, g, comps))
        } else {
            let (d, c) = (self.modification(&from)?, self.modification(&to)?);
            if d.level + 1 != m.level || c.level + 1 != m.level {
                return Err(Error::Malformed(format!("{name}: boundaries are not at level {}", m.level - 1)));
            }
            let comps = components(&name, d.source(), d.target(), &m.components)?;
            Ok(Modification::between(d, c, comps))
        }
    }

    pub fn graph_doc(g: &GraphFile) -> Result<Graph> {
        let mut out = Graph::default();
        for n in &g.nodes {
            let bd = match (&n.dom, &n.cod) {
                (Some(d), Some(c)) => Some((d.as_str(), c.as_str())),
                (None, None) => None,
                _ => return Err(Error::Malformed(format!("node `{}` has only one boundary", n.id))),
            };
            let i = out.push(&n.id, bd)?;
            if out.nodes[i].degree != n.degree {
                return Err(Error::Malformed(format!("node `{}` declares degree {}", n.id, n.degree)));
            }
        }
        Ok(out)
    }

    pub fn diagram(&mut self, path: &Path) -> Result<Diagram> {
        let d: DiagramFile = parse(path)?;
        let (g, _) = self.doc(path, &d.graph)?;
        let graph = Self::graph_doc(&g)?;
        let target = self.category_ref(path, &d.target)?;
        let mut assignment = Vec::with_capacity(graph.nodes.len());
        for n in &graph.nodes {
            let name = d.assignment.get(&n.id).ok_or_else(|| Error::Malformed(format!("node `{}` is not assigned", n.id)))?;
            assignment.push(target.parse(name)?);
        }
        if let Some(extra) = d.assignment.keys().find(|k| graph.lookup(k).is_none()) {
            return Err(Error::Malformed(format!("assignment names unknown node `{extra}`")));
        }
        Diagram::new(graph, target, assignment)
    }

    pub fn presheaf(&mut self, path: &Path) -> Result<Presheaf> {
        let f: PresheafFile = parse(path)?;
        let base = self.category_ref(path, &f.base)?;
        let mut values = Vec::new();
        for &a in base.objects() {
            let r = f.values.get(base.id(a)).ok_or_else(|| Error::Malformed(format!("no value at `{}`", base.id(a))))?;
            values.push(self.category_ref(path, r)?);
        }
        if f.values.len() != values.len() {
            return Err(Error::Malformed("values name unknown objects".into()));
        }
        let mut action0 = BTreeMap::new();
        for e in &f.action0 {
            let g = base.parse(&e.cell)?;
            if g.ep != 0 || base.deg(g) != 1 {
                return Err(Error::Malformed(format!("action0 cell `{}` is not a stored 1-cell", e.cell)));
            }
            if action0.insert(g.base, self.functor_ref(path, &e.functor)?).is_some() {
                return Err(Error::Malformed(format!("two actions for `{}`", e.cell)));
            }
        }
        let mut action_n = BTreeMap::new();
        for e in &f.action_n {
            let g = base.parse(&e.cell)?;
            if g.ep != 0 || base.deg(g) < 2 {
                return Err(Error::Malformed(format!("actionN cell `{}` is not a stored higher cell", e.cell)));
            }
            let (vb, va) = (&values[base.source_object(g).base], &values[base.target_object(g).base]);
            let mut comps = vec![None; va.objects().len()];
            for m in &e.map {
                comps[object(va, &m.from)?] = Some(cell(vb, &m.to, m.epower)?);
            }
            let comps = comps
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Malformed(format!("action of `{}` is not total", e.cell)))?;
            if action_n.insert(g.base, comps).is_some() {
                return Err(Error::Malformed(format!("two actions for `{}`", e.cell)));
            }
        }
        let name = if f.name.is_empty() { path.display().to_string() } else { f.name.clone() };
        Ok(Presheaf { name, base, values, action0, action_n })
    }

    /// `(a, β, inverses)` of a weak representability witness for `fp`.
    pub fn represent_witness(&mut self, path: &Path, fp: &Presheaf) -> Result<(CellIx, VCell, Vec<Functor>)> {
        let w: RepresentWitnessFile = parse(path).map_err(|e| Error::MalformedWitness(e.to_string()))?;
        let a = object(&fp.base, &w.a).map_err(|e| Error::MalformedWitness(e.to_string()))?;
        let beta = fp.values[a].parse(&w.beta).map_err(|e| Error::MalformedWitness(e.to_string()))?;
        let mut inverses = Vec::new();
        for &b in fp.base.objects() {
            let r = w
                .inverses
                .get(fp.base.id(b))
                .ok_or_else(|| Error::MalformedWitness(format!("no inverse at `{}`", fp.base.id(b))))?;
            inverses.push(self.functor_ref(path, r)?);
        }
        Ok((a, beta, inverses))
    }

    pub fn adjunction(&mut self, path: &Path) -> Result<AdjunctionData> {
        let a: AdjunctionFile = parse(path)?;
        let f = self.functor_ref(path, &a.f)?;
        let g = self.functor_ref(path, &a.g)?;
        let name = path.display().to_string();
        let unit = components(&name, &f.source, &g.target, &a.unit)?;
        let counit = components(&name, &g.source, &f.target, &a.counit)?;
        adjunction_from_components(f, g, unit, counit)
    }

    pub fn duality(&mut self, path: &Path) -> Result<DualityInput> {
        let d: DualityFile = parse(path)?;
        self.duality_doc(path, &d)
    }

    pub fn duality_doc(&mut self, origin: &Path, d: &DualityFile) -> Result<DualityInput> {
        let l = self.category_ref(origin, &d.l)?;
        let lp = self.category_ref(origin, &d.lp)?;
        let (a0, atilde) = (object(&l, &d.a0)?, object(&l, &d.atilde)?);
        let (b0, btilde) = (object(&lp, &d.b0)?, object(&lp, &d.btilde)?);
        let iso = |cat: &Category, src: (CellIx, CellIx), other: &Category, tgt: (CellIx, CellIx), map: &[MapEntry], what: &str| {
            let s = Arc::new(hom_category(cat, src.0, src.1)?);
            let t = Arc::new(hom_category(other, tgt.0, tgt.1)?);
            functor_from_entries(what, s, t, map)
        };
        let mut lift_lp = Vec::new();
        for r in &d.lift_l {
            let (a, ga) = (object(&l, &r.a)?, object(&lp, &r.ga)?);
            let f = iso(&lp, (b0, ga), &l, (a, atilde), &r.iso, &format!("liftL[{}]", r.a))?;
            lift_lp.push(LiftEntry { object: a, image: ga, iso: f });
        }
        let mut lift_l = Vec::new();
        for r in &d.lift_lp {
            let (b, fb) = (object(&lp, &r.b)?, object(&l, &r.fb)?);
            let f = iso(&l, (a0, fb), &lp, (b, btilde), &r.iso, &format!("liftLp[{}]", r.b))?;
            lift_l.push(LiftEntry { object: b, image: fb, iso: f });
        }
        let comparison = iso(&l, (a0, atilde), &lp, (b0, btilde), &d.comparison, "comparison")?;
        Ok(DualityInput { l, lp, a0, b0, atilde, btilde, lift_lp, lift_l, comparison })
    }

    /// Input and synthesized data of a witness file, with `F: L' → L^op`
    /// and `G: L^op → L'`.
    pub fn duality_witness(&mut self, path: &Path) -> Result<(DualityInput, AdjunctionData, DualityWitnessFile)> {
        let w: DualityWitnessFile = parse(path).map_err(|e| Error::MalformedWitness(e.to_string()))?;
        let input = self.duality_doc(path, &w.input)?;
        let lop = Arc::new(opposite(&input.l));
        let f = functor_from_entries("F", input.lp.clone(), lop.clone(), &w.f)?;
        let g = functor_from_entries("G", lop.clone(), input.lp.clone(), &w.g)?;
        let unit = components("unit", &input.lp, &input.lp, &w.unit)?;
        let counit = components("counit", &lop, &lop, &w.counit)?;
        let adj = adjunction_from_components(f, g, unit, counit)?;
        Ok((input, adj, w))
    }
}

pub fn functor_file(f: &Functor, source: Ref<CategoryFile>, target: Ref<CategoryFile>) -> FunctorFile {
    FunctorFile { name: f.name.clone(), source, target, map: map_entries(f) }
}

pub fn inline(p: &Category) -> Ref<CategoryFile> {
    Ref::Inline(Box::new(CategoryFile::from_category(p)))
}

pub fn duality_file(d: &DualityInput, l: Ref<CategoryFile>, lp: Ref<CategoryFile>) -> DualityFile {
    let iso_entries = |f: &Functor| -> Vec<MapEntry> { map_entries(f) };
    DualityFile {
        l,
        lp,
        a0: d.l.id(d.a0).into(),
        b0: d.lp.id(d.b0).into(),
        atilde: d.l.id(d.atilde).into(),
        btilde: d.lp.id(d.btilde).into(),
        lift_l: d
            .lift_lp
            .iter()
            .map(|r| LiftLFile { a: d.l.id(r.object).into(), ga: d.lp.id(r.image).into(), iso: iso_entries(&r.iso) })
            .collect(),
        lift_lp: d
            .lift_l
            .iter()
            .map(|r| LiftLpFile { b: d.lp.id(r.object).into(), fb: d.l.id(r.image).into(), iso: iso_entries(&r.iso) })
            .collect(),
        comparison: iso_entries(&d.comparison),
    }
}

/// Self-contained witness: the input with both categories inlined.
pub fn duality_witness_file(d: &DualityInput, w: &DualityWitness) -> DualityWitnessFile {
    let a = &w.adjunction;
    DualityWitnessFile {
        input: duality_file(d, inline(&d.l), inline(&d.lp)),
        f: map_entries(&a.f),
        g: map_entries(&a.g),
        unit: component_entries(&a.unit),
        counit: component_entries(&a.counit),
        unit_evaluations: w.unit_evaluations.clone(),
        counit_evaluations: w.counit_evaluations.clone(),
        hom_sizes: w.hom_isos.sizes(),
        counts: w.report.counts.clone(),
    }
}

pub fn adjunction_file(a: &AdjunctionData, f: Ref<FunctorFile>, g: Ref<FunctorFile>) -> AdjunctionFile {
    AdjunctionFile { f, g, unit: component_entries(&a.unit), counit: component_entries(&a.counit) }
}

pub fn modification_file(m: &Modification, from: &str, to: &str) -> ModificationFile {
    ModificationFile { level: m.level, stack: vec![from.into(), to.into()], components: component_entries(m) }
}

pub fn graph_file(g: &Graph) -> GraphFile {
    GraphFile {
        nodes: g
            .nodes
            .iter()
            .map(|n| CellEntry {
                id: n.id.clone(),
                degree: n.degree,
                dom: n.dom.map(|i| g.nodes[i].id.clone()),
                cod: n.cod.map(|i| g.nodes[i].id.clone()),
            })
            .collect(),
    }
}

pub fn diagram_file(d: &Diagram, target: Ref<CategoryFile>) -> DiagramFile {
    DiagramFile {
        graph: Ref::Inline(Box::new(graph_file(&d.graph))),
        target,
        assignment: d.graph.nodes.iter().zip(&d.assignment).map(|(n, &v)| (n.id.clone(), d.target.show(v))).collect(),
    }
}

/// Presheaf file with every category and functor inlined.
pub fn presheaf_file(fp: &Presheaf) -> PresheafFile {
    let base = fp.base.as_ref();
    PresheafFile {
        name: fp.name.clone(),
        base: inline(base),
        values: base.objects().iter().map(|&a| (base.id(a).to_string(), inline(&fp.values[a]))).collect(),
        action0: fp
            .action0
            .iter()
            .map(|(&g, f)| ActionEntry {
                cell: base.id(g).into(),
                functor: Ref::Inline(Box::new(functor_file(f, inline(&f.source), inline(&f.target)))),
            })
            .collect(),
        action_n: fp
            .action_n
            .iter()
            .map(|(&g, comps)| {
                let gv = VCell::stored(g);
                let (vb, va) = (&fp.values[base.source_object(gv).base], &fp.values[base.target_object(gv).base]);
                HigherActionEntry {
                    cell: base.id(g).into(),
                    map: va
                        .objects()
                        .iter()
                        .zip(comps)
                        .map(|(&x, &v)| MapEntry { from: va.id(x).into(), to: vb.show(v), epower: 0 })
                        .collect(),
                }
            })
            .collect(),
    }
}
