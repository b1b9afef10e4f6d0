//! The cell-complex data model.
//!
//! Cells are stored sorted by `(degree, id)`, so cell indices double as the
//! lexicographic tie-break used by searches. A [`VCell`] is `e^ep(base)`;
//! it is kept canonical, meaning `ep > 0` only when `base` sits at the
//! truncation degree.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

pub type CellIx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub degree: usize,
    pub dom: Option<CellIx>,
    pub cod: Option<CellIx>,
}

/// A stored cell or an iterated identity of a top-degree cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VCell {
    pub base: CellIx,
    pub ep: usize,
}

impl VCell {
    pub fn stored(base: CellIx) -> Self {
        VCell { base, ep: 0 }
    }
}

/// Unresolved cell record, as read from a file or produced by a builder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCell {
    pub id: String,
    pub degree: usize,
    pub dom: Option<String>,
    pub cod: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Category {
    name: String,
    truncation: usize,
    cells: Vec<Cell>,
    index: HashMap<String, CellIx>,
    identity: Vec<Option<CellIx>>,
    identity_of: Vec<Option<CellIx>>,
    comp: BTreeMap<(usize, CellIx, CellIx), CellIx>,
    by_degree: Vec<Vec<CellIx>>,
    homs: HashMap<(CellIx, CellIx), Vec<CellIx>>,
}

impl PartialEq for Category {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.truncation == other.truncation
            && self.cells == other.cells
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

impl Eq for Category {}

impl Category {
    /// Resolve raw records into a category.
    ///
    /// Structural problems (duplicate or dangling ids, degree bookkeeping,
    /// duplicate table keys) are rejected here as malformed input. Law
    /// violations are left to [`crate::validate`].
    pub fn from_parts(
        name: &str,
        truncation: usize,
        mut raw: Vec<RawCell>,
        identities: Vec<(String, String)>,
        compositions: Vec<(usize, String, String, String)>,
    ) -> Result<Category> {
        raw.sort_by(|a, b| (a.degree, &a.id).cmp(&(b.degree, &b.id)));
        let mut index = HashMap::new();
        for (i, c) in raw.iter().enumerate() {
            if c.id.is_empty() {
                return Err(Error::Malformed("empty cell id".into()));
            }
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate cell id `{}`", c.id)));
            }
            if c.degree > truncation {
                return Err(Error::Malformed(format!(
                    "cell `{}` has degree {} above truncation {}",
                    c.id, c.degree, truncation
                )));
            }
        }
        let resolve = |owner: &str, field: &str, id: &str| -> Result<CellIx> {
            index.get(id).copied().ok_or_else(|| {
                Error::Malformed(format!("cell `{owner}`: dangling {field} id `{id}`"))
            })
        };
        let mut cells = Vec::with_capacity(raw.len());
        for c in &raw {
            let (dom, cod) = match (c.degree, &c.dom, &c.cod) {
                (0, None, None) => (None, None),
                (0, _, _) => {
                    return Err(Error::Malformed(format!("object `{}` must not have dom/cod", c.id)))
                }
                (_, Some(d), Some(k)) => (Some(resolve(&c.id, "dom", d)?), Some(resolve(&c.id, "cod", k)?)),
                _ => return Err(Error::Malformed(format!("cell `{}` needs both dom and cod", c.id))),
            };
            for b in [dom, cod].into_iter().flatten() {
                if raw[b].degree + 1 != c.degree {
                    return Err(Error::Malformed(format!(
                        "cell `{}` of degree {} has boundary `{}` of degree {}",
                        c.id, c.degree, raw[b].id, raw[b].degree
                    )));
                }
            }
            cells.push(Cell { id: c.id.clone(), degree: c.degree, dom, cod });
        }
        let n = cells.len();
        let mut identity = vec![None; n];
        let mut identity_of = vec![None; n];
        for (of, is) in &identities {
            let z = resolve("identities", "of", of)?;
            let i = resolve("identities", "is", is)?;
            if identity[z].replace(i).is_some() {
                return Err(Error::Malformed(format!("duplicate identity entry for `{of}`")));
            }
            identity_of[i] = Some(z);
        }
        let mut comp = BTreeMap::new();
        for (k, l, r, res) in &compositions {
            if *k == 0 {
                return Err(Error::Malformed(format!("composition ({l}, {r}) has k = 0")));
            }
            let key = (*k, resolve("compositions", "left", l)?, resolve("compositions", "right", r)?);
            let v = resolve("compositions", "result", res)?;
            if comp.insert(key, v).is_some() {
                return Err(Error::Malformed(format!("duplicate composition entry (k={k}, {l}, {r})")));
            }
        }
        let mut by_degree = vec![Vec::new(); truncation + 1];
        let mut homs: HashMap<(CellIx, CellIx), Vec<CellIx>> = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            by_degree[c.degree].push(i);
            if let (Some(d), Some(k)) = (c.dom, c.cod) {
                homs.entry((d, k)).or_default().push(i);
            }
        }
        Ok(Category {
            name: name.to_string(),
            truncation,
            cells,
            index,
            identity,
            identity_of,
            comp,
            by_degree,
            homs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: CellIx) -> &Cell {
        &self.cells[i]
    }

    pub fn lookup(&self, id: &str) -> Option<CellIx> {
        self.index.get(id).copied()
    }

    /// Stored cells of the given degree, in index order.
    pub fn of_degree(&self, degree: usize) -> &[CellIx] {
        self.by_degree.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn objects(&self) -> &[CellIx] {
        self.of_degree(0)
    }

    /// Stored cells with the given domain and codomain.
    pub fn hom(&self, dom: CellIx, cod: CellIx) -> &[CellIx] {
        self.homs.get(&(dom, cod)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn identity(&self, z: CellIx) -> Option<CellIx> {
        self.identity[z]
    }

    pub fn identity_of(&self, i: CellIx) -> Option<CellIx> {
        self.identity_of[i]
    }

    pub fn identities(&self) -> impl Iterator<Item = (CellIx, CellIx)> + '_ {
        self.identity.iter().enumerate().filter_map(|(z, i)| i.map(|i| (z, i)))
    }

    pub fn table(&self) -> &BTreeMap<(usize, CellIx, CellIx), CellIx> {
        &self.comp
    }

    pub fn lookup_table(&self, k: usize, f: CellIx, g: CellIx) -> Option<CellIx> {
        self.comp.get(&(k, f, g)).copied()
    }

    // ---- virtual cells -------------------------------------------------

    pub fn deg(&self, v: VCell) -> usize {
        self.cells[v.base].degree + v.ep
    }

    pub fn dom(&self, v: VCell) -> Option<VCell> {
        if v.ep > 0 {
            Some(VCell { base: v.base, ep: v.ep - 1 })
        } else {
            self.cells[v.base].dom.map(VCell::stored)
        }
    }

    pub fn cod(&self, v: VCell) -> Option<VCell> {
        if v.ep > 0 {
            Some(VCell { base: v.base, ep: v.ep - 1 })
        } else {
            self.cells[v.base].cod.map(VCell::stored)
        }
    }

    pub fn dom_pow(&self, v: VCell, k: usize) -> Option<VCell> {
        (0..k).try_fold(v, |x, _| self.dom(x))
    }

    pub fn cod_pow(&self, v: VCell, k: usize) -> Option<VCell> {
        (0..k).try_fold(v, |x, _| self.cod(x))
    }

    /// The identity cell `e(v)`, virtual above the truncation.
    pub fn e(&self, v: VCell) -> Result<VCell> {
        if v.ep > 0 || self.cells[v.base].degree >= self.truncation {
            return Ok(VCell { base: v.base, ep: v.ep + 1 });
        }
        self.identity[v.base]
            .map(VCell::stored)
            .ok_or_else(|| Error::Undefined(format!("no identity recorded for `{}`", self.cells[v.base].id)))
    }

    pub fn e_pow(&self, v: VCell, k: usize) -> Result<VCell> {
        (0..k).try_fold(v, |x, _| self.e(x))
    }

    /// If `v = e(z)`, return `z`.
    pub fn unit_of(&self, v: VCell) -> Option<VCell> {
        if v.ep > 0 {
            Some(VCell { base: v.base, ep: v.ep - 1 })
        } else {
            self.identity_of[v.base].map(VCell::stored)
        }
    }

    pub fn is_identity(&self, v: VCell) -> bool {
        self.unit_of(v).is_some()
    }

    /// All cells of a degree, lifting top-degree cells above the truncation.
    pub fn cells_at(&self, degree: usize) -> Vec<VCell> {
        if degree <= self.truncation {
            self.of_degree(degree).iter().map(|&i| VCell::stored(i)).collect()
        } else {
            let ep = degree - self.truncation;
            self.of_degree(self.truncation).iter().map(|&i| VCell { base: i, ep }).collect()
        }
    }

    /// Cells `v` with `dom v = x` and `cod v = y`, virtual ones included.
    pub fn hom_v(&self, x: VCell, y: VCell) -> Vec<VCell> {
        if x.ep == 0 && self.cells[x.base].degree < self.truncation {
            if y.ep != 0 {
                return Vec::new();
            }
            return self.hom(x.base, y.base).iter().map(|&i| VCell::stored(i)).collect();
        }
        if x == y {
            vec![VCell { base: x.base, ep: x.ep + 1 }]
        } else {
            Vec::new()
        }
    }

    /// `f ∘_k g`, defined when `d^k f = c^k g`.
    ///
    /// Virtual arguments are reduced through `e^j(f ∘_k g) = e^j f ∘_{k+j} e^j g`
    /// to a table lookup.
    pub fn compose(&self, k: usize, f: VCell, g: VCell) -> Result<VCell> {
        let m = self.deg(f);
        if self.deg(g) != m {
            return Err(Error::DegreeMismatch(format!(
                "{} has degree {m}, {} has degree {}",
                self.show(f),
                self.show(g),
                self.deg(g)
            )));
        }
        if k == 0 || k > m || self.dom_pow(f, k) != self.cod_pow(g, k) {
            return Err(Error::NotComposable(format!("{} ∘_{k} {}", self.show(f), self.show(g))));
        }
        let j = f.ep.min(g.ep);
        if j >= k {
            // both are e^k of the shared boundary, hence equal
            return Ok(f);
        }
        let (f0, g0) = (VCell { base: f.base, ep: f.ep - j }, VCell { base: g.base, ep: g.ep - j });
        if f0.ep != 0 || g0.ep != 0 {
            return Err(Error::Undefined(format!("non-canonical cells {} and {}", self.show(f), self.show(g))));
        }
        let r = self.lookup_table(k - j, f0.base, g0.base).ok_or_else(|| {
            Error::Undefined(format!("no table entry for {} ∘_{} {}", self.show(f0), k - j, self.show(g0)))
        })?;
        self.e_pow(VCell::stored(r), j)
    }

    /// Horizontal composite over `r`-cells: for `g ∈ L(b,c)` and `f ∈ L(a,b)`
    /// with `a, b, c` of degree `r`, pads the lower-degree argument with
    /// identities and composes along the `r`-boundary.
    pub fn mu(&self, r: usize, g: VCell, f: VCell) -> Result<VCell> {
        let (dg, df) = (self.deg(g), self.deg(f));
        if dg <= r || df <= r {
            return Err(Error::NotComposable(format!(
                "μ_{r}({}, {}) needs cells above degree {r}",
                self.show(g),
                self.show(f)
            )));
        }
        let top = dg.max(df);
        let g1 = self.e_pow(g, top - dg)?;
        let f1 = self.e_pow(f, top - df)?;
        self.compose(top - r, g1, f1)
    }

    /// Horizontal composite over objects.
    pub fn horizontal(&self, g: VCell, f: VCell) -> Result<VCell> {
        self.mu(0, g, f)
    }

    /// Source object `d^deg v`.
    pub fn source_object(&self, v: VCell) -> VCell {
        self.dom_pow(v, self.deg(v)).expect("every cell bottoms out in an object")
    }

    pub fn target_object(&self, v: VCell) -> VCell {
        self.cod_pow(v, self.deg(v)).expect("every cell bottoms out in an object")
    }

    // ---- naming --------------------------------------------------------

    pub fn id(&self, i: CellIx) -> &str {
        &self.cells[i].id
    }

    /// `id`, `e(id)` or `e^k(id)`.
    pub fn show(&self, v: VCell) -> String {
        let id = &self.cells[v.base].id;
        match v.ep {
            0 => id.clone(),
            1 => format!("e({id})"),
            k => format!("e^{k}({id})"),
        }
    }

    /// Inverse of [`Category::show`]; stored ids take precedence.
    pub fn parse(&self, s: &str) -> Result<VCell> {
        if let Some(i) = self.lookup(s) {
            return Ok(VCell::stored(i));
        }
        let (ep, inner) = if let Some(rest) = s.strip_prefix("e^") {
            let open = rest.find('(').ok_or_else(|| Error::Malformed(format!("bad cell `{s}`")))?;
            let ep: usize = rest[..open].parse().map_err(|_| Error::Malformed(format!("bad cell `{s}`")))?;
            (ep, &rest[open + 1..])
        } else if let Some(rest) = s.strip_prefix("e(") {
            (1, rest)
        } else {
            return Err(Error::Malformed(format!("unknown cell `{s}` in `{}`", self.name)));
        };
        let inner = inner.strip_suffix(')').ok_or_else(|| Error::Malformed(format!("bad cell `{s}`")))?;
        let v = self.parse(inner)?;
        self.e_pow(v, ep).map_err(|_| Error::Malformed(format!("bad cell `{s}`")))
    }

    /// Resolve `(id, epower)` as used by functor and modification files.
    pub fn resolve(&self, id: &str, epower: usize) -> Result<VCell> {
        let v = self.parse(id)?;
        self.e_pow(v, epower).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Same-named cell in another category, keeping the virtual height.
    pub fn translate(&self, v: VCell, into: &Category) -> Result<VCell> {
        let i = into
            .lookup(self.id(v.base))
            .ok_or_else(|| Error::Undefined(format!("`{}` not present in `{}`", self.id(v.base), into.name)))?;
        into.e_pow(VCell::stored(i), v.ep)
    }

    /// Raw records, for rebuilding modified copies.
    pub fn raw_parts(&self) -> (Vec<RawCell>, Vec<(String, String)>, Vec<(usize, String, String, String)>) {
        let raw = self
            .cells
            .iter()
            .map(|c| RawCell {
                id: c.id.clone(),
                degree: c.degree,
                dom: c.dom.map(|d| self.cells[d].id.clone()),
                cod: c.cod.map(|d| self.cells[d].id.clone()),
            })
            .collect();
        let ids = self.identities().map(|(z, i)| (self.id(z).to_string(), self.id(i).to_string())).collect();
        let comps = self
            .comp
            .iter()
            .map(|(&(k, f, g), &h)| (k, self.id(f).to_string(), self.id(g).to_string(), self.id(h).to_string()))
            .collect();
        (raw, ids, comps)
    }
}
