//! Incremental construction of presentations.
//!
//! [`Builder::close`] adds the missing identity cells (named `e(x)`), the
//! unit-law entries and the identity-shift entries
//! `e(f ∘_k g) = e f ∘_{k+1} e g`, and fails on any conflict with entries
//! given explicitly.

use crate::category::{Category, RawCell};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone)]
pub struct Builder {
    name: String,
    truncation: usize,
    cells: Vec<RawCell>,
    degree: HashMap<String, usize>,
    identities: BTreeMap<String, String>,
    comps: BTreeMap<(usize, String, String), String>,
}

impl Builder {
    pub fn new(name: &str, truncation: usize) -> Self {
        Builder {
            name: name.to_string(),
            truncation,
            cells: Vec::new(),
            degree: HashMap::new(),
            identities: BTreeMap::new(),
            comps: BTreeMap::new(),
        }
    }

    pub fn has(&self, id: &str) -> bool {
        self.degree.contains_key(id)
    }

    pub fn object(&mut self, id: &str) -> &mut Self {
        self.push(RawCell { id: id.into(), degree: 0, dom: None, cod: None });
        self
    }

    /// A cell one degree above its (already declared) boundaries.
    pub fn cell(&mut self, id: &str, dom: &str, cod: &str) -> &mut Self {
        let degree = self.degree.get(dom).map(|d| d + 1).unwrap_or(usize::MAX);
        self.push(RawCell { id: id.into(), degree, dom: Some(dom.into()), cod: Some(cod.into()) });
        self
    }

    fn push(&mut self, c: RawCell) {
        self.degree.insert(c.id.clone(), c.degree);
        self.cells.push(c);
    }

    /// Declare `is = e(of)`; the cell `is` is created when missing.
    pub fn identity(&mut self, of: &str, is: &str) -> &mut Self {
        if !self.has(is) {
            self.cell(is, of, of);
        }
        self.identities.insert(of.into(), is.into());
        self
    }

    pub fn compose(&mut self, k: usize, left: &str, right: &str, result: &str) -> &mut Self {
        self.comps.insert((k, left.into(), right.into()), result.into());
        self
    }

    /// Build exactly what was declared.
    pub fn build(&self) -> Result<Category> {
        if let Some(c) = self.cells.iter().find(|c| c.degree == usize::MAX) {
            return Err(Error::Malformed(format!("cell `{}` declared before its boundary", c.id)));
        }
        Category::from_parts(
            &self.name,
            self.truncation,
            self.cells.clone(),
            self.identities.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
            self.comps.iter().map(|((k, l, r), h)| (*k, l.clone(), r.clone(), h.clone())).collect(),
        )
    }

    /// Fill identities, unit-law entries and identity shifts, then build.
    pub fn close(mut self) -> Result<Category> {
        loop {
            let missing: Vec<RawCell> = self
                .cells
                .iter()
                .filter(|c| c.degree < self.truncation && !self.identities.contains_key(&c.id))
                .cloned()
                .collect();
            if missing.is_empty() {
                break;
            }
            for c in missing {
                let name = format!("e({})", c.id);
                if self.has(&name) {
                    return Err(Error::Malformed(format!("identity name `{name}` already taken")));
                }
                self.push(RawCell { id: name.clone(), degree: c.degree + 1, dom: Some(c.id.clone()), cod: Some(c.id.clone()) });
                self.identities.insert(c.id, name);
            }
        }
        let info: HashMap<String, (usize, Option<String>, Option<String>)> =
            self.cells.iter().map(|c| (c.id.clone(), (c.degree, c.dom.clone(), c.cod.clone()))).collect();
        let bound = |id: &str, k: usize, cod: bool| -> Option<String> {
            let mut cur = id.to_string();
            for _ in 0..k {
                let (_, d, c) = info.get(&cur)?;
                cur = if cod { c.clone()? } else { d.clone()? };
            }
            Some(cur)
        };
        let epow = |id: &str, k: usize, ids: &BTreeMap<String, String>| -> Option<String> {
            let mut cur = id.to_string();
            for _ in 0..k {
                cur = ids.get(&cur)?.clone();
            }
            Some(cur)
        };
        let insert = |comps: &mut BTreeMap<(usize, String, String), String>, key: (usize, String, String), val: String| -> Result<bool> {
            match comps.get(&key) {
                Some(old) if *old != val => Err(Error::Malformed(format!(
                    "conflicting composite {} ∘_{} {}: `{}` vs `{}`",
                    key.1, key.0, key.2, old, val
                ))),
                Some(_) => Ok(false),
                None => {
                    comps.insert(key, val);
                    Ok(true)
                }
            }
        };
        let ids: Vec<(String, usize)> = self.cells.iter().map(|c| (c.id.clone(), c.degree)).collect();
        for (f, m) in &ids {
            for k in 1..=*m {
                let (Some(c), Some(d)) = (bound(f, k, true), bound(f, k, false)) else { continue };
                if let Some(u) = epow(&c, k, &self.identities) {
                    insert(&mut self.comps, (k, u, f.clone()), f.clone())?;
                }
                if let Some(u) = epow(&d, k, &self.identities) {
                    insert(&mut self.comps, (k, f.clone(), u), f.clone())?;
                }
            }
        }
        loop {
            let mut changed = false;
            let entries: Vec<((usize, String, String), String)> =
                self.comps.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            for ((k, f, g), h) in entries {
                let m = info.get(&f).map(|x| x.0).unwrap_or(usize::MAX);
                if m >= self.truncation {
                    continue;
                }
                let (Some(ef), Some(eg), Some(eh)) =
                    (self.identities.get(&f), self.identities.get(&g), self.identities.get(&h))
                else {
                    continue;
                };
                changed |= insert(&mut self.comps, (k + 1, ef.clone(), eg.clone()), eh.clone())?;
            }
            if !changed {
                break;
            }
        }
        self.build()
    }
}

/// A finite 1-category given by its composition table, used as the base of
/// locally posetal 2-categories.
#[derive(Debug, Clone, Default)]
pub struct OneCategory {
    pub objects: Vec<String>,
    /// `(id, dom, cod)`.
    pub arrows: Vec<(String, String, String)>,
    pub identity: BTreeMap<String, String>,
    /// `(left, right) -> left ∘ right`.
    pub comp: BTreeMap<(String, String), String>,
}

impl OneCategory {
    pub fn object(&mut self, id: &str) {
        self.objects.push(id.into());
    }

    pub fn arrow(&mut self, id: &str, dom: &str, cod: &str) {
        self.arrows.push((id.into(), dom.into(), cod.into()));
    }

    fn ends(&self) -> HashMap<&str, (&str, &str)> {
        self.arrows.iter().map(|(a, d, c)| (a.as_str(), (d.as_str(), c.as_str()))).collect()
    }

    /// Composite `left ∘ right`, with identities handled implicitly.
    pub fn then(&self, left: &str, right: &str) -> Option<String> {
        if self.identity.values().any(|i| i == left) {
            return Some(right.to_string());
        }
        if self.identity.values().any(|i| i == right) {
            return Some(left.to_string());
        }
        self.comp.get(&(left.to_string(), right.to_string())).cloned()
    }

    /// The 1-truncated presentation.
    pub fn to_category(&self, name: &str) -> Result<Category> {
        let mut b = Builder::new(name, 1);
        self.fill(&mut b)?;
        b.close()
    }

    fn fill(&self, b: &mut Builder) -> Result<()> {
        for o in &self.objects {
            b.object(o);
        }
        for (a, d, c) in &self.arrows {
            b.cell(a, d, c);
        }
        for (o, i) in &self.identity {
            b.identity(o, i);
        }
        let ends = self.ends();
        for (f, (df, _)) in &ends {
            for (g, (_, cg)) in &ends {
                if df == cg {
                    let h = self
                        .then(f, g)
                        .ok_or_else(|| Error::Malformed(format!("missing composite {f} ∘ {g}")))?;
                    b.compose(1, f, g, &h);
                }
            }
        }
        Ok(())
    }

    /// The locally posetal 2-category whose 2-cells are the comparable
    /// pairs `u ≤ v` of parallel arrows. `le` must be a preorder compatible
    /// with composition; otherwise an error names the offending pair.
    pub fn locally_posetal(&self, name: &str, le: impl Fn(&str, &str) -> bool) -> Result<Category> {
        let mut b = Builder::new(name, 2);
        self.fill(&mut b)?;
        let ends = self.ends();
        let two = |u: &str, v: &str| if u == v { format!("e({u})") } else { format!("{u}=>{v}") };
        let mut cells2: Vec<(String, String)> = Vec::new();
        for (u, eu) in &ends {
            for (v, ev) in &ends {
                if eu == ev && le(u, v) {
                    cells2.push((u.to_string(), v.to_string()));
                }
            }
        }
        cells2.sort();
        for (u, v) in &cells2 {
            if u == v {
                b.identity(u, &two(u, v));
            } else {
                b.cell(&two(u, v), u, v);
            }
        }
        let cod_of: HashMap<&str, Vec<&(String, String)>> = {
            let mut m: HashMap<&str, Vec<&(String, String)>> = HashMap::new();
            for p in &cells2 {
                m.entry(p.0.as_str()).or_default().push(p);
            }
            m
        };
        for (u, v) in &cells2 {
            if let Some(next) = cod_of.get(v.as_str()) {
                for (_, w) in next {
                    if !le(u, w) {
                        return Err(Error::Malformed(format!("order not transitive at {u} ≤ {v} ≤ {w}")));
                    }
                    b.compose(1, &two(v, w), &two(u, v), &two(u, w));
                }
            }
        }
        for (u, v) in &cells2 {
            for (u2, v2) in &cells2 {
                let (du, _) = ends[u.as_str()];
                let (_, cu2) = ends[u2.as_str()];
                if du != cu2 {
                    continue;
                }
                let lo = self.then(u, u2).ok_or_else(|| Error::Malformed(format!("missing {u} ∘ {u2}")))?;
                let hi = self.then(v, v2).ok_or_else(|| Error::Malformed(format!("missing {v} ∘ {v2}")))?;
                if !le(&lo, &hi) {
                    return Err(Error::Malformed(format!("composition not monotone: {lo} ≰ {hi}")));
                }
                b.compose(2, &two(u, v), &two(u2, v2), &two(&lo, &hi));
            }
        }
        b.close()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate_globular, validate_strict};

    #[test]
    fn close_fills_units_and_shifts() {
        let mut b = Builder::new("arrow", 2);
        b.object("a").object("b").cell("f", "a", "b");
        let p = b.close().unwrap();
        assert!(p.lookup("e(e(a))").is_some());
        assert!(validate_globular(&p).passed());
        assert!(validate_strict(&p).passed());
    }

    #[test]
    fn close_reports_conflicts() {
        let mut b = Builder::new("bad", 1);
        b.object("a").identity("a", "1a").cell("f", "a", "a").compose(1, "1a", "f", "1a");
        assert!(b.close().is_err());
    }

    #[test]
    fn chaotic_two_cells_compose() {
        let mut c = OneCategory::default();
        c.object("x");
        c.arrow("1", "x", "x");
        c.arrow("p", "x", "x");
        c.identity.insert("x".into(), "1".into());
        c.comp.insert(("p".into(), "p".into()), "p".into());
        let p = c.locally_posetal("chaos", |_, _| true).unwrap();
        assert_eq!(p.of_degree(2).len(), 4);
        assert!(validate_strict(&p).passed());
    }
}
