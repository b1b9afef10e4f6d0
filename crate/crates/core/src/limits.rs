//! Graphs, diagrams, cones and strict (co)limits.
//!
//! A cone of level `n` with vertex `z` is a family of `(n+1)`-cells
//! `γ_g: z → D g`, one per object node, satisfying
//! `e^k γ_b = μ(D f, γ_a)` for every node `f` of degree `m` from `a` to `b`,
//! where `k = max(m, n+1) − 1 − n`. A strict limit is a cone for which
//! `f ↦ (μ(ν_g, f))_g` is a bijection from `L(z, vertex)` onto the cones at
//! `z`, at every level.

use crate::builder::Builder;
use crate::category::{Category, CellIx, VCell};
use crate::construct::{hom_category, opposite};
use crate::equivalence::Equiv;
use crate::error::{Error, Result};
use crate::functor::{check_equivalence_pair, check_functor, Functor};
use crate::presheaf::{from_hom, to_hom};
use crate::report::ValidationReport;
use crate::search_limit;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub id: String,
    pub degree: usize,
    pub dom: Option<usize>,
    pub cod: Option<usize>,
}

/// A finite globular set with no identities and no composition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    pub nodes: Vec<GraphNode>,
}

impl Graph {
    /// Nodes as `(id, boundary)`; boundaries must precede their cells.
    pub fn from_nodes(nodes: &[(&str, Option<(&str, &str)>)]) -> Result<Graph> {
        let mut g = Graph::default();
        for (id, bd) in nodes {
            g.push(id, *bd)?;
        }
        Ok(g)
    }

    pub fn push(&mut self, id: &str, boundary: Option<(&str, &str)>) -> Result<usize> {
        if self.lookup(id).is_some() {
            return Err(Error::Malformed(format!("duplicate node `{id}`")));
        }
        let node = match boundary {
            None => GraphNode { id: id.into(), degree: 0, dom: None, cod: None },
            Some((d, c)) => {
                let find = |x: &str| self.lookup(x).ok_or_else(|| Error::Malformed(format!("node `{id}`: unknown boundary `{x}`")));
                let (d, c) = (find(d)?, find(c)?);
                if self.nodes[d].degree != self.nodes[c].degree {
                    return Err(Error::Malformed(format!("node `{id}`: boundaries of different degree")));
                }
                GraphNode { id: id.into(), degree: self.nodes[d].degree + 1, dom: Some(d), cod: Some(c) }
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    pub fn lookup(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn object_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].degree == 0).collect()
    }

    fn source_node(&self, mut i: usize) -> usize {
        while let Some(d) = self.nodes[i].dom {
            i = d;
        }
        i
    }

    fn target_node(&self, mut i: usize) -> usize {
        while let Some(c) = self.nodes[i].cod {
            i = c;
        }
        i
    }

    /// `d² = dc` and `c² = cd`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for n in &self.nodes {
            let (Some(d), Some(c)) = (n.dom, n.cod) else { continue };
            let (dn, cn) = (&self.nodes[d], &self.nodes[c]);
            if dn.degree == 0 {
                continue;
            }
            rep.check("graph-globular", dn.dom == cn.dom && dn.cod == cn.cod, &[&n.id]);
        }
        rep
    }

    /// Degree-1 nodes reversed.
    pub fn opposite(&self) -> Graph {
        let mut g = self.clone();
        for n in g.nodes.iter_mut().filter(|n| n.degree == 1) {
            std::mem::swap(&mut n.dom, &mut n.cod);
        }
        g
    }
}

/// A graph morphism into a category, preserving degree, `d` and `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub graph: Graph,
    pub target: Arc<Category>,
    pub assignment: Vec<VCell>,
}

impl Diagram {
    pub fn new(graph: Graph, target: Arc<Category>, assignment: Vec<VCell>) -> Result<Diagram> {
        let bad = graph.validate();
        if !bad.passed() {
            return Err(Error::Malformed(format!("graph is not globular: {:?}", bad.violated_laws())));
        }
        if assignment.len() != graph.nodes.len() {
            return Err(Error::Malformed(format!("{} nodes, {} assigned cells", graph.nodes.len(), assignment.len())));
        }
        for (n, &v) in graph.nodes.iter().zip(&assignment) {
            let p = target.as_ref();
            if p.deg(v) != n.degree {
                return Err(Error::DegreeMismatch(format!("node `{}` ↦ {} changes degree", n.id, p.show(v))));
            }
            if let (Some(d), Some(c)) = (n.dom, n.cod) {
                if p.dom(v) != Some(assignment[d]) || p.cod(v) != Some(assignment[c]) {
                    return Err(Error::Malformed(format!("node `{}` ↦ {} breaks boundaries", n.id, p.show(v))));
                }
            }
        }
        Ok(Diagram { graph, target, assignment })
    }

    /// Assignment by cell names.
    pub fn from_names(graph: Graph, target: Arc<Category>, names: &[&str]) -> Result<Diagram> {
        let assignment = names.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
        Diagram::new(graph, target, assignment)
    }

    /// The same diagram in the opposite category, over the opposite graph.
    pub fn opposite(&self) -> Result<Diagram> {
        let op = Arc::new(opposite(&self.target));
        let assignment = self.assignment.iter().map(|&v| op.parse(&self.target.show(v))).collect::<Result<Vec<_>>>()?;
        Diagram::new(self.graph.opposite(), op, assignment)
    }
}

/// `Δ(a)`: a degree-`n` node goes to `e^n a`.
pub fn constant_diagram(p: &Arc<Category>, a: CellIx, graph: &Graph) -> Result<Diagram> {
    let assignment = graph.nodes.iter().map(|n| p.e_pow(VCell::stored(a), n.degree)).collect::<Result<Vec<_>>>()?;
    Diagram::new(graph.clone(), p.clone(), assignment)
}

/// A cone: its vertex and one edge per object node, in node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub vertex: CellIx,
    pub edges: Vec<VCell>,
}

impl Cone {
    /// The edge at any node: `μ(D f, ν_a)` above the object nodes.
    pub fn edge_at(&self, d: &Diagram, node: usize) -> Result<VCell> {
        let objs = d.graph.object_nodes();
        let pos = |g: usize| objs.iter().position(|&o| o == g).expect("object node");
        if d.graph.nodes[node].degree == 0 {
            return Ok(self.edges[pos(node)]);
        }
        let a = d.graph.source_node(node);
        d.target.horizontal(d.assignment[node], self.edges[pos(a)])
    }
}

/// Per vertex `z` and level `n`: `|L(z, vertex)ⁿ|` and the number of
/// cones of level `n` at `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCount {
    pub level: usize,
    pub arrows: usize,
    pub cones: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCertificate {
    pub z: String,
    pub levels: Vec<LevelCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitCertificate {
    pub vertex: String,
    pub edges: Vec<(String, String)>,
    pub per_object: Vec<VertexCertificate>,
}

fn cone_condition(d: &Diagram, fam: &[VCell], level: usize, eq: Option<&mut Equiv<'_>>) -> bool {
    let p = d.target.as_ref();
    let objs = d.graph.object_nodes();
    let pos = |g: usize| objs.iter().position(|&o| o == g).expect("object node");
    let mut eq = eq;
    d.graph.nodes.iter().enumerate().filter(|(_, n)| n.degree > 0).all(|(i, n)| {
        let (a, b) = (d.graph.source_node(i), d.graph.target_node(i));
        let k = n.degree.max(level + 1) - 1 - level;
        let (Ok(lhs), Ok(rhs)) = (p.horizontal(d.assignment[i], fam[pos(a)]), p.e_pow(fam[pos(b)], k)) else {
            return false;
        };
        match eq.as_deref_mut() {
            Some(e) => lhs == rhs || (p.deg(lhs) == p.deg(rhs) && e.equiv(lhs, rhs)),
            None => lhs == rhs,
        }
    })
}

/// Families of cells `z → targets[i]`, level by level, each level built
/// over parallel pairs of the previous one. `keep` filters each level.
fn families(
    p: &Category,
    z: CellIx,
    targets: &[VCell],
    top: usize,
    mut keep: impl FnMut(&[VCell], usize) -> bool,
    budget: &mut u64,
) -> Result<Vec<Vec<Vec<VCell>>>> {
    let zv = VCell::stored(z);
    let mut out: Vec<Vec<Vec<VCell>>> = Vec::new();
    for n in 0..=top {
        let ends: Vec<(Vec<VCell>, Vec<VCell>)> = if n == 0 {
            vec![(vec![zv; targets.len()], targets.to_vec())]
        } else {
            let prev = &out[n - 1];
            let mut pairs = Vec::new();
            for x in prev {
                for y in prev {
                    let parallel = n == 1
                        || x.iter().zip(y).all(|(&u, &v)| p.dom(u) == p.dom(v) && p.cod(u) == p.cod(v));
                    if parallel {
                        pairs.push((x.clone(), y.clone()));
                    }
                }
            }
            pairs
        };
        let mut level = Vec::new();
        for (xs, ys) in ends {
            let choices: Vec<Vec<VCell>> = xs.iter().zip(&ys).map(|(&x, &y)| p.hom_v(x, y)).collect();
            let mut idx = vec![0usize; choices.len()];
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            loop {
                if *budget == 0 {
                    return Err(Error::SearchLimit(format!("cone enumeration at {}", p.id(z))));
                }
                *budget -= 1;
                let fam: Vec<VCell> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                if keep(&fam, n) {
                    level.push(fam);
                }
                let mut j = 0;
                while j < idx.len() {
                    idx[j] += 1;
                    if idx[j] < choices[j].len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == idx.len() {
                    break;
                }
            }
        }
        out.push(level);
    }
    Ok(out)
}

fn top_level(p: &Category) -> usize {
    p.truncation().saturating_sub(1)
}

/// Strict cones at `z`, by level.
pub fn cones_at(d: &Diagram, z: CellIx) -> Result<Vec<Vec<Vec<VCell>>>> {
    let p = d.target.as_ref();
    let targets: Vec<VCell> = d.graph.object_nodes().iter().map(|&g| d.assignment[g]).collect();
    let mut budget = search_limit();
    families(p, z, &targets, top_level(p), |fam, n| cone_condition(d, fam, n, None), &mut budget)
}

/// Cells of `L(z, v)` by level, as one-element families.
fn arrows_at(p: &Category, z: CellIx, v: CellIx, budget: &mut u64) -> Result<Vec<Vec<Vec<VCell>>>> {
    families(p, z, &[VCell::stored(v)], top_level(p), |_, _| true, budget)
}

fn mediate(p: &Category, edges: &[VCell], f: VCell) -> Result<Vec<VCell>> {
    edges.iter().map(|&nu| p.horizontal(nu, f)).collect()
}

/// Search vertices and cones for a strict limit; the certificate records,
/// for every object `z` and level, that mediation is a bijection.
pub fn find_strict_limit(d: &Diagram) -> Result<Option<(Cone, LimitCertificate)>> {
    let p = d.target.as_ref();
    let mut cones: BTreeMap<CellIx, Vec<Vec<Vec<VCell>>>> = BTreeMap::new();
    for &z in p.objects() {
        cones.insert(z, cones_at(d, z)?);
    }
    let mut budget = search_limit();
    for &v in p.objects() {
        let arrows: Vec<Vec<Vec<Vec<VCell>>>> =
            p.objects().iter().map(|&z| arrows_at(p, z, v, &mut budget)).collect::<Result<_>>()?;
        for nu in &cones[&v][0] {
            let mut per_object = Vec::new();
            let mut universal = true;
            for (&z, arrows) in p.objects().iter().zip(&arrows) {
                let mut levels = Vec::new();
                for (n, (ar, cs)) in arrows.iter().zip(&cones[&z]).enumerate() {
                    let targets: BTreeSet<&Vec<VCell>> = cs.iter().collect();
                    let images: BTreeSet<Vec<VCell>> =
                        ar.iter().map(|f| mediate(p, nu, f[0])).collect::<Result<_>>()?;
                    let bijective = images.len() == ar.len()
                        && images.len() == targets.len()
                        && images.iter().all(|i| targets.contains(i));
                    levels.push(LevelCount { level: n, arrows: ar.len(), cones: cs.len() });
                    if !bijective {
                        universal = false;
                        break;
                    }
                }
                if !universal {
                    break;
                }
                per_object.push(VertexCertificate { z: p.id(z).to_string(), levels });
            }
            if universal {
                let names = d.graph.object_nodes().iter().zip(nu).map(|(&g, &e)| (d.graph.nodes[g].id.clone(), p.show(e))).collect();
                let cert = LimitCertificate { vertex: p.id(v).to_string(), edges: names, per_object };
                return Ok(Some((Cone { vertex: v, edges: nu.clone() }, cert)));
            }
        }
    }
    Ok(None)
}

/// A strict colimit: a limit of the opposite diagram, translated back.
pub fn find_strict_colimit(d: &Diagram) -> Result<Option<(Cone, LimitCertificate)>> {
    let op = d.opposite()?;
    let Some((cone, cert)) = find_strict_limit(&op)? else { return Ok(None) };
    let p = d.target.as_ref();
    let edges = cone.edges.iter().map(|&e| p.parse(&op.target.show(e))).collect::<Result<Vec<_>>>()?;
    let vertex = p.lookup(op.target.id(cone.vertex)).expect("same ids");
    Ok(Some((Cone { vertex, edges }, cert)))
}

fn family_name(p: &Category, fam: &[VCell]) -> String {
    let parts: Vec<String> = fam.iter().map(|&v| p.show(v)).collect();
    format!("⟨{}⟩", parts.join(","))
}

/// `Cones(z)` as a category with componentwise structure. Weak cones
/// satisfy the level-0 condition up to `~` and carry no higher squares.
pub fn cone_category(d: &Diagram, z: CellIx, weak: bool) -> Result<Category> {
    let p = d.target.as_ref();
    let targets: Vec<VCell> = d.graph.object_nodes().iter().map(|&g| d.assignment[g]).collect();
    let mut budget = search_limit();
    let mut eq = Equiv::new(p);
    let levels = families(
        p,
        z,
        &targets,
        top_level(p),
        |fam, n| match (weak, n) {
            (false, _) => cone_condition(d, fam, n, None),
            (true, 0) => cone_condition(d, fam, 0, Some(&mut eq)),
            (true, _) => true,
        },
        &mut budget,
    )?;
    let mut b = Builder::new(&format!("Cones({})", p.id(z)), top_level(p));
    let mut known: BTreeSet<Vec<VCell>> = BTreeSet::new();
    for (n, level) in levels.iter().enumerate() {
        for fam in level {
            let name = family_name(p, fam);
            if n == 0 {
                b.object(&name);
            } else {
                let (dx, cx): (Vec<VCell>, Vec<VCell>) = fam.iter().map(|&v| (p.dom(v).unwrap(), p.cod(v).unwrap())).unzip();
                b.cell(&name, &family_name(p, &dx), &family_name(p, &cx));
            }
            known.insert(fam.clone());
        }
    }
    for level in &levels {
        for fam in level {
            if let Ok(efam) = fam.iter().map(|&v| p.e(v)).collect::<Result<Vec<_>>>() {
                if known.contains(&efam) {
                    b.identity(&family_name(p, fam), &family_name(p, &efam));
                }
            }
        }
    }
    for level in levels.iter().skip(1) {
        for f in level {
            for g in level {
                let m = p.deg(f[0]) - 1;
                for k in 1..=m {
                    let Ok(h) = f.iter().zip(g).map(|(&x, &y)| p.compose(k, x, y)).collect::<Result<Vec<_>>>() else {
                        continue;
                    };
                    if !known.contains(&h) {
                        return Err(Error::ClosureFailure(format!(
                            "{} ∘_{k} {} leaves the cones",
                            family_name(p, f),
                            family_name(p, g)
                        )));
                    }
                    b.compose(k, &family_name(p, f), &family_name(p, g), &family_name(p, &h));
                }
            }
        }
    }
    b.build()
}

/// `Φ_z: L(z, vertex) → Cones(z)`, `f ↦ (μ(ν_g, f))_g`.
pub fn mediation_functor(d: &Diagram, cone: &Cone, z: CellIx, cones: Arc<Category>) -> Result<Functor> {
    let p = d.target.as_ref();
    let hom = Arc::new(hom_category(p, z, cone.vertex)?);
    let h = hom.clone();
    let cc = cones.clone();
    Functor::from_fn(&format!("Φ_{}", p.id(z)), hom, cones, move |i| {
        let f = from_hom(p, &h, VCell::stored(i))?;
        let fam = mediate(p, &cone.edges, f)?;
        cc.parse(&family_name(p, &fam))
            .map_err(|_| Error::HypothesisNotMet(format!("{} is not mediated to a cone", p.show(f))))
    })
}

/// Per object `z`: the given `Ψ_z: Cones(z) → L(z, vertex)` and `Φ_z` form
/// an equivalence. Witnesses are in object order.
pub fn check_weak_limit(d: &Diagram, cone: &Cone, witnesses: &[Functor]) -> Result<bool> {
    let p = d.target.as_ref();
    if cone.edges.len() != d.graph.object_nodes().len() {
        return Err(Error::MalformedWitness(format!("{} edges for {} object nodes", cone.edges.len(), d.graph.object_nodes().len())));
    }
    if witnesses.len() != p.objects().len() {
        return Err(Error::MalformedWitness(format!("{} witnesses for {} objects", witnesses.len(), p.objects().len())));
    }
    let mut eq = Equiv::new(p);
    if !cone_condition(d, &cone.edges, 0, Some(&mut eq)) {
        return Ok(false);
    }
    for (&z, psi) in p.objects().iter().zip(witnesses) {
        let cones = Arc::new(cone_category(d, z, true)?);
        let phi = match mediation_functor(d, cone, z, cones) {
            Ok(f) => f,
            Err(Error::HypothesisNotMet(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if *psi.source != *phi.target || *psi.target != *phi.source {
            return Err(Error::MalformedWitness(format!("witness at {} has the wrong type", p.id(z))));
        }
        if !check_functor(psi, false).passed() || check_equivalence_pair(&phi, psi)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inverses of the mediation functors of a strict limit.
pub fn strict_limit_witnesses(d: &Diagram, cone: &Cone, weak: bool) -> Result<Vec<Functor>> {
    let p = d.target.as_ref();
    p.objects()
        .iter()
        .map(|&z| {
            let cones = Arc::new(cone_category(d, z, weak)?);
            let phi = mediation_functor(d, cone, z, cones.clone())?;
            let mut inv = vec![None; cones.len()];
            for (i, &v) in phi.map.iter().enumerate() {
                if v.ep == 0 {
                    inv[v.base] = Some(VCell::stored(i));
                }
            }
            let map = inv
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::HypothesisNotMet(format!("{} has no preimage", cones.id(i)))))
                .collect::<Result<Vec<_>>>()?;
            Functor::new(&format!("Ψ_{}", p.id(z)), cones.clone(), phi.source.clone(), map)
        })
        .collect()
}

/// Translate a hom cell to the ambient category (re-exported for callers
/// that build witnesses by name).
pub fn hom_cell(p: &Category, hom: &Category, v: VCell) -> Result<VCell> {
    to_hom(p, hom, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, map_id};
    use crate::validate::validate_strict;

    fn arc(p: Category) -> Arc<Category> {
        Arc::new(p)
    }

    fn pair() -> Graph {
        Graph::from_nodes(&[("l", None), ("r", None)]).unwrap()
    }

    #[test]
    fn graph_globularity() {
        let g = Graph::from_nodes(&[("a", None), ("b", None), ("f", Some(("a", "b"))), ("g", Some(("a", "b"))), ("α", Some(("f", "g")))]).unwrap();
        assert!(g.validate().passed());
        let mut bad = Graph::from_nodes(&[("a", None), ("b", None), ("f", Some(("a", "b"))), ("g", Some(("b", "a")))]).unwrap();
        bad.push("α", Some(("f", "g"))).unwrap();
        assert!(!bad.validate().passed());
    }

    #[test]
    fn constant_diagrams() {
        let p = arc(fixtures::iso1());
        let a = p.lookup("a").unwrap();
        let par = Graph::from_nodes(&[("x", None), ("y", None), ("u", Some(("x", "y"))), ("v", Some(("x", "y")))]).unwrap();
        let d = constant_diagram(&p, a, &par).unwrap();
        assert_eq!(d.assignment.iter().map(|&v| p.show(v)).collect::<Vec<_>>(), vec!["a", "a", "1a", "1a"]);
        assert!(constant_diagram(&p, a, &Graph::default()).unwrap().assignment.is_empty());
    }

    #[test]
    fn binary_product_of_posets() {
        let p = arc(fixtures::product_posets());
        let d = Diagram::from_names(pair(), p.clone(), &["2", "2"]).unwrap();
        let (cone, cert) = find_strict_limit(&d).unwrap().unwrap();
        assert_eq!(p.id(cone.vertex), "4");
        let edges: BTreeSet<String> = cone.edges.iter().map(|&e| p.show(e)).collect();
        assert_eq!(edges, BTreeSet::from([map_id("4", "2", &[0, 1, 0, 1]), map_id("4", "2", &[0, 0, 1, 1])]));
        // 2-cell mediators: one per pair of componentwise 2-cells
        let at2 = cert.per_object.iter().find(|c| c.z == "2").unwrap();
        assert_eq!(at2.levels[0], LevelCount { level: 0, arrows: 9, cones: 9 });
        assert_eq!(at2.levels[1].arrows, at2.levels[1].cones);
    }

    #[test]
    fn equalizer_of_a_two_cell() {
        let p = arc(fixtures::equalizer_posets());
        let g = Graph::from_nodes(&[("A", None), ("B", None), ("F", Some(("A", "B"))), ("G", Some(("A", "B"))), ("α", Some(("F", "G")))])
            .unwrap();
        let (f, gg) = (map_id("3", "2", &[0, 0, 1]), map_id("3", "2", &[0, 1, 1]));
        let alpha = format!("{f}=>{gg}");
        let d = Diagram::from_names(g, p.clone(), &["3", "2", &f, &gg, &alpha]).unwrap();
        let (cone, _) = find_strict_limit(&d).unwrap().unwrap();
        assert_eq!(p.id(cone.vertex), "2");
        assert_eq!(p.show(cone.edges[0]), map_id("2", "3", &[0, 2]));
        assert_eq!(p.show(cone.edges[1]), map_id("2", "2", &[0, 1]));
    }

    #[test]
    fn no_cone_means_no_limit() {
        let p = arc(fixtures::discrete(2));
        let span = Graph::from_nodes(&[("l", None), ("m", None), ("r", None), ("u", Some(("m", "l"))), ("v", Some(("m", "r")))]).unwrap();
        let d = Diagram::from_names(span, p, &["x0", "x0", "x0", "e(x0)", "e(x0)"]);
        assert!(d.is_ok());
        let p = arc(fixtures::discrete(2));
        let d = Diagram::from_names(pair(), p, &["x0", "x1"]).unwrap();
        assert!(find_strict_limit(&d).unwrap().is_none());
    }

    #[test]
    fn colimit_of_pair_is_coproduct_in_opposite_sense() {
        let p = arc(fixtures::product_posets());
        // 1 is terminal: the empty-shaped colimit does not exist, the limit does
        let d = Diagram::new(Graph::default(), p.clone(), vec![]).unwrap();
        let (cone, _) = find_strict_limit(&d).unwrap().unwrap();
        assert_eq!(p.id(cone.vertex), "1");
        assert!(find_strict_colimit(&d).unwrap().is_none());
    }

    #[test]
    fn cone_categories_are_strict() {
        let p = arc(fixtures::product_posets());
        let d = Diagram::from_names(pair(), p.clone(), &["2", "2"]).unwrap();
        for &z in p.objects() {
            let c = cone_category(&d, z, false).unwrap();
            let r = validate_strict(&c);
            assert!(r.passed(), "{} {:?}", c.name(), r.violations.iter().take(3).collect::<Vec<_>>());
        }
    }

    #[test]
    fn strict_limit_passes_weak_check() {
        let p = arc(fixtures::product_posets());
        let d = Diagram::from_names(pair(), p.clone(), &["2", "2"]).unwrap();
        let (cone, _) = find_strict_limit(&d).unwrap().unwrap();
        let w = strict_limit_witnesses(&d, &cone, true).unwrap();
        assert!(check_weak_limit(&d, &cone, &w).unwrap());
    }

    fn weak_pullback() -> (Diagram, Cone) {
        let p = arc(fixtures::weak_pullback_sets());
        let g = Graph::from_nodes(&[("1", None), ("0", None), ("2", None), ("x", Some(("1", "0"))), ("y", Some(("2", "0")))]).unwrap();
        let (x, y) = (map_id("1", "X", &[0]), map_id("1", "X", &[1]));
        let d = Diagram::from_names(g, p.clone(), &["1", "X", "1", &x, &y]).unwrap();
        let edges = [map_id("P", "1", &[0, 0]), map_id("P", "X", &[0, 1]), map_id("P", "1", &[0, 0])];
        let cone = Cone { vertex: p.lookup("P").unwrap(), edges: edges.iter().map(|s| p.parse(s).unwrap()).collect() };
        (d, cone)
    }

    #[test]
    fn weak_pullback_of_points() {
        let (d, cone) = weak_pullback();
        // no strict cone at all: c0 ≠ c1
        assert!(find_strict_limit(&d).unwrap().is_none());
        let w = strict_limit_witnesses(&d, &cone, true).unwrap();
        assert!(check_weak_limit(&d, &cone, &w).unwrap());
    }

    #[test]
    fn wrong_weak_witness_rejected() {
        let (d, cone) = weak_pullback();
        let mut w = strict_limit_witnesses(&d, &cone, true).unwrap();
        let last = w.len() - 1;
        let f = &mut w[last];
        // send every cone to an object of the hom
        let obj = f.target.cells_at(0)[0];
        f.map.iter_mut().for_each(|v| *v = obj);
        assert!(!check_weak_limit(&d, &cone, &w).unwrap());
    }
}
