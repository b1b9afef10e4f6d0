//! Generators for the reference corpus.

use crate::builder::{Builder, OneCategory};
use crate::category::Category;
use crate::error::Result;

/// Two objects with mutually inverse arrows `f: a → b`, `g: b → a`.
pub fn iso1() -> Category {
    let mut b = Builder::new("Iso1", 1);
    b.object("a").object("b").identity("a", "1a").identity("b", "1b");
    b.cell("f", "a", "b").cell("g", "b", "a");
    b.compose(1, "g", "f", "1a").compose(1, "f", "g", "1b");
    b.close().expect("Iso1 is well formed")
}

/// `f, g: a → b` and a 2-cell `σ: f ⇒ g`.
pub fn walking2() -> Category {
    let mut b = Builder::new("Walking2", 2);
    b.object("a").object("b").identity("a", "1a").identity("b", "1b");
    b.cell("f", "a", "b").cell("g", "a", "b").cell("σ", "f", "g");
    b.close().expect("Walking2 is well formed")
}

/// Walking2 with a second parallel 2-cell `τ: f ⇒ g`.
pub fn walking2_parallel() -> Category {
    let mut b = Builder::new("Walking2²", 2);
    b.object("a").object("b").identity("a", "1a").identity("b", "1b");
    b.cell("f", "a", "b").cell("g", "a", "b").cell("σ", "f", "g").cell("τ", "f", "g");
    b.close().expect("Walking2² is well formed")
}

/// One object, one 1-cell, 2-cells `{1, t}` with `t ∘₁ t = t ∘₂ t = 1`.
pub fn bz2() -> Category {
    bz2_with("BZ2", "1")
}

/// BZ2 with a chosen value for `t ∘₂ t`; anything but `1` breaks interchange.
pub fn bz2_with(name: &str, tt2: &str) -> Category {
    let mut b = Builder::new(name, 2);
    b.object("*").identity("*", "id").identity("id", "1").cell("t", "id", "id");
    b.compose(1, "t", "t", "1").compose(2, "t", "t", tt2);
    b.close().expect("BZ2 is well formed")
}

/// The 1-category underlying WalkEq2: `g ∘ f = p`, `f ∘ g = q` with `p, q`
/// idempotent and absorbed by `f` and `g`.
pub fn walkeq2_base() -> OneCategory {
    let mut c = OneCategory::default();
    c.object("a");
    c.object("b");
    for (x, d, k) in [("1a", "a", "a"), ("p", "a", "a"), ("1b", "b", "b"), ("q", "b", "b"), ("f", "a", "b"), ("g", "b", "a")] {
        c.arrow(x, d, k);
    }
    c.identity.insert("a".into(), "1a".into());
    c.identity.insert("b".into(), "1b".into());
    for (l, r, h) in [
        ("g", "f", "p"),
        ("f", "g", "q"),
        ("p", "p", "p"),
        ("q", "q", "q"),
        ("f", "p", "f"),
        ("q", "f", "f"),
        ("p", "g", "g"),
        ("g", "q", "g"),
    ] {
        c.comp.insert((l.into(), r.into()), h.into());
    }
    c
}

/// A walking equivalence whose unit and counit are invertible 2-cells but
/// not identities: `a ~ b` needs a witness of depth 2.
pub fn walkeq2() -> Category {
    walkeq2_base().locally_posetal("WalkEq2", |_, _| true).expect("WalkEq2 is well formed")
}

/// A single arrow `f: a → b`.
pub fn free_arrow() -> Category {
    let mut b = Builder::new("Arrow", 1);
    b.object("a").object("b").identity("a", "1a").identity("b", "1b").cell("f", "a", "b");
    b.close().expect("Arrow is well formed")
}

/// `n` objects and their identities, truncated at 1.
pub fn discrete(n: usize) -> Category {
    let mut b = Builder::new(&format!("Discrete{n}"), 1);
    for i in 0..n {
        b.object(&format!("x{i}"));
    }
    b.close().expect("discrete category is well formed")
}

/// One object with identities only, truncated at `n`.
pub fn point(n: usize) -> Category {
    let mut b = Builder::new(&format!("Point{n}"), n);
    b.object("*");
    b.close().expect("point is well formed")
}

/// Id of the `rows × cols` matrix over F2 as a map `V{cols} → V{rows}`.
pub fn matrix_id(cols: usize, rows: usize, bits: u32) -> String {
    let s: String = (0..rows * cols).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect();
    format!("V{cols}->V{rows}[{s}]")
}

/// Entry `(r, c)` of a row-major bit-packed matrix with `cols` columns.
fn at(bits: u32, cols: usize, r: usize, c: usize) -> u32 {
    bits >> (r * cols + c) & 1
}

/// `m (k×j) · n (j×i)` over F2.
pub fn matmul(m: u32, n: u32, k: usize, j: usize, i: usize) -> u32 {
    let mut out = 0;
    for r in 0..k {
        for c in 0..i {
            let v = (0..j).fold(0, |acc, t| acc ^ (at(m, j, r, t) & at(n, i, t, c)));
            out |= v << (r * i + c);
        }
    }
    out
}

pub fn transpose(m: u32, rows: usize, cols: usize) -> u32 {
    let mut out = 0;
    for r in 0..rows {
        for c in 0..cols {
            out |= at(m, cols, r, c) << (c * rows + r);
        }
    }
    out
}

pub fn identity_matrix(n: usize) -> u32 {
    (0..n).fold(0, |acc, i| acc | 1 << (i * n + i))
}

/// Skeleton of finite-dimensional F2 vector spaces `V0..Vd`, with
/// `hom(Vi, Vj)` all `j × i` matrices, truncated at `truncation ≥ 1`.
pub fn vecf2(d: usize, truncation: usize) -> Category {
    let name = if truncation == 1 { format!("VecF2_d{d}") } else { format!("VecF2_d{d}_N{truncation}") };
    let mut b = Builder::new(&name, truncation);
    for i in 0..=d {
        b.object(&format!("V{i}"));
    }
    for i in 0..=d {
        for j in 0..=d {
            for m in 0..1u32 << (i * j) {
                b.cell(&matrix_id(i, j, m), &format!("V{i}"), &format!("V{j}"));
            }
        }
        b.identity(&format!("V{i}"), &matrix_id(i, i, identity_matrix(i)));
    }
    for i in 0..=d {
        for j in 0..=d {
            for k in 0..=d {
                for n in 0..1u32 << (i * j) {
                    for m in 0..1u32 << (j * k) {
                        let h = matmul(m, n, k, j, i);
                        b.compose(1, &matrix_id(j, k, m), &matrix_id(i, j, n), &matrix_id(i, k, h));
                    }
                }
            }
        }
    }
    b.close().expect("VecF2 is well formed")
}

/// A finite poset on `0..n` given by its order relation.
#[derive(Debug, Clone)]
pub struct Poset {
    pub name: String,
    pub n: usize,
    pub le: Vec<Vec<bool>>,
}

impl Poset {
    pub fn from_relation(name: &str, n: usize, le: impl Fn(usize, usize) -> bool) -> Poset {
        Poset { name: name.into(), n, le: (0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect() }
    }

    pub fn chain(name: &str, n: usize) -> Poset {
        Poset::from_relation(name, n, |i, j| i <= j)
    }

    pub fn discrete(name: &str, n: usize) -> Poset {
        Poset::from_relation(name, n, |i, j| i == j)
    }

    /// The square `2 × 2`, elements indexed by two bits.
    pub fn square(name: &str) -> Poset {
        Poset::from_relation(name, 4, |i, j| i & j == i)
    }

    /// Monotone maps into `other`, as value lists.
    pub fn monotone_maps(&self, other: &Poset) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n);
        fn go(s: &Poset, o: &Poset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let i = cur.len();
            if i == s.n {
                out.push(cur.clone());
                return;
            }
            for v in 0..o.n {
                if (0..i).all(|j| (!s.le[j][i] || o.le[cur[j]][v]) && (!s.le[i][j] || o.le[v][cur[j]])) {
                    cur.push(v);
                    go(s, o, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, other, &mut cur, &mut out);
        out
    }
}

/// Id of a map between named finite structures.
pub fn map_id(src: &str, tgt: &str, values: &[usize]) -> String {
    let v: String = values.iter().map(|&x| char::from_digit(x as u32, 36).unwrap()).collect();
    format!("{src}>{tgt}:{v}")
}

fn maps_category(objects: &[Poset], maps: impl Fn(&Poset, &Poset) -> Vec<Vec<usize>>) -> OneCategory {
    let mut c = OneCategory::default();
    let mut all: Vec<(String, usize, usize, Vec<usize>)> = Vec::new();
    for (a, pa) in objects.iter().enumerate() {
        c.object(&pa.name);
        for (b, pb) in objects.iter().enumerate() {
            for m in maps(pa, pb) {
                let id = map_id(&pa.name, &pb.name, &m);
                c.arrow(&id, &pa.name, &pb.name);
                all.push((id, a, b, m));
            }
        }
        c.identity.insert(pa.name.clone(), map_id(&pa.name, &pa.name, &(0..pa.n).collect::<Vec<_>>()));
    }
    for (f, fa, fb, fm) in &all {
        for (g, ga, gb, gm) in &all {
            if gb == fa {
                let h: Vec<usize> = gm.iter().map(|&x| fm[x]).collect();
                c.comp.insert((f.clone(), g.clone()), map_id(&objects[*ga].name, &objects[*fb].name, &h));
            }
        }
    }
    c
}

fn parse_values(id: &str) -> Vec<usize> {
    let v = id.rsplit(':').next().unwrap_or("");
    v.chars().map(|c| c.to_digit(36).unwrap() as usize).collect()
}

fn target_name(id: &str) -> &str {
    let (_, rest) = id.split_once('>').unwrap();
    rest.rsplit_once(':').unwrap().0
}

/// Posets, monotone maps and the pointwise order as 2-cells.
pub fn poset_2category(name: &str, objects: &[Poset]) -> Result<Category> {
    let base = maps_category(objects, |a, b| a.monotone_maps(b));
    let by_name: std::collections::HashMap<&str, &Poset> = objects.iter().map(|p| (p.name.as_str(), p)).collect();
    base.locally_posetal(name, |u, v| {
        let tgt = by_name[target_name(u)];
        let (x, y) = (parse_values(u), parse_values(v));
        x.iter().zip(&y).all(|(&i, &j)| tgt.le[i][j])
    })
}

/// Finite sets, all functions, and exactly one 2-cell between parallel
/// functions.
pub fn chaotic_sets(name: &str, sets: &[(&str, usize)]) -> Result<Category> {
    let objects: Vec<Poset> = sets.iter().map(|(n, k)| Poset::discrete(n, *k)).collect();
    let base = maps_category(&objects, |a, b| all_functions(a.n, b.n));
    base.locally_posetal(name, |_, _| true)
}

fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    if m == 0 && n > 0 {
        return Vec::new();
    }
    out
}

/// `{1, 2, 2×2}` with monotone maps: `2×2` is the product of `2` with itself.
pub fn product_posets() -> Category {
    poset_2category("Posets{1,2,4}", &[Poset::chain("1", 1), Poset::chain("2", 2), Poset::square("4")])
        .expect("poset fixture is well formed")
}

/// Six posets for the equalizer of a 2-cell: `∅, 1, D2, 2, 3, 1+2`.
pub fn equalizer_posets() -> Category {
    let one_plus_two = Poset::from_relation("1+2", 3, |i, j| i == j || (i == 1 && j == 2));
    poset_2category(
        "Posets6",
        &[
            Poset::chain("∅", 0),
            Poset::chain("1", 1),
            Poset::discrete("D2", 2),
            Poset::chain("2", 2),
            Poset::chain("3", 3),
            one_plus_two,
        ],
    )
    .expect("poset fixture is well formed")
}

/// Chaotic sets `1`, `X = {c0, c1}` and `P = {p0, p1}`; `P` collects the
/// 5-tuples `(*, *, c, ·, ·)` of the weak pullback of `1 → X ← 1`.
pub fn weak_pullback_sets() -> Category {
    chaotic_sets("ChaoticSets", &[("1", 1), ("X", 2), ("P", 2)]).expect("set fixture is well formed")
}

/// The fixtures that every law check runs over.
pub fn corpus() -> Vec<Category> {
    vec![
        iso1(),
        walking2(),
        bz2(),
        walkeq2(),
        free_arrow(),
        discrete(3),
        point(0),
        point(2),
        vecf2(1, 1),
        vecf2(2, 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vecf2_sizes() {
        let v1 = vecf2(1, 1);
        assert_eq!(v1.objects().len(), 2);
        let a = v1.lookup("V1").unwrap();
        assert_eq!(v1.hom(a, a).len(), 2);
        let v2 = vecf2(2, 1);
        let (x1, x2) = (v2.lookup("V1").unwrap(), v2.lookup("V2").unwrap());
        assert_eq!(v2.hom(x2, x1).len(), 4);
        assert_eq!(v2.hom(x2, x2).len(), 16);
    }

    #[test]
    fn matrix_helpers() {
        // [[1,1],[0,1]] · [[1,0],[1,1]] = [[0,1],[1,1]]
        let m = 0b1011;
        let n = 0b1101;
        assert_eq!(matmul(m, n, 2, 2, 2), 0b1110);
        assert_eq!(transpose(transpose(0b0110, 2, 3), 3, 2), 0b0110);
        assert_eq!(matmul(identity_matrix(2), m, 2, 2, 2), m);
    }

    #[test]
    fn walkeq2_has_eighteen_cells() {
        assert_eq!(walkeq2().len(), 18);
    }

    #[test]
    fn monotone_map_counts() {
        let sq = Poset::square("4");
        assert_eq!(sq.monotone_maps(&sq).len(), 36);
        let c3 = Poset::chain("3", 3);
        assert_eq!(c3.monotone_maps(&c3).len(), 10);
        assert_eq!(Poset::chain("2", 2).monotone_maps(&sq).len(), 9);
    }

    #[test]
    fn discrete_shape() {
        let d = discrete(3);
        assert_eq!(d.objects().len(), 3);
        assert_eq!(d.of_degree(1).len(), 3);
    }
}
