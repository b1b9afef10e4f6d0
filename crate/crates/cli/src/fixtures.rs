//! The canonical fixture corpus on disk, with SHA-256 checksums.

use omegacat::adjunction::identity_adjunction;
use omegacat::duality::vecf2_duality_input;
use omegacat::fixtures;
use omegacat::io::{self, Ref};
use omegacat::limits::{Diagram, Graph};
use omegacat::presheaf::hom_presheaf;
use omegacat::{Category, Functor, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize)]
pub struct Written {
    pub file: String,
    pub sha256: String,
}

/// Every generated document as `(file name, contents)`, sorted by name.
pub fn documents(max_d: usize) -> Result<Vec<(String, String)>> {
    let mut cats: Vec<(String, Category)> = vec![
        ("iso1".into(), fixtures::iso1()),
        ("walking2".into(), fixtures::walking2()),
        ("walking2_parallel".into(), fixtures::walking2_parallel()),
        ("bz2".into(), fixtures::bz2()),
        ("walkeq2".into(), fixtures::walkeq2()),
        ("arrow".into(), fixtures::free_arrow()),
        ("discrete3".into(), fixtures::discrete(3)),
        ("point0".into(), fixtures::point(0)),
        ("point2".into(), fixtures::point(2)),
        ("posets_product".into(), fixtures::product_posets()),
        ("posets_equalizer".into(), fixtures::equalizer_posets()),
        ("chaotic_sets".into(), fixtures::weak_pullback_sets()),
    ];
    for d in 1..=max_d {
        cats.push((format!("vecf2_d{d}"), fixtures::vecf2(d, 1)));
    }
    let mut out: Vec<(String, String)> =
        cats.iter().map(|(n, p)| (format!("{n}.json"), io::category_to_string(p))).collect();
    let path = |n: &str| Ref::Path(format!("{n}.json"));

    let iso1 = Arc::new(fixtures::iso1());
    let id = Functor::identity(iso1.clone());
    out.push(("functor_id_iso1.json".into(), io::to_canonical_string(&io::functor_file(&id, path("iso1"), path("iso1")))));
    let adj = identity_adjunction(iso1)?;
    let fref = Ref::Path("functor_id_iso1.json".into());
    out.push(("adjunction_id_iso1.json".into(), io::to_canonical_string(&io::adjunction_file(&adj, fref.clone(), fref))));

    let w2 = Arc::new(fixtures::walking2());
    let fp = hom_presheaf(&w2, w2.lookup("b").expect("object b"))?;
    out.push(("presheaf_walking2_b.json".into(), io::to_canonical_string(&io::presheaf_file(&fp))));

    let prod = Arc::new(fixtures::product_posets());
    let pair = Graph::from_nodes(&[("l", None), ("r", None)])?;
    let d = Diagram::from_names(pair, prod, &["2", "2"])?;
    out.push(("diagram_product.json".into(), io::to_canonical_string(&io::diagram_file(&d, path("posets_product")))));

    let eqp = Arc::new(fixtures::equalizer_posets());
    let g = Graph::from_nodes(&[("A", None), ("B", None), ("F", Some(("A", "B"))), ("G", Some(("A", "B"))), ("α", Some(("F", "G")))])?;
    let (f1, f2) = (fixtures::map_id("3", "2", &[0, 0, 1]), fixtures::map_id("3", "2", &[0, 1, 1]));
    let alpha = format!("{f1}=>{f2}");
    let d = Diagram::from_names(g, eqp, &["3", "2", &f1, &f2, &alpha])?;
    out.push(("diagram_equalizer.json".into(), io::to_canonical_string(&io::diagram_file(&d, path("posets_equalizer")))));

    if max_d >= 1 {
        let dd = max_d.min(2);
        let input = vecf2_duality_input(dd, 1)?;
        let name = format!("vecf2_d{dd}");
        let file = io::duality_file(&input, path(&name), path(&name));
        out.push(("duality_vecf2.json".into(), io::to_canonical_string(&file)));
    }
    out.sort();
    Ok(out)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Write the corpus and a `SHA256SUMS` file into `dir`.
pub fn write(dir: &Path, max_d: usize) -> Result<Vec<Written>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut sums = String::new();
    for (name, text) in documents(max_d)? {
        std::fs::write(dir.join(&name), &text)?;
        let sha256 = sha256_hex(text.as_bytes());
        sums.push_str(&format!("{sha256}  {name}\n"));
        written.push(Written { file: name, sha256 });
    }
    std::fs::write(dir.join("SHA256SUMS"), sums)?;
    Ok(written)
}
