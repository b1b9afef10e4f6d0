//! Shared workloads for the criterion benches.

use omegacat::fixtures;
use omegacat::Category;

/// Presentations the benches sweep over, smallest first.
pub fn workloads() -> Vec<Category> {
    vec![fixtures::iso1(), fixtures::walkeq2(), fixtures::vecf2(2, 1), fixtures::product_posets()]
}
