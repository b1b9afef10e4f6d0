//! Finite truncated strict ω-categories as explicit globular cell complexes.
//!
//! A [`Category`] stores every cell up to its truncation degree together with
//! total identity and composition tables. Cells above the truncation exist
//! only as iterated identities ([`VCell`] with a positive e-power) and every
//! operation reduces them back to table lookups.
//!
//! The crate is organised bottom-up:
//!
//! * [`category`], [`builder`], [`io`] and [`validate`]: the data model,
//!   loading and axiom checking.
//! * [`construct`]: hom-categories, opposites, approximations and friends.
//! * [`equivalence`]: the coinductive relation `~`, degrees and arrow
//!   classification.
//! * [`functor`]: functors, n-modifications and equivalence of categories.
//! * [`presheaf`] and [`limits`]: presheaves, Yoneda, representability and
//!   strict (co)limits.
//! * [`adjunction`] and [`duality`]: strict adjunctions and synthesis of
//!   concrete dual adjunctions.
//! * [`homotopy`]: formal homotopy groups.
//! * [`fixtures`]: generators for the reference corpus.

pub mod adjunction;
pub mod builder;
pub mod category;
pub mod construct;
pub mod duality;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod homotopy;
pub mod io;
pub mod limits;
pub mod presheaf;
pub mod report;
pub mod validate;

pub use builder::Builder;
pub use category::{Category, Cell, CellIx, VCell};
pub use error::{Error, Result};
pub use functor::{Functor, Modification};
pub use report::{Status, ValidationReport, Violation};

/// Default bound on enumerated candidates in exhaustive searches.
pub const DEFAULT_SEARCH_LIMIT: u64 = 1_000_000;

/// Enumeration guard, overridable through `OMEGACAT_SEARCH_LIMIT`.
pub fn search_limit() -> u64 {
    std::env::var("OMEGACAT_SEARCH_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_LIMIT)
}
