//! Finite T0 topological spaces, handled as finite posets.

#![allow(clippy::needless_range_loop)]

mod bits;
pub mod canonical;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod models;
pub mod pi1;
pub mod poset;
pub mod reduction;
mod snf;
pub mod spaces;

pub use canonical::{canonical_form, is_homeomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use poset::{FinitePoset, HasseDiagram};
