//! Mahonian and Fishburn structures.

pub mod error;
pub mod genfun;
pub mod marking;
pub mod matchings;
pub mod meshpat;
pub mod numeric;
pub mod perm;
pub mod posets;

pub use error::{Error, ParseError, Result};
pub use marking::Marking;
pub use perm::{InversionPair, InversionTable, Permutation};
pub use genfun::{Triangle, TruncatedSeries};
pub use matchings::{Arc, MarkedMatching, Matching};
pub use meshpat::MeshPattern;
pub use posets::{FactorialPoset, GenericPoset, IncomparablePair, MarkedPoset};
