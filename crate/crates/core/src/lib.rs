//! Finite posets and the maps between them.
//!
//! The crate covers cones and filters ([`Poset`]), self-maps and their
//! preservation classes ([`mappings`]), ordinal sums, direct products and
//! quotients ([`constructions`]), and an exhaustive checker that machine-checks
//! a catalogue of characterization statements over every small poset
//! ([`verify`]).

mod cones;
mod filter;
mod poset;
mod set;

pub mod constructions;
pub mod mappings;
pub mod samples;
pub mod verify;

pub use cones::OrderSummary;
pub use filter::Filter;
pub use mappings::{Equivalence, MapClass, PosetMap};
pub use poset::{is_valid_label, Poset, PosetError};
pub use set::{ElementSet, MAX_ELEMENTS};
