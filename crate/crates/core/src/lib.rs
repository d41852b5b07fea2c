//! Exact Möbius functions for finite posets, finite windows of small categories and
//! division categories of combinatorial inverse semigroups.
//!
//! Every Möbius value is computed along independent routes that can be checked against
//! each other:
//!
//! * the convolution inverse of the zeta function on a [`CategorySlice`],
//! * the Möbius function of a Lawvere interval viewed as a poset ([`lawvere`]),
//! * closed forms for the example categories `C_m` and `D_m` ([`models`]),
//! * quotient posets and idempotent lattices for inverse semigroups ([`semigroup`]).

pub mod category;
pub mod error;
pub mod lawvere;
pub mod models;
pub mod poset;
pub mod semigroup;
pub mod verify;

pub use category::{CategorySlice, IncidenceFunction, Mor, Obj, SliceBuilder};
pub use error::{Error, Result};
pub use lawvere::{Factorization, LawvereInterval};
pub use models::{Cm, CmMorphism, CmObject, Dm, DmMorphism};
pub use poset::{FinitePoset, PosetMoebiusTable};
pub use semigroup::{DivisionCategory, IdempotentTransversal, InverseSemigroup};
