//! Condorcet domains on small alternative sets and their never-last
//! composition.
//!
//! * [`domain`]: linear orders, domains, restriction, never-conditions and
//!   the Condorcet test.
//! * [`properties`]: maximality, ampleness, copiousness, width,
//!   single-peakedness and single-crossingness.
//! * [`composition`]: the never-last composition `⋄`, decomposition, right
//!   obstructions and the composition theorem checker.
//! * [`enumeration`]: all maximal Condorcet domains for `n <= 4`, canonical
//!   forms and the decomposability census.
//! * [`graphs`]: swap graphs and DOT output.
//! * [`catalog`]: transcribed example domains and their verifier.
//! * [`text`]: the plain-text domain format.

pub mod catalog;
pub mod composition;
pub mod domain;
pub mod enumeration;
pub mod error;
pub mod graphs;
pub mod properties;
pub mod text;

pub use composition::{nl_compose, nl_decompose, CompositionRoles, HypothesisReport};
pub use domain::{
    Alternative, AlternativeSet, Domain, LinearOrder, NeverCondition, Position, Triple,
};
pub use error::{Error, Result};
