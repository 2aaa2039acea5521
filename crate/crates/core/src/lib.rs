//! Computational toolkit for single-vertex k-graph semigroups F_θ^+.
//!
//! The rewriting engine ([`presentation`]) supplies normal forms and prefix
//! extraction; the other modules build on it: symbolic `u v*` sums,
//! enumeration up to isomorphism, Σ-data of infinite tails, periodicity
//! certificates and the symmetry lattice, and group construction
//! representations on finite abelian groups.

pub mod catalog;
pub mod cyclotomic;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod periodicity;
pub mod phase;
pub mod presentation;
pub mod representations;
pub mod star;
pub mod suite;
pub mod tails;
pub mod word;

pub use error::{Error, Result};
pub use phase::Phase;
pub use presentation::{validate_presentation, Presentation, PresentationJson, ThetaFamily};
pub use word::{Generator, Multidegree, Word};

/// Reads a budget override from `POLYGRAPH_BUDGET`, falling back to `default`.
pub fn budget_from_env(default: u128) -> u128 {
    std::env::var("POLYGRAPH_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}
