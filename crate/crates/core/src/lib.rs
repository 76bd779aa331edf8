//! Omega-terms, finite semigroups and a checker for pseudoidentity proofs.
//!
//! The crate is organised bottom-up:
//!
//! - [`exponents`]: constant and schematic exponents.
//! - [`terms`]: omega-terms, contexts, parsing and ambient normalization.
//! - [`semigroups`]: finite semigroups and monoids, evaluation of terms,
//!   a catalog of small examples and enumeration of small monoids.
//! - [`rees`]: Rees matrix semigroups over groups and their congruences.
//! - [`proofs`]: proof scripts, the checker and the soundness audit.
//! - [`deciders`]: membership tests for a few pseudovarieties.
//! - [`cli`]: the `pseudoeq` command line front end.

use std::fmt;

pub mod cli;
pub mod deciders;
pub mod exponents;
pub mod proofs;
pub mod rees;
pub mod semigroups;
pub mod terms;

pub use exponents::{Exponent, PowerExp, SymExponent};
pub use terms::{Context, Term};

/// Whether terms are read over monoids (empty word allowed) or semigroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Signature {
    #[default]
    Monoid,
    Semigroup,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Monoid => write!(f, "monoid"),
            Signature::Semigroup => write!(f, "semigroup"),
        }
    }
}

/// A syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}
