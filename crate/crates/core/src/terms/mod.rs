//! Omega-terms over single-letter variables.
//!
//! A [`Term`] is kept in a light canonical shape by the smart constructors:
//! concatenations are flat and never contain the empty word. Equalities that
//! hold in every finite monoid are applied separately by
//! [`normalize_ambient`].

mod normalize;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::exponents::{Exponent, ExponentError, PowerExp, SymExponent};
use crate::{ParseError, Signature};

pub use normalize::{normalize_ambient, EXPANSION_LIMIT};
pub use parse::{parse_pseudoidentity, parse_term};

/// The letter used for the hole of a [`Context`].
pub const HOLE: char = '_';

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Letter(char),
    Unit,
    Concat(Vec<Term>),
    Power(Box<Term>, PowerExp),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("term contains a schematic exponent")]
    Symbolic,
    #[error("a context must contain exactly one hole, found {0}")]
    HoleCount(usize),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
}

/// Scan direction for [`first_occurrence_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl Term {
    pub fn letter(c: char) -> Term {
        Term::Letter(c)
    }

    /// Concatenation that flattens nested products and drops the empty word.
    pub fn concat(parts: impl IntoIterator<Item = Term>) -> Term {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Term::Unit => {}
                Term::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Term::Unit,
            1 => flat.pop().unwrap(),
            _ => Term::Concat(flat),
        }
    }

    pub fn power(base: Term, exp: impl Into<PowerExp>) -> Term {
        Term::Power(Box::new(base), exp.into())
    }

    pub fn omega(base: Term) -> Term {
        Term::power(base, Exponent::OMEGA)
    }

    /// The factors of the term read as a product.
    pub fn factors(&self) -> &[Term] {
        match self {
            Term::Concat(parts) => parts,
            Term::Unit => &[],
            other => std::slice::from_ref(other),
        }
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Term::Letter(c) => {
                out.insert(*c);
            }
            Term::Unit => {}
            Term::Concat(parts) => parts.iter().for_each(|p| p.collect_letters(out)),
            Term::Power(b, _) => b.collect_letters(out),
        }
    }

    pub fn count_letter(&self, c: char) -> usize {
        match self {
            Term::Letter(d) => usize::from(*d == c),
            Term::Unit => 0,
            Term::Concat(parts) => parts.iter().map(|p| p.count_letter(c)).sum(),
            Term::Power(b, _) => b.count_letter(c),
        }
    }

    /// Number of nodes; a rough size measure.
    pub fn size(&self) -> usize {
        match self {
            Term::Letter(_) | Term::Unit => 1,
            Term::Concat(parts) => 1 + parts.iter().map(Term::size).sum::<usize>(),
            Term::Power(b, _) => 1 + b.size(),
        }
    }

    /// Whether every exponent is a constant.
    pub fn is_closed(&self) -> bool {
        match self {
            Term::Letter(_) | Term::Unit => true,
            Term::Concat(parts) => parts.iter().all(Term::is_closed),
            Term::Power(b, e) => !e.is_symbolic() && b.is_closed(),
        }
    }

    pub fn sym_exponents(&self) -> Vec<&SymExponent> {
        let mut out = Vec::new();
        self.collect_sym(&mut out);
        out
    }

    fn collect_sym<'a>(&'a self, out: &mut Vec<&'a SymExponent>) {
        match self {
            Term::Letter(_) | Term::Unit => {}
            Term::Concat(parts) => parts.iter().for_each(|p| p.collect_sym(out)),
            Term::Power(b, e) => {
                if let PowerExp::Sym(s) = e {
                    out.push(s);
                }
                b.collect_sym(out);
            }
        }
    }

    /// Whether some constant exponent is `0`.
    pub fn has_zero_exponent(&self) -> bool {
        match self {
            Term::Letter(_) | Term::Unit => false,
            Term::Concat(parts) => parts.iter().any(Term::has_zero_exponent),
            Term::Power(b, e) => e.is_zero() || b.has_zero_exponent(),
        }
    }

    pub fn contains_unit(&self) -> bool {
        match self {
            Term::Unit => true,
            Term::Letter(_) => false,
            Term::Concat(parts) => parts.iter().any(Term::contains_unit),
            Term::Power(b, _) => b.contains_unit(),
        }
    }

    /// Applies `f` to every exponent, rebuilding the term.
    pub fn try_map_exponents<E>(
        &self,
        f: &mut impl FnMut(&PowerExp) -> Result<PowerExp, E>,
    ) -> Result<Term, E> {
        Ok(match self {
            Term::Letter(_) | Term::Unit => self.clone(),
            Term::Concat(parts) => Term::concat(
                parts
                    .iter()
                    .map(|p| p.try_map_exponents(f))
                    .collect::<Result<Vec<_>, E>>()?,
            ),
            Term::Power(b, e) => Term::power(b.try_map_exponents(f)?, f(e)?),
        })
    }

    /// Instantiates the schematic parameter at `n!` in every exponent.
    pub fn instantiate(&self, n: u32, sig: Signature) -> Result<Term, ExponentError> {
        self.try_map_exponents(&mut |e| match e {
            PowerExp::Const(_) => Ok(e.clone()),
            PowerExp::Sym(s) => s.evaluate_at(n, sig).map(PowerExp::Const),
        })
    }

    /// Replaces every schematic exponent by its limit.
    pub fn limit(&self) -> Result<Term, ExponentError> {
        self.try_map_exponents(&mut |e| match e {
            PowerExp::Const(_) => Ok(e.clone()),
            PowerExp::Sym(s) => s.limit().map(PowerExp::Const),
        })
    }

    /// Replaces the parameter by an expression (for induction steps).
    pub fn replace_nu(&self, by: &SymExponent) -> Term {
        self.try_map_exponents::<()>(&mut |e| {
            Ok(match e {
                PowerExp::Const(_) => e.clone(),
                PowerExp::Sym(s) => PowerExp::Sym(s.replace_nu(by)).canonical(),
            })
        })
        .expect("infallible")
    }

    /// Homomorphic replacement of letters; letters without an image are kept.
    pub fn substitute(&self, sigma: &BTreeMap<char, Term>) -> Term {
        match self {
            Term::Letter(c) => sigma.get(c).cloned().unwrap_or_else(|| self.clone()),
            Term::Unit => Term::Unit,
            Term::Concat(parts) => Term::concat(parts.iter().map(|p| p.substitute(sigma))),
            Term::Power(b, e) => Term::power(b.substitute(sigma), e.clone()),
        }
    }

    /// Mirror image: concatenations reversed at every level.
    pub fn reverse(&self) -> Term {
        match self {
            Term::Letter(_) | Term::Unit => self.clone(),
            Term::Concat(parts) => Term::Concat(parts.iter().rev().map(Term::reverse).collect()),
            Term::Power(b, e) => Term::power(b.reverse(), e.clone()),
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Letter(_) | Term::Unit => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Letter(c) => write!(f, "{c}"),
            Term::Unit => write!(f, "1"),
            Term::Concat(parts) => parts.iter().try_for_each(|p| write!(f, "{p}")),
            Term::Power(b, e) => {
                b.fmt_atom(f)?;
                write!(f, "^{e}")
            }
        }
    }
}

pub fn render_term(t: &Term) -> String {
    t.to_string()
}

pub fn substitute(t: &Term, sigma: &BTreeMap<char, Term>) -> Term {
    t.substitute(sigma)
}

/// A term with exactly one occurrence of the hole `_`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context(Term);

impl Context {
    pub fn new(t: Term) -> Result<Context, TermError> {
        match t.count_letter(HOLE) {
            1 => Ok(Context(t)),
            n => Err(TermError::HoleCount(n)),
        }
    }

    pub fn parse(text: &str, sig: Signature) -> Result<Context, ContextParseError> {
        let t = parse::parse_term_with_hole(text, sig)?;
        Ok(Context::new(t)?)
    }

    /// The context `_` itself.
    pub fn hole() -> Context {
        Context(Term::Letter(HOLE))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn plug(&self, t: &Term) -> Term {
        let sigma = BTreeMap::from([(HOLE, t.clone())]);
        self.0.substitute(&sigma)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Term(#[from] TermError),
}

pub fn plug(c: &Context, t: &Term) -> Term {
    c.plug(t)
}

/// A formal equality `lhs = rhs` read in a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pseudoidentity {
    pub lhs: Term,
    pub rhs: Term,
    pub signature: Signature,
}

impl Pseudoidentity {
    pub fn new(lhs: Term, rhs: Term, signature: Signature) -> Self {
        Pseudoidentity {
            lhs,
            rhs,
            signature,
        }
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut l = self.lhs.letters();
        l.extend(self.rhs.letters());
        l
    }

    pub fn flipped(&self) -> Pseudoidentity {
        Pseudoidentity::new(self.rhs.clone(), self.lhs.clone(), self.signature)
    }

    pub fn reverse(&self) -> Pseudoidentity {
        Pseudoidentity::new(self.lhs.reverse(), self.rhs.reverse(), self.signature)
    }

    pub fn is_closed(&self) -> bool {
        self.lhs.is_closed() && self.rhs.is_closed()
    }
}

impl fmt::Display for Pseudoidentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Order in which letters first appear when the term is read in `dir`.
///
/// Powers with a nonzero exponent contribute their base; the base read once
/// already lists every letter it contains, so no copies are materialized.
pub fn first_occurrence_order(t: &Term, dir: Direction) -> Result<Vec<char>, TermError> {
    fn visit(t: &Term, dir: Direction, out: &mut Vec<char>) -> Result<(), TermError> {
        match t {
            Term::Letter(c) => {
                if *c != HOLE && !out.contains(c) {
                    out.push(*c);
                }
            }
            Term::Unit => {}
            Term::Concat(parts) => match dir {
                Direction::Left => parts.iter().try_for_each(|p| visit(p, dir, out))?,
                Direction::Right => parts.iter().rev().try_for_each(|p| visit(p, dir, out))?,
            },
            Term::Power(b, e) => match e {
                PowerExp::Sym(_) => return Err(TermError::Symbolic),
                PowerExp::Const(Exponent::Finite(0)) => {}
                PowerExp::Const(_) => visit(b, dir, out)?,
            },
        }
        Ok(())
    }
    if !t.is_closed() {
        return Err(TermError::Symbolic);
    }
    let mut out = Vec::new();
    visit(t, dir, &mut out)?;
    Ok(out)
}
