//! Finite semigroups and monoids given by multiplication tables.

pub mod catalog;
pub mod congruence;
mod construct;
pub mod enumerate;
pub mod io;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::exponents::{Exponent, PowerExp};
use crate::terms::{Pseudoidentity, Term};
use crate::Signature;

pub use catalog::{catalog, catalog_by_name, standard_catalog};
pub use congruence::{enumerate_congruences, is_congruence, Partition};
pub use construct::{
    adjoin_identity, adjoin_identity_if_needed, direct_product, opposite, quotient,
};
pub use enumerate::enumerate_monoids;

/// Letter to element assignment.
pub type Assignment = BTreeMap<char, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry {value} at ({row},{col}) is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("multiplication is not associative: ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("monoid signature requires an identity element")]
    NoIdentity,
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("expected {expected} names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("exponent 0 or the empty word needs an identity element")]
    ZeroWithoutIdentity,
    #[error("letter '{0}' has no value")]
    UnassignedLetter(char),
    #[error("term contains a schematic exponent")]
    Symbolic,
    #[error("partition is not a congruence")]
    NotCongruence,
    #[error("size guard exceeded: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("semigroup file line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PowerData {
    index: usize,
    period: usize,
    // s^1, ..., s^(index+period-1)
    seq: Vec<usize>,
}

/// A finite semigroup, validated on construction.
#[derive(Clone, Debug)]
pub struct FinSemigroup {
    order: usize,
    table: Vec<usize>,
    identity: Option<usize>,
    names: Option<Vec<String>>,
    signature: Signature,
    powers: Vec<PowerData>,
}

impl PartialEq for FinSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.table == other.table
            && self.identity == other.identity
            && self.names == other.names
            && self.signature == other.signature
    }
}

impl Eq for FinSemigroup {}

impl FinSemigroup {
    /// Builds a semigroup from table rows. The identity, if any, is found
    /// automatically; monoid signature requires one.
    pub fn new(
        rows: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
        signature: Signature,
    ) -> Result<FinSemigroup, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(SemigroupError::NotSquare);
        }
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::OutOfRange { row, col, value });
                }
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        Self::from_flat(order, table, names, signature)
    }

    pub(crate) fn from_flat(
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
        signature: Signature,
    ) -> Result<FinSemigroup, SemigroupError> {
        if let Some(n) = &names {
            if n.len() != order {
                return Err(SemigroupError::NameCount {
                    expected: order,
                    found: n.len(),
                });
            }
        }
        let m = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(SemigroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order).find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x));
        if signature == Signature::Monoid && identity.is_none() {
            return Err(SemigroupError::NoIdentity);
        }
        let mut s = FinSemigroup {
            order,
            table,
            identity,
            names,
            signature,
            powers: Vec::new(),
        };
        s.powers = (0..order).map(|x| s.power_data(x)).collect();
        Ok(s)
    }

    fn power_data(&self, s: usize) -> PowerData {
        let mut first_seen = vec![usize::MAX; self.order];
        let mut seq = Vec::new();
        let mut cur = s;
        let mut k = 1;
        loop {
            if first_seen[cur] != usize::MAX {
                let index = first_seen[cur];
                return PowerData {
                    index,
                    period: k - index,
                    seq,
                };
            }
            first_seen[cur] = k;
            seq.push(cur);
            cur = self.mul(cur, s);
            k += 1;
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Same table read in another signature.
    pub fn with_signature(&self, signature: Signature) -> Result<FinSemigroup, SemigroupError> {
        if signature == Signature::Monoid && self.identity.is_none() {
            return Err(SemigroupError::NoIdentity);
        }
        Ok(FinSemigroup {
            signature,
            ..self.clone()
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<FinSemigroup, SemigroupError> {
        if names.len() != self.order {
            return Err(SemigroupError::NameCount {
                expected: self.order,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        match &self.names {
            Some(n) => n.iter().position(|m| m == name),
            None => name.parse().ok().filter(|&i| i < self.order),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A monoid in which every element has an inverse.
    pub fn is_group(&self) -> bool {
        match self.identity {
            None => false,
            Some(e) => (0..self.order).all(|a| (0..self.order).any(|b| self.mul(a, b) == e)),
        }
    }

    /// Group inverse; `None` outside groups.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity?;
        (0..self.order).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    /// Smallest `(i, p)` with `s^(i+p) = s^i`.
    pub fn index_period(&self, s: usize) -> (usize, usize) {
        let d = &self.powers[s];
        (d.index, d.period)
    }

    /// The power `s^e`, reduced modulo index and period.
    pub fn power(&self, s: usize, e: Exponent) -> Result<usize, SemigroupError> {
        let d = &self.powers[s];
        let (i, p) = (d.index as u128, d.period as u128);
        let m = match e {
            Exponent::Finite(0) => return self.identity.ok_or(SemigroupError::ZeroWithoutIdentity),
            Exponent::Finite(n) => {
                let n = n as u128;
                if n < i {
                    n
                } else {
                    i + (n - i) % p
                }
            }
            Exponent::OmegaPlus(z) => {
                let idem = i.div_ceil(p) * p;
                let shift = (idem as i128 + z as i128 - i as i128).rem_euclid(p as i128) as u128;
                i + shift
            }
        };
        Ok(d.seq[m as usize - 1])
    }

    /// `s^ω`.
    pub fn omega(&self, s: usize) -> usize {
        self.power(s, Exponent::OMEGA)
            .expect("omega power always exists")
    }

    /// Evaluates a closed term under an assignment.
    pub fn eval(&self, t: &Term, phi: &Assignment) -> Result<usize, SemigroupError> {
        let mut slots = [usize::MAX; 128];
        for (&c, &v) in phi {
            if (c as usize) < 128 {
                slots[c as usize] = v;
            }
        }
        self.eval_slots(t, &slots)
    }

    fn eval_slots(&self, t: &Term, slots: &[usize; 128]) -> Result<usize, SemigroupError> {
        match t {
            Term::Letter(c) => match slots.get(*c as usize) {
                Some(&v) if v != usize::MAX => Ok(v),
                _ => Err(SemigroupError::UnassignedLetter(*c)),
            },
            Term::Unit => self.identity.ok_or(SemigroupError::ZeroWithoutIdentity),
            Term::Concat(parts) => {
                let mut acc = self.eval_slots(&parts[0], slots)?;
                for p in &parts[1..] {
                    acc = self.mul(acc, self.eval_slots(p, slots)?);
                }
                Ok(acc)
            }
            Term::Power(b, PowerExp::Const(e)) => self.power(self.eval_slots(b, slots)?, *e),
            Term::Power(_, PowerExp::Sym(_)) => Err(SemigroupError::Symbolic),
        }
    }

    /// Whether the pseudoidentity holds; on failure returns the least
    /// witness in lexicographic order (first letter most significant).
    pub fn satisfies(&self, id: &Pseudoidentity) -> Result<Satisfaction, SemigroupError> {
        self.satisfies_terms(&id.lhs, &id.rhs)
    }

    pub fn satisfies_terms(&self, lhs: &Term, rhs: &Term) -> Result<Satisfaction, SemigroupError> {
        if !lhs.is_closed() || !rhs.is_closed() {
            return Err(SemigroupError::Symbolic);
        }
        if self.identity.is_none()
            && [lhs, rhs]
                .iter()
                .any(|t| t.contains_unit() || t.has_zero_exponent())
        {
            return Err(SemigroupError::ZeroWithoutIdentity);
        }
        let mut letters = lhs.letters();
        letters.extend(rhs.letters());
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.iter().any(|&c| c as usize >= 128) {
            return Err(SemigroupError::UnassignedLetter(letters[0]));
        }
        let n = self.order as u128;
        let total = n
            .checked_pow(letters.len() as u32)
            .filter(|&t| t <= u64::MAX as u128)
            .ok_or(SemigroupError::TooLarge {
                what: "assignment space",
                size: usize::MAX,
                limit: usize::MAX,
            })? as u64;
        let decode = |mut idx: u64| -> [usize; 128] {
            let mut slots = [usize::MAX; 128];
            for &c in letters.iter().rev() {
                slots[c as usize] = (idx % self.order as u64) as usize;
                idx /= self.order as u64;
            }
            slots
        };
        let fails = |idx: u64| -> bool {
            let slots = decode(idx);
            // Errors were excluded above, so evaluation cannot fail here.
            self.eval_slots(lhs, &slots).ok() != self.eval_slots(rhs, &slots).ok()
        };
        let witness = if total <= 4096 {
            (0..total).find(|&i| fails(i))
        } else {
            (0..total).into_par_iter().find_first(|&i| fails(i))
        };
        Ok(match witness {
            None => Satisfaction::Holds,
            Some(idx) => {
                let slots = decode(idx);
                Satisfaction::Fails(letters.iter().map(|&c| (c, slots[c as usize])).collect())
            }
        })
    }

    /// Plain boolean form of [`FinSemigroup::satisfies`].
    pub fn holds(&self, id: &Pseudoidentity) -> bool {
        matches!(self.satisfies(id), Ok(Satisfaction::Holds))
    }

    /// Renders an assignment with element names, e.g. `x=a y=b`.
    pub fn format_assignment(&self, phi: &Assignment) -> String {
        phi.iter()
            .map(|(c, v)| format!("{c}={}", self.name(*v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Outcome of model checking a pseudoidentity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    Fails(Assignment),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(w) => Some(w),
        }
    }
}

impl fmt::Display for FinSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", io::write_semigroup(self))
    }
}

pub fn index_period(s: &FinSemigroup, x: usize) -> (usize, usize) {
    s.index_period(x)
}

pub fn power(s: &FinSemigroup, x: usize, e: Exponent) -> Result<usize, SemigroupError> {
    s.power(x, e)
}

pub fn eval_term(s: &FinSemigroup, t: &Term, phi: &Assignment) -> Result<usize, SemigroupError> {
    s.eval(t, phi)
}

pub fn satisfies(s: &FinSemigroup, id: &Pseudoidentity) -> Result<Satisfaction, SemigroupError> {
    s.satisfies(id)
}
