//! Validity of constant pseudoidentities in all finite groups and in all
//! finite commutative monoids.
//!
//! In a finite group `x^ω = 1`, so a term reads as a word of the free group
//! once `ω+z` is replaced by `z`. In a commutative monoid a term only
//! depends on the total exponent of each letter.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exponents::{Exponent, PowerExp};
use crate::semigroups::{
    adjoin_identity, catalog, catalog_by_name, direct_product, Assignment, FinSemigroup,
};
use crate::terms::{Pseudoidentity, Term};

/// Longest group word produced before giving up.
pub const MAX_WORD_LENGTH: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("term contains a schematic exponent")]
    Symbolic,
    #[error("group word longer than {MAX_WORD_LENGTH} syllables")]
    TooLong,
    #[error("exponent arithmetic overflow")]
    Overflow,
    #[error("unknown variety '{0}' (expected G or Com)")]
    UnknownVariety(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variety {
    G,
    Com,
}

impl FromStr for Variety {
    type Err = DecideError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" => Ok(Variety::G),
            "Com" => Ok(Variety::Com),
            _ => Err(DecideError::UnknownVariety(s.to_string())),
        }
    }
}

/// A freely reduced word: syllables `(letter, nonzero exponent)` with
/// distinct neighbouring letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(Vec<(char, i64)>);

impl GroupWord {
    pub fn syllables(&self) -> &[(char, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, c: char, k: i64) -> Result<(), DecideError> {
        if k == 0 {
            return Ok(());
        }
        match self.0.last_mut() {
            Some((d, e)) if *d == c => {
                *e = e.checked_add(k).ok_or(DecideError::Overflow)?;
                if *e == 0 {
                    self.0.pop();
                }
            }
            _ => {
                if self.0.len() >= MAX_WORD_LENGTH {
                    return Err(DecideError::TooLong);
                }
                self.0.push((c, k));
            }
        }
        Ok(())
    }

    fn append(&mut self, other: &GroupWord) -> Result<(), DecideError> {
        other.0.iter().try_for_each(|&(c, k)| self.push(c, k))
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(c, k)| (c, -k)).collect())
    }

    fn pow(&self, n: i64) -> Result<GroupWord, DecideError> {
        if n < 0 {
            return self
                .inverse()
                .pow(n.checked_neg().ok_or(DecideError::Overflow)?);
        }
        if n == 0 || self.0.is_empty() {
            return Ok(GroupWord::default());
        }
        // Split off the conjugating prefix: w = u c u⁻¹ with c cyclically reduced.
        let s = &self.0;
        let mut l = 0;
        while l < s.len() - 1 - l
            && s[l].0 == s[s.len() - 1 - l].0
            && s[l].1 == -s[s.len() - 1 - l].1
        {
            l += 1;
        }
        let u = GroupWord(s[..l].to_vec());
        let core = &s[l..s.len() - l];
        let mut out = u.clone();
        if core.len() == 1 {
            let (c, k) = core[0];
            out.push(c, k.checked_mul(n).ok_or(DecideError::Overflow)?)?;
        } else if (core.len() as u128) * (n as u128) > MAX_WORD_LENGTH as u128 {
            return Err(DecideError::TooLong);
        } else {
            let core = GroupWord(core.to_vec());
            for _ in 0..n {
                out.append(&core)?;
            }
        }
        out.append(&u.inverse())?;
        Ok(out)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(c, k)| {
                if k == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The free-group word of a closed term, with `ω+z` read as `z`.
pub fn to_group_word(t: &Term) -> Result<GroupWord, DecideError> {
    Ok(match t {
        Term::Letter(c) => GroupWord(vec![(*c, 1)]),
        Term::Unit => GroupWord::default(),
        Term::Concat(parts) => {
            let mut w = GroupWord::default();
            for p in parts {
                w.append(&to_group_word(p)?)?;
            }
            w
        }
        Term::Power(b, e) => {
            let n = match e {
                PowerExp::Sym(_) => return Err(DecideError::Symbolic),
                PowerExp::Const(Exponent::Finite(n)) => {
                    i64::try_from(*n).map_err(|_| DecideError::Overflow)?
                }
                PowerExp::Const(Exponent::OmegaPlus(z)) => *z,
            };
            to_group_word(b)?.pow(n)?
        }
    })
}

/// Whether every finite group satisfies `u = v`.
pub fn decide_group(u: &Term, v: &Term) -> Result<bool, DecideError> {
    Ok(to_group_word(u)? == to_group_word(v)?)
}

/// Total exponent of each letter; letters with total `0` are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComVector(BTreeMap<char, Exponent>);

impl ComVector {
    pub fn get(&self, c: char) -> Exponent {
        self.0.get(&c).copied().unwrap_or(Exponent::ZERO)
    }

    pub fn entries(&self) -> &BTreeMap<char, Exponent> {
        &self.0
    }
}

impl fmt::Display for ComVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(c, e)| format!("{c}: {e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn com_vector(t: &Term) -> Result<ComVector, DecideError> {
    fn walk(
        t: &Term,
        mult: Exponent,
        acc: &mut BTreeMap<char, Exponent>,
    ) -> Result<(), DecideError> {
        match t {
            Term::Letter(c) => {
                let cur = acc.get(c).copied().unwrap_or(Exponent::ZERO);
                acc.insert(*c, cur.checked_add(mult).ok_or(DecideError::Overflow)?);
            }
            Term::Unit => {}
            Term::Concat(parts) => parts.iter().try_for_each(|p| walk(p, mult, acc))?,
            Term::Power(b, PowerExp::Const(e)) => {
                walk(b, mult.checked_mul(*e).ok_or(DecideError::Overflow)?, acc)?;
            }
            Term::Power(_, PowerExp::Sym(_)) => return Err(DecideError::Symbolic),
        }
        Ok(())
    }
    let mut acc = BTreeMap::new();
    walk(t, Exponent::ONE, &mut acc)?;
    acc.retain(|_, e| *e != Exponent::ZERO);
    Ok(ComVector(acc))
}

/// Whether every finite commutative monoid satisfies `u = v`.
pub fn decide_com(u: &Term, v: &Term) -> Result<bool, DecideError> {
    Ok(com_vector(u)? == com_vector(v)?)
}

pub fn decide(variety: Variety, id: &Pseudoidentity) -> Result<bool, DecideError> {
    match variety {
        Variety::G => decide_group(&id.lhs, &id.rhs),
        Variety::Com => decide_com(&id.lhs, &id.rhs),
    }
}

/// Named finite models used to look for counterexamples.
pub type Pool = Vec<(String, FinSemigroup)>;

fn named(names: &[&str]) -> Pool {
    names
        .iter()
        .map(|n| (n.to_string(), catalog_by_name(n).expect("catalog entry")))
        .collect()
}

/// Groups checked when the procedure answers "valid".
pub fn group_pool_small() -> Pool {
    named(&["C2", "C3", "C4", "C5", "C6", "S3", "D4", "Q8"])
}

/// Groups searched for a counterexample when the procedure answers "invalid".
pub fn group_pool_large() -> Pool {
    named(&[
        "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "Q8", "A4", "S4",
    ])
}

/// Monogenic monoids `C(m,n)¹` with `m+n ≤ 6`, plus `C(6,1)¹` so that
/// finite exponents up to 6 are told apart.
pub fn com_base_pool() -> Pool {
    let mut pool = Vec::new();
    for m in 1..=5 {
        for n in 1..=(6 - m) {
            let s = adjoin_identity(&catalog("C", &[m, n]).expect("monogenic"));
            pool.push((format!("C({m},{n})^1"), s));
        }
    }
    pool.push((
        "C(6,1)^1".to_string(),
        adjoin_identity(&catalog("C", &[6, 1]).expect("monogenic")),
    ));
    pool
}

/// Pairwise direct products of the base commutative pool.
pub fn com_product_pool() -> Pool {
    let base = com_base_pool();
    let mut pool = Vec::new();
    for (i, (a, s)) in base.iter().enumerate() {
        for (b, t) in &base[i..] {
            pool.push((
                format!("{a}x{b}"),
                direct_product(s, t).expect("product of monoids"),
            ));
        }
    }
    pool
}

/// The first pool member failing `id`, with the least failing assignment.
pub fn find_witness(
    pool: &[(String, FinSemigroup)],
    id: &Pseudoidentity,
) -> Option<(String, Assignment)> {
    pool.iter().find_map(|(name, s)| {
        s.satisfies(id)
            .ok()
            .and_then(|r| r.witness().cloned())
            .map(|w| (name.clone(), w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;
    use crate::Signature;

    fn t(s: &str) -> Term {
        parse_term(s, Signature::Monoid).unwrap()
    }

    fn word(s: &str) -> String {
        to_group_word(&t(s)).unwrap().to_string()
    }

    #[test]
    fn group_word_examples() {
        assert_eq!(word("(xy)^(w-1)"), "y^-1 x^-1");
        assert_eq!(word("x^w"), "1");
        assert_eq!(word("x^(w+2) x^(w-2)"), "1");
        assert_eq!(word("(x y x^(w-1))^5"), "x y^5 x^-1");
        assert_eq!(word("(xyx)^2"), "x y x^2 y x");
    }

    #[test]
    fn cancelling_powers_agree_with_small_groups() {
        let id = Pseudoidentity::new(t("x^(w+2) x^(w-2)"), Term::Unit, Signature::Monoid);
        for g in ["C3", "C4", "S3"] {
            assert!(catalog_by_name(g).unwrap().holds(&id), "{g}");
        }
    }

    #[test]
    fn decide_group_examples() {
        assert!(decide_group(&t("(xy)^(w-1)"), &t("y^(w-1) x^(w-1)")).unwrap());
        assert!(decide_group(&t("x^w"), &Term::Unit).unwrap());
        assert!(!decide_group(&t("xy"), &t("yx")).unwrap());
        let id = Pseudoidentity::new(t("xy"), t("yx"), Signature::Monoid);
        assert_eq!(
            find_witness(&named(&["S3"]), &id).map(|w| w.0),
            Some("S3".to_string())
        );
    }

    #[test]
    fn com_vector_examples() {
        let v = com_vector(&t("(xy)^(w-1)")).unwrap();
        assert_eq!(v.get('x'), Exponent::OmegaPlus(-1));
        assert_eq!(v.get('y'), Exponent::OmegaPlus(-1));
        assert_eq!(
            com_vector(&t("x x^(w-1)")).unwrap().get('x'),
            Exponent::OMEGA
        );
        let v = com_vector(&t("(x^2 y)^3")).unwrap();
        assert_eq!(
            (v.get('x'), v.get('y')),
            (Exponent::Finite(6), Exponent::Finite(3))
        );
    }

    #[test]
    fn decide_com_examples() {
        assert!(decide_com(&t("(xy)^(w-1)"), &t("x^(w-1) y^(w-1)")).unwrap());
        assert!(!decide_com(&t("x^(w+1)"), &t("x^w")).unwrap());
        let c2 = vec![("C2".to_string(), catalog_by_name("C2").unwrap())];
        let id = Pseudoidentity::new(t("x^(w+1)"), t("x^w"), Signature::Monoid);
        assert!(find_witness(&c2, &id).is_some());
        assert!(decide_com(&t("xy"), &t("yx")).unwrap());
        assert!(decide_com(&t("x y^0"), &t("x")).unwrap());
    }

    #[test]
    fn symbolic_terms_are_rejected() {
        assert_eq!(decide_group(&t("x^k"), &t("x")), Err(DecideError::Symbolic));
        assert_eq!(decide_com(&t("x^k"), &t("x")), Err(DecideError::Symbolic));
    }

    #[test]
    fn pools_have_expected_sizes() {
        assert_eq!(group_pool_small().len(), 8);
        assert_eq!(group_pool_large().len(), 12);
        assert_eq!(com_base_pool().len(), 16);
        assert!(com_base_pool().iter().all(|(_, s)| s.is_commutative()));
    }
}
