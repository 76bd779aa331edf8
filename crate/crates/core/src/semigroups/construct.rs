use super::{FinSemigroup, Partition, SemigroupError};
use crate::Signature;

fn all_names(s: &FinSemigroup) -> Vec<String> {
    (0..s.order()).map(|x| s.name(x)).collect()
}

fn signature_for(s: &FinSemigroup) -> Signature {
    if s.identity().is_some() {
        Signature::Monoid
    } else {
        Signature::Semigroup
    }
}

fn build(
    order: usize,
    table: Vec<usize>,
    names: Vec<String>,
) -> Result<FinSemigroup, SemigroupError> {
    let s = FinSemigroup::from_flat(order, table, Some(names), Signature::Semigroup)?;
    let sig = signature_for(&s);
    s.with_signature(sig)
}

/// `S¹`: `S` with a fresh identity appended as the last element, named `1`
/// (or `I` when `1` is already taken).
pub fn adjoin_identity(s: &FinSemigroup) -> FinSemigroup {
    let n = s.order();
    let one = n;
    let mut table = Vec::with_capacity((n + 1) * (n + 1));
    for a in 0..=n {
        for b in 0..=n {
            table.push(match (a == one, b == one) {
                (true, _) => b,
                (_, true) => a,
                _ => s.mul(a, b),
            });
        }
    }
    let mut names = all_names(s);
    let label = if names.iter().any(|x| x == "1") {
        "I"
    } else {
        "1"
    };
    names.push(label.to_string());
    FinSemigroup::from_flat(n + 1, table, Some(names), Signature::Monoid)
        .expect("adjoining an identity preserves associativity")
}

/// `S` read as a monoid when it already has an identity, `S¹` otherwise.
pub fn adjoin_identity_if_needed(s: &FinSemigroup) -> FinSemigroup {
    match s.identity() {
        Some(_) => s
            .with_signature(Signature::Monoid)
            .expect("identity exists"),
        None => adjoin_identity(s),
    }
}

pub fn direct_product(s: &FinSemigroup, t: &FinSemigroup) -> Result<FinSemigroup, SemigroupError> {
    let (n, m) = (s.order(), t.order());
    let size = n * m;
    let mut table = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            table.push(s.mul(a / m, b / m) * m + t.mul(a % m, b % m));
        }
    }
    let names = (0..size)
        .map(|x| format!("({},{})", s.name(x / m), t.name(x % m)))
        .collect();
    build(size, table, names)
}

/// The semigroup with reversed multiplication.
pub fn opposite(s: &FinSemigroup) -> FinSemigroup {
    let n = s.order();
    let table = (0..n * n).map(|k| s.mul(k % n, k / n)).collect();
    FinSemigroup::from_flat(n, table, s.names().map(<[String]>::to_vec), s.signature())
        .expect("the opposite of a semigroup is a semigroup")
}

/// `S/ρ`; blocks are numbered in order of their least element and named
/// after it.
pub fn quotient(s: &FinSemigroup, p: &Partition) -> Result<FinSemigroup, SemigroupError> {
    if p.len() != s.order() || !super::is_congruence(s, p) {
        return Err(SemigroupError::NotCongruence);
    }
    let blocks = p.blocks();
    let k = blocks.len();
    let table = (0..k * k)
        .map(|x| p.label(s.mul(blocks[x / k][0], blocks[x % k][0])))
        .collect();
    let names = blocks.iter().map(|b| s.name(b[0])).collect();
    build(k, table, names)
}
