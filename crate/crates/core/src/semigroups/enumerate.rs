//! Monoids of small order up to isomorphism.
//!
//! Tables are filled row by row with the identity fixed at index 0. A
//! partial table is abandoned as soon as a fully defined triple violates
//! associativity, and a complete table is kept only if it is the
//! lexicographically least among its relabelings fixing the identity.

use super::{FinSemigroup, SemigroupError};
use crate::Signature;

pub const MAX_ENUMERATION_ORDER: usize = 5;

const UNSET: u8 = u8::MAX;

/// All monoids of order `1..=max_order`, one per isomorphism class.
pub fn enumerate_monoids(max_order: usize) -> Result<Vec<FinSemigroup>, SemigroupError> {
    if max_order > MAX_ENUMERATION_ORDER {
        return Err(SemigroupError::TooLarge {
            what: "monoid order",
            size: max_order,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(monoids_of_order(n));
    }
    Ok(out)
}

/// Monoids of exactly order `n`, identity at index 0.
pub fn monoids_of_order(n: usize) -> Vec<FinSemigroup> {
    assert!((1..=MAX_ENUMERATION_ORDER).contains(&n));
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x] = x as u8;
        table[x * n] = x as u8;
    }
    let cells: Vec<usize> = (1..n)
        .flat_map(|a| (1..n).map(move |b| a * n + b))
        .collect();
    let perms = permutations_fixing_zero(n);
    let mut found = Vec::new();
    search(n, &mut table, &cells, 0, &perms, &mut found);
    found
        .into_iter()
        .map(|t| {
            FinSemigroup::from_flat(
                n,
                t.into_iter().map(usize::from).collect(),
                None,
                Signature::Monoid,
            )
            .expect("search produces associative tables")
        })
        .collect()
}

fn search(
    n: usize,
    table: &mut [u8],
    cells: &[usize],
    k: usize,
    perms: &[Vec<u8>],
    found: &mut Vec<Vec<u8>>,
) {
    if k == cells.len() {
        if is_canonical(n, table, perms) {
            found.push(table.to_vec());
        }
        return;
    }
    for v in 0..n as u8 {
        table[cells[k]] = v;
        if consistent(n, table) {
            search(n, table, cells, k + 1, perms, found);
        }
    }
    table[cells[k]] = UNSET;
}

fn consistent(n: usize, t: &[u8]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == UNSET {
                    continue;
                }
                let left = t[ab as usize * n + c];
                let right = t[a * n + bc as usize];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<u8>> {
    fn rec(rest: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..n as u8).collect(), &mut vec![0], &mut out);
    out
}

fn is_canonical(n: usize, t: &[u8], perms: &[Vec<u8>]) -> bool {
    let mut image = vec![0u8; n * n];
    for p in perms {
        // Relabel x as p[x]: image[p[a]][p[b]] = p[t[a][b]].
        for a in 0..n {
            for b in 0..n {
                image[p[a] as usize * n + p[b] as usize] = p[t[a * n + b] as usize];
            }
        }
        if image.as_slice() < t {
            return false;
        }
    }
    true
}
