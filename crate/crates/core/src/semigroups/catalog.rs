//! Named small semigroups.
//!
//! | name        | elements                                   |
//! |-------------|--------------------------------------------|
//! | `Sl2`       | `1, 0` under meet                          |
//! | `B(m,n)`    | rectangular band, `(i,j)(k,l) = (i,l)`     |
//! | `C(m,n)`    | monogenic, `a^m = a^(m+n)`                 |
//! | `Cn`        | cyclic group of order `n`                  |
//! | `B2`        | `a, b, ab, ba, 0` with `aba=a, bab=b, a²=b²=0` |
//! | `N`         | `a, b, ab, 0` with `a²=b²=ba=0`            |
//! | `T`         | `e, a, 0` with `e²=e, ea=a, ae=0, a²=0`    |
//! | `S3`, `S4`, `A4`, `D4`, `Q8`, `C2xC2` | small groups     |
//!
//! A trailing `^1` in [`catalog_by_name`] adjoins a fresh identity.

use std::collections::HashMap;

use super::{adjoin_identity, direct_product, FinSemigroup, SemigroupError};
use crate::Signature;

/// Builds a catalog semigroup from its name and integer parameters.
pub fn catalog(name: &str, params: &[usize]) -> Result<FinSemigroup, SemigroupError> {
    let bad = |msg: &str| Err(SemigroupError::BadParams(format!("{name}: {msg}")));
    match (name, params) {
        ("Sl2", []) => from_fn(2, |a, b| a.max(b), names(["1", "0"])),
        ("B", &[m, n]) => {
            if m == 0 || n == 0 {
                return bad("dimensions must be positive");
            }
            let names = (0..m * n)
                .map(|x| format!("({},{})", x / n + 1, x % n + 1))
                .collect();
            from_fn(m * n, |a, b| (a / n) * n + b % n, Some(names))
        }
        ("C", &[m, n]) => {
            if m == 0 || n == 0 {
                return bad("index and period must be positive");
            }
            let size = m + n - 1;
            let reduce = |k: usize| if k < m + n { k } else { m + (k - m) % n };
            let names = (1..=size)
                .map(|k| {
                    if k == 1 {
                        "a".to_string()
                    } else {
                        format!("a^{k}")
                    }
                })
                .collect();
            from_fn(size, |a, b| reduce(a + b + 2) - 1, Some(names))
        }
        ("C", &[n]) => {
            if n == 0 {
                return bad("order must be positive");
            }
            let names = (0..n)
                .map(|k| match k {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{k}"),
                })
                .collect();
            from_fn(n, |a, b| (a + b) % n, Some(names))
        }
        ("B2", []) => {
            // Brandt pairs: a=(1,2), b=(2,1), ab=(1,1), ba=(2,2); index 4 is 0.
            let pairs = [(0, 1), (1, 0), (0, 0), (1, 1)];
            from_fn(
                5,
                |a, b| {
                    if a == 4 || b == 4 || pairs[a].1 != pairs[b].0 {
                        return 4;
                    }
                    let target = (pairs[a].0, pairs[b].1);
                    pairs.iter().position(|&p| p == target).unwrap()
                },
                names(["a", "b", "ab", "ba", "0"]),
            )
        }
        ("N", []) => from_fn(
            4,
            |a, b| if (a, b) == (0, 1) { 2 } else { 3 },
            names(["a", "b", "ab", "0"]),
        ),
        ("T", []) => from_fn(
            3,
            |a, b| match (a, b) {
                (0, 0) => 0,
                (0, 1) => 1,
                _ => 2,
            },
            names(["e", "a", "0"]),
        ),
        ("S", &[n]) if (1..=6).contains(&n) => {
            let mut gens = vec![(1..n).chain([0]).collect::<Vec<_>>()];
            if n > 2 {
                let mut swap: Vec<usize> = (0..n).collect();
                swap.swap(0, 1);
                gens.push(swap);
            }
            permutation_group(n, &gens)
        }
        ("A", &[n]) if (3..=6).contains(&n) => {
            // 3-cycles (0 1 i) generate the alternating group.
            let gens: Vec<Vec<usize>> = (2..n)
                .map(|i| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p[0] = 1;
                    p[1] = i;
                    p[i] = 0;
                    p
                })
                .collect();
            permutation_group(n, &gens)
        }
        ("D", &[n]) if n >= 3 => {
            let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            permutation_group(n, &[rot, refl])
        }
        ("Q8", []) => quaternion(),
        ("C2xC2", []) => {
            let c2 = catalog("C", &[2])?;
            direct_product(&c2, &c2)
        }
        (_, []) if name.ends_with(|c: char| c.is_ascii_digit()) => catalog_by_name(name),
        _ => Err(SemigroupError::UnknownCatalog(format!("{name}{params:?}"))),
    }
}

fn names<const N: usize>(n: [&str; N]) -> Option<Vec<String>> {
    Some(n.iter().map(|s| s.to_string()).collect())
}

fn from_fn(
    size: usize,
    f: impl Fn(usize, usize) -> usize,
    names: Option<Vec<String>>,
) -> Result<FinSemigroup, SemigroupError> {
    let table = (0..size * size).map(|k| f(k / size, k % size)).collect();
    let provisional = FinSemigroup::from_flat(size, table, names, Signature::Semigroup)?;
    let sig = if provisional.identity().is_some() {
        Signature::Monoid
    } else {
        Signature::Semigroup
    };
    provisional.with_signature(sig)
}

/// Closure of the generators under composition; identity first.
fn permutation_group(n: usize, gens: &[Vec<usize>]) -> Result<FinSemigroup, SemigroupError> {
    let id: Vec<usize> = (0..n).collect();
    let mut elems = vec![id];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut k = 0;
    while k < elems.len() {
        for g in gens {
            let p: Vec<usize> = (0..n).map(|x| g[elems[k][x]]).collect();
            if !index.contains_key(&p) {
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        k += 1;
    }
    let size = elems.len();
    let names = (0..size)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect();
    from_fn(
        size,
        |a, b| {
            let p: Vec<usize> = (0..n).map(|x| elems[b][elems[a][x]]).collect();
            index[&p]
        },
        Some(names),
    )
}

fn quaternion() -> Result<FinSemigroup, SemigroupError> {
    // Units 1, i, j, k as 0..4; product gives (sign, unit).
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    // Element 2u + s stands for (-1)^s u.
    from_fn(
        8,
        |a, b| {
            let (neg, u) = UNIT[a / 2][b / 2];
            let sign = (a % 2 + b % 2 + usize::from(neg)) % 2;
            2 * u + sign
        },
        names(["1", "-1", "i", "-i", "j", "-j", "k", "-k"]),
    )
}

/// Looks up names such as `Sl2`, `B(1,2)`, `C(2,1)^1`, `C4`, `B2`, `S3`.
pub fn catalog_by_name(text: &str) -> Result<FinSemigroup, SemigroupError> {
    let text = text.trim();
    if let Some(base) = text.strip_suffix("^1") {
        return Ok(adjoin_identity(&catalog_by_name(base)?));
    }
    let unknown = || SemigroupError::UnknownCatalog(text.to_string());
    if let Some(open) = text.find('(') {
        let name = &text[..open];
        let inner = text[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        let params = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| unknown())?;
        return catalog(name, &params);
    }
    match text {
        "Sl2" | "B2" | "N" | "T" | "Q8" | "C2xC2" => catalog(text, &[]),
        _ => {
            let split = text
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(unknown)?;
            let (name, num) = text.split_at(split);
            let n = num.parse::<usize>().map_err(|_| unknown())?;
            match name {
                "C" | "S" | "A" | "D" => catalog(name, &[n]),
                _ => Err(unknown()),
            }
        }
    }
}

/// Every fixed catalog entry used in tests and audits, paired with its name.
pub fn standard_catalog() -> Vec<(String, FinSemigroup)> {
    let names = [
        "Sl2", "B(1,2)", "B(2,1)", "B(2,2)", "C(1,1)", "C(2,1)", "C(1,2)", "C(2,2)", "C(3,1)",
        "C(2,3)", "C2", "C3", "C4", "B2", "N", "T", "S3",
    ];
    names
        .iter()
        .map(|n| (n.to_string(), catalog_by_name(n).expect("catalog entry")))
        .collect()
}
