//! Rees matrix semigroups `M(I, G, Λ, P)` over finite groups and their
//! congruences, described by triples `(ρ₁, ρ₂, N)`.
//!
//! Indices are 0-based throughout; the distinguished coordinate `1` of the
//! usual notation is index 0 here. Element `(i, g, λ)` has index
//! `i·|G|·|Λ| + g·|Λ| + λ`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::semigroups::congruence::all_partitions;
use crate::semigroups::{is_congruence, FinSemigroup, Partition, SemigroupError};
use crate::Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReesError {
    #[error("the structure group is not a group")]
    NotGroup,
    #[error("sandwich matrix must have {rows} rows of length {cols}")]
    Dimension { rows: usize, cols: usize },
    #[error("sandwich entry {0} is not a group element")]
    EntryOutOfRange(usize),
    #[error("sandwich matrix is not normalized")]
    NotNormalized,
    #[error("partition is not a congruence of the Rees matrix semigroup")]
    NotCongruence,
    #[error("triple does not satisfy the congruence conditions")]
    InvalidTriple,
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesMatrix {
    i: usize,
    lambda: usize,
    group: FinSemigroup,
    identity: usize,
    inverses: Vec<usize>,
    /// `p[λ][i]`.
    p: Vec<Vec<usize>>,
}

impl ReesMatrix {
    pub fn new(
        i: usize,
        lambda: usize,
        group: FinSemigroup,
        p: Vec<Vec<usize>>,
    ) -> Result<ReesMatrix, ReesError> {
        if !group.is_group() {
            return Err(ReesError::NotGroup);
        }
        if i == 0 || lambda == 0 || p.len() != lambda || p.iter().any(|r| r.len() != i) {
            return Err(ReesError::Dimension {
                rows: lambda,
                cols: i,
            });
        }
        if let Some(&bad) = p.iter().flatten().find(|&&x| x >= group.order()) {
            return Err(ReesError::EntryOutOfRange(bad));
        }
        let identity = group.identity().expect("groups have an identity");
        let inverses = (0..group.order())
            .map(|g| group.inverse(g).expect("group element"))
            .collect();
        Ok(ReesMatrix {
            i,
            lambda,
            group,
            identity,
            inverses,
            p,
        })
    }

    pub fn i_size(&self) -> usize {
        self.i
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda
    }

    pub fn group(&self) -> &FinSemigroup {
        &self.group
    }

    pub fn entry(&self, lambda: usize, i: usize) -> usize {
        self.p[lambda][i]
    }

    pub fn order(&self) -> usize {
        self.i * self.group.order() * self.lambda
    }

    fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn index_of(&self, i: usize, g: usize, lambda: usize) -> usize {
        (i * self.group.order() + g) * self.lambda + lambda
    }

    pub fn decode(&self, x: usize) -> (usize, usize, usize) {
        let lambda = x % self.lambda;
        let rest = x / self.lambda;
        (rest / self.group.order(), rest % self.group.order(), lambda)
    }

    /// First row and first column of `P` equal to the identity.
    pub fn is_normalized(&self) -> bool {
        (0..self.i).all(|i| self.p[0][i] == self.identity)
            && (0..self.lambda).all(|l| self.p[l][0] == self.identity)
    }

    /// An isomorphic Rees matrix semigroup with normalized sandwich matrix:
    /// `q[λ][i] = p[λ][0]⁻¹ · p[λ][i] · p[0][i]⁻¹ · p[0][0]`.
    pub fn normalized(&self) -> ReesMatrix {
        let q = (0..self.lambda)
            .map(|l| {
                (0..self.i)
                    .map(|i| {
                        let left = self.mul(self.inv(self.p[l][0]), self.p[l][i]);
                        let right = self.mul(self.inv(self.p[0][i]), self.p[0][0]);
                        self.mul(left, right)
                    })
                    .collect()
            })
            .collect();
        ReesMatrix {
            p: q,
            ..self.clone()
        }
    }

    /// `(i,g,λ)(j,h,μ) = (i, g·p[λ][j]·h, μ)`.
    pub fn build(&self) -> FinSemigroup {
        let n = self.order();
        let table = (0..n * n)
            .map(|k| {
                let (i, g, l) = self.decode(k / n);
                let (j, h, m) = self.decode(k % n);
                self.index_of(i, self.mul(self.mul(g, self.p[l][j]), h), m)
            })
            .collect();
        let names = (0..n)
            .map(|x| {
                let (i, g, l) = self.decode(x);
                format!("({},{},{})", i + 1, self.group.name(g), l + 1)
            })
            .collect();
        FinSemigroup::from_flat(n, table, Some(names), Signature::Semigroup)
            .expect("Rees matrix products are associative")
    }

    /// Every normalized sandwich matrix over the given group and sizes.
    pub fn all_normalized(
        i: usize,
        lambda: usize,
        group: &FinSemigroup,
    ) -> Result<Vec<ReesMatrix>, ReesError> {
        if !group.is_group() {
            return Err(ReesError::NotGroup);
        }
        let e = group.identity().expect("groups have an identity");
        let g = group.order();
        let free = (i - 1) * (lambda - 1);
        let count = g
            .checked_pow(free as u32)
            .filter(|&c| c <= 1 << 20)
            .ok_or_else(|| ReesError::TooLarge(format!("{g}^{free} sandwich matrices")))?;
        (0..count)
            .map(|mut code| {
                let mut p = vec![vec![e; i]; lambda];
                for row in p.iter_mut().skip(1) {
                    for cell in row.iter_mut().skip(1) {
                        *cell = code % g;
                        code /= g;
                    }
                }
                ReesMatrix::new(i, lambda, group.clone(), p)
            })
            .collect()
    }
}

pub fn build_rees(r: &ReesMatrix) -> FinSemigroup {
    r.build()
}

/// Congruence data `(ρ₁, ρ₂, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceTriple {
    pub rho1: Partition,
    pub rho2: Partition,
    pub n: BTreeSet<usize>,
}

impl fmt::Display for CongruenceTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n: Vec<String> = self.n.iter().map(|g| g.to_string()).collect();
        write!(
            f,
            "rho1={} rho2={} N={{{}}}",
            self.rho1,
            self.rho2,
            n.join(",")
        )
    }
}

impl CongruenceTriple {
    pub fn identity(r: &ReesMatrix) -> CongruenceTriple {
        CongruenceTriple {
            rho1: Partition::discrete(r.i),
            rho2: Partition::discrete(r.lambda),
            n: BTreeSet::from([r.identity]),
        }
    }

    pub fn universal(r: &ReesMatrix) -> CongruenceTriple {
        CongruenceTriple {
            rho1: Partition::universal(r.i),
            rho2: Partition::universal(r.lambda),
            n: (0..r.group.order()).collect(),
        }
    }
}

pub fn is_normal_subgroup(g: &FinSemigroup, n: &BTreeSet<usize>) -> bool {
    let Some(e) = g.identity() else {
        return false;
    };
    if !n.contains(&e) {
        return false;
    }
    // In a finite group a nonempty subset closed under products is a subgroup.
    let closed = n
        .iter()
        .all(|&a| n.iter().all(|&b| n.contains(&g.mul(a, b))));
    let normal = (0..g.order()).all(|x| {
        let xi = g.inverse(x).expect("group element");
        n.iter().all(|&a| n.contains(&g.mul(g.mul(x, a), xi)))
    });
    closed && normal
}

/// Smallest normal subgroup containing `gens`.
fn normal_closure(g: &FinSemigroup, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let e = g.identity().expect("groups have an identity");
    let mut set: BTreeSet<usize> = BTreeSet::from([e]);
    let mut queue: Vec<usize> = gens.into_iter().collect();
    while let Some(a) = queue.pop() {
        if !set.insert(a) {
            continue;
        }
        let members: Vec<usize> = set.iter().copied().collect();
        for b in members {
            queue.push(g.mul(a, b));
            queue.push(g.mul(b, a));
        }
        for x in 0..g.order() {
            let xi = g.inverse(x).expect("group element");
            queue.push(g.mul(g.mul(x, a), xi));
        }
    }
    set
}

/// All normal subgroups, sorted.
pub fn normal_subgroups(g: &FinSemigroup) -> Vec<BTreeSet<usize>> {
    let trivial = normal_closure(g, []);
    let mut seen = BTreeSet::from([trivial.clone()]);
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let k = normal_closure(g, h.iter().copied().chain([x]));
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    seen.into_iter().collect()
}

/// Normality of `N` plus the two coset conditions on `P`.
pub fn triple_valid(r: &ReesMatrix, t: &CongruenceTriple) -> bool {
    if t.rho1.len() != r.i || t.rho2.len() != r.lambda || !is_normal_subgroup(&r.group, &t.n) {
        return false;
    }
    let same_coset = |a: usize, b: usize| t.n.contains(&r.mul(r.inv(a), b));
    let cond1 = (0..r.i).all(|i| {
        (0..i).all(|j| {
            !t.rho1.related(i, j) || (0..r.lambda).all(|l| same_coset(r.p[l][i], r.p[l][j]))
        })
    });
    let cond2 = (0..r.lambda).all(|l| {
        (0..l).all(|m| !t.rho2.related(l, m) || (0..r.i).all(|i| same_coset(r.p[l][i], r.p[m][i])))
    });
    cond1 && cond2
}

/// `(i,g,λ) ρ (j,h,μ)` iff `i ρ₁ j`, `λ ρ₂ μ` and `gN = hN`.
pub fn congruence_from_triple(
    r: &ReesMatrix,
    t: &CongruenceTriple,
) -> Result<Partition, ReesError> {
    if !triple_valid(r, t) {
        return Err(ReesError::InvalidTriple);
    }
    let g = r.group.order();
    // Label each coset by its least element.
    let coset: Vec<usize> = (0..g)
        .map(|x| {
            (0..g)
                .find(|&y| t.n.contains(&r.mul(r.inv(x), y)))
                .expect("x is in its own coset")
        })
        .collect();
    let labels: Vec<usize> = (0..r.order())
        .map(|x| {
            let (i, h, l) = r.decode(x);
            (t.rho1.label(i) * g + coset[h]) * r.lambda + t.rho2.label(l)
        })
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// Reads off `(ρ₁, ρ₂, N)` from a congruence of a normalized Rees matrix
/// semigroup.
pub fn triple_from_congruence(
    r: &ReesMatrix,
    rho: &Partition,
) -> Result<CongruenceTriple, ReesError> {
    if !r.is_normalized() {
        return Err(ReesError::NotNormalized);
    }
    let s = r.build();
    if !is_congruence(&s, rho) {
        return Err(ReesError::NotCongruence);
    }
    let e = r.identity;
    let rho1 = (0..r.i)
        .map(|i| rho.label(r.index_of(i, e, 0)))
        .collect::<Vec<_>>();
    let rho2 = (0..r.lambda)
        .map(|l| rho.label(r.index_of(0, e, l)))
        .collect::<Vec<_>>();
    let base = r.index_of(0, e, 0);
    let n = (0..r.group.order())
        .filter(|&g| rho.related(r.index_of(0, g, 0), base))
        .collect();
    Ok(CongruenceTriple {
        rho1: Partition::from_labels(&rho1),
        rho2: Partition::from_labels(&rho2),
        n,
    })
}

/// Every valid triple, from all partitions of `I` and `Λ` and all normal
/// subgroups of `G`.
pub fn enumerate_triples(r: &ReesMatrix) -> Result<Vec<CongruenceTriple>, ReesError> {
    if r.i > 6 || r.lambda > 6 || r.group.order() > 24 {
        return Err(ReesError::TooLarge(format!(
            "|I|={}, |Λ|={}, |G|={}",
            r.i,
            r.lambda,
            r.group.order()
        )));
    }
    let normals = normal_subgroups(&r.group);
    let mut out = Vec::new();
    for rho1 in all_partitions(r.i) {
        for rho2 in all_partitions(r.lambda) {
            for n in &normals {
                let t = CongruenceTriple {
                    rho1: rho1.clone(),
                    rho2: rho2.clone(),
                    n: n.clone(),
                };
                if triple_valid(r, &t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}
