//! Partitions and congruences of finite semigroups.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{FinSemigroup, SemigroupError};

/// Largest order accepted by [`enumerate_congruences`].
pub const CONGRUENCE_LIMIT: usize = 64;

/// A partition of `0..n`, stored as block labels in restricted-growth form
/// (the first element is in block 0, each new block gets the next label).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map = std::collections::HashMap::new();
        Partition(
            labels
                .iter()
                .map(|l| {
                    let next = map.len();
                    *map.entry(*l).or_insert(next)
                })
                .collect(),
        )
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Partition {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                labels[x] = i;
            }
        }
        // Elements missing from every block become singletons.
        for (l, next) in labels
            .iter_mut()
            .filter(|l| **l == usize::MAX)
            .zip(blocks.len()..)
        {
            *l = next;
        }
        Partition::from_labels(&labels)
    }

    pub fn discrete(n: usize) -> Partition {
        Partition((0..n).collect())
    }

    pub fn universal(n: usize) -> Partition {
        Partition(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn label(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.0.iter().enumerate() {
            blocks[l].push(x);
        }
        blocks
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.first_of_block(x));
            uf.union(x, other.first_of_block(x));
        }
        uf.partition()
    }

    fn first_of_block(&self, x: usize) -> usize {
        self.0.iter().position(|&l| l == self.0[x]).unwrap()
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| !self.related(x, y) || other.related(x, y)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// Every partition of `0..n`, in lexicographic order of label vectors.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if cur.len() == n {
            out.push(Partition(cur.clone()));
            return;
        }
        let fresh = cur.iter().max().map_or(0, |m| m + 1);
        for l in 0..=fresh {
            cur.push(l);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

pub fn is_congruence(s: &FinSemigroup, p: &Partition) -> bool {
    if p.len() != s.order() {
        return false;
    }
    let n = s.order();
    (0..n).all(|a| {
        let rep = p.first_of_block(a);
        (0..n)
            .all(|c| p.related(s.mul(c, a), s.mul(c, rep)) && p.related(s.mul(a, c), s.mul(rep, c)))
    })
}

/// The least congruence relating `a` and `b`.
pub fn principal_congruence(s: &FinSemigroup, a: usize, b: usize) -> Partition {
    let n = s.order();
    let mut uf = UnionFind::new(n);
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        if uf.union(x, y) {
            for c in 0..n {
                pending.push((s.mul(c, x), s.mul(c, y)));
                pending.push((s.mul(x, c), s.mul(y, c)));
            }
        }
    }
    uf.partition()
}

/// All congruences, sorted by their label vectors.
pub fn enumerate_congruences(s: &FinSemigroup) -> Result<Vec<Partition>, SemigroupError> {
    let n = s.order();
    if n > CONGRUENCE_LIMIT {
        return Err(SemigroupError::TooLarge {
            what: "semigroup order",
            size: n,
            limit: CONGRUENCE_LIMIT,
        });
    }
    let principal: Vec<Partition> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| principal_congruence(s, a, b))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // Every congruence is a join of principal ones.
    let mut seen: HashSet<Partition> = HashSet::from([Partition::discrete(n)]);
    let mut queue = vec![Partition::discrete(n)];
    while let Some(c) = queue.pop() {
        for p in &principal {
            let j = c.join(p);
            if seen.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    let mut out: Vec<Partition> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
