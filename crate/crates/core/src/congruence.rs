//! Lattice congruences: principal congruences, the congruence lattice,
//! subdirect irreducibility and quotients.

use std::collections::{BTreeSet, HashSet};

use crate::error::Result;
use crate::lattice::Lattice;
use crate::Limits;

/// A partition of the elements, stored as a block number per element.
/// Blocks are numbered by their least element index, so equal partitions
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

impl Congruence {
    /// The diagonal, `x = y` only.
    pub fn identity(n: usize) -> Self {
        Congruence { block: (0..n).collect() }
    }

    /// Everything collapsed.
    pub fn full(n: usize) -> Self {
        Congruence { block: vec![0; n] }
    }

    fn from_union_find(mut uf: UnionFind) -> Self {
        let n = uf.0.len();
        let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let block = roots
            .iter()
            .map(|&r| {
                if ids[r] == usize::MAX {
                    ids[r] = next;
                    next += 1;
                }
                ids[r]
            })
            .collect();
        Congruence { block }
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks in order of their least element; members in index order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// Containment of relations.
    pub fn le(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| {
            let rep = self.blocks_rep(x);
            other.related(x, rep)
        })
    }

    fn blocks_rep(&self, x: usize) -> usize {
        self.block.iter().position(|&b| b == self.block[x]).expect("block is nonempty")
    }

    /// Intersection of relations.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            for y in 0..x {
                if self.related(x, y) && other.related(x, y) {
                    uf.union(x, y);
                }
            }
        }
        Congruence::from_union_find(uf)
    }

    /// Least congruence containing both, re-closed under the operations.
    pub fn join(&self, other: &Congruence, l: &Lattice) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for c in [self, other] {
            for block in c.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        close(l, uf)
    }

    /// Is the partition compatible with join and meet?
    pub fn is_compatible(&self, l: &Lattice) -> bool {
        l.elements().all(|x| {
            l.elements().filter(|&y| self.related(x, y)).all(|y| {
                l.elements().all(|z| {
                    self.related(l.join(x, z), l.join(y, z)) && self.related(l.meet(x, z), l.meet(y, z))
                })
            })
        })
    }

    /// `{0,a}{b,c}{1}` with element labels.
    pub fn render(&self, l: &Lattice) -> String {
        self.blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(",")))
            .collect()
    }
}

/// Closes a partition under `x = y  =>  x|z = y|z, x&z = y&z`. Comparing
/// each element with its block representative suffices, by transitivity.
fn close(l: &Lattice, mut uf: UnionFind) -> Congruence {
    loop {
        let mut changed = false;
        for x in l.elements() {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for z in l.elements() {
                changed |= uf.union(l.join(x, z), l.join(r, z));
                changed |= uf.union(l.meet(x, z), l.meet(r, z));
            }
        }
        if !changed {
            return Congruence::from_union_find(uf);
        }
    }
}

/// `con(x, y)`: the least congruence identifying `x` and `y`.
pub fn principal_congruence(l: &Lattice, x: usize, y: usize) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    uf.union(x, y);
    close(l, uf)
}

/// Distinct principal congruences of covering pairs. Every congruence is a
/// join of these, since blocks are convex.
pub fn cover_congruences(l: &Lattice) -> Vec<Congruence> {
    let mut seen = BTreeSet::new();
    for &(a, b) in l.covers() {
        seen.insert(principal_congruence(l, a, b));
    }
    seen.into_iter().collect()
}

/// Every congruence of `l`, sorted (the identity first).
pub fn all_congruences(l: &Lattice, limits: &Limits) -> Result<Vec<Congruence>> {
    limits.guard("congruence lattice", l.len() as u128, limits.max_congruence_lattice as u128)?;
    let gens = cover_congruences(l);
    let mut found: HashSet<Congruence> = HashSet::new();
    let identity = Congruence::identity(l.len());
    found.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(c) = frontier.pop() {
        for g in &gens {
            let j = c.join(g, l);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort();
    out.sort_by_key(|c| std::cmp::Reverse(c.block_count()));
    Ok(out)
}

/// A lattice is subdirectly irreducible when its nonzero congruences have a
/// least element, the monolith. Atoms of the congruence lattice are
/// principal congruences of covering pairs, so only those are inspected.
pub fn is_subdirectly_irreducible(l: &Lattice) -> (bool, Option<Congruence>) {
    let gens = cover_congruences(l);
    let minimal: Vec<&Congruence> =
        gens.iter().filter(|c| !gens.iter().any(|d| d != *c && d.le(c))).collect();
    match minimal.as_slice() {
        [m] => (true, Some((*m).clone())),
        _ => (false, None),
    }
}

/// `l / theta`; each block is labelled by its least element.
pub fn quotient(l: &Lattice, theta: &Congruence) -> Lattice {
    let reps: Vec<usize> = theta.blocks().iter().map(|b| l.meet_all(b.iter().copied())).collect();
    let labels = reps.iter().map(|&r| l.label(r).to_string()).collect();
    Lattice::from_leq(format!("{}/{}", l.name(), theta.render(l)), labels, |i, j| {
        theta.related(l.join(reps[i], reps[j]), reps[j])
    })
    .expect("quotients of lattices are lattices")
}
