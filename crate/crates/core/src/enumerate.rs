//! All lattices of a given size, up to isomorphism.
//!
//! Removing an atom from a finite lattice leaves a lattice (the rest is
//! join-closed and contains 0), so every lattice with `n + 1` elements is a
//! lattice with `n` elements plus a new atom whose upper covers form an
//! antichain of nonzero elements. The generator extends each lattice of the
//! previous size in every such way and keeps the first representative of
//! every isomorphism class, identified by its canonical form.

use std::collections::HashSet;

use crate::congruence::is_subdirectly_irreducible;
use crate::construct::{canonical_form, CanonicalForm};
use crate::covers::antichains;
use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;
use crate::named;
use crate::set::ElementSet;
use crate::terms::{holds_sdj, is_distributive, is_join_semidistributive, is_modular, is_n_distributive};
use crate::Limits;

/// Hard ceiling on the enumeration size, even with lifted guards.
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// Lattices of size `n`, streamed in generation order and named `latN_K`
/// (`K` counts from 1).
pub fn enumerate_lattices(n: usize, limits: &Limits) -> Result<Catalog> {
    let limit = limits.max_enumeration_size.min(MAX_ENUMERATION_SIZE);
    limits.guard("lattice enumeration", n as u128, limit as u128)?;
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let state = if n <= 2 {
        State::Fixed(vec![named::chain(n)].into_iter())
    } else {
        let mut level = vec![named::chain(2)];
        for _ in 3..n {
            level = Extension::new(level).collect();
        }
        State::Extending(Extension::new(level))
    };
    Ok(Catalog { size: n, emitted: 0, state })
}

#[derive(Debug)]
pub struct Catalog {
    size: usize,
    emitted: usize,
    state: State,
}

#[derive(Debug)]
enum State {
    Fixed(std::vec::IntoIter<Lattice>),
    Extending(Extension),
}

impl Catalog {
    pub fn size(&self) -> usize {
        self.size
    }
}

impl Iterator for Catalog {
    type Item = Lattice;

    fn next(&mut self) -> Option<Lattice> {
        let l = match &mut self.state {
            State::Fixed(it) => it.next(),
            State::Extending(it) => it.next(),
        }?;
        self.emitted += 1;
        Some(relabel(&l, format!("lat{}_{}", self.size, self.emitted)))
    }
}

/// One-atom extensions of a list of lattices, deduplicated.
#[derive(Debug)]
struct Extension {
    parents: Vec<Lattice>,
    parent: usize,
    pending: Vec<ElementSet>,
    seen: HashSet<CanonicalForm>,
}

impl Extension {
    fn new(parents: Vec<Lattice>) -> Self {
        Extension { parents, parent: 0, pending: Vec::new(), seen: HashSet::new() }
    }
}

impl Iterator for Extension {
    type Item = Lattice;

    fn next(&mut self) -> Option<Lattice> {
        loop {
            while self.pending.is_empty() {
                let l = self.parents.get(self.parent)?;
                let nonzero = ElementSet::full(l.len()).difference(&ElementSet::singleton(l.bottom()));
                self.pending = antichains(l, &nonzero);
                self.pending.reverse();
                self.parent += 1;
            }
            let uppers = self.pending.pop().expect("nonempty");
            let parent = &self.parents[self.parent - 1];
            if let Some(l) = add_atom(parent, &uppers) {
                if self.seen.insert(canonical_form(&l)) {
                    return Some(l);
                }
            }
        }
    }
}

/// `l` plus a new element above the bottom whose upper covers are `uppers`,
/// if that is a lattice.
fn add_atom(l: &Lattice, uppers: &ElementSet) -> Option<Lattice> {
    let n = l.len();
    let above = l.upset(uppers);
    let mut labels = l.labels().to_vec();
    labels.push(format!("#{n}"));
    Lattice::from_leq("", labels, |x, y| match (x == n, y == n) {
        (false, false) => l.leq(x, y),
        (true, true) => true,
        (true, false) => above.contains(y),
        (false, true) => x == l.bottom(),
    })
    .ok()
}

/// Relists the elements along a linear extension (by down-set size) and
/// names them `0`, `a`, `b`, ..., `1`.
fn relabel(l: &Lattice, name: String) -> Lattice {
    let mut order: Vec<usize> = l.elements().collect();
    order.sort_by_key(|&x| (l.down(x).len(), x));
    let n = l.len();
    let labels = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => middle_label(i - 1),
        })
        .collect();
    Lattice::from_leq(name, labels, |i, j| l.leq(order[i], order[j])).expect("relabelling keeps the order")
}

fn middle_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// Independent generator for cross-checking: every order on `0..n` that
/// extends the index order, has `0` least and `n-1` greatest, and has all
/// binary least upper bounds, deduplicated by trying every permutation.
pub fn naive_lattice_count(n: usize) -> usize {
    assert!((1..=7).contains(&n), "naive generation is only for tiny sizes");
    if n <= 2 {
        return 1;
    }
    let middle: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut classes: HashSet<Vec<bool>> = HashSet::new();
    for mask in 0u64..(1 << middle.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
            row[n - 1] = true;
        }
        leq[0].fill(true);
        for (b, &(i, j)) in middle.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])));
        if !transitive || !has_all_joins(&leq) {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| leq[p[i]][p[j]]).collect::<Vec<_>>())
            .min()
            .expect("at least one permutation");
        classes.insert(code);
    }
    classes.len()
}

fn has_all_joins(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let ub: Vec<usize> = (0..n).filter(|&z| leq[x][z] && leq[y][z]).collect();
            ub.iter().any(|&z| ub.iter().all(|&w| leq[z][w]))
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// A named catalog filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    NDistributive(usize),
    Modular,
    Distributive,
    JoinSemidistributive,
    SubdirectlyIrreducible,
    Sdj(usize),
}

impl std::str::FromStr for Predicate {
    type Err = LatticeError;

    /// `ndistr:N`, `modular`, `distributive`, `jsd`, `si`, `sdj:N`.
    fn from_str(s: &str) -> Result<Predicate> {
        let unknown = || LatticeError::UnknownPredicate(s.to_string());
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.parse::<usize>().map_err(|_| unknown())?)),
            None => (s, None),
        };
        Ok(match (name, param) {
            ("ndistr", Some(n)) if n >= 1 => Predicate::NDistributive(n),
            ("sdj", Some(n)) => Predicate::Sdj(n),
            ("modular", None) => Predicate::Modular,
            ("distributive", None) => Predicate::Distributive,
            ("jsd", None) => Predicate::JoinSemidistributive,
            ("si", None) => Predicate::SubdirectlyIrreducible,
            _ => return Err(unknown()),
        })
    }
}

impl Predicate {
    pub fn test(&self, l: &Lattice, limits: &Limits) -> Result<bool> {
        Ok(match *self {
            Predicate::NDistributive(n) => is_n_distributive(l, n, limits)?.holds(),
            Predicate::Modular => is_modular(l, limits)?.holds(),
            Predicate::Distributive => is_distributive(l, limits)?.holds(),
            Predicate::JoinSemidistributive => is_join_semidistributive(l, limits)?.holds(),
            Predicate::SubdirectlyIrreducible => is_subdirectly_irreducible(l).0,
            Predicate::Sdj(n) => holds_sdj(l, n, limits)?.holds(),
        })
    }
}

/// Lazily keeps the lattices satisfying `predicate`.
pub fn filter_catalog<'a>(
    catalog: impl Iterator<Item = Lattice> + 'a,
    predicate: Predicate,
    limits: &'a Limits,
) -> impl Iterator<Item = Result<Lattice>> + 'a {
    catalog.filter_map(move |l| match predicate.test(&l, limits) {
        Ok(true) => Some(Ok(l)),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::is_isomorphic;

    #[test]
    fn small_counts() {
        let lim = Limits::default();
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_lattices(n, &lim).unwrap().count()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn naive_generator_agrees() {
        let lim = Limits::default();
        for n in 1..=6 {
            assert_eq!(naive_lattice_count(n), enumerate_lattices(n, &lim).unwrap().count(), "size {n}");
        }
    }

    #[test]
    fn five_element_lattices() {
        let lim = Limits::default();
        let all: Vec<Lattice> = enumerate_lattices(5, &lim).unwrap().collect();
        assert!(all.iter().any(|l| is_isomorphic(l, &named::m3()).is_some()));
        assert!(all.iter().any(|l| is_isomorphic(l, &named::n5()).is_some()));
        for (i, l) in all.iter().enumerate() {
            assert_eq!(l.name(), format!("lat5_{}", i + 1));
            assert_eq!(l.label(l.bottom()), "0");
            assert_eq!(l.label(l.top()), "1");
            for m in &all[..i] {
                assert!(is_isomorphic(l, m).is_none());
            }
        }
        let two: Vec<Lattice> = enumerate_lattices(2, &lim).unwrap().collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].labels(), ["0", "1"]);
    }

    #[test]
    fn filters() {
        let lim = Limits::default();
        let count = |n, p: &str| {
            filter_catalog(enumerate_lattices(n, &lim).unwrap(), p.parse().unwrap(), &lim)
                .collect::<Result<Vec<_>>>()
                .unwrap()
        };
        let modular = count(5, "modular");
        assert!(modular.iter().any(|l| is_isomorphic(l, &named::m3()).is_some()));
        assert!(modular.iter().all(|l| is_isomorphic(l, &named::n5()).is_none()));
        assert_eq!(count(5, "distributive").len(), 3);
        assert_eq!(count(4, "ndistr:1").len(), 2);
        assert_eq!(count(5, "si").len(), 2);
        assert!(matches!("bogus".parse::<Predicate>(), Err(LatticeError::UnknownPredicate(_))));
        assert!("ndistr".parse::<Predicate>().is_err());
        assert!("modular:2".parse::<Predicate>().is_err());
        assert_eq!("sdj:2".parse::<Predicate>().unwrap(), Predicate::Sdj(2));
    }

    #[test]
    fn guard() {
        assert!(enumerate_lattices(8, &Limits::default()).is_err());
        assert!(enumerate_lattices(9, &Limits::overridden()).is_err());
        assert!(enumerate_lattices(0, &Limits::default()).is_err());
    }
}
