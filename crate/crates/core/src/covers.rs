//! Join-covers: classification, enumeration and refinement.
//!
//! A finite set `E` covers `p` when `p <= \/E`. It covers `p`
//!
//! * irredundantly if no member can be dropped,
//! * tightly if, moreover, no member can be replaced by a strictly smaller
//!   element,
//! * minimally if every cover `X` of `p` refining `E` contains `E`.
//!
//! Minimality is decided as "tight and made of join-irreducibles". Tight
//! covers refined by another tight cover split each member into a tight
//! join of the refining members, so a tight cover of join-irreducibles
//! cannot be properly refined; conversely a minimal cover is tight and
//! every member is join-irreducible (a reducible member splits into two
//! smaller ones). The quantified definition is kept in
//! [`is_minimal_by_definition`] as an oracle.

use std::collections::HashSet;
use std::fmt;

use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;
use crate::set::ElementSet;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverKind {
    Cover,
    Irredundant,
    Tight,
    Minimal,
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverKind::Cover => "cover",
            CoverKind::Irredundant => "irredundant",
            CoverKind::Tight => "tight",
            CoverKind::Minimal => "minimal",
        })
    }
}

/// A classified join-cover. `exact` records whether the members join to
/// the target exactly (a join-representation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    pub target: usize,
    pub members: ElementSet,
    pub kind: CoverKind,
    pub exact: bool,
}

impl Cover {
    /// `p <= a,b,c [kind]`
    pub fn render(&self, l: &Lattice) -> String {
        format!("{} <= {} [{}]", l.label(self.target), render_members(l, &self.members), self.kind)
    }
}

pub fn render_members(l: &Lattice, set: &ElementSet) -> String {
    if set.is_empty() {
        "{}".to_string()
    } else {
        l.format_set(set)
    }
}

/// `X <=ref Y`: every member of `X` lies below some member of `Y`.
pub fn refines(l: &Lattice, x: &ElementSet, y: &ElementSet) -> bool {
    x.is_subset(&l.downset(y))
}

pub fn covers(l: &Lattice, p: usize, e: &ElementSet) -> bool {
    l.leq(p, l.join_all(e))
}

fn join_without(l: &Lattice, e: &ElementSet, u: usize) -> usize {
    l.join_all(e.iter().filter(|&x| x != u))
}

pub fn is_irredundant(l: &Lattice, p: usize, e: &ElementSet) -> bool {
    covers(l, p, e) && !e.contains(l.bottom()) && e.iter().all(|u| !l.leq(p, join_without(l, e, u)))
}

/// Tightness only needs the lower covers of each member as replacements:
/// any strictly smaller element lies below one of them.
pub fn is_tight(l: &Lattice, p: usize, e: &ElementSet) -> bool {
    covers(l, p, e)
        && !e.contains(l.bottom())
        && e.iter().all(|u| {
            let rest = join_without(l, e, u);
            l.lower_covers(u).iter().all(|y| !l.leq(p, l.join(y, rest)))
        })
}

pub fn cover_kind(l: &Lattice, p: usize, e: &ElementSet) -> Option<CoverKind> {
    if !covers(l, p, e) {
        None
    } else if !is_irredundant(l, p, e) {
        Some(CoverKind::Cover)
    } else if !is_tight(l, p, e) {
        Some(CoverKind::Irredundant)
    } else if !e.is_subset(l.join_irreducibles()) {
        Some(CoverKind::Tight)
    } else {
        Some(CoverKind::Minimal)
    }
}

fn not_a_cover(l: &Lattice, p: usize, e: &ElementSet) -> LatticeError {
    LatticeError::NotACover { target: l.label(p).to_string(), members: l.format_set(e) }
}

pub fn classify_cover(l: &Lattice, p: usize, e: &ElementSet) -> Result<Cover> {
    let kind = cover_kind(l, p, e).ok_or_else(|| not_a_cover(l, p, e))?;
    Ok(Cover { target: p, members: e.clone(), kind, exact: l.join_all(e) == p })
}

/// The definition of a minimal cover, quantified over every `X <=ref E`.
/// Exponential in the size of the down-set of `E`.
pub fn is_minimal_by_definition(l: &Lattice, p: usize, e: &ElementSet) -> Result<bool> {
    if !covers(l, p, e) {
        return Ok(false);
    }
    let below: Vec<usize> = l.downset(e).to_vec();
    Limits::default().guard("minimality oracle down-set", below.len() as u128, 30)?;
    for mask in 0..(1u64 << below.len()) {
        let x = ElementSet::from_mask(&below, mask);
        if covers(l, p, &x) && !e.is_subset(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All antichains contained in `universe`, in lexicographic order of their
/// index lists.
pub fn antichains(l: &Lattice, universe: &ElementSet) -> Vec<ElementSet> {
    fn grow(l: &Lattice, pool: &[usize], start: usize, cur: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
        out.push(cur.iter().copied().collect());
        for i in start..pool.len() {
            let x = pool[i];
            if cur.iter().all(|&y| !l.comparable(x, y)) {
                cur.push(x);
                grow(l, pool, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    let pool = universe.to_vec();
    let mut out = Vec::new();
    grow(l, &pool, 0, &mut Vec::new(), &mut out);
    out
}

/// Every irredundant cover is an antichain of nonzero elements.
pub fn irredundant_covers(l: &Lattice, p: usize, limits: &Limits) -> Result<Vec<ElementSet>> {
    limits.guard_subsets(l)?;
    let nonzero = ElementSet::full(l.len()).difference(&ElementSet::singleton(l.bottom()));
    Ok(antichains(l, &nonzero).into_iter().filter(|e| is_irredundant(l, p, e)).collect())
}

pub fn tight_covers(l: &Lattice, p: usize, limits: &Limits) -> Result<Vec<ElementSet>> {
    Ok(irredundant_covers(l, p, limits)?.into_iter().filter(|e| is_tight(l, p, e)).collect())
}

/// All minimal join-covers of `p`: tight antichains of join-irreducibles.
pub fn minimal_join_covers(l: &Lattice, p: usize, limits: &Limits) -> Result<Vec<ElementSet>> {
    limits.guard_subsets(l)?;
    Ok(antichains(l, l.join_irreducibles()).into_iter().filter(|e| is_tight(l, p, e)).collect())
}

/// Minimal join-covers that join to `p` exactly.
pub fn minimal_join_representations(l: &Lattice, p: usize, limits: &Limits) -> Result<Vec<ElementSet>> {
    Ok(minimal_join_covers(l, p, limits)?.into_iter().filter(|e| l.join_all(e) == p).collect())
}

/// Shrinks a cover of `p` to a tight one refining it.
///
/// Repeatedly replaces the lowest-index member that admits it by its
/// lowest-index lower cover keeping `p` covered; the bottom is dropped.
pub fn refine_to_tight(l: &Lattice, p: usize, e: &ElementSet) -> Result<ElementSet> {
    if !covers(l, p, e) {
        return Err(not_a_cover(l, p, e));
    }
    let zero = ElementSet::singleton(l.bottom());
    let mut cur = e.difference(&zero);
    'descend: loop {
        for u in cur.iter() {
            let rest = cur.difference(&ElementSet::singleton(u));
            for y in l.lower_covers(u).iter() {
                let mut cand = rest.clone();
                cand.insert(y);
                let cand = cand.difference(&zero);
                if covers(l, p, &cand) {
                    cur = cand;
                    continue 'descend;
                }
            }
        }
        return Ok(cur);
    }
}

/// Refines a cover of `p` to a minimal one.
///
/// Tightens, then splits the lowest-index join-reducible member `q` into
/// the lexicographically first pair of strictly smaller elements joining
/// to `q`, and tightens again, until every member is join-irreducible.
/// Each round strictly refines the previous tight cover, so the loop ends.
pub fn refine_to_minimal(l: &Lattice, p: usize, e: &ElementSet) -> Result<ElementSet> {
    let mut cur = refine_to_tight(l, p, e)?;
    let mut visited = HashSet::new();
    loop {
        assert!(visited.insert(cur.clone()), "refinement revisited a cover");
        let Some(q) = cur.iter().find(|&q| !l.is_join_irreducible(q)) else {
            return Ok(cur);
        };
        let (x, y) = splitting_pair(l, q);
        let mut next = cur.difference(&ElementSet::singleton(q));
        next.insert(x);
        next.insert(y);
        let next = refine_to_tight(l, p, &next)?;
        debug_assert!(refines(l, &next, &cur));
        assert!(
            next == cur || !refines(l, &cur, &next),
            "refinement is not antisymmetric on tight covers"
        );
        cur = next;
    }
}

fn splitting_pair(l: &Lattice, q: usize) -> (usize, usize) {
    let below: Vec<usize> = l.down(q).iter().filter(|&x| x != q).collect();
    for (i, &x) in below.iter().enumerate() {
        for &y in &below[i + 1..] {
            if l.join(x, y) == q {
                return (x, y);
            }
        }
    }
    unreachable!("a nonzero join-reducible element is the join of two of its lower covers")
}

/// `col(p, q, r)`: pairwise incomparable join-irreducibles with equal pairwise joins.
pub fn collinear(l: &Lattice, p: usize, q: usize, r: usize) -> Result<bool> {
    for x in [p, q, r] {
        if !l.is_join_irreducible(x) {
            return Err(LatticeError::NotJoinIrreducible(l.label(x).to_string()));
        }
    }
    let incomparable = !l.comparable(p, q) && !l.comparable(p, r) && !l.comparable(q, r);
    let pq = l.join(p, q);
    Ok(incomparable && pq == l.join(p, r) && pq == l.join(q, r))
}
