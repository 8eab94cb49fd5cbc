//! Seeds, join-density and join-subsemilattices generated by a subset.
//!
//! For a finite lattice every ideal is principal, so the ideal lattice of
//! `L` is `L` itself and the ideal lattice of the join-closure `S` of a
//! subset is `S`. The ideal extension map becomes the inclusion `S -> L`
//! and its adjoint becomes [`SubJoinSemilattice::proj`], the largest
//! element of `S` below a given element. Neither map needs its own type.

use crate::covers::{antichains, minimal_join_covers};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::set::ElementSet;
use crate::terms::{eval_with, Assignment, Term};
use crate::{Limits, Verdict};

/// The join-closure of a subset, with `0` added, and its relative meet.
#[derive(Clone, Debug)]
pub struct SubJoinSemilattice<'a> {
    ambient: &'a Lattice,
    carrier: ElementSet,
    proj: Vec<usize>,
}

/// Closure of `sigma` and `0` under binary join.
pub fn span<'a>(l: &'a Lattice, sigma: &ElementSet) -> SubJoinSemilattice<'a> {
    let mut carrier = sigma.clone();
    carrier.insert(l.bottom());
    let mut frontier = carrier.to_vec();
    while let Some(x) = frontier.pop() {
        for y in carrier.to_vec() {
            let j = l.join(x, y);
            if carrier.insert(j) {
                frontier.push(j);
            }
        }
    }
    let proj = l.elements().map(|a| l.join_all(carrier.intersection(l.down(a)).iter())).collect();
    SubJoinSemilattice { ambient: l, carrier, proj }
}

impl<'a> SubJoinSemilattice<'a> {
    pub fn ambient(&self) -> &'a Lattice {
        self.ambient
    }

    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    /// Largest carrier element below `a`.
    pub fn proj(&self, a: usize) -> usize {
        self.proj[a]
    }

    /// Meet inside the carrier: the largest carrier element below `x & y`.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.proj[self.ambient.meet(x, y)]
    }

    /// Evaluates `t` in the carrier after projecting every argument.
    pub fn eval_relative(&self, t: &Term, a: &Assignment) -> Result<usize> {
        let projected: Assignment = a.iter().map(|(v, &x)| (v.clone(), self.proj(x))).collect();
        eval_with(t, &projected, |x, y| self.meet(x, y), |x, y| self.ambient.join(x, y))
    }

    /// The carrier as a lattice in its own right, re-indexed in increasing
    /// ambient order.
    pub fn to_lattice(&self, name: impl Into<String>) -> Lattice {
        self.ambient.induced(&self.carrier, name).expect("a finite join-semilattice with 0 is a lattice")
    }
}

/// Is every element the join of the members of `sigma` below it?
/// The witness is the first element that is not.
pub fn is_join_dense(l: &Lattice, sigma: &ElementSet) -> Verdict<usize> {
    match l.elements().find(|&a| l.join_all(sigma.intersection(l.down(a)).iter()) != a) {
        Some(a) => Verdict::Fails(a),
        None => Verdict::Holds,
    }
}

/// Join-density by separation: whenever `a` is not below `b`, some member of
/// `sigma` is below `a` and not below `b`. Returns the first bad pair.
pub fn is_join_dense_by_separation(l: &Lattice, sigma: &ElementSet) -> Verdict<(usize, usize)> {
    for a in l.elements() {
        for b in l.elements().filter(|&b| !l.leq(a, b)) {
            if !sigma.iter().any(|x| l.leq(x, a) && !l.leq(x, b)) {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// Why a subset is not a (pre-, quasi-) seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedFailure {
    /// This element is not the join of the members below it.
    NotJoinDense(usize),
    /// This member is join-reducible.
    NotJoinIrreducible(usize),
    /// `x` covers `p` but admits no suitable refining cover from the subset.
    Uncovered { p: usize, x: ElementSet },
}

impl SeedFailure {
    pub fn render(&self, l: &Lattice) -> String {
        match self {
            SeedFailure::NotJoinDense(a) => format!("{} is not a join of members below it", l.label(*a)),
            SeedFailure::NotJoinIrreducible(a) => format!("{} is not join-irreducible", l.label(*a)),
            SeedFailure::Uncovered { p, x } => {
                format!("{} <= {} has no refinement inside the subset", l.label(*p), crate::covers::render_members(l, x))
            }
        }
    }
}

/// Cover candidates for the seed conditions. Coverage and refinement by a
/// cover depend only on its down-set, and every down-set of a finite set is
/// generated by an antichain, so antichains of nonzero elements suffice.
fn cover_antichains(l: &Lattice, limits: &Limits) -> Result<Vec<ElementSet>> {
    limits.guard_subsets(l)?;
    let nonzero = ElementSet::full(l.len()).difference(&ElementSet::singleton(l.bottom()));
    Ok(antichains(l, &nonzero))
}

fn first_uncovered(
    l: &Lattice,
    sigma: &ElementSet,
    limits: &Limits,
    mut refinable: impl FnMut(usize, &ElementSet) -> bool,
) -> Result<Option<SeedFailure>> {
    let candidates = cover_antichains(l, limits)?;
    for p in sigma.iter() {
        for x in candidates.iter().filter(|x| l.leq(p, l.join_all(x.iter()))) {
            let usable = sigma.intersection(&l.downset(x));
            if !refinable(p, &usable) {
                return Ok(Some(SeedFailure::Uncovered { p, x: x.clone() }));
            }
        }
    }
    Ok(None)
}

/// Every cover of a member is refined by a cover drawn from `sigma`. The
/// largest candidate is `sigma` restricted to the down-set of the cover.
pub fn is_pre_seed(l: &Lattice, sigma: &ElementSet, limits: &Limits) -> Result<Verdict<SeedFailure>> {
    let failure = first_uncovered(l, sigma, limits, |p, usable| l.leq(p, l.join_all(usable.iter())))?;
    Ok(failure.map_or(Verdict::Holds, Verdict::Fails))
}

fn shape_failure(l: &Lattice, sigma: &ElementSet) -> Option<SeedFailure> {
    if let Some(a) = sigma.iter().find(|&a| !l.is_join_irreducible(a)) {
        return Some(SeedFailure::NotJoinIrreducible(a));
    }
    is_join_dense(l, sigma).witness().map(|&a| SeedFailure::NotJoinDense(a))
}

/// A join-dense pre-seed of join-irreducibles.
pub fn is_quasi_seed(l: &Lattice, sigma: &ElementSet, limits: &Limits) -> Result<Verdict<SeedFailure>> {
    if let Some(f) = shape_failure(l, sigma) {
        return Ok(Verdict::Fails(f));
    }
    is_pre_seed(l, sigma, limits)
}

/// Join-dense, made of join-irreducibles, and every cover of a member is
/// refined by a minimal cover lying in `sigma`.
pub fn is_seed(l: &Lattice, sigma: &ElementSet, limits: &Limits) -> Result<Verdict<SeedFailure>> {
    if let Some(f) = shape_failure(l, sigma) {
        return Ok(Verdict::Fails(f));
    }
    let mut mcov: Vec<Vec<ElementSet>> = vec![Vec::new(); l.len()];
    for p in sigma.iter() {
        mcov[p] = minimal_join_covers(l, p, limits)?;
    }
    let failure = first_uncovered(l, sigma, limits, |p, usable| mcov[p].iter().any(|i| i.is_subset(usable)))?;
    Ok(failure.map_or(Verdict::Holds, Verdict::Fails))
}

/// The join-irreducibles form a seed.
pub fn is_strongly_spatial(l: &Lattice, limits: &Limits) -> Result<Verdict<SeedFailure>> {
    is_seed(l, l.join_irreducibles(), limits)
}

/// Does projection onto the span of `sigma` preserve joins and meets?
/// The witness is the first pair `(a, b)` where it does not.
pub fn galois_pi_is_homomorphism(l: &Lattice, sigma: &ElementSet) -> Verdict<(usize, usize)> {
    let s = span(l, sigma);
    for a in l.elements() {
        for b in l.elements() {
            let (pa, pb) = (s.proj(a), s.proj(b));
            if s.proj(l.join(a, b)) != l.join(pa, pb) || s.proj(l.meet(a, b)) != s.meet(pa, pb) {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::terms::{eval, parse_term};

    fn set(l: &Lattice, s: &str) -> ElementSet {
        l.parse_set(s).unwrap()
    }

    fn ix(l: &Lattice, s: &str) -> usize {
        l.index_of(s).unwrap()
    }

    #[test]
    fn span_examples() {
        let m3 = named::m3();
        let s = span(&m3, &set(&m3, "a,b"));
        assert_eq!(s.carrier(), &set(&m3, "0,a,b,1"));
        assert_eq!(span(&m3, m3.join_irreducibles()).carrier().len(), 5);
        assert_eq!(span(&m3, &ElementSet::new()).carrier(), &set(&m3, "0"));
        assert_eq!(s.proj(ix(&m3, "c")), ix(&m3, "0"));
        assert_eq!(s.proj(ix(&m3, "a")), ix(&m3, "a"));
        assert_eq!(s.proj(ix(&m3, "1")), ix(&m3, "1"));
        assert_eq!(s.to_lattice("S").len(), 4);
    }

    #[test]
    fn relative_evaluation() {
        let m3 = named::m3();
        let s = span(&m3, &set(&m3, "a,b"));
        let t = parse_term("x&(y|z)").unwrap();
        let a: Assignment =
            [("x", "c"), ("y", "a"), ("z", "b")].iter().map(|&(v, e)| (v.to_string(), ix(&m3, e))).collect();
        assert_eq!(s.eval_relative(&t, &a).unwrap(), ix(&m3, "0"));
        let full = span(&m3, m3.join_irreducibles());
        assert_eq!(full.eval_relative(&t, &a).unwrap(), eval(&m3, &t, &a).unwrap());
        let single = span(&m3, &set(&m3, "a"));
        let a: Assignment = [("y".to_string(), ix(&m3, "a")), ("z".to_string(), ix(&m3, "a"))].into();
        assert_eq!(single.eval_relative(&parse_term("y|z").unwrap(), &a).unwrap(), ix(&m3, "a"));
    }

    #[test]
    fn seed_examples() {
        let lim = Limits::default();
        let m3 = named::m3();
        let v = is_pre_seed(&m3, &set(&m3, "a,b"), &lim).unwrap();
        assert_eq!(v, Verdict::Fails(SeedFailure::Uncovered { p: ix(&m3, "a"), x: set(&m3, "b,c") }));
        assert!(is_seed(&m3, m3.join_irreducibles(), &lim).unwrap().holds());
        assert!(is_quasi_seed(&m3, m3.join_irreducibles(), &lim).unwrap().holds());
        for l in [named::n5(), named::boolean(3), named::chain(4), named::diamond(4)] {
            assert!(is_strongly_spatial(&l, &lim).unwrap().holds());
        }
        assert!(matches!(
            is_quasi_seed(&m3, &set(&m3, "a,1"), &lim).unwrap(),
            Verdict::Fails(SeedFailure::NotJoinIrreducible(_))
        ));
        assert!(matches!(
            is_seed(&m3, &set(&m3, "a,b"), &lim).unwrap(),
            Verdict::Fails(SeedFailure::NotJoinDense(_))
        ));
    }

    #[test]
    fn join_density() {
        let m3 = named::m3();
        assert_eq!(is_join_dense(&m3, &set(&m3, "a,b")), Verdict::Fails(ix(&m3, "c")));
        assert!(!is_join_dense_by_separation(&m3, &set(&m3, "a,b")).holds());
        for l in [named::m3(), named::n5(), named::grid(2, 3)] {
            assert!(is_join_dense(&l, l.join_irreducibles()).holds());
            assert!(is_join_dense(&l, &ElementSet::full(l.len())).holds());
            for mask in 0u64..(1 << l.len()) {
                let s = ElementSet::from_mask(&l.elements().collect::<Vec<_>>(), mask);
                assert_eq!(is_join_dense(&l, &s).holds(), is_join_dense_by_separation(&l, &s).holds());
            }
        }
    }

    #[test]
    fn projection_homomorphism() {
        let m3 = named::m3();
        let v = galois_pi_is_homomorphism(&m3, &set(&m3, "a,b"));
        let (a, b) = *v.witness().unwrap();
        let s = span(&m3, &set(&m3, "a,b"));
        assert_ne!(s.proj(m3.join(a, b)), m3.join(s.proj(a), s.proj(b)));
        assert!(galois_pi_is_homomorphism(&m3, m3.join_irreducibles()).holds());
        let c = named::chain(4);
        let s = span(&c, &set(&c, "1,3"));
        for a in c.elements() {
            for b in c.elements() {
                assert_eq!(s.proj(c.meet(a, b)), s.meet(s.proj(a), s.proj(b)));
            }
        }
    }

    #[test]
    fn pre_seed_matches_projection_on_n5() {
        let lim = Limits::default();
        let n5 = named::n5();
        let nonzero: Vec<usize> = n5.elements().filter(|&x| x != n5.bottom()).collect();
        for mask in 0u64..(1 << nonzero.len()) {
            let s = ElementSet::from_mask(&nonzero, mask);
            assert_eq!(
                is_pre_seed(&n5, &s, &lim).unwrap().holds(),
                galois_pi_is_homomorphism(&n5, &s).holds(),
                "{}",
                n5.format_set(&s)
            );
        }
    }
}
