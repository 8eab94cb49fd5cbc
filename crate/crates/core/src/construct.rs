//! Building new lattices from old ones, and comparing lattices up to isomorphism.

use crate::lattice::Lattice;
use crate::set::ElementSet;

/// Componentwise product; `(x, y)` has index `x * b.len() + y`.
pub fn product(a: &Lattice, b: &Lattice) -> Lattice {
    let nb = b.len();
    let labels = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.label(x), b.label(y)))
        .collect();
    Lattice::from_leq(format!("{}x{}", a.name(), b.name()), labels, |i, j| {
        a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb)
    })
    .expect("products of lattices are lattices")
}

/// Product of several lattices; the empty product is the one-element lattice.
pub fn product_all(factors: &[Lattice]) -> Lattice {
    match factors {
        [] => Lattice::from_covers::<&str>("1", &["()"], &[]).expect("one-element lattice"),
        [first, rest @ ..] => rest.iter().fold(first.clone(), |acc, f| product(&acc, f)),
    }
}

/// The same elements with the order reversed.
pub fn dual(l: &Lattice) -> Lattice {
    Lattice::from_leq(format!("dual({})", l.name()), l.labels().to_vec(), |x, y| l.leq(y, x))
        .expect("the dual of a lattice is a lattice")
}

/// The least subset containing `gens` and closed under join and meet.
pub fn sublattice_generated(l: &Lattice, gens: &ElementSet) -> ElementSet {
    let mut closed = gens.clone();
    let mut frontier = gens.to_vec();
    while let Some(x) = frontier.pop() {
        let current = closed.to_vec();
        for y in current {
            for z in [l.join(x, y), l.meet(x, y)] {
                if closed.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    closed
}

/// Per-element isomorphism invariant: sizes of the down-set and up-set and
/// the number of lower and upper covers.
pub fn invariants(l: &Lattice) -> Vec<[usize; 4]> {
    l.elements()
        .map(|x| [l.down(x).len(), l.up(x).len(), l.lower_covers(x).len(), l.upper_covers(x).len()])
        .collect()
}

/// Searches for an order isomorphism `a -> b`. The returned vector maps
/// each element of `a` to its image in `b`.
pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (ia, ib) = (invariants(a), invariants(b));
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let candidates: Vec<Vec<usize>> =
        a.elements().map(|x| b.elements().filter(|&y| ib[y] == ia[x]).collect()).collect();
    let mut order: Vec<usize> = a.elements().collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));

    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if extend(a, b, &order, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Lattice,
    b: &Lattice,
    order: &[usize],
    candidates: &[Vec<usize>],
    pos: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(pos) else { return true };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&x2| {
            let y2 = map[x2];
            a.leq(x, x2) == b.leq(y, y2) && a.leq(x2, x) == b.leq(y2, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, order, candidates, pos + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// A complete isomorphism invariant: equal forms iff isomorphic lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    invariants: Vec<[usize; 4]>,
    relations: Vec<u8>,
}

/// Lexicographically least relation code over all relabelings that list
/// elements by increasing invariant. The search is exponential in the size
/// of the largest invariant class, so it is meant for small lattices.
pub fn canonical_form(l: &Lattice) -> CanonicalForm {
    let inv = invariants(l);
    let mut by_inv: Vec<usize> = l.elements().collect();
    by_inv.sort_by_key(|&x| (inv[x], x));
    let slots: Vec<[usize; 4]> = by_inv.iter().map(|&x| inv[x]).collect();

    let mut search = CanonSearch {
        lattice: l,
        inv: &inv,
        slots: &slots,
        perm: Vec::with_capacity(l.len()),
        used: vec![false; l.len()],
        codes: Vec::new(),
        best: None,
    };
    search.run();
    let relations = search.best.unwrap_or_default();
    CanonicalForm { invariants: slots, relations }
}

struct CanonSearch<'a> {
    lattice: &'a Lattice,
    inv: &'a [[usize; 4]],
    slots: &'a [[usize; 4]],
    perm: Vec<usize>,
    used: Vec<bool>,
    codes: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl CanonSearch<'_> {
    fn code(&self, x: usize, y: usize) -> u8 {
        if self.lattice.leq(x, y) {
            1
        } else if self.lattice.leq(y, x) {
            2
        } else {
            0
        }
    }

    fn run(&mut self) {
        let pos = self.perm.len();
        if pos == self.slots.len() {
            if self.best.as_ref().is_none_or(|b| self.codes < *b) {
                self.best = Some(self.codes.clone());
            }
            return;
        }
        for x in 0..self.lattice.len() {
            if self.used[x] || self.inv[x] != self.slots[pos] {
                continue;
            }
            let mark = self.codes.len();
            for j in 0..pos {
                let c = self.code(self.perm[j], x);
                self.codes.push(c);
            }
            let worse = self.best.as_ref().is_some_and(|b| self.codes[..] > b[..self.codes.len()]);
            if !worse {
                self.used[x] = true;
                self.perm.push(x);
                self.run();
                self.perm.pop();
                self.used[x] = false;
            }
            self.codes.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn two_by_two_is_boolean() {
        let two = named::chain(2);
        let b = product(&two, &two);
        assert_eq!(b.len(), 4);
        assert!(is_isomorphic(&b, &named::boolean(2)).is_some());
        assert_eq!(product_all(&[two.clone(), two.clone(), two]).len(), 8);
    }

    #[test]
    fn n5_is_self_dual() {
        let n5 = named::n5();
        let map = is_isomorphic(&dual(&n5), &n5).expect("N5 is self-dual");
        let d = dual(&n5);
        for x in d.elements() {
            for y in d.elements() {
                assert_eq!(d.leq(x, y), n5.leq(map[x], map[y]));
            }
        }
    }

    #[test]
    fn double_dual_is_identity_labelling() {
        for l in [named::n5(), named::m3(), named::grid(2, 3), named::with_top_chain(&named::n5(), 2)] {
            let dd = dual(&dual(&l));
            assert_eq!(dd.labels(), l.labels());
            for x in l.elements() {
                for y in l.elements() {
                    assert_eq!(dd.leq(x, y), l.leq(x, y));
                }
            }
        }
    }

    #[test]
    fn generated_sublattice() {
        let m3 = named::m3();
        let g = sublattice_generated(&m3, &m3.parse_set("a,b").unwrap());
        assert_eq!(g, m3.parse_set("0,a,b,1").unwrap());
        let n5 = named::n5();
        let g = sublattice_generated(&n5, &n5.parse_set("a,c").unwrap());
        assert_eq!(g, n5.parse_set("a,c").unwrap());
    }

    #[test]
    fn non_isomorphic_same_size() {
        assert!(is_isomorphic(&named::m3(), &named::n5()).is_none());
        assert!(is_isomorphic(&named::chain(4), &named::boolean(2)).is_none());
        assert_ne!(canonical_form(&named::m3()), canonical_form(&named::n5()));
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        let n5 = named::n5();
        let relabelled = Lattice::from_covers(
            "n5'",
            &["t", "q", "p", "r", "o"],
            &[("o", "q"), ("q", "t"), ("o", "p"), ("p", "r"), ("r", "t")],
        )
        .unwrap();
        assert_eq!(canonical_form(&n5), canonical_form(&relabelled));
        assert!(is_isomorphic(&n5, &relabelled).is_some());
    }
}
