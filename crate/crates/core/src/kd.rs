//! The lattices `L(D) = 2 x D x 2 x 2` and their closure systems `K(D)`.
//!
//! `K(D)` keeps the quadruples `x` with `xi- & xk- <= xj` for all
//! `i < j < k`, where `x- = 1` if `x = 1` and `0` otherwise. Coordinates 0, 2
//! and 3 range over `{0, 1}`; coordinate 1 ranges over `D`. For a Boolean
//! `D` the lattices are subdirectly irreducible, satisfy `SD∨³` but not
//! `SD∨²`. The infinite member over finite-cofinite subsets of the natural
//! numbers is out of reach here; only finite members are built.

use std::collections::HashMap;

use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;
use crate::terms::is_distributive;
use crate::Limits;

/// A distributive lattice with `0 != 1`.
#[derive(Clone, Debug)]
pub struct BoundedDistributiveLattice(Lattice);

impl BoundedDistributiveLattice {
    pub fn new(l: Lattice, limits: &Limits) -> Result<Self> {
        if l.len() < 2 {
            return Err(LatticeError::Trivial(l.name().to_string()));
        }
        if !is_distributive(&l, limits)?.holds() {
            return Err(LatticeError::NotDistributive(l.name().to_string()));
        }
        Ok(BoundedDistributiveLattice(l))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.0
    }

    /// `x-`: `1` for the top, `0` otherwise.
    fn minus(&self, x: usize) -> bool {
        x == self.0.top()
    }
}

/// An element of `L(D)`. Coordinates 0, 2, 3 are `0` or `1`; coordinate 1
/// is an element index of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad(pub [usize; 4]);

/// `L(D)` and `K(D)` for a fixed `D`.
#[derive(Clone, Debug)]
pub struct KdFamily {
    d: BoundedDistributiveLattice,
    quads: Vec<Quad>,
    lattice: Lattice,
    index: HashMap<Quad, usize>,
}

impl KdFamily {
    pub fn d(&self) -> &Lattice {
        self.d.lattice()
    }

    /// `K(D)`; element `i` is `self.quads()[i]`.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub fn quad(&self, x: usize) -> Quad {
        self.quads[x]
    }

    pub fn lookup(&self, q: &Quad) -> Option<usize> {
        self.index.get(q).copied()
    }

    /// Looks up a quadruple written with labels of `D` for coordinate 1.
    pub fn element(&self, x0: usize, x1: &str, x2: usize, x3: usize) -> Result<usize> {
        let q = Quad([x0, self.d().index_of(x1)?, x2, x3]);
        self.lookup(&q).ok_or_else(|| LatticeError::UnknownLabel(self.render(&q)))
    }

    /// `q_i`: `1` at place `i`, `0` elsewhere.
    pub fn q(&self, i: usize) -> usize {
        let mut x = [0, self.d().bottom(), 0, 0];
        x[i] = if i == 1 { self.d().top() } else { 1 };
        self.lookup(&Quad(x)).expect("q_i lies in K(D)")
    }

    /// `x q_1 = (0, x, 0, 0)`.
    pub fn xq1(&self, x: usize) -> usize {
        self.lookup(&Quad([0, x, 0, 0])).expect("x q_1 lies in K(D)")
    }

    pub fn render(&self, q: &Quad) -> String {
        render_quad(self.d(), q)
    }

    pub fn gamma(&self, x: &Quad) -> Quad {
        gamma(&self.d, x)
    }

    /// Componentwise join in `L(D)`.
    pub fn join_c(&self, a: &Quad, b: &Quad) -> Quad {
        let d = self.d();
        Quad([a.0[0] | b.0[0], d.join(a.0[1], b.0[1]), a.0[2] | b.0[2], a.0[3] | b.0[3]])
    }

    /// Componentwise meet in `L(D)`.
    pub fn meet_c(&self, a: &Quad, b: &Quad) -> Quad {
        let d = self.d();
        Quad([a.0[0] & b.0[0], d.meet(a.0[1], b.0[1]), a.0[2] & b.0[2], a.0[3] & b.0[3]])
    }

    pub fn in_kd(&self, x: &Quad) -> bool {
        in_kd(&self.d, x)
    }
}

fn render_quad(d: &Lattice, q: &Quad) -> String {
    format!("({},{},{},{})", q.0[0], d.label(q.0[1]), q.0[2], q.0[3])
}

fn all_quads(d: &Lattice) -> Vec<Quad> {
    let mut out = Vec::with_capacity(8 * d.len());
    for x0 in 0..2 {
        for x1 in d.elements() {
            for x2 in 0..2 {
                for x3 in 0..2 {
                    out.push(Quad([x0, x1, x2, x3]));
                }
            }
        }
    }
    out
}

fn quad_leq(d: &Lattice, a: &Quad, b: &Quad) -> bool {
    a.0[0] <= b.0[0] && d.leq(a.0[1], b.0[1]) && a.0[2] <= b.0[2] && a.0[3] <= b.0[3]
}

/// `x-` for every coordinate.
fn minus(d: &BoundedDistributiveLattice, x: &Quad) -> [bool; 4] {
    [x.0[0] == 1, d.minus(x.0[1]), x.0[2] == 1, x.0[3] == 1]
}

fn in_kd(d: &BoundedDistributiveLattice, x: &Quad) -> bool {
    let m = minus(d, x);
    let at_least_top = |j: usize| if j == 1 { d.minus(x.0[1]) } else { x.0[j] == 1 };
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if m[i] && m[k] && !at_least_top(j) {
                    return false;
                }
            }
        }
    }
    true
}

/// `gamma(x)_j = x_j | \/{ xi- & xk- : i < j < k }`.
pub fn gamma(d: &BoundedDistributiveLattice, x: &Quad) -> Quad {
    let m = minus(d, x);
    let mut y = *x;
    for j in 1..3 {
        if (0..j).any(|i| m[i]) && (j + 1..4).any(|k| m[k]) {
            y.0[j] = if j == 1 { d.lattice().top() } else { 1 };
        }
    }
    y
}

/// `L(D) = 2 x D x 2 x 2`, ordered componentwise, with `8|D|` elements.
pub fn build_ld(d: &BoundedDistributiveLattice) -> Lattice {
    let dl = d.lattice();
    let quads = all_quads(dl);
    let labels = quads.iter().map(|q| render_quad(dl, q)).collect();
    Lattice::from_leq(format!("L({})", dl.name()), labels, |i, j| quad_leq(dl, &quads[i], &quads[j]))
        .expect("products of lattices are lattices")
}

/// `K(D)`, obtained by filtering `L(D)`.
pub fn build_kd(d: &BoundedDistributiveLattice) -> KdFamily {
    let dl = d.lattice();
    let quads: Vec<Quad> = all_quads(dl).into_iter().filter(|q| in_kd(d, q)).collect();
    let labels = quads.iter().map(|q| render_quad(dl, q)).collect();
    let lattice = Lattice::from_leq(format!("K({})", dl.name()), labels, |i, j| {
        quad_leq(dl, &quads[i], &quads[j])
    })
    .expect("a closure system in a lattice is a lattice");
    let index = quads.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    KdFamily { d: d.clone(), quads, lattice, index }
}

/// The triple `x = (1,a,0,0)`, `y = (0,b,0,1)`, `z = (0,a,1,0)` for
/// complementary `a`, `b` in a Boolean `D` with more than two elements.
/// `a` is the first element other than the bounds and `b` its complement.
pub fn sdj2_witness(kd: &KdFamily) -> Result<[usize; 3]> {
    let d = kd.d();
    let complement = |a: usize| {
        d.elements().find(|&b| d.join(a, b) == d.top() && d.meet(a, b) == d.bottom())
    };
    if d.elements().any(|a| complement(a).is_none()) {
        return Err(LatticeError::NotBoolean(d.name().to_string()));
    }
    let a = d
        .elements()
        .find(|&a| a != d.bottom() && a != d.top())
        .ok_or_else(|| LatticeError::NoComplementaryPair(d.name().to_string()))?;
    let b = complement(a).expect("checked above");
    let at = |q: [usize; 4]| kd.lookup(&Quad(q)).expect("witness quadruples lie in K(D)");
    Ok([at([1, a, 0, 0]), at([0, b, 0, 1]), at([0, a, 1, 0])])
}

/// Elements of `K(D)` whose principal ideal is not distributive.
pub fn principal_ideal_distributivity_profile(kd: &KdFamily, limits: &Limits) -> Result<Vec<Quad>> {
    let l = kd.lattice();
    let mut out = Vec::new();
    for a in l.elements() {
        let ideal = l.induced(l.down(a), format!("K↓{}", l.label(a)))?;
        if !is_distributive(&ideal, limits)?.holds() {
            out.push(kd.quad(a));
        }
    }
    Ok(out)
}
