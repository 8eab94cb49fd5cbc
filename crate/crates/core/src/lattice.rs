//! Finite lattices with dense element indices.
//!
//! A [`Lattice`] is immutable once built. Elements are the indices
//! `0..len()`; labels are kept only for input and output. The order is
//! stored as up-sets and down-sets, and both operation tables are total.

use std::collections::{HashMap, HashSet};

use crate::error::{LatticeError, Result};
use crate::set::ElementSet;

#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    join: Vec<usize>,
    meet: Vec<usize>,
    lower_covers: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    covers: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
    join_irreducibles: ElementSet,
    atoms: ElementSet,
    lower_star: Vec<Option<usize>>,
}

impl Lattice {
    /// Builds a lattice from its Hasse diagram.
    ///
    /// The order is the reflexive-transitive closure of `cover_pairs`
    /// (each pair is `(lower, upper)`). A declared pair that is implied by
    /// the others is rejected, as is any cycle. The declared pair order is
    /// kept so that writing the lattice back reproduces its input.
    pub fn from_covers<S: AsRef<str>>(
        name: impl Into<String>,
        labels: &[S],
        cover_pairs: &[(S, S)],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        let lookup = |l: &S| {
            index.get(l.as_ref()).copied().ok_or_else(|| LatticeError::UnknownLabel(l.as_ref().into()))
        };
        let mut pairs = Vec::with_capacity(cover_pairs.len());
        let mut seen = HashSet::new();
        for (lo, hi) in cover_pairs {
            let (a, b) = (lookup(lo)?, lookup(hi)?);
            if a == b {
                return Err(LatticeError::Cycle(labels[a].clone(), labels[b].clone()));
            }
            if !seen.insert((a, b)) {
                return Err(LatticeError::DuplicateCover(labels[a].clone(), labels[b].clone()));
            }
            pairs.push((a, b));
        }

        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in &pairs {
            up[a].insert(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(LatticeError::Cycle(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        for &(a, b) in &pairs {
            if up[a].iter().any(|z| z != a && z != b && up[z].contains(b)) {
                return Err(LatticeError::NonCoverEdge {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                });
            }
        }
        Self::assemble(name.into(), labels, index, up, Some(pairs))
    }

    /// Builds a lattice from an order predicate `leq(x, y)` on `0..labels.len()`.
    ///
    /// The relation is checked to be a partial order; the Hasse diagram is
    /// derived and listed in index order.
    pub fn from_leq(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let index = label_index(&labels)?;
        let n = labels.len();
        let up: Vec<ElementSet> = (0..n).map(|x| (0..n).filter(|&y| leq(x, y)).collect()).collect();
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(LatticeError::NotReflexive(labels[x].clone()));
            }
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(LatticeError::Cycle(labels[x].clone(), labels[y].clone()));
                }
                if let Some(z) = up[y].iter().find(|&z| !up[x].contains(z)) {
                    return Err(LatticeError::NotTransitive(
                        labels[x].clone(),
                        labels[y].clone(),
                        labels[z].clone(),
                    ));
                }
            }
        }
        Self::assemble(name.into(), labels, index, up, None)
    }

    fn assemble(
        name: String,
        labels: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<ElementSet>,
        declared: Option<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![ElementSet::new(); n];
        for (x, row) in up.iter().enumerate() {
            for y in row {
                down[y].insert(x);
            }
        }

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let uppers = up[x].intersection(&up[y]);
                let lub = uppers.iter().find(|&u| uppers.is_subset(&up[u])).ok_or_else(|| {
                    LatticeError::NotALattice(labels[x].clone(), labels[y].clone(), "least upper bound")
                })?;
                let lowers = down[x].intersection(&down[y]);
                let glb = lowers.iter().find(|&l| lowers.is_subset(&down[l])).ok_or_else(|| {
                    LatticeError::NotALattice(labels[x].clone(), labels[y].clone(), "greatest lower bound")
                })?;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }

        let all = ElementSet::full(n);
        let bottom = (0..n).find(|&x| up[x] == all).expect("finite lattice has a least element");
        let top = (0..n).find(|&x| down[x] == all).expect("finite lattice has a greatest element");

        let mut lower_covers = vec![ElementSet::new(); n];
        let mut upper_covers = vec![ElementSet::new(); n];
        for x in 0..n {
            for y in down[x].iter() {
                if y != x && up[y].intersection(&down[x]).len() == 2 {
                    lower_covers[x].insert(y);
                    upper_covers[y].insert(x);
                }
            }
        }
        let covers = declared.unwrap_or_else(|| {
            (0..n).flat_map(|y| upper_covers[y].iter().map(move |x| (y, x))).collect()
        });

        let mut join_irreducibles = ElementSet::new();
        let mut atoms = ElementSet::new();
        let mut lower_star = vec![None; n];
        for x in 0..n {
            if x != bottom && lower_covers[x].len() == 1 {
                join_irreducibles.insert(x);
                let star = lower_covers[x].first().unwrap();
                lower_star[x] = Some(star);
                if star == bottom {
                    atoms.insert(x);
                }
            }
        }

        Ok(Lattice {
            name,
            labels,
            index,
            up,
            down,
            join,
            meet,
            lower_covers,
            upper_covers,
            covers,
            bottom,
            top,
            join_irreducibles,
            atoms,
            lower_star,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    /// Parses a comma-separated list of labels. The empty string is the empty set.
    pub fn parse_set(&self, list: &str) -> Result<ElementSet> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| self.index_of(l))
            .collect()
    }

    pub fn format_set(&self, set: &ElementSet) -> String {
        set.iter().map(|x| self.label(x)).collect::<Vec<_>>().join(",")
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Join of a finite set; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `{y | x <= y}`
    pub fn up(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    /// `{y | y <= x}`
    pub fn down(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    pub fn lower_covers(&self, x: usize) -> &ElementSet {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &ElementSet {
        &self.upper_covers[x]
    }

    /// Hasse diagram edges `(lower, upper)`, in declaration order when the
    /// lattice was read from covers.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn join_irreducibles(&self) -> &ElementSet {
        &self.join_irreducibles
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.join_irreducibles.contains(x)
    }

    pub fn atoms(&self) -> &ElementSet {
        &self.atoms
    }

    /// The unique lower cover of a join-irreducible element.
    pub fn lower_star(&self, p: usize) -> Result<usize> {
        self.lower_star[p].ok_or_else(|| LatticeError::NotJoinIrreducible(self.labels[p].clone()))
    }

    pub fn downset(&self, xs: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new();
        for x in xs {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn upset(&self, xs: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new();
        for x in xs {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// Elements strictly below some member of `xs`.
    pub fn strict_downset(&self, xs: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new();
        for x in xs {
            out.union_with(&self.down[x].difference(&ElementSet::singleton(x)));
        }
        out
    }

    pub fn is_antichain(&self, xs: &ElementSet) -> bool {
        xs.iter().all(|x| self.up[x].intersection(xs).len() == 1)
    }

    /// Restricts the order to a subset, re-indexed in increasing order.
    /// Fails when the induced order is not a lattice.
    pub fn induced(&self, subset: &ElementSet, name: impl Into<String>) -> Result<Lattice> {
        let members = subset.to_vec();
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        Lattice::from_leq(name, labels, |i, j| self.leq(members[i], members[j]))
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    if labels.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}
