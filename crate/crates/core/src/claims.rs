//! Machine checks of the finite consequences of the theory, one per claim.
//!
//! Each check returns pass or fail with a short explanation. Checks that
//! range over the catalog of small lattices take their size bounds from
//! [`Config::max_size`]: with the default of 7 every bound is the nominal
//! one, and a smaller value shrinks all bounds by the same amount.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{is_subdirectly_irreducible, principal_congruence};
use crate::construct::sublattice_generated;
use crate::covers::{
    antichains, collinear, cover_kind, is_minimal_by_definition, is_tight, minimal_join_covers, refines,
    tight_covers, CoverKind,
};
use crate::enumerate::{enumerate_lattices, naive_lattice_count, MAX_ENUMERATION_SIZE};
use crate::error::Result;
use crate::kd::{build_kd, principal_ideal_distributivity_profile, sdj2_witness, BoundedDistributiveLattice, KdFamily, Quad};
use crate::lattice::Lattice;
use crate::named;
use crate::seeds::{galois_pi_is_homomorphism, is_pre_seed, is_strongly_spatial, span};
use crate::set::ElementSet;
use crate::terms::{
    eval, holds_sdj, holds_sentence_1storder, is_join_semidistributive, is_modular, is_n_distributive,
    is_n_distributive_by_covers, p_term, parse_term, refute, Assignment, Refutation, Term,
};
use crate::{Limits, Verdict};

#[derive(Clone, Debug)]
pub struct Config {
    /// Size bound for the catalog checks nominally run up to 7 elements.
    pub max_size: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub rng_seed: u64,
    pub limits: Limits,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_size: 7, jobs: 0, rng_seed: 0, limits: Limits::default() }
    }
}

impl Config {
    /// A nominal catalog bound, shifted by the configured maximum.
    fn bound(&self, nominal: usize) -> usize {
        (nominal + self.max_size).saturating_sub(7).clamp(1, MAX_ENUMERATION_SIZE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }
}

type Check = fn(&Config, &mut Catalog) -> Result<std::result::Result<String, String>>;

/// `(id, anchor, check)` for every claim, in order.
pub const CLAIMS: [(&str, &str, Check); 16] = [
    ("C1", "K(B4) violates SD-join-2 at the explicit triple", c1_sdj2_failure),
    ("C2", "K(D) satisfies SD-join-3", c2_sdj3),
    ("C3", "K(D) is join-semidistributive", c3_jsd),
    ("C4", "K(B) is subdirectly irreducible with monolith con(0,q1)", c4_si),
    ("C5", "n elements of K(D) generate at most 2^(2^n+3) elements", c5_local_finiteness),
    ("C6", "non-distributive principal ideals of K(D) sit at three quadruples", c6_ideals),
    ("C7", "K(B) satisfies the first-order distributivity sentence", c7_sentence),
    ("C8", "n-distributivity by identity agrees with the cover-size criterion", c8_ndistr),
    ("C9", "tight-cover refinement facts and the minimality test", c9_cover_facts),
    ("C10", "finite lattices are strongly spatial", c10_strongly_spatial),
    ("C11", "pre-seeds are exactly the subsets with homomorphic projection", c11_pre_seed),
    ("C12", "relative term values grow with P and the spans stay n-distributive", c12_approximation),
    ("C13", "collinear triples give tight covers in modular lattices", c13_collinear),
    ("C14", "lattice counts by size", c14_counts),
    ("C15", "sizes of K(2) and K(B4)", c15_kd_sizes),
    ("C16", "bounded refutation of identities", c16_refuter),
];

/// Lazily enumerated lattices, shared by the checks.
#[derive(Default)]
pub struct Catalog {
    by_size: Vec<Option<Vec<Lattice>>>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    pub fn of_size(&mut self, n: usize) -> Result<&[Lattice]> {
        if self.by_size.len() <= n {
            self.by_size.resize(n + 1, None);
        }
        if self.by_size[n].is_none() {
            self.by_size[n] = Some(enumerate_lattices(n, &Limits::overridden())?.collect());
        }
        Ok(self.by_size[n].as_deref().expect("filled above"))
    }

    /// All lattices with at most `n` elements.
    pub fn up_to(&mut self, n: usize) -> Result<Vec<Lattice>> {
        let mut out = Vec::new();
        for size in 1..=n {
            out.extend_from_slice(self.of_size(size)?);
        }
        Ok(out)
    }
}

/// Runs one claim by id.
pub fn run_claim(id: &str, config: &Config, catalog: &mut Catalog) -> Option<ClaimResult> {
    let &(id, anchor, check) = CLAIMS.iter().find(|c| c.0 == id)?;
    let (status, details) = match check(config, catalog) {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    Some(ClaimResult { id: id.to_string(), anchor: anchor.to_string(), status, details })
}

/// Runs every claim in order on a pool of `config.jobs` threads.
pub fn run_all(config: &Config) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build().expect("thread pool");
    pool.install(|| {
        let mut catalog = Catalog::new();
        let claims = CLAIMS.iter().filter_map(|c| run_claim(c.0, config, &mut catalog)).collect();
        VerificationReport { claims }
    })
}

type Outcome = Result<std::result::Result<String, String>>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kd_of(d: Lattice, limits: &Limits) -> Result<KdFamily> {
    Ok(build_kd(&BoundedDistributiveLattice::new(d, limits)?))
}

/// The test set `2, B4, B8, 3-chain, 2x3 grid`.
fn kd_test_set(limits: &Limits) -> Result<Vec<KdFamily>> {
    [named::chain(2), named::boolean(2), named::boolean(3), named::chain(3), named::grid(2, 3)]
        .into_iter()
        .map(|d| kd_of(d, limits))
        .collect()
}

fn boolean_kds(limits: &Limits) -> Result<Vec<KdFamily>> {
    (1..=3).map(|k| kd_of(named::boolean(k), limits)).collect()
}

fn assignment(pairs: &[(&str, usize)]) -> Assignment {
    pairs.iter().map(|&(v, x)| (v.to_string(), x)).collect()
}

fn c1_sdj2_failure(config: &Config, _: &mut Catalog) -> Outcome {
    let kd = kd_of(named::boolean(2), &config.limits)?;
    let l = kd.lattice();
    let [x, y, z] = sdj2_witness(&kd)?;
    let a = assignment(&[("x", x), ("y", y), ("z", z)]);
    let p2 = l.label(eval(l, &p_term(2), &a)?).to_string();
    let rhs = l.label(eval(l, &parse_term("x | (y & z)")?, &a)?).to_string();
    let verdict = holds_sdj(l, 2, &config.limits)?;
    Ok((|| {
        ensure(p2 == "(0,b,0,0)", || format!("p2(x,y,z) = {p2}, expected (0,b,0,0)"))?;
        ensure(rhs == "(1,a,0,0)", || format!("x|(y&z) = {rhs}, expected (1,a,0,0)"))?;
        ensure(!verdict.holds(), || "SD-join-2 reported valid on K(B4)".into())?;
        Ok(format!(
            "x={}, y={}, z={}: p2 = {p2}, x|(y&z) = {rhs}; K(B4) fails SD-join-2",
            l.label(x),
            l.label(y),
            l.label(z)
        ))
    })())
}

fn over_kd_test_set(config: &Config, what: &str, test: impl Fn(&Lattice) -> Result<bool> + Sync) -> Outcome {
    let kds = kd_test_set(&config.limits)?;
    let results: Vec<Result<bool>> = kds.par_iter().map(|kd| test(kd.lattice())).collect();
    let mut names = Vec::new();
    for (kd, r) in kds.iter().zip(results) {
        if !r? {
            return Ok(Err(format!("{what} fails on {}", kd.lattice().name())));
        }
        names.push(format!("{} ({} elements)", kd.lattice().name(), kd.lattice().len()));
    }
    Ok(Ok(format!("{what} holds on {}", names.join(", "))))
}

fn c2_sdj3(config: &Config, _: &mut Catalog) -> Outcome {
    over_kd_test_set(config, "SD-join-3", |l| Ok(holds_sdj(l, 3, &config.limits)?.holds()))
}

fn c3_jsd(config: &Config, _: &mut Catalog) -> Outcome {
    over_kd_test_set(config, "join-semidistributivity", |l| Ok(is_join_semidistributive(l, &config.limits)?.holds()))
}

fn c4_si(config: &Config, _: &mut Catalog) -> Outcome {
    let mut done = Vec::new();
    for kd in boolean_kds(&config.limits)? {
        let l = kd.lattice();
        let (si, monolith) = is_subdirectly_irreducible(l);
        let expected = principal_congruence(l, l.bottom(), kd.q(1));
        if !si || monolith.as_ref() != Some(&expected) {
            return Ok(Err(format!("{}: SI = {si}, monolith is not con(0,q1)", l.name())));
        }
        let con_q2 = principal_congruence(l, l.bottom(), kd.q(2));
        for x in kd.d().elements().filter(|&x| x != kd.d().bottom()) {
            if principal_congruence(l, l.bottom(), kd.xq1(x)) != con_q2 {
                return Ok(Err(format!("{}: con(0,q2) != con(0,{}q1)", l.name(), kd.d().label(x))));
            }
        }
        done.push(l.name().to_string());
    }
    Ok(Ok(format!("SI with monolith con(0,q1) and con(0,q2) = con(0,xq1): {}", done.join(", "))))
}

fn c5_local_finiteness(config: &Config, _: &mut Catalog) -> Outcome {
    let kd = kd_of(named::boolean(3), &config.limits)?;
    let l = kd.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let all: Vec<usize> = l.elements().collect();
    let mut largest = [0usize; 3];
    for n in 1..=3usize {
        let bound = 1usize << ((1 << n) + 3);
        for _ in 0..50 {
            let gens: ElementSet = all.choose_multiple(&mut rng, n).copied().collect();
            let size = sublattice_generated(l, &gens).len();
            largest[n - 1] = largest[n - 1].max(size);
            if size > bound {
                return Ok(Err(format!("{} generates {size} > {bound} elements", l.format_set(&gens))));
            }
        }
    }
    Ok(Ok(format!("largest generated sublattices for n = 1, 2, 3: {largest:?} (bounds 32, 128, 2048)")))
}

fn c6_ideals(config: &Config, _: &mut Catalog) -> Outcome {
    let mut parts = Vec::new();
    for kd in boolean_kds(&config.limits)? {
        let top = kd.d().top();
        let allowed = [[1, top, 1, 0], [0, top, 1, 1], [1, top, 1, 1]].map(Quad);
        let profile = principal_ideal_distributivity_profile(&kd, &config.limits)?;
        if let Some(q) = profile.iter().find(|q| !allowed.contains(q)) {
            return Ok(Err(format!("{}: ideal below {} is not distributive", kd.lattice().name(), kd.render(q))));
        }
        let shown: Vec<String> = profile.iter().map(|q| kd.render(q)).collect();
        parts.push(format!("{}: {{{}}}", kd.lattice().name(), shown.join(", ")));
    }
    Ok(Ok(parts.join("; ")))
}

fn c7_sentence(config: &Config, _: &mut Catalog) -> Outcome {
    let mut names = Vec::new();
    for k in 1..=2 {
        let kd = kd_of(named::boolean(k), &config.limits)?;
        let l = kd.lattice();
        if let Verdict::Fails(w) = holds_sentence_1storder(l, &config.limits)? {
            let labels: Vec<&str> = w.iter().map(|&e| l.label(e)).collect();
            return Ok(Err(format!("{} violates the sentence at {labels:?}", l.name())));
        }
        names.push(l.name().to_string());
    }
    Ok(Ok(format!("holds on {}", names.join(", "))))
}

/// Runs `test` on every lattice in parallel and reports the first failure
/// in catalog order.
fn for_all_lattices(
    lattices: &[Lattice],
    test: impl Fn(&Lattice) -> Result<std::result::Result<(), String>> + Sync + Send,
) -> Result<std::result::Result<(), String>> {
    let results: Vec<_> = lattices.par_iter().map(test).collect();
    for (l, r) in lattices.iter().zip(results) {
        if let Err(msg) = r? {
            return Ok(Err(format!("{}: {msg}", l.name())));
        }
    }
    Ok(Ok(()))
}

fn c8_ndistr(config: &Config, catalog: &mut Catalog) -> Outcome {
    let size = config.bound(7);
    let lattices = catalog.up_to(size)?;
    let limits = &config.limits;
    let res = for_all_lattices(&lattices, |l| {
        for n in 1..=3 {
            let by_identity = is_n_distributive(l, n, limits)?.holds();
            let by_covers = is_n_distributive_by_covers(l, n, limits)?.holds();
            if by_identity != by_covers {
                return Ok(Err(format!("n = {n}: identity says {by_identity}, covers say {by_covers}")));
            }
        }
        Ok(Ok(()))
    })?;
    if let Err(e) = res {
        return Ok(Err(e));
    }
    let m3 = named::m3();
    Ok((|| {
        ensure(!is_n_distributive(&m3, 1, limits).map_err(|e| e.to_string())?.holds(), || {
            "M3 reported 1-distributive".into()
        })?;
        ensure(is_n_distributive(&m3, 2, limits).map_err(|e| e.to_string())?.holds(), || {
            "M3 reported not 2-distributive".into()
        })?;
        Ok(format!("agreement for n = 1, 2, 3 on {} lattices of size <= {size}; M3 is 2- but not 1-distributive", lattices.len()))
    })())
}

/// Lower subsets of `l`: down-sets of antichains.
fn lower_sets(l: &Lattice) -> Vec<ElementSet> {
    antichains(l, &ElementSet::full(l.len())).iter().map(|a| l.downset(a)).collect()
}

fn below(l: &Lattice, a: &ElementSet, x: usize) -> ElementSet {
    a.intersection(l.down(x))
}

/// Facts about a pair of tight covers `a1 <=ref a0` of `p`.
fn check_tight_pair(l: &Lattice, a0: &ElementSet, a1: &ElementSet, lower: &[ElementSet]) -> std::result::Result<(), String> {
    let show = |s: &ElementSet| l.format_set(s);
    for a in a0.iter() {
        let part = below(l, a1, a);
        if l.join_all(part.iter()) != a || !is_tight(l, a, &part) {
            return Err(format!("{} below {} does not join to it tightly", show(&part), l.label(a)));
        }
    }
    if l.join_all(a0.iter()) != l.join_all(a1.iter()) {
        return Err(format!("joins of {} and {} differ", show(a0), show(a1)));
    }
    let members = a0.to_vec();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if !below(l, a1, x).is_disjoint(&below(l, a1, y)) {
                return Err(format!("{} meets below {} and {}", show(a1), l.label(x), l.label(y)));
            }
        }
    }
    for h in lower {
        if a0.intersection(h).len() > a1.intersection(h).len() {
            return Err(format!("lower set {} meets {} more than {}", show(h), show(a0), show(a1)));
        }
    }
    Ok(())
}

fn check_cover_facts(l: &Lattice, limits: &Limits) -> Result<std::result::Result<(), String>> {
    let lower = lower_sets(l);
    for p in l.elements() {
        let tight = tight_covers(l, p, limits)?;
        for m in minimal_join_covers(l, p, limits)? {
            if !m.is_subset(l.join_irreducibles()) {
                return Ok(Err(format!("minimal cover {} has a join-reducible member", l.format_set(&m))));
            }
        }
        for a0 in &tight {
            for a1 in tight.iter().filter(|a1| refines(l, a1, a0)) {
                if let Err(e) = check_tight_pair(l, a0, a1, &lower) {
                    return Ok(Err(format!("p = {}: {e}", l.label(p))));
                }
                for a2 in tight.iter().filter(|a2| refines(l, a2, a1)) {
                    for x2 in a2.iter() {
                        for x0 in a0.iter().filter(|&x0| l.leq(x2, x0)) {
                            if !a1.iter().any(|x1| l.leq(x2, x1) && l.leq(x1, x0)) {
                                return Ok(Err(format!(
                                    "p = {}: no member of {} between {} and {}",
                                    l.label(p),
                                    l.format_set(a1),
                                    l.label(x2),
                                    l.label(x0)
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_minimality_oracle(l: &Lattice) -> Result<std::result::Result<(), String>> {
    let all: Vec<usize> = l.elements().collect();
    for p in l.elements() {
        for mask in 0u64..(1 << l.len()) {
            let e = ElementSet::from_mask(&all, mask);
            let fast = cover_kind(l, p, &e) == Some(CoverKind::Minimal);
            if fast != is_minimal_by_definition(l, p, &e)? {
                return Ok(Err(format!("p = {}, E = {}: fast test says {fast}", l.label(p), l.format_set(&e))));
            }
        }
    }
    Ok(Ok(()))
}

fn c9_cover_facts(config: &Config, catalog: &mut Catalog) -> Outcome {
    let (facts_size, oracle_size) = (config.bound(6), config.bound(8));
    let lattices = catalog.up_to(facts_size)?;
    if let Err(e) = for_all_lattices(&lattices, |l| check_cover_facts(l, &config.limits))? {
        return Ok(Err(e));
    }
    let oracle = catalog.up_to(oracle_size)?;
    if let Err(e) = for_all_lattices(&oracle, check_minimality_oracle)? {
        return Ok(Err(e));
    }
    Ok(Ok(format!(
        "tight-cover facts on {} lattices of size <= {facts_size}; minimality test matches the definition on every subset of {} lattices of size <= {oracle_size}",
        lattices.len(),
        oracle.len()
    )))
}

fn c10_strongly_spatial(config: &Config, catalog: &mut Catalog) -> Outcome {
    let size = config.bound(7);
    let mut lattices = catalog.up_to(size)?;
    let count = lattices.len();
    lattices.push(kd_of(named::boolean(2), &config.limits)?.lattice().clone());
    let res = for_all_lattices(&lattices, |l| {
        Ok(match is_strongly_spatial(l, &config.limits)? {
            Verdict::Holds => Ok(()),
            Verdict::Fails(f) => Err(f.render(l)),
        })
    })?;
    Ok(res.map(|()| format!("strongly spatial: {count} lattices of size <= {size} and K(B4)")))
}

fn c11_pre_seed(config: &Config, catalog: &mut Catalog) -> Outcome {
    let size = config.bound(6);
    let lattices = catalog.up_to(size)?;
    let res = for_all_lattices(&lattices, |l| {
        let nonzero: Vec<usize> = l.elements().filter(|&x| x != l.bottom()).collect();
        for mask in 0u64..(1 << nonzero.len()) {
            let sigma = ElementSet::from_mask(&nonzero, mask);
            let pre = is_pre_seed(l, &sigma, &config.limits)?.holds();
            let hom = galois_pi_is_homomorphism(l, &sigma).holds();
            if pre != hom {
                return Ok(Err(format!("{}: pre-seed {pre}, homomorphism {hom}", l.format_set(&sigma))));
            }
        }
        Ok(Ok(()))
    })?;
    Ok(res.map(|()| format!("equivalence on every subset of {} lattices of size <= {size}", lattices.len())))
}

/// A random term over `x, y, z` with at most `depth` levels of operations.
pub fn random_term(rng: &mut impl Rng, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return Term::var(["x", "y", "z"][rng.gen_range(0..3)]);
    }
    let (a, b) = (random_term(rng, depth - 1), random_term(rng, depth - 1));
    if rng.gen_bool(0.5) {
        Term::meet(a, b)
    } else {
        Term::join(a, b)
    }
}

fn c12_approximation(config: &Config, catalog: &mut Catalog) -> Outcome {
    let size = config.bound(7);
    let lattices = catalog.up_to(size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    for i in 0..100 {
        let l = lattices.choose(&mut rng).expect("catalog is nonempty");
        let elems: Vec<usize> = l.elements().collect();
        let q: ElementSet = elems.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let p: ElementSet = q.iter().filter(|_| rng.gen_bool(0.5)).collect();
        let t = random_term(&mut rng, 4);
        let a = assignment(&[
            ("x", *elems.choose(&mut rng).unwrap()),
            ("y", *elems.choose(&mut rng).unwrap()),
            ("z", *elems.choose(&mut rng).unwrap()),
        ]);
        let (sp, sq) = (span(l, &p), span(l, &q));
        let (vp, vq) = (sp.eval_relative(&t, &a)?, sq.eval_relative(&t, &a)?);
        if !l.leq(vp, vq) {
            return Ok(Err(format!("instance {i} on {}: t = {t}, P = {}, Q = {}", l.name(), l.format_set(&p), l.format_set(&q))));
        }
        let full = span(l, l.join_irreducibles());
        if full.eval_relative(&t, &a)? != eval(l, &t, &a)? {
            return Ok(Err(format!("instance {i} on {}: t = {t} differs at P = J(L)", l.name())));
        }
    }
    let kd2 = kd_of(named::chain(2), &config.limits)?;
    let mut checked = Vec::new();
    for l in [named::m3(), named::n5(), kd2.lattice().clone()] {
        let ns: Vec<usize> = (1..=3).filter(|&n| matches!(is_n_distributive(&l, n, &config.limits), Ok(v) if v.holds())).collect();
        let j = l.join_irreducibles().to_vec();
        for mask in 0u64..(1 << j.len()) {
            let p = ElementSet::from_mask(&j, mask);
            let sub = span(&l, &p).to_lattice("span");
            for &n in &ns {
                if !is_n_distributive(&sub, n, &config.limits)?.holds() {
                    return Ok(Err(format!("{}: span of {} is not {n}-distributive", l.name(), l.format_set(&p))));
                }
            }
        }
        checked.push(format!("{} (n in {ns:?})", l.name()));
    }
    Ok(Ok(format!(
        "100 seeded instances monotone in P and exact at P = J(L); spans n-distributive on {}",
        checked.join(", ")
    )))
}

fn c13_collinear(config: &Config, catalog: &mut Catalog) -> Outcome {
    let size = config.bound(7);
    let lattices = catalog.up_to(size)?;
    let triples = std::sync::atomic::AtomicUsize::new(0);
    let res = for_all_lattices(&lattices, |l| {
        if !is_modular(l, &config.limits)?.holds() {
            return Ok(Ok(()));
        }
        let j = l.join_irreducibles().to_vec();
        for &p in &j {
            for &q in &j {
                for &r in &j {
                    if collinear(l, p, q, r)? {
                        triples.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let e: ElementSet = [q, r].into_iter().collect();
                        if cover_kind(l, p, &e).is_none_or(|k| k < CoverKind::Tight) {
                            return Ok(Err(format!(
                                "col({},{},{}) but the cover is not tight",
                                l.label(p),
                                l.label(q),
                                l.label(r)
                            )));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    })?;
    if let Err(e) = res {
        return Ok(Err(e));
    }
    let m3 = named::m3();
    let [a, b, c] = ["a", "b", "c"].map(|s| m3.index_of(s).expect("M3 labels"));
    let bc: ElementSet = [b, c].into_iter().collect();
    Ok((|| {
        ensure(collinear(&m3, a, b, c).unwrap_or(false), || "col(a,b,c) fails in M3".into())?;
        ensure(cover_kind(&m3, a, &bc) >= Some(CoverKind::Tight), || "a <= b|c is not tight in M3".into())?;
        Ok(format!(
            "{} collinear triples in modular lattices of size <= {size}, all tight; M3 col(a,b,c) included",
            triples.into_inner()
        ))
    })())
}

fn c14_counts(config: &Config, catalog: &mut Catalog) -> Outcome {
    const EXPECTED: [usize; 7] = [1, 1, 1, 2, 5, 15, 53];
    let size = config.bound(7);
    let mut counts = Vec::new();
    for n in 1..=size {
        let got = catalog.of_size(n)?.len();
        if let Some(&want) = EXPECTED.get(n - 1) {
            if got != want {
                return Ok(Err(format!("size {n}: {got} lattices, expected {want}")));
            }
        }
        if n <= 6 && naive_lattice_count(n) != got {
            return Ok(Err(format!("size {n}: generators disagree")));
        }
        counts.push(got);
    }
    Ok(Ok(format!("counts for sizes 1..={size}: {counts:?}; naive generator agrees up to size {}", size.min(6))))
}

/// Counts quadruples over `D` satisfying the defining constraint, written
/// out directly on booleans.
fn count_kd_directly(d: &Lattice) -> usize {
    let mut count = 0;
    for x0 in [false, true] {
        for x1 in d.elements() {
            for x2 in [false, true] {
                for x3 in [false, true] {
                    let top1 = x1 == d.top();
                    // (0,1,2) (0,1,3) (0,2,3) (1,2,3)
                    let ok = !(x0 && x2 && !top1) && !(x0 && x3 && !top1) && !(x0 && x3 && !x2) && !(top1 && x3 && !x2);
                    count += ok as usize;
                }
            }
        }
    }
    count
}

fn c15_kd_sizes(config: &Config, _: &mut Catalog) -> Outcome {
    let mut parts = Vec::new();
    for (d, want) in [(named::chain(2), 11), (named::boolean(2), 21)] {
        let direct = count_kd_directly(&d);
        let closed_form = 5 * d.len() + 1;
        let got = kd_of(d, &config.limits)?.lattice().len();
        if got != want || direct != want || closed_form != want {
            return Ok(Err(format!("built {got}, direct count {direct}, 5|D|+1 = {closed_form}, expected {want}")));
        }
        parts.push(got.to_string());
    }
    Ok(Ok(format!("|K(2)| = {}, |K(B4)| = {}", parts[0], parts[1])))
}

fn c16_refuter(config: &Config, _: &mut Catalog) -> Outcome {
    let limits = Limits::overridden();
    let limits = Limits { eval_budget: config.limits.eval_budget, ..limits };
    let pairs = [
        ("distributivity", "x & (y | z)", "(x & y) | (x & z)"),
        ("modularity", "x & (y | (x & z))", "(x & y) | (x & z)"),
    ];
    let mut found = Vec::new();
    for (what, s, t) in pairs {
        let (s, t) = (parse_term(s)?, parse_term(t)?);
        match refute(&s, &t, None, 5, &limits)? {
            Refutation::Counterexample { lattice, assignment } => {
                if lattice.len() > 5 || eval(&lattice, &s, &assignment)? == eval(&lattice, &t, &assignment)? {
                    return Ok(Err(format!("bogus counterexample to {what}")));
                }
                found.push(format!("{what} in {} ({} elements)", lattice.name(), lattice.len()));
            }
            Refutation::Exhausted(_) => return Ok(Err(format!("no counterexample to {what} up to size 5"))),
        }
    }
    let x = Term::var("x");
    let bounds: BTreeSet<usize> = (1..=config.bound(7)).collect();
    for &b in &bounds {
        if !matches!(refute(&x, &x, None, b, &limits)?, Refutation::Exhausted(n) if n == b) {
            return Ok(Err(format!("x = x refuted at bound {b}")));
        }
    }
    Ok(Ok(format!("counterexamples: {}; x = x exhausted at bounds 1..={}", found.join(", "), config.bound(7))))
}
