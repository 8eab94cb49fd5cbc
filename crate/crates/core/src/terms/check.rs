//! Brute-force decision procedures for identities and quasi-identities.
//!
//! Every check walks the assignments in lexicographic order (variables
//! sorted by name, the first one most significant; elements by index), so
//! the reported counterexample is the first one in that order.

use std::collections::BTreeMap;

use super::term::{ndistr_identity, p_term, parse_term, Term};
use crate::covers::irredundant_covers;
use crate::enumerate::enumerate_lattices;
use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;
use crate::set::ElementSet;
use crate::{Limits, Verdict};

/// Values of variables, by name.
pub type Assignment = BTreeMap<String, usize>;

pub fn render_assignment(l: &Lattice, a: &Assignment) -> String {
    a.iter().map(|(v, &x)| format!("{v}={}", l.label(x))).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Meet,
    Join,
}

/// A term flattened to postfix over variable slots.
#[derive(Clone, Debug)]
struct Program(Vec<Op>);

impl Program {
    fn compile(t: &Term, slots: &[String]) -> Program {
        fn emit(t: &Term, slots: &[String], out: &mut Vec<Op>) {
            match t {
                Term::Var(v) => out.push(Op::Var(slots.iter().position(|s| s == v).expect("slot"))),
                Term::Meet(a, b) => {
                    emit(a, slots, out);
                    emit(b, slots, out);
                    out.push(Op::Meet);
                }
                Term::Join(a, b) => {
                    emit(a, slots, out);
                    emit(b, slots, out);
                    out.push(Op::Join);
                }
            }
        }
        let mut ops = Vec::new();
        emit(t, slots, &mut ops);
        Program(ops)
    }

    fn run(&self, meet: impl Fn(usize, usize) -> usize, join: impl Fn(usize, usize) -> usize, values: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.0 {
            match *op {
                Op::Var(i) => stack.push(values[i]),
                Op::Meet => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(meet(a, b));
                }
                Op::Join => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(join(a, b));
                }
            }
        }
        stack[0]
    }
}

/// Evaluates `t` with caller-supplied operations; used for relative
/// interpretations in sub-join-semilattices.
pub(crate) fn eval_with(
    t: &Term,
    a: &Assignment,
    meet: impl Fn(usize, usize) -> usize + Copy,
    join: impl Fn(usize, usize) -> usize + Copy,
) -> Result<usize> {
    match t {
        Term::Var(v) => a.get(v).copied().ok_or_else(|| LatticeError::UnboundVariable(v.clone())),
        Term::Meet(x, y) => Ok(meet(eval_with(x, a, meet, join)?, eval_with(y, a, meet, join)?)),
        Term::Join(x, y) => Ok(join(eval_with(x, a, meet, join)?, eval_with(y, a, meet, join)?)),
    }
}

pub fn eval(l: &Lattice, t: &Term, a: &Assignment) -> Result<usize> {
    eval_with(t, a, |x, y| l.meet(x, y), |x, y| l.join(x, y))
}

fn slots(terms: &[&Term]) -> Vec<String> {
    let mut vars = std::collections::BTreeSet::new();
    for t in terms {
        vars.extend(t.vars());
    }
    vars.into_iter().collect()
}

/// Runs `fails` on every assignment of `k` variables, returning the first
/// failing one.
fn scan(l: &Lattice, k: usize, limits: &Limits, mut fails: impl FnMut(&[usize]) -> bool) -> Result<Option<Vec<usize>>> {
    let n = l.len();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    limits.guard("identity check assignments", total, limits.eval_budget)?;
    let mut values = vec![0usize; k];
    loop {
        if fails(&values) {
            return Ok(Some(values));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

fn compare_terms(l: &Lattice, s: &Term, t: &Term, limits: &Limits, inclusion: bool) -> Result<Verdict<Assignment>> {
    let vars = slots(&[s, t]);
    let (ps, pt) = (Program::compile(s, &vars), Program::compile(t, &vars));
    let mut stack = Vec::new();
    let meet = |x, y| l.meet(x, y);
    let join = |x, y| l.join(x, y);
    let found = scan(l, vars.len(), limits, |v| {
        let a = ps.run(meet, join, v, &mut stack);
        let b = pt.run(meet, join, v, &mut stack);
        if inclusion {
            !l.leq(a, b)
        } else {
            a != b
        }
    })?;
    Ok(match found {
        None => Verdict::Holds,
        Some(values) => Verdict::Fails(vars.into_iter().zip(values).collect()),
    })
}

/// Does `s = t` hold under every assignment?
pub fn holds_identity(l: &Lattice, s: &Term, t: &Term, limits: &Limits) -> Result<Verdict<Assignment>> {
    compare_terms(l, s, t, limits, false)
}

/// Does `s <= t` hold under every assignment?
pub fn holds_inclusion(l: &Lattice, s: &Term, t: &Term, limits: &Limits) -> Result<Verdict<Assignment>> {
    compare_terms(l, s, t, limits, true)
}

pub fn is_n_distributive(l: &Lattice, n: usize, limits: &Limits) -> Result<Verdict<Assignment>> {
    let (lhs, rhs) = ndistr_identity(n);
    holds_identity(l, &lhs, &rhs, limits)
}

/// `n`-distributivity through join-covers: every irredundant join-cover of
/// a join-irreducible element has at most `n` members. The witness is an
/// offending element and cover.
pub fn is_n_distributive_by_covers(l: &Lattice, n: usize, limits: &Limits) -> Result<Verdict<(usize, ElementSet)>> {
    for p in l.join_irreducibles() {
        if let Some(e) = irredundant_covers(l, p, limits)?.into_iter().find(|e| e.len() > n) {
            return Ok(Verdict::Fails((p, e)));
        }
    }
    Ok(Verdict::Holds)
}

/// `SD∨ⁿ`: `p_n(x,y,z) <= x | (y & z)`.
pub fn holds_sdj(l: &Lattice, n: usize, limits: &Limits) -> Result<Verdict<Assignment>> {
    let rhs = parse_term("x | (y & z)").expect("static term");
    holds_inclusion(l, &p_term(n), &rhs, limits)
}

/// `x|y = x|z` implies `x|y = x|(y&z)`. Witness `(x, y, z)`.
pub fn is_join_semidistributive(l: &Lattice, limits: &Limits) -> Result<Verdict<(usize, usize, usize)>> {
    let found = scan(l, 3, limits, |v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        let xy = l.join(x, y);
        xy == l.join(x, z) && xy != l.join(x, l.meet(y, z))
    })?;
    Ok(found.map_or(Verdict::Holds, |v| Verdict::Fails((v[0], v[1], v[2]))))
}

pub fn is_modular(l: &Lattice, limits: &Limits) -> Result<Verdict<Assignment>> {
    let s = parse_term("x & (y | (x & z))").expect("static term");
    let t = parse_term("(x & y) | (x & z)").expect("static term");
    holds_identity(l, &s, &t, limits)
}

pub fn is_distributive(l: &Lattice, limits: &Limits) -> Result<Verdict<Assignment>> {
    let s = parse_term("x & (y | z)").expect("static term");
    let t = parse_term("(x & y) | (x & z)").expect("static term");
    holds_identity(l, &s, &t, limits)
}

/// `x|y|z < t1 < t2` implies `(x|y) & z = (x&z) | (y&z)`.
/// Witness `[x, y, z, t1, t2]`.
pub fn holds_sentence_1storder(l: &Lattice, limits: &Limits) -> Result<Verdict<[usize; 5]>> {
    let n = l.len() as u128;
    limits.guard("first-order sentence tuples", n.pow(5), limits.eval_budget)?;
    for x in l.elements() {
        for y in l.elements() {
            let xy = l.join(x, y);
            for z in l.elements() {
                if l.meet(xy, z) == l.join(l.meet(x, z), l.meet(y, z)) {
                    continue;
                }
                let w = l.join(xy, z);
                for t1 in l.elements().filter(|&t| l.lt(w, t)) {
                    if let Some(t2) = l.elements().find(|&t| l.lt(t1, t)) {
                        return Ok(Verdict::Fails([x, y, z, t1, t2]));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Refutation {
    Counterexample { lattice: Lattice, assignment: Assignment },
    /// No counterexample among lattices up to this size.
    Exhausted(usize),
}

/// Searches all lattices up to `max_size` (only the `n`-distributive ones
/// when `n` is given) for a counterexample to `s = t`. Never proves the
/// identity, only reports exhaustion.
pub fn refute(s: &Term, t: &Term, n: Option<usize>, max_size: usize, limits: &Limits) -> Result<Refutation> {
    for size in 1..=max_size {
        for l in enumerate_lattices(size, limits)? {
            if let Some(n) = n {
                if !is_n_distributive(&l, n, limits)?.holds() {
                    continue;
                }
            }
            if let Verdict::Fails(assignment) = holds_identity(&l, s, t, limits)? {
                return Ok(Refutation::Counterexample { lattice: l, assignment });
            }
        }
    }
    Ok(Refutation::Exhausted(max_size))
}
