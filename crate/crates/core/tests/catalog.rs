//! Properties checked over the whole catalog of small lattices.

use latkit::construct::{canonical_form, dual, is_isomorphic};
use latkit::covers::{cover_kind, minimal_join_covers, refine_to_minimal, refine_to_tight, CoverKind};
use latkit::enumerate::{enumerate_lattices, filter_catalog, Predicate};
use latkit::io::{read_lattice, write_lattice};
use latkit::terms::{eval, holds_identity, is_distributive, is_modular, parse_term, Assignment};
use latkit::{named, Lattice, Limits};
use proptest::prelude::*;

fn catalog(max: usize) -> Vec<Lattice> {
    (1..=max).flat_map(|n| enumerate_lattices(n, &Limits::default()).unwrap()).collect()
}

#[test]
fn lattices_satisfy_the_axioms() {
    for l in catalog(6) {
        for x in l.elements() {
            assert_eq!(l.join(x, x), x);
            for y in l.elements() {
                assert_eq!(l.join(x, y), l.join(y, x));
                assert_eq!(l.join(x, l.meet(x, y)), x);
                assert_eq!(l.leq(x, y), l.join(x, y) == y);
                for z in l.elements() {
                    assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                    assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                }
            }
        }
    }
}

#[test]
fn catalog_has_no_isomorphic_pairs() {
    for n in 1..=7 {
        let ls: Vec<Lattice> = enumerate_lattices(n, &Limits::default()).unwrap().collect();
        let mut forms: Vec<_> = ls.iter().map(canonical_form).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), ls.len(), "size {n}");
    }
}

#[test]
fn catalog_is_closed_under_duality() {
    for n in 1..=6 {
        let ls: Vec<Lattice> = enumerate_lattices(n, &Limits::default()).unwrap().collect();
        for l in &ls {
            let d = dual(l);
            assert_eq!(ls.iter().filter(|m| is_isomorphic(m, &d).is_some()).count(), 1);
        }
    }
}

#[test]
fn size_eight_behind_the_override() {
    assert!(enumerate_lattices(8, &Limits::default()).is_err());
    assert!(enumerate_lattices(9, &Limits::overridden()).is_err());
    assert_eq!(enumerate_lattices(8, &Limits::overridden()).unwrap().count(), 222);
}

#[test]
fn exchange_files_round_trip() {
    for l in catalog(6) {
        let back = read_lattice(&write_lattice(&l)).unwrap();
        assert_eq!(back.labels(), l.labels());
        assert_eq!(back.covers(), l.covers());
        assert_eq!(back.name(), l.name());
    }
}

#[test]
fn filters_on_size_five() {
    let lim = Limits::default();
    let count = |p: &str| {
        let pred: Predicate = p.parse().unwrap();
        filter_catalog(enumerate_lattices(5, &lim).unwrap(), pred, &lim).map(Result::unwrap).collect::<Vec<_>>()
    };
    let modular = count("modular");
    assert!(modular.iter().any(|l| is_isomorphic(l, &named::m3()).is_some()));
    assert!(modular.iter().all(|l| is_isomorphic(l, &named::n5()).is_none()));
    assert_eq!(count("distributive").len(), 3);
    assert_eq!(count("si").len(), 2);
    assert_eq!(count("ndistr:3").len(), 5);
    assert!("bogus".parse::<Predicate>().is_err());
    let lim4 = filter_catalog(enumerate_lattices(4, &lim).unwrap(), "ndistr:1".parse().unwrap(), &lim).count();
    assert_eq!(lim4, 2);
}

#[test]
fn distributive_implies_modular() {
    let lim = Limits::default();
    for l in catalog(7) {
        if is_distributive(&l, &lim).unwrap().holds() {
            assert!(is_modular(&l, &lim).unwrap().holds(), "{}", l.name());
        }
    }
}

#[test]
fn refinements_land_in_the_right_class() {
    for l in catalog(6) {
        for p in l.elements() {
            // everything strictly below p covers p when p is join-reducible
            let mut e = l.down(p).clone();
            e.remove(p);
            if l.join_all(e.iter()) != p {
                continue;
            }
            let tight = refine_to_tight(&l, p, &e).unwrap();
            assert!(matches!(cover_kind(&l, p, &tight), Some(CoverKind::Tight | CoverKind::Minimal)));
            let minimal = refine_to_minimal(&l, p, &e).unwrap();
            assert_eq!(cover_kind(&l, p, &minimal), Some(CoverKind::Minimal));
            assert!(minimal_join_covers(&l, p, &Limits::default()).unwrap().contains(&minimal));
        }
    }
}

fn term_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("x".to_string()), Just("y".to_string()), Just("z".to_string())];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner, any::<bool>())
            .prop_map(|(a, b, j)| format!("({a} {} {b})", if j { '|' } else { '&' }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_terms_parse_back(src in term_strategy()) {
        let t = parse_term(&src).unwrap();
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn terms_are_monotone(src in term_strategy(), x in 0usize..5, y in 0usize..5, z in 0usize..5, bump in 0usize..5) {
        let n5 = named::n5();
        let t = parse_term(&src).unwrap();
        let a: Assignment = [("x", x), ("y", y), ("z", z)].map(|(v, e)| (v.to_string(), e)).into_iter().collect();
        let mut b = a.clone();
        b.insert("x".into(), n5.join(x, bump));
        prop_assert!(n5.leq(eval(&n5, &t, &a).unwrap(), eval(&n5, &t, &b).unwrap()));
    }

    #[test]
    fn meet_is_idempotent_on_terms(src in term_strategy()) {
        let t = parse_term(&src).unwrap();
        let b8 = named::boolean(3);
        let doubled = parse_term(&format!("({t}) & ({t})")).unwrap();
        prop_assert!(holds_identity(&b8, &t, &doubled, &Limits::default()).unwrap().holds());
    }
}
