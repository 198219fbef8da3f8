//! Randomized invariants over small generated lattices and expressions.

use proptest::prelude::*;

use mlat::construct::{divisor_lattice, idempotent_chain};
use mlat::expr::{parse_predicate, Atom, PredicateExpr};
use mlat::format::{from_file, to_file};
use mlat::lattice::MultLattice;
use mlat::predicates::{is_quasi_n_absorbing, is_weakly_quasi_n_absorbing};

fn small_lattice() -> impl Strategy<Value = MultLattice> {
    prop_oneof![
        (2u64..=120).prop_map(|n| divisor_lattice(n).unwrap()),
        (2usize..=8).prop_map(|k| idempotent_chain(k).unwrap()),
    ]
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Prime),
        Just(Atom::WeaklyPrime),
        Just(Atom::Maximal),
        Just(Atom::Principal),
        (1usize..=4).prop_map(Atom::Absorbing),
        (1usize..=4).prop_map(Atom::WeaklyAbsorbing),
        (1usize..=8).prop_map(Atom::Quasi),
        (1usize..=8).prop_map(Atom::WeaklyQuasi),
        (1usize..=8).prop_map(Atom::StronglyQuasi),
    ]
}

fn expr() -> impl Strategy<Value = PredicateExpr> {
    atom().prop_map(PredicateExpr::Atom).prop_recursive(6, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| PredicateExpr::Not(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| PredicateExpr::And(Box::new(l), Box::new(r))),
            (inner.clone(), inner)
                .prop_map(|(l, r)| PredicateExpr::Or(Box::new(l), Box::new(r))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residual_is_the_adjoint(lat in small_lattice()) {
        for q in lat.elems() {
            for a in lat.elems() {
                let r = lat.residual(q, a);
                prop_assert!(lat.leq(lat.mul(r, a), q));
                for x in lat.elems() {
                    prop_assert_eq!(lat.leq(lat.mul(x, a), q), lat.leq(x, r));
                }
            }
        }
    }

    #[test]
    fn radical_is_a_closure(lat in small_lattice()) {
        for a in lat.elems() {
            let r = lat.radical(a);
            prop_assert!(lat.leq(a, r));
            prop_assert_eq!(lat.radical(r), r);
            for b in lat.elems() {
                if lat.leq(a, b) {
                    prop_assert!(lat.leq(r, lat.radical(b)));
                }
            }
        }
    }

    #[test]
    fn quasi_degree_is_upward_closed(lat in small_lattice(), n in 1usize..8) {
        for q in lat.proper_elems() {
            if is_quasi_n_absorbing(&lat, q, n).unwrap().holds() {
                prop_assert!(is_quasi_n_absorbing(&lat, q, n + 1).unwrap().holds());
            }
            // plain implies weakly
            if is_quasi_n_absorbing(&lat, q, n).unwrap().holds() {
                prop_assert!(is_weakly_quasi_n_absorbing(&lat, q, n).unwrap().holds());
            }
        }
    }

    #[test]
    fn serialization_round_trips(lat in small_lattice()) {
        let bytes = to_file(&lat);
        let back = from_file(&bytes).unwrap();
        prop_assert_eq!(to_file(&back), bytes);
    }

    #[test]
    fn expr_display_reparses(e in expr()) {
        let text = e.to_string();
        let again = parse_predicate(&text).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,60}") {
        let _ = parse_predicate(&s);
    }
}
