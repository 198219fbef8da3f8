//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N ...: pass` line (visible with `--nocapture`). A failed
//! assertion fails the corresponding criterion.

use std::time::Instant;

use mlat::construct::{
    divisor_lattice, idempotent_chain, localize_at_prime, product, quotient,
};
use mlat::expr::parse_predicate;
use mlat::lattice::MultLattice;
use mlat::predicates::{
    classify_one, find_quasi_n_zeros, is_quasi_n_absorbing, is_strongly_quasi_n_absorbing,
    is_weakly_quasi_n_absorbing, ZeroWitness,
};
use mlat::search::{search, FamilySpec};
use mlat::theorems::run_all;
use mlat::Elem;

/// The reference corpus: divisor lattices, products, all quotients and
/// prime localizations of D(360), and short idempotent chains.
fn corpus() -> Vec<MultLattice> {
    let mut out = Vec::new();
    for n in [4u64, 8, 12, 16, 24, 30, 36, 60, 360, 900] {
        out.push(divisor_lattice(n).unwrap());
    }
    for (a, b) in [(4u64, 9u64), (8, 27), (12, 30)] {
        out.push(product(&[divisor_lattice(a).unwrap(), divisor_lattice(b).unwrap()]).unwrap());
    }
    let d360 = divisor_lattice(360).unwrap();
    for x in d360.proper_elems() {
        out.push(quotient(&d360, x).unwrap());
    }
    for p in d360.primes() {
        out.push(localize_at_prime(&d360, p).unwrap());
    }
    for k in 2..=6 {
        out.push(idempotent_chain(k).unwrap());
    }
    out
}

#[test]
fn criterion_1_axiom_validation() {
    let start = Instant::now();
    for n in 2..=2000u64 {
        let lat = divisor_lattice(n).unwrap();
        let report = lat.validate();
        assert!(report.ok, "D({n}): {report}");
    }
    for k in 2..=8 {
        assert!(idempotent_chain(k).unwrap().validate().ok, "chain({k})");
    }
    for lat in corpus() {
        let report = lat.validate();
        assert!(report.ok, "{}: {report}", lat.name());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!("criterion 1 axiom validation: pass ({elapsed:?})");
}

#[test]
fn criterion_2_example_reproduction() {
    let start = Instant::now();
    let lat = divisor_lattice(900).unwrap();
    let thirty = lat.elem_by_label("30").unwrap();
    let row = classify_one(&lat, thirty, 2).unwrap();
    assert!(row.quasi[1], "D(900) elem 30 should be quasi 2-absorbing");
    assert!(!row.absorbing[1], "D(900) elem 30 should not be 2-absorbing");
    assert_eq!(
        row.witnesses.get("absorbing(2)").unwrap(),
        &vec!["2".to_string(), "3".to_string(), "5".to_string()]
    );

    let spec = FamilySpec::divisor(2, 100);
    let expr = parse_predicate("quasi(2) and not absorbing(2)").unwrap();
    let hits = search(&spec, &expr, 1).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!((hits[0].param, hits[0].element.as_str()), (30, "30"));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}, budget 5s");
    println!("criterion 2 example reproduction: pass ({elapsed:?})");
}

#[test]
fn criterion_3_theorem_green_suite() {
    let start = Instant::now();
    for lat in corpus() {
        for report in run_all(&lat, 3) {
            assert!(
                report.passed(),
                "{} / {}: {:?}",
                lat.name(),
                report.id.name(),
                report.violations
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget 10min");
    println!("criterion 3 theorem green-suite: pass ({elapsed:?})");
}

#[test]
fn criterion_4_residual_characterization_oracle() {
    // independent residual-based decision: q is quasi n-absorbing iff for
    // every a, either a^n ≤ q or (q : a^n) = (q : a^{n-1})
    fn residual_route(lat: &MultLattice, q: Elem, n: usize) -> bool {
        lat.elems().all(|a| {
            let an = lat.pow(a, n);
            lat.leq(an, q) || lat.residual(q, an) == lat.residual(q, lat.pow(a, n - 1))
        })
    }
    let mut agreements = 0u64;
    for lat in corpus() {
        for q in lat.proper_elems() {
            for n in 1..=3 {
                let direct = is_quasi_n_absorbing(&lat, q, n).unwrap().holds();
                assert_eq!(
                    direct,
                    residual_route(&lat, q, n),
                    "{} q={} n={n}",
                    lat.name(),
                    lat.label(q)
                );
                agreements += 1;
            }
        }
    }
    println!("criterion 4 residual characterization: pass ({agreements} cases)");
}

#[test]
fn criterion_5_strict_hierarchy_and_zero_annihilation() {
    let d8 = divisor_lattice(8).unwrap();
    let eight = d8.elem_by_label("8").unwrap();
    assert!(!is_quasi_n_absorbing(&d8, eight, 2).unwrap().holds());
    assert!(is_quasi_n_absorbing(&d8, eight, 3).unwrap().holds());

    let d12 = divisor_lattice(12).unwrap();
    let twelve = d12.elem_by_label("12").unwrap();
    assert!(is_weakly_quasi_n_absorbing(&d12, twelve, 2).unwrap().holds());
    let v = is_quasi_n_absorbing(&d12, twelve, 2).unwrap();
    assert!(!v.holds());
    let w: Vec<&str> = v.witness().unwrap().iter().map(|&e| d12.label(e)).collect();
    assert_eq!(w, ["2", "3"]);
    let zeros = find_quasi_n_zeros(&d12, twelve, 2).unwrap();
    assert!(zeros.iter().any(|z| matches!(z, ZeroWitness::QuasiN { a, b, .. }
        if d12.label(*a) == "2" && d12.label(*b) == "3")));

    // every quasi n-zero of a weakly-but-not-plainly quasi element
    // annihilates q at the n-th power, on both sides of the pair
    for lat in [&d8, &d12] {
        for q in lat.proper_elems() {
            for n in 1..=3 {
                if !is_weakly_quasi_n_absorbing(lat, q, n).unwrap().holds()
                    || is_quasi_n_absorbing(lat, q, n).unwrap().holds()
                {
                    continue;
                }
                for z in find_quasi_n_zeros(lat, q, n).unwrap() {
                    let ZeroWitness::QuasiN { a, b, n } = z else { unreachable!() };
                    assert_eq!(lat.mul(lat.pow(a, n), q), lat.bottom());
                    assert_eq!(lat.mul(lat.pow(b, n), q), lat.bottom());
                }
            }
        }
    }
    println!("criterion 5 strict hierarchy and zero annihilation: pass");
}

#[test]
fn criterion_6_finite_compactness_collapse() {
    let mut cases = 0u64;
    for lat in corpus() {
        for q in lat.proper_elems() {
            for n in 1..=3 {
                assert_eq!(
                    is_strongly_quasi_n_absorbing(&lat, q, n).unwrap(),
                    is_quasi_n_absorbing(&lat, q, n).unwrap(),
                    "{} q={} n={n}",
                    lat.name(),
                    lat.label(q)
                );
                cases += 1;
            }
        }
    }
    println!("criterion 6 finite compactness collapse: pass ({cases} cases)");
}

#[test]
fn criterion_7_serialization() {
    use mlat::format::{from_file, to_file, FormatError};
    for lat in corpus() {
        let bytes = to_file(&lat);
        let back = from_file(&bytes).unwrap();
        assert_eq!(to_file(&back), bytes, "{} round trip", lat.name());
    }
    let d12 = divisor_lattice(12).unwrap();
    let two = d12.elem_by_label("2").unwrap();
    let three = d12.elem_by_label("3").unwrap();
    let mut doc: serde_json::Value = serde_json::from_slice(&to_file(&d12)).unwrap();
    doc["mul"][two.0][three.0] = serde_json::json!(d12.top().0);
    match from_file(&serde_json::to_vec(&doc).unwrap()) {
        Err(FormatError::Invalid(report)) => {
            assert!(!report.ok);
            let fail = &report.failures[0];
            assert!(!fail.witness.is_empty(), "axiom {} has no witness", fail.axiom);
        }
        other => panic!("mutated D(12) accepted: {other:?}"),
    }
    println!("criterion 7 serialization: pass");
}

#[test]
fn criterion_8_parser_and_determinism() {
    use mlat::expr::{Atom, ParseError, PredicateExpr};
    let atom = |a: Atom| PredicateExpr::Atom(a);
    let not = |e: PredicateExpr| PredicateExpr::Not(Box::new(e));
    let and = |l: PredicateExpr, r: PredicateExpr| PredicateExpr::And(Box::new(l), Box::new(r));
    let or = |l: PredicateExpr, r: PredicateExpr| PredicateExpr::Or(Box::new(l), Box::new(r));

    // 1-12: shapes, precedence, associativity
    let ok: Vec<(&str, PredicateExpr)> = vec![
        ("prime", atom(Atom::Prime)),
        ("  maximal  ", atom(Atom::Maximal)),
        ("QUASI(2)", atom(Atom::Quasi(2))),
        ("weakly_absorbing ( 3 )", atom(Atom::WeaklyAbsorbing(3))),
        ("not prime", not(atom(Atom::Prime))),
        ("not not prime", not(not(atom(Atom::Prime)))),
        ("prime and maximal", and(atom(Atom::Prime), atom(Atom::Maximal))),
        (
            "prime and maximal and principal",
            and(and(atom(Atom::Prime), atom(Atom::Maximal)), atom(Atom::Principal)),
        ),
        (
            "prime or maximal or principal",
            or(or(atom(Atom::Prime), atom(Atom::Maximal)), atom(Atom::Principal)),
        ),
        (
            "prime or maximal and principal",
            or(atom(Atom::Prime), and(atom(Atom::Maximal), atom(Atom::Principal))),
        ),
        (
            "(prime or maximal) and principal",
            and(or(atom(Atom::Prime), atom(Atom::Maximal)), atom(Atom::Principal)),
        ),
        (
            "not (quasi(2) or weakly_quasi(3))",
            not(or(atom(Atom::Quasi(2)), atom(Atom::WeaklyQuasi(3)))),
        ),
    ];
    for (text, want) in &ok {
        assert_eq!(&parse_predicate(text).unwrap(), want, "{text}");
    }
    // 13-20: rejections with positions
    let bad: Vec<(&str, usize)> = vec![
        ("", 0),
        ("and prime", 0),
        ("prime and", 9),
        ("prime or or maximal", 9),
        ("(prime", 6),
        ("prime)", 5),
        ("quasi(0)", 6),
        ("bogus(2)", 0),
    ];
    for (text, offset) in &bad {
        match parse_predicate(text) {
            Err(e) => assert_eq!(e.offset(), *offset, "{text}: {e}"),
            Ok(_) => panic!("accepted {text:?}"),
        }
    }
    assert!(matches!(parse_predicate("quasi(0)"), Err(ParseError::ArgOutOfRange { .. })));

    // search output is independent of the worker count
    let spec = FamilySpec::divisor(2, 100);
    let expr = parse_predicate("quasi(2) and not absorbing(2)").unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let eight = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let a = one.install(|| search(&spec, &expr, 10)).unwrap();
    let b = eight.install(|| search(&spec, &expr, 10)).unwrap();
    let key = |h: &mlat::search::SearchResult| (h.param, h.element.clone(), h.atoms.clone());
    assert_eq!(
        a.iter().map(key).collect::<Vec<_>>(),
        b.iter().map(key).collect::<Vec<_>>()
    );
    println!("criterion 8 parser and determinism: pass");
}
