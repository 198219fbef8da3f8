//! Element classification by exhaustive quantification over the carrier.
//!
//! Every predicate either holds or fails with the lexicographically first
//! witness tuple in index order, so test baselines are reproducible.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Elem, MultLattice};

/// Cap on `n` for the (n+1)-tuple absorbing scans, which are O(size^(n+1)).
pub const ABSORBING_N_CAP: usize = 4;
/// Cap on `n` for the pairwise quasi scans.
pub const QUASI_N_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum PredicateError {
    #[error("element {0:?} is not proper")]
    NotProper(String),
    #[error("n = {n} is outside 1..={cap}")]
    NOutOfRange { n: usize, cap: usize },
}

/// Predicate outcome; failures carry the first counterexample in
/// lexicographic index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Vec<Elem>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

fn require_proper(lat: &MultLattice, q: Elem) -> Result<(), PredicateError> {
    if lat.is_proper(q) {
        Ok(())
    } else {
        Err(PredicateError::NotProper(lat.label(q).to_string()))
    }
}

fn require_n(n: usize, cap: usize) -> Result<(), PredicateError> {
    if (1..=cap).contains(&n) {
        Ok(())
    } else {
        Err(PredicateError::NOutOfRange { n, cap })
    }
}

/// `ab ≤ q` forces `a ≤ q` or `b ≤ q`.
pub fn is_prime(lat: &MultLattice, q: Elem) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    for a in lat.elems() {
        for b in lat.elems() {
            if lat.leq(lat.mul(a, b), q) && !lat.leq(a, q) && !lat.leq(b, q) {
                return Ok(Verdict::Fails(vec![a, b]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `0 ≠ ab ≤ q` forces `a ≤ q` or `b ≤ q`.
pub fn is_weakly_prime(lat: &MultLattice, q: Elem) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    for a in lat.elems() {
        for b in lat.elems() {
            let ab = lat.mul(a, b);
            if ab != lat.bottom() && lat.leq(ab, q) && !lat.leq(a, q) && !lat.leq(b, q) {
                return Ok(Verdict::Fails(vec![a, b]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Nothing sits strictly between `q` and top.
pub fn is_maximal(lat: &MultLattice, q: Elem) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    for x in lat.elems() {
        if lat.lt(q, x) && lat.lt(x, lat.top()) {
            return Ok(Verdict::Fails(vec![x]));
        }
    }
    Ok(Verdict::Holds)
}

/// Iterates nondecreasing index tuples of the given length in lexicographic
/// order. The absorbing conditions are permutation-invariant, so the sorted
/// representative of a violating multiset is also the lexicographically
/// first violating tuple overall.
pub(crate) fn for_each_multiset(size: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut tuple = vec![0usize; len];
    loop {
        if !f(&tuple) {
            return;
        }
        // odometer step, keeping the tuple nondecreasing
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if tuple[i] + 1 < size {
                let v = tuple[i] + 1;
                for t in &mut tuple[i..] {
                    *t = v;
                }
                break;
            }
        }
    }
}

fn absorbing_scan(
    lat: &MultLattice,
    q: Elem,
    n: usize,
    weakly: bool,
) -> Verdict {
    let mut result = Verdict::Holds;
    for_each_multiset(lat.size(), n + 1, |tuple| {
        // prefix[i] = product of tuple[..i], suffix[i] = product of tuple[i..]
        let len = tuple.len();
        let mut prefix = vec![lat.top(); len + 1];
        for i in 0..len {
            prefix[i + 1] = lat.mul(prefix[i], Elem(tuple[i]));
        }
        let total = prefix[len];
        if !lat.leq(total, q) || (weakly && total == lat.bottom()) {
            return true;
        }
        let mut suffix = vec![lat.top(); len + 1];
        for i in (0..len).rev() {
            suffix[i] = lat.mul(suffix[i + 1], Elem(tuple[i]));
        }
        let absorbed =
            (0..len).any(|i| lat.leq(lat.mul(prefix[i], suffix[i + 1]), q));
        if absorbed {
            true
        } else {
            result = Verdict::Fails(tuple.iter().map(|&i| Elem(i)).collect());
            false
        }
    });
    result
}

/// Any (n+1)-fold product below `q` has an n-fold subproduct below `q`.
pub fn is_n_absorbing(lat: &MultLattice, q: Elem, n: usize) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, ABSORBING_N_CAP)?;
    Ok(absorbing_scan(lat, q, n, false))
}

pub fn is_weakly_n_absorbing(
    lat: &MultLattice,
    q: Elem,
    n: usize,
) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, ABSORBING_N_CAP)?;
    Ok(absorbing_scan(lat, q, n, true))
}

fn quasi_scan(lat: &MultLattice, q: Elem, n: usize, weakly: bool) -> Verdict {
    for a in lat.elems() {
        let an = lat.pow(a, n);
        if lat.leq(an, q) {
            continue;
        }
        let an1 = lat.pow(a, n - 1);
        for b in lat.elems() {
            let anb = lat.mul(an, b);
            if lat.leq(anb, q)
                && !(weakly && anb == lat.bottom())
                && !lat.leq(lat.mul(an1, b), q)
            {
                return Verdict::Fails(vec![a, b]);
            }
        }
    }
    Verdict::Holds
}

/// `a^n b ≤ q` forces `a^n ≤ q` or `a^{n-1} b ≤ q`.
pub fn is_quasi_n_absorbing(
    lat: &MultLattice,
    q: Elem,
    n: usize,
) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, QUASI_N_CAP)?;
    Ok(quasi_scan(lat, q, n, false))
}

/// `0 ≠ a^n b ≤ q` forces `a^n ≤ q` or `a^{n-1} b ≤ q`.
pub fn is_weakly_quasi_n_absorbing(
    lat: &MultLattice,
    q: Elem,
    n: usize,
) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, QUASI_N_CAP)?;
    Ok(quasi_scan(lat, q, n, true))
}

/// The quantifier runs over all of `L` rather than the compact elements; on
/// a finite carrier the two coincide, so this scan is elementwise equal to
/// [`is_quasi_n_absorbing`].
pub fn is_strongly_quasi_n_absorbing(
    lat: &MultLattice,
    q: Elem,
    n: usize,
) -> Result<Verdict, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, QUASI_N_CAP)?;
    for a in lat.elems() {
        let an = lat.pow(a, n);
        if lat.leq(an, q) {
            continue;
        }
        for b in lat.elems() {
            if lat.leq(lat.mul(an, b), q) && !lat.leq(lat.mul(lat.pow(a, n - 1), b), q) {
                return Ok(Verdict::Fails(vec![a, b]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Witness that a weakly (quasi) absorbing element fails the plain version
/// at a product equal to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ZeroWitness {
    Triple { a: Elem, b: Elem, c: Elem },
    QuasiN { a: Elem, b: Elem, n: usize },
}

/// All pairs `(a,b)` with `a^n b = 0`, `a^n ≰ q`, `a^{n-1}b ≰ q`, in
/// lexicographic index order.
pub fn find_quasi_n_zeros(
    lat: &MultLattice,
    q: Elem,
    n: usize,
) -> Result<Vec<ZeroWitness>, PredicateError> {
    require_proper(lat, q)?;
    require_n(n, QUASI_N_CAP)?;
    let mut out = Vec::new();
    for a in lat.elems() {
        let an = lat.pow(a, n);
        if lat.leq(an, q) {
            continue;
        }
        let an1 = lat.pow(a, n - 1);
        for b in lat.elems() {
            if lat.mul(an, b) == lat.bottom() && !lat.leq(lat.mul(an1, b), q) {
                out.push(ZeroWitness::QuasiN { a, b, n });
            }
        }
    }
    Ok(out)
}

/// All nondecreasing triples `(a,b,c)` with `abc = 0` and no pair product
/// below `q`, in lexicographic index order.
pub fn find_triple_zeros(lat: &MultLattice, q: Elem) -> Result<Vec<ZeroWitness>, PredicateError> {
    require_proper(lat, q)?;
    let mut out = Vec::new();
    for_each_multiset(lat.size(), 3, |t| {
        let (a, b, c) = (Elem(t[0]), Elem(t[1]), Elem(t[2]));
        if lat.mul(lat.mul(a, b), c) == lat.bottom()
            && !lat.leq(lat.mul(a, b), q)
            && !lat.leq(lat.mul(a, c), q)
            && !lat.leq(lat.mul(b, c), q)
        {
            out.push(ZeroWitness::Triple { a, b, c });
        }
        true
    });
    Ok(out)
}

/// Dilworth's meet-principal and join-principal identities, both checked
/// over all pairs `(a,b)`.
pub fn is_principal_element(lat: &MultLattice, e: Elem) -> Verdict {
    for a in lat.elems() {
        for b in lat.elems() {
            let meet_lhs = lat.meet(a, lat.mul(b, e));
            let meet_rhs = lat.mul(lat.meet(lat.residual(a, e), b), e);
            if meet_lhs != meet_rhs {
                return Verdict::Fails(vec![a, b]);
            }
            let join_lhs = lat.residual(lat.join(lat.mul(a, e), b), e);
            let join_rhs = lat.join(lat.residual(b, e), a);
            if join_lhs != join_rhs {
                return Verdict::Fails(vec![a, b]);
            }
        }
    }
    Verdict::Holds
}

/// Whole-lattice flags, with witnesses for the false ones.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeFlags {
    pub domain: bool,
    pub field: bool,
    pub quasi_local: bool,
    pub totally_ordered: bool,
    pub principal_element_lattice: bool,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

pub fn lattice_flags(lat: &MultLattice) -> LatticeFlags {
    let mut witnesses = BTreeMap::new();
    let labels = |w: &[Elem]| w.iter().map(|&e| lat.label(e).to_string()).collect::<Vec<_>>();

    let domain = if lat.size() == 1 {
        false
    } else {
        match is_prime(lat, lat.bottom()).expect("bottom is proper when size > 1") {
            Verdict::Holds => true,
            Verdict::Fails(w) => {
                witnesses.insert("domain".to_string(), labels(&w));
                false
            }
        }
    };
    let field = lat.size() == 2;
    let maximals = lat.maximal_elems();
    let quasi_local = maximals.len() == 1;
    if !quasi_local {
        witnesses.insert("quasi_local".to_string(), labels(&maximals));
    }

    let mut totally_ordered = true;
    'total: for a in lat.elems() {
        for b in lat.elems() {
            if !lat.leq(a, b) && !lat.leq(b, a) {
                witnesses.insert("totally_ordered".to_string(), labels(&[a, b]));
                totally_ordered = false;
                break 'total;
            }
        }
    }

    let mut principal = true;
    for e in lat.elems() {
        if let Verdict::Fails(w) = is_principal_element(lat, e) {
            let mut tuple = vec![e];
            tuple.extend(w);
            witnesses.insert("principal_element_lattice".to_string(), labels(&tuple));
            principal = false;
            break;
        }
    }

    LatticeFlags {
        domain,
        field,
        quasi_local,
        totally_ordered,
        principal_element_lattice: principal,
        witnesses,
    }
}

/// Every predicate outcome for one proper element, up to degree `n_max`.
/// The boolean arrays are indexed by `n - 1`.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub element: Elem,
    pub label: String,
    pub prime: bool,
    pub weakly_prime: bool,
    pub maximal: bool,
    pub principal: bool,
    pub absorbing: Vec<bool>,
    pub weakly_absorbing: Vec<bool>,
    pub quasi: Vec<bool>,
    pub weakly_quasi: Vec<bool>,
    pub strongly_quasi: Vec<bool>,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

impl Classification {
    /// Smallest `n` with `quasi[n]`, if any within `n_max`.
    pub fn min_quasi_degree(&self) -> Option<usize> {
        self.quasi.iter().position(|&b| b).map(|i| i + 1)
    }

    pub fn min_weakly_quasi_degree(&self) -> Option<usize> {
        self.weakly_quasi.iter().position(|&b| b).map(|i| i + 1)
    }
}

/// Classifies every proper element. Elements are evaluated in parallel;
/// the result order is the carrier index order regardless of scheduling.
pub fn classify(lat: &MultLattice, n_max: usize) -> Result<Vec<Classification>, PredicateError> {
    require_n(n_max, ABSORBING_N_CAP)?;
    let proper: Vec<Elem> = lat.proper_elems().collect();
    proper
        .into_par_iter()
        .map(|q| classify_one(lat, q, n_max))
        .collect()
}

pub fn classify_one(
    lat: &MultLattice,
    q: Elem,
    n_max: usize,
) -> Result<Classification, PredicateError> {
    let mut witnesses = BTreeMap::new();
    let labels = |w: &[Elem]| w.iter().map(|&e| lat.label(e).to_string()).collect::<Vec<_>>();
    let record = |name: String, v: Verdict, witnesses: &mut BTreeMap<String, Vec<String>>| {
        let ok = v.holds();
        if let Verdict::Fails(w) = v {
            witnesses.insert(name, labels(&w));
        }
        ok
    };

    let prime = record("prime".into(), is_prime(lat, q)?, &mut witnesses);
    let weakly_prime = record("weakly_prime".into(), is_weakly_prime(lat, q)?, &mut witnesses);
    let maximal = record("maximal".into(), is_maximal(lat, q)?, &mut witnesses);
    let principal = record("principal".into(), is_principal_element(lat, q), &mut witnesses);

    let mut absorbing = Vec::with_capacity(n_max);
    let mut weakly_absorbing = Vec::with_capacity(n_max);
    let mut quasi = Vec::with_capacity(n_max);
    let mut weakly_quasi = Vec::with_capacity(n_max);
    let mut strongly_quasi = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        absorbing.push(record(
            format!("absorbing({n})"),
            is_n_absorbing(lat, q, n)?,
            &mut witnesses,
        ));
        weakly_absorbing.push(record(
            format!("weakly_absorbing({n})"),
            is_weakly_n_absorbing(lat, q, n)?,
            &mut witnesses,
        ));
        quasi.push(record(format!("quasi({n})"), is_quasi_n_absorbing(lat, q, n)?, &mut witnesses));
        weakly_quasi.push(record(
            format!("weakly_quasi({n})"),
            is_weakly_quasi_n_absorbing(lat, q, n)?,
            &mut witnesses,
        ));
        strongly_quasi.push(record(
            format!("strongly_quasi({n})"),
            is_strongly_quasi_n_absorbing(lat, q, n)?,
            &mut witnesses,
        ));
    }

    Ok(Classification {
        element: q,
        label: lat.label(q).to_string(),
        prime,
        weakly_prime,
        maximal,
        principal,
        absorbing,
        weakly_absorbing,
        quasi,
        weakly_quasi,
        strongly_quasi,
        witnesses,
    })
}
