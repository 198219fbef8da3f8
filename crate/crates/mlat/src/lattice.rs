//! Finite multiplicative lattices: a carrier with a partial order, derived
//! join/meet, and a commutative associative join-distributive product with
//! identity `top`.
//!
//! The carrier is finite, so every element is compact and every quantifier
//! in the classification predicates ranges over the whole carrier. A
//! [`MultLattice`] is immutable once built; all operations are pure table
//! lookups or folds over the carrier.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Index of an element in a lattice carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elem(pub usize);

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Table shape or index problems, distinct from axiom failures: a structurally
/// broken input cannot even be checked against the lattice axioms.
#[derive(Debug, Error)]
pub enum StructuralError {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("leq relation has {got} entries, expected {want} for size {size}")]
    LeqDimension { got: usize, want: usize, size: usize },
    #[error("mul table has {got} entries, expected {want} for size {size}")]
    MulDimension { got: usize, want: usize, size: usize },
    #[error("mul({a},{b}) = {val} is out of range for size {size}")]
    MulRange { a: usize, b: usize, val: usize, size: usize },
    #[error("label {label:?} appears more than once")]
    DuplicateLabel { label: String },
    #[error("{what} index {index} out of range for size {size}")]
    IndexRange { what: &'static str, index: usize, size: usize },
    #[error("{got} labels for size {size}")]
    LabelCount { got: usize, size: usize },
}

/// One axiom of the multiplicative-lattice definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Reflexive,
    Antisymmetric,
    Transitive,
    JoinExists,
    MeetExists,
    BottomLeast,
    TopGreatest,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    MulBottom,
    MulJoinDistributive,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "reflexive",
            Axiom::Antisymmetric => "antisymmetric",
            Axiom::Transitive => "transitive",
            Axiom::JoinExists => "join-exists",
            Axiom::MeetExists => "meet-exists",
            Axiom::BottomLeast => "bottom-least",
            Axiom::TopGreatest => "top-greatest",
            Axiom::MulCommutative => "mul-commutative",
            Axiom::MulAssociative => "mul-associative",
            Axiom::MulIdentity => "mul-identity",
            Axiom::MulBottom => "mul-bottom",
            Axiom::MulJoinDistributive => "mul-join-distributive",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An axiom violation together with the lexicographically first witness tuple.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.axiom)?;
        for (i, e) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e.0)?;
        }
        write!(f, ")")
    }
}

/// Outcome of checking every lattice axiom; at most one failure (the first
/// witness in index order) is recorded per axiom.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<AxiomFailure>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            f.write_str("ok")
        } else {
            for (i, fail) in self.failures.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "{fail}")?;
            }
            Ok(())
        }
    }
}

const NO_BOUND: u32 = u32::MAX;

/// A finite multiplicative lattice.
///
/// `leq`, `mul` are the source of truth; `join`, `meet` and the power chains
/// are derived at construction. Pairs without a least upper bound (possible
/// only in invalid input) carry a sentinel that [`MultLattice::validate`]
/// reports as a `join-exists` / `meet-exists` failure.
#[derive(Debug, Clone)]
pub struct MultLattice {
    name: String,
    size: usize,
    labels: Vec<String>,
    leq: Vec<bool>,
    mul: Vec<u32>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: Elem,
    top: Elem,
    /// pow_chain[a][k-1] = a^k, truncated once the sequence stabilizes.
    pow_chain: Vec<Vec<u32>>,
    /// Product provenance: the factor lattices when this lattice was built as
    /// a direct product, empty otherwise. Not serialized.
    factors: Vec<MultLattice>,
}

impl MultLattice {
    /// Builds a lattice from raw tables, checking structure only. `leq` must
    /// already be reflexively and transitively closed; use
    /// [`crate::format::from_file`] for the file format, which closes it.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<bool>,
        mul: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self, StructuralError> {
        let size = labels.len();
        if size == 0 {
            return Err(StructuralError::EmptyCarrier);
        }
        if leq.len() != size * size {
            return Err(StructuralError::LeqDimension { got: leq.len(), want: size * size, size });
        }
        if mul.len() != size * size {
            return Err(StructuralError::MulDimension { got: mul.len(), want: size * size, size });
        }
        for a in 0..size {
            for b in 0..size {
                let val = mul[a * size + b];
                if val >= size {
                    return Err(StructuralError::MulRange { a, b, val, size });
                }
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(StructuralError::DuplicateLabel { label: l.clone() });
            }
        }
        if bottom >= size {
            return Err(StructuralError::IndexRange { what: "bottom", index: bottom, size });
        }
        if top >= size {
            return Err(StructuralError::IndexRange { what: "top", index: top, size });
        }
        let mul: Vec<u32> = mul.into_iter().map(|v| v as u32).collect();
        let mut lat = MultLattice {
            name: name.into(),
            size,
            labels,
            leq,
            mul,
            join: Vec::new(),
            meet: Vec::new(),
            bottom: Elem(bottom),
            top: Elem(top),
            pow_chain: Vec::new(),
            factors: Vec::new(),
        };
        lat.derive_bounds();
        lat.derive_pow_chains();
        Ok(lat)
    }

    /// Consumes the lattice, returning it only if it passes [`validate`].
    ///
    /// [`validate`]: MultLattice::validate
    pub fn validated(self) -> Result<Self, ValidationReport> {
        let report = self.validate();
        if report.ok {
            Ok(self)
        } else {
            Err(report)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn elem_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem)
    }

    /// All elements in index order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.size).map(Elem)
    }

    /// All elements strictly below top, in index order.
    pub fn proper_elems(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        let top = self.top;
        self.elems().filter(move |&e| e != top)
    }

    pub fn is_proper(&self, e: Elem) -> bool {
        e != self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.size + b.0]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.0 * self.size + b.0] as usize)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        let v = self.join[a.0 * self.size + b.0];
        assert!(v != NO_BOUND, "join({},{}) does not exist", a.0, b.0);
        Elem(v as usize)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        let v = self.meet[a.0 * self.size + b.0];
        assert!(v != NO_BOUND, "meet({},{}) does not exist", a.0, b.0);
        Elem(v as usize)
    }

    /// Join of an arbitrary element set; the empty join is bottom.
    pub fn join_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// Meet of an arbitrary element set; the empty meet is top.
    pub fn meet_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// `a^k`, with `a^0 = top`. Powers form a descending chain in a valid
    /// lattice, so the memoized chain stabilizes within `size` steps.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        if k == 0 {
            return self.top;
        }
        let chain = &self.pow_chain[a.0];
        Elem(chain[k.min(chain.len()) - 1] as usize)
    }

    /// The residual `(q : a)`: the largest `x` with `x·a ≤ q`.
    pub fn residual(&self, q: Elem, a: Elem) -> Elem {
        self.join_all(self.elems().filter(|&x| self.leq(self.mul(x, a), q)))
    }

    /// `ann(a) = (0 : a)`.
    pub fn annihilator(&self, a: Elem) -> Elem {
        self.residual(self.bottom, a)
    }

    /// Whether `p` is prime: `p` proper and `ab ≤ p` forces `a ≤ p` or `b ≤ p`.
    ///
    /// This is the raw carrier scan; the witness-reporting variant lives in
    /// [`crate::predicates`].
    pub fn is_prime_elem(&self, p: Elem) -> bool {
        if !self.is_proper(p) {
            return false;
        }
        self.elems().all(|a| {
            self.elems()
                .all(|b| !self.leq(self.mul(a, b), p) || self.leq(a, p) || self.leq(b, p))
        })
    }

    /// Whether `m` is maximal: `m` proper and nothing sits strictly between
    /// `m` and top.
    pub fn is_maximal_elem(&self, m: Elem) -> bool {
        self.is_proper(m) && self.elems().all(|x| !(self.lt(m, x) && self.lt(x, self.top)))
    }

    pub fn primes(&self) -> Vec<Elem> {
        self.elems().filter(|&p| self.is_prime_elem(p)).collect()
    }

    pub fn maximal_elems(&self) -> Vec<Elem> {
        self.elems().filter(|&m| self.is_maximal_elem(m)).collect()
    }

    /// `√a`, computed both as the join of elements with some power below `a`
    /// and as the meet of the primes above `a`; the two routes are asserted
    /// equal (on a validated lattice they always agree).
    pub fn radical(&self, a: Elem) -> Elem {
        let by_nilpotence = self.join_all(self.elems().filter(|&x| {
            // The power chain descends, so its last entry is the minimum.
            let chain = &self.pow_chain[x.0];
            self.leq(Elem(*chain.last().unwrap() as usize), a)
        }));
        let primes_above: Vec<Elem> =
            self.primes().into_iter().filter(|&p| self.leq(a, p)).collect();
        let by_primes = if primes_above.is_empty() {
            self.top
        } else {
            self.meet_all(primes_above)
        };
        assert_eq!(
            by_nilpotence, by_primes,
            "radical routes disagree at {} in {}",
            a.0, self.name
        );
        by_nilpotence
    }

    /// `Nil(L) = √0`.
    pub fn nilradical(&self) -> Elem {
        self.radical(self.bottom)
    }

    /// `J(L)`: the meet of all maximal elements (top if there are none, which
    /// happens only in the one-element degenerate).
    pub fn jacobson(&self) -> Elem {
        self.meet_all(self.maximal_elems())
    }

    pub fn factors(&self) -> &[MultLattice] {
        &self.factors
    }

    pub(crate) fn set_factors(&mut self, factors: Vec<MultLattice>) {
        self.factors = factors;
    }

    /// Checks every lattice axiom, recording the first witness in
    /// lexicographic index order for each violated axiom.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.size;
        let e = Elem;

        'refl: for a in 0..n {
            if !self.leq(e(a), e(a)) {
                failures.push(AxiomFailure { axiom: Axiom::Reflexive, witness: vec![e(a)] });
                break 'refl;
            }
        }
        'antisym: for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(e(a), e(b)) && self.leq(e(b), e(a)) {
                    failures
                        .push(AxiomFailure { axiom: Axiom::Antisymmetric, witness: vec![e(a), e(b)] });
                    break 'antisym;
                }
            }
        }
        'trans: for a in 0..n {
            for b in 0..n {
                if !self.leq(e(a), e(b)) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(e(b), e(c)) && !self.leq(e(a), e(c)) {
                        failures.push(AxiomFailure {
                            axiom: Axiom::Transitive,
                            witness: vec![e(a), e(b), e(c)],
                        });
                        break 'trans;
                    }
                }
            }
        }

        'joins: for a in 0..n {
            for b in 0..n {
                if self.join[a * n + b] == NO_BOUND {
                    failures.push(AxiomFailure { axiom: Axiom::JoinExists, witness: vec![e(a), e(b)] });
                    break 'joins;
                }
            }
        }
        'meets: for a in 0..n {
            for b in 0..n {
                if self.meet[a * n + b] == NO_BOUND {
                    failures.push(AxiomFailure { axiom: Axiom::MeetExists, witness: vec![e(a), e(b)] });
                    break 'meets;
                }
            }
        }

        for a in 0..n {
            if !self.leq(self.bottom, e(a)) {
                failures.push(AxiomFailure { axiom: Axiom::BottomLeast, witness: vec![e(a)] });
                break;
            }
        }
        for a in 0..n {
            if !self.leq(e(a), self.top) {
                failures.push(AxiomFailure { axiom: Axiom::TopGreatest, witness: vec![e(a)] });
                break;
            }
        }

        'comm: for a in 0..n {
            for b in 0..n {
                if self.mul(e(a), e(b)) != self.mul(e(b), e(a)) {
                    failures
                        .push(AxiomFailure { axiom: Axiom::MulCommutative, witness: vec![e(a), e(b)] });
                    break 'comm;
                }
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(e(a), e(b));
                for c in 0..n {
                    if self.mul(ab, e(c)) != self.mul(e(a), self.mul(e(b), e(c))) {
                        failures.push(AxiomFailure {
                            axiom: Axiom::MulAssociative,
                            witness: vec![e(a), e(b), e(c)],
                        });
                        break 'assoc;
                    }
                }
            }
        }
        for a in 0..n {
            if self.mul(e(a), self.top) != e(a) {
                failures.push(AxiomFailure { axiom: Axiom::MulIdentity, witness: vec![e(a)] });
                break;
            }
        }
        // The empty-join case of complete join distributivity.
        for a in 0..n {
            if self.mul(e(a), self.bottom) != self.bottom {
                failures.push(AxiomFailure { axiom: Axiom::MulBottom, witness: vec![e(a)] });
                break;
            }
        }
        'dist: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(e(a), e(b));
                for c in 0..n {
                    if self.join[b * n + c] == NO_BOUND {
                        continue; // reported by join-exists
                    }
                    let lhs = self.mul(e(a), self.join(e(b), e(c)));
                    let rhs_parts = (ab, self.mul(e(a), e(c)));
                    if self.join[rhs_parts.0 .0 * n + rhs_parts.1 .0] == NO_BOUND {
                        continue;
                    }
                    if lhs != self.join(rhs_parts.0, rhs_parts.1) {
                        failures.push(AxiomFailure {
                            axiom: Axiom::MulJoinDistributive,
                            witness: vec![e(a), e(b), e(c)],
                        });
                        break 'dist;
                    }
                }
            }
        }

        ValidationReport { ok: failures.is_empty(), failures }
    }

    #[cfg(test)]
    pub(crate) fn raw_tables(&self) -> (Vec<bool>, Vec<usize>) {
        (self.leq.clone(), self.mul.iter().map(|&v| v as usize).collect())
    }

    fn derive_bounds(&mut self) {
        let n = self.size;
        let mut join = vec![NO_BOUND; n * n];
        let mut meet = vec![NO_BOUND; n * n];
        let mut ubs: Vec<usize> = Vec::with_capacity(n);
        for a in 0..n {
            for b in a..n {
                ubs.clear();
                ubs.extend((0..n).filter(|&x| self.leq[a * n + x] && self.leq[b * n + x]));
                let lub = ubs
                    .iter()
                    .copied()
                    .find(|&u| ubs.iter().all(|&v| self.leq[u * n + v]))
                    .map(|u| u as u32)
                    .unwrap_or(NO_BOUND);
                join[a * n + b] = lub;
                join[b * n + a] = lub;

                ubs.clear();
                ubs.extend((0..n).filter(|&x| self.leq[x * n + a] && self.leq[x * n + b]));
                let glb = ubs
                    .iter()
                    .copied()
                    .find(|&u| ubs.iter().all(|&v| self.leq[v * n + u]))
                    .map(|u| u as u32)
                    .unwrap_or(NO_BOUND);
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        self.join = join;
        self.meet = meet;
    }

    fn derive_pow_chains(&mut self) {
        let n = self.size;
        let mut chains = Vec::with_capacity(n);
        for a in 0..n {
            let mut chain = vec![a as u32];
            // Stabilizes within `n` steps on a valid lattice; the cap also
            // terminates cycles that invalid tables could produce.
            for _ in 1..=n {
                let prev = *chain.last().unwrap() as usize;
                let next = self.mul[prev * n + a];
                if next == prev as u32 {
                    break;
                }
                chain.push(next);
            }
            chains.push(chain);
        }
        self.pow_chain = chains;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{divisor_lattice, idempotent_chain};

    fn d(n: u64) -> MultLattice {
        divisor_lattice(n).unwrap()
    }

    fn el(lat: &MultLattice, label: &str) -> Elem {
        lat.elem_by_label(label).unwrap()
    }

    #[test]
    fn divisor_12_passes_validation() {
        assert!(d(12).validate().ok);
    }

    #[test]
    fn degenerate_and_field_lattices_validate() {
        let one = divisor_lattice(1).unwrap();
        assert_eq!(one.size(), 1);
        assert!(one.validate().ok);
        let field = d(2);
        assert_eq!(field.size(), 2);
        assert!(field.validate().ok);
    }

    #[test]
    fn mutated_mul_fails_validation_with_witness() {
        let lat = d(12);
        let (leq, mut mul) = lat.raw_tables();
        let (two, three, top) = (el(&lat, "2"), el(&lat, "3"), lat.top());
        mul[two.0 * lat.size() + three.0] = top.0;
        mul[three.0 * lat.size() + two.0] = top.0;
        let broken = MultLattice::from_tables(
            "broken",
            lat.labels().to_vec(),
            leq,
            mul,
            lat.bottom().0,
            lat.top().0,
        )
        .unwrap();
        let report = broken.validate();
        assert!(!report.ok);
        assert!(!report.failures.is_empty());
        for f in &report.failures {
            assert!(!f.witness.is_empty());
        }
        // deterministic witness selection
        let again = broken.validate();
        assert_eq!(format!("{report}"), format!("{again}"));
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        let err = MultLattice::from_tables(
            "bad",
            vec!["a".into(), "a".into()],
            vec![true; 4],
            vec![0, 0, 0, 0],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, StructuralError::DuplicateLabel { .. }));

        let err = MultLattice::from_tables(
            "bad",
            vec!["a".into(), "b".into()],
            vec![true; 4],
            vec![0, 9, 0, 0],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, StructuralError::MulRange { .. }));

        let err = MultLattice::from_tables(
            "bad",
            vec!["a".into(), "b".into()],
            vec![true; 3],
            vec![0; 4],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, StructuralError::LeqDimension { .. }));
    }

    #[test]
    fn mul_matches_ideal_arithmetic() {
        let lat = d(12);
        assert_eq!(lat.mul(el(&lat, "2"), el(&lat, "3")), el(&lat, "6"));
        assert_eq!(lat.mul(el(&lat, "4"), el(&lat, "6")), el(&lat, "12"));
        for x in lat.elems() {
            assert_eq!(lat.mul(x, lat.top()), x);
        }
    }

    #[test]
    fn pow_examples() {
        let d8 = d(8);
        assert_eq!(d8.pow(el(&d8, "2"), 3), el(&d8, "8"));
        let d12 = d(12);
        assert_eq!(d12.pow(el(&d12, "6"), 2), el(&d12, "12"));
        for lat in [&d8, &d12] {
            for a in lat.elems() {
                assert_eq!(lat.pow(a, 1), a);
                assert_eq!(lat.pow(a, 0), lat.top());
            }
        }
        // powers descend
        for a in d12.elems() {
            for k in 1..8 {
                assert!(d12.leq(d12.pow(a, k + 1), d12.pow(a, k)));
            }
        }
    }

    #[test]
    fn residual_examples_and_adjunction() {
        let lat = d(12);
        assert_eq!(lat.residual(el(&lat, "4"), el(&lat, "2")), el(&lat, "2"));
        assert_eq!(lat.residual(el(&lat, "6"), el(&lat, "2")), el(&lat, "3"));
        for n in [2u64, 4, 8, 12, 24, 30, 36] {
            let lat = d(n);
            for q in lat.elems() {
                assert_eq!(lat.residual(q, lat.top()), q);
                for a in lat.elems() {
                    let r = lat.residual(q, a);
                    for x in lat.elems() {
                        assert_eq!(lat.leq(lat.mul(x, a), q), lat.leq(x, r));
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let d12 = d(12);
        assert_eq!(d12.annihilator(el(&d12, "2")), el(&d12, "6"));
        assert_eq!(d12.annihilator(d12.bottom()), d12.top());
        let d8 = d(8);
        assert_eq!(d8.annihilator(el(&d8, "4")), el(&d8, "2"));
    }

    #[test]
    fn radical_examples_and_laws() {
        let d12 = d(12);
        assert_eq!(d12.radical(el(&d12, "4")), el(&d12, "2"));
        let d8 = d(8);
        assert_eq!(d8.radical(el(&d8, "8")), el(&d8, "2"));
        for n in [2u64, 8, 12, 30, 36, 60] {
            let lat = d(n);
            assert_eq!(lat.radical(lat.top()), lat.top());
            for a in lat.elems() {
                let r = lat.radical(a);
                assert!(lat.leq(a, r));
                assert_eq!(lat.radical(r), r);
            }
        }
    }

    #[test]
    fn nilradical_and_jacobson() {
        let d12 = d(12);
        assert_eq!(d12.nilradical(), el(&d12, "6"));
        assert_eq!(d12.jacobson(), el(&d12, "6"));
        let d8 = d(8);
        assert_eq!(d8.nilradical(), el(&d8, "2"));
        assert_eq!(d8.jacobson(), el(&d8, "2"));
        let field = d(2);
        assert_eq!(field.nilradical(), field.bottom());
        assert_eq!(field.jacobson(), field.bottom());
    }

    #[test]
    fn product_below_meet_and_monotone() {
        for lat in [d(36), idempotent_chain(5).unwrap()] {
            for a in lat.elems() {
                assert_eq!(lat.mul(a, lat.bottom()), lat.bottom());
                for b in lat.elems() {
                    assert!(lat.leq(lat.mul(a, b), lat.meet(a, b)));
                    for c in lat.elems() {
                        if lat.leq(b, c) {
                            assert!(lat.leq(lat.mul(a, b), lat.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn primes_and_maximals_of_d12() {
        let lat = d(12);
        let labels: Vec<&str> = lat.primes().iter().map(|&p| lat.label(p)).collect();
        assert_eq!(labels, ["2", "3"]);
        let labels: Vec<&str> = lat.maximal_elems().iter().map(|&m| lat.label(m)).collect();
        assert_eq!(labels, ["2", "3"]);
    }
}
