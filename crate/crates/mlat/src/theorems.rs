//! Every theorem of the catalog as an exhaustively checkable property.
//!
//! The theorems are proven facts about multiplicative lattices, so on any
//! lattice passing validation a non-skipped check must report zero
//! violations; a violation is a bug detector, not a mathematical discovery.
//! Hypotheses of conditional theorems (principal element lattice, totally
//! ordered carrier, `x ≤ q`, maximality) filter instantiations and never
//! count as failures.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{localize_at_prime, localized_image, product_elem, quotient};
use crate::lattice::{Elem, MultLattice};
use crate::predicates::{
    find_quasi_n_zeros, for_each_multiset, is_n_absorbing, is_prime, is_quasi_n_absorbing,
    is_strongly_quasi_n_absorbing, is_weakly_n_absorbing, is_weakly_prime,
    is_weakly_quasi_n_absorbing, lattice_flags, ZeroWitness, ABSORBING_N_CAP, QUASI_N_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    Rel,
    Cor1,
    ResChar,
    AnnZero,
    PrimeMeet,
    RadNilJac,
    TotMeet,
    FinMeet,
    Quot,
    Loc,
    PrinEq,
    Prod1,
    ProdK,
    SprinEq,
    Suff,
}

pub const CATALOG: [TheoremId; 15] = [
    TheoremId::Rel,
    TheoremId::Cor1,
    TheoremId::ResChar,
    TheoremId::AnnZero,
    TheoremId::PrimeMeet,
    TheoremId::RadNilJac,
    TheoremId::TotMeet,
    TheoremId::FinMeet,
    TheoremId::Quot,
    TheoremId::Loc,
    TheoremId::PrinEq,
    TheoremId::Prod1,
    TheoremId::ProdK,
    TheoremId::SprinEq,
    TheoremId::Suff,
];

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Rel => "REL",
            TheoremId::Cor1 => "COR1",
            TheoremId::ResChar => "RES-CHAR",
            TheoremId::AnnZero => "ANN-ZERO",
            TheoremId::PrimeMeet => "PRIME-MEET",
            TheoremId::RadNilJac => "RAD-NIL-JAC",
            TheoremId::TotMeet => "TOT-MEET",
            TheoremId::FinMeet => "FIN-MEET",
            TheoremId::Quot => "QUOT",
            TheoremId::Loc => "LOC",
            TheoremId::PrinEq => "PRIN-EQ",
            TheoremId::Prod1 => "PROD-1",
            TheoremId::ProdK => "PROD-K",
            TheoremId::SprinEq => "SPRIN-EQ",
            TheoremId::Suff => "SUFF",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown theorem id {0:?}")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.to_ascii_uppercase();
        CATALOG
            .iter()
            .copied()
            .find(|id| id.name() == up)
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    /// Quantifier assignment as element labels.
    pub assignment: String,
    /// The clause of the theorem that failed.
    pub clause: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub lattice: String,
    /// Instantiations actually checked (hypothesis met).
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Reason the whole check did not apply, e.g. an unmet hypothesis.
    pub skipped: Option<String>,
    /// Informational remark, e.g. finite-scale triviality.
    pub note: Option<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Ctx<'a> {
    lat: &'a MultLattice,
    checked: u64,
    violations: Vec<Violation>,
}

impl<'a> Ctx<'a> {
    fn new(lat: &'a MultLattice, _n_max: usize) -> Self {
        Ctx { lat, checked: 0, violations: Vec::new() }
    }

    fn lab(&self, e: Elem) -> &str {
        self.lat.label(e)
    }

    fn check(&mut self, ok: bool, assignment: String, clause: &str) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { assignment, clause: clause.to_string() });
        }
    }

    fn finish(self, id: TheoremId) -> TheoremReport {
        TheoremReport {
            id,
            lattice: self.lat.name().to_string(),
            checked: self.checked,
            violations: self.violations,
            skipped: None,
            note: None,
        }
    }
}

fn skipped(id: TheoremId, lat: &MultLattice, why: impl Into<String>) -> TheoremReport {
    TheoremReport {
        id,
        lattice: lat.name().to_string(),
        checked: 0,
        violations: Vec::new(),
        skipped: Some(why.into()),
        note: None,
    }
}

fn quasi(lat: &MultLattice, q: Elem, n: usize) -> bool {
    is_quasi_n_absorbing(lat, q, n).expect("proper q, n within cap").holds()
}

fn wquasi(lat: &MultLattice, q: Elem, n: usize) -> bool {
    is_weakly_quasi_n_absorbing(lat, q, n).expect("proper q, n within cap").holds()
}

fn min_degree(lat: &MultLattice, q: Elem, n_max: usize, weakly: bool) -> Option<usize> {
    // Degrees are monotone upward, so the first hit is the minimum.
    (1..=n_max).find(|&n| if weakly { wquasi(lat, q, n) } else { quasi(lat, q, n) })
}

/// Runs one catalog check exhaustively over the given lattice.
pub fn run_check(lat: &MultLattice, id: TheoremId, n_max: usize) -> TheoremReport {
    let n_max = n_max.clamp(1, QUASI_N_CAP);
    match id {
        TheoremId::Rel => check_rel(lat, n_max),
        TheoremId::Cor1 => check_cor1(lat, n_max),
        TheoremId::ResChar => check_res_char(lat, n_max),
        TheoremId::AnnZero => check_ann_zero(lat, n_max),
        TheoremId::PrimeMeet => check_prime_meet(lat, n_max),
        TheoremId::RadNilJac => check_rad_nil_jac(lat, n_max),
        TheoremId::TotMeet => check_tot_meet(lat, n_max),
        TheoremId::FinMeet => check_fin_meet(lat, n_max),
        TheoremId::Quot => check_quot(lat, n_max),
        TheoremId::Loc => check_loc(lat, n_max),
        TheoremId::PrinEq => check_prin_eq(lat, n_max),
        TheoremId::Prod1 => check_prod1(lat, n_max),
        TheoremId::ProdK => check_prodk(lat, n_max),
        TheoremId::SprinEq => check_sprin_eq(lat, n_max),
        TheoremId::Suff => check_suff(lat, n_max),
    }
}

/// Runs the whole catalog; reports come back in catalog order.
pub fn run_all(lat: &MultLattice, n_max: usize) -> Vec<TheoremReport> {
    let mut reports: Vec<TheoremReport> =
        CATALOG.par_iter().map(|&id| run_check(lat, id, n_max)).collect();
    reports.sort_by_key(|r| r.id);
    reports
}

fn check_rel(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    let abs_max = n_max.min(ABSORBING_N_CAP);
    for q in lat.proper_elems() {
        let prime = is_prime(lat, q).unwrap().holds();
        let wprime = is_weakly_prime(lat, q).unwrap().holds();
        let qs: Vec<bool> = (1..=n_max).map(|n| quasi(lat, q, n)).collect();
        let wqs: Vec<bool> = (1..=n_max).map(|n| wquasi(lat, q, n)).collect();
        ctx.check(prime == qs[0], format!("q={}", lat.label(q)), "prime <=> quasi(1)");
        ctx.check(
            wprime == wqs[0],
            format!("q={}", lat.label(q)),
            "weakly prime <=> weakly quasi(1)",
        );
        for n in 1..=abs_max {
            let abs = is_n_absorbing(lat, q, n).unwrap().holds();
            ctx.check(
                !abs || qs[n - 1],
                format!("q={}, n={n}", lat.label(q)),
                "absorbing(n) => quasi(n)",
            );
        }
        for n in 1..=n_max {
            ctx.check(
                !qs[n - 1] || wqs[n - 1],
                format!("q={}, n={n}", lat.label(q)),
                "quasi(n) => weakly quasi(n)",
            );
            for m in n + 1..=n_max {
                ctx.check(
                    !qs[n - 1] || qs[m - 1],
                    format!("q={}, n={n}, m={m}", lat.label(q)),
                    "quasi(n) => quasi(m) for m >= n",
                );
                ctx.check(
                    !wqs[n - 1] || wqs[m - 1],
                    format!("q={}, n={n}, m={m}", lat.label(q)),
                    "weakly quasi(n) => weakly quasi(m) for m >= n",
                );
            }
        }
    }
    ctx.finish(TheoremId::Rel)
}

fn check_cor1(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    for q in lat.proper_elems() {
        let prime = is_prime(lat, q).unwrap().holds();
        let wprime = is_weakly_prime(lat, q).unwrap().holds();
        for n in 1..=n_max {
            ctx.check(
                !prime || quasi(lat, q, n),
                format!("q={}, n={n}", lat.label(q)),
                "prime => quasi(n) for all n >= 1",
            );
            ctx.check(
                !wprime || wquasi(lat, q, n),
                format!("q={}, n={n}", lat.label(q)),
                "weakly prime => weakly quasi(n) for all n >= 1",
            );
        }
        if n_max >= 2 && ABSORBING_N_CAP >= 2 {
            let abs2 = is_n_absorbing(lat, q, 2).unwrap().holds();
            let wabs2 = is_weakly_n_absorbing(lat, q, 2).unwrap().holds();
            for n in 2..=n_max {
                ctx.check(
                    !abs2 || quasi(lat, q, n),
                    format!("q={}, n={n}", lat.label(q)),
                    "2-absorbing => quasi(n) for all n >= 2",
                );
                ctx.check(
                    !wabs2 || wquasi(lat, q, n),
                    format!("q={}, n={n}", lat.label(q)),
                    "weakly 2-absorbing => weakly quasi(n) for all n >= 2",
                );
            }
        }
    }
    ctx.finish(TheoremId::Cor1)
}

fn check_res_char(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    for q in lat.proper_elems() {
        for n in 1..=n_max {
            let by_scan = quasi(lat, q, n);
            let by_residual = lat.elems().all(|a| {
                let an = lat.pow(a, n);
                lat.leq(an, q) || lat.residual(q, an) == lat.residual(q, lat.pow(a, n - 1))
            });
            ctx.check(
                by_scan == by_residual,
                format!("q={}, n={n}", lat.label(q)),
                "quasi(n) <=> (q:a^n)=(q:a^n-1) whenever a^n is not below q",
            );
        }
    }
    // Particular case at q = 0, phrased through annihilators.
    if lat.is_proper(lat.bottom()) {
        for n in 1..=n_max {
            let by_scan = quasi(lat, lat.bottom(), n);
            let by_ann = lat.elems().all(|a| {
                let an = lat.pow(a, n);
                an == lat.bottom() || lat.annihilator(an) == lat.annihilator(lat.pow(a, n - 1))
            });
            ctx.check(
                by_scan == by_ann,
                format!("q={}, n={n}", lat.label(lat.bottom())),
                "quasi(n) at 0 <=> a^n = 0 or ann(a^n)=ann(a^n-1)",
            );
        }
    }
    ctx.finish(TheoremId::ResChar)
}

fn check_ann_zero(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    for q in lat.proper_elems() {
        for n in 1..=n_max {
            if !wquasi(lat, q, n) {
                continue;
            }
            for w in find_quasi_n_zeros(lat, q, n).unwrap() {
                let ZeroWitness::QuasiN { a, b, .. } = w else { unreachable!() };
                let ok = lat.mul(lat.pow(a, n), q) == lat.bottom()
                    && lat.mul(lat.pow(b, n), q) == lat.bottom();
                ctx.check(
                    ok,
                    format!("q={}, n={n}, (a,b)=({},{})", ctx.lab(q), ctx.lab(a), ctx.lab(b)),
                    "quasi n-zero (a,b) of q forces a^n and b^n into ann(q)",
                );
            }
        }
    }
    ctx.finish(TheoremId::AnnZero)
}

/// Cap on the family size for exhaustive subset enumeration.
const MEET_FAMILY_CAP: usize = 14;

fn nonempty_subsets(items: &[Elem]) -> Vec<Vec<Elem>> {
    let k = items.len().min(MEET_FAMILY_CAP);
    (1u32..(1 << k))
        .map(|mask| {
            (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| items[i]).collect()
        })
        .collect()
}

fn check_prime_meet(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    let m_hi = n_max.max(2);
    let primes = lat.primes();
    for family in nonempty_subsets(&primes) {
        let meet = lat.meet_all(family.iter().copied());
        for m in 2..=m_hi {
            ctx.check(
                quasi(lat, meet, m),
                format!(
                    "primes={{{}}}, m={m}",
                    family.iter().map(|&p| ctx.lab(p)).collect::<Vec<_>>().join(",")
                ),
                "meet of a prime family is quasi m-absorbing for all m >= 2",
            );
        }
    }
    let wprimes: Vec<Elem> = lat
        .proper_elems()
        .filter(|&p| is_weakly_prime(lat, p).unwrap().holds())
        .collect();
    for family in nonempty_subsets(&wprimes) {
        let meet = lat.meet_all(family.iter().copied());
        for m in 2..=m_hi {
            ctx.check(
                wquasi(lat, meet, m),
                format!(
                    "weakly primes={{{}}}, m={m}",
                    family.iter().map(|&p| ctx.lab(p)).collect::<Vec<_>>().join(",")
                ),
                "meet of a weakly prime family is weakly quasi m-absorbing for all m >= 2",
            );
        }
    }
    ctx.finish(TheoremId::PrimeMeet)
}

fn check_rad_nil_jac(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    let m_hi = n_max.max(2);
    let mut targets: Vec<(String, Elem)> = lat
        .proper_elems()
        .map(|q| (format!("sqrt({})", lat.label(q)), lat.radical(q)))
        .collect();
    targets.push(("Nil(L)".to_string(), lat.nilradical()));
    targets.push(("Jac(L)".to_string(), lat.jacobson()));
    for (what, r) in targets {
        if !lat.is_proper(r) {
            continue;
        }
        for m in 2..=m_hi {
            ctx.check(
                quasi(lat, r, m),
                format!("{what}={}, m={m}", ctx.lab(r)),
                "radicals, Nil(L) and Jac(L) are quasi m-absorbing for all m >= 2",
            );
        }
    }
    ctx.finish(TheoremId::RadNilJac)
}

fn check_tot_meet(lat: &MultLattice, n_max: usize) -> TheoremReport {
    if !lattice_flags(lat).totally_ordered {
        return skipped(TheoremId::TotMeet, lat, "hypothesis fails: not totally ordered");
    }
    let mut ctx = Ctx::new(lat, n_max);
    for m in 1..=n_max {
        let qs: Vec<Elem> = lat.proper_elems().filter(|&q| quasi(lat, q, m)).collect();
        for &q1 in &qs {
            for &q2 in &qs {
                ctx.check(
                    quasi(lat, lat.meet(q1, q2), m),
                    format!("q1={}, q2={}, m={m}", ctx.lab(q1), ctx.lab(q2)),
                    "meet of quasi m-absorbing elements stays quasi m-absorbing on a chain",
                );
            }
        }
        let wqs: Vec<Elem> = lat.proper_elems().filter(|&q| wquasi(lat, q, m)).collect();
        for &q1 in &wqs {
            for &q2 in &wqs {
                ctx.check(
                    wquasi(lat, lat.meet(q1, q2), m),
                    format!("q1={}, q2={}, m={m}", ctx.lab(q1), ctx.lab(q2)),
                    "meet of weakly quasi m-absorbing elements stays weakly quasi m-absorbing on a chain",
                );
            }
        }
    }
    let mut report = ctx.finish(TheoremId::TotMeet);
    report.note =
        Some("trivial at finite scale: a meet over a finite chain equals a member".to_string());
    report
}

fn check_fin_meet(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    let proper: Vec<Elem> = lat.proper_elems().collect();
    for &q1 in &proper {
        let Some(m1) = min_degree(lat, q1, n_max, false) else { continue };
        for &q2 in &proper {
            let Some(m2) = min_degree(lat, q2, n_max, false) else { continue };
            let m = m1.max(m2) + 1;
            if m > QUASI_N_CAP {
                continue;
            }
            ctx.check(
                quasi(lat, lat.meet(q1, q2), m),
                format!("q1={} (m1={m1}), q2={} (m2={m2})", ctx.lab(q1), ctx.lab(q2)),
                "meet of quasi m_i-absorbing elements is quasi (max m_i + 1)-absorbing",
            );
        }
    }
    for &q1 in &proper {
        let Some(m1) = min_degree(lat, q1, n_max, true) else { continue };
        for &q2 in &proper {
            let Some(m2) = min_degree(lat, q2, n_max, true) else { continue };
            let m = m1.max(m2) + 1;
            if m > QUASI_N_CAP {
                continue;
            }
            ctx.check(
                wquasi(lat, lat.meet(q1, q2), m),
                format!("q1={} (m1={m1}), q2={} (m2={m2})", ctx.lab(q1), ctx.lab(q2)),
                "meet of weakly quasi m_i-absorbing elements is weakly quasi (max m_i + 1)-absorbing",
            );
        }
    }
    ctx.finish(TheoremId::FinMeet)
}

fn check_quot(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    for x in lat.proper_elems() {
        let quot = match quotient(lat, x) {
            Ok(q) => q,
            Err(e) => {
                ctx.violations.push(Violation {
                    assignment: format!("x={}", ctx.lab(x)),
                    clause: format!("quotient construction failed: {e}"),
                });
                continue;
            }
        };
        for q in lat.proper_elems() {
            if !lat.leq(x, q) {
                continue;
            }
            let image = quot
                .elem_by_label(lat.label(q))
                .expect("q is in the interval [x,1]");
            for n in 1..=n_max {
                if quasi(lat, q, n) {
                    ctx.check(
                        quasi(&quot, image, n),
                        format!("x={}, q={}, n={n}", ctx.lab(x), ctx.lab(q)),
                        "quasi n-absorbing q stays quasi n-absorbing in L/x",
                    );
                }
                if wquasi(lat, q, n) {
                    ctx.check(
                        wquasi(&quot, image, n),
                        format!("x={}, q={}, n={n}", ctx.lab(x), ctx.lab(q)),
                        "weakly quasi n-absorbing q stays weakly quasi n-absorbing in L/x",
                    );
                }
            }
        }
    }
    ctx.finish(TheoremId::Quot)
}

fn check_loc(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let maximals = lat.maximal_elems();
    if maximals.is_empty() {
        return skipped(TheoremId::Loc, lat, "hypothesis fails: no maximal element");
    }
    let mut ctx = Ctx::new(lat, n_max);
    for m in maximals {
        let s: Vec<Elem> = lat.elems().filter(|&x| !lat.leq(x, m)).collect();
        let loc = match localize_at_prime(lat, m) {
            Ok(l) => l,
            Err(e) => {
                ctx.violations.push(Violation {
                    assignment: format!("m={}", ctx.lab(m)),
                    clause: format!("localization construction failed: {e}"),
                });
                continue;
            }
        };
        for q in lat.proper_elems() {
            let image = localized_image(lat, &loc, q, &s);
            if !loc.is_proper(image) {
                // q collapses to 1 in L_m; the claim is about proper images.
                continue;
            }
            for n in 1..=n_max {
                if quasi(lat, q, n) {
                    ctx.check(
                        quasi(&loc, image, n),
                        format!("m={}, q={}, n={n}", ctx.lab(m), ctx.lab(q)),
                        "quasi n-absorbing q localizes to a quasi n-absorbing q_m",
                    );
                }
                if wquasi(lat, q, n) {
                    ctx.check(
                        wquasi(&loc, image, n),
                        format!("m={}, q={}, n={n}", ctx.lab(m), ctx.lab(q)),
                        "weakly quasi n-absorbing q localizes to a weakly quasi n-absorbing q_m",
                    );
                }
            }
        }
    }
    ctx.finish(TheoremId::Loc)
}

fn exists_coeff(lat: &MultLattice, target: Elem, base: Elem, exact: bool) -> bool {
    lat.elems().any(|c| {
        let cb = lat.mul(c, base);
        if exact {
            target == cb
        } else {
            lat.leq(target, cb)
        }
    })
}

fn check_prin_eq(lat: &MultLattice, n_max: usize) -> TheoremReport {
    if !lattice_flags(lat).principal_element_lattice {
        return skipped(TheoremId::PrinEq, lat, "hypothesis fails: not a principal element lattice");
    }
    let mut ctx = Ctx::new(lat, n_max);
    let tuple_max = n_max.min(ABSORBING_N_CAP);
    for n in 1..=tuple_max {
        let s1 = lat.proper_elems().all(|q| quasi(lat, q, n));
        let s2 = lat.elems().all(|a| {
            lat.elems().all(|b| {
                let anb = lat.mul(lat.pow(a, n), b);
                exists_coeff(lat, lat.pow(a, n), anb, true)
                    || exists_coeff(lat, lat.mul(lat.pow(a, n - 1), b), anb, true)
            })
        });
        let s3 = all_meet_tuples(lat, n, |meet_first, last, prod| {
            exists_coeff(lat, lat.pow(meet_first, n), prod, false)
                || exists_coeff(lat, lat.mul(lat.pow(meet_first, n - 1), last), prod, false)
        });
        ctx.check(
            s1 == s2 && s2 == s3,
            format!("n={n}: (1)={s1}, (2)={s2}, (3)={s3}"),
            "principal element lattice: all-quasi <=> coefficient form <=> tuple form",
        );
    }
    ctx.finish(TheoremId::PrinEq)
}

fn check_sprin_eq(lat: &MultLattice, n_max: usize) -> TheoremReport {
    if !lattice_flags(lat).principal_element_lattice {
        return skipped(
            TheoremId::SprinEq,
            lat,
            "hypothesis fails: not a principal element lattice",
        );
    }
    let mut ctx = Ctx::new(lat, n_max);
    let tuple_max = n_max.min(ABSORBING_N_CAP);
    for n in 1..=tuple_max {
        let s1 = lat
            .proper_elems()
            .all(|q| is_strongly_quasi_n_absorbing(lat, q, n).unwrap().holds());
        let s2 = lat.elems().all(|a| {
            lat.elems().all(|b| {
                let an = lat.pow(a, n);
                let anb = lat.mul(an, b);
                an == anb || lat.mul(lat.pow(a, n - 1), b) == anb
            })
        });
        let s3 = all_meet_tuples(lat, n, |meet_first, last, prod| {
            lat.leq(lat.pow(meet_first, n), prod)
                || lat.leq(lat.mul(lat.pow(meet_first, n - 1), last), prod)
        });
        ctx.check(
            s1 == s2 && s2 == s3,
            format!("n={n}: (1)={s1}, (2)={s2}, (3)={s3}"),
            "principal element lattice: all-strongly-quasi <=> product form <=> tuple form",
        );
    }
    ctx.finish(TheoremId::SprinEq)
}

/// Quantifies over (n+1)-tuples, handing the callback the meet of the first
/// `n` entries, the last entry, and the full product. The first `n` slots are
/// symmetric, so they run over multisets; the distinguished last slot runs
/// over the whole carrier.
fn all_meet_tuples(
    lat: &MultLattice,
    n: usize,
    mut pred: impl FnMut(Elem, Elem, Elem) -> bool,
) -> bool {
    let mut ok = true;
    for_each_multiset(lat.size(), n, |firsts| {
        let meet_first = lat.meet_all(firsts.iter().map(|&i| Elem(i)));
        let prod_first =
            firsts.iter().fold(lat.top(), |acc, &i| lat.mul(acc, Elem(i)));
        for last in lat.elems() {
            if !pred(meet_first, last, lat.mul(prod_first, last)) {
                ok = false;
                return false;
            }
        }
        true
    });
    ok
}

fn check_prod1(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let factors = lat.factors();
    if factors.len() != 2 {
        return skipped(TheoremId::Prod1, lat, "hypothesis fails: not a two-factor product");
    }
    let mut ctx = Ctx::new(lat, n_max);
    let (l1, l2) = (&factors[0], &factors[1]);
    for q1 in l1.proper_elems() {
        let lifted = product_elem(lat, &[q1, l2.top()]);
        for n in 1..=n_max {
            ctx.check(
                quasi(l1, q1, n) == quasi(lat, lifted, n),
                format!("q1={}, n={n}", l1.label(q1)),
                "q1 quasi n-absorbing in L1 <=> (q1, 1) quasi n-absorbing in L1 x L2",
            );
        }
    }
    for q2 in l2.proper_elems() {
        let lifted = product_elem(lat, &[l1.top(), q2]);
        for n in 1..=n_max {
            ctx.check(
                quasi(l2, q2, n) == quasi(lat, lifted, n),
                format!("q2={}, n={n}", l2.label(q2)),
                "q2 quasi n-absorbing in L2 <=> (1, q2) quasi n-absorbing in L1 x L2",
            );
        }
    }
    ctx.finish(TheoremId::Prod1)
}

fn check_prodk(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let factors = lat.factors().to_vec();
    if factors.len() < 2 {
        return skipped(TheoremId::ProdK, lat, "hypothesis fails: not a product");
    }
    let mut ctx = Ctx::new(lat, n_max);
    // Every tuple of proper components with known minimal quasi degrees.
    let per_factor: Vec<Vec<(Elem, usize)>> = factors
        .iter()
        .map(|f| {
            f.proper_elems()
                .filter_map(|q| min_degree(f, q, n_max, false).map(|d| (q, d)))
                .collect()
        })
        .collect();
    if per_factor.iter().any(|v| v.is_empty()) {
        // some factor has no element with a degree inside the cap
        return ctx.finish(TheoremId::ProdK);
    }
    let mut tuple: Vec<usize> = vec![0; factors.len()];
    'outer: loop {
        let parts: Vec<(Elem, usize)> =
            tuple.iter().enumerate().map(|(j, &i)| per_factor[j][i]).collect();
        let m = parts.iter().map(|&(_, d)| d).max().unwrap() + 1;
        if m <= QUASI_N_CAP {
            let elem =
                product_elem(lat, &parts.iter().map(|&(q, _)| q).collect::<Vec<_>>());
            let assignment = parts
                .iter()
                .enumerate()
                .map(|(j, &(q, d))| format!("q{}={} (n{}={d})", j + 1, factors[j].label(q), j + 1))
                .collect::<Vec<_>>()
                .join(", ");
            ctx.check(
                quasi(lat, elem, m),
                assignment,
                "(q1,...,qk) is quasi (max n_i + 1)-absorbing in the product",
            );
        }
        // odometer over the per-factor candidate lists
        let mut j = factors.len();
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < per_factor[j].len() {
                break;
            }
            tuple[j] = 0;
        }
    }
    ctx.finish(TheoremId::ProdK)
}

fn check_suff(lat: &MultLattice, n_max: usize) -> TheoremReport {
    let mut ctx = Ctx::new(lat, n_max);
    let tuple_max = n_max.min(ABSORBING_N_CAP);
    for q in lat.proper_elems() {
        for n in 1..=n_max {
            let strongly = is_strongly_quasi_n_absorbing(lat, q, n).unwrap().holds();
            let h1 = lat.elems().all(|a| {
                lat.elems().all(|b| {
                    let an = lat.pow(a, n);
                    !(lat.leq(lat.mul(an, b), q) && lat.leq(q, lat.meet(a, b)))
                        || lat.leq(an, q)
                        || lat.leq(lat.mul(lat.pow(a, n - 1), b), q)
                })
            });
            ctx.check(
                !h1 || strongly,
                format!("q={}, n={n}", ctx.lab(q)),
                "sandwich pair condition implies strongly quasi n-absorbing",
            );
            if n <= tuple_max {
                let h2 = all_sandwich_tuples(lat, q, n);
                ctx.check(
                    !h2 || strongly,
                    format!("q={}, n={n}", ctx.lab(q)),
                    "sandwich tuple condition implies strongly quasi n-absorbing",
                );
            }
        }
    }
    ctx.finish(TheoremId::Suff)
}

/// Part 2 hypothesis of the sufficiency theorem: every (n+1)-tuple whose
/// product is below `q` and whose meet is above `q` drops one factor.
fn all_sandwich_tuples(lat: &MultLattice, q: Elem, n: usize) -> bool {
    let mut ok = true;
    for_each_multiset(lat.size(), n + 1, |tuple| {
        let len = tuple.len();
        let mut prefix = vec![lat.top(); len + 1];
        for i in 0..len {
            prefix[i + 1] = lat.mul(prefix[i], Elem(tuple[i]));
        }
        let total = prefix[len];
        let meet = lat.meet_all(tuple.iter().map(|&i| Elem(i)));
        if !(lat.leq(total, q) && lat.leq(q, meet)) {
            return true;
        }
        let mut suffix = vec![lat.top(); len + 1];
        for i in (0..len).rev() {
            suffix[i] = lat.mul(suffix[i + 1], Elem(tuple[i]));
        }
        if (0..len).any(|i| lat.leq(lat.mul(prefix[i], suffix[i + 1]), q)) {
            true
        } else {
            ok = false;
            false
        }
    });
    ok
}
