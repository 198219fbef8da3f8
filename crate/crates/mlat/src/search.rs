//! Family search: scan generated lattice families for elements satisfying a
//! predicate expression, with greedy shrinking of hits.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{divisor_lattice_capped, idempotent_chain, ConstructError, DEFAULT_SIZE_CAP};
use crate::expr::{Evaluator, PredicateExpr};
use crate::lattice::MultLattice;
use crate::predicates::PredicateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Divisor,
    Chain,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Divisor => write!(f, "divisor"),
            FamilyKind::Chain => write!(f, "chain"),
        }
    }
}

/// A generated lattice family scanned in ascending parameter order.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub min: u64,
    pub max: u64,
    pub size_cap: usize,
}

impl FamilySpec {
    pub fn divisor(min: u64, max: u64) -> Self {
        FamilySpec { kind: FamilyKind::Divisor, min, max, size_cap: DEFAULT_SIZE_CAP }
    }

    pub fn chain(min: u64, max: u64) -> Self {
        FamilySpec { kind: FamilyKind::Chain, min, max, size_cap: DEFAULT_SIZE_CAP }
    }

    fn build(&self, param: u64) -> Result<MultLattice, ConstructError> {
        match self.kind {
            FamilyKind::Divisor => divisor_lattice_capped(param, self.size_cap),
            FamilyKind::Chain => idempotent_chain(param as usize),
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Predicate(#[from] PredicateError),
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub family: FamilyKind,
    pub param: u64,
    pub element: String,
    /// Atom-by-atom outcomes at the reported element.
    pub atoms: BTreeMap<String, bool>,
    pub shrunk: bool,
}

fn hits_in(
    spec: &FamilySpec,
    expr: &PredicateExpr,
    param: u64,
) -> Result<Vec<SearchResult>, SearchError> {
    let lat = spec.build(param)?;
    let mut ev = Evaluator::new(&lat);
    let mut out = Vec::new();
    for q in lat.proper_elems() {
        if ev.eval(expr, q)? {
            out.push(SearchResult {
                family: spec.kind,
                param,
                element: lat.label(q).to_string(),
                atoms: atom_snippet(&mut ev, expr, q)?,
                shrunk: false,
            });
        }
    }
    Ok(out)
}

fn atom_snippet(
    ev: &mut Evaluator<'_>,
    expr: &PredicateExpr,
    q: crate::lattice::Elem,
) -> Result<BTreeMap<String, bool>, PredicateError> {
    expr.atoms()
        .into_iter()
        .map(|a| Ok((a.to_string(), ev.atom(a, q)?)))
        .collect()
}

/// Scans the family in ascending parameter order and returns the first
/// `limit` hits. Instances are evaluated in parallel; the merge restores
/// parameter order, so output does not depend on the worker count. Every
/// returned hit is re-verified with a fresh evaluation.
pub fn search(
    spec: &FamilySpec,
    expr: &PredicateExpr,
    limit: usize,
) -> Result<Vec<SearchResult>, SearchError> {
    let params: Vec<u64> = (spec.min..=spec.max).collect();
    let per_param: Vec<Result<Vec<SearchResult>, SearchError>> =
        params.par_iter().map(|&p| hits_in(spec, expr, p)).collect();
    let mut out = Vec::new();
    for hits in per_param {
        for hit in hits? {
            if out.len() == limit {
                return Ok(out);
            }
            debug_assert!(reverify(spec, expr, &hit)?);
            out.push(hit);
        }
        if out.len() == limit {
            break;
        }
    }
    Ok(out)
}

fn reverify(
    spec: &FamilySpec,
    expr: &PredicateExpr,
    hit: &SearchResult,
) -> Result<bool, SearchError> {
    let lat = spec.build(hit.param)?;
    let q = lat.elem_by_label(&hit.element).expect("reported element exists");
    Ok(Evaluator::new(&lat).eval(expr, q)?)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether the element labeled like the hit still satisfies the predicate in
/// the instance at `param`.
fn still_satisfies(
    spec: &FamilySpec,
    expr: &PredicateExpr,
    param: u64,
    element: &str,
) -> Result<bool, SearchError> {
    let lat = spec.build(param)?;
    match lat.elem_by_label(element) {
        Some(q) if lat.is_proper(q) => Ok(Evaluator::new(&lat).eval(expr, q)?),
        _ => Ok(false),
    }
}

/// Greedily lowers the family parameter while the hit's element survives and
/// keeps satisfying the predicate; returns a local minimum, re-verified.
pub fn shrink(hit: &SearchResult, spec: &FamilySpec, expr: &PredicateExpr) -> Result<SearchResult, SearchError> {
    let mut param = hit.param;
    let mut shrunk = false;
    match hit.family {
        FamilyKind::Divisor => {
            let Ok(value) = hit.element.parse::<u64>() else {
                return Ok(hit.clone());
            };
            loop {
                let step = prime_factors(param).into_iter().find_map(|p| {
                    let cand = param / p;
                    if cand < 2 || cand % value != 0 {
                        return None;
                    }
                    match still_satisfies(spec, expr, cand, &hit.element) {
                        Ok(true) => Some(Ok(cand)),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    }
                });
                match step {
                    Some(Ok(cand)) => {
                        param = cand;
                        shrunk = true;
                    }
                    Some(Err(e)) => return Err(e),
                    None => break,
                }
            }
        }
        FamilyKind::Chain => {
            while param > 2 && still_satisfies(spec, expr, param - 1, &hit.element)? {
                param -= 1;
                shrunk = true;
            }
        }
    }
    let lat = spec.build(param)?;
    let q = lat.elem_by_label(&hit.element).expect("shrunk element exists");
    let mut ev = Evaluator::new(&lat);
    assert!(ev.eval(expr, q)?, "shrinking must preserve the predicate");
    Ok(SearchResult {
        family: hit.family,
        param,
        element: hit.element.clone(),
        atoms: atom_snippet(&mut ev, expr, q)?,
        shrunk,
    })
}
