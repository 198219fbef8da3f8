//! Concrete lattice families: divisor lattices of `Z_n`, idempotent chains,
//! direct products, quotient intervals `[x,1]`, and localizations at a
//! multiplicatively closed set.
//!
//! Every constructor validates its output before returning it; a validation
//! failure here is a bug, not a user error, and surfaces as
//! [`ConstructError::Invalid`].

use thiserror::Error;

use crate::lattice::{Elem, MultLattice, StructuralError, ValidationReport};

/// Default bound on carrier sizes, overridable via `MLAT_SIZE_CAP` at the CLI.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("carrier would have {size} elements, above the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("divisor lattice needs n >= 1, got {0}")]
    BadModulus(i64),
    #[error("idempotent chain needs k >= 2, got {0}")]
    BadChainLength(usize),
    #[error("product needs at least 2 factors, got {0}")]
    TooFewFactors(usize),
    #[error("cannot take the quotient at top")]
    QuotientAtTop,
    #[error("localization set is empty")]
    EmptySet,
    #[error("localization set is not multiplicatively closed: {a} * {b} = {ab} is outside it")]
    NotClosed { a: String, b: String, ab: String },
    #[error("{0} is not a prime element")]
    NotPrime(String),
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("constructed lattice fails validation: {0}")]
    Invalid(ValidationReport),
}

fn validated(lat: MultLattice) -> Result<MultLattice, ConstructError> {
    lat.validated().map_err(ConstructError::Invalid)
}

/// The lattice of ideals of `Z_n`: carrier = divisors of `n` labeled by
/// value, `d ≤ e` iff `e | d`, join = gcd, meet = lcm, bottom = `n`,
/// top = `1`, and `mul(d,e) = gcd(d·e, n)`.
pub fn divisor_lattice(n: u64) -> Result<MultLattice, ConstructError> {
    divisor_lattice_capped(n, DEFAULT_SIZE_CAP)
}

pub fn divisor_lattice_capped(n: u64, cap: usize) -> Result<MultLattice, ConstructError> {
    if n == 0 {
        return Err(ConstructError::BadModulus(0));
    }
    let divs = divisors(n);
    let size = divs.len();
    if size > cap {
        return Err(ConstructError::SizeCap { size, cap });
    }
    let labels: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
    let mut leq = vec![false; size * size];
    for (i, &d) in divs.iter().enumerate() {
        for (j, &e) in divs.iter().enumerate() {
            leq[i * size + j] = d % e == 0;
        }
    }
    let index_of = |v: u64| divs.iter().position(|&d| d == v).unwrap();
    let mut mul = vec![0usize; size * size];
    for (i, &d) in divs.iter().enumerate() {
        for (j, &e) in divs.iter().enumerate() {
            mul[i * size + j] = index_of(gcd(d * e, n));
        }
    }
    let bottom = index_of(n);
    let top = index_of(1);
    let lat = MultLattice::from_tables(format!("D({n})"), labels, leq, mul, bottom, top)?;
    validated(lat)
}

/// A totally ordered lattice `0 < a1 < … < 1` of `k` elements whose product
/// is the meet. Chains with interior elements are not principal element
/// lattices, which exercises the hypotheses of the principal-element
/// theorems.
pub fn idempotent_chain(k: usize) -> Result<MultLattice, ConstructError> {
    if k < 2 {
        return Err(ConstructError::BadChainLength(k));
    }
    let labels: Vec<String> = (0..k)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == k - 1 {
                "1".to_string()
            } else {
                format!("a{i}")
            }
        })
        .collect();
    let mut leq = vec![false; k * k];
    let mut mul = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = i <= j;
            mul[i * k + j] = i.min(j);
        }
    }
    let lat = MultLattice::from_tables(format!("chain({k})"), labels, leq, mul, 0, k - 1)?;
    validated(lat)
}

/// Direct product with componentwise order and product. Tuples are ordered
/// lexicographically by factor indices; labels are `(l1,l2,…)` with nested
/// tuple labels flattened left to right.
pub fn product(factors: &[MultLattice]) -> Result<MultLattice, ConstructError> {
    product_capped(factors, DEFAULT_SIZE_CAP)
}

pub fn product_capped(factors: &[MultLattice], cap: usize) -> Result<MultLattice, ConstructError> {
    if factors.len() < 2 {
        return Err(ConstructError::TooFewFactors(factors.len()));
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
        .filter(|&s| s <= cap)
        .ok_or(ConstructError::SizeCap {
            size: factors.iter().map(|f| f.size()).product(),
            cap,
        })?;

    let k = factors.len();
    // tuple i -> (i / stride[j]) % size_j for factor j
    let mut strides = vec![1usize; k];
    for j in (0..k - 1).rev() {
        strides[j] = strides[j + 1] * factors[j + 1].size();
    }
    let component = |i: usize, j: usize| (i / strides[j]) % factors[j].size();

    let labels: Vec<String> = (0..size)
        .map(|i| {
            let parts: Vec<&str> = (0..k)
                .map(|j| {
                    let l = factors[j].label(Elem(component(i, j)));
                    l.trim_start_matches('(').trim_end_matches(')')
                })
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();

    let mut leq = vec![false; size * size];
    let mut mul = vec![0usize; size * size];
    for a in 0..size {
        for b in 0..size {
            leq[a * size + b] =
                (0..k).all(|j| factors[j].leq(Elem(component(a, j)), Elem(component(b, j))));
            mul[a * size + b] = (0..k)
                .map(|j| factors[j].mul(Elem(component(a, j)), Elem(component(b, j))).0 * strides[j])
                .sum();
        }
    }
    let bottom: usize = (0..k).map(|j| factors[j].bottom().0 * strides[j]).sum();
    let top: usize = (0..k).map(|j| factors[j].top().0 * strides[j]).sum();
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("x");
    let mut lat = MultLattice::from_tables(name, labels, leq, mul, bottom, top)?;
    lat.set_factors(factors.to_vec());
    validated(lat)
}

/// Index of the product-lattice element whose components are `parts`.
pub fn product_elem(lat: &MultLattice, parts: &[Elem]) -> Elem {
    let factors = lat.factors();
    assert_eq!(parts.len(), factors.len());
    let mut stride = 1;
    let mut index = 0;
    for j in (0..factors.len()).rev() {
        index += parts[j].0 * stride;
        stride *= factors[j].size();
    }
    Elem(index)
}

/// The quotient `L/x`: the interval `[x,1]` with product `ab ∨ x`.
pub fn quotient(lat: &MultLattice, x: Elem) -> Result<MultLattice, ConstructError> {
    if !lat.is_proper(x) {
        return Err(ConstructError::QuotientAtTop);
    }
    let carrier: Vec<Elem> = lat.elems().filter(|&y| lat.leq(x, y)).collect();
    sublattice(
        lat,
        &carrier,
        format!("{}/{}", lat.name(), lat.label(x)),
        |a, b| lat.join(lat.mul(a, b), x),
    )
}

/// `a_S`: the join of every element that lands below `a` when multiplied by
/// some member of `S`.
pub fn saturate(lat: &MultLattice, a: Elem, s: &[Elem]) -> Elem {
    lat.join_all(
        lat.elems().filter(|&x| s.iter().any(|&m| lat.leq(lat.mul(x, m), a))),
    )
}

/// The localization `L_S = {a_S : a ∈ L}` at a nonempty multiplicatively
/// closed set, with product `a_S ∘ b_S = (a_S b_S)_S`. The carrier keeps the
/// representative elements of `L` in their original index order.
pub fn localize(lat: &MultLattice, s: &[Elem]) -> Result<MultLattice, ConstructError> {
    if s.is_empty() {
        return Err(ConstructError::EmptySet);
    }
    for &a in s {
        for &b in s {
            let ab = lat.mul(a, b);
            if !s.contains(&ab) {
                return Err(ConstructError::NotClosed {
                    a: lat.label(a).to_string(),
                    b: lat.label(b).to_string(),
                    ab: lat.label(ab).to_string(),
                });
            }
        }
    }
    let mut carrier: Vec<Elem> = Vec::new();
    for a in lat.elems() {
        let sat = saturate(lat, a, s);
        if !carrier.contains(&sat) {
            carrier.push(sat);
        }
    }
    carrier.sort();
    sublattice(lat, &carrier, format!("{}_S", lat.name()), |a, b| {
        saturate(lat, lat.mul(a, b), s)
    })
}

/// Localization at a prime: `L_p` with `S = {x : x ≰ p}`.
pub fn localize_at_prime(lat: &MultLattice, p: Elem) -> Result<MultLattice, ConstructError> {
    if !lat.is_prime_elem(p) {
        return Err(ConstructError::NotPrime(lat.label(p).to_string()));
    }
    let s: Vec<Elem> = lat.elems().filter(|&x| !lat.leq(x, p)).collect();
    let mut loc = localize(lat, &s)?;
    loc.set_name(format!("{}_{}", lat.name(), lat.label(p)));
    Ok(loc)
}

/// Image of `a` in a localization built by [`localize`] /
/// [`localize_at_prime`]: the carrier element labeled like `a_S`.
pub fn localized_image(lat: &MultLattice, loc: &MultLattice, a: Elem, s: &[Elem]) -> Elem {
    let sat = saturate(lat, a, s);
    loc.elem_by_label(lat.label(sat)).expect("saturation is in the localized carrier")
}

fn sublattice(
    lat: &MultLattice,
    carrier: &[Elem],
    name: String,
    mul_in_l: impl Fn(Elem, Elem) -> Elem,
) -> Result<MultLattice, ConstructError> {
    let size = carrier.len();
    let pos = |e: Elem| carrier.iter().position(|&c| c == e).unwrap();
    let labels: Vec<String> = carrier.iter().map(|&e| lat.label(e).to_string()).collect();
    let mut leq = vec![false; size * size];
    let mut mul = vec![0usize; size * size];
    for (i, &a) in carrier.iter().enumerate() {
        for (j, &b) in carrier.iter().enumerate() {
            leq[i * size + j] = lat.leq(a, b);
            mul[i * size + j] = pos(mul_in_l(a, b));
        }
    }
    let bottom = carrier
        .iter()
        .position(|&c| carrier.iter().all(|&d| lat.leq(c, d)))
        .expect("interval has a least element");
    let top = pos(lat.top());
    let sub = MultLattice::from_tables(name, labels, leq, mul, bottom, top)?;
    validated(sub)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
