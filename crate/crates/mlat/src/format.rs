//! The MLAT lattice file format: JSON, UTF-8, version field `"mlat": 1`.
//!
//! `leq` is stored as a list of `[i, j]` pairs meaning element `i ≤ j`;
//! reflexive pairs may be omitted and the transitive closure is applied on
//! read. The canonical form written by [`to_file`] lists elements in carrier
//! order, sorts the non-reflexive `leq` pairs lexicographically, and uses LF
//! line endings, so canonical files round-trip byte-identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Elem, MultLattice, StructuralError, ValidationReport};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("unsupported mlat version {0}")]
    Version(u64),
    #[error("leq pair [{i}, {j}] out of range for {size} elements")]
    LeqRange { i: usize, j: usize, size: usize },
    #[error("mul table has {got} rows, expected {want}")]
    MulRows { got: usize, want: usize },
    #[error("mul row {row} has {got} entries, expected {want}")]
    MulRowLen { row: usize, got: usize, want: usize },
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("lattice fails validation: {0}")]
    Invalid(ValidationReport),
}

#[derive(Serialize, Deserialize)]
struct MlatFile {
    mlat: u64,
    name: String,
    elements: Vec<String>,
    bottom: usize,
    top: usize,
    leq: Vec<(usize, usize)>,
    mul: Vec<Vec<usize>>,
}

/// Parses, structurally checks, and validates a lattice file.
pub fn from_file(bytes: &[u8]) -> Result<MultLattice, FormatError> {
    let file: MlatFile = serde_json::from_slice(bytes).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if file.mlat != 1 {
        return Err(FormatError::Version(file.mlat));
    }
    let size = file.elements.len();
    let mut leq = vec![false; size * size];
    for i in 0..size {
        leq[i * size + i] = true;
    }
    for &(i, j) in &file.leq {
        if i >= size || j >= size {
            return Err(FormatError::LeqRange { i, j, size });
        }
        leq[i * size + j] = true;
    }
    // transitive closure
    for k in 0..size {
        for i in 0..size {
            if leq[i * size + k] {
                for j in 0..size {
                    if leq[k * size + j] {
                        leq[i * size + j] = true;
                    }
                }
            }
        }
    }
    if file.mul.len() != size {
        return Err(FormatError::MulRows { got: file.mul.len(), want: size });
    }
    let mut mul = Vec::with_capacity(size * size);
    for (row, r) in file.mul.iter().enumerate() {
        if r.len() != size {
            return Err(FormatError::MulRowLen { row, got: r.len(), want: size });
        }
        mul.extend_from_slice(r);
    }
    let lat = MultLattice::from_tables(file.name, file.elements, leq, mul, file.bottom, file.top)?;
    lat.validated().map_err(FormatError::Invalid)
}

/// Serializes to the canonical MLAT form.
pub fn to_file(lat: &MultLattice) -> Vec<u8> {
    let size = lat.size();
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if i != j && lat.leq(Elem(i), Elem(j)) {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_unstable();
    let mul = (0..size)
        .map(|i| (0..size).map(|j| lat.mul(Elem(i), Elem(j)).0).collect())
        .collect();
    let file = MlatFile {
        mlat: 1,
        name: lat.name().to_string(),
        elements: lat.labels().to_vec(),
        bottom: lat.bottom().0,
        top: lat.top().0,
        leq: pairs,
        mul,
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("serialization cannot fail");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{divisor_lattice, idempotent_chain};

    #[test]
    fn round_trip_is_byte_identical() {
        for lat in [divisor_lattice(12).unwrap(), divisor_lattice(30).unwrap(), idempotent_chain(4).unwrap()] {
            let bytes = to_file(&lat);
            assert_eq!(bytes.last(), Some(&b'\n'));
            let back = from_file(&bytes).unwrap();
            assert_eq!(to_file(&back), bytes);
            assert_eq!(back.size(), lat.size());
            for a in lat.elems() {
                for b in lat.elems() {
                    assert_eq!(lat.leq(a, b), back.leq(a, b));
                    assert_eq!(lat.mul(a, b), back.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn transitive_closure_on_read() {
        // chain 0 < 1 < 2 given only as covers
        let text = br#"{
            "mlat": 1, "name": "c", "elements": ["0", "1", "2"],
            "bottom": 0, "top": 2,
            "leq": [[0, 1], [1, 2]],
            "mul": [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
        }"#;
        let lat = from_file(text).unwrap();
        assert!(lat.leq(Elem(0), Elem(2)));
        assert!(lat.validate().ok);
    }

    #[test]
    fn mutated_mul_is_rejected_with_witness() {
        let lat = divisor_lattice(12).unwrap();
        let two = lat.elem_by_label("2").unwrap();
        let three = lat.elem_by_label("3").unwrap();
        // overwrite mul(2,3) = 6 with top, breaking commutativity against the
        // untouched mul(3,2) entry
        let mut doc: serde_json::Value = serde_json::from_slice(&to_file(&lat)).unwrap();
        doc["mul"][two.0][three.0] = serde_json::json!(lat.top().0);
        let mutated = serde_json::to_vec(&doc).unwrap();
        match from_file(&mutated) {
            Err(FormatError::Invalid(report)) => {
                assert!(!report.ok);
                assert!(!report.failures.is_empty());
                assert!(report.failures.iter().all(|f| !f.witness.is_empty()));
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn parse_error_carries_position() {
        match from_file(b"{\n  \"mlat\": 1,") {
            Err(FormatError::Parse { line, .. }) => assert!(line >= 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(from_file(b"not json at all").is_err());
        assert!(from_file(b"").is_err());
    }

    #[test]
    fn wrong_version_is_rejected() {
        let lat = divisor_lattice(4).unwrap();
        let text = String::from_utf8(to_file(&lat)).unwrap();
        let v2 = text.replacen("\"mlat\": 1", "\"mlat\": 2", 1);
        assert!(matches!(from_file(v2.as_bytes()), Err(FormatError::Version(2))));
    }

    #[test]
    fn out_of_range_tables_are_rejected() {
        let leq_bad = br#"{
            "mlat": 1, "name": "c", "elements": ["0", "1"],
            "bottom": 0, "top": 1,
            "leq": [[0, 5]],
            "mul": [[0, 0], [0, 1]]
        }"#;
        assert!(matches!(from_file(leq_bad), Err(FormatError::LeqRange { .. })));
        let mul_short = br#"{
            "mlat": 1, "name": "c", "elements": ["0", "1"],
            "bottom": 0, "top": 1,
            "leq": [[0, 1]],
            "mul": [[0, 0]]
        }"#;
        assert!(matches!(from_file(mul_short), Err(FormatError::MulRows { .. })));
        let row_short = br#"{
            "mlat": 1, "name": "c", "elements": ["0", "1"],
            "bottom": 0, "top": 1,
            "leq": [[0, 1]],
            "mul": [[0, 0], [0]]
        }"#;
        assert!(matches!(from_file(row_short), Err(FormatError::MulRowLen { .. })));
    }
}
