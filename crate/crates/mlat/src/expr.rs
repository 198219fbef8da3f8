//! The predicate expression language of the explorer and CLI.
//!
//! Grammar (case-insensitive atoms, precedence `not` > `and` > `or`):
//!
//! ```text
//! expr   := term ('or' term)*
//! term   := factor ('and' factor)*
//! factor := 'not' factor | '(' expr ')' | atom
//! atom   := prime | weakly_prime | maximal | principal
//!         | absorbing(n) | weakly_absorbing(n)
//!         | quasi(n) | weakly_quasi(n) | strongly_quasi(n)
//! ```

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Elem, MultLattice};
use crate::predicates::{
    is_maximal, is_n_absorbing, is_prime, is_principal_element, is_quasi_n_absorbing,
    is_strongly_quasi_n_absorbing, is_weakly_n_absorbing, is_weakly_prime,
    is_weakly_quasi_n_absorbing, PredicateError, ABSORBING_N_CAP, QUASI_N_CAP,
};

pub const MAX_EXPR_DEPTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Prime,
    WeaklyPrime,
    Maximal,
    Principal,
    Absorbing(usize),
    WeaklyAbsorbing(usize),
    Quasi(usize),
    WeaklyQuasi(usize),
    StronglyQuasi(usize),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Prime => write!(f, "prime"),
            Atom::WeaklyPrime => write!(f, "weakly_prime"),
            Atom::Maximal => write!(f, "maximal"),
            Atom::Principal => write!(f, "principal"),
            Atom::Absorbing(n) => write!(f, "absorbing({n})"),
            Atom::WeaklyAbsorbing(n) => write!(f, "weakly_absorbing({n})"),
            Atom::Quasi(n) => write!(f, "quasi({n})"),
            Atom::WeaklyQuasi(n) => write!(f, "weakly_quasi({n})"),
            Atom::StronglyQuasi(n) => write!(f, "strongly_quasi({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateExpr {
    Atom(Atom),
    Not(Box<PredicateExpr>),
    And(Box<PredicateExpr>, Box<PredicateExpr>),
    Or(Box<PredicateExpr>, Box<PredicateExpr>),
}

impl PredicateExpr {
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            PredicateExpr::Atom(a) => {
                if !out.contains(a) {
                    out.push(*a);
                }
            }
            PredicateExpr::Not(e) => e.collect_atoms(out),
            PredicateExpr::And(l, r) | PredicateExpr::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for PredicateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateExpr::Atom(a) => write!(f, "{a}"),
            PredicateExpr::Not(e) => write!(f, "not {e}"),
            PredicateExpr::And(l, r) => write!(f, "({l} and {r})"),
            PredicateExpr::Or(l, r) => write!(f, "({l} or {r})"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" | "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown predicate {name:?} at offset {offset}")]
    UnknownAtom { offset: usize, name: String },
    #[error("{atom}({n}) at offset {offset}: n must be within 1..={cap}")]
    ArgOutOfRange { offset: usize, atom: String, n: usize, cap: usize },
    #[error("expression nested deeper than {MAX_EXPR_DEPTH} at offset {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownAtom { offset, .. }
            | ParseError::ArgOutOfRange { offset, .. }
            | ParseError::TooDeep { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Ident(String),
    Number(usize),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Number(n) => format!("number {n}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' {
            toks.push((i, Tok::LParen));
            i += 1;
        } else if c == b')' {
            toks.push((i, Tok::RParen));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: usize = text[start..i].parse().map_err(|_| ParseError::Syntax {
                offset: start,
                expected: vec!["number"],
                found: text[start..i].to_string(),
            })?;
            toks.push((start, Tok::Number(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((start, Tok::Ident(text[start..i].to_ascii_lowercase())));
        } else {
            return Err(ParseError::Syntax {
                offset: i,
                expected: vec!["predicate", "'('", "'not'"],
                found: {
                    // slice on the char boundary, not byte i+1
                    let ch = text[i..].chars().next().expect("in-bounds offset");
                    format!("{ch:?}")
                },
            });
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        match self.peek() {
            Some((off, tok)) => {
                ParseError::Syntax { offset: *off, expected, found: tok.describe() }
            }
            None => ParseError::Syntax {
                offset: self.end,
                expected,
                found: "end of input".to_string(),
            },
        }
    }

    fn eat_ident(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some((_, Tok::Ident(s))) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, depth: usize) -> Result<PredicateExpr, ParseError> {
        let mut lhs = self.term(depth)?;
        while self.eat_ident("or") {
            let rhs = self.term(depth)?;
            lhs = PredicateExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self, depth: usize) -> Result<PredicateExpr, ParseError> {
        let mut lhs = self.factor(depth)?;
        while self.eat_ident("and") {
            let rhs = self.factor(depth)?;
            lhs = PredicateExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self, depth: usize) -> Result<PredicateExpr, ParseError> {
        if depth >= MAX_EXPR_DEPTH {
            let offset = self.peek().map(|&(o, _)| o).unwrap_or(self.end);
            return Err(ParseError::TooDeep { offset });
        }
        if self.eat_ident("not") {
            return Ok(PredicateExpr::Not(Box::new(self.factor(depth + 1)?)));
        }
        match self.peek().cloned() {
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                match self.peek() {
                    Some((_, Tok::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err(vec!["')'", "'and'", "'or'"])),
                }
            }
            Some((off, Tok::Ident(name))) => {
                self.pos += 1;
                self.atom(off, &name)
            }
            _ => Err(self.err(vec!["predicate", "'('", "'not'"])),
        }
    }

    fn atom(&mut self, offset: usize, name: &str) -> Result<PredicateExpr, ParseError> {
        let bare = match name {
            "prime" => Some(Atom::Prime),
            "weakly_prime" => Some(Atom::WeaklyPrime),
            "maximal" => Some(Atom::Maximal),
            "principal" => Some(Atom::Principal),
            _ => None,
        };
        if let Some(atom) = bare {
            return Ok(PredicateExpr::Atom(atom));
        }
        let (make, cap): (fn(usize) -> Atom, usize) = match name {
            "absorbing" => (Atom::Absorbing, ABSORBING_N_CAP),
            "weakly_absorbing" => (Atom::WeaklyAbsorbing, ABSORBING_N_CAP),
            "quasi" => (Atom::Quasi, QUASI_N_CAP),
            "weakly_quasi" => (Atom::WeaklyQuasi, QUASI_N_CAP),
            "strongly_quasi" => (Atom::StronglyQuasi, QUASI_N_CAP),
            _ => {
                return Err(ParseError::UnknownAtom { offset, name: name.to_string() });
            }
        };
        match self.peek() {
            Some((_, Tok::LParen)) => self.pos += 1,
            _ => return Err(self.err(vec!["'('"])),
        }
        let n = match self.peek().cloned() {
            Some((noff, Tok::Number(n))) => {
                self.pos += 1;
                if !(1..=cap).contains(&n) {
                    return Err(ParseError::ArgOutOfRange {
                        offset: noff,
                        atom: name.to_string(),
                        n,
                        cap,
                    });
                }
                n
            }
            _ => return Err(self.err(vec!["number"])),
        };
        match self.peek() {
            Some((_, Tok::RParen)) => {
                self.pos += 1;
                Ok(PredicateExpr::Atom(make(n)))
            }
            _ => Err(self.err(vec!["')'"])),
        }
    }
}

pub fn parse_predicate(text: &str) -> Result<PredicateExpr, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len() };
    let expr = parser.expr(0)?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err(vec!["'and'", "'or'", "end of input"]));
    }
    Ok(expr)
}

/// Evaluates atoms against one lattice with per-(element, atom) memoization.
pub struct Evaluator<'a> {
    lat: &'a MultLattice,
    cache: HashMap<(usize, Atom), bool>,
}

impl<'a> Evaluator<'a> {
    pub fn new(lat: &'a MultLattice) -> Self {
        Evaluator { lat, cache: HashMap::new() }
    }

    pub fn lattice(&self) -> &'a MultLattice {
        self.lat
    }

    pub fn eval(&mut self, expr: &PredicateExpr, q: Elem) -> Result<bool, PredicateError> {
        match expr {
            PredicateExpr::Atom(a) => self.atom(*a, q),
            PredicateExpr::Not(e) => Ok(!self.eval(e, q)?),
            PredicateExpr::And(l, r) => Ok(self.eval(l, q)? && self.eval(r, q)?),
            PredicateExpr::Or(l, r) => Ok(self.eval(l, q)? || self.eval(r, q)?),
        }
    }

    pub fn atom(&mut self, atom: Atom, q: Elem) -> Result<bool, PredicateError> {
        if let Some(&v) = self.cache.get(&(q.0, atom)) {
            return Ok(v);
        }
        let lat = self.lat;
        let v = match atom {
            Atom::Prime => is_prime(lat, q)?.holds(),
            Atom::WeaklyPrime => is_weakly_prime(lat, q)?.holds(),
            Atom::Maximal => is_maximal(lat, q)?.holds(),
            Atom::Principal => {
                if !lat.is_proper(q) {
                    return Err(PredicateError::NotProper(lat.label(q).to_string()));
                }
                is_principal_element(lat, q).holds()
            }
            Atom::Absorbing(n) => is_n_absorbing(lat, q, n)?.holds(),
            Atom::WeaklyAbsorbing(n) => is_weakly_n_absorbing(lat, q, n)?.holds(),
            Atom::Quasi(n) => is_quasi_n_absorbing(lat, q, n)?.holds(),
            Atom::WeaklyQuasi(n) => is_weakly_quasi_n_absorbing(lat, q, n)?.holds(),
            Atom::StronglyQuasi(n) => is_strongly_quasi_n_absorbing(lat, q, n)?.holds(),
        };
        self.cache.insert((q.0, atom), v);
        Ok(v)
    }
}

/// One-shot evaluation without a persistent cache.
pub fn eval_predicate(
    expr: &PredicateExpr,
    lat: &MultLattice,
    q: Elem,
) -> Result<bool, PredicateError> {
    Evaluator::new(lat).eval(expr, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::divisor_lattice;

    fn p(text: &str) -> PredicateExpr {
        parse_predicate(text).unwrap()
    }

    #[test]
    fn atoms_and_case() {
        assert_eq!(p("prime"), PredicateExpr::Atom(Atom::Prime));
        assert_eq!(p("PRIME"), PredicateExpr::Atom(Atom::Prime));
        assert_eq!(p("Quasi(3)"), PredicateExpr::Atom(Atom::Quasi(3)));
        assert_eq!(p("weakly_quasi( 2 )"), PredicateExpr::Atom(Atom::WeaklyQuasi(2)));
        assert_eq!(p("strongly_quasi(1)"), PredicateExpr::Atom(Atom::StronglyQuasi(1)));
        assert_eq!(p("weakly_absorbing(4)"), PredicateExpr::Atom(Atom::WeaklyAbsorbing(4)));
    }

    #[test]
    fn precedence_not_and_or() {
        // not binds tightest, then and, then or
        let e = p("prime or maximal and not principal");
        let want = PredicateExpr::Or(
            Box::new(PredicateExpr::Atom(Atom::Prime)),
            Box::new(PredicateExpr::And(
                Box::new(PredicateExpr::Atom(Atom::Maximal)),
                Box::new(PredicateExpr::Not(Box::new(PredicateExpr::Atom(Atom::Principal)))),
            )),
        );
        assert_eq!(e, want);
        assert_eq!(p("(prime or maximal) and principal"),
            PredicateExpr::And(
                Box::new(PredicateExpr::Or(
                    Box::new(PredicateExpr::Atom(Atom::Prime)),
                    Box::new(PredicateExpr::Atom(Atom::Maximal)),
                )),
                Box::new(PredicateExpr::Atom(Atom::Principal)),
            ));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "prime",
            "not prime",
            "prime and maximal",
            "quasi(2) or not absorbing(3)",
            "not (prime or weakly_prime) and strongly_quasi(2)",
            "((principal))",
        ] {
            let e = p(text);
            assert_eq!(p(&e.to_string()), e, "{text}");
        }
    }

    #[test]
    fn atoms_are_collected_once() {
        let e = p("quasi(2) and (quasi(2) or prime)");
        assert_eq!(e.atoms(), [Atom::Quasi(2), Atom::Prime]);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_predicate("prime and") {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 9);
                assert!(!expected.is_empty());
            }
            other => panic!("{other:?}"),
        }
        match parse_predicate("prime or or maximal") {
            Err(e) => assert_eq!(e.offset(), 9),
            Ok(_) => panic!("accepted double or"),
        }
        match parse_predicate("(prime") {
            Err(ParseError::Syntax { expected, .. }) => {
                assert!(expected.iter().any(|t| t.contains(')')), "{expected:?}");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_predicate("").is_err());
        assert!(parse_predicate("prime)").is_err());
        assert!(parse_predicate("prime maximal").is_err());
    }

    #[test]
    fn unknown_atom_and_bad_arguments() {
        match parse_predicate("frobnitz") {
            Err(ParseError::UnknownAtom { name, offset }) => {
                assert_eq!(name, "frobnitz");
                assert_eq!(offset, 0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_predicate("quasi(0)"), Err(ParseError::ArgOutOfRange { .. })));
        assert!(matches!(parse_predicate("quasi(99)"), Err(ParseError::ArgOutOfRange { .. })));
        assert!(matches!(parse_predicate("absorbing(5)"), Err(ParseError::ArgOutOfRange { .. })));
        assert!(parse_predicate("quasi()").is_err());
        assert!(parse_predicate("quasi").is_err());
        assert!(parse_predicate("prime(2)").is_err());
    }

    #[test]
    fn depth_limit() {
        let deep = format!("{}prime{}", "(".repeat(MAX_EXPR_DEPTH + 1), ")".repeat(MAX_EXPR_DEPTH + 1));
        assert!(matches!(parse_predicate(&deep), Err(ParseError::TooDeep { .. })));
        let ok = format!("{}prime{}", "(".repeat(MAX_EXPR_DEPTH - 1), ")".repeat(MAX_EXPR_DEPTH - 1));
        assert!(parse_predicate(&ok).is_ok());
    }

    #[test]
    fn evaluation_on_d12() {
        let lat = divisor_lattice(12).unwrap();
        let twelve = lat.elem_by_label("12").unwrap();
        let two = lat.elem_by_label("2").unwrap();
        let mut ev = Evaluator::new(&lat);
        assert!(ev.eval(&p("weakly_quasi(2) and not quasi(2)"), twelve).unwrap());
        assert!(ev.eval(&p("prime and maximal and principal"), two).unwrap());
        assert!(!ev.eval(&p("not prime"), two).unwrap());
        // memoized and one-shot paths agree
        for q in lat.proper_elems() {
            for text in ["prime", "quasi(2)", "weakly_quasi(3) or absorbing(2)"] {
                let e = p(text);
                assert_eq!(
                    ev.eval(&e, q).unwrap(),
                    eval_predicate(&e, &lat, q).unwrap()
                );
            }
        }
    }

    #[test]
    fn improper_element_is_an_error() {
        let lat = divisor_lattice(12).unwrap();
        let e = p("principal");
        assert!(eval_predicate(&e, &lat, lat.top()).is_err());
    }
}
