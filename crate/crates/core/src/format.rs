//! The line-oriented algebra file format.
//!
//! ```text
//! # the three-element chain
//! algebra C3
//! elements 0 a 1
//! sum a a = 1
//! ```
//!
//! `0 ⊕ x = x` and symmetry are added at load. `prod a b = c` lines are
//! optional, but if any is present the product table must be total.

use std::collections::HashMap;

use thiserror::Error;

use crate::finite::{AlgebraTable, ElemId, FiniteEffectAlgebra, NotAnEffectAlgebra, SeqProductTable, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; `0` means the error concerns the file as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("expected `{0}`")]
    Malformed(&'static str),
    #[error("`{0}` given twice")]
    Repeated(&'static str),
    #[error("no `elements` line before this one")]
    NoElements,
    #[error("no `elements` line")]
    MissingElements,
    #[error("elements must include `0` and `1`")]
    MissingZeroOne,
    #[error("{0} (first given on line {1})")]
    ConflictsWith(StructureError, usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError { line, kind: kind.into() }
}

/// A parsed file: a well-formed but unchecked `⊕` table, and possibly a
/// total product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub table: AlgebraTable,
    pub product: Option<SeqProductTable>,
}

impl AlgebraFile {
    pub fn name(&self) -> &str {
        self.table.name()
    }

    /// Checks (A1)–(A4).
    pub fn effect_algebra(&self) -> Result<FiniteEffectAlgebra, NotAnEffectAlgebra> {
        FiniteEffectAlgebra::new(self.table.clone())
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut name: Option<(String, usize)> = None;
    let mut table: Option<AlgebraTable> = None;
    let mut sum_lines: HashMap<(ElemId, ElemId), usize> = HashMap::new();
    let mut prod: Vec<(ElemId, ElemId, ElemId)> = Vec::new();
    let mut prod_lines: HashMap<(ElemId, ElemId), usize> = HashMap::new();
    let mut last_prod = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let spaced = body.replace('=', " = ");
        let words: Vec<&str> = spaced.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else { continue };
        match head {
            "algebra" => {
                if name.is_some() {
                    return Err(err(line, ParseErrorKind::Repeated("algebra")));
                }
                let [n] = rest else { return Err(err(line, ParseErrorKind::Malformed("algebra NAME"))) };
                name = Some((n.to_string(), line));
            }
            "elements" => {
                if table.is_some() {
                    return Err(err(line, ParseErrorKind::Repeated("elements")));
                }
                if !rest.contains(&"0") || !rest.contains(&"1") {
                    return Err(err(line, ParseErrorKind::MissingZeroOne));
                }
                let n = name.as_ref().map_or("unnamed", |(n, _)| n.as_str());
                let names = rest.iter().map(|s| s.to_string()).collect();
                table = Some(AlgebraTable::new(n, names, "0", "1").map_err(|e| err(line, e))?);
            }
            "sum" | "prod" => {
                let [a, b, "=", c] = rest else {
                    return Err(err(line, ParseErrorKind::Malformed(if head == "sum" { "sum a b = c" } else { "prod a b = c" })));
                };
                let t = table.as_mut().ok_or(err(line, ParseErrorKind::NoElements))?;
                let ids = (t.lookup(a), t.lookup(b), t.lookup(c));
                let (a, b, c) = (ids.0.map_err(|e| err(line, e))?, ids.1.map_err(|e| err(line, e))?, ids.2.map_err(|e| err(line, e))?);
                if head == "sum" {
                    if let Err(e) = t.set_sum(a, b, c) {
                        let key = (a.min(b), a.max(b));
                        return Err(match sum_lines.get(&key) {
                            Some(&first) => err(line, ParseErrorKind::ConflictsWith(e, first)),
                            None => err(line, e),
                        });
                    }
                    sum_lines.entry((a.min(b), a.max(b))).or_insert(line);
                } else {
                    if let Some(&(_, _, prev)) = prod.iter().find(|&&(x, y, _)| (x, y) == (a, b)) {
                        if prev != c {
                            let e = StructureError::Conflict {
                                op: "∘",
                                a: t.elem_name(a).to_string(),
                                b: t.elem_name(b).to_string(),
                                first: t.elem_name(prev).to_string(),
                                second: t.elem_name(c).to_string(),
                            };
                            return Err(err(line, ParseErrorKind::ConflictsWith(e, prod_lines[&(a, b)])));
                        }
                    }
                    prod_lines.entry((a, b)).or_insert(line);
                    prod.push((a, b, c));
                    last_prod = line;
                }
            }
            other => return Err(err(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let mut table = table.ok_or(err(0, ParseErrorKind::MissingElements))?;
    if let Some((n, _)) = name {
        table.set_name(n);
    }
    let product = if prod.is_empty() {
        None
    } else {
        Some(SeqProductTable::from_entries(&table, &prod).map_err(|e| err(last_prod, e))?)
    };
    Ok(AlgebraFile { table, product })
}

/// Writes the file form; implicit `0 ⊕ x` lines are left out.
pub fn serialize_algebra(table: &AlgebraTable, product: Option<&SeqProductTable>) -> String {
    let mut out = format!("algebra {}\nelements {}\n", table.name(), table.names().join(" "));
    let zero = table.zero_id();
    for (a, b, c) in table.sum_entries() {
        if a != zero && b != zero {
            out.push_str(&format!("sum {} {} = {}\n", table.elem_name(a), table.elem_name(b), table.elem_name(c)));
        }
    }
    if let Some(p) = product {
        for a in table.elements() {
            for b in table.elements() {
                let c = p.get(a, b);
                out.push_str(&format!("prod {} {} = {}\n", table.elem_name(a), table.elem_name(b), table.elem_name(c)));
            }
        }
    }
    out
}

pub fn serialize_file(file: &AlgebraFile) -> String {
    serialize_algebra(&file.table, file.product.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn c3_example() {
        let f = parse_algebra("algebra C3\nelements 0 a 1\nsum a a = 1\n").unwrap();
        let ea = f.effect_algebra().unwrap();
        assert_eq!(ea.len(), 3);
        assert!(ea.order().is_chain());
        assert_eq!(f.name(), "C3");
    }

    #[test]
    fn c2_with_no_sums() {
        let f = parse_algebra("elements 0 1").unwrap();
        let ea = f.effect_algebra().unwrap();
        assert_eq!(ea.sum_id(ea.zero_id(), ea.one_id()), Some(ea.one_id()));
    }

    #[test]
    fn conflict_reported_at_second_line() {
        let e = parse_algebra("algebra X\nelements 0 a 1\nsum a a = 1\nsum a a = 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(matches!(e.kind, ParseErrorKind::ConflictsWith(_, 3)));
    }

    #[test]
    fn positioned_errors() {
        let cases = [
            ("elements 0 a\n", 1),
            ("elements 0 a 1\nsum a b = 1\n", 2),
            ("# c\nsum a a = 1\n", 2),
            ("elements 0 a 1\nfrob\n", 2),
            ("elements 0 a 1\nsum a a 1\n", 2),
            ("elements 0 a a 1\n", 1),
            ("elements 0 a 1\nprod a a = a\n", 2),
            ("elements 0 1\nelements 0 1\n", 2),
        ];
        for (text, line) in cases {
            assert_eq!(parse_algebra(text).unwrap_err().line, line, "{text}");
        }
        assert_eq!(parse_algebra("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingElements);
    }

    #[test]
    fn whitespace_and_comments() {
        let f = parse_algebra("  algebra   C3 # name\n\n\telements 0  a 1\nsum a a=1   # top\n").unwrap();
        assert!(f.effect_algebra().is_ok());
    }

    #[test]
    fn round_trip() {
        let b = catalog::boolean(3).unwrap();
        let t = catalog::boolean_meet(&b);
        let text = serialize_algebra(b.table(), Some(&t));
        let f = parse_algebra(&text).unwrap();
        assert_eq!(&f.table, b.table());
        assert_eq!(f.product.as_ref(), Some(&t));
        assert_eq!(serialize_file(&f), text);
        for alg in [catalog::chain(4).unwrap(), catalog::diamond()] {
            let f = parse_algebra(&serialize_algebra(alg.table(), None)).unwrap();
            assert_eq!(&f.table, alg.table());
        }
    }
}
