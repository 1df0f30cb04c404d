//! A small text format for ring presentations:
//!
//! ```text
//! # comments run to end of line
//! ring R {
//!     gen t:2;
//!     gen w:8;
//!     rel t^9 - 3*t*w^2;
//!     rel w^3 - 9*t^8*w + 15*t^4*w^2;
//!     top 32;
//! }
//! ```
//!
//! Statements end with `;` and a relation must fit on one line. Generators
//! may be declared in any order relative to relations; relations are parsed
//! once the block is closed.

use std::fmt;

use crate::exactpoly::{Polynomial, VariableContext};
use crate::gring::{GradedRingPresentation, RingError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    Inhomogeneous,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DslError {}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn location(&self, offset: usize) -> (usize, usize) {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().unwrap().chars().count() + 1;
        (line, col)
    }

    fn error_at(&self, offset: usize, kind: DslErrorKind, message: impl Into<String>) -> DslError {
        let (line, column) = self.location(offset);
        DslError { kind, line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> DslError {
        self.error_at(self.pos, DslErrorKind::Syntax, message)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') || trimmed.starts_with("//") {
                let end = trimmed.find('\n').unwrap_or(trimmed.len());
                self.pos += end;
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.src.len()
    }

    fn ident(&mut self) -> Result<(usize, &'a str), DslError> {
        self.skip_trivia();
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok((start, &self.src[start..self.pos]))
    }

    fn number(&mut self) -> Result<u32, DslError> {
        self.skip_trivia();
        let start = self.pos;
        let len = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, DslErrorKind::Syntax, "number too large"))
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        self.skip_trivia();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_trivia();
        self.rest().starts_with(c)
    }

    /// Text up to the next `;` (not consumed), with its start offset.
    fn until_semicolon(&mut self) -> Result<(usize, &'a str), DslError> {
        self.skip_trivia();
        let start = self.pos;
        let rest = self.rest();
        let stop = rest.find([';', '}', '\n']).unwrap_or(rest.len());
        if !rest[stop..].starts_with(';') {
            return Err(self.error_at(start + stop, DslErrorKind::Syntax, "expected `;`"));
        }
        self.pos += stop;
        Ok((start, &self.src[start..start + stop]))
    }
}

/// Parses every `ring` block in `text`.
pub fn parse_rings(text: &str) -> Result<Vec<GradedRingPresentation>, DslError> {
    let mut sc = Scanner { src: text, pos: 0 };
    let mut rings = Vec::new();
    while !sc.at_end() {
        rings.push(parse_block(&mut sc)?);
    }
    Ok(rings)
}

/// Parses text containing exactly one `ring` block.
pub fn parse_ring_dsl(text: &str) -> Result<GradedRingPresentation, DslError> {
    let mut rings = parse_rings(text)?;
    match rings.len() {
        1 => Ok(rings.pop().unwrap()),
        n => Err(DslError {
            kind: DslErrorKind::Syntax,
            line: 1,
            column: 1,
            message: format!("expected one ring definition, found {n}"),
        }),
    }
}

fn parse_block(sc: &mut Scanner<'_>) -> Result<GradedRingPresentation, DslError> {
    let (kw_at, kw) = sc.ident()?;
    if kw != "ring" {
        return Err(sc.error_at(kw_at, DslErrorKind::Syntax, format!("expected `ring`, found `{kw}`")));
    }
    let (_, name) = sc.ident()?;
    sc.expect('{')?;
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut rels: Vec<(usize, &str)> = Vec::new();
    let mut top = None;
    while !sc.peek_is('}') {
        if sc.at_end() {
            return Err(sc.error("expected `}`"));
        }
        let (at, stmt) = sc.ident()?;
        match stmt {
            "gen" => {
                let (name_at, g) = sc.ident()?;
                sc.expect(':')?;
                let deg = sc.number()?;
                if gens.iter().any(|(n, _)| n == g) {
                    return Err(sc.error_at(name_at, DslErrorKind::Invalid, format!("generator `{g}` declared twice")));
                }
                if deg == 0 || deg % 2 != 0 {
                    return Err(sc.error_at(
                        name_at,
                        DslErrorKind::Invalid,
                        format!("generator `{g}` needs a positive even degree, got {deg}"),
                    ));
                }
                gens.push((g.to_string(), deg));
            }
            "rel" => rels.push(sc.until_semicolon()?),
            "top" => top = Some(sc.number()?),
            other => {
                return Err(sc.error_at(
                    at,
                    DslErrorKind::Syntax,
                    format!("unknown statement `{other}`; expected gen, rel or top"),
                ))
            }
        }
        sc.expect(';')?;
    }
    sc.expect('}')?;

    let ctx = VariableContext::new(gens).map_err(|e| sc.error_at(kw_at, DslErrorKind::Invalid, e.to_string()))?;
    let mut relations = Vec::new();
    for (at, text) in rels {
        let p = Polynomial::parse(&ctx, text).map_err(|e| {
            let (offset, msg) = match e {
                crate::exactpoly::PolyError::Parse { column, message } => (column.saturating_sub(1), message),
                other => (0, other.to_string()),
            };
            sc.error_at(at + offset, DslErrorKind::Syntax, msg)
        })?;
        if !p.is_zero() && p.homogeneous_degree().is_none() {
            let degrees: Vec<String> = p.components().keys().map(|d| d.to_string()).collect();
            return Err(sc.error_at(
                at,
                DslErrorKind::Inhomogeneous,
                format!("relation `{}` is not homogeneous (degrees {})", text.trim(), degrees.join(", ")),
            ));
        }
        relations.push(p);
    }
    GradedRingPresentation::new(name, ctx, relations, top).map_err(|e| {
        let kind = match e {
            RingError::InhomogeneousRelation(_) => DslErrorKind::Inhomogeneous,
            _ => DslErrorKind::Invalid,
        };
        sc.error_at(kw_at, kind, e.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: &str = "ring R {\n  gen t:2;\n  gen w:8;\n  rel t^9 - 3*t*w^2;\n  rel w^3 - 9*t^8*w + 15*t^4*w^2;\n  top 32;\n}\n";

    #[test]
    fn parses_a_ring() {
        let r = parse_ring_dsl(R).unwrap();
        assert_eq!(r.name(), "R");
        assert_eq!(r.relations().len(), 2);
        assert_eq!(r.relations()[0].to_string(), "t^9 - 3*t*w^2");
        assert_eq!(r.top_degree(), Some(32));
        let two = parse_rings(&format!("# two rings\n{R}\nring P {{ gen a:8; rel a^3; top 16; }}")).unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn missing_semicolon() {
        let e = parse_ring_dsl("ring R {\n  gen t:2\n  top 4;\n}").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Syntax);
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_ring_dsl("ring R {\n  gen t:2;\n  rel t^2\n}").unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
    }

    #[test]
    fn inhomogeneous_relation() {
        let e = parse_ring_dsl("ring X { gen t:2; gen w:8;\nrel t^3 - w; }").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Inhomogeneous);
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("6, 8"));
    }

    #[test]
    fn bad_variable_position() {
        let e = parse_ring_dsl("ring X { gen t:2;\n  rel t^2 + z; }").unwrap_err();
        assert_eq!((e.line, e.column), (2, 13));
        assert!(parse_ring_dsl("ring X { gen t:3; }").is_err());
        assert!(parse_ring_dsl("field X { }").is_err());
        assert!(parse_ring_dsl("ring X { gen t:2; ").is_err());
    }
}
