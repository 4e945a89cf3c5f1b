//! Text formats for complexes and cochains.
//!
//! One simplex per line as ascending whitespace-separated integers; `#`
//! starts a comment. In complex files line order is filtration order.

use std::collections::HashSet;

use crate::complex::{Cochain, FilteredComplex, Simplex, Vertex};
use crate::error::{Error, Result};

fn parse_simplex_lines(text: &str) -> Result<Vec<(usize, Simplex)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut vertices = Vec::new();
        let mut offset = 0;
        for token in line.split_whitespace() {
            let start = offset + line[offset..].find(token).expect("token from this line");
            offset = start + token.len();
            let v: Vertex = token.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                column: start + 1,
                message: format!("expected a nonnegative integer, found {token:?}"),
            })?;
            vertices.push(v);
        }
        if vertices.is_empty() {
            continue;
        }
        out.push((lineno + 1, Simplex::new(vertices)?));
    }
    Ok(out)
}

pub fn parse_complex_file(text: &str) -> Result<FilteredComplex> {
    let simplices = parse_simplex_lines(text)?.into_iter().map(|(_, s)| s).collect();
    FilteredComplex::new(simplices)
}

/// Parses a cochain against `x`. An empty file is accepted only when
/// `degree` is given.
pub fn parse_cochain_file(text: &str, x: &FilteredComplex, degree: Option<usize>) -> Result<Cochain> {
    let lines = parse_simplex_lines(text)?;
    let d = match (lines.first(), degree) {
        (None, None) => return Err(Error::MissingDegree),
        (None, Some(d)) => return Ok(Cochain::empty(d)),
        (Some((_, s)), _) => s.dim(),
    };
    if let Some(expected) = degree {
        if expected != d {
            return Err(Error::DegreeMismatch { expected, found: d });
        }
    }
    let mut seen = HashSet::new();
    for (_, s) in &lines {
        if s.dim() != d {
            return Err(Error::MixedDegrees {
                first: d,
                second: s.dim(),
            });
        }
        if !x.contains(s) {
            return Err(Error::UnsupportedCochain(format!("{s:?}")));
        }
        if !seen.insert(s.clone()) {
            return Err(Error::Duplicate(format!("{s:?}")));
        }
    }
    Cochain::new(d, lines.into_iter().map(|(_, s)| s))
}

pub fn emit_complex(x: &FilteredComplex) -> String {
    let mut out = String::new();
    for s in x.simplices() {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// Support simplices in ascending order, one per line.
pub fn emit_cochain(c: &Cochain) -> String {
    let mut out = String::new();
    for s in c.support() {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_small_complex() {
        let x = parse_complex_file("1\n2\n1 2\n").unwrap();
        assert_eq!(x.len(), 3);
        let commented = parse_complex_file("# edge\n1\n\n2 # second\n  1   2\n").unwrap();
        assert_eq!(commented, x);
    }

    #[test]
    fn parse_complex_errors() {
        assert_eq!(parse_complex_file("1 2\n").unwrap_err().code(), "NotClosed");
        assert_eq!(parse_complex_file("2 1\n").unwrap_err().code(), "MalformedSimplex");
        let err = parse_complex_file("1\n2\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "expected a nonnegative integer, found \"x\"".into()
            }
        );
        assert_eq!(parse_complex_file("-1\n").unwrap_err().code(), "ParseError");
    }

    #[test]
    fn parse_rp2_cocycle() {
        let x = fixtures::rp2();
        let c = parse_cochain_file("1 4\n1 5\n2 3\n2 4\n3 5\n", &x, None).unwrap();
        assert_eq!(c, fixtures::rp2_cocycle());
    }

    #[test]
    fn cochain_errors() {
        let x = fixtures::rp2();
        assert_eq!(parse_cochain_file("", &x, None).unwrap_err(), Error::MissingDegree);
        assert_eq!(parse_cochain_file("# nothing\n", &x, Some(2)).unwrap(), Cochain::empty(2));
        assert_eq!(
            parse_cochain_file("1\n1 2\n", &x, None).unwrap_err().code(),
            "MixedDegrees"
        );
        assert_eq!(
            parse_cochain_file("1 7\n", &x, None).unwrap_err().code(),
            "UnsupportedCochain"
        );
        assert_eq!(
            parse_cochain_file("1 2\n", &x, Some(2)).unwrap_err().code(),
            "DegreeMismatch"
        );
        assert_eq!(
            parse_cochain_file("1 2\n1 2\n", &x, None).unwrap_err().code(),
            "Duplicate"
        );
    }

    #[test]
    fn emit_then_parse_is_identity() {
        for x in [fixtures::rp2(), fixtures::torus7(), fixtures::single_vertex()] {
            assert_eq!(parse_complex_file(&emit_complex(&x)).unwrap(), x);
        }
    }
}
