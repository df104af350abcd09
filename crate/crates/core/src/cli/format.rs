//! Line-based text formats for colorings, forbidden tables, certificates and
//! hypergraphs. Output is UTF-8, newline-terminated, and byte-stable:
//! reading a file and writing it back reproduces it exactly.
//!
//! ```text
//! berge-coloring v1 N=5 r=3 c=4
//! 0 3
//! 1 0
//! ...
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::combinat::choose;
use crate::construct::Certificate;
use crate::hypergraph::{Color, CompleteColoring, ForbiddenTable, HyperEdge, Hypergraph, HypergraphError};

const COLORING_MAGIC: &str = "berge-coloring";
const FORBIDDEN_MAGIC: &str = "berge-forbidden";
const CERTIFICATE_MAGIC: &str = "berge-certificate";
const HYPERGRAPH_MAGIC: &str = "berge-hypergraph";
const VERSION: &str = "v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] HypergraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses `magic v1 k1=v1 k2=v2 ...` with exactly the given keys in order.
fn parse_header(line: Option<&str>, magic: &str, keys: &[&str]) -> Result<Vec<u64>, FormatError> {
    let line = line.ok_or_else(|| syntax(1, "empty file"))?;
    let mut parts = line.split(' ');
    if parts.next() != Some(magic) || parts.next() != Some(VERSION) {
        return Err(syntax(1, format!("expected header `{magic} {VERSION} ...`")));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let field = parts.next().ok_or_else(|| syntax(1, format!("missing {key}=")))?;
        let value = field
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .ok_or_else(|| syntax(1, format!("expected {key}=, found `{field}`")))?;
        values.push(value.parse().map_err(|_| syntax(1, format!("bad value for {key}: `{value}`")))?);
    }
    if parts.next().is_some() {
        return Err(syntax(1, "trailing header fields"));
    }
    Ok(values)
}

fn parse_num<T: FromStr>(s: &str, line: usize) -> Result<T, FormatError> {
    s.parse().map_err(|_| syntax(line, format!("bad number `{s}`")))
}

/// Reads `count` lines of `<rank> <color>` with ranks 0, 1, 2, ... in order.
fn parse_ranked<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, count: usize) -> Result<Vec<Color>, FormatError> {
    let mut out = Vec::with_capacity(count);
    for expected in 0..count {
        let (no, line) = lines.next().ok_or_else(|| syntax(expected + 2, format!("missing rank {expected}")))?;
        let mut parts = line.split(' ');
        let (Some(rank), Some(color), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax(no, "expected `<rank> <color>`"));
        };
        if parse_num::<usize>(rank, no)? != expected {
            return Err(syntax(no, format!("expected rank {expected}, found {rank}")));
        }
        out.push(parse_num(color, no)?);
    }
    Ok(out)
}

fn numbered(text: &str) -> Result<impl Iterator<Item = (usize, &str)>, FormatError> {
    let body = text.strip_suffix('\n').ok_or_else(|| syntax(text.lines().count().max(1), "missing final newline"))?;
    Ok(body.split('\n').enumerate().map(|(i, l)| (i + 1, l)))
}

fn expect_end<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<(), FormatError> {
    match lines.next() {
        Some((no, _)) => Err(syntax(no, "unexpected trailing line")),
        None => Ok(()),
    }
}

pub fn write_coloring(col: &CompleteColoring) -> String {
    let mut s = format!(
        "{COLORING_MAGIC} {VERSION} N={} r={} c={}\n",
        col.vertex_count(),
        col.uniformity(),
        col.colors_count()
    );
    for (rank, chi) in col.colors().iter().enumerate() {
        writeln!(s, "{rank} {chi}").unwrap();
    }
    s
}

pub fn read_coloring(text: &str) -> Result<CompleteColoring, FormatError> {
    let mut lines = numbered(text)?;
    let h = parse_header(lines.next().map(|l| l.1), COLORING_MAGIC, &["N", "r", "c"])?;
    let (n, r, c) = (h[0] as usize, h[1] as usize, h[2] as Color);
    if n > 64 {
        return Err(HypergraphError::TooManyVertices(n).into());
    }
    let colors = parse_ranked(&mut lines, choose(n, r) as usize)?;
    expect_end(lines)?;
    Ok(CompleteColoring::new(n, r, c, colors)?)
}

fn forbidden_body(t: &ForbiddenTable, s: &mut String) {
    writeln!(s, "{FORBIDDEN_MAGIC} {VERSION} N={} c={}", t.vertex_count(), t.colors_count()).unwrap();
    for (rank, chi) in t.entries().iter().enumerate() {
        writeln!(s, "{rank} {chi}").unwrap();
    }
}

pub fn write_forbidden(t: &ForbiddenTable) -> String {
    let mut s = String::new();
    forbidden_body(t, &mut s);
    s
}

fn parse_forbidden_lines<'a>(first: Option<&str>, lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<ForbiddenTable, FormatError> {
    let h = parse_header(first, FORBIDDEN_MAGIC, &["N", "c"])?;
    let (n, c) = (h[0] as usize, h[1] as Color);
    if n > 64 {
        return Err(HypergraphError::TooManyVertices(n).into());
    }
    let colors = parse_ranked(lines, choose(n, 2) as usize)?;
    Ok(ForbiddenTable::new(n, c, colors)?)
}

pub fn read_forbidden(text: &str) -> Result<ForbiddenTable, FormatError> {
    let mut lines = numbered(text)?;
    let first = lines.next().map(|l| l.1);
    let t = parse_forbidden_lines(first, &mut lines)?;
    expect_end(lines)?;
    Ok(t)
}

/// Certificate header, two value lines, then the forbidden table verbatim.
pub fn write_certificate(cert: &Certificate) -> String {
    let t = &cert.forbidden;
    let mut s = format!(
        "{CERTIFICATE_MAGIC} {VERSION} N={} n={} c={}\n",
        t.vertex_count(),
        cert.n,
        t.colors_count()
    );
    writeln!(s, "compatible_count {}", cert.compatible_count).unwrap();
    writeln!(s, "initial_expectation {}", cert.initial_expectation).unwrap();
    forbidden_body(t, &mut s);
    s
}

fn parse_keyed<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, &'a str), FormatError> {
    let (no, line) = lines.next().ok_or_else(|| syntax(0, format!("missing `{key}` line")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix(' '))
        .ok_or_else(|| syntax(no, format!("expected `{key} <value>`")))?;
    Ok((no, value))
}

pub fn read_certificate(text: &str) -> Result<Certificate, FormatError> {
    let mut lines = numbered(text)?;
    let h = parse_header(lines.next().map(|l| l.1), CERTIFICATE_MAGIC, &["N", "n", "c"])?;
    let (no, count) = parse_keyed(&mut lines, "compatible_count")?;
    let compatible_count = parse_num(count, no)?;
    let (no, exp) = parse_keyed(&mut lines, "initial_expectation")?;
    let initial_expectation = parse_rational(exp).ok_or_else(|| syntax(no, format!("bad rational `{exp}`")))?;
    let first = lines.next().map(|l| l.1);
    let forbidden = parse_forbidden_lines(first, &mut lines)?;
    expect_end(lines)?;
    if forbidden.vertex_count() as u64 != h[0] || forbidden.colors_count() as u64 != h[2] {
        return Err(syntax(1, "certificate header disagrees with its table"));
    }
    Ok(Certificate {
        forbidden,
        n: h[1] as usize,
        compatible_count,
        initial_expectation,
    })
}

/// Parses `p/q` or `p` into a reduced rational. The canonical `Display`
/// output of [`BigRational`] round-trips through this.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (q != BigInt::from(0)).then(|| BigRational::new(p, q))
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut s = format!("{HYPERGRAPH_MAGIC} {VERSION} N={} m={}\n", h.vertex_count(), h.edge_count());
    for (i, e) in h.edges().iter().enumerate() {
        write!(s, "{i}").unwrap();
        for v in e.vertices() {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn read_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = numbered(text)?;
    let h = parse_header(lines.next().map(|l| l.1), HYPERGRAPH_MAGIC, &["N", "m"])?;
    let (n, m) = (h[0] as usize, h[1] as usize);
    let mut edges = Vec::with_capacity(m);
    for expected in 0..m {
        let (no, line) = lines.next().ok_or_else(|| syntax(expected + 2, format!("missing edge {expected}")))?;
        let mut parts = line.split(' ');
        let index: usize = parse_num(parts.next().unwrap_or(""), no)?;
        if index != expected {
            return Err(syntax(no, format!("expected edge {expected}, found {index}")));
        }
        let vs = parts.map(|p| parse_num(p, no)).collect::<Result<Vec<usize>, _>>()?;
        edges.push(HyperEdge::new(&vs)?);
    }
    expect_end(lines)?;
    Ok(Hypergraph::new(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{derandomize_forbidden, random_forbidden, respecting_coloring, ColoringPolicy};
    use crate::hedgehog::build_hedgehog;
    use proptest::prelude::*;

    #[test]
    fn coloring_golden() {
        let col = CompleteColoring::new(4, 3, 2, vec![0, 1, 1, 0]).unwrap();
        let text = write_coloring(&col);
        assert_eq!(text, "berge-coloring v1 N=4 r=3 c=2\n0 0\n1 1\n2 1\n3 0\n");
        assert_eq!(read_coloring(&text).unwrap(), col);
    }

    #[test]
    fn forbidden_golden() {
        let t = ForbiddenTable::new(3, 4, vec![0, 1, 2]).unwrap();
        assert_eq!(write_forbidden(&t), "berge-forbidden v1 N=3 c=4\n0 0\n1 1\n2 2\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_coloring("berge-coloring v1 N=4 r=3 c=2\n0 0\n2 1\n2 1\n3 0\n").is_err());
        assert!(read_coloring("berge-coloring v1 N=4 r=3 c=2\n0 0\n1 1\n2 1\n").is_err());
        assert!(read_coloring("berge-coloring v1 N=4 r=3 c=2\n0 0\n1 1\n2 1\n3 0").is_err());
        assert!(read_coloring("berge-coloring v1 N=4 r=3 c=2\n0 0\n1 1\n2 1\n3 2\n").is_err());
        assert!(read_coloring("berge-coloring v1 N=4 r=3 c=2\n0 0\n1 1\n2 1\n3 0\n4 0\n").is_err());
        assert!(read_coloring("berge-colouring v1 N=4 r=3 c=2\n").is_err());
        assert!(read_forbidden("berge-forbidden v1 N=3 c=2\n0 0\n1 x\n2 0\n").is_err());
        assert!(read_hypergraph("berge-hypergraph v1 N=4 m=1\n0 2 1\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let cert = derandomize_forbidden(7, 6, 4).unwrap();
        let text = write_certificate(&cert);
        let back = read_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(write_certificate(&back), text);
        assert!(text.starts_with("berge-certificate v1 N=7 n=6 c=4\ncompatible_count 0\ninitial_expectation "));
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = build_hedgehog(4).unwrap();
        let text = write_hypergraph(h.hypergraph());
        assert!(text.starts_with("berge-hypergraph v1 N=10 m=6\n0 0 1 4\n1 0 2 5\n"));
        assert_eq!(&read_hypergraph(&text).unwrap(), h.hypergraph());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("27/16"), Some(crate::combinat::ratio(27, 16)));
        assert_eq!(parse_rational("6/4"), Some(crate::combinat::ratio(3, 2)));
        assert_eq!(parse_rational("0"), Some(crate::combinat::ratio(0, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    proptest! {
        #[test]
        fn files_are_byte_stable(n in 3usize..14, c in 4u32..7, seed in any::<u64>()) {
            let t = random_forbidden(n, c, seed).unwrap();
            let col = respecting_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap();
            let text = write_coloring(&col);
            prop_assert_eq!(write_coloring(&read_coloring(&text).unwrap()), text);
            let text = write_forbidden(&t);
            prop_assert_eq!(write_forbidden(&read_forbidden(&text).unwrap()), text);
        }
    }
}
