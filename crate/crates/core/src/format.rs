//! Line-oriented text formats.
//!
//! Hypergraph: header `n r`, then one edge per non-empty line as `r`
//! space-separated vertex ids. Lines starting with `#` are comments.
//!
//! Mixed hypergraph: header `n 2 r`, then `P u v` for pair edges and
//! `H v1 .. vr` for hyperedges.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Edge, Graph, Hypergraph, MixedHypergraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("missing header")]
    MissingHeader,
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(String),
    #[error("wrong edge arity: expected {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("duplicate edge")]
    DuplicateEdge,
    #[error("repeated vertex within an edge")]
    RepeatedVertex,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("Sperner property violated")]
    NotSperner,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<Vertex, ParseError> {
    match tok.parse::<u64>() {
        Ok(v) if (v as usize) < n => Ok(v as Vertex),
        Ok(_) => Err(err(line, ParseErrorKind::VertexOutOfRange(tok.to_string()))),
        Err(_) => Err(err(line, ParseErrorKind::Malformed(format!("bad vertex id {tok:?}")))),
    }
}

fn parse_edge_tokens<'a>(
    toks: impl Iterator<Item = &'a str>,
    n: usize,
    arity: usize,
    line: usize,
) -> Result<Edge, ParseError> {
    let vs = toks.map(|t| parse_vertex(t, n, line)).collect::<Result<Vec<_>, _>>()?;
    if vs.len() != arity {
        return Err(err(
            line,
            ParseErrorKind::WrongArity {
                expected: arity,
                found: vs.len(),
            },
        ));
    }
    Edge::new(vs).map_err(|_| err(line, ParseErrorKind::RepeatedVertex))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::MalformedHeader(format!("bad number {tok:?}"))))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(err(hl, ParseErrorKind::MalformedHeader(header.to_string())));
    }
    let n = parse_usize(toks[0], hl)?;
    let r = parse_usize(toks[1], hl)?;
    if r < 2 {
        return Err(err(hl, ParseErrorKind::MalformedHeader(format!("uniformity {r} < 2"))));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (line, l) in lines {
        let e = parse_edge_tokens(l.split_whitespace(), n, r, line)?;
        if !seen.insert(e) {
            return Err(err(line, ParseErrorKind::DuplicateEdge));
        }
    }
    Ok(Hypergraph::new(n, r, seen.into_iter().map(Vec::from)).expect("validated while parsing"))
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.r());
    for e in h.edges() {
        writeln!(out, "{e}").unwrap();
    }
    out
}

/// Graphs use the hypergraph format with `r = 2`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let h = parse_hypergraph(text)?;
    if h.r() != 2 {
        return Err(err(
            1,
            ParseErrorKind::MalformedHeader(format!("expected a graph (r = 2), found r = {}", h.r())),
        ));
    }
    Ok(Graph::from_hypergraph(&h).expect("2-uniform"))
}

pub fn serialize_graph(g: &Graph) -> String {
    serialize_hypergraph(&g.to_hypergraph())
}

pub fn parse_mixed(text: &str) -> Result<MixedHypergraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[1] != "2" {
        return Err(err(hl, ParseErrorKind::MalformedHeader(header.to_string())));
    }
    let n = parse_usize(toks[0], hl)?;
    let r = parse_usize(toks[2], hl)?;
    if r < 3 {
        return Err(err(hl, ParseErrorKind::MalformedHeader(format!("uniformity {r} < 3"))));
    }
    let mut pairs = std::collections::BTreeSet::new();
    let mut hyper = std::collections::BTreeSet::new();
    let mut last_line = hl;
    for (line, l) in lines {
        last_line = line;
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("P") => {
                let e = parse_edge_tokens(toks, n, 2, line)?;
                if !pairs.insert(e) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge));
                }
            }
            Some("H") => {
                let e = parse_edge_tokens(toks, n, r, line)?;
                if !hyper.insert(e) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge));
                }
            }
            _ => return Err(err(line, ParseErrorKind::Malformed(l.to_string()))),
        }
    }
    let g = Graph::new(
        n,
        pairs.iter().map(|e| (e.vertices()[0], e.vertices()[1])),
    )
    .expect("validated while parsing");
    let h = Hypergraph::new(n, r, hyper.into_iter().map(Vec::from)).expect("validated while parsing");
    MixedHypergraph::new(g, h).map_err(|_| err(last_line, ParseErrorKind::NotSperner))
}

pub fn serialize_mixed(m: &MixedHypergraph) -> String {
    let mut out = format!("{} 2 {}\n", m.n(), m.r());
    for &(a, b) in m.pair_edges().edges() {
        writeln!(out, "P {a} {b}").unwrap();
    }
    for e in m.hyper_edges().edges() {
        writeln!(out, "H {e}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    #[test]
    fn parses_simple_file() {
        let h = parse_hypergraph("6 3\n0 1 2\n3 4 5\n").unwrap();
        assert_eq!((h.n(), h.r(), h.len()), (6, 3, 2));
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = parse_hypergraph("# a comment\n5 3\n\n# edge\n4 0 2\n").unwrap();
        assert_eq!(h.edges()[0].vertices(), &[0, 2, 4]);
    }

    #[test]
    fn duplicate_edge_reports_line() {
        let e = parse_hypergraph("4 3\n0 1 2\n0 1 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.kind, ParseErrorKind::DuplicateEdge);
        // same set, different order
        assert_eq!(parse_hypergraph("4 3\n0 1 2\n2 0 1\n").unwrap_err().line, 3);
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse_hypergraph("4\n").unwrap_err().kind, ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(parse_hypergraph("").unwrap_err().kind, ParseErrorKind::MissingHeader));
        let e = parse_hypergraph("4 3\n0 1 4\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::VertexOutOfRange("4".into())));
        let e = parse_hypergraph("4 3\n0 1 2\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::WrongArity { expected: 3, found: 2 }));
    }

    #[test]
    fn mixed_format() {
        let m = parse_mixed("5 2 3\nP 3 4\nH 0 1 2\n").unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(serialize_mixed(&m), "5 2 3\nP 3 4\nH 0 1 2\n");
        assert_eq!(parse_mixed("5 2 3\nP 0 1\nH 0 1 2\n").unwrap_err().kind, ParseErrorKind::NotSperner);
        assert!(parse_mixed("5 3\n").is_err());
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(n in 3usize..10, r in 2usize..4, bits in any::<u64>()) {
            let r = r.min(n);
            let edges: Vec<Vec<u32>> = (0..n as u32)
                .combinations(r)
                .enumerate()
                .filter(|(i, _)| bits >> (i % 64) & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let h = Hypergraph::new(n, r, edges).unwrap();
            prop_assert_eq!(parse_hypergraph(&serialize_hypergraph(&h)).unwrap(), h);
        }
    }
}
