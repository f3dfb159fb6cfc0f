//! Edge-list and graph6 readers and writers.
//!
//! Edge-list: a header line `n m`, then `m` lines `u v` (0-based). Anything
//! after `#` on a line is a comment; blank lines are ignored.
//!
//! graph6 follows nauty's `formats.txt`: a size prefix `N(n)` followed by the
//! upper triangle of the adjacency matrix in column order, six bits per byte,
//! each byte offset by 63.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("empty input")]
    Empty,
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::Empty)?;
    let numbers = parse_pair(header_line, header)?;
    let (n, m) = numbers;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        edges.push(parse_pair(line, body)?);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, edges)?)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = body.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let field = fields.next().ok_or_else(|| syntax(line, "expected two integers"))?;
        field
            .parse()
            .map_err(|_| syntax(line, format!("not a non-negative integer: {field:?}")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(syntax(line, "trailing fields"));
    }
    Ok(pair)
}

pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses one graph6 string (without trailing newline). The optional
/// `>>graph6<<` header is accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let bytes = line
        .trim_end()
        .strip_prefix(">>graph6<<")
        .unwrap_or(line.trim_end())
        .as_bytes();
    match bytes.first() {
        None => return Err(ParseError::Empty),
        Some(b':') => return Err(ParseError::Graph6("sparse6 is not supported".into())),
        Some(b'&') => return Err(ParseError::Graph6("digraph6 is not supported".into())),
        _ => {}
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("byte {b:#04x} out of range")));
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.get(1) != Some(&126) {
        (read_big_endian(bytes.get(1..4))?, &bytes[4..])
    } else {
        (read_big_endian(bytes.get(2..8))?, &bytes[8..])
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(ParseError::Graph6(format!(
            "expected {expected} adjacency bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges)?)
}

fn read_big_endian(bytes: Option<&[u8]>) -> Result<usize, ParseError> {
    let bytes = bytes.ok_or_else(|| ParseError::Graph6("truncated size prefix".into()))?;
    Ok(bytes.iter().fold(0usize, |acc, &b| acc << 6 | usize::from(b - 63)))
}

pub fn write_graph6(graph: &Graph) -> String {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(graph.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses a stream of graph6 lines, skipping blank lines.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, petersen};

    #[test]
    fn edge_list_with_comments() {
        let text = "# a 4-cycle\n4 4\n0 1\n1 2 # middle\n\n2 3\n3 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, cycle(4).unwrap());
        assert_eq!(write_edge_list(&g), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(ParseError::Empty)));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(ParseError::EdgeCount { declared: 2, found: 1 })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n0 5\n"),
            Err(ParseError::Graph(GraphError::EndpointOutOfRange { .. }))
        ));
    }

    #[test]
    fn graph6_known_strings() {
        // from nauty's formats.txt
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.edges(), &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(write_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(parse_graph6(&write_graph6(&petersen())).unwrap(), petersen());
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), complete(4).unwrap());
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6(":Fa@x^").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
    }

    #[test]
    fn graph6_large_prefix() {
        let g = crate::graph::path(70).unwrap();
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
