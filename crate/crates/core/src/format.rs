//! Plain-text hypergraph files.
//!
//! ```text
//! # comment
//! 4            <- vertex count
//! 0 1 2        <- one edge per line, 0-based indices
//! 1 2 3
//! -            <- the empty edge
//! label 0 v_1  <- optional display names
//! ```
//!
//! [`write_hypergraph`] emits the vertex count, the edges in edge-id order and
//! then the labels in index order, so `write(read(write(h))) == write(h)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing vertex count")]
    MissingHeader,
    #[error("line {line}")]
    Invalid {
        line: usize,
        #[source]
        source: HypergraphError,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut labels: Vec<(usize, usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n.is_none() {
            let count = line
                .parse::<usize>()
                .map_err(|_| syntax(lineno, format!("expected vertex count, found {line:?}")))?;
            n = Some(count);
            continue;
        }
        if let Some(rest) = line.strip_prefix("label") {
            if rest.starts_with(char::is_whitespace) {
                let mut parts = rest.split_whitespace();
                let v = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| syntax(lineno, "label line needs a vertex index"))?;
                let name = parts
                    .next()
                    .ok_or_else(|| syntax(lineno, "label line needs a name"))?;
                if parts.next().is_some() {
                    return Err(syntax(lineno, "label names cannot contain whitespace"));
                }
                labels.push((lineno, v, name.to_string()));
                continue;
            }
        }
        if line == "-" {
            edges.push((lineno, Vec::new()));
            continue;
        }
        let edge = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| syntax(lineno, format!("bad vertex index {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        edges.push((lineno, edge));
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    // Validate edge by edge so errors carry the offending line.
    for (lineno, e) in &edges {
        Hypergraph::new(n, [e.iter().copied()])
            .map_err(|source| ParseError::Invalid { line: *lineno, source })?;
    }
    let mut h = Hypergraph::new(n, edges.iter().map(|(_, e)| e.iter().copied())).map_err(
        |source| {
            let line = match &source {
                HypergraphError::DuplicateEdge { edge } => edges
                    .iter()
                    .filter(|(_, e)| {
                        let mut s = e.clone();
                        s.sort_unstable();
                        &s == edge
                    })
                    .nth(1)
                    .map_or(0, |(l, _)| *l),
                _ => 0,
            };
            ParseError::Invalid { line, source }
        },
    )?;
    for (lineno, v, name) in labels {
        h.set_label(v, name)
            .map_err(|source| ParseError::Invalid { line: lineno, source })?;
    }
    Ok(h)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", h.n_vertices());
    for e in h.edges() {
        if e.is_empty() {
            out.push_str("-\n");
            continue;
        }
        let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    for (v, name) in h.labels() {
        let _ = writeln!(out, "label {v} {name}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_labels_and_edges() {
        let text = "# a path\n3\n0 1\n\n1 2\nlabel 0 a\nlabel 2 c\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.n_vertices(), 3);
        assert_eq!(h.n_edges(), 2);
        assert_eq!(h.label(2), Some("c"));
        assert_eq!(write_hypergraph(&h), "3\n0 1\n1 2\nlabel 0 a\nlabel 2 c\n");
    }

    #[test]
    fn sorted_input_round_trips_byte_for_byte() {
        let text = "5\n0 1 2\n1 3 4\n-\nlabel 1 v_2\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(write_hypergraph(&h), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_hypergraph("# nothing\n"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_hypergraph("x\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3\n0 1\n0 q\n"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3\n0 1\n1 5\n"),
            Err(ParseError::Invalid { line: 3, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3\n0 1\n2\n1 0\n"),
            Err(ParseError::Invalid { line: 4, source: HypergraphError::DuplicateEdge { .. } })
        ));
        assert!(matches!(
            parse_hypergraph("3\nlabel 7 x\n"),
            Err(ParseError::Invalid { line: 2, .. })
        ));
    }
}
