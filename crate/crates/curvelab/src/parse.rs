//! Text format for dual graphs, one directive per line:
//!
//! ```text
//! # comment
//! vertex <id> genus=<n> loops=<k>
//! edge <id1> <id2> [label]
//! ```
//!
//! Vertices are indexed in order of appearance; `loops=<k>` adds `k`
//! self-edges. Errors carry the offending line number.

use thiserror::Error;

use crate::dual_graph::{DualGraph, Edge, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: vertex `{id}` already declared")]
    DuplicateVertex { line: usize, id: String },
    #[error("no vertices declared")]
    Empty,
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn keyed_value<'a>(
    line: usize,
    token: Option<&'a str>,
    key: &str,
) -> Result<&'a str, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("expected `{key}=<n>`")))?;
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{key}=<n>`, found `{token}`")))
}

/// Parses the curve-description format into a connected dual graph.
pub fn parse_graph(text: &str) -> Result<DualGraph, ParseError> {
    let mut ids: Vec<String> = Vec::new();
    let mut weights: Vec<u32> = Vec::new();
    let mut loop_counts: Vec<u32> = Vec::new();
    let mut plain_edges: Vec<(usize, Edge)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next().unwrap() {
            "vertex" => {
                let id = tokens
                    .next()
                    .ok_or_else(|| syntax(line, "expected `vertex <id> genus=<n> loops=<k>`"))?;
                if ids.iter().any(|known| known == id) {
                    return Err(ParseError::DuplicateVertex {
                        line,
                        id: id.into(),
                    });
                }
                let genus = keyed_value(line, tokens.next(), "genus")?;
                let loops = keyed_value(line, tokens.next(), "loops")?;
                let genus: u32 = genus
                    .parse()
                    .map_err(|_| syntax(line, format!("genus must be a nonnegative integer, found `{genus}`")))?;
                let loops: u32 = loops
                    .parse()
                    .map_err(|_| syntax(line, format!("loops must be a nonnegative integer, found `{loops}`")))?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, format!("unexpected token `{extra}`")));
                }
                ids.push(id.into());
                weights.push(genus);
                loop_counts.push(loops);
            }
            "edge" => {
                let u = tokens
                    .next()
                    .ok_or_else(|| syntax(line, "expected `edge <id1> <id2> [label]`"))?;
                let v = tokens
                    .next()
                    .ok_or_else(|| syntax(line, "expected `edge <id1> <id2> [label]`"))?;
                let label = tokens.next().map(String::from);
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, format!("unexpected token `{extra}`")));
                }
                let index_of = |id: &str| {
                    ids.iter().position(|known| known == id).ok_or_else(|| {
                        ParseError::UnknownVertex {
                            line,
                            id: id.into(),
                        }
                    })
                };
                let u = index_of(u)?;
                let v = index_of(v)?;
                let label = label.unwrap_or_else(|| format!("e{}", plain_edges.len()));
                plain_edges.push((line, Edge { u, v, label }));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    if ids.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut edges = Vec::new();
    for (i, &loops) in loop_counts.iter().enumerate() {
        for t in 0..loops {
            edges.push(Edge {
                u: i,
                v: i,
                label: format!("{}.loop{t}", ids[i]),
            });
        }
    }
    edges.extend(plain_edges.into_iter().map(|(_, e)| e));
    Ok(DualGraph::with_names(weights, ids, edges)?)
}

/// Parses a multidegree literal: `(2,3,-1)` or `2,3,-1`.
pub fn parse_multidegree(text: &str) -> Result<Vec<i64>, ParseError> {
    let inner = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')');
    inner
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| syntax(
                1,
                format!("multidegree entry `{}` is not an integer", part.trim()),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_binary_curve() {
        let graph = parse_graph(
            "# two lines in seven nodes\n\
             vertex C1 genus=0 loops=0\n\
             vertex C2 genus=0 loops=0\n\
             edge C1 C2 n1\n\
             edge C1 C2 n2\n\
             edge C1 C2 n3\n\
             edge C1 C2 n4\n\
             edge C1 C2 n5\n\
             edge C1 C2 n6\n\
             edge C1 C2 n7\n",
        )
        .unwrap();
        assert_eq!(graph.vertex_count(), 2);
        assert_eq!(graph.edges().len(), 7);
        assert_eq!(graph.arithmetic_genus(), 6);
        assert_eq!(graph.name(0), "C1");
    }

    #[test]
    fn loops_expand_to_self_edges() {
        let graph = parse_graph(
            "vertex A genus=1 loops=2\nvertex B genus=0 loops=0\nedge A B\n",
        )
        .unwrap();
        assert_eq!(
            graph.edges().iter().filter(|e| e.is_loop()).count(),
            2
        );
        assert_eq!(graph.weight(0), 1);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(parse_graph("# nothing\n"), Err(ParseError::Empty));
    }

    #[test]
    fn unknown_vertex_is_line_numbered() {
        let err = parse_graph("vertex A genus=0 loops=1\nedge A B\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownVertex {
                line: 2,
                id: "B".into()
            }
        );
    }

    #[test]
    fn negative_genus_is_rejected() {
        let err = parse_graph("vertex A genus=-1 loops=0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn duplicate_vertex_is_rejected() {
        let err =
            parse_graph("vertex A genus=0 loops=1\nvertex A genus=0 loops=0\n").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateVertex { line: 2, .. }));
    }

    #[test]
    fn garbled_directives_are_syntax_errors() {
        assert!(matches!(
            parse_graph("vertrex A genus=0 loops=0\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("vertex A genus=zero loops=0\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("vertex A genus=0 loops=0 extra\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn multidegree_literals() {
        assert_eq!(parse_multidegree("(2,3,-1)").unwrap(), vec![2, 3, -1]);
        assert_eq!(parse_multidegree("0, 1").unwrap(), vec![0, 1]);
        assert!(parse_multidegree("(2,x)").is_err());
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let err = parse_graph("vertex A genus=1 loops=0\nvertex B genus=1 loops=0\n")
            .unwrap_err();
        assert!(matches!(err, ParseError::Graph(GraphError::Disconnected(_))));
    }
}
