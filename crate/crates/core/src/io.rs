//! Plain-text formats.
//!
//! * Edge list: optional header `n <N>`, then one edge `u v` per line
//!   (0-based). Without a header the vertex count is one more than the
//!   largest endpoint.
//! * Partition: line `i` lists the vertices of part `i`, space separated.
//! * Embedding: one line `v x_1 … x_d` per vertex, coordinates written with
//!   17 significant digits so that they parse back to the same `f64`.
//!
//! In all three, `#` starts a comment and blank lines are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::framework::Embedding;
use crate::graph::{Graph, VertexPartition};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_token<T: FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} `{token}`"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut lines_of_edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens[0] == "n" {
            if declared_n.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "vertex-count header must come first and only once".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "expected `n <N>`".into(),
                });
            }
            declared_n = Some(parse_token::<usize>(tokens[1], line, "vertex count")?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `u v`, found {} fields", tokens.len()),
            });
        }
        let u: usize = parse_token(tokens[0], line, "vertex")?;
        let v: usize = parse_token(tokens[1], line, "vertex")?;
        edges.push((u, v));
        lines_of_edges.push(line);
    }
    let n = declared_n.unwrap_or_else(|| {
        edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
    });
    Graph::new(n, edges.iter().copied()).map_err(|err| {
        let line = match err {
            Error::SelfLoop(a) => edges.iter().position(|&(u, v)| u == a && v == a),
            Error::DuplicateEdge(a, b) => edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| (u.min(v), u.max(v)) == (a, b))
                .nth(1)
                .map(|(i, _)| i),
            Error::VertexOutOfRange { vertex, .. } => {
                edges.iter().position(|&(u, v)| u == vertex || v == vertex)
            }
            _ => None,
        };
        Error::Parse {
            line: line.map_or(0, |i| lines_of_edges[i]),
            message: err.to_string(),
        }
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.num_vertices());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses a partition of `0..n`; `n` defaults to one more than the largest
/// listed vertex.
pub fn parse_partition(text: &str, n: Option<usize>) -> Result<VertexPartition> {
    let mut parts = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in content_lines(text) {
        let part = tokens
            .iter()
            .map(|t| parse_token::<usize>(t, line, "vertex"))
            .collect::<Result<Vec<_>>>()?;
        parts.push(part);
        last_line = line;
    }
    let n = n.unwrap_or_else(|| parts.iter().flatten().map(|&v| v + 1).max().unwrap_or(0));
    VertexPartition::new(n, parts).map_err(|err| Error::Parse {
        line: last_line,
        message: err.to_string(),
    })
}

pub fn write_partition(p: &VertexPartition) -> String {
    let mut out = String::new();
    for part in p.parts() {
        let line: Vec<String> = part.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses an embedding; every vertex `0..N` must appear exactly once, in any
/// order, with the same number of coordinates.
pub fn parse_embedding(text: &str) -> Result<Embedding> {
    let mut rows: Vec<Option<Vec<f64>>> = Vec::new();
    let mut dim = None;
    for (line, tokens) in content_lines(text) {
        let v: usize = parse_token(tokens[0], line, "vertex")?;
        let coords = tokens[1..]
            .iter()
            .map(|t| parse_token::<f64>(t, line, "coordinate"))
            .collect::<Result<Vec<_>>>()?;
        match dim {
            None if coords.is_empty() => {
                return Err(Error::Parse {
                    line,
                    message: "vertex without coordinates".into(),
                })
            }
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {d} coordinates, found {}", coords.len()),
                })
            }
            Some(_) => {}
        }
        if rows.len() <= v {
            rows.resize(v + 1, None);
        }
        if rows[v].replace(coords).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("vertex {v} listed twice"),
            });
        }
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "empty embedding".into(),
    })?;
    let mut points = Vec::with_capacity(rows.len());
    for (v, row) in rows.into_iter().enumerate() {
        points.push(row.ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("vertex {v} has no coordinates"),
        })?);
    }
    Embedding::new(dim, &points)
}

pub fn write_embedding(p: &Embedding) -> String {
    let mut out = String::new();
    for (v, point) in p.points().enumerate() {
        write!(out, "{v}").unwrap();
        for x in point {
            write!(out, " {x:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::generic_embedding;
    use crate::graph::make_complete;
    use proptest::prelude::*;

    #[test]
    fn edge_list_with_header_and_comments() {
        let text = "# triangle plus an isolated vertex\nn 4\n0 1\n1 2 # middle\n\n2 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_without_header() {
        let g = parse_edge_list("0 3\n").unwrap();
        assert_eq!(g.num_vertices(), 4);
    }

    #[test]
    fn edge_list_errors_name_lines() {
        let err = parse_edge_list("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("0 1\n\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("n 2\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn partition_round_trip() {
        let p = parse_partition("0 3\n1 4 # second\n2\n", Some(5)).unwrap();
        assert_eq!(p.parts(), &[vec![0, 3], vec![1, 4], vec![2]]);
        assert_eq!(parse_partition(&write_partition(&p), Some(5)).unwrap(), p);
        assert!(parse_partition("0 1\n1 2\n", Some(3)).is_err());
    }

    #[test]
    fn embedding_errors() {
        assert!(parse_embedding("0 1.0 2.0\n1 3.0\n").is_err());
        assert!(parse_embedding("0 1.0\n2 3.0\n").is_err());
        assert!(parse_embedding("0 1.0\n0 3.0\n").is_err());
        let p = parse_embedding("1 0.5\n0 -1e-3\n").unwrap();
        assert_eq!(p.coords(), &[-1e-3, 0.5]);
    }

    #[test]
    fn generic_embedding_round_trips_exactly() {
        let p = generic_embedding(&make_complete(20).unwrap(), 3, 5);
        assert_eq!(parse_embedding(&write_embedding(&p)).unwrap(), p);
    }

    proptest! {
        #[test]
        fn embedding_text_round_trip(coords in prop::collection::vec(-1e300f64..1e300, 1..40), dim in 1usize..4) {
            let len = coords.len() / dim * dim;
            prop_assume!(len > 0);
            let p = Embedding::from_flat(dim, coords[..len].to_vec()).unwrap();
            prop_assert_eq!(parse_embedding(&write_embedding(&p)).unwrap(), p);
        }
    }
}
