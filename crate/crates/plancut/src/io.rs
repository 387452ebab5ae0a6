//! The shared graph text format.
//!
//! ```text
//! # comment
//! n m
//! u v          (m edge lines, 1-based)
//! rot u: v1 v2 ... vd   (optional embedding block)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::embed::RotationSystem;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
    #[error("rotation of vertex {0} is not a permutation of its adjacency list")]
    BadRotation(Vertex),
}

#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut rot_lines: Vec<(usize, Vertex, Vec<Vertex>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("rot ") {
            let (v_part, list_part) = rest
                .split_once(':')
                .ok_or_else(|| ParseError::Line(lineno, "rot line needs `:`".into()))?;
            let v: Vertex = v_part
                .trim()
                .parse()
                .map_err(|_| ParseError::Line(lineno, "bad vertex in rot line".into()))?;
            let order = parse_numbers(list_part, lineno)?;
            rot_lines.push((lineno, v, order));
            continue;
        }
        let nums = parse_numbers(line, lineno)?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(ParseError::Line(lineno, "header must be `n m`".into()));
                }
                header = Some((nums[0], nums[1]));
            }
            Some(_) => {
                if nums.len() != 2 {
                    return Err(ParseError::Line(lineno, "edge line must be `u v`".into()));
                }
                edges.push((nums[0], nums[1]));
            }
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = Graph::from_edges(n, &edges)?;

    let rotation = if rot_lines.is_empty() {
        None
    } else {
        let mut order: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
        for (lineno, v, list) in rot_lines {
            if v == 0 || v > n {
                return Err(ParseError::Line(lineno, format!("rot vertex {v} out of range")));
            }
            order[v] = list;
        }
        let rot = RotationSystem::new(order);
        rot.check_permutations(&graph)
            .map_err(ParseError::BadRotation)?;
        Some(rot)
    };

    Ok(ParsedGraph { graph, rotation })
}

fn parse_numbers(s: &str, lineno: usize) -> Result<Vec<usize>, ParseError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| ParseError::Line(lineno, format!("bad number `{tok}`")))
        })
        .collect()
}

/// Serializes a graph (and optional embedding) in the shared format.
/// Output is byte-stable: edges ascending with `u < v`, rot blocks by vertex.
pub fn write_graph(graph: &Graph, rotation: Option<&RotationSystem>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.n(), graph.m());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(rot) = rotation {
        for v in graph.vertices() {
            let order = rot.order(v);
            if order.is_empty() {
                continue;
            }
            let list: Vec<String> = order.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "rot {v}: {}", list.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_with_rotation() {
        let (g, rot) = crate::generate::antiprism(4).unwrap();
        let text = write_graph(&g, Some(&rot));
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(parsed.graph, g);
        let r = parsed.rotation.unwrap();
        for v in g.vertices() {
            assert_eq!(r.order(v), rot.order(v));
        }
        assert_eq!(write_graph(&parsed.graph, Some(&r)), text);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("3 1\n1 x\n").unwrap_err();
        assert!(matches!(err, ParseError::Line(2, _)));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let p = parse_graph("# demo\n\n3 2\n1 2\n# mid\n2 3\n").unwrap();
        assert_eq!(p.graph.n(), 3);
        assert_eq!(p.graph.m(), 2);
    }

    #[test]
    fn rejects_incomplete_edge_list() {
        assert!(matches!(
            parse_graph("3 2\n1 2\n"),
            Err(ParseError::EdgeCount { .. })
        ));
    }
}
