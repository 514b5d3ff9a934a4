//! Text formats.
//!
//! Graph files are line oriented:
//!
//! ```text
//! # comment
//! vertex <token> [loop]
//! edge <token> <token>
//! ```
//!
//! Walks are comma separated tokens (`a,c,b,c,e`). Morphism map files hold
//! one `<source-token> <target-token>` pair per line.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let err = |message: String| Error::Parse { line, message };
        match parts.as_slice() {
            ["vertex", token] | ["vertex", token, "loop"] => {
                let v = b.vertex(token).map_err(|e| err(e.to_string()))?;
                if parts.len() == 3 {
                    b.edge_by_index(v, v);
                }
            }
            ["edge", x, y] => b.edge(x, y).map_err(|e| err(e.to_string()))?,
            _ => return Err(err(format!("malformed line {trimmed:?}"))),
        }
    }
    Ok(b.build())
}

/// Vertices in declaration order (loops flagged inline), then the non-loop
/// edges sorted by token.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.order() {
        out.push_str("vertex ");
        out.push_str(g.name(v));
        if g.is_looped(v) {
            out.push_str(" loop");
        }
        out.push('\n');
    }
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .filter(|(u, v)| u != v)
        .map(|(u, v)| {
            let (a, b) = (g.name(u), g.name(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str("edge ");
        out.push_str(a);
        out.push(' ');
        out.push_str(b);
        out.push('\n');
    }
    out
}

pub fn parse_walk_tokens(text: &str) -> Vec<String> {
    text.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

pub fn format_walk_tokens<S: AsRef<str>>(tokens: &[S]) -> String {
    tokens
        .iter()
        .map(|t| t.as_ref())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_map_file(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match trimmed.split_whitespace().collect::<Vec<_>>().as_slice() {
            [s, t] => pairs.push((s.to_string(), t.to_string())),
            _ => {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("expected `<source> <target>`, got {trimmed:?}"),
                })
            }
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_transcription() {
        let g = parse_graph("vertex a\nvertex b\nedge a b").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn terminal_from_loop_flag_or_edge() {
        let t1 = parse_graph("vertex v loop").unwrap();
        let t2 = parse_graph("vertex v\nedge v v").unwrap();
        assert_eq!(t1, t2);
        assert!(t1.is_looped(0));
        assert_eq!(t1.edge_count(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_graph("edge a b"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_graph("# c\nvertex a\nvertex a"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_graph("vertex a\nvertx b"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertex a-b"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("vertex a loop extra"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("vertex a\nvertex b\nedge a b\nedge b a").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn serialization_order() {
        let g = parse_graph("vertex z\nvertex a loop\nvertex m\nedge m z\nedge a z\nedge a m").unwrap();
        assert_eq!(
            serialize_graph(&g),
            "vertex z\nvertex a loop\nvertex m\nedge a m\nedge a z\nedge m z\n"
        );
    }

    #[test]
    fn map_file() {
        let pairs = parse_map_file("# f\na b\n\nc d\n").unwrap();
        assert_eq!(pairs, vec![("a".into(), "b".into()), ("c".into(), "d".into())]);
        assert!(matches!(parse_map_file("a b c"), Err(Error::Parse { line: 1, .. })));
    }
}
