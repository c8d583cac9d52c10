//! Text formats.
//!
//! * DIMACS `.col`: `c` comment lines, a `p edge N M` header (`p col` is
//!   accepted too), then `e u v` lines with 1-based endpoints. A declared edge
//!   count that disagrees with the actual number of distinct edges only logs a
//!   warning.
//! * Edge list: one whitespace-separated pair per line, `#` or `%` comments.
//!   A `# n=<N>` comment declares the vertex count; labels are then 0-based,
//!   or 1-based when the smallest label is at least 1. Without a declaration,
//!   the distinct labels are compacted to `0..n` in ascending order.
//!
//! [`write_edge_list`] always emits the declaration, so isolated vertices
//! survive a round trip.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    DimacsCol,
    EdgeList,
}

impl GraphFormat {
    /// `.col` files are DIMACS, everything else is treated as an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("col") => GraphFormat::DimacsCol,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" | "dimacs-col" | "col" => Ok(GraphFormat::DimacsCol),
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            other => Err(Error::invalid(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Remove degree-0 vertices after parsing.
    pub drop_isolated: bool,
}

pub fn parse_graph(text: &str, format: GraphFormat, opts: ParseOptions) -> Result<Graph> {
    let g = match format {
        GraphFormat::DimacsCol => parse_dimacs(text)?,
        GraphFormat::EdgeList => parse_edge_list(text)?,
    };
    Ok(if opts.drop_isolated {
        g.without_isolated().0
    } else {
        g
    })
}

/// Reads a graph file, picking the format from the extension.
pub fn read_graph_file(path: &Path, opts: ParseOptions) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text, GraphFormat::from_path(path), opts)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate `p` header"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(Error::parse(line_no, "expected `p edge N M`")),
                }
                let n = next_number(&mut tok, line_no, "vertex count")?;
                let m = next_number(&mut tok, line_no, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header
                    .ok_or_else(|| Error::parse(line_no, "edge line before the `p` header"))?;
                let u = next_number(&mut tok, line_no, "endpoint")?;
                let v = next_number(&mut tok, line_no, "endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(Error::VertexOutOfRange { vertex: w, n });
                    }
                }
                if u == v {
                    log::warn!("line {line_no}: ignoring self-loop on vertex {u}");
                    continue;
                }
                pairs.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::parse(line_no, format!("unexpected line type `{other}`")));
            }
            None => {}
        }
    }

    let (n, declared) = header.ok_or(Error::EmptyInput)?;
    let g = Graph::from_edges(n, pairs)?;
    if g.m() != declared {
        log::warn!(
            "header declares {declared} edges but {} distinct edges were read",
            g.m()
        );
    }
    Ok(g)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#').or_else(|| line.strip_prefix('%')) {
            if let Some(rest) = comment.trim().strip_prefix("n=") {
                let n = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad `# n=` declaration"))?;
                declared_n = Some(n);
            }
            continue;
        }
        let mut tok = line.split_whitespace();
        let u = next_number(&mut tok, line_no, "endpoint")?;
        let v = next_number(&mut tok, line_no, "endpoint")?;
        if tok.next().is_some_and(|t| t.parse::<f64>().is_err()) {
            return Err(Error::parse(line_no, "expected `u v`"));
        }
        pairs.push((u, v));
    }

    if pairs.is_empty() && declared_n.is_none() {
        return Err(Error::EmptyInput);
    }
    pairs.retain(|&(u, v)| {
        if u == v {
            log::warn!("ignoring self-loop on vertex {u}");
        }
        u != v
    });

    match declared_n {
        Some(n) => {
            let base = match pairs.iter().map(|&(u, v)| u.min(v)).min() {
                Some(0) | None => 0,
                Some(_) => 1,
            };
            Graph::from_edges(n, pairs.into_iter().map(|(u, v)| (u - base, v - base)))
        }
        None => {
            let labels: BTreeSet<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
            let labels: Vec<usize> = labels.into_iter().collect();
            let index = |x: usize| labels.binary_search(&x).expect("label collected above");
            Graph::from_edges(
                labels.len(),
                pairs.iter().map(|&(u, v)| (index(u), index(v))),
            )
        }
    }
}

fn next_number<'a, T: FromStr>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<T> {
    let t = tok
        .next()
        .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{t}`")))
}

/// Serializes as a 0-based edge list with a `# n=` declaration.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * g.m() + 16);
    let _ = writeln!(out, "# n={}", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Serializes in DIMACS `.col` format.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * g.m() + 32);
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dimacs(text: &str) -> Result<Graph> {
        parse_graph(text, GraphFormat::DimacsCol, ParseOptions::default())
    }

    fn edges(text: &str) -> Result<Graph> {
        parse_graph(text, GraphFormat::EdgeList, ParseOptions::default())
    }

    #[test]
    fn minimal_dimacs() {
        let g = dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn dimacs_comments_duplicates_and_bad_count() {
        let g = dimacs("c hello\np edge 3 9\ne 1 2\ne 2 1\nc mid\ne 3 2\n").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(dimacs(""), Err(Error::EmptyInput)));
        assert!(matches!(dimacs("c only comments\n"), Err(Error::EmptyInput)));
        assert!(matches!(dimacs("p edge x 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(dimacs("p graph 3 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(dimacs("e 1 2\np edge 3 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            dimacs("p edge 3 1\ne 1 4\n"),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            dimacs("p edge 3 1\ne 0 1\n"),
            Err(Error::VertexOutOfRange { vertex: 0, .. })
        ));
    }

    #[test]
    fn drop_isolated_flag() {
        let g = parse_graph(
            "p edge 5 2\ne 1 2\ne 4 2\n",
            GraphFormat::DimacsCol,
            ParseOptions {
                drop_isolated: true,
            },
        )
        .unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn edge_list_one_based_is_compacted() {
        let g = edges("1 2\n2 3\n# comment\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_sparse_labels_compacted() {
        let g = edges("10 5000\n5000 7\n").unwrap();
        assert_eq!(g.n(), 3);
        // 7 -> 0, 10 -> 1, 5000 -> 2
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn edge_list_declared_count_keeps_isolated() {
        let g = edges("# n=5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        let g1 = edges("# n=4\n1 2\n3 4\n").unwrap();
        assert_eq!(g1.edges(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(edges(""), Err(Error::EmptyInput)));
        assert!(matches!(edges("1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(edges("a b\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            edges("# n=2\n0 2\n"),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn writers_round_trip() {
        let g = Graph::from_edges(6, [(0, 1), (2, 4), (1, 4)]).unwrap();
        assert_eq!(edges(&write_edge_list(&g)).unwrap(), g);
        assert_eq!(dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(GraphFormat::from_path(Path::new("a/b.col")), GraphFormat::DimacsCol);
        assert_eq!(GraphFormat::from_path(Path::new("k3.edges")), GraphFormat::EdgeList);
    }
}
