//! Reading DIMACS `.col` files and writing them back.
//!
//! `cargo run --release --example read_dimacs [path.col]`

use std::path::PathBuf;

use kcolor::graph::{parse_graph, read_graph_file, write_dimacs, GraphFormat, ParseOptions};

fn main() -> kcolor::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/jean.col")
    });
    let g = read_graph_file(&path, ParseOptions::default())?;
    let max_degree = g.degrees().into_iter().max().unwrap_or(0);
    println!("{}: n={} m={} max degree {max_degree}", path.display(), g.n(), g.m());

    let (trimmed, kept) = g.without_isolated();
    println!("without isolated vertices: n={} (dropped {})", trimmed.n(), g.n() - kept.len());

    let text = write_dimacs(&g);
    let back = parse_graph(&text, GraphFormat::DimacsCol, ParseOptions::default())?;
    println!("round trip preserves the graph: {}", back == g);
    Ok(())
}
