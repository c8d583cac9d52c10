//! Three-way branching warm-start search on a benchmark instance.
//!
//! `cargo run --release --example triple_color`

use std::path::Path;

use kcolor::coloring::loss_hard;
use kcolor::graph::{read_graph_file, ParseOptions};
use kcolor::rng::SearchRng;
use kcolor::search::triple_color_from_scratch;

fn main() -> kcolor::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/queen6_6.col");
    let g = read_graph_file(&path, ParseOptions::default())?;
    for k in 5..=8 {
        let mut best = usize::MAX;
        let mut calls = 0;
        for seed in 0..20 {
            let out = triple_color_from_scratch(&g, k, &mut SearchRng::new(seed))?;
            assert_eq!(out.loss, loss_hard(&g, &out.coloring)?);
            best = best.min(out.loss);
            calls = out.discrete_calls;
        }
        println!("queen6_6 k={k}: best of 20 = {best}, local searches per run = {calls}");
    }
    Ok(())
}
