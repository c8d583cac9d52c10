//! Chromatic upper bounds from repeated runs over a range of budgets.
//!
//! `cargo run --release --example case_study`

use std::path::Path;

use kcolor::coloring::loss_hard;
use kcolor::experiments::{case_study, case_study_table, Algorithm, CaseStudyPlan, Solver};
use kcolor::graph::{read_graph_file, ParseOptions};

fn main() -> kcolor::Result<()> {
    let mut rows = Vec::new();
    for (name, k) in [("myciel4", 5), ("queen5_5", 5), ("queen6_6", 7)] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("data/{name}.col"));
        let g = read_graph_file(&path, ParseOptions::default())?;
        let plan = CaseStudyPlan {
            k_range: 3..=8,
            table_k: k,
            runs: 20,
            base_seed: 1,
        };
        let row = case_study(name, &g, &Solver::new(Algorithm::Triple), &plan)?;
        if let Some(w) = &row.witness {
            assert_eq!(loss_hard(&g, w)?, 0);
        }
        rows.push(row);
    }
    let (_, text) = case_study_table(&rows);
    print!("{text}");
    Ok(())
}
