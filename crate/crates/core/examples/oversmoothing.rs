//! Detecting collapse to uniform output on dense graphs and searching for the
//! density where it starts.
//!
//! `cargo run --release --example oversmoothing`

use kcolor::coloring::{loss_soft, LossSpec};
use kcolor::experiments::{oversmooth_csv, oversmoothing_threshold, OversmoothRow, OVERSMOOTH_TOL};
use kcolor::gcn::{detect_oversmoothing, mod_gcn, TrainConfig};
use kcolor::graph::{gen_family, FamilySpec};

fn main() -> kcolor::Result<()> {
    let n = 20;
    let g = gen_family(&FamilySpec::Complete(n))?;
    let cfg = TrainConfig {
        depth: 2,
        dropout: 0.1,
        ..TrainConfig::default()
    };
    let out = mod_gcn(&g, n, &cfg, None)?;
    println!(
        "K{n}, depth 2: uniform output {}, standard soft loss {:.3} (uniform gives {})",
        detect_oversmoothing(&out.last, OVERSMOOTH_TOL),
        loss_soft(&g, &out.last, &LossSpec::standard(&g))?,
        (n as f64 - 1.0) / 2.0
    );

    let quick = TrainConfig {
        features: 32,
        ..TrainConfig::default()
    };
    let mut rows = Vec::new();
    for depth in [1, 2] {
        let density = oversmoothing_threshold(12, depth, 0.1, 1, &quick)?;
        rows.push(OversmoothRow { n: 12, depth, dropout: 0.1, density });
    }
    print!("{}", oversmooth_csv(&rows));
    Ok(())
}
