//! Training the per-instance GCN on one graph and inspecting its trace.
//!
//! `cargo run --release --example mod_gcn`

use kcolor::gcn::{mod_gcn, trace_csv, TrainConfig};
use kcolor::graph::{gen_family, FamilySpec};

fn main() -> kcolor::Result<()> {
    let g = gen_family(&FamilySpec::Cycle(31))?;
    let mut cfg = TrainConfig::default().with_seed(2);
    cfg.set("features", "64")?;
    cfg.set("lr", "0.01")?;

    let out = mod_gcn(&g, 3, &cfg, None)?;
    println!(
        "C31 with 3 colors: {} epochs, best soft loss {:.4} at epoch {}, hard loss {}",
        out.trace.len(),
        out.best_loss,
        out.best_epoch,
        out.hard_loss
    );
    let csv = trace_csv(&out.trace);
    let lines: Vec<&str> = csv.lines().collect();
    println!("{}", lines[0]);
    for line in lines.iter().skip(1).step_by(lines.len() / 8 + 1) {
        println!("{line}");
    }
    Ok(())
}
