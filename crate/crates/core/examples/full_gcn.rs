//! GCN with recursive warm starts: each budget starts from a network pretrained
//! toward the previous budget's coloring.
//!
//! `cargo run --release --example full_gcn`

use kcolor::gcn::{full_gcn, mod_gcn, TrainConfig};
use kcolor::graph::gen_erdos_renyi;

fn main() -> kcolor::Result<()> {
    let g = gen_erdos_renyi(60, 6.0, 4)?;
    let cfg = TrainConfig {
        features: 64,
        learning_rate: 0.01,
        ..TrainConfig::default()
    };
    let cold = mod_gcn(&g, 4, &cfg, None)?;
    let warm = full_gcn(&g, 4, &cfg)?;
    println!("G(60, d=6) with 4 colors");
    println!("  cold start: hard loss {}", cold.hard_loss);
    println!("  warm start: hard loss {}", warm.hard_loss);
    Ok(())
}
