//! Declaring a trial grid in `key = value` form and running it.
//!
//! `cargo run --release --example bench_config`

use kcolor::experiments::{records_to_csv, summarize, summary_text, BenchConfig};

const CONFIG: &str = "\
# two algorithms on the same graphs
family = er
n = 60, 120
d = 10, 16
k = auto
algos = discrete, full
trials = 10
seed = 1
";

fn main() -> kcolor::Result<()> {
    let cfg = BenchConfig::parse(CONFIG)?;
    for (spec, ks, seed) in cfg.cells()? {
        println!("cell {} k={ks:?} seed={seed:#x}", spec.label());
    }
    let records = cfg.run()?;
    print!("{}", summary_text(&summarize(&records)));
    print!("{}", records_to_csv(&records[..3], false));
    Ok(())
}
