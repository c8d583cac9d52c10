use std::fmt::Write as _;

use super::stats::{density_grid, search_threshold};
use crate::error::{Error, Result};
use crate::gcn::{detect_oversmoothing, mod_gcn, TrainConfig};
use crate::graph::gen_erdos_renyi;
use crate::rng::derive_seed;

/// Uniformity tolerance used to call a run oversmoothed.
pub const OVERSMOOTH_TOL: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct OversmoothRow {
    pub n: usize,
    pub depth: usize,
    pub dropout: f64,
    pub density: Option<f64>,
}

/// Smallest edge density on the grid `0.10..=1.00` at which an `n`-color run on
/// `G(n, p)` ends in a near-uniform soft coloring. Binary search; assumes the
/// outcome is monotone in the density.
pub fn oversmoothing_threshold(
    n: usize,
    depth: usize,
    dropout: f64,
    base_seed: u64,
    train: &TrainConfig,
) -> Result<Option<f64>> {
    if !(1..=2).contains(&depth) {
        return Err(Error::invalid(format!("depth {depth} outside 1..=2")));
    }
    if n < 2 {
        return Err(Error::invalid("need at least 2 vertices"));
    }
    search_threshold(&density_grid(), |p| {
        let step = (p * 100.0).round() as u64;
        let g = gen_erdos_renyi(n, p * (n - 1) as f64, derive_seed(base_seed, step))?;
        let cfg = TrainConfig {
            depth,
            dropout,
            seed: derive_seed(base_seed ^ 0x6f76_6572, step),
            ..train.clone()
        };
        let out = mod_gcn(&g, n, &cfg, None)?;
        let hit = detect_oversmoothing(&out.last, OVERSMOOTH_TOL);
        log::info!("n={n} depth={depth} dropout={dropout} p={p:.2}: oversmoothed={hit}");
        Ok(hit)
    })
}

/// CSV with header `n,depth,dropout,density`; a missing threshold is `none`.
pub fn oversmooth_csv(rows: &[OversmoothRow]) -> String {
    let mut out = String::from("n,depth,dropout,density\n");
    for r in rows {
        let density = r.density.map_or("none".to_string(), |p| format!("{p:.2}"));
        let _ = writeln!(out, "{},{},{},{}", r.n, r.depth, r.dropout, density);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let rows = [
            OversmoothRow {
                n: 30,
                depth: 2,
                dropout: 0.1,
                density: Some(0.5),
            },
            OversmoothRow {
                n: 40,
                depth: 1,
                dropout: 0.0,
                density: None,
            },
        ];
        assert_eq!(
            oversmooth_csv(&rows),
            "n,depth,dropout,density\n30,2,0.1,0.50\n40,1,0,none\n"
        );
    }

    #[test]
    fn rejects_bad_depth() {
        assert!(oversmoothing_threshold(10, 0, 0.0, 0, &TrainConfig::default()).is_err());
        assert!(oversmoothing_threshold(10, 3, 0.0, 0, &TrainConfig::default()).is_err());
    }
}
