//! Paired trial batteries, confidence intervals, and a regression over graph
//! size.
//!
//! `cargo run --release --example trials`

use kcolor::experiments::{
    confidence_interval, fit_and_extrapolate, records_to_csv, run_trials, summarize, summary_text,
    Algorithm, GraphSpec, Solver,
};

fn main() -> kcolor::Result<()> {
    let mut records = Vec::new();
    for algo in [Algorithm::Discrete, Algorithm::Full, Algorithm::Triple] {
        for n in [50, 100, 150, 200] {
            let spec = GraphSpec::ErdosRenyi { n, d: 10.0 };
            records.extend(run_trials(&Solver::new(algo), &spec, 5, 30, 9, 1)?);
        }
    }
    print!("{}", summary_text(&summarize(&records)));

    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.algo == Algorithm::Full)
        .map(|r| (r.n as f64, r.loss as f64))
        .collect();
    let (fit, predicted) = fit_and_extrapolate(&points, &[5000.0, 10000.0])?;
    println!("full: loss ~ {:.4} n + {:.3}; predicted at n=5000, 10000: {predicted:.1?}", fit.slope, fit.intercept);

    let full_200: Vec<f64> = points.iter().filter(|p| p.0 == 200.0).map(|p| p.1).collect();
    let ci = confidence_interval(&full_200)?;
    println!("full at n=200: {:.2} +- {:.2}", ci.mean, ci.halfwidth);

    let csv = records_to_csv(&records, false);
    println!("csv: {} rows, header {}", csv.lines().count() - 1, csv.lines().next().unwrap_or(""));
    Ok(())
}
