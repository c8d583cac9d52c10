use std::fmt::Write as _;
use std::ops::RangeInclusive;

use super::trials::Solver;
use crate::coloring::{loss_hard, HardColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseStudyPlan {
    pub k_range: RangeInclusive<usize>,
    /// Budget whose best loss is reported; must lie in `k_range`.
    pub table_k: usize,
    pub runs: usize,
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudyRow {
    pub name: String,
    pub order: usize,
    pub size: usize,
    pub k: usize,
    /// Best loss over the runs at `k`.
    pub best_loss: usize,
    /// Best coloring found at `k`.
    pub best: HardColoring,
    /// Smallest budget with at least one proper run.
    pub chi: Option<usize>,
    /// Smallest budget with every run proper.
    pub chi_star: Option<usize>,
    /// A proper coloring certifying `chi`.
    pub witness: Option<HardColoring>,
}

/// Runs `solver` `plan.runs` times for every budget in the range.
pub fn case_study(
    name: &str,
    g: &Graph,
    solver: &Solver,
    plan: &CaseStudyPlan,
) -> Result<CaseStudyRow> {
    if plan.k_range.is_empty() || *plan.k_range.start() == 0 {
        return Err(Error::invalid("budget range must be nonempty and start at 1 or more"));
    }
    if !plan.k_range.contains(&plan.table_k) {
        return Err(Error::invalid(format!(
            "reported budget {} outside {:?}",
            plan.table_k, plan.k_range
        )));
    }
    if plan.runs == 0 {
        return Err(Error::invalid("need at least one run per budget"));
    }
    let mut chi = None;
    let mut chi_star = None;
    let mut witness = None;
    let mut table = None;

    for k in plan.k_range.clone() {
        let mut best: Option<(HardColoring, usize)> = None;
        let mut proper = 0;
        for run in 0..plan.runs {
            let seed = derive_seed(derive_seed(plan.base_seed, k as u64), run as u64);
            let c = solver.solve(g, k, seed)?;
            let loss = loss_hard(g, &c)?;
            proper += usize::from(loss == 0);
            if best.as_ref().is_none_or(|b| loss < b.1) {
                best = Some((c, loss));
            }
        }
        let (best_c, best_loss) = best.expect("runs >= 1");
        log::info!("{name}: k={k} best={best_loss} proper={proper}/{}", plan.runs);
        if best_loss == 0 && chi.is_none() {
            // certify before reporting
            if loss_hard(g, &best_c)? != 0 {
                return Err(Error::invalid("witness failed re-verification"));
            }
            chi = Some(k);
            witness = Some(best_c.clone());
        }
        if proper == plan.runs && chi_star.is_none() {
            chi_star = Some(k);
        }
        if k == plan.table_k {
            table = Some((best_c, best_loss));
        }
    }
    let (best, best_loss) = table.expect("table_k in range");
    Ok(CaseStudyRow {
        name: name.to_string(),
        order: g.n(),
        size: g.m(),
        k: plan.table_k,
        best_loss,
        best,
        chi,
        chi_star,
        witness,
    })
}

/// CSV (`name,order,size,k,best_loss,chi,chi_star`) and aligned text renderings.
pub fn case_study_table(rows: &[CaseStudyRow]) -> (String, String) {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let mut csv = String::from("name,order,size,k,best_loss,chi,chi_star\n");
    let mut text = format!(
        "{:<14} {:>6} {:>6} {:>4} {:>9} {:>4} {:>5}\n",
        "graph", "order", "size", "k", "best_loss", "chi", "chi*"
    );
    for r in rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.name,
            r.order,
            r.size,
            r.k,
            r.best_loss,
            opt(r.chi),
            opt(r.chi_star)
        );
        let _ = writeln!(
            text,
            "{:<14} {:>6} {:>6} {:>4} {:>9} {:>4} {:>5}",
            r.name,
            r.order,
            r.size,
            r.k,
            r.best_loss,
            opt(r.chi),
            opt(r.chi_star)
        );
    }
    (csv, text)
}
