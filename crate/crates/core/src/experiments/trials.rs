use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::stats::{confidence_interval, Interval};
use crate::coloring::{loss_hard, HardColoring};
use crate::error::{Error, Result};
use crate::gcn::{full_gcn, mod_gcn, TrainConfig};
use crate::graph::{
    gen_erdos_renyi, gen_family, gen_max_planar, gen_regular, gen_replica, DegreeSequence,
    FamilySpec, Graph,
};
use crate::rng::{derive_seed, SearchRng};
use crate::search::{discrete_color, full_color, random_coloring, triple_color_from_scratch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Local search from a uniformly random coloring.
    Discrete,
    Full,
    Triple,
    ModGcn,
    FullGcn,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Discrete,
        Algorithm::Full,
        Algorithm::Triple,
        Algorithm::ModGcn,
        Algorithm::FullGcn,
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Discrete => "discrete",
            Algorithm::Full => "full",
            Algorithm::Triple => "triple",
            Algorithm::ModGcn => "mod-gcn",
            Algorithm::FullGcn => "full-gcn",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// An algorithm plus the training settings used by the GCN variants.
#[derive(Debug, Clone, PartialEq)]
pub struct Solver {
    pub algorithm: Algorithm,
    pub train: TrainConfig,
}

impl Solver {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            train: TrainConfig::default(),
        }
    }

    pub fn with_train(mut self, train: TrainConfig) -> Self {
        self.train = train;
        self
    }

    pub fn solve(&self, g: &Graph, k: usize, seed: u64) -> Result<HardColoring> {
        let mut rng = SearchRng::new(seed);
        match self.algorithm {
            Algorithm::Discrete => {
                let init = random_coloring(g.n(), k, &mut rng)?;
                discrete_color(g, k, &init, &mut rng)
            }
            Algorithm::Full => full_color(g, k, &mut rng),
            Algorithm::Triple => Ok(triple_color_from_scratch(g, k, &mut rng)?.coloring),
            Algorithm::ModGcn => Ok(mod_gcn(g, k, &self.train.clone().with_seed(seed), None)?.hard),
            Algorithm::FullGcn => Ok(full_gcn(g, k, &self.train.clone().with_seed(seed))?.hard),
        }
    }
}

/// Where trial graphs come from. Random families draw a fresh instance per
/// trial; the others reuse one graph.
#[derive(Debug, Clone)]
pub enum GraphSpec {
    ErdosRenyi { n: usize, d: f64 },
    Regular { n: usize, r: usize },
    MaxPlanar { n: usize },
    /// Replica of the degree sequence of a fresh maximal planar graph.
    PlanarReplica { n: usize },
    Family(FamilySpec),
    Named { name: String, graph: Arc<Graph> },
}

impl GraphSpec {
    pub fn named(name: impl Into<String>, graph: Graph) -> Self {
        GraphSpec::Named {
            name: name.into(),
            graph: Arc::new(graph),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GraphSpec::ErdosRenyi { .. } => "er".into(),
            GraphSpec::Regular { .. } => "regular".into(),
            GraphSpec::MaxPlanar { .. } => "max-planar".into(),
            GraphSpec::PlanarReplica { .. } => "replica".into(),
            GraphSpec::Family(f) => f.to_string(),
            GraphSpec::Named { name, .. } => name.clone(),
        }
    }

    /// Average-degree parameter, or `None` when it is a property of the instance.
    fn degree_param(&self) -> Option<f64> {
        match self {
            GraphSpec::ErdosRenyi { d, .. } => Some(*d),
            GraphSpec::Regular { r, .. } => Some(*r as f64),
            _ => None,
        }
    }

    pub fn instance(&self, seed: u64) -> Result<Arc<Graph>> {
        let g = match self {
            GraphSpec::ErdosRenyi { n, d } => gen_erdos_renyi(*n, *d, seed)?,
            GraphSpec::Regular { n, r } => gen_regular(*n, *r, seed)?,
            GraphSpec::MaxPlanar { n } => gen_max_planar(*n, seed)?,
            GraphSpec::PlanarReplica { n } => {
                let planar = gen_max_planar(*n, seed)?;
                gen_replica(&DegreeSequence::of(&planar), derive_seed(seed, 1))?
            }
            GraphSpec::Family(f) => gen_family(f)?,
            GraphSpec::Named { graph, .. } => return Ok(Arc::clone(graph)),
        };
        Ok(Arc::new(g))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub algo: Algorithm,
    pub family: String,
    pub n: usize,
    pub d: f64,
    pub k: usize,
    pub trial: usize,
    pub seed: u64,
    pub loss: usize,
    pub proper: bool,
    /// Wall time of the solve, in milliseconds.
    pub ms: f64,
}

pub const CSV_HEADER: &str = "algo,family,n,d,k,trial,seed,loss,proper,ms";

/// Runs `trials` independent solves. Trial `i` uses seed
/// `derive_seed(base_seed, i)`; its graph and solver seeds are derived from it,
/// so the graph sequence does not depend on the algorithm. Records come back in
/// trial order for any `jobs`.
pub fn run_trials(
    solver: &Solver,
    spec: &GraphSpec,
    k: usize,
    trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<Vec<TrialRecord>> {
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let one = |trial: usize| -> Result<TrialRecord> {
        let seed = derive_seed(base_seed, trial as u64);
        let g = spec.instance(derive_seed(seed, 0))?;
        let start = Instant::now();
        let coloring = solver.solve(&g, k, derive_seed(seed, 1))?;
        let ms = (start.elapsed().as_secs_f64() * 1e3).max(f64::MIN_POSITIVE);
        let loss = loss_hard(&g, &coloring)?;
        let d = spec
            .degree_param()
            .unwrap_or_else(|| 2.0 * g.m() as f64 / g.n().max(1) as f64);
        Ok(TrialRecord {
            algo: solver.algorithm,
            family: spec.label(),
            n: g.n(),
            d,
            k,
            trial,
            seed,
            loss,
            proper: loss == 0,
            ms,
        })
    };

    if jobs <= 1 {
        return (0..trials).map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| (0..trials).into_par_iter().map(one).collect())
}

/// CSV with [`CSV_HEADER`]. The `ms` column is left empty unless `timing` is
/// set, which keeps reruns byte-identical.
pub fn records_to_csv(records: &[TrialRecord], timing: bool) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},",
            r.algo, r.family, r.n, r.d, r.k, r.trial, r.seed, r.loss, r.proper
        );
        if timing {
            let _ = write!(out, "{:.3}", r.ms);
        }
        out.push('\n');
    }
    out
}

/// Per-cell aggregate of trial records.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algo: Algorithm,
    pub family: String,
    pub n: usize,
    pub d: f64,
    pub k: usize,
    pub trials: usize,
    pub proper: usize,
    pub loss: Interval,
}

/// Groups records by `(algo, family, n, d, k)` in first-seen order. Cells with
/// a single trial get a zero-width interval.
pub fn summarize(records: &[TrialRecord]) -> Vec<Summary> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<usize, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.algo, r.family.as_str(), r.n, r.d.to_bits(), r.k);
        let idx = match order.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                order.push(key);
                order.len() - 1
            }
        };
        groups.entry(idx).or_default().push(r);
    }
    groups
        .into_values()
        .map(|rs| {
            let losses: Vec<f64> = rs.iter().map(|r| r.loss as f64).collect();
            let loss = confidence_interval(&losses).unwrap_or(Interval {
                mean: losses[0],
                halfwidth: 0.0,
            });
            let first = rs[0];
            Summary {
                algo: first.algo,
                family: first.family.clone(),
                n: first.n,
                d: first.d,
                k: first.k,
                trials: rs.len(),
                proper: rs.iter().filter(|r| r.proper).count(),
                loss,
            }
        })
        .collect()
}

/// Aligned plain-text table of summaries.
pub fn summary_text(rows: &[Summary]) -> String {
    let mut out = format!(
        "{:<10} {:<14} {:>6} {:>6} {:>4} {:>7} {:>7} {:>10} {:>9}\n",
        "algo", "family", "n", "d", "k", "trials", "proper", "mean", "+-95%"
    );
    for s in rows {
        let _ = writeln!(
            out,
            "{:<10} {:<14} {:>6} {:>6} {:>4} {:>7} {:>7} {:>10.3} {:>9.3}",
            s.algo.to_string(),
            s.family,
            s.n,
            s.d,
            s.k,
            s.trials,
            s.proper,
            s.loss.mean,
            s.loss.halfwidth
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!(matches!("tabu".parse::<Algorithm>(), Err(Error::UnknownAlgorithm(_))));
    }

    #[test]
    fn single_trial_on_fixed_graph() {
        let spec = GraphSpec::named("k4", gen_family(&FamilySpec::Complete(4)).unwrap());
        let solver = Solver::new(Algorithm::Full);
        let a = run_trials(&solver, &spec, 4, 1, 3, 1).unwrap();
        let b = run_trials(&solver, &spec, 4, 1, 3, 1).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].loss, b[0].loss);
        assert_eq!(a[0].seed, b[0].seed);
        assert!(a[0].ms > 0.0);
        assert_eq!(a[0].d, 3.0);
        assert!(run_trials(&solver, &spec, 4, 0, 3, 1).is_err());
    }

    #[test]
    fn discrete_battery_is_consistent_and_deterministic() {
        let spec = GraphSpec::ErdosRenyi { n: 100, d: 10.0 };
        let solver = Solver::new(Algorithm::Discrete);
        let a = run_trials(&solver, &spec, 5, 200, 42, 1).unwrap();
        assert_eq!(a.len(), 200);
        assert!(a.iter().all(|r| r.proper == (r.loss == 0)));
        assert!(a.iter().enumerate().all(|(i, r)| r.trial == i && r.ms > 0.0));
        let b = run_trials(&solver, &spec, 5, 200, 42, 3).unwrap();
        assert_eq!(records_to_csv(&a, false), records_to_csv(&b, false));
    }

    #[test]
    fn csv_layout() {
        let spec = GraphSpec::ErdosRenyi { n: 20, d: 3.0 };
        let recs = run_trials(&Solver::new(Algorithm::Triple), &spec, 3, 2, 0, 1).unwrap();
        let csv = records_to_csv(&recs, false);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 10);
        assert_eq!(&row[..5], &["triple", "er", "20", "3", "3"]);
        assert_eq!(row[9], "");
        let timed = records_to_csv(&recs, true);
        assert!(!timed.lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn graphs_shared_across_algorithms() {
        let spec = GraphSpec::ErdosRenyi { n: 40, d: 4.0 };
        let a = run_trials(&Solver::new(Algorithm::Discrete), &spec, 3, 5, 9, 1).unwrap();
        let b = run_trials(&Solver::new(Algorithm::Full), &spec, 3, 5, 9, 1).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| x.seed == y.seed));
    }

    #[test]
    fn summaries() {
        let spec = GraphSpec::ErdosRenyi { n: 30, d: 4.0 };
        let mut recs = run_trials(&Solver::new(Algorithm::Discrete), &spec, 3, 4, 1, 1).unwrap();
        recs.extend(run_trials(&Solver::new(Algorithm::Full), &spec, 3, 4, 1, 1).unwrap());
        let s = summarize(&recs);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].algo, s[1].algo), (Algorithm::Discrete, Algorithm::Full));
        assert_eq!(s[0].trials, 4);
        assert_eq!(summary_text(&s).lines().count(), 3);
    }
}
