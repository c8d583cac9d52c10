use std::collections::BTreeSet;
use std::str::FromStr;

use super::trials::{run_trials, Algorithm, GraphSpec, Solver, TrialRecord};
use crate::coloring::k_d;
use crate::error::{Error, Result};
use crate::gcn::TrainConfig;
use crate::graph::FamilySpec;
use crate::rng::derive_seed;

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
/// Returns `(line, key, value)` triples; a repeated key is an error.
pub fn parse_key_values(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", idx + 1)))?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", idx + 1)));
        }
        if !seen.insert(key.clone()) {
            return Err(Error::Config(format!("line {}: duplicate key `{key}`", idx + 1)));
        }
        out.push((idx + 1, key, value.trim().to_string()));
    }
    Ok(out)
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let items: Vec<T> = value
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad item `{}` in `{key}`", t.trim())))
        })
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::Config(format!("`{key}` is empty")));
    }
    Ok(items)
}

/// Color budgets per cell: explicit values, or `k_d + 1` from the cell's degree.
#[derive(Debug, Clone, PartialEq)]
pub enum BudgetChoice {
    Fixed(Vec<usize>),
    AboveKd,
}

/// A grid of trial batteries.
///
/// ```text
/// family = er          # er | regular | max-planar | replica | cycle | complete
/// n = 100, 200
/// d = 10               # average degree (er) or degree (regular)
/// k = auto             # or a list; auto means k_d + 1
/// algos = discrete, full
/// trials = 200
/// seed = 1
/// loss = degree-power:3    # any training key is passed to the GCN solvers
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub family: String,
    pub n: Vec<usize>,
    pub d: Vec<f64>,
    pub k: BudgetChoice,
    pub algos: Vec<Algorithm>,
    pub trials: usize,
    pub seed: u64,
    pub jobs: usize,
    pub train: TrainConfig,
}

const FAMILIES: [&str; 6] = ["er", "regular", "max-planar", "replica", "cycle", "complete"];

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut n = None;
        let mut d = None;
        let mut k = None;
        let mut algos = None;
        let mut trials = None;
        let mut seed = None;
        let mut jobs = 1;
        let mut train = TrainConfig::default();

        for (line, key, value) in parse_key_values(text)? {
            let scalar = |v: &str| -> Result<u64> {
                v.parse()
                    .map_err(|_| Error::Config(format!("line {line}: bad value `{v}` for `{key}`")))
            };
            match key.as_str() {
                "family" => {
                    if !FAMILIES.contains(&value.as_str()) {
                        return Err(Error::Config(format!("line {line}: unknown family `{value}`")));
                    }
                    family = Some(value);
                }
                "n" => n = Some(list(&key, &value)?),
                "d" => d = Some(list(&key, &value)?),
                "k" if value == "auto" => k = Some(BudgetChoice::AboveKd),
                "k" => k = Some(BudgetChoice::Fixed(list(&key, &value)?)),
                "algos" | "algo" => {
                    algos = Some(
                        list::<String>(&key, &value)?
                            .iter()
                            .map(|a| a.parse())
                            .collect::<Result<Vec<Algorithm>>>()?,
                    )
                }
                "trials" => trials = Some(scalar(&value)? as usize),
                "seed" => seed = Some(scalar(&value)?),
                "jobs" => jobs = scalar(&value)? as usize,
                _ if TrainConfig::is_key(&key) => train
                    .set(&key, &value)
                    .map_err(|e| Error::Config(format!("line {line}: {e}")))?,
                _ => return Err(Error::Config(format!("line {line}: unknown key `{key}`"))),
            }
        }

        let missing = |k: &str| Error::Config(format!("missing required key `{k}`"));
        let family = family.ok_or_else(|| missing("family"))?;
        let needs_d = family == "er" || family == "regular";
        let d = match (needs_d, d) {
            (true, Some(d)) => d,
            (true, None) => return Err(missing("d")),
            (false, Some(_)) => {
                return Err(Error::Config(format!("family `{family}` takes no `d`")))
            }
            (false, None) => Vec::new(),
        };
        let k = k.ok_or_else(|| missing("k"))?;
        if k == BudgetChoice::AboveKd && !needs_d {
            return Err(Error::Config("`k = auto` needs a degree grid".into()));
        }
        train
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        let cfg = Self {
            family,
            n: n.ok_or_else(|| missing("n"))?,
            d,
            k,
            algos: algos.ok_or_else(|| missing("algos"))?,
            trials: trials.ok_or_else(|| missing("trials"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
            jobs: jobs.max(1),
            train,
        };
        if cfg.trials == 0 {
            return Err(Error::Config("`trials` must be positive".into()));
        }
        Ok(cfg)
    }

    /// Graph specs in grid order, each with its budgets and battery seed.
    /// The seed depends only on the graph cell, so every algorithm sees the
    /// same instances.
    pub fn cells(&self) -> Result<Vec<(GraphSpec, Vec<usize>, u64)>> {
        let mut cells = Vec::new();
        for &n in &self.n {
            let degrees: Vec<Option<f64>> = if self.d.is_empty() {
                vec![None]
            } else {
                self.d.iter().copied().map(Some).collect()
            };
            for d in degrees {
                let spec = match (self.family.as_str(), d) {
                    ("er", Some(d)) => GraphSpec::ErdosRenyi { n, d },
                    ("regular", Some(r)) if r.fract() == 0.0 && r >= 0.0 => GraphSpec::Regular {
                        n,
                        r: r as usize,
                    },
                    ("regular", Some(r)) => {
                        return Err(Error::Config(format!("regular degree {r} is not an integer")))
                    }
                    ("max-planar", None) => GraphSpec::MaxPlanar { n },
                    ("replica", None) => GraphSpec::PlanarReplica { n },
                    ("cycle", None) => GraphSpec::Family(FamilySpec::Cycle(n)),
                    ("complete", None) => GraphSpec::Family(FamilySpec::Complete(n)),
                    _ => unreachable!("validated in parse"),
                };
                let ks = match &self.k {
                    BudgetChoice::Fixed(ks) => ks.clone(),
                    BudgetChoice::AboveKd => vec![k_d(d.expect("checked in parse")) + 1],
                };
                let seed = derive_seed(
                    derive_seed(self.seed, n as u64),
                    d.map_or(0, f64::to_bits),
                );
                cells.push((spec, ks, seed));
            }
        }
        Ok(cells)
    }

    /// Runs every `(algorithm, cell, k)` battery.
    pub fn run(&self) -> Result<Vec<TrialRecord>> {
        let mut records = Vec::new();
        for &algo in &self.algos {
            let solver = Solver::new(algo).with_train(self.train.clone());
            for (spec, ks, seed) in self.cells()? {
                for k in ks {
                    records.extend(run_trials(&solver, &spec, k, self.trials, seed, self.jobs)?);
                }
            }
        }
        Ok(records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::LossKind;

    #[test]
    fn key_values() {
        let kv = parse_key_values("# header\na = 1\n\n b=two # trailing\n").unwrap();
        assert_eq!(
            kv,
            vec![(2, "a".into(), "1".into()), (4, "b".into(), "two".into())]
        );
        assert!(matches!(parse_key_values("a 1"), Err(Error::Config(_))));
        assert!(matches!(parse_key_values("a=1\na=2"), Err(Error::Config(_))));
    }

    #[test]
    fn full_config() {
        let cfg = BenchConfig::parse(
            "family = er\nn = 100, 200\nd = 10\nk = auto\nalgos = discrete, mod-gcn\n\
             trials = 3\nseed = 7\nloss = degree-power:0\n",
        )
        .unwrap();
        assert_eq!(cfg.n, vec![100, 200]);
        assert_eq!(cfg.algos, vec![Algorithm::Discrete, Algorithm::ModGcn]);
        assert_eq!(cfg.train.loss, LossKind::DegreePower(0));
        let cells = cfg.cells().unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].1, vec![5]);
    }

    #[test]
    fn config_errors() {
        let base = "family = er\nn = 10\nd = 2\nk = 3\nalgos = full\ntrials = 1\nseed = 0\n";
        assert!(BenchConfig::parse(base).is_ok());
        for bad in [
            format!("{base}colour = red\n"),
            base.replace("family = er", "family = petersen"),
            base.replace("algos = full", "algos = tabu"),
            base.replace("trials = 1\n", ""),
            base.replace("trials = 1", "trials = 0"),
            base.replace("k = 3", "k = three"),
            format!("{base}depth = 9\n"),
            base.replace("family = er", "family = cycle"),
        ] {
            assert!(BenchConfig::parse(&bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn structured_family() {
        let cfg = BenchConfig::parse(
            "family = cycle\nn = 9\nk = 2,3\nalgos = triple\ntrials = 2\nseed = 0\n",
        )
        .unwrap();
        let recs = cfg.run().unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().filter(|r| r.k == 3).all(|r| r.proper));
        assert!(recs.iter().filter(|r| r.k == 2).all(|r| r.loss == 1));
    }
}
