use std::fmt::Write as _;

use ndarray::Array2;

use super::adjacency::NormalizedAdjacency;
use super::config::{StoppingRule, TrainConfig};
use super::model::{loss_and_grads, Mode, ModelParams, Objective};
use super::optim::AdamW;
use crate::coloring::{loss_hard, round_soft, HardColoring, LossSpec, SoftColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, SearchRng};

/// Probability the warm-start target puts on the previous color.
pub const WARM_START_PEAK: f64 = 0.55;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub epoch: usize,
    pub soft_loss: f64,
    pub best_soft_loss: f64,
    pub hard_loss: usize,
}

#[derive(Debug, Clone)]
pub struct GcnOutcome {
    /// Soft coloring at the epoch with the lowest soft loss.
    pub best: SoftColoring,
    pub best_loss: f64,
    pub best_epoch: usize,
    /// Rounding of `best`.
    pub hard: HardColoring,
    pub hard_loss: usize,
    /// Soft coloring at the last epoch run.
    pub last: SoftColoring,
    pub last_loss: f64,
    pub trace: Vec<TraceRow>,
}

impl GcnOutcome {
    fn trivial(g: &Graph, k: usize) -> Result<Self> {
        let hard = HardColoring::monochrome(g.n()).with_budget(k)?;
        let soft = SoftColoring::one_hot(&hard);
        Ok(Self {
            best: soft.clone(),
            best_loss: 0.0,
            best_epoch: 0,
            hard_loss: loss_hard(g, &hard)?,
            hard,
            last: soft,
            last_loss: 0.0,
            trace: Vec::new(),
        })
    }
}

/// Trace as CSV with header `epoch,soft_loss,best_soft_loss,hard_loss_of_rounding`.
pub fn trace_csv(trace: &[TraceRow]) -> String {
    let mut out = String::from("epoch,soft_loss,best_soft_loss,hard_loss_of_rounding\n");
    for r in trace {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.epoch, r.soft_loss, r.best_soft_loss, r.hard_loss
        );
    }
    out
}

/// Tracks the patience window of a [`StoppingRule`].
struct Patience {
    rule: StoppingRule,
    anchor: f64,
    stale: usize,
}

impl Patience {
    fn new(rule: StoppingRule) -> Self {
        Self {
            rule,
            anchor: f64::INFINITY,
            stale: 0,
        }
    }

    /// Records the loss of `epoch`; true when training should stop.
    fn observe(&mut self, epoch: usize, loss: f64) -> bool {
        if loss < self.anchor - self.rule.min_improvement {
            self.anchor = loss;
            self.stale = 0;
        } else {
            self.stale += 1;
        }
        self.stale >= self.rule.patience || epoch + 1 >= self.rule.max_epochs
    }
}

/// Trains a GCN to minimize the configured soft coloring loss on `g` with `k`
/// colors, starting from `warm` when given.
pub fn mod_gcn(
    g: &Graph,
    k: usize,
    cfg: &TrainConfig,
    warm: Option<ModelParams>,
) -> Result<GcnOutcome> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    if k == 1 {
        return GcnOutcome::trivial(g, 1);
    }
    let adj = NormalizedAdjacency::new(g);
    let spec = LossSpec::new(g, cfg.loss);
    let mut params = match warm {
        Some(p) => p,
        None => ModelParams::init(g.n(), k, cfg)?,
    };
    if params.k() != k {
        return Err(Error::shape(format!("{k} output colors"), params.k()));
    }
    let objective = Objective::Coloring {
        graph: g,
        spec: &spec,
    };
    let mut opt = AdamW::new(&params, cfg.learning_rate, cfg.adam);
    let mut dropout_rng = SearchRng::new(derive_seed(cfg.seed, 2));
    let mut patience = Patience::new(cfg.stopping);
    let mut trace = Vec::new();
    let mut best: Option<(SoftColoring, f64, usize)> = None;

    let mut epoch = 0;
    let last = loop {
        let eval = loss_and_grads(&params, &adj, cfg, objective, Mode::Train(&mut dropout_rng))?;
        let soft = eval.output.p;
        if best.as_ref().is_none_or(|b| eval.loss < b.1) {
            best = Some((soft.clone(), eval.loss, epoch));
        }
        let best_loss = best.as_ref().map_or(eval.loss, |b| b.1);
        trace.push(TraceRow {
            epoch,
            soft_loss: eval.loss,
            best_soft_loss: best_loss,
            hard_loss: loss_hard(g, &round_soft(&soft))?,
        });
        if patience.observe(epoch, eval.loss) {
            break (soft, eval.loss);
        }
        opt.step(&mut params, &eval.grads);
        epoch += 1;
    };
    log::debug!("mod_gcn stopped after {} epochs", trace.len());

    let (best, best_loss, best_epoch) = best.expect("at least one epoch");
    let hard = round_soft(&best);
    Ok(GcnOutcome {
        hard_loss: loss_hard(g, &hard)?,
        hard,
        best,
        best_loss,
        best_epoch,
        last: last.0,
        last_loss: last.1,
        trace,
    })
}

/// Target rows with [`WARM_START_PEAK`] on `phi(i)` and the rest spread evenly.
pub fn warm_start_target(phi: &HardColoring, k: usize) -> Result<Array2<f64>> {
    if k < 2 {
        return Err(Error::invalid("warm-start target needs at least 2 colors"));
    }
    if phi.colors().iter().any(|&c| c >= k) {
        return Err(Error::invalid(format!("coloring uses colors beyond {k}")));
    }
    let off = (1.0 - WARM_START_PEAK) / (k - 1) as f64;
    let mut target = Array2::from_elem((phi.len(), k), off);
    for (v, &c) in phi.colors().iter().enumerate() {
        target[[v, c]] = WARM_START_PEAK;
    }
    Ok(target)
}

/// Fresh parameters fitted so that the network output approximates the
/// warm-start target of `phi` under a `k`-color budget.
pub fn pretrain_warmstart(
    g: &Graph,
    k: usize,
    phi: &HardColoring,
    cfg: &TrainConfig,
) -> Result<ModelParams> {
    cfg.validate()?;
    if phi.len() != g.n() {
        return Err(Error::shape(g.n(), phi.len()));
    }
    let target = warm_start_target(phi, k)?;
    let adj = NormalizedAdjacency::new(g);
    let mut params = ModelParams::init(g.n(), k, cfg)?;
    let mut opt = AdamW::new(&params, cfg.learning_rate, cfg.adam);
    let mut dropout_rng = SearchRng::new(derive_seed(cfg.seed, 3));
    let mut patience = Patience::new(cfg.pretrain_stopping);
    let objective = Objective::WarmStart { target: &target };

    for epoch in 0.. {
        let eval = loss_and_grads(&params, &adj, cfg, objective, Mode::Train(&mut dropout_rng))?;
        if patience.observe(epoch, eval.loss) {
            break;
        }
        opt.step(&mut params, &eval.grads);
    }
    Ok(params)
}

/// Recursive warm start: for `j = 2..=k`, pretrain toward the previous
/// `(j-1)`-coloring and then train on the coloring loss with `j` colors.
pub fn full_gcn(g: &Graph, k: usize, cfg: &TrainConfig) -> Result<GcnOutcome> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    let mut outcome = GcnOutcome::trivial(g, 1)?;
    for j in 2..=k {
        let stage = cfg.clone().with_seed(derive_seed(cfg.seed, j as u64));
        let warm = pretrain_warmstart(g, j, &outcome.hard, &stage)?;
        outcome = mod_gcn(g, j, &stage, Some(warm))?;
    }
    Ok(outcome)
}

/// True iff every probability lies within `tol` of `1 / k`.
pub fn detect_oversmoothing(s: &SoftColoring, tol: f64) -> bool {
    let uniform = 1.0 / s.k() as f64;
    s.matrix().iter().all(|&p| (p - uniform).abs() < tol)
}

#[cfg(test)]
/// Rounding agreement of the network output with `phi`.
pub(crate) fn agreement(
    g: &Graph,
    params: &ModelParams,
    cfg: &TrainConfig,
    phi: &HardColoring,
) -> Result<f64> {
    let out = super::model::forward(params, &NormalizedAdjacency::new(g), cfg, Mode::Eval)?;
    let hard = round_soft(&out.p);
    let same = hard
        .colors()
        .iter()
        .zip(phi.colors())
        .filter(|(a, b)| a == b)
        .count();
    Ok(same as f64 / g.n().max(1) as f64)
}

#[cfg(test)]
mod tests {
    use ndarray::array;

    use super::*;
    use crate::gcn::config::InitScheme;
    use crate::graph::{gen_erdos_renyi, gen_family, FamilySpec};
    use crate::search::random_coloring;

    fn quick(seed: u64) -> TrainConfig {
        TrainConfig {
            features: 32,
            learning_rate: 0.01,
            stopping: StoppingRule {
                max_epochs: 3000,
                patience: 200,
                min_improvement: 1e-4,
            },
            pretrain_stopping: StoppingRule {
                max_epochs: 3000,
                patience: 200,
                min_improvement: 1e-5,
            },
            seed,
            ..TrainConfig::default()
        }
    }

    #[test]
    fn target_rows() {
        let phi = HardColoring::new(vec![3, 0], 10).unwrap();
        let t = warm_start_target(&phi, 10).unwrap();
        assert!((t[[0, 3]] - 0.55).abs() < 1e-15);
        assert!((t[[0, 0]] - 0.05).abs() < 1e-15);
        assert!(t.rows().into_iter().all(|r| (r.sum() - 1.0).abs() < 1e-12));
        let t2 = warm_start_target(&HardColoring::monochrome(1), 2).unwrap();
        assert!((t2 - array![[0.55, 0.45]]).iter().all(|d| d.abs() < 1e-15));
    }

    #[test]
    fn oversmoothing_detector() {
        assert!(detect_oversmoothing(&SoftColoring::uniform(5, 4), 0.01));
        let mixed = SoftColoring::new(array![[0.25, 0.25, 0.25, 0.25], [1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!(!detect_oversmoothing(&mixed, 0.01));
        let near = SoftColoring::new(array![[0.255, 0.245, 0.255, 0.245]]).unwrap();
        assert!(detect_oversmoothing(&near, 0.01));
    }

    #[test]
    fn edgeless_graph_trivially_solved() {
        let g = Graph::empty(6);
        let out = mod_gcn(&g, 3, &quick(0), None).unwrap();
        assert_eq!(out.hard_loss, 0);
        let out = full_gcn(&g, 3, &quick(0)).unwrap();
        assert_eq!(out.hard_loss, 0);
        let one = full_gcn(&gen_family(&FamilySpec::Cycle(5)).unwrap(), 1, &quick(0)).unwrap();
        assert_eq!(one.hard, HardColoring::monochrome(5));
    }

    #[test]
    fn trace_best_is_minimum() {
        let g = gen_erdos_renyi(30, 4.0, 1).unwrap();
        let out = mod_gcn(&g, 3, &quick(1), None).unwrap();
        let min = out.trace.iter().map(|r| r.soft_loss).fold(f64::INFINITY, f64::min);
        assert_eq!(out.best_loss, min);
        assert_eq!(out.trace[out.best_epoch].soft_loss, min);
        assert!(out.trace.len() <= 3000);
        assert!(out.trace.windows(2).all(|w| w[1].best_soft_loss <= w[0].best_soft_loss));
        let csv = trace_csv(&out.trace);
        assert!(csv.starts_with("epoch,soft_loss,best_soft_loss,hard_loss_of_rounding\n"));
        assert_eq!(csv.lines().count(), out.trace.len() + 1);
    }

    #[test]
    fn deterministic_trace() {
        let g = gen_erdos_renyi(20, 3.0, 2).unwrap();
        let c = TrainConfig {
            depth: 2,
            dropout: 0.2,
            ..quick(5)
        };
        let a = mod_gcn(&g, 3, &c, None).unwrap();
        let b = mod_gcn(&g, 3, &c, None).unwrap();
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn single_edge_two_colors() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let proper = (0..100)
            .filter(|&s| mod_gcn(&g, 2, &quick(s), None).unwrap().hard_loss == 0)
            .count();
        assert!(proper >= 99, "{proper}/100");
    }

    #[test]
    fn odd_cycle_three_colors() {
        let g = gen_family(&FamilySpec::Cycle(9)).unwrap();
        let cfg = |s| TrainConfig {
            features: 200,
            learning_rate: 1e-3,
            ..quick(s)
        };
        let proper = (0..100)
            .filter(|&s| mod_gcn(&g, 3, &cfg(s), None).unwrap().hard_loss == 0)
            .count();
        assert!(proper >= 95, "{proper}/100");
    }

    #[test]
    fn pretraining_recovers_coloring() {
        let g = gen_erdos_renyi(20, 4.0, 7).unwrap();
        let phi = random_coloring(20, 4, &mut SearchRng::new(7)).unwrap();
        let cfg = TrainConfig {
            init: InitScheme::Orthogonal,
            ..quick(3)
        };
        let params = pretrain_warmstart(&g, 4, &phi, &cfg).unwrap();
        assert!(agreement(&g, &params, &cfg, &phi).unwrap() >= 0.9);
    }
}
