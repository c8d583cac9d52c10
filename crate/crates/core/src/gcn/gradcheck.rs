use ndarray::Array2;
use rand::Rng;

use super::adjacency::NormalizedAdjacency;
use super::config::{InitScheme, TrainConfig};
use super::model::{loss_and_grads, Mode, ModelParams, Objective};
use crate::coloring::{LossKind, LossSpec};
use crate::error::Result;
use crate::graph::{gen_erdos_renyi, Graph};
use crate::rng::SearchRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradCheckReport {
    /// Largest `max |analytic - numeric| / max |numeric|` over parameter blocks.
    pub max_rel_error: f64,
    pub max_abs_error: f64,
    pub entries: usize,
}

/// Compares analytic gradients with central differences of step `h` on every
/// parameter entry. Dropout is never applied.
pub fn check_gradients(
    params: &ModelParams,
    adj: &NormalizedAdjacency,
    cfg: &TrainConfig,
    objective: Objective<'_>,
    h: f64,
) -> Result<GradCheckReport> {
    let analytic = loss_and_grads(params, adj, cfg, objective, Mode::Eval)?.grads;
    let mut probe = params.clone();
    let mut report = GradCheckReport {
        max_rel_error: 0.0,
        max_abs_error: 0.0,
        entries: 0,
    };
    let loss_at = |p: &ModelParams| -> Result<f64> {
        Ok(loss_and_grads(p, adj, cfg, objective, Mode::Eval)?.loss)
    };

    for b in 0..=params.depth() {
        let shape = block(params, b).dim();
        let mut numeric = Array2::zeros(shape);
        for idx in ndarray::indices(shape) {
            let orig = block(&probe, b)[idx];
            block_mut(&mut probe, b)[idx] = orig + h;
            let up = loss_at(&probe)?;
            block_mut(&mut probe, b)[idx] = orig - h;
            let down = loss_at(&probe)?;
            block_mut(&mut probe, b)[idx] = orig;
            numeric[idx] = (up - down) / (2.0 * h);
        }
        let diff = (&numeric - block(&analytic, b))
            .iter()
            .fold(0.0f64, |m, d| m.max(d.abs()));
        let scale = numeric.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let rel = if diff == 0.0 { 0.0 } else { diff / scale.max(f64::MIN_POSITIVE) };
        report.max_abs_error = report.max_abs_error.max(diff);
        report.max_rel_error = report.max_rel_error.max(rel);
        report.entries += numeric.len();
    }
    Ok(report)
}

fn block(p: &ModelParams, b: usize) -> &Array2<f64> {
    if b == 0 {
        &p.x
    } else {
        &p.w[b - 1]
    }
}

fn block_mut(p: &mut ModelParams, b: usize) -> &mut Array2<f64> {
    if b == 0 {
        &mut p.x
    } else {
        &mut p.w[b - 1]
    }
}

/// One randomized gradient-check instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GradCheckCase {
    pub n: usize,
    pub depth: usize,
    pub k: usize,
    pub loss: LossKind,
    pub seed: u64,
}

impl GradCheckCase {
    pub fn graph(&self) -> Result<Graph> {
        let d = (self.n as f64 - 1.0).min(3.5);
        gen_erdos_renyi(self.n, d, self.seed)
    }

    pub fn config(&self) -> TrainConfig {
        TrainConfig {
            depth: self.depth,
            features: 12,
            init: InitScheme::Normal,
            loss: self.loss,
            seed: self.seed,
            ..TrainConfig::default()
        }
    }

    pub fn run(&self, h: f64) -> Result<GradCheckReport> {
        let g = self.graph()?;
        let cfg = self.config();
        let spec = LossSpec::new(&g, cfg.loss);
        let params = ModelParams::init(g.n(), self.k, &cfg)?;
        check_gradients(
            &params,
            &NormalizedAdjacency::new(&g),
            &cfg,
            Objective::Coloring {
                graph: &g,
                spec: &spec,
            },
            h,
        )
    }
}

/// `count` cases cycling through depths 0 to 2, `k` in {2, 3, 5}, and the three
/// loss kinds, on random graphs with at most 12 vertices.
pub fn grad_check_suite(count: usize, seed: u64) -> Vec<GradCheckCase> {
    let mut rng = SearchRng::new(seed);
    let losses = [LossKind::Standard, LossKind::DegreePower(3), LossKind::Triangle];
    (0..count)
        .map(|i| GradCheckCase {
            n: rng.random_range(4..=12),
            depth: i % 3,
            k: [2, 3, 5][(i / 3) % 3],
            loss: losses[(i + i / 9) % 3],
            seed: rng.random(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcn::train::warm_start_target;
    use crate::search::random_coloring;

    #[test]
    fn suite_covers_the_grid() {
        let cases = grad_check_suite(27, 0);
        for depth in 0..3 {
            for k in [2, 3, 5] {
                for loss in [LossKind::Standard, LossKind::DegreePower(3), LossKind::Triangle] {
                    assert!(
                        cases.iter().any(|c| c.depth == depth && c.k == k && c.loss == loss),
                        "{depth} {k} {loss}"
                    );
                }
            }
        }
        assert!(cases.iter().all(|c| c.n <= 12));
    }

    #[test]
    fn depth_one_ten_vertices() {
        let case = GradCheckCase {
            n: 10,
            depth: 1,
            k: 3,
            loss: LossKind::Standard,
            seed: 11,
        };
        assert!(case.run(1e-5).unwrap().max_rel_error <= 1e-4);
    }

    #[test]
    fn warm_start_objective() {
        for depth in 0..=3 {
            let g = gen_erdos_renyi(9, 3.0, depth as u64).unwrap();
            let cfg = TrainConfig {
                depth,
                features: 7,
                init: InitScheme::Normal,
                seed: 3,
                ..TrainConfig::default()
            };
            let phi = random_coloring(9, 3, &mut SearchRng::new(1)).unwrap();
            let target = warm_start_target(&phi, 3).unwrap();
            let params = ModelParams::init(9, 3, &cfg).unwrap();
            let r = check_gradients(
                &params,
                &NormalizedAdjacency::new(&g),
                &cfg,
                Objective::WarmStart { target: &target },
                1e-5,
            )
            .unwrap();
            assert!(r.max_rel_error <= 1e-4, "depth {depth}: {r:?}");
        }
    }
}
