use ndarray::{Array2, Axis, Zip};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::adjacency::NormalizedAdjacency;
use super::config::{InitScheme, TrainConfig};
use crate::coloring::{LossSpec, SoftColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, SearchRng};

/// Trainable embedding `X` and per-layer weights.
///
/// With depth `L >= 1`, `X` is `n x f`, the first `L - 1` weights are `f x f`
/// and the last is `f x k`. With depth 0, `X` is the `n x k` logit matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub x: Array2<f64>,
    pub w: Vec<Array2<f64>>,
}

impl ModelParams {
    /// Fresh parameters: `X` from the configured scheme, Glorot-uniform weights.
    pub fn init(n: usize, k: usize, cfg: &TrainConfig) -> Result<Self> {
        cfg.validate()?;
        if k == 0 {
            return Err(Error::invalid("color budget must be at least 1"));
        }
        if cfg.depth == 0 {
            return Ok(Self {
                x: init_features(cfg.init, n, k, derive_seed(cfg.seed, 0)),
                w: Vec::new(),
            });
        }
        let f = cfg.features;
        let mut rng = SearchRng::new(derive_seed(cfg.seed, 1));
        let w = (0..cfg.depth)
            .map(|t| {
                let out = if t + 1 == cfg.depth { k } else { f };
                let bound = (6.0 / (f + out) as f64).sqrt();
                Array2::from_shape_simple_fn((f, out), || rng.random_range(-bound..bound))
            })
            .collect();
        Ok(Self {
            x: init_features(cfg.init, n, f, derive_seed(cfg.seed, 0)),
            w,
        })
    }

    pub fn depth(&self) -> usize {
        self.w.len()
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    /// Output width.
    pub fn k(&self) -> usize {
        self.w.last().map_or(self.x.ncols(), |w| w.ncols())
    }

    pub fn zeros_like(&self) -> Self {
        Self {
            x: Array2::zeros(self.x.raw_dim()),
            w: self.w.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
        }
    }

    /// `X` followed by the weights, in layer order.
    pub fn blocks(&self) -> impl Iterator<Item = &Array2<f64>> {
        std::iter::once(&self.x).chain(&self.w)
    }

    pub fn blocks_mut(&mut self) -> impl Iterator<Item = &mut Array2<f64>> {
        std::iter::once(&mut self.x).chain(&mut self.w)
    }

    pub fn num_entries(&self) -> usize {
        self.blocks().map(Array2::len).sum()
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.x.nrows() != n {
            return Err(Error::shape(format!("{n} rows in X"), self.x.nrows()));
        }
        let mut width = self.x.ncols();
        for (t, w) in self.w.iter().enumerate() {
            if w.nrows() != width {
                return Err(Error::shape(
                    format!("layer {t} input width {width}"),
                    w.nrows(),
                ));
            }
            width = w.ncols();
        }
        if width == 0 {
            return Err(Error::invalid("output width must be positive"));
        }
        Ok(())
    }
}

/// Initial embedding of `n` vertices in `f` dimensions.
pub fn init_features(scheme: InitScheme, n: usize, f: usize, seed: u64) -> Array2<f64> {
    assert!(f >= 1, "feature width must be positive");
    let identity = || Array2::from_shape_fn((n, f), |(i, j)| f64::from(u8::from(i % f == j)));
    let mut rng = SearchRng::new(seed);
    match scheme {
        InitScheme::Identity => identity(),
        InitScheme::Normal => Array2::from_shape_simple_fn((n, f), || StandardNormal.sample(&mut rng)),
        InitScheme::Orthogonal if n > f => identity(),
        InitScheme::Orthogonal => loop {
            let mut x: Array2<f64> =
                Array2::from_shape_simple_fn((n, f), || StandardNormal.sample(&mut rng));
            if gram_schmidt_rows(&mut x) {
                break x;
            }
        },
    }
}

/// Modified Gram-Schmidt on rows. Returns false on a numerically dependent row.
fn gram_schmidt_rows(x: &mut Array2<f64>) -> bool {
    for i in 0..x.nrows() {
        for j in 0..i {
            let (done, mut rest) = x.view_mut().split_at(Axis(0), i);
            let proj = rest.row(0).dot(&done.row(j));
            rest.row_mut(0).scaled_add(-proj, &done.row(j));
        }
        let norm = x.row(i).dot(&x.row(i)).sqrt();
        if norm < 1e-8 {
            return false;
        }
        x.row_mut(i).mapv_inplace(|v| v / norm);
    }
    true
}

/// Evaluation mode, or training mode with the stream that draws dropout masks.
pub enum Mode<'a> {
    Eval,
    Train(&'a mut SearchRng),
}

/// What the network output is scored against.
#[derive(Clone, Copy)]
pub enum Objective<'a> {
    /// Weighted soft coloring loss.
    Coloring { graph: &'a Graph, spec: &'a LossSpec },
    /// Squared Frobenius distance to a target soft coloring.
    WarmStart { target: &'a Array2<f64> },
}

#[derive(Debug, Clone)]
pub struct ForwardOutput {
    pub q: Array2<f64>,
    pub p: SoftColoring,
}

struct Tape {
    /// Input to each layer.
    inputs: Vec<Array2<f64>>,
    /// Pre-activation output of each hidden layer.
    hidden_pre: Vec<Array2<f64>>,
    /// Scaled keep masks on hidden activations, when dropout was applied.
    masks: Vec<Option<Array2<f64>>>,
}

fn run_forward(
    params: &ModelParams,
    adj: &NormalizedAdjacency,
    cfg: &TrainConfig,
    mut mode: Mode<'_>,
) -> Result<(ForwardOutput, Tape)> {
    params.check(adj.n())?;
    let depth = params.depth();
    let mut tape = Tape {
        inputs: Vec::with_capacity(depth),
        hidden_pre: Vec::with_capacity(depth.saturating_sub(1)),
        masks: Vec::with_capacity(depth.saturating_sub(1)),
    };
    let mut h = params.x.clone();
    for (t, w) in params.w.iter().enumerate() {
        let z = adj.apply(h.dot(w).view());
        let prev = std::mem::replace(&mut h, z);
        tape.inputs.push(prev);
        if t + 1 < depth {
            tape.hidden_pre.push(h.clone());
            h.mapv_inplace(|v| v.max(0.0));
            let mask = match &mut mode {
                Mode::Train(rng) if cfg.dropout > 0.0 => {
                    let keep = 1.0 - cfg.dropout;
                    let m = Array2::from_shape_simple_fn(h.raw_dim(), || {
                        if rng.random::<f64>() < keep {
                            1.0 / keep
                        } else {
                            0.0
                        }
                    });
                    h *= &m;
                    Some(m)
                }
                _ => None,
            };
            tape.masks.push(mask);
        }
    }
    let p = softmax_rows(&h);
    Ok((
        ForwardOutput {
            q: h,
            p: SoftColoring::from_softmax(p),
        },
        tape,
    ))
}

/// Network logits `Q` and their row softmax.
pub fn forward(
    params: &ModelParams,
    adj: &NormalizedAdjacency,
    cfg: &TrainConfig,
    mode: Mode<'_>,
) -> Result<ForwardOutput> {
    run_forward(params, adj, cfg, mode).map(|(out, _)| out)
}

fn softmax_rows(q: &Array2<f64>) -> Array2<f64> {
    let mut p = q.clone();
    for mut row in p.rows_mut() {
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        row.mapv_inplace(|v| (v - max).exp());
        let sum = row.sum();
        row.mapv_inplace(|v| v / sum);
    }
    p
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub loss: f64,
    pub grads: ModelParams,
    pub output: ForwardOutput,
}

/// Objective value and its exact gradient with respect to `X` and every weight.
pub fn loss_and_grads(
    params: &ModelParams,
    adj: &NormalizedAdjacency,
    cfg: &TrainConfig,
    objective: Objective<'_>,
    mode: Mode<'_>,
) -> Result<Evaluation> {
    let (output, tape) = run_forward(params, adj, cfg, mode)?;
    let p = output.p.matrix();
    let (loss, dp) = objective_and_dp(objective, p)?;

    // dQ_i = P_i * (G_i - <G_i, P_i>)
    let mut dz = dp;
    Zip::from(dz.rows_mut())
        .and(p.rows())
        .for_each(|mut g, pr| {
            let inner = g.dot(&pr);
            g.zip_mut_with(&pr, |gv, &pv| *gv = pv * (*gv - inner));
        });

    let mut grads = params.zeros_like();
    for t in (0..params.depth()).rev() {
        let du = adj.apply(dz.view());
        grads.w[t] = tape.inputs[t].t().dot(&du);
        let mut dh = du.dot(&params.w[t].t());
        if t == 0 {
            grads.x = dh;
            break;
        }
        if let Some(mask) = &tape.masks[t - 1] {
            dh *= mask;
        }
        Zip::from(&mut dh)
            .and(&tape.hidden_pre[t - 1])
            .for_each(|d, &z| {
                if z <= 0.0 {
                    *d = 0.0;
                }
            });
        dz = dh;
    }
    if params.depth() == 0 {
        grads.x = dz;
    }
    Ok(Evaluation {
        loss,
        grads,
        output,
    })
}

/// Loss and its gradient with respect to `P`.
fn objective_and_dp(objective: Objective<'_>, p: &Array2<f64>) -> Result<(f64, Array2<f64>)> {
    match objective {
        Objective::Coloring { graph, spec } => {
            if graph.n() != p.nrows() || spec.weights().len() != graph.m() {
                return Err(Error::shape(
                    format!("graph with {} vertices", p.nrows()),
                    graph.n(),
                ));
            }
            let mut dp = Array2::zeros(p.raw_dim());
            let mut loss = 0.0;
            for (&(u, v), &w) in graph.edges().iter().zip(spec.weights()) {
                loss += w * p.row(u).dot(&p.row(v));
                dp.row_mut(u).scaled_add(w, &p.row(v));
                dp.row_mut(v).scaled_add(w, &p.row(u));
            }
            Ok((loss, dp))
        }
        Objective::WarmStart { target } => {
            if target.dim() != p.dim() {
                return Err(Error::shape(format!("{:?}", p.dim()), format!("{:?}", target.dim())));
            }
            let diff = p - target;
            let loss = diff.iter().map(|d| d * d).sum();
            Ok((loss, diff * 2.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use ndarray::array;

    use super::*;
    use crate::graph::gen_erdos_renyi;

    fn cfg(depth: usize, features: usize) -> TrainConfig {
        TrainConfig {
            depth,
            features,
            ..TrainConfig::default()
        }
    }

    #[test]
    fn orthogonal_rows() {
        let x = init_features(InitScheme::Orthogonal, 3, 4, 1);
        let gram = x.dot(&x.t());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((gram[[i, j]] - expected).abs() < 1e-9);
            }
        }
        assert_eq!(
            init_features(InitScheme::Orthogonal, 5, 3, 1),
            init_features(InitScheme::Identity, 5, 3, 1)
        );
    }

    #[test]
    fn identity_rows() {
        let x = init_features(InitScheme::Identity, 5, 200, 0);
        for i in 0..5 {
            for j in 0..200 {
                assert_eq!(x[[i, j]], if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn normal_sample_mean() {
        let x = init_features(InitScheme::Normal, 200, 200, 4);
        let mean = x.mean().unwrap();
        assert!(mean.abs() < 4.0 / (200.0f64 * 200.0).sqrt());
    }

    #[test]
    fn edgeless_depth_one_is_uniform() {
        let g = Graph::empty(4);
        let adj = NormalizedAdjacency::new(&g);
        let c = cfg(1, 6);
        let params = ModelParams::init(4, 3, &c).unwrap();
        let out = forward(&params, &adj, &c, Mode::Eval).unwrap();
        assert!(out.q.iter().all(|&v| v == 0.0));
        assert!(out.p.matrix().iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn single_edge_swaps_rows() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let adj = NormalizedAdjacency::new(&g);
        let params = ModelParams {
            x: array![[1.0, 0.0], [0.0, 1.0]],
            w: vec![array![[1.0, 0.0], [0.0, 1.0]]],
        };
        let out = forward(&params, &adj, &cfg(1, 2), Mode::Eval).unwrap();
        assert_eq!(out.q, array![[0.0, 1.0], [1.0, 0.0]]);
    }

    #[test]
    fn relabeling_permutes_rows() {
        let c = cfg(2, 5);
        for seed in 0..5 {
            let g = gen_erdos_renyi(8, 3.0, seed).unwrap();
            let perm: Vec<usize> = (0..8).map(|i| (i * 3 + seed as usize) % 8).collect();
            let h = g.relabel(&perm).unwrap();
            let params = ModelParams::init(8, 3, &c.clone().with_seed(seed)).unwrap();
            let mut permuted = params.clone();
            for v in 0..8 {
                permuted.x.row_mut(perm[v]).assign(&params.x.row(v));
            }
            let a = forward(&params, &NormalizedAdjacency::new(&g), &c, Mode::Eval).unwrap();
            let b = forward(&permuted, &NormalizedAdjacency::new(&h), &c, Mode::Eval).unwrap();
            for v in 0..8 {
                for j in 0..3 {
                    assert!((a.q[[v, j]] - b.q[[perm[v], j]]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn edgeless_coloring_loss_has_zero_grads() {
        let g = Graph::empty(5);
        let c = cfg(2, 4);
        let spec = LossSpec::standard(&g);
        let params = ModelParams::init(5, 3, &c).unwrap();
        let eval = loss_and_grads(
            &params,
            &NormalizedAdjacency::new(&g),
            &c,
            Objective::Coloring { graph: &g, spec: &spec },
            Mode::Eval,
        )
        .unwrap();
        assert_eq!(eval.loss, 0.0);
        assert!(eval.grads.blocks().all(|b| b.iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn symmetric_saddle() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = cfg(0, 2);
        let spec = LossSpec::standard(&g);
        let params = ModelParams {
            x: Array2::zeros((2, 2)),
            w: vec![],
        };
        let eval = loss_and_grads(
            &params,
            &NormalizedAdjacency::new(&g),
            &c,
            Objective::Coloring { graph: &g, spec: &spec },
            Mode::Eval,
        )
        .unwrap();
        assert_eq!(eval.loss, 0.5);
        assert!(eval.grads.x.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn shape_errors() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let adj = NormalizedAdjacency::new(&g);
        let params = ModelParams::init(4, 2, &cfg(1, 3)).unwrap();
        assert!(forward(&params, &adj, &cfg(1, 3), Mode::Eval).is_err());
    }

    #[test]
    fn dropout_only_in_training() {
        let g = gen_erdos_renyi(10, 4.0, 0).unwrap();
        let adj = NormalizedAdjacency::new(&g);
        let c = TrainConfig {
            dropout: 0.5,
            ..cfg(2, 6)
        };
        let params = ModelParams::init(10, 3, &c).unwrap();
        let a = forward(&params, &adj, &c, Mode::Eval).unwrap();
        let b = forward(&params, &adj, &c, Mode::Eval).unwrap();
        assert_eq!(a.q, b.q);
        let t = forward(&params, &adj, &c, Mode::Train(&mut SearchRng::new(1))).unwrap();
        assert_ne!(a.q, t.q);
    }
}
