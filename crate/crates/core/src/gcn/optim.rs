use ndarray::{Array2, Zip};

use super::config::AdamConfig;
use super::model::ModelParams;

/// AdamW with bias correction. Weight decay is decoupled from the gradient and
/// applied to the layer weights only; the embedding `X` is not decayed.
#[derive(Debug, Clone)]
pub struct AdamW {
    cfg: AdamConfig,
    lr: f64,
    step: i32,
    m: ModelParams,
    v: ModelParams,
}

impl AdamW {
    pub fn new(params: &ModelParams, lr: f64, cfg: AdamConfig) -> Self {
        Self {
            cfg,
            lr,
            step: 0,
            m: params.zeros_like(),
            v: params.zeros_like(),
        }
    }

    pub fn steps_taken(&self) -> i32 {
        self.step
    }

    pub fn step(&mut self, params: &mut ModelParams, grads: &ModelParams) {
        self.step += 1;
        let c1 = 1.0 - self.cfg.beta1.powi(self.step);
        let c2 = 1.0 - self.cfg.beta2.powi(self.step);
        let blocks = params
            .blocks_mut()
            .zip(grads.blocks())
            .zip(self.m.blocks_mut().zip(self.v.blocks_mut()));
        for (i, ((theta, g), (m, v))) in blocks.enumerate() {
            let decay = if i == 0 { 0.0 } else { self.cfg.weight_decay };
            update(theta, g, m, v, self.lr, decay, c1, c2, &self.cfg);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn update(
    theta: &mut Array2<f64>,
    g: &Array2<f64>,
    m: &mut Array2<f64>,
    v: &mut Array2<f64>,
    lr: f64,
    decay: f64,
    c1: f64,
    c2: f64,
    cfg: &AdamConfig,
) {
    Zip::from(theta).and(g).and(m).and(v).for_each(|th, &g, m, v| {
        *m = cfg.beta1 * *m + (1.0 - cfg.beta1) * g;
        *v = cfg.beta2 * *v + (1.0 - cfg.beta2) * g * g;
        let m_hat = *m / c1;
        let v_hat = *v / c2;
        *th -= lr * (m_hat / (v_hat.sqrt() + cfg.eps) + decay * *th);
    });
}

#[cfg(test)]
mod tests {
    use ndarray::array;

    use super::*;

    fn scalar_params(x: f64, w: f64) -> ModelParams {
        ModelParams {
            x: array![[x]],
            w: vec![array![[w]]],
        }
    }

    #[test]
    fn zero_gradient_without_decay_is_fixed_point() {
        let cfg = AdamConfig {
            weight_decay: 0.0,
            ..AdamConfig::default()
        };
        let mut p = scalar_params(0.3, -1.2);
        let mut opt = AdamW::new(&p, 1e-3, cfg);
        for _ in 0..10 {
            opt.step(&mut p, &scalar_params(0.0, 0.0));
        }
        assert_eq!(p, scalar_params(0.3, -1.2));
    }

    #[test]
    fn first_step_closed_form() {
        let cfg = AdamConfig {
            weight_decay: 0.0,
            ..AdamConfig::default()
        };
        let mut p = scalar_params(1.0, 1.0);
        let mut opt = AdamW::new(&p, 1e-3, cfg);
        opt.step(&mut p, &scalar_params(2.0, 2.0));
        // m_hat = g, v_hat = g^2
        let expected = 1.0 - 1e-3 * 2.0 / (2.0 + 1e-8);
        assert!((p.x[[0, 0]] - expected).abs() < 1e-15);
        assert!((p.x[[0, 0]] - 0.999).abs() < 1e-9);
    }

    #[test]
    fn decay_skips_embedding() {
        let mut p = scalar_params(1.0, 1.0);
        let mut opt = AdamW::new(&p, 0.1, AdamConfig::default());
        opt.step(&mut p, &scalar_params(0.0, 0.0));
        assert_eq!(p.x[[0, 0]], 1.0);
        assert!((p.w[0][[0, 0]] - (1.0 - 0.1 * 0.01)).abs() < 1e-15);
    }

    #[test]
    fn identical_entries_stay_identical() {
        let mut p = ModelParams {
            x: array![[0.5, 0.5]],
            w: vec![array![[0.1, 0.1], [0.1, 0.1]]],
        };
        let mut opt = AdamW::new(&p, 1e-2, AdamConfig::default());
        for i in 0..50 {
            let g = (i as f64).sin();
            let grads = ModelParams {
                x: array![[g, g]],
                w: vec![array![[g, g], [g, g]]],
            };
            opt.step(&mut p, &grads);
        }
        assert_eq!(p.x[[0, 0]], p.x[[0, 1]]);
        assert!(p.w[0].iter().all(|&v| v == p.w[0][[0, 0]]));
        assert_eq!(opt.steps_taken(), 50);
    }
}
