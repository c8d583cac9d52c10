use std::fmt;
use std::str::FromStr;

use crate::coloring::LossKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitScheme {
    /// Orthonormal rows via Gram-Schmidt on a Gaussian matrix; falls back to
    /// `Identity` when there are more rows than columns.
    #[default]
    Orthogonal,
    /// Row `i` is the unit vector `e_{i mod f}`.
    Identity,
    /// Independent standard normal entries.
    Normal,
}

impl fmt::Display for InitScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitScheme::Orthogonal => "orthogonal",
            InitScheme::Identity => "identity",
            InitScheme::Normal => "normal",
        })
    }
}

impl FromStr for InitScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orthogonal" => Ok(InitScheme::Orthogonal),
            "identity" => Ok(InitScheme::Identity),
            "normal" => Ok(InitScheme::Normal),
            _ => Err(Error::invalid(format!("unknown init scheme `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    /// Decoupled decay, applied to layer weights only.
    pub weight_decay: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            weight_decay: 0.01,
        }
    }
}

/// Stop once the best loss has not dropped by more than `min_improvement`
/// within `patience` epochs, or after `max_epochs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    pub max_epochs: usize,
    pub patience: usize,
    pub min_improvement: f64,
}

impl StoppingRule {
    pub const TRAIN: StoppingRule = StoppingRule {
        max_epochs: 100_000,
        patience: 1000,
        min_improvement: 1e-4,
    };

    pub const PRETRAIN: StoppingRule = StoppingRule {
        max_epochs: 20_000,
        patience: 500,
        min_improvement: 1e-4,
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    /// Number of graph convolutions, 0 to 4. Depth 0 trains the logits directly.
    pub depth: usize,
    pub features: usize,
    pub init: InitScheme,
    pub loss: LossKind,
    pub learning_rate: f64,
    pub dropout: f64,
    pub adam: AdamConfig,
    pub stopping: StoppingRule,
    pub pretrain_stopping: StoppingRule,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            depth: 1,
            features: 200,
            init: InitScheme::Orthogonal,
            loss: LossKind::DegreePower(3),
            learning_rate: 1e-3,
            dropout: 0.0,
            adam: AdamConfig::default(),
            stopping: StoppingRule::TRAIN,
            pretrain_stopping: StoppingRule::PRETRAIN,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth > 4 {
            return Err(Error::invalid(format!("depth {} outside 0..=4", self.depth)));
        }
        if self.features == 0 {
            return Err(Error::invalid("feature width must be positive"));
        }
        if !(0.0..1.0).contains(&self.dropout) {
            return Err(Error::invalid(format!("dropout {} outside [0, 1)", self.dropout)));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::invalid("learning rate must be positive"));
        }
        for rule in [self.stopping, self.pretrain_stopping] {
            if rule.max_epochs == 0 || rule.patience == 0 {
                return Err(Error::invalid("epoch caps and patience must be positive"));
            }
        }
        Ok(())
    }

    /// Applies one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
        }
        match key {
            "depth" => self.depth = num(key, value)?,
            "features" => self.features = num(key, value)?,
            "init" => self.init = value.parse()?,
            "loss" => self.loss = value.parse()?,
            "lr" | "learning_rate" => self.learning_rate = num(key, value)?,
            "dropout" => self.dropout = num(key, value)?,
            "beta1" => self.adam.beta1 = num(key, value)?,
            "beta2" => self.adam.beta2 = num(key, value)?,
            "eps" => self.adam.eps = num(key, value)?,
            "weight_decay" => self.adam.weight_decay = num(key, value)?,
            "max_epochs" => self.stopping.max_epochs = num(key, value)?,
            "patience" => self.stopping.patience = num(key, value)?,
            "min_improvement" => self.stopping.min_improvement = num(key, value)?,
            "pretrain_max_epochs" => self.pretrain_stopping.max_epochs = num(key, value)?,
            "pretrain_patience" => self.pretrain_stopping.patience = num(key, value)?,
            _ => return Err(Error::Config(format!("unknown training key `{key}`"))),
        }
        Ok(())
    }

    /// Keys accepted by [`TrainConfig::set`].
    pub const KEYS: &'static [&'static str] = &[
        "depth",
        "features",
        "init",
        "loss",
        "lr",
        "learning_rate",
        "dropout",
        "beta1",
        "beta2",
        "eps",
        "weight_decay",
        "max_epochs",
        "patience",
        "min_improvement",
        "pretrain_max_epochs",
        "pretrain_patience",
    ];

    pub fn is_key(key: &str) -> bool {
        Self::KEYS.contains(&key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = TrainConfig::default();
        assert_eq!(c.depth, 1);
        assert_eq!(c.features, 200);
        assert_eq!(c.loss, LossKind::DegreePower(3));
        assert_eq!(c.learning_rate, 1e-3);
        assert_eq!(c.dropout, 0.0);
        assert_eq!(c.stopping.patience, 1000);
        assert_eq!(c.pretrain_stopping.max_epochs, 20_000);
        c.validate().unwrap();
    }

    #[test]
    fn overrides() {
        let mut c = TrainConfig::default();
        c.set("depth", "2").unwrap();
        c.set("loss", "triangle").unwrap();
        c.set("init", "normal").unwrap();
        assert_eq!((c.depth, c.loss, c.init), (2, LossKind::Triangle, InitScheme::Normal));
        assert!(matches!(c.set("depht", "2"), Err(Error::Config(_))));
        assert!(c.set("depth", "two").is_err());
        c.set("depth", "5").unwrap();
        assert!(c.validate().is_err());
        assert!(TrainConfig::is_key("lr"));
        assert!(!TrainConfig::is_key("trials"));
        for key in TrainConfig::KEYS {
            let err = TrainConfig::default().set(key, "?").unwrap_err();
            assert!(!err.to_string().contains("unknown training key"), "{key}");
        }
    }
}
