//! Per-instance GCN coloring: a graph convolutional network whose input
//! embedding and weights are both trained on a single graph, with hand-derived
//! gradients and AdamW.

mod adjacency;
mod config;
mod gradcheck;
mod model;
mod optim;
mod train;

pub use adjacency::NormalizedAdjacency;
pub use config::{AdamConfig, InitScheme, StoppingRule, TrainConfig};
pub use gradcheck::{check_gradients, grad_check_suite, GradCheckCase, GradCheckReport};
pub use model::{
    forward, init_features, loss_and_grads, Evaluation, ForwardOutput, Mode, ModelParams,
    Objective,
};
pub use optim::AdamW;
pub use train::{
    detect_oversmoothing, full_gcn, mod_gcn, pretrain_warmstart, trace_csv, warm_start_target,
    GcnOutcome, TraceRow, WARM_START_PEAK,
};
