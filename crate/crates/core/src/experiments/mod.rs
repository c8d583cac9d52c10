//! Trial batteries, summary statistics, density threshold search, and
//! benchmark case studies.

mod case_study;
mod config;
mod oversmooth;
mod stats;
mod trials;

pub use case_study::{case_study, case_study_table, CaseStudyPlan, CaseStudyRow};
pub use config::{parse_key_values, BenchConfig, BudgetChoice};
pub use oversmooth::{
    oversmooth_csv, oversmoothing_threshold, OversmoothRow, OVERSMOOTH_TOL,
};
pub use stats::{
    confidence_interval, density_grid, fit_and_extrapolate, fit_line, search_threshold,
    Interval, LinearFit, Z_95,
};
pub use trials::{
    records_to_csv, run_trials, summarize, summary_text, Algorithm, GraphSpec, Solver, Summary,
    TrialRecord, CSV_HEADER,
};
