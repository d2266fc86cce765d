//! Graph generators, the experiment runner and its reports, and scaling
//! diagnostics.

mod diagnostics;
mod experiment;
mod generators;
pub mod stats;

pub use diagnostics::{
    diagnostic_parallel_rounds, rounds_and_trail, trail_scaling, RoundsAndTrail, TrailConfig, TrailPoint, TrailScaling,
    MAX_ROUND_COPIES,
};
pub use experiment::{
    check_output, exact_bad_vertices, exact_path_cover, exact_tour, graphic_ratios, guarantee_holds, run_experiment,
    Algorithm, CheckConfig, CheckSummary, ExperimentConfig, ExperimentOutput, ExperimentRecord, ExperimentRow,
    GroupCheck, MatcherChoice, CSV_HEADER,
};
pub use generators::{Generated, GeneratorSpec};
