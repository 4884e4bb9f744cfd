//! The composable-core-set pipeline (partition, per-part core-set, union,
//! aggregate) and the verifier suite for the directional-height and
//! composability guarantees.

mod pipeline;
mod seed;
mod verify;

pub use pipeline::{
    aggregate, compare_runs, compose, partition, run_pipeline, AggregationAlg, ComposeOutcome,
    CoresetAlg, ImprovementSummary, KernelSpec, PartReport, PipelineConfig, PipelineRun,
    PipelineSummary, RunReport, StageTimings,
};
pub use seed::derive_seed;
pub use verify::{
    verify_composability, verify_directional_height, ComposabilityConfig, ComposabilityReport,
    HeightCheckReport,
};
