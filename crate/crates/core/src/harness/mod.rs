//! Experiment orchestration: configuration, trial execution, aggregation and
//! report files.

mod config;
mod oracle;
mod report;
mod run;

pub use config::{ExperimentConfig, MRule, OutputPaths, THREADS_ENV};
pub use oracle::{run_oracle_checks, OracleCheck};
pub use report::{
    emit_report, write_plot_data, write_results_csv, ExperimentReport, GroupSummary, ReportSummary, Stat,
    RESULTS_HEADER,
};
pub use run::{
    decomposition_violations, run_experiment, run_experiment_with_threads, run_trial, thread_count,
    verify_decomposition, TrialResult,
};
