//! Report plumbing and check implementations behind the `chieftain` binary.

pub mod checks;
pub mod report;

pub use checks::{
    run_search, run_verify, DropHypothesis, GroupCtx, RunOptions, RunResult, SearchResult,
    SAMPLING_POLICY,
};
pub use report::{render_report, CheckId, CheckReport, Params, ReportHeader, Status, Summary};
