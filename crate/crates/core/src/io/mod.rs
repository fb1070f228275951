//! Run manifests, the result ledger, and the content-addressed cache behind them.
mod cache;
mod manifest;
mod run;

pub use cache::{record_key, Cache};
pub use manifest::{KnotEntry, RunManifest, Task};
pub use run::{run, Ledger, ResultRecord, RunOutcome, Status, TaskResult, TriangleSummary, ENGINE_VERSION};
