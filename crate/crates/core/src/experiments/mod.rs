//! Factorial DC-SBM simulation study: grid execution, per-graph records,
//! summary statistics and CSV persistence.

pub mod config;
pub mod grid;
pub mod record;
pub mod stats;
pub mod summary;

pub use config::GridConfig;
pub use grid::{run_grid, GridCell};
pub use record::{read_csv, write_csv, GraphRecord};
pub use summary::{summarize, SummaryStats};
