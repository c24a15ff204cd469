//! Instance generation, metered runs, oracle checks and CSV output for the
//! `softselect` algorithms. The `softselect` binary is a thin wrapper over
//! [`cli`].

pub mod bounds;
pub mod cli;
pub mod config;
pub mod contract;
pub mod error;
pub mod generate;
pub mod oracle;
pub mod run;

pub use config::{Algo, ExperimentConfig, Family, RowLaw};
pub use error::HarnessError;
pub use run::{run, write_csv, RunRecord};
