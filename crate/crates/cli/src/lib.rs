//! Session language, command runner, reports and experiment suites on top
//! of `generica-core`.

pub mod commands;
pub mod experiments;
pub mod parser;
pub mod report;
pub mod seeds;
pub mod session;

pub use commands::{replay, run_command, run_session, RunConfig, RunError};
pub use experiments::{run_experiment, Experiment, ExperimentConfig, Summary};
pub use parser::{extend_session, parse_session, ParseError};
pub use report::{emit, Format, Report};
pub use session::Session;
