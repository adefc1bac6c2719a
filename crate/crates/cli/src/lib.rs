//! Library side of the `verify` binary: instance loading, suite dispatch and
//! the JSON report.

pub mod config;
pub mod suites;

pub use config::{load_instance, ConfigError, Instance, InstanceConfig, BUILTIN};
pub use suites::{run_suite, run_suites, suite_seed, Report, RunOptions, Suite, SuiteReport};
