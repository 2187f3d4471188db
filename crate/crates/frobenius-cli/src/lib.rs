//! Command line front end over `frobenius-core`: one subcommand per pipeline
//! stage, deterministic machine-readable artifacts, and verification sweeps
//! with offender listings.
//!
//! Exit codes: 0 success, 1 usage or runtime errors, 2 a verify subcommand
//! found violations.

pub mod args;
pub mod drivers;
pub mod output;
pub mod run;

pub use args::{Cli, Command, RunConfig};
pub use run::{run, run_from_args, EXIT_FAILURE, EXIT_OK, EXIT_VIOLATIONS};
