//! Library side of the `orbifold` command: map specs and subcommands.

pub mod commands;
pub mod error;
pub mod mapspec;

pub use commands::{Format, Outcome, Settings};
pub use error::CliError;
pub use mapspec::{parse_subst, MapSpec};

/// Environment variable overriding the largest accepted `n`.
pub const MAX_DEGREE_VAR: &str = "ORBIFOLD_MAX_DEGREE";

/// The degree bound from the environment, or the default of 8.
pub fn bound_from_env() -> Result<usize, CliError> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_DEGREE_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(orbifold_core::permgroup::DEFAULT_BOUND),
    }
}
