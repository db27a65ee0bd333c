use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbifold_cli::commands::{self, Format, Outcome, Settings};
use orbifold_cli::{bound_from_env, parse_subst, CliError, MapSpec};
use orbifold_core::exactalg::{Param, Rational};
use orbifold_core::Exec;

/// Exact verification of Drinfeld orbifold algebra maps for S_n.
///
/// Exit codes: 0 pass, 1 mathematical failure, 2 usage error, 3 internal error.
#[derive(Debug, Parser)]
#[command(name = "orbifold", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: Format,

    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the five conditions for a map.
    Verify {
        #[arg(long)]
        n: usize,
        /// Sum of L1(a1), Ltri(a,b), Ctri(c), Cpenta(a,b); empty for the zero map.
        #[arg(long, default_value = "")]
        map: String,
        /// Evaluate at every group element instead of class representatives.
        #[arg(long)]
        exhaustive: bool,
        /// Parameter values, e.g. a=1/2,b=0.
        #[arg(long, default_value = "")]
        subst: String,
    },
    /// Regenerate the orbit tables of a case (or `all`).
    Tables {
        #[arg(long, default_value = "all")]
        case: String,
    },
    /// List the relations of the algebra.
    Present {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Ltri(a,b)+Ctri(c)+Cpenta(a,b)")]
        map: String,
        #[arg(long, default_value = "")]
        subst: String,
    },
    /// Dimensions of invariant cohomology per conjugacy class.
    Cohomology {
        #[arg(long)]
        n: usize,
    },
    /// Solve the conditions for the standard parameter family.
    Classify {
        #[arg(long)]
        n: usize,
    },
    /// Check the PBW property by resolving overlaps of the rewriting system.
    Pbw {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        map: String,
        #[arg(long, default_value = "")]
        subst: String,
        /// Also count quotient dimensions up to this filtration degree (at most 3).
        #[arg(long, num_args = 0..=1, default_missing_value = "3")]
        census: Option<usize>,
    },
}

fn inputs(map: &str, subst: &str) -> Result<(MapSpec, BTreeMap<Param, Rational>), CliError> {
    Ok((map.parse()?, parse_subst(subst)?))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let settings = Settings {
        format: if cli.json { Format::Json } else { cli.format },
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
        bound: bound_from_env()?,
    };
    let outcome = match &cli.command {
        Command::Verify {
            n,
            map,
            exhaustive,
            subst,
        } => {
            let (spec, values) = inputs(map, subst)?;
            commands::verify(*n, &spec, &values, *exhaustive, &settings)?
        }
        Command::Tables { case } => commands::tables(case, &settings)?,
        Command::Present { n, map, subst } => {
            let (spec, values) = inputs(map, subst)?;
            commands::present(*n, &spec, &values, &settings)?
        }
        Command::Cohomology { n } => commands::cohomology(*n, &settings)?,
        Command::Classify { n } => commands::classify_cmd(*n, &settings)?,
        Command::Pbw { n, map, subst, census } => {
            let (spec, values) = inputs(map, subst)?;
            commands::pbw(*n, &spec, &values, *census, &settings)?
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{}", outcome.body),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
