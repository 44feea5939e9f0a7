//! Command-line front end: `chainstab <polarize|check|oracle|schema>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::curve::{twist, LineBundleTwist, SheafNumerics};
use crate::error::{Error, Result};
use crate::feasibility::{find_polarization, FeasibleRegion};
use crate::oracle::{cross_validate, GridSpec, DEFAULT_DENOMINATOR, DEFAULT_TWIST_RANGE};
use crate::report;
use crate::scenario::{schema, Scenario, Subject};
use crate::stability::{analyze_scenario, kernel_region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "chainstab",
    version,
    about = "Polarization feasibility and stability certificates for bundles on chain-like nodal curves"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Grid denominator for the oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_DENOMINATOR)]
    pub denominator: u64,
    /// Largest |deg L_j| in the oracle's twist sweep.
    #[arg(long = "twist-range", global = true, default_value_t = DEFAULT_TWIST_RANGE)]
    pub twist_range: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Feasible polarization region and a witness.
    Polarize { scenario: PathBuf },
    /// Full stability analysis.
    Check { scenario: PathBuf },
    /// Cross-validate the engine against a brute-force grid.
    Oracle { scenario: PathBuf },
    /// Print the JSON Schema of scenario files.
    Schema,
}

/// The region `polarize` reports: the Bigas region of a sheaf, or of the
/// twisted kernel bundle cut down by its declared subsheaf bounds.
pub fn polarize(scenario: &Scenario) -> Result<(SheafNumerics, FeasibleRegion)> {
    let curve = &scenario.curve;
    match &scenario.subject {
        Subject::Sheaf(input) => {
            input.validate(curve)?;
            let base = SheafNumerics::from_multidegree(
                curve,
                input.multirank.clone(),
                input.multidegree.clone(),
            )?;
            let sheaf = match &scenario.twist {
                Some(l) => twist(&base, l)?,
                None => base,
            };
            let region = find_polarization(&sheaf)?;
            Ok((sheaf, region))
        }
        Subject::Pair(pair) => {
            let line = scenario
                .twist
                .clone()
                .unwrap_or_else(|| LineBundleTwist::trivial(curve.components()));
            kernel_region(curve, pair, &line)
        }
    }
}

fn execute(args: &Args) -> Result<String> {
    let json = args.format == Format::Json;
    let load = |path: &PathBuf| Scenario::from_path(path);
    match &args.command {
        Command::Schema => Ok(report::to_canonical_string(&schema())),
        Command::Polarize { scenario } => {
            let (sheaf, region) = polarize(&load(scenario)?)?;
            Ok(if json {
                report::to_canonical_string(&report::polarization_result(&sheaf, &region))
            } else {
                let chi = sheaf
                    .chi_global()
                    .map_or("unsupported".to_string(), ToString::to_string);
                format!("chi = {chi}\n{}", report::region_text(&region))
            })
        }
        Command::Check { scenario } => {
            let result = analyze_scenario(&load(scenario)?)?;
            Ok(if json {
                report::to_canonical_string(&report::report(&result))
            } else {
                report::report_text(&result)
            })
        }
        Command::Oracle { scenario } => {
            let scenario = load(scenario)?;
            let spec = GridSpec::new(args.denominator, scenario.curve.components())?;
            if args.twist_range < 0 {
                return Err(Error::invalid("--twist-range", "must be non-negative"));
            }
            let result = cross_validate(&scenario, spec, args.twist_range)?;
            Ok(if json {
                report::to_canonical_string(&report::validation(&result))
            } else {
                report::validation_text(&result)
            })
        }
    }
}

/// Runs the command line and returns the process exit status: 0 on success
/// (whatever the verdict), 2 for invalid input, 3 for internal errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&args) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                3
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
