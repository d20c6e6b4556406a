//! Command-line driver. `run` does all the work and returns what would be
//! printed, so tests can call it without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use symreal_core::karasev::{compare_series, h1_residual, karasev_series, SeriesComparison};
use symreal_core::realization::{
    first_nonzero, homogeneity_violation, linear_closed_form, pairing_violation,
    realization_residual, source_series, target_series, MapKind, RealizationSeries,
};
use symreal_core::{jacobi_check, JacobiReport, PoissonStructure};

use crate::format::{
    load_poisson, tree_rows, trees_csv, weight_rows, weights_csv, FormatError, SeriesDocument,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Source,
    Target,
    Karasev,
}

impl From<MapArg> for MapKind {
    fn from(m: MapArg) -> MapKind {
        match m {
            MapArg::Source => MapKind::Source,
            MapArg::Target => MapKind::Target,
            MapArg::Karasev => MapKind::Karasev,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    /// Realization brackets of the source series.
    Bracket,
    /// Source series against the recursive construction.
    Compare,
    /// Inverse-flow identity for the recursive construction.
    H1,
    /// Momentum degree `n` at order `n`.
    Homogeneity,
    /// `Σ_i s_n^i p_i` vanishes at every order.
    Pairing,
    /// Source series against the Bernoulli closed form; linear input only.
    Linear,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Bracket => "bracket",
            Check::Compare => "compare",
            Check::H1 => "h1",
            Check::Homogeneity => "homogeneity",
            Check::Pairing => "pairing",
            Check::Linear => "linear",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "symreal",
    version,
    about = "Formal symplectic realizations of polynomial Poisson structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List rooted trees up to a degree with their symmetry orders.
    Trees {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        max_degree: u16,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// List tree weights and angle polynomials up to a degree.
    Weights {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        max_degree: u16,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Compute a realization series through an order.
    Realize {
        #[arg(long)]
        poisson: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        order: u16,
        #[arg(long, value_enum, default_value = "source")]
        map: MapArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse input that fails the Jacobi identity.
        #[arg(long)]
        strict: bool,
    },
    /// Run exact checks through an order.
    Verify {
        #[arg(long)]
        poisson: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        order: u16,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "bracket,compare,h1,homogeneity,pairing"
        )]
        checks: Vec<Check>,
        #[arg(long)]
        strict: bool,
    },
    /// Check the Jacobi identity of the input.
    Jacobi {
        #[arg(long)]
        poisson: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    Trees,
    Weights,
    Realize,
    Verify,
    Jacobi,
}

/// Parsed command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub poisson_path: Option<PathBuf>,
    pub max_degree: usize,
    pub order: usize,
    pub map_kind: MapKind,
    pub checks: Vec<Check>,
    pub format: OutputFormat,
    pub out_path: Option<PathBuf>,
    pub strict: bool,
}

impl RunConfig {
    fn base(subcommand: SubcommandKind) -> Self {
        RunConfig {
            subcommand,
            poisson_path: None,
            max_degree: 0,
            order: 0,
            map_kind: MapKind::Source,
            checks: Vec::new(),
            format: OutputFormat::Json,
            out_path: None,
            strict: false,
        }
    }

    /// Parses arguments, the first being the program name.
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Ok(match cli.command {
            Command::Trees { max_degree, format } => RunConfig {
                max_degree: max_degree.into(),
                format,
                ..RunConfig::base(SubcommandKind::Trees)
            },
            Command::Weights { max_degree, format } => RunConfig {
                max_degree: max_degree.into(),
                format,
                ..RunConfig::base(SubcommandKind::Weights)
            },
            Command::Realize {
                poisson,
                order,
                map,
                out,
                strict,
            } => RunConfig {
                poisson_path: Some(poisson),
                order: order.into(),
                map_kind: map.into(),
                out_path: out,
                strict,
                ..RunConfig::base(SubcommandKind::Realize)
            },
            Command::Verify {
                poisson,
                order,
                mut checks,
                strict,
            } => {
                checks.sort();
                checks.dedup();
                RunConfig {
                    poisson_path: Some(poisson),
                    order: order.into(),
                    checks,
                    strict,
                    ..RunConfig::base(SubcommandKind::Verify)
                }
            }
            Command::Jacobi { poisson, strict } => RunConfig {
                poisson_path: Some(poisson),
                strict,
                ..RunConfig::base(SubcommandKind::Jacobi)
            },
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        RunOutcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let result = match config.subcommand {
        SubcommandKind::Trees => run_trees(config),
        SubcommandKind::Weights => run_weights(config),
        SubcommandKind::Realize => run_realize(config),
        SubcommandKind::Verify => run_verify(config),
        SubcommandKind::Jacobi => run_jacobi(config),
    };
    result.unwrap_or_else(RunOutcome::usage)
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String, FormatError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn run_trees(config: &RunConfig) -> Result<RunOutcome, FormatError> {
    let rows = tree_rows(config.max_degree)?;
    let stdout = match config.format {
        OutputFormat::Json => json_line(&rows)?,
        OutputFormat::Csv => trees_csv(&rows)?,
    };
    Ok(RunOutcome {
        stdout,
        ..RunOutcome::default()
    })
}

fn run_weights(config: &RunConfig) -> Result<RunOutcome, FormatError> {
    let rows = weight_rows(config.max_degree)?;
    let stdout = match config.format {
        OutputFormat::Json => json_line(&rows)?,
        OutputFormat::Csv => weights_csv(&rows)?,
    };
    Ok(RunOutcome {
        stdout,
        ..RunOutcome::default()
    })
}

fn read_poisson(config: &RunConfig) -> Result<PoissonStructure, FormatError> {
    let path = config
        .poisson_path
        .as_ref()
        .ok_or_else(|| FormatError::Schema("missing --poisson".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Schema(format!("cannot read {}: {e}", path.display())))?;
    load_poisson(&text).map_err(|e| FormatError::Schema(format!("{}: {e}", path.display())))
}

/// Jacobi gate shared by the commands that take a Poisson file. Returns a
/// finished outcome when `--strict` rejects the input.
fn jacobi_gate(pi: &PoissonStructure, strict: bool, stderr: &mut String) -> Option<RunOutcome> {
    if let JacobiReport::Fails { triple, residual } = jacobi_check(pi) {
        let (i, j, k) = triple;
        let level = if strict { "error" } else { "warning" };
        let _ = writeln!(
            stderr,
            "{level}: Jacobi identity fails on ({},{},{}): {residual}",
            i + 1,
            j + 1,
            k + 1
        );
        if strict {
            return Some(RunOutcome {
                status: EXIT_FAILED,
                stdout: String::new(),
                stderr: std::mem::take(stderr),
            });
        }
    }
    None
}

fn run_jacobi(config: &RunConfig) -> Result<RunOutcome, FormatError> {
    let pi = read_poisson(config)?;
    let mut stderr = String::new();
    if let Some(out) = jacobi_gate(&pi, config.strict, &mut stderr) {
        return Ok(out);
    }
    let stdout = if stderr.is_empty() {
        "jacobi: holds\n".to_string()
    } else {
        "jacobi: fails\n".to_string()
    };
    Ok(RunOutcome {
        status: EXIT_OK,
        stdout,
        stderr,
    })
}

fn build_series(
    pi: &PoissonStructure,
    kind: MapKind,
    order: usize,
) -> Result<RealizationSeries, FormatError> {
    Ok(match kind {
        MapKind::Source => source_series(pi, order)?,
        MapKind::Target => target_series(pi, order)?,
        MapKind::Karasev => karasev_series(pi, order)?,
    })
}

fn run_realize(config: &RunConfig) -> Result<RunOutcome, FormatError> {
    let pi = read_poisson(config)?;
    let mut stderr = String::new();
    if let Some(out) = jacobi_gate(&pi, config.strict, &mut stderr) {
        return Ok(out);
    }
    let series = build_series(&pi, config.map_kind, config.order)?;
    let text = json_line(&SeriesDocument::from_series(&series))?;
    let stdout = match &config.out_path {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| {
                FormatError::Schema(format!("cannot write {}: {e}", path.display()))
            })?;
            String::new()
        }
        None => text,
    };
    Ok(RunOutcome {
        status: EXIT_OK,
        stdout,
        stderr,
    })
}

fn run_verify(config: &RunConfig) -> Result<RunOutcome, FormatError> {
    let pi = read_poisson(config)?;
    let mut stderr = String::new();
    if let Some(out) = jacobi_gate(&pi, config.strict, &mut stderr) {
        return Ok(out);
    }
    if config.checks.contains(&Check::Linear) && !pi.is_linear() {
        pi.check_linear()?;
    }
    let n = config.order;
    let source = source_series(&pi, n)?;
    let needs_karasev = config
        .checks
        .iter()
        .any(|c| matches!(c, Check::Compare | Check::H1));
    let karasev = if needs_karasev {
        Some(karasev_series(&pi, n)?)
    } else {
        None
    };

    let mut stdout = String::new();
    let mut failures = 0;
    for &check in &config.checks {
        let verdict = match check {
            Check::Bracket => {
                let res = realization_residual(&source.series, &pi, n)?;
                first_nonzero(&res)
                    .map(|((i, j, k), r)| format!("({},{}) at order {k}: {r}", i + 1, j + 1))
            }
            Check::Compare => {
                let a = karasev.as_ref().expect("karasev series built above");
                match compare_series(&source.series, &a.series, n)? {
                    SeriesComparison::Equal => None,
                    SeriesComparison::Differs {
                        order,
                        component,
                        difference,
                    } => Some(format!(
                        "component {} at order {order}: source - karasev = {difference}",
                        component + 1
                    )),
                }
            }
            Check::H1 => {
                let a = karasev.as_ref().expect("karasev series built above");
                let res = h1_residual(&pi, &a.series, n)?;
                first_nonzero(&res)
                    .map(|((i, k), r)| format!("component {} at order {k}: {r}", i + 1))
            }
            Check::Homogeneity => {
                let mut found = homogeneity_violation(&source.series)
                    .map(|(k, i)| format!("source component {} at order {k}", i + 1));
                if found.is_none() {
                    if let Some(a) = &karasev {
                        found = homogeneity_violation(&a.series)
                            .map(|(k, i)| format!("karasev component {} at order {k}", i + 1));
                    }
                }
                found
            }
            Check::Pairing => {
                pairing_violation(&source.series).map(|(k, r)| format!("order {k}: {r}"))
            }
            Check::Linear => {
                let closed = linear_closed_form(&pi, n)?;
                match compare_series(&source.series, &closed.series, n)? {
                    SeriesComparison::Equal => None,
                    SeriesComparison::Differs {
                        order,
                        component,
                        difference,
                    } => Some(format!(
                        "component {} at order {order}: source - closed form = {difference}",
                        component + 1
                    )),
                }
            }
        };
        match verdict {
            None => {
                let _ = writeln!(stdout, "{}: ok", check.name());
            }
            Some(msg) => {
                failures += 1;
                let _ = writeln!(stdout, "{}: FAIL {msg}", check.name());
            }
        }
    }
    let status = if failures == 0 {
        let _ = writeln!(
            stdout,
            "verify: all {} checks passed through order {n}",
            config.checks.len()
        );
        EXIT_OK
    } else {
        let _ = writeln!(
            stdout,
            "verify: {failures} of {} checks failed",
            config.checks.len()
        );
        EXIT_FAILED
    };
    Ok(RunOutcome {
        status,
        stdout,
        stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, clap::Error> {
        RunConfig::from_args(std::iter::once("symreal").chain(args.iter().copied()))
    }

    #[test]
    fn parses_verify_checks() {
        let c = parse(&[
            "verify",
            "--poisson",
            "p.json",
            "--order",
            "3",
            "--checks",
            "h1,bracket,h1",
        ])
        .unwrap();
        assert_eq!(c.subcommand, SubcommandKind::Verify);
        assert_eq!(c.checks, vec![Check::Bracket, Check::H1]);
        assert_eq!(c.order, 3);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(parse(&["trees", "--max-degree", "0"]).is_err());
        assert!(parse(&[
            "realize",
            "--poisson",
            "p.json",
            "--order",
            "2",
            "--map",
            "other"
        ])
        .is_err());
        assert!(parse(&[
            "verify",
            "--poisson",
            "p.json",
            "--order",
            "2",
            "--checks",
            "nope"
        ])
        .is_err());
        assert!(parse(&["frobnicate"]).is_err());
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let c = parse(&["jacobi", "--poisson", "/nonexistent/p.json"]).unwrap();
        let out = run(&c);
        assert_eq!(out.status, EXIT_USAGE);
        assert!(out.stderr.starts_with("error:"));
    }

    #[test]
    fn trees_csv_output() {
        let out = run(&parse(&["trees", "--max-degree", "2", "--format", "csv"]).unwrap());
        assert_eq!(out.status, EXIT_OK);
        assert_eq!(out.stdout, "canonical,degree,sym\n[],1,1\n[[]],2,1\n");
    }
}
