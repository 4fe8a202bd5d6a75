//! The `fishburn` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on a usage
//! error and 3 when an input payload does not parse or validate.

pub mod fixtures;
pub mod output;
pub mod scan;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use fishburn_core::genfun::{fishburn_triangle, mahonian_triangle, unsieved_triangle, Triangle};
use fishburn_core::matchings::{
    classification_csv, confused_arcs, enumerate_zero_alignment, insert_confused, nesting_count,
    parse_arcs, parse_embraced_openers, remove_confused, MarkedMatching, Matching,
};
use fishburn_core::meshpat::{
    count_occurrences, insert_sigma, occurrences, remove_sigma, resolve_pattern, MarkedPermutation,
};
use fishburn_core::perm::{parse_inversion_pairs, parse_positions};
use fishburn_core::posets::{
    enumerate_factorial_posets, incomparable_pairs, insert_mislabelings, mislabelings,
    parse_labels, parse_pairs, remove_mislabelings, FactorialPoset, MarkedPoset,
};
use fishburn_core::Permutation;

use output::{concatenated, joined, render, Format};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fishburn", version, about = "Mahonian and Fishburn distributions on permutations, matchings and posets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriangleKind {
    Mahonian,
    Unsieved,
    Fishburn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Structure {
    Matchings,
    Posets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Statistic {
    Confused,
    Mislabelings,
    Nestings,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BijectionKind {
    Perm,
    Matching,
    Poset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print rows of a coefficient triangle.
    Triangle {
        #[arg(long, value_enum)]
        kind: TriangleKind,
        /// Number of rows to print.
        #[arg(long)]
        rows: usize,
        /// Size of the first printed row.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        from: u8,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Distribution of a pattern's occurrence count over all permutations of size n.
    Distribution {
        /// Builtin name or `perm|col,row;...`.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Distribution of a statistic over all matchings or posets of size n.
    Stat {
        #[arg(long, value_enum)]
        structure: Structure,
        #[arg(long, value_enum)]
        statistic: Statistic,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the occurrences of a pattern in a permutation.
    Occurrences {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        perm: String,
    },
    /// Apply an insertion bijection, or its inverse with `--reverse`.
    Bijection {
        #[arg(long, value_enum)]
        kind: BijectionKind,
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "")]
        marks: String,
        #[arg(long)]
        reverse: bool,
    },
    /// Arc classification of a matching as CSV.
    Classify {
        #[arg(long)]
        matching: String,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] fishburn_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<fishburn_core::ParseError> for CliError {
    fn from(e: fishburn_core::ParseError) -> Self {
        CliError::Input(e.into())
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Input(_) => EXIT_INPUT,
                CliError::Io(_) => EXIT_CHECK_FAILED,
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Triangle { kind, rows, from, format } => {
            let from = usize::from(from);
            let t = if rows == 0 {
                Triangle::default()
            } else {
                let last = from + rows - 1;
                match kind {
                    TriangleKind::Mahonian => mahonian_triangle(last),
                    TriangleKind::Unsieved => unsieved_triangle(last),
                    TriangleKind::Fishburn => fishburn_triangle(last),
                }
            };
            write!(out, "{}", render(&t, from, format))?;
        }
        Command::Distribution { pattern, n, format } => {
            let pattern = resolve_pattern(&pattern)?;
            let perms: Vec<Permutation> = Permutation::all(n).collect();
            let row = scan::histogram(&perms, |p| count_occurrences(&pattern, p));
            write!(out, "{}", render(&Triangle::from_rows(vec![row]), 0, format))?;
        }
        Command::Stat { structure, statistic, n, format } => {
            let row = match (structure, statistic) {
                (Structure::Matchings, Statistic::Confused | Statistic::Nestings) => {
                    let all: Vec<Matching> = enumerate_zero_alignment(n).collect();
                    if statistic == Statistic::Confused {
                        scan::histogram(&all, |m| confused_arcs(m).len())
                    } else {
                        scan::histogram(&all, nesting_count)
                    }
                }
                (Structure::Posets, Statistic::Mislabelings | Statistic::Incomparable) => {
                    let all: Vec<FactorialPoset> = enumerate_factorial_posets(n).collect();
                    if statistic == Statistic::Mislabelings {
                        scan::histogram(&all, |p| mislabelings(p).len())
                    } else {
                        scan::histogram(&all, |p| incomparable_pairs(p).len())
                    }
                }
                (s, t) => {
                    return Err(CliError::Usage(format!(
                        "statistic `{}` does not apply to {}",
                        t.to_possible_value().unwrap().get_name(),
                        s.to_possible_value().unwrap().get_name()
                    )))
                }
            };
            write!(out, "{}", render(&Triangle::from_rows(vec![row]), 0, format))?;
        }
        Command::Occurrences { pattern, perm } => {
            let pattern = resolve_pattern(&pattern)?;
            let perm: Permutation = perm.parse()?;
            for occ in occurrences(&pattern, &perm) {
                writeln!(out, "{occ} ({})", joined(occ.values(&perm)))?;
            }
        }
        Command::Bijection { kind, input, marks, reverse } => {
            let (structure, marks) = bijection(kind, &input, &marks, reverse)?;
            writeln!(out, "{structure}")?;
            writeln!(out, "{marks}")?;
        }
        Command::Classify { matching } => {
            let m: Matching = matching.parse()?;
            write!(out, "{}", classification_csv(&m))?;
        }
        Command::Verify { suite, max_n, jobs, format } => {
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = pool.install(|| verify::verify(suite, max_n));
            match format {
                ReportFormat::Text => write!(out, "{}", report.to_text())?,
                ReportFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?
                }
            }
            writeln!(err, "wall time: {:.2}s", report.wall_time.as_secs_f64())?;
            return Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
    }
    Ok(EXIT_OK)
}

/// Returns the output structure and its marks, both serialized.
fn bijection(
    kind: BijectionKind,
    input: &str,
    marks: &str,
    reverse: bool,
) -> Result<(String, String), CliError> {
    Ok(match (kind, reverse) {
        (BijectionKind::Perm, false) => {
            let mp = MarkedPermutation::with_inversions(input.parse()?, parse_inversion_pairs(marks)?)?;
            let out = insert_sigma(&mp)?;
            (out.perm().to_string(), joined(out.marked_occurrence_starts().iter()))
        }
        (BijectionKind::Perm, true) => {
            let mp = MarkedPermutation::with_sigma_marks(input.parse()?, parse_positions(marks)?)?;
            let out = remove_sigma(&mp)?;
            (out.perm().to_string(), concatenated(out.marked_inversions().iter()))
        }
        (BijectionKind::Matching, false) => {
            let mm = MarkedMatching::with_openers(input.parse()?, parse_embraced_openers(marks)?)?;
            let out = insert_confused(&mm)?;
            (out.matching().to_string(), concatenated(out.marked_confused().iter()))
        }
        (BijectionKind::Matching, true) => {
            let mm = MarkedMatching::with_confused(input.parse()?, parse_arcs(marks)?)?;
            let out = remove_confused(&mm)?;
            (out.matching().to_string(), concatenated(out.marked_openers().iter()))
        }
        (BijectionKind::Poset, false) => {
            let mp = MarkedPoset::with_pairs(input.parse()?, parse_pairs(marks)?)?;
            let out = insert_mislabelings(&mp)?;
            (out.poset().to_string(), joined(out.marked_mislabelings().iter()))
        }
        (BijectionKind::Poset, true) => {
            let mp = MarkedPoset::with_mislabelings(input.parse()?, parse_labels(marks)?)?;
            let out = remove_mislabelings(&mp)?;
            (out.poset().to_string(), concatenated(out.marked_pairs().iter()))
        }
    })
}
