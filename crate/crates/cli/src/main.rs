//! Command-line front end: tau-signature tables, stable 4-genus bound
//! reports, range surveys, negative Pell solutions, and witness searches.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use thiserror::Error;
use twistbound_cli::survey;
use twistbound_cli::survey::SurveyRow;
use twistbound::seifert::SeifertError;
use twistbound::subgroup::MAX_SEARCH_BOUND;
use twistbound::{
    bound_report, continued_fraction_sqrt, exhaustive_search, solve_negative_pell, survey_reports,
    tau_table, BoundReport, BoundsError, ParityCase, PellError, ReportOptions, SubgroupWitness,
    TwistKnot,
};

#[derive(Parser)]
#[command(
    name = "twistbound",
    version,
    about = "Exact Casson-Gordon tau-signatures and stable 4-genus bounds for twist knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PlainFormat {
    Table,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tau-signature table of the twist knot with n twists
    Tau {
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Decimal places in the rendered column
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=64))]
        precision: u8,
    },
    /// Stable 4-genus bounds for one twist knot
    Bound {
        n: u64,
        /// Restrict the report to one odd prime divisor of 4n+1
        #[arg(long)]
        prime: Option<u64>,
        /// Half-width of the witness search box
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..=MAX_SEARCH_BOUND))]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Bound reports for every twist parameter in a range, written to a file
    Survey {
        n_start: u64,
        n_end: u64,
        /// Output path; the file appears atomically
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
        /// Half-width of the witness search box
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..=MAX_SEARCH_BOUND))]
        bound: i64,
    },
    /// Continued fraction of sqrt(D) and the negative Pell solution if any
    Pell {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long, value_enum, default_value_t = PlainFormat::Table)]
        format: PlainFormat,
    },
    /// Box search of the doubled Seifert form for a rank-two subgroup witness
    Search {
        n: u64,
        /// Half-width of the search box
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..=MAX_SEARCH_BOUND))]
        bound: i64,
        #[arg(long, value_enum, default_value_t = PlainFormat::Table)]
        format: PlainFormat,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Knot(#[from] SeifertError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("failed to serialize output: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Tau { n, format, precision } => cmd_tau(n, format, precision as usize),
        Command::Bound { n, prime, bound, format } => cmd_bound(n, prime, bound, format),
        Command::Survey { n_start, n_end, out, format, bound } => {
            cmd_survey(n_start, n_end, &out, format, bound)
        }
        Command::Pell { d, format } => cmd_pell(d, format),
        Command::Search { n, bound, format } => cmd_search(n, bound, format),
    }
}

fn cmd_tau(n: u64, format: Format, precision: usize) -> Result<(), CliError> {
    let k = TwistKnot::new(n)?;
    let table = tau_table(&k);
    match format {
        Format::Csv => print!("{}", table.to_csv(precision)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
        Format::Table => {
            println!("# tau n={} m={} precision={}", k.n(), k.m(), precision);
            let rows: Vec<(String, String, String)> = table
                .pairs()
                .map(|(s, v)| (s.to_string(), v.to_string(), v.to_decimal(precision)))
                .collect();
            let width = |pick: fn(&(String, String, String)) -> usize, floor: usize| {
                rows.iter().map(pick).max().unwrap_or(0).max(floor)
            };
            let (ws, wv, wd) =
                (width(|r| r.0.len(), 1), width(|r| r.1.len(), 5), width(|r| r.2.len(), 7));
            println!("{:>ws$}  {:>wv$}  {:>wd$}", "s", "exact", "decimal");
            for (s, exact, decimal) in &rows {
                println!("{s:>ws$}  {exact:>wv$}  {decimal:>wd$}");
            }
        }
    }
    Ok(())
}

fn parity_label(case: ParityCase) -> &'static str {
    match case {
        ParityCase::EvenHalf => "even",
        ParityCase::OddHalf => "odd",
    }
}

fn witness_lines(witness: &SubgroupWitness, indent: &str) -> String {
    let join = |v: &twistbound::IntVector| {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    };
    format!(
        "{indent}v = ({})\n{indent}w = ({})\n{indent}c = {}\n",
        join(&witness.v),
        join(&witness.w),
        witness.c
    )
}

fn render_report(report: &BoundReport) -> String {
    let mut out = String::new();
    let m_line = if report.factorization.to_string() == report.m.to_string() {
        format!("twist knot: n = {}, m = {}\n", report.n, report.m)
    } else {
        format!("twist knot: n = {}, m = {} = {}\n", report.n, report.m, report.factorization)
    };
    out.push_str(&m_line);
    out.push_str(&format!(
        "levine-tristram signatures vanish at sampled angles: {}\n",
        report.lt_signatures_vanish
    ));
    if report.per_prime.is_empty() {
        out.push_str("per-prime lower bounds: none (no odd prime divides m)\n");
    } else {
        out.push_str("per-prime lower bounds on the stable 4-genus:\n");
        for pb in &report.per_prime {
            out.push_str(&format!(
                "  p = {:<6} q = {:<6} (p-1)/2 {:<5} L = {:<10} bound = {}\n",
                pb.p,
                pb.q,
                parity_label(pb.parity_case),
                pb.l.to_string(),
                pb.lower
            ));
        }
    }
    out.push_str(&format!("best lower bound: {}\n", report.best_lower));
    out.push_str(&format!("weakened closed-form lower bound: {}\n", report.weakened_lower));
    if report.upper.certified {
        let source = survey::source_label(report.upper.source);
        out.push_str(&format!("upper bound g_st <= 1/2: certified ({source})\n"));
        if let Some(witness) = &report.upper.witness {
            out.push_str(&witness_lines(witness, "  "));
        }
    } else {
        out.push_str("upper bound g_st <= 1/2: not certified\n");
    }
    out.push_str(&format!("  {}\n", report.upper.note));
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn cmd_bound(n: u64, prime: Option<u64>, bound: i64, format: Format) -> Result<(), CliError> {
    let k = TwistKnot::new(n)?;
    let options = ReportOptions { search_bound: bound, prime };
    let report = bound_report(&k, &options)?;
    match format {
        Format::Table => print!("{}", render_report(&report)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            let row = SurveyRow::from_report(&report);
            print!("{}", survey::to_csv(&[row], n, n, bound));
        }
    }
    Ok(())
}

fn cmd_survey(
    n_start: u64,
    n_end: u64,
    out: &PathBuf,
    format: FileFormat,
    bound: i64,
) -> Result<(), CliError> {
    if n_start > n_end {
        return Err(CliError::Usage(format!(
            "survey range is empty: n_start = {n_start} exceeds n_end = {n_end}"
        )));
    }
    let options = ReportOptions { search_bound: bound, prime: None };
    let reports = survey_reports(n_start, n_end, &options)?;
    let rows: Vec<SurveyRow> = reports.iter().map(SurveyRow::from_report).collect();
    let content = match format {
        FileFormat::Csv => survey::to_csv(&rows, n_start, n_end, bound),
        FileFormat::Json => {
            let mut text = serde_json::to_string_pretty(&rows)?;
            text.push('\n');
            text
        }
    };
    survey::write_atomic(out, &content)
        .map_err(|source| CliError::Io { path: out.display().to_string(), source })?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn cmd_pell(d: u64, format: PlainFormat) -> Result<(), CliError> {
    let solution = solve_negative_pell(d);
    let cf = continued_fraction_sqrt(d);
    match format {
        PlainFormat::Table => {
            println!("D = {d}");
            match &cf {
                Err(PellError::PerfectSquare { .. }) => {
                    println!("perfect square: no solution");
                }
                Ok(cf) => {
                    let period =
                        cf.period.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
                    println!("continued fraction of sqrt(D): [{}; {period}]", cf.a0);
                    let parity = if cf.period_len() % 2 == 1 { "odd" } else { "even" };
                    println!("period length: {} ({parity})", cf.period_len());
                    match &solution.solution {
                        Some((x, y)) => println!("negative Pell solution: x = {x}, y = {y}"),
                        None => println!("negative Pell solution: none"),
                    }
                }
            }
        }
        PlainFormat::Json => {
            let cf_json = match &cf {
                Ok(cf) => serde_json::json!({ "a0": cf.a0, "period": cf.period }),
                Err(_) => serde_json::Value::Null,
            };
            let body = serde_json::json!({
                "d": d,
                "perfect_square": cf.is_err(),
                "continued_fraction": cf_json,
                "solvable": solution.solvable,
                "solution": solution.solution.as_ref().map(|(x, y)| {
                    [x.to_string(), y.to_string()]
                }),
            });
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
    }
    Ok(())
}

fn cmd_search(n: u64, bound: i64, format: PlainFormat) -> Result<(), CliError> {
    let k = TwistKnot::new(n)?;
    let witness = exhaustive_search(&k, bound);
    match format {
        PlainFormat::Table => {
            println!("n = {}, m = {}, box = [-{bound}, {bound}]^4", k.n(), k.m());
            match &witness {
                Some(w) => {
                    println!("witness found:");
                    print!("{}", witness_lines(w, "  "));
                    println!("  certifies g_st <= 1/2");
                }
                None => {
                    println!("no witness inside the box; larger boxes may still hold one");
                }
            }
        }
        PlainFormat::Json => {
            let body = serde_json::json!({
                "n": k.n(),
                "m": k.m(),
                "bound": bound,
                "witness": witness,
            });
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
    }
    Ok(())
}
