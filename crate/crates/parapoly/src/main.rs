//! Command-line interface: count tables, per-size series and verification
//! suites. Data goes to stdout; diagnostics go to stderr. Exit codes:
//! 0 success, 1 verification mismatch, 2 usage error, 3 requested order
//! beyond the configured truncation.

use clap::{Args, Parser, Subcommand, ValueEnum};

use parapoly::error::{Error, Result};
use parapoly::genfun::{area_series, perimeter_series};
use parapoly::oracle::Measure;
use parapoly::table::CountTable;
use parapoly::verify;

/// Practical ceilings for the brute-force enumerator; beyond these the
/// generating functions are the only sensible source.
const ORACLE_MAX_HP: i64 = 18;
const ORACLE_MAX_AREA: i64 = 20;

#[derive(Parser)]
#[command(
    name = "parapoly",
    version,
    about = "Exact enumeration of parallelogram polyominoes by symmetry class",
    after_help = "Exit codes: 0 success, 1 verification mismatch, \
                  2 usage error, 3 requested order beyond the truncation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count table: one row per size, seven exact columns
    Table(TableArgs),
    /// One coefficient of a per-class series
    Series(SeriesArgs),
    /// Verification suites with a JSON report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Halfperimeter,
    Area,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Halfperimeter => Measure::HalfPerimeter,
            MeasureArg::Area => Measure::Area,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Genfun,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pretty,
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Row size measure
    #[arg(long, value_enum, default_value_t = MeasureArg::Halfperimeter)]
    measure: MeasureArg,
    /// Largest size to tabulate
    #[arg(long)]
    max: i64,
    /// Where the counts come from; `both` cross-checks and fails on mismatch
    #[arg(long, value_enum, default_value_t = SourceArg::Genfun)]
    source: SourceArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
    format: FormatArg,
    /// Largest half-perimeter order the series engine may be asked for
    #[arg(long = "trunc-t", default_value_t = 22)]
    trunc_t: i64,
    /// Largest area order the series engine may be asked for
    #[arg(long = "trunc-q", default_value_t = 24)]
    trunc_q: i64,
    /// Worker threads for the enumerator (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// All pieces
    #[value(alias = "p")]
    Fix1,
    /// Fixed by the half-turn
    R2,
    /// Fixed by the main-diagonal reflection
    D1,
    /// Fixed by the antidiagonal reflection
    D2,
    /// Fixed by both diagonals
    #[value(alias = "fixd2grp")]
    D12,
    /// Orbits under the full symmetry group
    Orbits,
    /// Trivial stabilizer
    Asym,
}

#[derive(Args)]
struct SeriesArgs {
    /// Which class series to read
    #[arg(value_enum, ignore_case = true)]
    target: TargetArg,
    /// Size measure: one t-power (halfperimeter) or one q-power (area)
    #[arg(long, value_enum, default_value_t = MeasureArg::Halfperimeter)]
    measure: MeasureArg,
    /// The size whose coefficient to print
    #[arg(long)]
    order: i64,
    #[arg(long = "trunc-t", default_value_t = 22)]
    trunc_t: i64,
    #[arg(long = "trunc-q", default_value_t = 24)]
    trunc_q: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bijection,
    Burnside,
    Mobius,
    Asymptotics,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Override the suite's exhaustive depth
    #[arg(long)]
    max: Option<i64>,
    /// Worker threads for the enumerator (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Table(args) => run_table(args),
        Command::Series(args) => run_series(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run_table(a: TableArgs) -> Result<i32> {
    let measure: Measure = a.measure.into();
    if a.max < measure.min_value() {
        return Err(Error::Parse(format!(
            "--max must be at least {} for the {} measure",
            measure.min_value(),
            measure.label()
        )));
    }
    let uses_genfun = matches!(a.source, SourceArg::Genfun | SourceArg::Both);
    let uses_oracle = matches!(a.source, SourceArg::Oracle | SourceArg::Both);
    if uses_genfun {
        let bound = match measure {
            Measure::HalfPerimeter => a.trunc_t,
            Measure::Area => a.trunc_q,
        };
        if a.max > bound {
            return Err(Error::TruncationInsufficient {
                required: a.max,
                available: bound,
                what: format!("{} table (raise --trunc-t/--trunc-q)", measure.label()),
            });
        }
    }
    if uses_oracle {
        let bound = match measure {
            Measure::HalfPerimeter => ORACLE_MAX_HP,
            Measure::Area => ORACLE_MAX_AREA,
        };
        if a.max > bound {
            return Err(Error::Parse(format!(
                "the enumerator is practical only up to {} {}; use --source genfun",
                measure.label(),
                bound
            )));
        }
    }

    let table = match a.source {
        SourceArg::Genfun => CountTable::build_genfun(measure, a.max)?,
        SourceArg::Oracle => CountTable::build_oracle(measure, a.max, a.jobs)?,
        SourceArg::Both => {
            let g = CountTable::build_genfun(measure, a.max)?;
            let o = CountTable::build_oracle(measure, a.max, a.jobs)?;
            let diff = g.diff(&o);
            if !diff.is_empty() {
                for line in &diff {
                    eprintln!("mismatch: {line}");
                }
                return Ok(1);
            }
            eprintln!("sources agree on {} rows", g.rows.len());
            g
        }
    };
    let text = match a.format {
        FormatArg::Pretty => table.to_pretty(),
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => table.to_json(),
    };
    print!("{text}");
    Ok(0)
}

fn run_series(a: SeriesArgs) -> Result<i32> {
    let measure: Measure = a.measure.into();
    if a.order < measure.min_value() {
        return Err(Error::Parse(format!(
            "--order must be at least {} for the {} measure",
            measure.min_value(),
            measure.label()
        )));
    }
    match measure {
        Measure::HalfPerimeter => {
            if a.order > a.trunc_t {
                return Err(Error::TruncationInsufficient {
                    required: a.order,
                    available: a.trunc_t,
                    what: "series t-order (raise --trunc-t)".into(),
                });
            }
            let s = perimeter_series(a.order)?;
            let poly = match a.target {
                TargetArg::Fix1 => s.p.coeff(a.order)?,
                TargetArg::R2 => s.r2.coeff(a.order)?,
                TargetArg::D1 => s.d1.coeff(a.order)?,
                TargetArg::D2 => s.d2.coeff(a.order)?,
                TargetArg::D12 => s.d12.coeff(a.order)?,
                TargetArg::Orbits => s.orbits.coeff(a.order)?,
                TargetArg::Asym => s.asym.coeff(a.order)?,
            };
            println!("t^{}: {}", a.order, poly);
        }
        Measure::Area => {
            if a.order > a.trunc_q {
                return Err(Error::TruncationInsufficient {
                    required: a.order,
                    available: a.trunc_q,
                    what: "series q-order (raise --trunc-q)".into(),
                });
            }
            let s = area_series(a.order)?;
            let count = match a.target {
                TargetArg::Fix1 => s.p.coeff(a.order),
                TargetArg::R2 => s.r2.coeff(a.order),
                TargetArg::D1 => s.d1.coeff(a.order),
                TargetArg::D2 => s.d2.coeff(a.order),
                TargetArg::D12 => s.d12.coeff(a.order),
                TargetArg::Orbits => s.orbits.coeff(a.order),
                TargetArg::Asym => s.asym.coeff(a.order),
            };
            println!("q^{}: {}", a.order, count);
        }
    }
    Ok(0)
}

fn run_verify(a: VerifyArgs) -> Result<i32> {
    let (json, pass) = match a.suite {
        SuiteArg::Bijection => {
            let dv = a.max.unwrap_or(10);
            let fold = a.max.map(|m| m + 2).unwrap_or(12);
            let r = verify::verify_bijection(dv, fold)?;
            (r.to_json(), r.pass)
        }
        SuiteArg::Burnside => {
            let m = a.max.unwrap_or(12);
            let r = verify::verify_burnside(m, m, a.jobs)?;
            (r.to_json(), r.pass)
        }
        SuiteArg::Mobius => {
            let m = a.max.unwrap_or(12);
            let r = verify::verify_mobius(m, m, a.jobs)?;
            (r.to_json(), r.pass)
        }
        SuiteArg::Asymptotics => {
            let m = a.max.unwrap_or(16);
            let r = verify::verify_asymptotics(m, a.jobs)?;
            (r.to_json(), r.pass)
        }
        SuiteArg::All => {
            let dv = a.max.unwrap_or(10);
            let fold = a.max.map(|m| m + 2).unwrap_or(12);
            let cross = a.max.unwrap_or(12);
            let ineq = a.max.unwrap_or(16);
            let r = verify::verify_all(dv, fold, cross, cross, ineq, a.jobs)?;
            (r.to_json(), r.pass)
        }
    };
    print!("{json}");
    Ok(if pass { 0 } else { 1 })
}
