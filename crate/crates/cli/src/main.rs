//! Batch verification front end.
//!
//! Subcommands: `seq`, `families`, `hankel-table`, `pade`, `exponent`.
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 internal error. Machine-readable JSON goes to stdout; warnings to
//! stderr. With `--no-timings`, identical configuration and version give
//! byte-identical reports.

mod cache;
mod report;

use clap::{Args, Parser, Subcommand};
use hankel_core::families::{
    verify_doubling_identities, verify_mod2_periodicity, verify_nonvanishing, FamilyRow,
};
use hankel_core::irr::{
    admissible_mod10, build_convergent, effective_exponent, error_bracket, single_order_bound,
    windowed_bound, BoundReport, ExponentReport, FeReport, RecordReport,
};
use hankel_core::pade::{hankel_of_series, pade, verify_error_expansion, PadeError};
use hankel_core::seq::{FunctionalEquation, SequenceSpec};
use hankel_core::series::RatSeries;
use report::{Check, VerificationReport};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hankel",
    version,
    about = "Exact Hankel determinant and irrationality-exponent verification"
)]
struct Cli {
    /// Worker threads for batch determinant runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a sequence prefix.
    Seq(SeqArgs),
    /// Compute the nine determinant families and run verification passes.
    Families(FamiliesArgs),
    /// Emit the family value table as CSV.
    HankelTable(TableArgs),
    /// Construct a [k-1/k] Padé approximant of the paperfolding series.
    Pade(PadeArgs),
    /// Convergents, error brackets and exponent bounds.
    Exponent(ExponentArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// paperfolding | paperfolding-closed | paperfolding-morphic | thue-morse-pm1 | cantor
    #[arg(long)]
    name: String,
    /// Number of terms.
    #[arg(long)]
    n: usize,
    /// csv | json | text
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamiliesArgs {
    /// Largest family index to compute (at least 10).
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value = "paperfolding")]
    name: String,
    /// Verify the 18 doubling identities (exact and mod 2).
    #[arg(long)]
    verify_lemma1: bool,
    /// Verify the period-10 parity tables on the GF(2) path.
    #[arg(long)]
    verify_prop2: bool,
    /// Verify nonvanishing: odd index pairs, plus exact determinants up to
    /// --exact-star-max.
    #[arg(long)]
    verify_star: bool,
    #[arg(long, default_value_t = 300)]
    exact_star_max: usize,
    /// json | text
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the family table CSV here.
    #[arg(long)]
    table_out: Option<PathBuf>,
    /// Cache directory for computed tables (HANKEL_CACHE_DIR also works).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Omit wall-clock timings so identical runs emit identical bytes.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value = "paperfolding")]
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct PadeArgs {
    /// Approximant order.
    #[arg(long)]
    k: usize,
    /// Also verify the error expansion (contact order and leading
    /// coefficient).
    #[arg(long)]
    verify: bool,
    /// json | text
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExponentArgs {
    /// Evaluation base.
    #[arg(long, default_value_t = 2)]
    b: u64,
    /// Padé order for the convergent run.
    #[arg(long)]
    l: Option<usize>,
    /// Largest iteration depth for the convergent run.
    #[arg(long, default_value_t = 6)]
    m_max: usize,
    /// Single-order bound ladder start:end:step, e.g. 11:101:10.
    #[arg(long)]
    ladder: Option<String>,
    /// Window bound for the given window exponent.
    #[arg(long)]
    merged: bool,
    #[arg(long, value_name = "L")]
    l_window: Option<usize>,
    /// Spec-visible alias for --l-window.
    #[arg(long = "L", value_name = "L", conflicts_with = "l_window")]
    l_window_upper: Option<usize>,
    /// json | text
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    let outcome = match cli.command {
        Command::Seq(args) => cmd_seq(args),
        Command::Families(args) => cmd_families(args),
        Command::HankelTable(args) => cmd_table(args),
        Command::Pade(args) => cmd_pade(args),
        Command::Exponent(args) => cmd_exponent(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn usage(msg: &str) -> CmdResult {
    eprintln!("usage error: {msg}");
    Ok(ExitCode::from(EXIT_USAGE))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_sequence(name: &str) -> Option<SequenceSpec> {
    SequenceSpec::by_name(name)
}

fn cmd_seq(args: SeqArgs) -> CmdResult {
    let Some(seq) = parse_sequence(&args.name) else {
        return usage(&format!("unknown sequence name '{}'", args.name));
    };
    let terms = seq.prefix(args.n)?;
    let content = match args.format.as_str() {
        "csv" => {
            let mut s = terms
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            if !s.is_empty() {
                s.push('\n');
            }
            s
        }
        "json" => format!("{}\n", serde_json::to_string(&terms)?),
        "text" => {
            let mut s = terms
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            if !s.is_empty() {
                s.push('\n');
            }
            s
        }
        other => return usage(&format!("unknown format '{other}'")),
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn table_to_csv(table: &[FamilyRow]) -> String {
    let mut out = String::from(hankel_core::families::TABLE_CSV_HEADER);
    out.push('\n');
    for row in table {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

fn load_or_compute_table(
    seq: &SequenceSpec,
    max_n: usize,
    cache_dir: &Option<PathBuf>,
    no_cache: bool,
) -> Result<Vec<FamilyRow>, Box<dyn std::error::Error>> {
    let cache = if no_cache {
        None
    } else {
        cache::location(cache_dir, seq.name(), max_n)
    };
    if let Some(path) = &cache {
        match cache::load(path, max_n) {
            Ok(Some(table)) => return Ok(table),
            Ok(None) => {}
            Err(reason) => eprintln!(
                "warning: ignoring corrupt cache {}: {reason}",
                path.display()
            ),
        }
    }
    let prefix = seq.prefix(hankel_core::families::prefix_needed(max_n))?;
    let table = hankel_core::families::family_table(&prefix, max_n)?;
    if let Some(path) = &cache {
        if let Err(err) = cache::store(path, &table_to_csv(&table)) {
            eprintln!("warning: could not write cache {}: {err}", path.display());
        }
    }
    Ok(table)
}

fn cmd_table(args: TableArgs) -> CmdResult {
    let Some(seq) = parse_sequence(&args.name) else {
        return usage(&format!("unknown sequence name '{}'", args.name));
    };
    if args.max_n < 1 {
        return usage("--max-n must be at least 1");
    }
    let table = load_or_compute_table(&seq, args.max_n, &args.cache_dir, args.no_cache)?;
    write_output(&args.out, &table_to_csv(&table))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_families(args: FamiliesArgs) -> CmdResult {
    let Some(seq) = parse_sequence(&args.name) else {
        return usage(&format!("unknown sequence name '{}'", args.name));
    };
    if args.max_n < 10 {
        return usage("--max-n must be at least 10 (period checks need a full period)");
    }

    let mut report = VerificationReport::new(format!(
        "families --max-n {} --name {}{}{}{}",
        args.max_n,
        args.name,
        if args.verify_lemma1 {
            " --verify-lemma1"
        } else {
            ""
        },
        if args.verify_prop2 {
            " --verify-prop2"
        } else {
            ""
        },
        if args.verify_star {
            " --verify-star"
        } else {
            ""
        },
    ));

    let table_start = Instant::now();
    let table = load_or_compute_table(&seq, args.max_n, &args.cache_dir, args.no_cache)?;
    report.timing("table", table_start);
    if let Some(path) = &args.table_out {
        std::fs::write(path, table_to_csv(&table))?;
    }

    let prefix = seq.prefix(hankel_core::families::prefix_needed(args.max_n))?;
    if args.verify_lemma1 {
        let start = Instant::now();
        let doubling = verify_doubling_identities(&prefix, args.max_n)?;
        report.timing("lemma1", start);
        report.push(Check {
            name: "lemma1-exact".into(),
            status: report::status(doubling.exact_ok),
            detail: serde_json::to_value(&doubling.resolutions)?,
        });
        report.push(Check {
            name: "lemma1-mod2".into(),
            status: report::status(doubling.mod2_ok),
            detail: serde_json::to_value(&doubling.failures)?,
        });
    }
    if args.verify_prop2 {
        let start = Instant::now();
        let periodicity = verify_mod2_periodicity(&prefix, args.max_n)?;
        report.timing("prop2", start);
        report.push(Check {
            name: "prop2-period10".into(),
            status: report::status(periodicity.ok),
            detail: serde_json::to_value(&periodicity.deviations)?,
        });
    }
    if args.verify_star {
        let start = Instant::now();
        let nonvanishing =
            verify_nonvanishing(&prefix, args.max_n, args.exact_star_max.min(args.max_n))?;
        report.timing("star", start);
        report.push(Check {
            name: "star-odd-pairs".into(),
            status: report::status(nonvanishing.odd_pairs_ok),
            detail: serde_json::to_value(&nonvanishing)?,
        });
        report.push(Check {
            name: "star-exact-nonzero".into(),
            status: report::status(nonvanishing.exact_all_nonzero),
            detail: serde_json::json!({"exact_max": nonvanishing.exact_max}),
        });
    }

    let pass = report.finish(args.no_timings);
    let content = match args.format.as_str() {
        "json" => format!("{}\n", serde_json::to_string_pretty(&report)?),
        "text" => report.render_text(),
        other => return usage(&format!("unknown format '{other}'")),
    };
    write_output(&args.out, &content)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_pade(args: PadeArgs) -> CmdResult {
    if args.k < 1 {
        return usage("--k must be at least 1");
    }
    let order = 2 * args.k + 2;
    let terms = SequenceSpec::paperfolding().prefix(order)?;
    let series = RatSeries::from_terms(&terms, order)?;
    let ap = match pade(&series, args.k) {
        Ok(ap) => ap,
        Err(PadeError::DegenerateOrder { k }) => {
            let msg = serde_json::json!({
                "error": "degenerate-order",
                "k": k,
                "detail": format!("Hankel determinant of order {k} vanishes"),
            });
            println!("{}", serde_json::to_string_pretty(&msg)?);
            return Ok(ExitCode::from(EXIT_CHECK_FAILED));
        }
        Err(err) => return Err(err.into()),
    };
    let (p_int, q_int, _lambda) = ap.integer_cleared();
    let verification = if args.verify {
        Some(verify_error_expansion(&series, &ap)?)
    } else {
        None
    };
    let pass = verification.as_ref().is_none_or(|v| v.ok());
    let h_k = hankel_of_series(&series, args.k)?;

    let doc = serde_json::json!({
        "k": ap.k,
        "P": p_int.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "Q": q_int.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "h_num": ap.h.numer().to_string(),
        "h_den": ap.h.denom().to_string(),
        "degenerate": ap.degenerate,
        "hankel_det": h_k.to_string(),
        "verification": verification,
    });
    let content = match args.format.as_str() {
        "json" => format!("{}\n", serde_json::to_string_pretty(&doc)?),
        "text" => format!(
            "[{}-1/{}] approximant\nP = {}\nQ = {}\nh = {}\nverified: {}\n",
            ap.k,
            ap.k,
            p_int,
            q_int,
            ap.h,
            verification.map_or("skipped".to_string(), |v| report::status(v.ok())
                .to_string()),
        ),
        other => return usage(&format!("unknown format '{other}'")),
    };
    write_output(&args.out, &content)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn parse_ladder(spec: &str) -> Option<(usize, usize, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return None;
    }
    let start = parts[0].parse().ok()?;
    let end = parts[1].parse().ok()?;
    let step = parts[2].parse().ok()?;
    (step > 0 && start <= end).then_some((start, end, step))
}

fn cmd_exponent(args: ExponentArgs) -> CmdResult {
    if args.b < 2 {
        return usage("--b must be at least 2");
    }
    let fe = FunctionalEquation::paperfolding();
    let seq = SequenceSpec::paperfolding();
    let window = args.l_window.or(args.l_window_upper);

    let mut records: Vec<RecordReport> = Vec::new();
    let mut bounds: Vec<BoundReport> = Vec::new();
    let mut all_ok = true;

    if let Some(l) = args.l {
        if args.m_max < 1 {
            return usage("--m-max must be at least 1");
        }
        let order = 2 * l + 2;
        let terms = seq.prefix(order)?;
        let series = RatSeries::from_terms(&terms, order)?;
        let ap = pade(&series, l)?;
        for m in 1..=args.m_max {
            let mut rec = build_convergent(&fe, &ap, m, args.b)?;
            let sandwich = error_bracket(&mut rec, &fe, &ap, &seq)?;
            if sandwich.applicable && sandwich.inside != Some(true) {
                all_ok = false;
            }
            rec.eff_exp = Some(effective_exponent(&rec)?);
            records.push(RecordReport::new(&rec, Some(sandwich)));
        }
        match single_order_bound(&fe, &seq, l) {
            Ok(bound) => bounds.push(BoundReport::new(&bound)),
            Err(err @ hankel_core::irr::IrrError::BoundInapplicable { .. }) => {
                eprintln!("note: no single-order bound at l={l}: {err}");
            }
            Err(err) => return Err(err.into()),
        }
    }

    if let Some(ladder) = &args.ladder {
        let Some((start, end, step)) = parse_ladder(ladder) else {
            return usage("--ladder expects start:end:step with positive step");
        };
        for l in (start..=end).step_by(step) {
            bounds.push(BoundReport::new(&single_order_bound(&fe, &seq, l)?));
        }
    }

    if args.merged {
        let Some(exponent) = window else {
            return usage("--merged needs --L <window exponent>");
        };
        if exponent < 2 {
            return usage("--L must be at least 2");
        }
        let admissible = admissible_mod10(&fe, exponent)?;
        bounds.push(BoundReport::new(&windowed_bound(
            &fe,
            exponent,
            &admissible,
        )?));
    }

    if records.is_empty() && bounds.is_empty() {
        return usage("nothing to do: pass --l, --ladder or --merged --L");
    }

    let report = ExponentReport {
        fe: FeReport::new(&fe),
        records,
        bounds,
    };
    let content = match args.format.as_str() {
        "json" => format!("{}\n", serde_json::to_string_pretty(&report)?),
        "text" => {
            let mut s = String::new();
            for rec in &report.records {
                s.push_str(&format!(
                    "l={} m={} b={}: eff_exp = {}\n",
                    rec.l,
                    rec.m,
                    rec.b,
                    rec.eff_exp.map_or("-".into(), |e| format!("{e:.6}")),
                ));
            }
            let best = report
                .bounds
                .iter()
                .map(|b| b.mu_value)
                .fold(f64::INFINITY, f64::min);
            for b in &report.bounds {
                s.push_str(&format!(
                    "{} bound: mu <= {} ({:.6}) [{}]\n",
                    b.kind,
                    b.mu_bound,
                    b.mu_value,
                    serde_json::to_value(b.certification)?
                        .as_str()
                        .unwrap_or("?"),
                ));
            }
            if best.is_finite() {
                s.push_str(&format!(
                    "best bound: mu <= {best:.6} (mu >= 2 holds for every irrational)\n"
                ));
            }
            s
        }
        other => return usage(&format!("unknown format '{other}'")),
    };
    write_output(&args.out, &content)?;
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}
