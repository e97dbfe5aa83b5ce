//! `cfsum` — command-line front end for the sumset toolkit.
//!
//! Four workflows, all exact:
//!
//! * `decompose` — split a number into two continued fractions with large
//!   partial quotients;
//! * `gaps` — print the open intervals missed by `S(k) + S(k)`;
//! * `verify` — brute-force check gap emptiness and endpoint witnesses
//!   against an exhaustive bounded enumeration;
//! * `scan` — classify a grid of points of `[0, 2/k]`.
//!
//! Exit codes: 0 success/verified, 1 verification counterexample,
//! 2 usage or domain errors.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::json;

use cfsum_core::decompose::{
    decompose_checked_with, decompose_mixed_with, decompose_with, DecomposeOptions,
    DecompositionResult, StepDiagnostics,
};
use cfsum_core::gaps::{classify, gap, separator_decimal, verify_disjoint, PointClassification};
use cfsum_core::oracle::enumerate_sk;
use cfsum_core::rational::{decimal_string, floor_log10, format_rational, parse_rational, Rational};
use cfsum_core::source::NumberSource;

#[derive(Parser)]
#[command(
    name = "cfsum",
    version,
    about = "Exact continued-fraction sumset toolkit",
    long_about = "Decomposes numbers into sums of two continued fractions with large partial \
                  quotients, tabulates the gap intervals of S(k)+S(k), and cross-checks both \
                  against a brute-force enumeration. All arithmetic is exact."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a number into two expansions with large partial quotients
    Decompose(DecomposeArgs),
    /// Tabulate the gap intervals missed by S(k)+S(k)
    Gaps(GapsArgs),
    /// Brute-force verification of gap and witness claims
    Verify(VerifyArgs),
    /// Classify a grid of points of [0, 2/k]
    Scan(ScanArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Number literal: p/q | [a1,a2,...] | surd:a,b,d,c | stream:PATH | e-2 | pi-3
    #[arg(long)]
    x: String,
    /// Uniform digit floor: require x <= 1/(k-1) and assert all digits >= k
    #[arg(long, conflicts_with_all = ["m", "n"])]
    k: Option<u64>,
    /// Split digit floor for the first expansion (use with --n)
    #[arg(long, requires = "n")]
    m: Option<u64>,
    /// Split digit floor for the second expansion (use with --m)
    #[arg(long, requires = "m")]
    n: Option<u64>,
    /// Maximum number of full steps
    #[arg(long, default_value_t = 64)]
    max_steps: usize,
    /// Skip the per-step certificate checks
    #[arg(long)]
    no_check: bool,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
}

#[derive(Args)]
struct GapsArgs {
    /// Digit floor (k >= 3)
    #[arg(long)]
    k: u64,
    /// Largest gap index to tabulate
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// Decimal places for approximate columns and the separator
    #[arg(long, default_value_t = 12)]
    decimals: usize,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
}

#[derive(Args)]
struct VerifyArgs {
    /// Digit floor (k >= 3 for gap checks)
    #[arg(long)]
    k: u64,
    /// Denominator bound of the brute-force enumeration
    #[arg(long, default_value_t = 500)]
    q_max: u64,
    /// Gap indices whose interiors and endpoints to check, e.g. 1,2
    #[arg(long, value_delimiter = ',')]
    gaps: Vec<usize>,
    /// Target rationals to search sum witnesses for, e.g. 7/12,3/5
    #[arg(long, value_delimiter = ',')]
    targets: Vec<String>,
    /// Also certify pairwise disjointness of gaps 1..=n via exact ordering
    #[arg(long)]
    disjoint_up_to: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
}

#[derive(Args)]
struct ScanArgs {
    /// Digit floor (k >= 3)
    #[arg(long)]
    k: u64,
    /// Grid denominator: classifies every i/grid in [0, 2/k]
    #[arg(long)]
    grid: u64,
    /// Cap on the gap index scan per point
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    /// Write the plot-ready columns to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (e.g. `cfsum ... | head`)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose(args) => run_decompose(&args),
        Command::Gaps(args) => run_gaps(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Scan(args) => run_scan(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// "p/q" string for JSON output; parsing it back yields the same value.
fn rat(r: &Rational) -> String {
    format_rational(r)
}

/// Decimal exponent of a positive rational: e with 10^e <= r < 10^(e+1).
fn log10_or_none(r: &Rational) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        floor_log10(r).ok()
    }
}

fn run_decompose(args: &DecomposeArgs) -> Result<ExitCode, String> {
    let src = NumberSource::parse_literal(&args.x).map_err(|e| e.to_string())?;
    let opts = DecomposeOptions {
        max_steps: args.max_steps,
        check_invariants: !args.no_check,
    };
    let started = Instant::now();
    let result = match (args.k, args.m, args.n) {
        (Some(k), None, None) => decompose_checked_with(&src, k, &opts),
        (None, Some(m), Some(n)) => decompose_mixed_with(&src, m, n, &opts),
        (None, None, None) => decompose_with(&src, &opts),
        _ => unreachable!("clap enforces the flag combinations"),
    }
    .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();

    let mode = match (args.k, args.m, args.n) {
        (Some(k), _, _) => format!("uniform digit floor k = {k}"),
        (_, Some(m), Some(n)) => format!("split digit floors c >= {m}, b >= {n}"),
        _ => "plain".to_string(),
    };

    match args.output {
        OutputMode::Json => {
            let doc = json!({
                "input": src.describe(),
                "provenance": src.provenance(),
                "mode": mode,
                "max_steps": args.max_steps,
                "checked": !args.no_check,
                "c_digits": digit_strings(&result, true),
                "b_digits": digit_strings(&result, false),
                "p_over_q": rat(&result.p_over_q),
                "s_over_t": rat(&result.s_over_t),
                "termination": result.termination.as_str(),
                "steps": result.steps,
                "error_bound": rat(&result.achieved_error),
                "error_bound_log10": log10_or_none(&result.achieved_error),
                "merged_nondecreasing": result.merged_nondecreasing,
                "diagnostics": result.diagnostics.iter().map(diag_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        OutputMode::Text => {
            println!("input: {}", src.describe());
            if let Some(p) = src.provenance() {
                println!("provenance: {p}");
            }
            println!("mode: {mode}");
            println!("c = {}  (value {})", result.c, rat(&result.p_over_q));
            println!("b = {}  (value {})", result.b, rat(&result.s_over_t));
            println!(
                "termination: {} after {} step(s)",
                result.termination.as_str(),
                result.steps
            );
            if result.achieved_error.is_zero() {
                println!("sum: {} + {} = {} exactly", rat(&result.p_over_q), rat(&result.s_over_t), rat(&result.sum()));
                println!("error bound: 0 (exact)");
            } else {
                let exponent = log10_or_none(&result.achieved_error).expect("positive bound");
                println!(
                    "error bound: {} (< 10^{})",
                    rat(&result.achieved_error),
                    exponent + 1
                );
            }
            println!("merged digits nondecreasing: {}", result.merged_nondecreasing);
            if !result.diagnostics.is_empty() {
                println!("step diagnostics:");
                println!("  n | c_n | b_n | p/q | s/t | error bound (~10^e)");
                for d in &result.diagnostics {
                    let e = log10_or_none(&d.error_bound).expect("positive bound");
                    println!(
                        "  {} | {} | {} | {} | {} | {} (~10^{})",
                        d.index,
                        d.c_digit,
                        d.b_digit,
                        rat(&d.p_over_q),
                        rat(&d.s_over_t),
                        rat(&d.error_bound),
                        e
                    );
                }
            }
            println!("elapsed: {:.3?}", elapsed);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn digit_strings(result: &DecompositionResult, first: bool) -> Vec<String> {
    let digits = if first {
        result.c.digits()
    } else {
        result.b.digits()
    };
    digits.iter().map(|d| d.to_string()).collect()
}

fn diag_json(d: &StepDiagnostics) -> serde_json::Value {
    json!({
        "index": d.index,
        "c_digit": d.c_digit.to_string(),
        "b_digit": d.b_digit.to_string(),
        "p_over_q": rat(&d.p_over_q),
        "s_over_t": rat(&d.s_over_t),
        "ck_lower_bound": rat(&d.ck_lower_bound),
        "bk_lower_bound": rat(&d.bk_lower_bound),
        "error_bound": rat(&d.error_bound),
        "error_bound_log10": log10_or_none(&d.error_bound),
    })
}

fn run_gaps(args: &GapsArgs) -> Result<ExitCode, String> {
    let mut rows = Vec::with_capacity(args.n_max);
    for n in 1..=args.n_max {
        rows.push(gap(args.k, n).map_err(|e| e.to_string())?);
    }
    let separator = separator_decimal(args.k, args.decimals);

    match args.output {
        OutputMode::Json => {
            let doc = json!({
                "k": args.k,
                "n_max": args.n_max,
                "separator_decimal": separator,
                "separator_decimals": args.decimals,
                "gaps": rows.iter().map(|g| {
                    let (lo_u, lo_v) = g.lo_witness();
                    let (hi_u, hi_v) = g.hi_witness();
                    json!({
                        "n": g.n,
                        "lo": rat(&g.lo),
                        "hi": rat(&g.hi),
                        "lo_decimal": decimal_string(&g.lo, args.decimals),
                        "hi_decimal": decimal_string(&g.hi, args.decimals),
                        "lo_witness": [rat(&lo_u), rat(&lo_v)],
                        "hi_witness": [rat(&hi_u), rat(&hi_v)],
                    })
                }).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        OutputMode::Text => {
            println!(
                "gap intervals missed by S({0})+S({0}), endpoints attained:",
                args.k
            );
            println!("  n | lo | hi | lo ~ | hi ~");
            for g in &rows {
                println!(
                    "  {} | {} | {} | {} | {}",
                    g.n,
                    rat(&g.lo),
                    rat(&g.hi),
                    decimal_string(&g.lo, args.decimals),
                    decimal_string(&g.hi, args.decimals),
                );
            }
            println!(
                "separator sqrt({}^2+4) - {} = {} (first {} decimals, truncated)",
                args.k, args.k, separator, args.decimals
            );
            println!("odd-indexed gaps lie below the separator, even-indexed above.");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let started = Instant::now();
    let enumeration = enumerate_sk(args.k, args.q_max).map_err(|e| e.to_string())?;
    let mut failed = false;
    let mut report_lines = Vec::new();
    let mut gap_reports = Vec::new();

    for &n in &args.gaps {
        let g = gap(args.k, n).map_err(|e| e.to_string())?;
        let (empty, counterexample) = enumeration.gap_interior_empty(&g);
        let lo_witness = enumeration.sumset_contains(&g.lo);
        let hi_witness = enumeration.sumset_contains(&g.hi);
        if !empty {
            failed = true;
        }
        let verdict = if empty { "PASS" } else { "FAIL" };
        let mut line = format!(
            "gap {} = ({}, {}): interior {} at q_max = {}",
            n,
            rat(&g.lo),
            rat(&g.hi),
            if empty { "empty" } else { "HIT" },
            args.q_max
        );
        match &lo_witness {
            Some((u, v)) => line.push_str(&format!("; lo = {} + {}", rat(u), rat(v))),
            None => line.push_str("; lo witness not found at this bound"),
        }
        match &hi_witness {
            Some((u, v)) => line.push_str(&format!("; hi = {} + {}", rat(u), rat(v))),
            None => line.push_str("; hi witness not found at this bound"),
        }
        report_lines.push(format!("[{verdict}] {line}"));
        gap_reports.push(json!({
            "n": n,
            "lo": rat(&g.lo),
            "hi": rat(&g.hi),
            "interior_empty": empty,
            "counterexample": counterexample.map(|(u, v)| vec![rat(&u), rat(&v)]),
            "lo_witness": lo_witness.map(|(u, v)| vec![rat(&u), rat(&v)]),
            "hi_witness": hi_witness.map(|(u, v)| vec![rat(&u), rat(&v)]),
        }));
    }

    let mut target_reports = Vec::new();
    for raw in &args.targets {
        let target = parse_rational(raw).map_err(|e| e.to_string())?;
        let witness = enumeration.sumset_contains(&target);
        match &witness {
            Some((u, v)) => report_lines.push(format!(
                "[PASS] target {} = {} + {}",
                rat(&target),
                rat(u),
                rat(v)
            )),
            None => report_lines.push(format!(
                "[INCONCLUSIVE] target {}: no witness with denominators <= {} (not a disproof)",
                rat(&target),
                args.q_max
            )),
        }
        target_reports.push(json!({
            "target": rat(&target),
            "witness": witness.map(|(u, v)| vec![rat(&u), rat(&v)]),
        }));
    }

    let disjoint_report = match args.disjoint_up_to {
        Some(n_max) => {
            let cert = verify_disjoint(args.k, n_max).map_err(|e| e.to_string())?;
            if !cert.disjoint() {
                failed = true;
            }
            report_lines.push(format!(
                "[{}] gaps 1..={} pairwise disjoint (odd chain rising: {}, even chain falling: {}, separator sides: {}/{}, ordering inequalities: {})",
                if cert.disjoint() { "PASS" } else { "FAIL" },
                n_max,
                cert.odd_chain_increasing,
                cert.even_chain_decreasing,
                cert.odd_gaps_below_separator,
                cert.even_gaps_above_separator,
                cert.ordering_inequalities_hold,
            ));
            Some(json!({
                "n_max": n_max,
                "disjoint": cert.disjoint(),
                "odd_chain_increasing": cert.odd_chain_increasing,
                "even_chain_decreasing": cert.even_chain_decreasing,
                "odd_gaps_below_separator": cert.odd_gaps_below_separator,
                "even_gaps_above_separator": cert.even_gaps_above_separator,
                "ordering_inequalities_hold": cert.ordering_inequalities_hold,
            }))
        }
        None => None,
    };

    let elapsed = started.elapsed();
    match args.output {
        OutputMode::Json => {
            let doc = json!({
                "k": args.k,
                "q_max": args.q_max,
                "enumeration_size": enumeration.elements.len(),
                "gaps": gap_reports,
                "targets": target_reports,
                "disjointness": disjoint_report,
                "verdict": if failed { "FAIL" } else { "PASS" },
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        OutputMode::Text => {
            println!(
                "brute-force S({}) enumeration: {} elements with denominator <= {}",
                args.k,
                enumeration.elements.len(),
                args.q_max
            );
            for line in &report_lines {
                println!("{line}");
            }
            println!(
                "verdict: {} ({:.3?})",
                if failed { "FAIL" } else { "PASS" },
                elapsed
            );
        }
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// Three-way coverage summary of a classification.
fn trichotomy(class: &PointClassification) -> &'static str {
    match class {
        PointClassification::CoveredByTheorem
        | PointClassification::GapEndpoint(_)
        | PointClassification::MaxEndpoint => "covered",
        PointClassification::GapExcluded(_) => "gap",
        PointClassification::Unknown => "unknown",
    }
}

fn run_scan(args: &ScanArgs) -> Result<ExitCode, String> {
    if args.grid == 0 {
        return Err("grid must be >= 1".into());
    }
    // Largest i with i/grid <= 2/k.
    let i_max = 2 * args.grid / args.k;
    let mut counts = [0usize; 3]; // covered, gap, unknown
    let mut columns = String::new();
    let mut points = Vec::new();
    columns.push_str("# i  x  trichotomy  detail\n");
    for i in 0..=i_max {
        let x = Rational::new(i.into(), args.grid.into());
        let class = classify(&x, args.k, args.n_max).map_err(|e| e.to_string())?;
        let tri = trichotomy(&class);
        match tri {
            "covered" => counts[0] += 1,
            "gap" => counts[1] += 1,
            _ => counts[2] += 1,
        }
        let detail = match class {
            PointClassification::GapExcluded(n) => format!("gap_excluded({n})"),
            PointClassification::GapEndpoint(n) => format!("gap_endpoint({n})"),
            other => other.as_str().to_string(),
        };
        columns.push_str(&format!(
            "{}  {}  {}  {}\n",
            i,
            decimal_string(&x, 6),
            tri,
            detail
        ));
        if args.output == OutputMode::Json {
            points.push(json!({
                "i": i,
                "x": rat(&x),
                "trichotomy": tri,
                "detail": detail,
            }));
        }
    }

    let columns_destination = match &args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            file.write_all(columns.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    match args.output {
        OutputMode::Json => {
            let doc = json!({
                "k": args.k,
                "grid": args.grid,
                "points_scanned": i_max + 1,
                "covered": counts[0],
                "gap": counts[1],
                "unknown": counts[2],
                "columns_file": columns_destination,
                "points": points,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        OutputMode::Text => {
            println!(
                "scan of i/{} for i = 0..={} (k = {}): covered {}, gap {}, unknown {}",
                args.grid, i_max, args.k, counts[0], counts[1], counts[2]
            );
            match columns_destination {
                Some(path) => println!("columns written to {path}"),
                None => print!("{columns}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
