//! `wcdr`: build, measure, verify and search digital ray systems.
//!
//! Exit codes: 0 on success, 1 when verification finds violations, 2 on
//! malformed arguments or input files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wcdr_core::metrics::ErrorReport;
use wcdr_core::ray_system::ParentMapDocument;
use wcdr_core::svg::render_svg;
use wcdr_core::verifier::{check_s3, VerificationReport};
use wcdr_core::{
    build_system_with, find_s3_violation_rounding, lpath_system, max_error, min_error_bnb, min_error_exhaustive,
    per_diagonal_errors, point_error_linf, rounding_ray, verify_system, GridPoint, RaySystem, Rational, TieBreak,
};

#[derive(Parser)]
#[command(name = "wcdr", version, about = "Weak consistent digital rays with L∞ error below 3/2")]
struct Cli {
    /// How the construction breaks an exact tie between its two candidate parents.
    #[arg(long, global = true, default_value_t = TieBreak::Down, value_name = "down|left")]
    tie: TieBreak,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the construction up to diagonal N and write its parent map.
    Build {
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact maximum L∞ error of a parent map.
    Error {
        #[arg(long)]
        map: PathBuf,
        /// Write the worst error of every target diagonal as CSV.
        #[arg(long, value_name = "CSV")]
        per_diagonal: Option<PathBuf>,
    },
    /// Check the consistency axioms of a parent map.
    Verify {
        #[arg(long)]
        map: PathBuf,
        /// Also check that no two adjacent points both stop short of N.
        #[arg(long)]
        lemma3: bool,
        /// Write the full report as JSON.
        #[arg(long, value_name = "JSON")]
        report: Option<PathBuf>,
    },
    /// Smallest error achievable by any weak ray system up to N.
    Oracle {
        #[arg(long)]
        bound: u32,
        /// Use branch and bound instead of plain enumeration.
        #[arg(long)]
        bnb: bool,
        /// Node budget for branch and bound.
        #[arg(long, requires = "bnb")]
        budget: Option<u64>,
        #[arg(long, value_name = "JSON")]
        out: Option<PathBuf>,
    },
    /// Reference schemes. Rounding rounds halves toward smaller x.
    Baseline {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long)]
        bound: u32,
        /// Search for the first ray whose subray is not a prefix of it.
        #[arg(long)]
        find_s3_violation: bool,
    },
    /// Draw the construction as SVG: split points as squares, inner leaves as crosses.
    Render {
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count inner leaves of the construction on diagonals lo..=hi.
    Leaves {
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        lo: i64,
        #[arg(long)]
        hi: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Rounding,
    Lpath,
}

/// Outcome of a verb that ran to completion.
enum Status {
    Ok,
    Violations,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let tie = cli.tie;
    match cli.command {
        Command::Build { bound, out } => {
            let sys = build_system_with(bound, tie);
            write_file(&out, &sys.to_json_pretty())?;
            println!("wrote parent map for N={bound} (tie {tie}) to {}", out.display());
        }
        Command::Error { map, per_diagonal } => {
            let sys = read_map(&map)?;
            let report = max_error(&sys);
            print_error("max_error", &report);
            if let Some(path) = per_diagonal {
                write_file(&path, &per_diagonal_csv(&sys))?;
                println!("wrote per-diagonal errors to {}", path.display());
            }
        }
        Command::Verify { map, lemma3, report } => {
            let sys = read_map(&map)?;
            let result = verify_system(&sys, lemma3);
            print_verification(&result);
            if let Some(path) = report {
                write_file(&path, &serde_json::to_string_pretty(&result)?)?;
            }
            if !result.passed() {
                return Ok(Status::Violations);
            }
        }
        Command::Oracle { bound, bnb, budget, out } => {
            let result = if bnb { min_error_bnb(bound, budget)? } else { min_error_exhaustive(bound)? };
            println!("min_error = {}", result.min_error);
            println!("  approx {}", result.min_error.to_decimal(6));
            println!(
                "systems evaluated {}, pruned {}, nodes {}, proven optimal {}",
                result.systems_explored, result.pruned, result.nodes, result.proven_optimal
            );
            if let Some(path) = out {
                let doc = json!({
                    "bound": result.bound,
                    "method": if bnb { "branch-and-bound" } else { "exhaustive" },
                    "min_error": result.min_error,
                    "witness": ParentMapDocument::from_system(&result.witness_system),
                    "stats": {
                        "systems_explored": result.systems_explored,
                        "pruned": result.pruned,
                        "nodes": result.nodes,
                        "proven_optimal": result.proven_optimal,
                    },
                });
                write_file(&path, &serde_json::to_string_pretty(&doc)?)?;
            }
        }
        Command::Baseline { scheme, bound, find_s3_violation } => match scheme {
            Scheme::Rounding => {
                let worst = rounding_pointwise_error(bound)?;
                println!("rounding: largest pointwise error up to N={bound} is {worst}");
                if find_s3_violation {
                    match find_s3_violation_rounding(bound) {
                        Some(v) => println!(
                            "S3 violation: ray of {} contains {} at index {}, but the ray of {} has {} there (expected {})",
                            v.target,
                            v.subpoint,
                            v.index,
                            v.subpoint,
                            show_opt(v.found),
                            show_opt(v.expected)
                        ),
                        None => println!("no S3 violation up to N={bound}"),
                    }
                }
            }
            Scheme::Lpath => {
                let sys = lpath_system(bound);
                print_error("lpath max_error", &max_error(&sys));
                if find_s3_violation {
                    match check_s3(&sys) {
                        Ok(()) => println!("no S3 violation up to N={bound}"),
                        Err(v) => println!("S3 violation: {v:?}"),
                    }
                }
            }
        },
        Command::Render { bound, out } => {
            let sys = build_system_with(bound, tie);
            write_file(&out, &render_svg(&sys))?;
            println!("wrote {}", out.display());
        }
        Command::Leaves { bound, lo, hi } => {
            let sys = build_system_with(bound, tie);
            let total = sys.count_inner_leaves_range(lo, hi)?;
            println!("inner leaves on diagonals {lo}..={hi}: {total}");
            println!("diagonal,inner_leaves,split_points");
            for d in lo..=hi {
                println!("{d},{},{}", sys.inner_leaves(d)?.len(), sys.split_points(d)?.len());
            }
        }
    }
    Ok(Status::Ok)
}

fn read_map(path: &Path) -> Result<RaySystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    RaySystem::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn print_error(label: &str, r: &ErrorReport) {
    println!("{label} = {}", r.max_error);
    println!("  approx {}", r.max_error.to_decimal(6));
    println!("  at {} on the ray to {}", r.witness_point, r.witness_target);
}

fn per_diagonal_csv(sys: &RaySystem) -> String {
    let mut out = String::from("diagonal,max_error_num,max_error_den,witness_x,witness_y,target_x,target_y\n");
    for row in per_diagonal_errors(sys) {
        let r = &row.report;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.diagonal,
            r.max_error.numer(),
            r.max_error.denom(),
            r.witness_point.x,
            r.witness_point.y,
            r.witness_target.x,
            r.witness_target.y
        );
    }
    out
}

fn print_verification(r: &VerificationReport) {
    let line = |name: &str, ok: bool| println!("{name:<22} {}", if ok { "pass" } else { "FAIL" });
    line("S1 grid paths", r.s1.is_none());
    line("S2 symmetry", r.s2.is_none());
    line("S3 subsegments", r.s3.is_none());
    line("S5 monotone", r.s5.is_none());
    line("alternation", r.alternation.is_empty());
    if let Some(dead) = &r.no_consecutive_dead {
        line("no adjacent dead pair", dead.is_none());
    }
    println!("{:<22} {} (informational)", "S4 inner leaves", r.s4_failures.len());
    println!("{}", if r.passed() { "verification passed" } else { "verification FAILED" });
}

fn rounding_pointwise_error(bound: u32) -> Result<Rational> {
    if bound < 1 {
        bail!("--bound must be at least 1");
    }
    let mut worst = Rational::zero();
    for d in 1..=i64::from(bound) {
        for x in 0..=d {
            let t = GridPoint::new(x, d - x);
            for &v in rounding_ray(t)?.points() {
                let e = point_error_linf(v, t)?;
                if e > worst {
                    worst = e;
                }
            }
        }
    }
    Ok(worst)
}

fn show_opt(p: Option<GridPoint>) -> String {
    p.map_or_else(|| "nothing".into(), |p| p.to_string())
}
