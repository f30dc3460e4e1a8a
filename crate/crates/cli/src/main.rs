use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use kangulate::io::{emit_svg, parse_points, ResultDocument, SvgStyle};
use kangulate::oracle::{brute_force_kangulation, conjecture_scan, OracleResult, SearchBudget};
use kangulate::verify::{verify_edges, Regime};
use kangulate::{feasibility, kangulate, KangulateError, KangulateOutcome, PointSet};

const OK: u8 = 0;
const USAGE: u8 = 1;
const INFEASIBLE: u8 = 2;
const NOT_VERIFIED: u8 = 3;
const HONEST_FAILURE: u8 = 4;

/// Build and check k-angulations of planar point sets.
#[derive(Parser)]
#[command(name = "kangulate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a k-angulation of the input points.
    Angulate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        /// Result document; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Record construction time in the document.
        #[arg(long)]
        timing: bool,
        /// Draw edges and points only.
        #[arg(long)]
        no_shade: bool,
    },
    /// Check a result document against the input points.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exhaustive search on a small point set.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 200_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 120)]
        time_limit_secs: u64,
    },
    /// Compare the interior-point condition with the construction and the
    /// oracle on random sets.
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
    },
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(USAGE, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("kangulate: {msg}");
            ExitCode::from(code)
        }
    }
}

fn check_k(k: usize) -> Result<(), Failure> {
    if k < 3 {
        return Err(Failure(USAGE, format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

fn read_points(path: &Path) -> Result<PointSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
    parse_points(&text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(USAGE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Angulate {
            k,
            input,
            out,
            svg,
            timing,
            no_shade,
        } => {
            check_k(k)?;
            let ps = read_points(&input)?;
            let start = Instant::now();
            let outcome = match kangulate(&ps, k) {
                Ok(o) => o,
                Err(e @ KangulateError::HonestFailure { .. }) => return Err(Failure(HONEST_FAILURE, e.to_string())),
                Err(e) => return Err(Failure(USAGE, e.to_string())),
            };
            let elapsed = start.elapsed();
            let mut doc = ResultDocument::from_outcome(&ps, k, &outcome);
            if timing {
                doc.timing_ms = Some(elapsed.as_secs_f64() * 1e3);
            }
            write_or_print(out.as_deref(), &doc.to_json())?;
            match outcome {
                KangulateOutcome::Found(kg) => {
                    if let Some(path) = svg {
                        let style = SvgStyle {
                            shade_faces: !no_shade,
                            ..SvgStyle::default()
                        };
                        write_or_print(Some(&path), &emit_svg(&kg.graph, style))?;
                    }
                    Ok(OK)
                }
                KangulateOutcome::Infeasible { j, interior, .. } => {
                    eprintln!("kangulate: no {k}-angulation: {interior} interior point(s), at least {j} needed");
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Verify { k, input, graph } => {
            check_k(k)?;
            let ps = read_points(&input)?;
            let text = std::fs::read_to_string(&graph).map_err(|e| Failure(USAGE, format!("{}: {e}", graph.display())))?;
            let doc = ResultDocument::from_json(&text)?;
            if !doc.feasible {
                eprintln!("kangulate: document records an infeasible instance");
                return Ok(INFEASIBLE);
            }
            let report = verify_edges(&ps, &doc.edge_list(), ps.points(), k);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.overall { OK } else { NOT_VERIFIED })
        }
        Command::Oracle {
            k,
            input,
            max_points,
            max_nodes,
            time_limit_secs,
        } => {
            check_k(k)?;
            let ps = read_points(&input)?;
            let budget = SearchBudget {
                max_points,
                max_nodes,
                time_limit: Some(Duration::from_secs(time_limit_secs)),
            };
            let f = feasibility(&ps, k);
            let result = brute_force_kangulation(&ps, k, budget);
            let mut s = String::new();
            let _ = writeln!(s, "k\tn\tj\tinterior\tpredicted\tregime\toracle");
            let regime = match f.regime {
                Regime::Exact => "exact",
                Regime::NecessaryOnly => "necessary_only",
            };
            let _ = writeln!(
                s,
                "{k}\t{}\t{}\t{}\t{}\t{regime}\t{}",
                f.n,
                f.j,
                f.interior,
                f.feasible,
                result.label()
            );
            if let OracleResult::Found(g) = &result {
                let edges: Vec<String> = g.edges_iter().map(|(a, b)| format!("{a}-{b}")).collect();
                let _ = writeln!(s, "edges\t{}", edges.join(" "));
            }
            print!("{s}");
            Ok(match result {
                OracleResult::Found(_) => OK,
                OracleResult::NotFound => INFEASIBLE,
                OracleResult::Exhausted { .. } => HONEST_FAILURE,
            })
        }
        Command::Scan {
            k,
            n_min,
            n_max,
            seeds,
            max_points,
        } => {
            check_k(k)?;
            if n_min > n_max {
                return Err(Failure(USAGE, format!("empty range {n_min}..={n_max}")));
            }
            let budget = SearchBudget {
                max_points,
                ..SearchBudget::default()
            };
            let records = conjecture_scan(k, n_min..=n_max, seeds, budget);
            let mut s = String::from("n\tseed\tj\tinterior\tpredicted\tconstruction\toracle\tdiscrepancy\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.n,
                    r.seed,
                    r.j,
                    r.interior,
                    r.predicted,
                    r.construction,
                    r.oracle.as_deref().unwrap_or("-"),
                    r.discrepancy
                );
            }
            let bad = records.iter().filter(|r| r.discrepancy).count();
            let _ = writeln!(s, "# {} instances, {bad} discrepancies", records.len());
            print!("{s}");
            Ok(if bad == 0 { OK } else { NOT_VERIFIED })
        }
    }
}
