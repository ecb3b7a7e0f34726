use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grapheq::factors::{factor_report, FactorReport, Route};
use grapheq::graph::emit_graph6;
use grapheq::ledger::{run_ledger, LedgerEntry};
use grapheq::search::{class_search, describe, for_each_unicyclic, ClassMode, ClassReport, SearchOptions};
use grapheq::{build_graph, indpoly, GraphSpec, PolyCache};

#[derive(Parser)]
#[command(name = "grapheq", version, about = "Independence polynomials and the equivalence classes of odd cycles")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// JSON-lines polynomial cache, loaded before and saved after the command
    #[arg(long, global = true, env = "GRAPHEQ_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Shuffle candidate order; results do not depend on it
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Structured,
    AllGraphs,
    Unicyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Division,
    Transform,
}

#[derive(Subcommand)]
enum Command {
    /// Print I(G, x) for a graph spec such as C9, "C3 + A(2,1)" or g6:C~
    Poly {
        #[arg(value_parser = parse_spec)]
        graph: GraphSpec,
    },
    /// Factor I(C_n, x) for odd n and check the closed-form roots
    Factor {
        n: u64,
        #[arg(long, value_enum, default_value_t = RouteArg::Division)]
        route: RouteArg,
    },
    /// Compute the independence equivalence class of C_n
    Class {
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Structured)]
        mode: ModeArg,
        /// Keep unicyclic components whose polynomial does not divide I(C_n)
        #[arg(long)]
        no_divisor_pruning: bool,
    },
    /// Recompute every published value; exits 3 if any disagrees
    VerifyPaper {
        #[arg(long, default_value_t = 45)]
        max_n: usize,
    },
    /// List connected unicyclic graphs on v vertices
    Unicyclic { v: usize },
}

fn parse_spec(s: &str) -> Result<GraphSpec, String> {
    s.parse().map_err(|e: grapheq::Error| e.to_string())
}

enum Failure {
    Domain(String),
    Ledger,
}

impl From<grapheq::Error> for Failure {
    fn from(e: grapheq::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("values serialize") + "\n"));
}

fn to_value(t: &impl serde::Serialize) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn factor_text(r: &FactorReport) -> String {
    let route = match r.set.route {
        Route::Division => "division",
        Route::Transform => "transform",
    };
    let mut s = format!("I(C{}, x) factors ({route} route):\n", r.set.n);
    for (m, f) in &r.set.factors {
        s += &format!("  f_{m} = {f}\n");
    }
    let rc = &r.root_check;
    s += &format!(
        "root check: max residual {:.3e}, tolerance {:.0e}, {}\n",
        rc.max_residual,
        rc.tolerance,
        if rc.pass { "pass" } else { "FAIL" }
    );
    s
}

fn ledger_text(entries: &[LedgerEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let mark = if e.passed() { "pass" } else { "FAIL" };
        s += &format!("{mark}  {:<24} {}\n", e.id, e.citation);
        if !e.passed() {
            s += &format!("      expected {}\n      computed {}\n", e.expected, e.computed);
        }
    }
    let failed = entries.iter().filter(|e| !e.passed()).count();
    s += &format!("{} entries, {failed} failed\n", entries.len());
    s
}

fn run(cli: &Cli, cache: &PolyCache) -> Result<(), Failure> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Poly { graph } => {
            let p = indpoly(&build_graph(graph)?, cache)?;
            if json {
                print_json(&json!({ "coeffs": p.to_decimal_strings() }));
            } else {
                emit(&format!("{p}\n"));
            }
        }
        Command::Factor { n, route } => {
            let route = match route {
                RouteArg::Division => Route::Division,
                RouteArg::Transform => Route::Transform,
            };
            let r = factor_report(*n, route)?;
            if json {
                print_json(&to_value(&r));
            } else {
                emit(&factor_text(&r));
            }
        }
        Command::Class { n, mode, no_divisor_pruning } => {
            let mode = match mode {
                ModeArg::Structured => ClassMode::Structured,
                ModeArg::AllGraphs => ClassMode::ExhaustiveAllGraphs,
                ModeArg::Unicyclic => ClassMode::ExhaustiveUnicyclicMultisets,
            };
            let opts = SearchOptions { seed: cli.seed, divisor_pruning: !no_divisor_pruning };
            let r: ClassReport = class_search(*n, mode, cache, &opts)?;
            if json {
                print_json(&to_value(&r));
            } else {
                emit(&r.to_text());
            }
        }
        Command::VerifyPaper { max_n } => {
            let entries = run_ledger(*max_n)?;
            if json {
                print_json(&to_value(&entries));
            } else {
                emit(&ledger_text(&entries));
            }
            if entries.iter().any(|e| !e.passed()) {
                return Err(Failure::Ledger);
            }
        }
        Command::Unicyclic { v } => {
            let mut rows = Vec::new();
            let mut failure = None;
            for_each_unicyclic(*v, usize::MAX, |g, _| {
                if failure.is_some() {
                    return;
                }
                match (emit_graph6(&g), describe(&g)) {
                    (Ok(g6), Ok(d)) => {
                        if json {
                            rows.push(json!({ "graph6": g6, "description": d.to_string() }));
                        } else {
                            emit(&format!("{g6}\t{d}\n"));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => failure = Some(e),
                }
            })?;
            if let Some(e) = failure {
                return Err(e.into());
            }
            if json {
                print_json(&Value::Array(rows));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot configure {k} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let cache = PolyCache::new();
    if let Some(path) = &cli.cache {
        if let Err(e) = cache.load(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = run(&cli, &cache);
    if let Some(path) = &cli.cache {
        if let Err(e) = cache.save(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Ledger) => ExitCode::from(3),
    }
}
