//! `cutcover`: command-line front end for the cut-covering toolkit.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cutcover::cutspace::{max_cut, CutFamily};
use cutcover::graph::{generate, parse_graph, write_graph, Family};
use cutcover::invariant::{
    bounds, dual_symmetric, verify_certificate_file, x_exact, CertificateFile, DualCertificate,
};
use cutcover::random::run_experiment;
use cutcover::rational::{self, Rational};
use cutcover::spectral::spectral_density_bound;
use cutcover::suites::{run_suite, Suite, SuiteOptions, SuiteReport};
use cutcover::{Error, Graph};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(name = "cutcover", version, about = "Exact fractional cut-covering numbers of small graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named graph in the edge-list format.
    Gen {
        /// complete, cycle, path, complete-bipartite, petersen, kneser,
        /// cube-power, cube-layer or circular-clique.
        family: String,
        params: Vec<usize>,
        /// Destination file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute x(G) and chi_q(G) for a graph file.
    Compute {
        file: PathBuf,
        /// Include the primal and dual certificates in the report.
        #[arg(long)]
        certificate: bool,
        /// Also write the certificate file here.
        #[arg(long, value_name = "PATH")]
        certificate_out: Option<PathBuf>,
        /// Add lower and upper bounds.
        #[arg(long)]
        bounds: bool,
        /// Add the orbit-averaged optimal dual.
        #[arg(long)]
        dual_symmetric: bool,
    },
    /// Run a verification suite.
    Verify {
        /// values, cube, binom, operations, kneser, polytope or all.
        suite: String,
        /// Upper end of the binomial scan.
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Sample G(n, p) and record the edge-count and max-cut claims.
    Random {
        n: usize,
        /// Edge probability as a decimal or p/q.
        p: String,
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        delta: String,
        /// Also solve for x on every sample.
        #[arg(long)]
        with_x: bool,
        /// Write the per-trial records as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Check a certificate file against a graph file.
    CertCheck { graph: PathBuf, certificate: PathBuf },
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    input: Value,
    results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Value>,
    timing: Timing,
    version: &'static str,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

/// A finished command: the report body and whether its checks passed.
struct Outcome {
    input: Value,
    results: Value,
    certificates: Option<Value>,
    passed: bool,
}

impl Outcome {
    fn ok(input: Value, results: Value) -> Self {
        Outcome { input, results, certificates: None, passed: true }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeLimit { .. } | Error::BudgetExceeded(_) => EXIT_SIZE,
        Error::Verification(_) | Error::OracleContract(_) => EXIT_VERIFICATION,
        Error::CertificateMismatch(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> cutcover::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> cutcover::Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> cutcover::Result<Graph> {
    parse_graph(&read(path)?)
}

fn graph_input(path: &Path, g: &Graph) -> Value {
    json!({"file": path.display().to_string(), "vertices": g.n(), "edges": g.m()})
}

fn dual_map(g: &Graph, y: &[Rational]) -> BTreeMap<String, String> {
    g.edges().iter().zip(y).map(|((u, v), w)| (format!("{u}-{v}"), rational::format(w))).collect()
}

fn cmd_gen(family: &str, params: &[usize], output: Option<&Path>) -> cutcover::Result<Option<Outcome>> {
    let g = generate(Family::parse(family, params)?)?;
    let text = write_graph(&g);
    let Some(path) = output else {
        print!("{text}");
        return Ok(None);
    };
    write(path, &text)?;
    let input = json!({"family": family, "params": params});
    Ok(Some(Outcome::ok(input, json!({"file": path.display().to_string(), "vertices": g.n(), "edges": g.m()}))))
}

fn cmd_compute(
    file: &Path,
    certificate: bool,
    certificate_out: Option<&Path>,
    with_bounds: bool,
    with_dual_symmetric: bool,
) -> cutcover::Result<Outcome> {
    let g = load_graph(file)?;
    let r = x_exact(&g)?;
    let mut results = json!({
        "x": rational::format(&r.value),
        "chi_q": rational::format(&r.chi_q()),
        "route": r.route,
    });
    if with_bounds {
        results["bounds"] = serde_json::to_value(bounds(&g)?).expect("bounds serialize");
        results["spectral_density_bound"] = match spectral_density_bound(&g) {
            Ok(b) => serde_json::to_value(b).expect("bound serializes"),
            Err(e) => json!({"unavailable": e.to_string()}),
        };
    }
    if with_dual_symmetric {
        let d: DualCertificate = dual_symmetric(&g)?;
        results["dual_symmetric"] = json!({
            "value": rational::format(&d.value),
            "orbit_constant": d.orbit_constant,
            "y": dual_map(&g, &d.y),
        });
    }
    let file_cert = CertificateFile::from_result(&g, &r);
    if let Some(path) = certificate_out {
        write(path, &file_cert.to_json())?;
    }
    let certificates = certificate.then(|| serde_json::to_value(&file_cert).expect("certificate serializes"));
    Ok(Outcome { input: graph_input(file, &g), results, certificates, passed: true })
}

fn cmd_verify(suite: &str, nmax: usize) -> cutcover::Result<Outcome> {
    let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::parse(suite)?] };
    let opts = SuiteOptions { nmax, ..SuiteOptions::default() };
    let reports: Vec<SuiteReport> = suites.iter().map(|s| run_suite(*s, &opts)).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    let results = json!({"passed": passed, "suites": reports});
    Ok(Outcome { input: json!({"suite": suite, "nmax": nmax}), results, certificates: None, passed })
}

fn cmd_random(
    n: usize,
    p: &str,
    trials: u64,
    seed: u64,
    delta: &str,
    with_x: bool,
    csv: Option<&Path>,
) -> cutcover::Result<Outcome> {
    let (p, delta) = (rational::parse(p)?, rational::parse(delta)?);
    let e = run_experiment(n, &p, trials, seed, &delta, with_x)?;
    if let Some(path) = csv {
        write(path, &e.to_csv())?;
    }
    let input = json!({
        "n": n,
        "p": rational::format(&p),
        "trials": trials,
        "seed": seed,
        "delta": rational::format(&delta),
    });
    let results = json!({"summary": e.summary, "records": e.records});
    Ok(Outcome::ok(input, results))
}

/// Names the first edge the cover misses and the heaviest cut of the dual.
fn violations(g: &Graph, file: &CertificateFile) -> cutcover::Result<Vec<String>> {
    let mut out = Vec::new();
    let one = rational::int(1);
    let family: &CutFamily = &file.primal;
    if let Some(i) = family.undercovered_edge(g, &one)? {
        let (u, v) = g.edges()[i];
        out.push(format!("edge {u}-{v} is covered with weight {} < 1", family.coverage(g)[i]));
    }
    let y = file.dual_for(g)?.y;
    if y.iter().any(|w| *w < Rational::from_integer(0.into())) {
        out.push("dual has a negative edge weight".into());
    } else {
        let heavy = max_cut(g, Some(&y))?;
        if heavy.value > one {
            out.push(format!("cut {} carries dual weight {} > 1", heavy.witness.hex(), heavy.value));
        }
    }
    let primal_total = family.total_weight();
    let dual_total: Rational = y.iter().sum();
    if primal_total != file.x || dual_total != file.x {
        out.push(format!("stated x {} but primal total {primal_total} and dual total {dual_total}", file.x));
    }
    Ok(out)
}

fn cmd_cert_check(graph: &Path, certificate: &Path) -> cutcover::Result<Outcome> {
    let g = load_graph(graph)?;
    let file = CertificateFile::from_json(&read(certificate)?)?;
    let input = json!({"graph": graph_input(graph, &g), "certificate": certificate.display().to_string()});
    match verify_certificate_file(&g, &file) {
        Ok(check) => {
            let passed = check.passed();
            let mut results = serde_json::to_value(&check).expect("check serializes");
            results["status"] = json!(if passed { "pass" } else { "fail" });
            results["violations"] = json!(violations(&g, &file)?);
            if !check.chi_q_consistent {
                results["violations"].as_array_mut().expect("array").push(json!("chi_q does not equal 2/(2 - x)"));
            }
            Ok(Outcome { input, results, certificates: None, passed })
        }
        Err(Error::CertificateMismatch(detail)) => {
            let results = json!({"status": "mismatch", "detail": detail});
            Ok(Outcome { input, results, certificates: None, passed: false })
        }
        Err(e) => Err(e),
    }
}

fn print_text(value: &Value, prefix: &str) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                print_text(v, &key);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                print_text(v, &format!("{prefix}[{i}]"));
            }
        }
        Value::String(s) => println!("{prefix}: {s}"),
        other => println!("{prefix}: {other}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Gen { family, params, output } => match cmd_gen(family, params, output.as_deref()) {
            Ok(None) => return ExitCode::SUCCESS,
            Ok(Some(o)) => Ok(o),
            Err(e) => Err(e),
        },
        Command::Compute { file, certificate, certificate_out, bounds, dual_symmetric } => {
            cmd_compute(file, *certificate, certificate_out.as_deref(), *bounds, *dual_symmetric)
        }
        Command::Verify { suite, nmax } => cmd_verify(suite, *nmax),
        Command::Random { n, p, trials, seed, delta, with_x, csv } => {
            cmd_random(*n, p, *trials, *seed, delta, *with_x, csv.as_deref())
        }
        Command::CertCheck { graph, certificate } => cmd_cert_check(graph, certificate),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let report = Report {
        command: std::env::args().skip(1).collect(),
        input: outcome.input,
        results: outcome.results,
        certificates: outcome.certificates,
        timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
        version: env!("CARGO_PKG_VERSION"),
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => print_text(&serde_json::to_value(&report).expect("report serializes"), ""),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
