use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lanke_core::characters::DEFAULT_DEGREE_CAP;
use lanke_core::error::{CharacterError, Error};
use lanke_core::filippov::rho_decompose;
use lanke_core::linalg::ArithmeticMode;
use lanke_core::tree_specht::{tree_specht_decompose, Kind, TPartition};
use lanke_core::verify::{self, SuiteReport};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lanke",
    version,
    about = "Symmetric-group modules of free Filippov algebras in exact arithmetic"
)]
struct Cli {
    /// Largest symmetric-group degree to attempt.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,
    /// Print a JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rational,
    Multimodular,
}

impl Mode {
    fn arithmetic(self) -> ArithmeticMode {
        match self {
            Mode::Rational => ArithmeticMode::Rational,
            Mode::Multimodular => ArithmeticMode::Multimodular,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Multimodular => "multimodular-verified",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the multilinear component for arity n and k brackets.
    Dim { n: usize, k: usize },
    /// Decomposition of that component into irreducibles.
    Decompose { n: usize, k: usize },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest partition size (presentation, phi-kernel) or N (tree-specht).
        #[arg(long)]
        max_size: Option<usize>,
        /// Largest d for phi-kernel.
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        /// Largest tree for tree-specht.
        #[arg(long, default_value_t = 4)]
        max_nodes: usize,
    },
    /// Lie representation table from major indices congruent to i mod m.
    Kw {
        m: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    /// Column counts of the constituents not coming from (n-1, k) by adding a top row.
    ConjectureScan { n: usize, k: usize },
    /// Decompose a tree Specht module, e.g. "(2 (2) (3 (4)))".
    TreeSpecht {
        mu: String,
        #[arg(long, value_enum, default_value_t = TreeKind::Second)]
        kind: TreeKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Decompositions,
    Presentation,
    PhiKernel,
    TreeSpecht,
    Stabilization,
    Kw,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeKind {
    First,
    Second,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::Character(CharacterError::DegreeCap { .. }) => EXIT_CAP,
            Error::Verification(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Outcome {
    name: &'static str,
    parameters: Value,
    payload: Value,
    text: String,
    ok: bool,
}

fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.cases {
        out.push_str(&format!(
            "{} {} [{}]\n    expected: {}\n    computed: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.case,
            c.reference,
            c.expected,
            c.computed
        ));
    }
    out.push_str(&format!(
        "{}: {} of {} cases passed",
        r.suite,
        r.cases.len() - r.failures(),
        r.cases.len()
    ));
    out
}

fn set_text(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let mode = cli.mode.arithmetic();
    let cap = cli.max_degree.unwrap_or(DEFAULT_DEGREE_CAP);
    Ok(match &cli.command {
        Command::Dim { n, k } => {
            let dim = verify::dimension(*n, *k, mode, cap)?;
            Outcome {
                name: "dim",
                parameters: json!({"n": n, "k": k}),
                payload: json!({"dim": dim}),
                text: dim.to_string(),
                ok: true,
            }
        }
        Command::Decompose { n, k } => {
            let (s, d) = rho_decompose(*n, *k, mode, cap)?;
            Outcome {
                name: "decompose",
                parameters: json!({"n": n, "k": k}),
                payload: json!({"degree": s.degree, "dim": s.dim, "decomposition": d}),
                text: format!("{d}\ndim {}", s.dim),
                ok: true,
            }
        }
        Command::Verify {
            suite,
            max_size,
            max_d,
            max_nodes,
        } => {
            let report = match suite {
                Suite::Decompositions => verify::verify_decompositions(cli.max_degree.unwrap_or(9), mode, cap),
                Suite::Presentation => verify::verify_presentations(max_size.unwrap_or(6), mode),
                Suite::PhiKernel => verify::verify_phi_kernels(max_size.unwrap_or(7), *max_d, mode),
                Suite::TreeSpecht => verify::verify_tree_specht(*max_nodes, max_size.unwrap_or(7), mode),
                Suite::Stabilization => verify::verify_stabilization(mode, cap),
                Suite::Kw => verify::verify_kw(3..=cli.max_degree.unwrap_or(8)),
            };
            Outcome {
                name: "verify",
                parameters: json!({
                    "suite": report.suite,
                    "max_size": max_size,
                    "max_d": max_d,
                    "max_nodes": max_nodes,
                    "max_degree": cli.max_degree,
                }),
                text: suite_text(&report),
                ok: report.passed(),
                payload: json!({"passed": report.passed(), "cases": report.cases}),
            }
        }
        Command::Kw { m, i } => {
            let d = verify::kw_table(*m, *i)?;
            let text = d
                .terms()
                .map(|(l, k)| format!("{l}\t{k}"))
                .collect::<Vec<_>>()
                .join("\n");
            Outcome {
                name: "kw",
                parameters: json!({"m": m, "i": i}),
                payload: json!({"decomposition": d}),
                text,
                ok: true,
            }
        }
        Command::ConjectureScan { n, k } => {
            let cols = verify::conjecture_scan(*n, *k, mode, cap)?;
            Outcome {
                name: "conjecture-scan",
                parameters: json!({"n": n, "k": k}),
                text: set_text(&cols),
                payload: json!({"column_counts": cols}),
                ok: true,
            }
        }
        Command::TreeSpecht { mu, kind } => {
            let t: TPartition = mu.parse().map_err(|e| Failure::from(Error::from(e)))?;
            if t.size() > cap {
                return Err(Error::CapExceeded { degree: t.size(), cap }.into());
            }
            let kind = match kind {
                TreeKind::First => Kind::First,
                TreeKind::Second => Kind::Second,
            };
            let (dim, d) = tree_specht_decompose(&t, kind, mode)?;
            Outcome {
                name: "tree-specht",
                parameters: json!({"mu": t.to_string(), "kind": kind}),
                text: format!("{d}\ndim {dim}"),
                payload: json!({"dim": dim, "decomposition": d}),
                ok: true,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let record = json!({
                    "command": out.name,
                    "parameters": out.parameters,
                    "payload": out.payload,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                    "arithmetic_mode": cli.mode.label(),
                });
                println!("{}", serde_json::to_string_pretty(&record).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
