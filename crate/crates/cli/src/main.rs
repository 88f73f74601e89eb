use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use gscolor::density::{bound_report, chromatic_index_with, BoundReport, ExactLimits};
use gscolor::engine::{color, verify_result, ColorOptions, ColoringResult, EngineError, ResultJson};
use gscolor::generate;
use gscolor::graph::text;
use gscolor::Multigraph;

const BENCH_COLUMNS: &str =
    "index,n,m,delta,mu,gamma,lower,gs_upper,chi_exact,k_used,direct,kempe,tashkinov,fallback,status";

#[derive(Parser)]
#[command(name = "gscolor", version, about = "Multigraph edge coloring within max{Δ+1, ⌈Γ⌉} colors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one instance and print the result as JSON.
    Color {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        output: Output,
    },
    /// Print the bound family of one instance as JSON.
    Report {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Check a result file against a graph file.
    Verify { graph: PathBuf, result: PathBuf },
    /// Color every instance of a generator and tabulate.
    Bench {
        /// Generator and its arguments; no words gives an empty run.
        #[arg(long = "gen", num_args = 0.., value_name = "GEN", required = true)]
        spec: Vec<String>,
        #[command(flatten)]
        engine: EngineFlags,
        /// Compute χ′ exactly and check it sits between the bounds.
        #[arg(long)]
        oracle: bool,
        /// Add a wall-clock column (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file in the `p multigraph n m` text format.
    #[arg(conflicts_with = "spec", required_unless_present = "spec")]
    path: Option<PathBuf>,
    /// shannon MU | petersen | ring N MU | random N M SEED | exhaustive N M_MAX
    #[arg(long = "gen", num_args = 1.., value_name = "GEN")]
    spec: Option<Vec<String>>,
}

#[derive(Args)]
struct EngineFlags {
    #[arg(long, env = "GS_SEED", default_value_t = 0)]
    seed: u64,
    /// Colorings the recoloring search may visit per edge.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 25)]
    fallback_threshold: usize,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON (bench prints CSV otherwise).
    #[arg(long)]
    json: bool,
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: anyhow::Error) -> Self {
        Failure { code, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::new(1, error)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

fn options(flags: &EngineFlags) -> ColorOptions {
    let mut options = ColorOptions {
        seed: flags.seed,
        fallback_threshold: flags.fallback_threshold,
        ..ColorOptions::default()
    };
    if let Some(budget) = flags.budget {
        options.budget.search = budget;
    }
    options
}

fn number(words: &[String], i: usize) -> anyhow::Result<u64> {
    let word = words.get(i).ok_or_else(|| anyhow!("generator `{}` needs more arguments", words[0]))?;
    word.parse().with_context(|| format!("`{word}` is not a number"))
}

fn generate(words: &[String]) -> anyhow::Result<Vec<Multigraph>> {
    let Some(name) = words.first() else { return Ok(Vec::new()) };
    let arity = match name.as_str() {
        "petersen" => 0,
        "shannon" => 1,
        "ring" | "exhaustive" => 2,
        "random" => 3,
        other => bail!("unknown generator `{other}`"),
    };
    if words.len() != arity + 1 {
        bail!("generator `{name}` takes {arity} arguments");
    }
    let arg = |i| number(words, i).map(|v| v as usize);
    Ok(match name.as_str() {
        "petersen" => vec![generate::petersen()],
        "shannon" => vec![generate::shannon(arg(1)?)],
        "ring" => vec![generate::ring(arg(1)?, arg(2)?)],
        "random" => vec![generate::random(arg(1)?, arg(2)?, number(words, 3)?)],
        _ => generate::exhaustive(arg(1)?, arg(2)?),
    })
}

fn read_graph(path: &PathBuf) -> anyhow::Result<Multigraph> {
    let source = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text::parse(&source).with_context(|| format!("parsing {}", path.display()))
}

fn single(input: &Input) -> anyhow::Result<Multigraph> {
    match (&input.path, &input.spec) {
        (Some(path), _) => read_graph(path),
        (None, Some(words)) => {
            let mut graphs = generate(words)?;
            if graphs.len() != 1 {
                bail!("expected one instance, the generator gives {}", graphs.len());
            }
            Ok(graphs.remove(0))
        }
        (None, None) => bail!("no input"),
    }
}

fn emit(output: &Output, body: &str) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(body.as_bytes()).context("writing stdout"),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Color { input, engine, output } => {
            let g = single(&input)?;
            match color(&g, &options(&engine)) {
                Ok(result) => {
                    let json = serde_json::to_string(&result.to_json(&g)).context("serializing")?;
                    emit(&output, &(json + "\n"))?;
                    Ok(())
                }
                Err(EngineError::Incomplete { k, edge, partial }) => {
                    let partial = serde_json::to_string(&partial.to_json(&g)).context("serializing")?;
                    emit(&output, &(partial + "\n"))?;
                    Err(Failure::new(2, anyhow!("incomplete (budget): edge {edge} with {k} colors")))
                }
                Err(err) => Err(anyhow::Error::from(err).into()),
            }
        }
        Command::Report { input, output } => {
            let g = single(&input)?;
            let report = bound_report(&g).context("computing bounds")?;
            emit(&output, &(serde_json::to_string(&report).context("serializing")? + "\n"))?;
            Ok(())
        }
        Command::Verify { graph, result } => {
            let g = read_graph(&graph)?;
            let body = fs::read_to_string(&result).with_context(|| format!("reading {}", result.display()))?;
            let json: ResultJson = serde_json::from_str(&body).context("parsing result")?;
            let parsed = ColoringResult::from_json(&g, &json).map_err(|err| Failure::new(3, err.into()))?;
            if verify_result(&g, &parsed) {
                Ok(())
            } else {
                Err(Failure::new(4, anyhow!("result does not verify")))
            }
        }
        Command::Bench { spec, engine, oracle, timing, output } => {
            let graphs = generate(&spec)?;
            let options = options(&engine);
            let rows: Vec<Row> = graphs
                .par_iter()
                .enumerate()
                .map(|(index, g)| bench_row(index, g, &options, oracle))
                .collect();
            let body = if output.json {
                serde_json::to_string(&rows.iter().map(|r| r.json(timing)).collect::<Vec<_>>())
                    .context("serializing")?
                    + "\n"
            } else {
                let mut columns = BENCH_COLUMNS.to_string();
                if timing {
                    columns.push_str(",time_ms");
                }
                let mut body = format!("# gs-bench v1 columns: {columns}\n{columns}\n");
                for row in &rows {
                    body.push_str(&row.csv(timing));
                    body.push('\n');
                }
                body
            };
            emit(&output, &body)?;
            let violations = rows.iter().filter(|r| r.status == "violation").count();
            let incomplete = rows.iter().filter(|r| r.status == "incomplete").count();
            if violations > 0 {
                return Err(Failure::new(5, anyhow!("{violations} instance(s) violate the bounds")));
            }
            if incomplete > 0 {
                return Err(Failure::new(2, anyhow!("{incomplete} instance(s) incomplete")));
            }
            Ok(())
        }
    }
}

struct Row {
    index: usize,
    report: Option<BoundReport>,
    n: usize,
    m: usize,
    delta: usize,
    mu: usize,
    chi: Option<usize>,
    k_used: Option<usize>,
    counts: [usize; 4],
    status: &'static str,
    millis: u128,
}

fn bench_row(index: usize, g: &Multigraph, options: &ColorOptions, oracle: bool) -> Row {
    let start = Instant::now();
    let stats = g.stats();
    let report = bound_report(g).ok();
    let outcome = color(g, options);
    let mut status = match &outcome {
        Ok(result) if verify_result(g, result) => "ok",
        Ok(_) => "violation",
        Err(_) => "incomplete",
    };
    let (k_used, counts) = match &outcome {
        Ok(result) => (Some(result.k_used), result.method_counts()),
        Err(_) => (None, [0; 4]),
    };
    let chi = if oracle {
        match chromatic_index_with(g, &ExactLimits::default()) {
            Ok(chi) => {
                let sandwich = report.as_ref().is_none_or(|r| r.lower <= chi && chi <= r.gs_upper);
                if !sandwich || k_used.is_some_and(|k| k < chi) {
                    status = "violation";
                }
                Some(chi)
            }
            Err(_) => {
                if status == "ok" {
                    status = "oracle_scale";
                }
                None
            }
        }
    } else {
        None
    };
    Row {
        index,
        report,
        n: stats.n,
        m: stats.m,
        delta: stats.max_degree,
        mu: stats.max_multiplicity,
        chi,
        k_used,
        counts,
        status,
        millis: start.elapsed().as_millis(),
    }
}

fn cell<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

impl Row {
    fn csv(&self, timing: bool) -> String {
        let r = self.report.as_ref();
        let mut line = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.index,
            self.n,
            self.m,
            self.delta,
            self.mu,
            cell(r.map(|r| r.gamma)),
            cell(r.map(|r| r.lower)),
            cell(r.map(|r| r.gs_upper)),
            cell(self.chi),
            cell(self.k_used),
            self.counts[0],
            self.counts[1],
            self.counts[2],
            self.counts[3],
            self.status
        );
        if timing {
            line.push_str(&format!(",{}", self.millis));
        }
        line
    }

    fn json(&self, timing: bool) -> serde_json::Value {
        let mut value = serde_json::json!({
            "index": self.index,
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "mu": self.mu,
            "report": self.report,
            "chi_exact": self.chi,
            "k_used": self.k_used,
            "methods": {
                "direct": self.counts[0],
                "kempe": self.counts[1],
                "tashkinov": self.counts[2],
                "fallback": self.counts[3],
            },
            "status": self.status,
        });
        if timing {
            value["time_ms"] = serde_json::json!(self.millis as u64);
        }
        value
    }
}
