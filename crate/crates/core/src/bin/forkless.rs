use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use forkless::format::{self, NamedQuiver};
use forkless::graph::{ExplorationResult, Finiteness, GraphStatus, PartStatus};
use forkless::verify::{self, ClaimStatus};
use forkless::{classify, explore, forkless_part, mutation_finiteness, preforkless_part, Budget, MutationSequence};

const OK: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

/// Labelled quiver mutation: classification, forkless and pre-forkless
/// parts, and finiteness.
///
/// Exit status: 0 success, 1 failed claim, 2 usage or input error,
/// 3 budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "forkless", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. Defaults to json for classify, mutate and finiteness,
    /// table for the rest, dot for export-dot.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Node budget.
    #[arg(long, global = true, env = "FORKLESS_MAX_NODES", default_value_t = 100_000)]
    max_nodes: usize,

    /// Largest arrow multiplicity any explored quiver may have.
    #[arg(long, global = true, default_value_t = 1_000_000_000_000_000)]
    max_weight: u64,

    /// Do not expand nodes at this depth.
    #[arg(long, global = true)]
    max_depth: Option<usize>,

    /// Worker threads for exploration (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Expand {
    /// Expand every node.
    All,
    /// Expand non-forks.
    NonFork,
    /// Expand quivers that are neither forks nor pre-forks.
    NonBoundary,
}

/// Exactly one quiver source.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Quiver file in text or JSON form, or `-` for standard input.
    quiver: Option<PathBuf>,
    /// Quiver given inline, in text or JSON form.
    #[arg(long)]
    inline: Option<String>,
    /// A built-in example by name (see `verify --list-examples`).
    #[arg(long)]
    example: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the full classification report.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Apply a mutation sequence (reduced first).
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertices, indices or names.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Breadth-first exploration of the mutation graph.
    Explore {
        #[command(flatten)]
        input: Input,
        /// Which nodes to expand.
        #[arg(long, value_enum, default_value_t = Expand::NonFork)]
        expand: Expand,
        /// Also write the explored graph as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the forkless part.
    Forkless {
        #[command(flatten)]
        input: Input,
    },
    /// Compute the pre-forkless part.
    Preforkless {
        #[command(flatten)]
        input: Input,
    },
    /// Decide mutation-finiteness componentwise.
    Finiteness {
        #[command(flatten)]
        input: Input,
    },
    /// Run the built-in claim suite.
    Verify {
        /// Only claims whose id contains this (`*` is a wildcard).
        #[arg(long)]
        filter: Option<String>,
        /// List the built-in examples and exit.
        #[arg(long)]
        list_examples: bool,
    },
    /// Explore and print the graph as DOT.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Expand::NonFork)]
        expand: Expand,
    },
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = Budget { max_nodes: cli.max_nodes, max_arrow_weight: cli.max_weight, max_depth: cli.max_depth };
    budget.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(anyhow!("--workers must be positive"));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build()?;
    pool.install(|| dispatch(cli, &budget))
}

fn read_input(input: &Input) -> Result<NamedQuiver> {
    if let Some(name) = &input.example {
        return verify::example(name)
            .map(|e| e.quiver)
            .ok_or_else(|| anyhow!("no built-in example named {name:?}"));
    }
    let text = match (&input.inline, &input.quiver) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => return Err(anyhow!("no quiver given")),
    };
    Ok(format::parse_auto(&text)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<Output> {
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Classify { input } => {
            let q = read_input(input)?;
            let report = classify(&q.quiver);
            let text = match fmt(OutputFormat::Json) {
                OutputFormat::Table => {
                    let mut s = format!("class: {}\n", report.class().name());
                    let v = serde_json::to_value(&report)?;
                    for (k, val) in v.as_object().expect("struct") {
                        s.push_str(&format!("{k}: {val}\n"));
                    }
                    s
                }
                OutputFormat::Json => pretty(&json!({
                    "quiver": format::to_json_value(&q),
                    "class": report.class(),
                    "plain": report.is_plain(),
                    "boundary": report.is_boundary(),
                    "report": report,
                })),
                OutputFormat::Dot => return Err(anyhow!("classify has no DOT output")),
            };
            Ok(Output { text, code: OK })
        }
        Command::Mutate { input, seq } => {
            let q = read_input(input)?;
            let steps = seq
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty() && *s != "[" && *s != "]")
                .map(|t| {
                    let t = t.trim_matches(|c| c == '[' || c == ']');
                    match &q.names {
                        Some(names) => names
                            .iter()
                            .position(|n| n == t)
                            .or_else(|| t.parse().ok())
                            .ok_or_else(|| anyhow!("unknown vertex {t:?}")),
                        None => t.parse::<usize>().map_err(|_| anyhow!("bad vertex {t:?}")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let w = MutationSequence::new(steps);
            let out = NamedQuiver { quiver: q.quiver.mutate_seq(&w)?, names: q.names.clone() };
            let text = match fmt(OutputFormat::Json) {
                OutputFormat::Json => format!("{}\n", format::to_json(&out)),
                OutputFormat::Table => format::to_text(&out),
                OutputFormat::Dot => return Err(anyhow!("mutate has no DOT output")),
            };
            Ok(Output { text, code: OK })
        }
        Command::Explore { input, expand, dot } => {
            let q = read_input(input)?;
            let g = run_explore(&q, budget, *expand)?;
            if let Some(path) = dot {
                fs::write(path, format::graph_to_dot(&g, q.names.as_deref()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let code = if g.is_complete() { OK } else { BUDGET };
            let text = match fmt(OutputFormat::Table) {
                OutputFormat::Json => pretty(&format::graph_to_json(&g, q.names.as_deref())),
                OutputFormat::Dot => format::graph_to_dot(&g, q.names.as_deref()),
                OutputFormat::Table => {
                    let interior = g.interior().count();
                    let mut s = format!(
                        "{}: {} nodes, {} expanded, {} boundary, {} edges\n",
                        status_word(&g.status),
                        g.len(),
                        interior,
                        g.len() - interior,
                        g.edges.len()
                    );
                    if let GraphStatus::BudgetExceeded(snap) = &g.status {
                        s.push_str(&format!("{}\n", serde_json::to_string(snap)?));
                    }
                    s
                }
            };
            Ok(Output { text, code })
        }
        Command::Forkless { input } => {
            let q = read_input(input)?;
            let r = forkless_part(&q.quiver, budget)?;
            part_output(&q, &r, fmt(OutputFormat::Table), "non-forks")
        }
        Command::Preforkless { input } => {
            let q = read_input(input)?;
            let r = preforkless_part(&q.quiver, budget)?;
            part_output(&q, &r, fmt(OutputFormat::Table), "pre-forkless quivers")
        }
        Command::Finiteness { input } => {
            let q = read_input(input)?;
            let f = mutation_finiteness(&q.quiver, budget)?;
            let code = if matches!(f, Finiteness::Unknown { .. }) { BUDGET } else { OK };
            let text = match fmt(OutputFormat::Json) {
                OutputFormat::Json => pretty(&json!({
                    "quiver": format::to_json_value(&q),
                    "verdict": f,
                })),
                OutputFormat::Table => match &f {
                    Finiteness::Finite { class_size, .. } => format!("Finite: labelled class of {class_size} quivers\n"),
                    Finiteness::Infinite { sequence, returns, component, .. } => format!(
                        "Infinite: fork with point of return {returns} on component {component} after {sequence}\n"
                    ),
                    Finiteness::Unknown { snapshot, .. } => {
                        format!("Unknown: budget exceeded ({})\n", serde_json::to_string(snapshot)?)
                    }
                },
                OutputFormat::Dot => return Err(anyhow!("finiteness has no DOT output")),
            };
            Ok(Output { text, code })
        }
        Command::Verify { filter, list_examples } => {
            if *list_examples {
                let mut s = String::new();
                for e in verify::builtin_examples() {
                    s.push_str(&format!("{:<18} {}  {}\n", e.name, format::to_json(&e.quiver), e.description));
                }
                return Ok(Output { text: s, code: OK });
            }
            let results = verify::run_claims(budget, filter.as_deref());
            if results.is_empty() {
                return Err(anyhow!("no claim matches the filter"));
            }
            let code = if results.iter().any(|r| r.status == ClaimStatus::Fail) { FAIL } else { OK };
            let text = match fmt(OutputFormat::Table) {
                OutputFormat::Json => pretty(&verify::claims_to_json(&results)),
                OutputFormat::Table => verify::claims_table(&results),
                OutputFormat::Dot => return Err(anyhow!("verify has no DOT output")),
            };
            Ok(Output { text, code })
        }
        Command::ExportDot { input, expand } => {
            let q = read_input(input)?;
            let g = run_explore(&q, budget, *expand)?;
            let text = match fmt(OutputFormat::Dot) {
                OutputFormat::Dot => format::graph_to_dot(&g, q.names.as_deref()),
                OutputFormat::Json => pretty(&format::graph_to_json(&g, q.names.as_deref())),
                OutputFormat::Table => return Err(anyhow!("export-dot has no table output")),
            };
            Ok(Output { text, code: if g.is_complete() { OK } else { BUDGET } })
        }
    }
}

fn run_explore(q: &NamedQuiver, budget: &Budget, expand: Expand) -> Result<forkless::MutationGraph> {
    Ok(match expand {
        Expand::All => explore(&q.quiver, budget, |_| true)?,
        Expand::NonFork => explore(&q.quiver, budget, |r| !r.is_fork())?,
        Expand::NonBoundary => explore(&q.quiver, budget, |r| !r.is_boundary())?,
    })
}

fn status_word(s: &GraphStatus) -> &'static str {
    match s {
        GraphStatus::Complete => "Complete",
        GraphStatus::BudgetExceeded(_) => "BudgetExceeded",
    }
}

fn part_output(q: &NamedQuiver, r: &ExplorationResult, fmt: OutputFormat, noun: &str) -> Result<Output> {
    let code = if r.is_budget_exceeded() { BUDGET } else { OK };
    let text = match fmt {
        OutputFormat::Json => {
            let mut v = serde_json::to_value(r)?;
            v["names"] = json!(q.names);
            v["count"] = json!(r.count());
            pretty(&v)
        }
        OutputFormat::Table => match &r.status {
            PartStatus::Finite { count, .. } => {
                let mut s = format!("Finite: {count} {noun}\n");
                for (class, k) in &r.class_census {
                    s.push_str(&format!("  {:<17} {k}\n", class.name()));
                }
                s.push_str(&format!(
                    "  boundary: {} forks, {} pre-forks\n",
                    r.boundary_census.forks, r.boundary_census.preforks
                ));
                s
            }
            PartStatus::Empty => format!("Empty: 0 {noun}\n"),
            PartStatus::BudgetExceeded(snap) => {
                format!("BudgetExceeded: {}\n", serde_json::to_string(snap)?)
            }
        },
        OutputFormat::Dot => match &r.graph {
            Some(g) => format::graph_to_dot(g, q.names.as_deref()),
            None => return Err(anyhow!("no graph was explored")),
        },
    };
    Ok(Output { text, code })
}
