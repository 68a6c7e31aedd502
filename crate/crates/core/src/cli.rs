//! Command-line driver. [`run_cli`] returns the exit code and the full
//! output instead of printing, so it can be driven from tests.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::automaton::RegisterAutomaton;
use crate::dra::{synchronizing_word_dra, DraOutcome, DEFAULT_NODE_BUDGET};
use crate::dsl::{parse_automaton, parse_word, serialize_automaton, Format, SourceDocument};
use crate::error::Error;
use crate::gadgets::{
    gen_chain_dra, gen_counter_nra, gen_three_data_shortcut, gen_tower_nra,
    reduce_nonempty_to_sync_dra, reduce_nonuniv_to_sync, reduce_sync_to_nonuniv,
};
use crate::oracle::{oracle_min_data_efficiency, oracle_min_length, OracleParams};
use crate::search::{
    bounded_sync_search, bounded_universality_witness, nonemptiness_witness, SearchBudget,
    SearchOutcome, SearchReport, Strategy,
};
use crate::semantics::Abstraction;

/// Environment variable holding the default node budget.
pub const NODE_BUDGET_ENV: &str = "REGSYNC_MAX_NODES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "regsync",
    version,
    about = "Synchronizing words for register automata"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Worker threads (searches currently run on one thread).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural checks, completeness and determinism.
    Validate { file: Option<String> },
    /// Decide synchronization of a deterministic complete automaton.
    SyncDra {
        file: Option<String>,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Search for a synchronizing word up to a length bound.
    SyncBounded {
        file: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_data: Option<usize>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Breadth-first search instead of iterative deepening.
        #[arg(long)]
        bfs: bool,
    },
    /// Search for a rejected word up to a length bound.
    Universality {
        file: Option<String>,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Search for an accepted word up to a length bound.
    Emptiness {
        file: Option<String>,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Emit a family member or a reduction of an input automaton.
    Gen {
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Successor set of all configurations (or the initial ones) after a word.
    Run {
        file: Option<String>,
        #[arg(long)]
        word: String,
        /// Start from the initial location only.
        #[arg(long)]
        initial: bool,
    },
    /// Brute-force minimal length and data efficiency.
    Oracle {
        file: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        pool: usize,
        /// Enumerate concrete data instead of choice words.
        #[arg(long)]
        concrete: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Chain,
    Counter,
    Tower,
    Shortcut,
    ReduceNonuniv,
    ReduceSync,
    ReduceNonempty,
}

#[derive(Serialize, Debug, Default)]
struct Stats {
    explored: u64,
    depth: usize,
    seconds: f64,
}

#[derive(Serialize, Debug)]
struct Report {
    command: String,
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    stats: Stats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    details: Vec<String>,
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            Error::Resource(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn default_budget() -> u64 {
    std::env::var(NODE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn load(file: Option<&str>, stdin: &mut dyn Read) -> Result<RegisterAutomaton, Failure> {
    let (text, path) = match file {
        None | Some("-") => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure(EXIT_USAGE, format!("reading stdin: {e}")))?;
            (s, "<stdin>".to_string())
        }
        Some(p) => (
            std::fs::read_to_string(p).map_err(|e| Failure(EXIT_USAGE, format!("{p}: {e}")))?,
            p.to_string(),
        ),
    };
    parse_automaton(&SourceDocument::from_path(&path, text))
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))
}

fn search_report(
    command: &str,
    a: &RegisterAutomaton,
    r: SearchReport,
    started: Instant,
) -> (i32, Report) {
    let stats = Stats {
        explored: r.stats.explored,
        depth: r.stats.depth,
        seconds: started.elapsed().as_secs_f64(),
    };
    let mut details = Vec::new();
    let (code, outcome, witness) = match r.outcome {
        SearchOutcome::Witness { choices, word } => {
            details.push(format!("distinct data: {}", word.efficiency()));
            details.push(format!("fresh choices: {}", choices.fresh_count()));
            (EXIT_OK, "witness", Some(word.display(a).to_string()))
        }
        SearchOutcome::NoneWithinBound => {
            if r.stats.space_exhausted {
                details.push("reachable space exhausted: no witness at any length".into());
            }
            (EXIT_NEGATIVE, "none-within-bound", None)
        }
        SearchOutcome::BudgetExhausted { .. } => (EXIT_INCONCLUSIVE, "budget-exhausted", None),
    };
    (
        code,
        Report {
            command: command.into(),
            outcome: outcome.into(),
            witness,
            stats,
            details,
        },
    )
}

fn budget(max_len: usize, max_nodes: Option<u64>) -> SearchBudget {
    SearchBudget::new(max_len).with_nodes(max_nodes.unwrap_or_else(default_budget))
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<(i32, Output), Failure> {
    let started = Instant::now();
    let report =
        |command: &str, code: i32, outcome: &str, witness: Option<String>, details: Vec<String>| {
            (
                code,
                Output::Report(Report {
                    command: command.into(),
                    outcome: outcome.into(),
                    witness,
                    stats: Stats {
                        seconds: started.elapsed().as_secs_f64(),
                        ..Stats::default()
                    },
                    details,
                }),
            )
        };
    Ok(match cli.command {
        Command::Validate { file } => {
            let a = load(file.as_deref(), stdin)?;
            let diags = a.validate();
            if !diags.is_empty() {
                let d = diags.iter().map(|d| d.message.clone()).collect();
                return Ok(report("validate", EXIT_NEGATIVE, "invalid", None, d));
            }
            let mut details = vec![format!(
                "{} locations, {} registers, {} letters, {} transitions",
                a.locations.len(),
                a.registers,
                a.alphabet.len(),
                a.transitions.len()
            )];
            match a.incomplete_cell() {
                Ok(None) => details.push("complete".into()),
                Ok(Some(c)) => details.push(format!(
                    "incomplete at {} on {} with input equal to registers {:?}",
                    a.locations[c.location], a.alphabet[c.letter], c.assignment
                )),
                Err(e) => details.push(e.to_string()),
            }
            match a.nondeterministic_cell() {
                Ok(None) => details.push("deterministic".into()),
                Ok(Some(c)) => details.push(format!(
                    "nondeterministic at {} on {} with input equal to registers {:?}",
                    a.locations[c.location], a.alphabet[c.letter], c.assignment
                )),
                Err(_) => {}
            }
            report("validate", EXIT_OK, "valid", None, details)
        }
        Command::SyncDra { file, max_nodes } => {
            let a = load(file.as_deref(), stdin)?;
            match synchronizing_word_dra(&a, max_nodes.unwrap_or_else(default_budget)) {
                Ok(DraOutcome::Synchronizing(w)) => {
                    let d = vec![
                        format!("distinct data: {}", w.efficiency()),
                        format!("length: {}", w.len()),
                    ];
                    report(
                        "sync-dra",
                        EXIT_OK,
                        "synchronizing",
                        Some(w.display(&a).to_string()),
                        d,
                    )
                }
                Ok(DraOutcome::NoSyncWord) => {
                    report("sync-dra", EXIT_NEGATIVE, "no-sync-word", None, vec![])
                }
                Err(Error::Inconclusive { explored }) => {
                    let (c, mut r) =
                        report("sync-dra", EXIT_INCONCLUSIVE, "inconclusive", None, vec![]);
                    if let Output::Report(rep) = &mut r {
                        rep.stats.explored = explored;
                    }
                    (c, r)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::SyncBounded {
            file,
            max_len,
            max_data,
            max_nodes,
            bfs,
        } => {
            let a = load(file.as_deref(), stdin)?;
            let mut b = budget(max_len, max_nodes);
            b.max_distinct_data = max_data;
            if bfs {
                b.strategy = Strategy::BreadthFirst;
            }
            let (c, r) = search_report("sync-bounded", &a, bounded_sync_search(&a, &b)?, started);
            (c, Output::Report(r))
        }
        Command::Universality {
            file,
            bound,
            max_nodes,
        } => {
            let a = load(file.as_deref(), stdin)?;
            let (c, r) = search_report(
                "universality",
                &a,
                bounded_universality_witness(&a, &budget(bound, max_nodes))?,
                started,
            );
            (c, Output::Report(r))
        }
        Command::Emptiness {
            file,
            bound,
            max_nodes,
        } => {
            let a = load(file.as_deref(), stdin)?;
            let (c, r) = search_report(
                "emptiness",
                &a,
                nonemptiness_witness(&a, &budget(bound, max_nodes))?,
                started,
            );
            (c, Output::Report(r))
        }
        Command::Gen { family, n, input } => {
            let need_n = || n.ok_or_else(|| Failure(EXIT_USAGE, "this family needs --n".into()));
            let mut need_input = || -> Result<RegisterAutomaton, Failure> {
                let path = input
                    .as_deref()
                    .ok_or_else(|| Failure(EXIT_USAGE, "this reduction needs --input".into()))?;
                load(Some(path), stdin)
            };
            let a = match family {
                Family::Chain => gen_chain_dra(need_n()?)?,
                Family::Counter => gen_counter_nra(need_n()?)?,
                Family::Tower => gen_tower_nra(need_n()?)?,
                Family::Shortcut => gen_three_data_shortcut(),
                Family::ReduceNonuniv => reduce_nonuniv_to_sync(&need_input()?)?,
                Family::ReduceSync => reduce_sync_to_nonuniv(&need_input()?)?,
                Family::ReduceNonempty => reduce_nonempty_to_sync_dra(&need_input()?)?,
            };
            let f = if cli.format == OutFormat::Json {
                Format::Json
            } else {
                Format::Dsl
            };
            (EXIT_OK, Output::Raw(serialize_automaton(&a, f)))
        }
        Command::Run {
            file,
            word,
            initial,
        } => {
            let a = load(file.as_deref(), stdin)?;
            let w = parse_word(&a, &word).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let abs = Abstraction::new(&a)?;
            let start = if initial {
                let init = a
                    .acceptance
                    .as_ref()
                    .ok_or_else(|| {
                        Failure(EXIT_USAGE, "--initial needs an initial location".into())
                    })?
                    .initial;
                abs.initial_at([init])
            } else {
                abs.initial()
            };
            let end = abs.run(&start, &w.to_choice_word())?;
            let data = w.data();
            let set = end.display(&a, &data).to_string();
            let mut details = vec![format!("{} configuration classes", end.len())];
            if crate::semantics::is_synchronized(&end) {
                details.push("synchronized".into());
            }
            report("run", EXIT_OK, "successors", Some(set), details)
        }
        Command::Oracle {
            file,
            max_len,
            pool,
            concrete,
        } => {
            let a = load(file.as_deref(), stdin)?;
            let mut p = OracleParams::new(max_len, pool);
            p.concrete_words = concrete;
            let len = oracle_min_length(&a, &p)?;
            let data = oracle_min_data_efficiency(&a, &p)?;
            let show = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
            let details = vec![
                format!("min-length: {}", show(len)),
                format!("min-data: {}", show(data)),
            ];
            let code = if len.is_some() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            let outcome = if len.is_some() {
                "synchronizable"
            } else {
                "none-within-bound"
            };
            report("oracle", code, outcome, None, details)
        }
    })
}

enum Output {
    Report(Report),
    Raw(String),
}

fn render(report: &Report, format: OutFormat) -> String {
    match format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutFormat::Text => {
            let mut s = match (&report.witness, report.outcome.as_str()) {
                (Some(w), _) => format!("{w}\n"),
                (None, "no-sync-word" | "none-within-bound" | "invalid") => "NO\n".to_string(),
                (None, "inconclusive" | "budget-exhausted") => "INCONCLUSIVE\n".to_string(),
                (None, other) => format!("{}\n", other.to_uppercase()),
            };
            for d in &report.details {
                s.push_str(&format!("# {d}\n"));
            }
            s.push_str(&format!(
                "# {}: {} (explored {}, depth {}, {:.3}s)\n",
                report.command,
                report.outcome,
                report.stats.explored,
                report.stats.depth,
                report.stats.seconds
            ));
            s
        }
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let format = cli.format;
    match execute(cli, stdin) {
        Ok((code, Output::Report(r))) => (code, render(&r, format)),
        Ok((code, Output::Raw(s))) => (code, s),
        Err(Failure(code, msg)) => (code, format!("error: {msg}\n")),
    }
}
