//! `autolab`: exact structural analysis of finite deterministic automata.
//!
//! Exit codes: 0 ok; 1 search findings present; 2 input error; 3 internal
//! consistency violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr as _;

use clap::{Parser, Subcommand};

use autolab_core::automaton::Automaton;
use autolab_core::families::{generate, FamilySpec};
use autolab_core::format::{parse_automaton, to_aut, to_dot};
use autolab_core::oracles;
use autolab_core::report::{analyze, AnalyzeOptions};
use autolab_core::search::{run_search, PredicateId, SearchMode, SearchTask};

#[derive(Parser)]
#[command(
    name = "autolab",
    version,
    about = "Decide synchronization, simplicity, contraction properties, and \
             irreducibility of the synchronized representation for DFAs, in \
             exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an `.aut` file and print the full property report
    Analyze {
        file: PathBuf,
        /// Emit the JSON report (schema 1) instead of text
        #[arg(long)]
        json: bool,
        /// Cap for transition-monoid enumeration
        #[arg(long, value_name = "N", default_value_t = 1_000_000)]
        max_monoid: usize,
        /// Skip the shortest-reset subset BFS
        #[arg(long)]
        no_reset_bfs: bool,
    },
    /// Generate a named family automaton (cerny | fold | tail)
    Gen {
        family: String,
        n: usize,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hunt for counterexamples to one of the conjecture predicates
    Search {
        /// extremal-not-irreducible | irreducible-no-rank2 |
        /// reducible-no-eigenline | simple-neq-weakly-contracting
        #[arg(long)]
        pred: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// exhaustive | random
        #[arg(long)]
        mode: String,
        /// Sample count (random mode)
        #[arg(long)]
        count: Option<u64>,
        /// Generator seed (required in random mode)
        #[arg(long)]
        seed: Option<u64>,
        /// Accept shortest reset >= (n-1)^2 - slack as extremal
        #[arg(long, default_value_t = 0)]
        slack: usize,
        /// Directory for persisted findings
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an independent oracle (reset-bfs | cong-closure |
    /// circulant-rank-elim | monoid-size)
    Oracle {
        name: String,
        args: Vec<String>,
    },
    /// Export an `.aut` file as a DOT digraph
    ExportDot { file: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}

#[derive(Debug)]
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 3,
        }
    }

    fn exit_code(&self) -> u8 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn load_automaton(path: &Path) -> Result<Automaton, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    parse_automaton(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            file,
            json,
            max_monoid,
            no_reset_bfs,
        } => {
            let aut = load_automaton(&file)?;
            let options = AnalyzeOptions {
                monoid_cap: max_monoid,
                reset_bfs: !no_reset_bfs,
                reset_cap: None,
            };
            let report = analyze(&aut, &options).map_err(|e| CliError::internal(e.to_string()))?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { family, n, out } => {
            let spec = FamilySpec::from_name(&family, n)
                .ok_or_else(|| CliError::input(format!("unknown family `{family}`")))?;
            let aut = generate(&spec).map_err(|e| CliError::input(e.to_string()))?;
            let text = to_aut(&aut);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            pred,
            n,
            k,
            mode,
            count,
            seed,
            slack,
            out,
        } => {
            let predicate = PredicateId::from_name(&pred)
                .ok_or_else(|| CliError::input(format!("unknown predicate `{pred}`")))?;
            let mode = match mode.as_str() {
                "exhaustive" => SearchMode::Exhaustive,
                "random" => {
                    let seed =
                        seed.ok_or_else(|| CliError::input("random mode requires --seed"))?;
                    let count = count.unwrap_or(100_000);
                    SearchMode::Random { count, seed }
                }
                other => return Err(CliError::input(format!("unknown mode `{other}`"))),
            };
            let task = SearchTask {
                predicate,
                n,
                k,
                mode,
                slack,
            };
            let outcome = run_search(&task).map_err(|e| match e {
                autolab_core::search::SearchError::Guard(_) => CliError::input(e.to_string()),
                autolab_core::search::SearchError::Internal(_) => {
                    CliError::internal(e.to_string())
                }
            })?;
            if let Some(dir) = out {
                fs::create_dir_all(&dir)
                    .map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
                fs::write(dir.join("summary.json"), outcome.to_json())
                    .map_err(|e| CliError::input(e.to_string()))?;
                for finding in &outcome.findings {
                    fs::write(
                        dir.join(format!("finding-{}.aut", finding.index)),
                        &finding.automaton,
                    )
                    .map_err(|e| CliError::input(e.to_string()))?;
                }
            }
            println!("{}", outcome.to_json());
            if outcome.findings.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Oracle { name, args } => run_oracle(&name, &args),
        Command::ExportDot { file } => {
            let aut = load_automaton(&file)?;
            print!("{}", to_dot(&aut));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_oracle(name: &str, args: &[String]) -> Result<ExitCode, CliError> {
    let file_arg = |idx: usize| -> Result<&String, CliError> {
        args.get(idx)
            .ok_or_else(|| CliError::input(format!("oracle {name}: missing argument {idx}")))
    };
    match name {
        "reset-bfs" => {
            let aut = load_automaton(Path::new(file_arg(0)?))?;
            match oracles::reset_bfs(&aut).map_err(|e| CliError::input(e.to_string()))? {
                autolab_core::automaton::ResetLength::Length(len) => println!("{len}"),
                autolab_core::automaton::ResetLength::NotSynchronizing => {
                    println!("not-synchronizing")
                }
                autolab_core::automaton::ResetLength::CapExceeded => println!("cap-exceeded"),
            }
            Ok(ExitCode::SUCCESS)
        }
        "cong-closure" => {
            let aut = load_automaton(Path::new(file_arg(0)?))?;
            let parse_state = |s: &String| -> Result<usize, CliError> {
                let q: usize = s
                    .parse()
                    .map_err(|_| CliError::input(format!("invalid state `{s}`")))?;
                if q < 1 || q > aut.state_count() {
                    return Err(CliError::input(format!("state {q} out of range")));
                }
                Ok(q - 1)
            };
            let p = parse_state(file_arg(1)?)?;
            let q = parse_state(file_arg(2)?)?;
            let blocks = oracles::congruence_closure_bruteforce(&aut, &[(p, q)]);
            let one_based: Vec<Vec<usize>> = blocks
                .into_iter()
                .map(|b| b.into_iter().map(|s| s + 1).collect())
                .collect();
            println!("{}", serde_json::to_string(&one_based).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        "circulant-rank-elim" => {
            let coords: Result<Vec<_>, CliError> = file_arg(0)?
                .split(',')
                .map(|tok| {
                    autolab_core::poly::Rational::from_str(tok.trim())
                        .map_err(|_| CliError::input(format!("invalid rational `{tok}`")))
                })
                .collect();
            println!("{}", oracles::circulant_rank_elimination(&coords?));
            Ok(ExitCode::SUCCESS)
        }
        "monoid-size" => {
            let aut = load_automaton(Path::new(file_arg(0)?))?;
            let monoid = autolab_core::monoid::enumerate_monoid(&aut, 10_000_000);
            if monoid.truncated {
                println!(">= {}", monoid.len());
            } else {
                println!("{}", monoid.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        other => Err(CliError::input(format!("unknown oracle `{other}`"))),
    }
}
