use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rpq_resilience::automata::{
    eps_nfa_to_ro, is_local_language, reduce_regular, AutomataError, EpsNfa, DEFAULT_STATE_CAP,
};
use rpq_resilience::classifier::{classify_with, ClassifyOptions, LanguageSpec};
use rpq_resilience::gadgets::{self, encode_graph, validate_gadget, GadgetError, GadgetFile, Graph, PreGadget};
use rpq_resilience::graphdb::{enumerate_matches, GraphDb};
use rpq_resilience::lang::{parse_regex, FiniteLanguage};
use rpq_resilience::solvers::{resilience, Limits, Semantics, SolverChoice, SolverError};
use serde_json::json;

#[derive(Parser)]
#[command(name = "rpqres", version, about = "Resilience of regular path queries")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the resilience problem of a language.
    Classify {
        #[command(flatten)]
        lang: LangArgs,
        /// Language as a regular expression.
        regex: Option<String>,
    },
    /// Compute the resilience of a database.
    Resilience {
        #[command(flatten)]
        lang: LangArgs,
        /// `[REGEX] DB`; the regex is omitted when --words or --nfa is given.
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<String>,
        /// Set semantics: multiplicities are ignored.
        #[arg(long, conflicts_with = "bag")]
        set: bool,
        /// Bag semantics (default).
        #[arg(long)]
        bag: bool,
        /// auto, local, bcl, submod or exact.
        #[arg(long, default_value = "auto")]
        solver: SolverChoice,
        /// Print a minimum contingency set.
        #[arg(long)]
        witness: bool,
        /// Largest database the exact solver accepts.
        #[arg(long, default_value_t = Limits::default().exact_fact_cap)]
        exact_cap: usize,
    },
    /// Check that a pre-gadget is a gadget for a finite language.
    ValidateGadget {
        /// Gadget file, or the name of a built-in gadget.
        gadget: String,
        /// Finite language, e.g. "aa" or "ab|bc".
        language: String,
        /// Print the condensation steps.
        #[arg(long)]
        trace: bool,
    },
    /// Encode a graph with a pre-gadget and print the database.
    Encode {
        /// Graph file: `u v`, `u -> v` or a lone vertex per line.
        graph: String,
        /// Gadget file, or the name of a built-in gadget.
        gadget: String,
    },
    /// List the matches of a finite language on a database.
    Matches {
        #[command(flatten)]
        lang: LangArgs,
        /// `[REGEX] DB`; the regex is omitted when --words or --nfa is given.
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<String>,
    },
    /// Automaton utilities.
    Automaton {
        #[command(flatten)]
        lang: LangArgs,
        regex: Option<String>,
        #[command(flatten)]
        op: AutomatonOp,
    },
}

#[derive(Args)]
struct LangArgs {
    /// Read the language as a word list (one word per line).
    #[arg(long, value_name = "FILE", conflicts_with = "nfa")]
    words: Option<String>,
    /// Read the language as an automaton.
    #[arg(long, value_name = "FILE")]
    nfa: Option<String>,
    /// State cap for determinization.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AutomatonOp {
    /// Print the read-once automaton built from the letter summary.
    #[arg(long)]
    to_ro: bool,
    /// Decide whether the language is local.
    #[arg(long)]
    is_local: bool,
    /// Print the minimal DFA of the reduced language.
    #[arg(long)]
    reduce: bool,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn input_error(msg: impl std::fmt::Display) -> anyhow::Error {
    anyhow::anyhow!("{msg}")
}

fn language(args: &LangArgs, regex: Option<&str>) -> Result<LanguageSpec> {
    match (&args.words, &args.nfa, regex) {
        (Some(path), None, None) => {
            let l = FiniteLanguage::parse_word_list(&read_input(path)?).map_err(input_error)?;
            Ok(l.into())
        }
        (None, Some(path), None) => {
            let a = EpsNfa::parse_text(&read_input(path)?).map_err(input_error)?;
            Ok(a.into())
        }
        (None, None, Some(r)) => Ok(parse_regex(r).map_err(input_error)?.into()),
        (None, None, None) => Err(input_error("no language given: pass a regex, --words or --nfa")),
        _ => Err(input_error("give exactly one of a regex, --words or --nfa")),
    }
}

/// Splits `[REGEX] DB` according to whether a file-based language is given.
fn split_inputs<'a>(args: &LangArgs, inputs: &'a [String]) -> Result<(Option<&'a str>, &'a str)> {
    let file_lang = args.words.is_some() || args.nfa.is_some();
    match (inputs, file_lang) {
        ([db], true) => Ok((None, db)),
        ([r, db], false) => Ok((Some(r), db)),
        _ => Err(input_error(
            "expected a regex and a database, or --words/--nfa and a database",
        )),
    }
}

fn load_db(path: &str) -> Result<GraphDb> {
    GraphDb::parse(&read_input(path)?).map_err(input_error)
}

fn load_gadget(arg: &str) -> Result<(PreGadget, Option<usize>)> {
    if arg != "-" && !Path::new(arg).exists() {
        if let Some(g) = gadgets::lookup(arg) {
            return Ok((g, None));
        }
    }
    let file = GadgetFile::parse(&read_input(arg)?).map_err(input_error)?;
    let expected = file.expected_odd_length;
    Ok((file.to_pregadget().map_err(input_error)?, expected))
}

fn finite_language(text: &str) -> Result<FiniteLanguage> {
    let spec: LanguageSpec = parse_regex(text).map_err(input_error)?.into();
    spec.as_finite()
        .ok_or_else(|| input_error(format!("{text} is not a finite language")))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Classify { lang, regex } => {
            let spec = language(&lang, regex.as_deref())?;
            let verdict = classify_with(
                &spec,
                ClassifyOptions {
                    state_cap: lang.state_cap,
                },
            );
            if json {
                print_json(&verdict)?;
            } else {
                println!("{verdict}");
            }
        }
        Command::Resilience {
            lang,
            inputs,
            set,
            bag: _,
            solver,
            witness,
            exact_cap,
        } => {
            let (regex, db_path) = split_inputs(&lang, &inputs)?;
            let spec = language(&lang, regex)?;
            let db = load_db(db_path)?;
            let semantics = if set { Semantics::Set } else { Semantics::Bag };
            let limits = Limits {
                exact_fact_cap: exact_cap,
                state_cap: lang.state_cap,
                ..Limits::default()
            };
            let answer = resilience(&db, &spec, semantics, solver, &limits)?;
            if json {
                print_json(&answer)?;
            } else {
                println!("{} ({})", answer.value, answer.method);
                if witness {
                    for f in answer.contingency.iter().flatten() {
                        println!("  {f} {}", db.mult(f));
                    }
                }
            }
        }
        Command::ValidateGadget {
            gadget,
            language,
            trace,
        } => {
            let (g, expected) = load_gadget(&gadget)?;
            let l = finite_language(&language)?;
            if !l.is_reduced() {
                return Err(input_error(format!("{l} is not reduced")));
            }
            let report = validate_gadget(&g, &l)?;
            if json {
                print_json(&report)?;
            } else {
                println!("{}", report.summary());
                if let (Some(e), Some(got)) = (expected, report.odd_path_length) {
                    if e != got {
                        println!("  note: file expects odd path length {e}");
                    }
                }
                if trace {
                    for s in &report.steps {
                        println!("  {s}");
                    }
                    for (i, f) in report.hypergraph.facts.iter().enumerate() {
                        println!("  fact {i}: {f}");
                    }
                }
            }
        }
        Command::Encode { graph, gadget } => {
            let g = Graph::parse(&read_input(&graph)?).map_err(input_error)?;
            let (pg, _) = load_gadget(&gadget)?;
            let db = encode_graph(&g.oriented(), &pg)?;
            print!("{}", db.serialize());
        }
        Command::Matches { lang, inputs } => {
            let (regex, db_path) = split_inputs(&lang, &inputs)?;
            let spec = language(&lang, regex)?;
            let l = spec
                .as_finite()
                .ok_or_else(|| input_error("matches needs a finite language"))?;
            let db = load_db(db_path)?;
            let matches = enumerate_matches(&db, &l);
            if json {
                print_json(&matches)?;
            } else {
                for m in &matches {
                    let facts: Vec<String> = m.facts.iter().map(|f| f.to_string()).collect();
                    println!("{} : {{{}}}", m.word(), facts.join("; "));
                }
            }
        }
        Command::Automaton { lang, regex, op } => {
            let a = language(&lang, regex.as_deref())?.to_epsnfa();
            if op.is_local {
                let local = is_local_language(&a, lang.state_cap)?;
                if json {
                    print_json(&json!({ "local": local }))?;
                } else {
                    println!("{local}");
                }
            } else {
                let out = if op.to_ro {
                    eps_nfa_to_ro(&a)
                } else {
                    reduce_regular(&a, lang.state_cap)?.to_eps_nfa()
                };
                if json {
                    print_json(&json!({ "automaton": out.to_text() }))?;
                } else {
                    print!("{}", out.to_text());
                }
            }
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(e) = e.downcast_ref::<SolverError>() {
        return match e {
            _ if e.is_resource() => 3,
            SolverError::Unclassified { .. } => 3,
            SolverError::Refused(_) | SolverError::Structure { .. } => 4,
            _ => 2,
        };
    }
    if let Some(e) = e.downcast_ref::<GadgetError>() {
        return if e.is_resource() { 3 } else { 2 };
    }
    if let Some(AutomataError::StateCapExceeded { .. } | AutomataError::MonoidCapExceeded { .. }) =
        e.downcast_ref::<AutomataError>()
    {
        return 3;
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
