//! The `formlang` command line.
//!
//! Exit status: 0 for yes or success, 1 for no (a rejected word, or
//! inequivalent machines with a witness), 2 for usage and input problems,
//! 3 when a machine or grammar has the wrong shape for the command, 4 when
//! a search budget or step limit runs out, 5 for file errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::document::{self, load_document, Document};
use crate::error::{Error, Result};
use crate::fa::{self, AcceptanceMode, Combine, FiniteAutomaton, Fraction};
use crate::grammar::{self, CountMode, Grammar, GrammarClass};
use crate::pda::{self, Budget, Pda, DEFAULT_EPSILON_CAP};
use crate::regex::{self, Regex};
use crate::rewriting::{self, Verdict};
use crate::minimize;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_IO: i32 = 5;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_)
        | Error::Parse { .. }
        | Error::Validation(_)
        | Error::Json { .. } => EXIT_USAGE,
        Error::Structure(_) => EXIT_STRUCTURE,
        Error::Resource(_) | Error::Divergence(_) => EXIT_BUDGET,
        Error::Io(_) => EXIT_IO,
    }
}

#[derive(Debug, Parser)]
#[command(name = "formlang", version, about = "Automata, grammars and the constructions between them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exists,
    Forall,
    Parity,
}

impl From<ModeArg> for AcceptanceMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exists => AcceptanceMode::Exists,
            ModeArg::Forall => AcceptanceMode::ForAll,
            ModeArg::Parity => AcceptanceMode::Parity,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    And,
    Or,
    Xor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FractionArg {
    FirstHalf,
    MiddleThird,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountArg {
    Explicit,
    Unambiguous,
}

#[derive(Debug, clap::Args)]
struct Words {
    /// Words to test; each character is one symbol.
    words: Vec<String>,
    /// File with one word per line.
    #[arg(long)]
    word_file: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct Out {
    /// Write the resulting document here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a machine (or grammar) on words.
    Run {
        file: PathBuf,
        #[command(flatten)]
        words: Words,
        #[arg(long, value_enum, default_value = "exists")]
        mode: ModeArg,
        /// Configuration budget for nondeterministic PDAs.
        #[arg(long)]
        budget: Option<usize>,
        /// Step limit for Turing machines.
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Subset construction.
    Determinize {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exists")]
        mode: ModeArg,
        #[command(flatten)]
        out: Out,
    },
    /// Minimal DFA.
    Minimize {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Decide language equality; prints a shortest witness if they differ.
    Equiv { left: PathBuf, right: PathBuf },
    /// Complement over the automaton's alphabet.
    Complement {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Product of two automata under a boolean operation.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "and")]
        op: OpArg,
        #[command(flatten)]
        out: Out,
    },
    /// Concatenation of two languages.
    Concat {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Kleene star.
    Star {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Reversal.
    Reverse {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Perfect shuffle of two languages over the same alphabet.
    Interleave {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// First halves (or middle thirds) of the accepted words.
    Half {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "first-half")]
        fraction: FractionArg,
        #[command(flatten)]
        out: Out,
    },
    /// Compile a regular expression to an ε-NFA.
    #[command(name = "regex2nfa")]
    RegexToNfa {
        regex: String,
        /// Extra alphabet symbols beyond those in the expression.
        #[arg(long, default_value = "")]
        alphabet: String,
        #[command(flatten)]
        out: Out,
    },
    /// Regular expression for an automaton by state elimination.
    #[command(name = "nfa2regex")]
    NfaToRegex { file: PathBuf },
    /// Match words against a regular expression.
    Match {
        regex: String,
        #[command(flatten)]
        words: Words,
    },
    /// Chomsky normal form.
    Cnf {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Greibach normal form.
    Gnf {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Grammar membership.
    Member {
        file: PathBuf,
        #[command(flatten)]
        words: Words,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Count and list parse trees (of the CNF form of the grammar).
    Trees {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Number of words of each length 0..=maxlen.
    Count {
        file: PathBuf,
        #[arg(long)]
        maxlen: usize,
        #[arg(long, value_enum, default_value = "explicit")]
        mode: CountArg,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Pumping decomposition of an accepted word.
    Pump { file: PathBuf, word: String },
    /// Pushdown automaton for a context-free grammar.
    #[command(name = "cfg2pda")]
    CfgToPda {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Context-free grammar for a pushdown automaton.
    #[command(name = "pda2cfg")]
    PdaToCfg {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Membership for noncontracting grammars.
    CsgMember {
        file: PathBuf,
        #[command(flatten)]
        words: Words,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a Turing machine with a step limit.
    TmRun {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Load and check documents.
    Validate { files: Vec<PathBuf> },
}

/// What a command produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            return if e.use_stderr() {
                Outcome {
                    status,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    status,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = Outcome::default();
    match execute(cli.command, &mut out) {
        Ok(status) => out.status = status,
        Err(e) => {
            out.status = exit_code(&e);
            let _ = writeln!(out.stderr, "error: {e}");
        }
    }
    out
}

fn automaton(path: &Path) -> Result<FiniteAutomaton> {
    match load_document(path)? {
        Document::Automaton(m) => Ok(m),
        other => Err(wrong_kind(path, "an automaton", &other)),
    }
}

/// An automaton made deterministic (subset construction) if necessary.
fn dfa(path: &Path) -> Result<FiniteAutomaton> {
    let m = automaton(path)?;
    if m.is_deterministic() {
        Ok(m)
    } else {
        fa::determinize(&m, AcceptanceMode::Exists)
    }
}

fn grammar_doc(path: &Path) -> Result<Grammar> {
    match load_document(path)? {
        Document::Grammar(g) => Ok(g),
        other => Err(wrong_kind(path, "a grammar", &other)),
    }
}

fn pda_doc(path: &Path) -> Result<Pda> {
    match load_document(path)? {
        Document::Pda(p) => Ok(p),
        other => Err(wrong_kind(path, "a pda", &other)),
    }
}

fn wrong_kind(path: &Path, wanted: &str, got: &Document) -> Error {
    Error::Structure(format!(
        "{} holds a {} document, expected {wanted}",
        path.display(),
        got.kind_name()
    ))
}

fn words(w: &Words) -> Result<Vec<String>> {
    let mut all = w.words.clone();
    if let Some(path) = &w.word_file {
        let text = std::fs::read_to_string(path)?;
        all.extend(text.lines().map(str::to_string));
    }
    if all.is_empty() {
        return Err(Error::Input("no words given".into()));
    }
    Ok(all)
}

fn emit(doc: Value, out: &Out, o: &mut Outcome) -> Result<i32> {
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n";
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => o.stdout.push_str(&text),
    }
    Ok(EXIT_YES)
}

fn emit_automaton(m: &FiniteAutomaton, out: &Out, o: &mut Outcome) -> Result<i32> {
    if out.output.is_some() {
        let _ = writeln!(o.stdout, "{} states", m.num_states());
    }
    emit(document::automaton_to_json(m), out, o)
}

/// Prints one verdict per word and folds them into an exit status.
fn verdicts(
    list: &[String],
    o: &mut Outcome,
    mut decide: impl FnMut(&str) -> Result<bool>,
) -> Result<i32> {
    let mut all = true;
    for w in list {
        let yes = decide(w)?;
        all &= yes;
        let verdict = if yes { "yes" } else { "no" };
        if list.len() == 1 {
            let _ = writeln!(o.stdout, "{verdict}");
        } else {
            let _ = writeln!(o.stdout, "{w}\t{verdict}");
        }
    }
    Ok(if all { EXIT_YES } else { EXIT_NO })
}

/// Membership in a grammar of any class.
fn grammar_member(g: &Grammar, w: &str, budget: Option<usize>) -> Result<bool> {
    if g.is_context_free() {
        let cnf = if g.class() == GrammarClass::Cnf {
            g.clone()
        } else {
            grammar::to_cnf(g)?
        };
        grammar::cyk_member(&cnf, w)
    } else {
        rewriting::csg_member(g, w, budget.unwrap_or(rewriting::DEFAULT_FORM_BUDGET))
    }
}

fn tm_status(v: Verdict) -> i32 {
    match v {
        Verdict::Accept => EXIT_YES,
        Verdict::Reject => EXIT_NO,
        Verdict::Timeout => EXIT_BUDGET,
    }
}

fn execute(cmd: Command, o: &mut Outcome) -> Result<i32> {
    match cmd {
        Command::Run {
            file,
            words: ws,
            mode,
            budget,
            steps,
        } => {
            let list = words(&ws)?;
            match load_document(&file)? {
                Document::Automaton(m) => verdicts(&list, o, |w| {
                    if m.is_deterministic() {
                        m.dfa_run(w)
                    } else {
                        m.nfa_run(w, mode.into())
                    }
                }),
                Document::Grammar(g) => verdicts(&list, o, |w| grammar_member(&g, w, budget)),
                Document::Pda(p) => verdicts(&list, o, |w| {
                    if p.is_deterministic() {
                        p.dpda_run(w, DEFAULT_EPSILON_CAP)
                    } else {
                        let mut b = Budget::for_word(w);
                        if let Some(n) = budget {
                            b.max_configs = n;
                        }
                        p.npda_run(w, b)
                    }
                }),
                Document::Counter(c) => verdicts(&list, o, |w| c.ca_run(w)),
                Document::Tm(tm) => {
                    let mut worst = EXIT_YES;
                    for w in &list {
                        let run = tm.tm_run(w, steps)?;
                        let prefix = if list.len() == 1 { String::new() } else { format!("{w}\t") };
                        let _ = writeln!(o.stdout, "{prefix}{} after {} steps", run.verdict.as_str(), run.steps);
                        worst = worst.max(tm_status(run.verdict));
                    }
                    Ok(worst)
                }
            }
        }
        Command::Determinize { file, mode, out } => {
            let m = automaton(&file)?;
            emit_automaton(&fa::determinize(&m, mode.into())?, &out, o)
        }
        Command::Minimize { file, out } => {
            let m = minimize::minimize(&dfa(&file)?)?;
            emit_automaton(&m, &out, o)
        }
        Command::Equiv { left, right } => {
            let (a, b) = (dfa(&left)?, dfa(&right)?);
            let alphabet: Vec<char> = a.alphabet().union(b.alphabet()).copied().collect();
            let (a, b) = (a.with_alphabet(alphabet.clone()), b.with_alphabet(alphabet));
            match fa::equivalence_check(&a, &b)? {
                None => {
                    o.stdout.push_str("equivalent\n");
                    Ok(EXIT_YES)
                }
                Some(w) => {
                    let _ = writeln!(o.stdout, "{w}");
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Complement { file, out } => {
            emit_automaton(&fa::complement(&dfa(&file)?)?, &out, o)
        }
        Command::Product {
            left,
            right,
            op,
            out,
        } => {
            let combine = match op {
                OpArg::And => Combine::And,
                OpArg::Or => Combine::Or,
                OpArg::Xor => Combine::Xor,
            };
            emit_automaton(&fa::product(&dfa(&left)?, &dfa(&right)?, combine)?, &out, o)
        }
        Command::Concat { left, right, out } => {
            emit_automaton(&fa::concatenate(&automaton(&left)?, &automaton(&right)?), &out, o)
        }
        Command::Star { file, out } => emit_automaton(&fa::star(&automaton(&file)?), &out, o),
        Command::Reverse { file, out } => {
            emit_automaton(&fa::reverse(&automaton(&file)?), &out, o)
        }
        Command::Interleave { left, right, out } => {
            emit_automaton(&fa::interleave(&automaton(&left)?, &automaton(&right)?)?, &out, o)
        }
        Command::Half {
            file,
            fraction,
            out,
        } => {
            let which = match fraction {
                FractionArg::FirstHalf => Fraction::FirstHalf,
                FractionArg::MiddleThird => Fraction::MiddleThird,
            };
            emit_automaton(&fa::fraction_language(&dfa(&file)?, which)?, &out, o)
        }
        Command::RegexToNfa {
            regex: text,
            alphabet,
            out,
        } => {
            let r: Regex = text.parse()?;
            emit_automaton(&regex::regex_to_nfa_over(&r, alphabet.chars()), &out, o)
        }
        Command::NfaToRegex { file } => {
            let _ = writeln!(o.stdout, "{}", regex::nfa_to_regex(&automaton(&file)?));
            Ok(EXIT_YES)
        }
        Command::Match { regex: text, words: ws } => {
            let r: Regex = text.parse()?;
            verdicts(&words(&ws)?, o, |w| Ok(regex::regex_match(&r, w)))
        }
        Command::Cnf { file, out } => {
            emit(document::grammar_to_json(&grammar::to_cnf(&grammar_doc(&file)?)?), &out, o)
        }
        Command::Gnf { file, out } => {
            emit(document::grammar_to_json(&grammar::to_gnf(&grammar_doc(&file)?)?), &out, o)
        }
        Command::Member {
            file,
            words: ws,
            budget,
        } => {
            let g = grammar_doc(&file)?;
            verdicts(&words(&ws)?, o, |w| grammar_member(&g, w, budget))
        }
        Command::Trees { file, word, limit } => {
            let g = grammar_doc(&file)?;
            let cnf = if g.class() == GrammarClass::Cnf { g } else { grammar::to_cnf(&g)? };
            let count = grammar::count_parse_trees(&cnf, &word)?;
            let _ = writeln!(o.stdout, "{count} parse trees");
            for t in grammar::enumerate_parse_trees(&cnf, &word, limit)? {
                let _ = writeln!(o.stdout, "{}", show_tree(&cnf, &t));
            }
            Ok(if count == 0u32.into() { EXIT_NO } else { EXIT_YES })
        }
        Command::Count {
            file,
            maxlen,
            mode,
            budget,
        } => {
            let g = grammar_doc(&file)?;
            let cnf = if g.class() == GrammarClass::Cnf { g } else { grammar::to_cnf(&g)? };
            let mode = match mode {
                CountArg::Explicit => CountMode::Explicit {
                    budget: budget.unwrap_or(grammar::DEFAULT_WORD_BUDGET),
                },
                CountArg::Unambiguous => CountMode::AssumeUnambiguous,
            };
            let counts = grammar::count_words(&cnf, maxlen, mode)?;
            let line: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(o.stdout, "{}", line.join(" "));
            Ok(EXIT_YES)
        }
        Command::Pump { file, word } => match load_document(&file)? {
            Document::Automaton(m) => {
                let m = if m.is_deterministic() {
                    m
                } else {
                    fa::determinize(&m, AcceptanceMode::Exists)?
                };
                let d = minimize::pump_decompose(&m, &word)?;
                let _ = writeln!(o.stdout, "p={}\nx={}\ny={}\nz={}", d.p, d.x, d.y, d.z);
                Ok(EXIT_YES)
            }
            Document::Grammar(g) => {
                let cnf = if g.class() == GrammarClass::Cnf { g } else { grammar::to_cnf(&g)? };
                let d = grammar::cfl_pump_decompose(&cnf, &word)?;
                let _ = writeln!(
                    o.stdout,
                    "p={}\nu={}\nv={}\nx={}\ny={}\nz={}",
                    d.p, d.u, d.v, d.x, d.y, d.z
                );
                Ok(EXIT_YES)
            }
            other => Err(wrong_kind(&file, "an automaton or grammar", &other)),
        },
        Command::CfgToPda { file, out } => {
            emit(document::pda_to_json(&pda::cfg_to_npda(&grammar_doc(&file)?)?), &out, o)
        }
        Command::PdaToCfg { file, out } => {
            emit(document::grammar_to_json(&pda::npda_to_cfg(&pda_doc(&file)?)?), &out, o)
        }
        Command::CsgMember {
            file,
            words: ws,
            budget,
        } => {
            let g = grammar_doc(&file)?;
            let budget = budget.unwrap_or(rewriting::DEFAULT_FORM_BUDGET);
            verdicts(&words(&ws)?, o, |w| rewriting::csg_member(&g, w, budget))
        }
        Command::TmRun { file, word, steps } => {
            let tm = match load_document(&file)? {
                Document::Tm(tm) => tm,
                other => return Err(wrong_kind(&file, "a Turing machine", &other)),
            };
            let run = tm.tm_run(&word, steps)?;
            let _ = writeln!(o.stdout, "{} after {} steps", run.verdict.as_str(), run.steps);
            Ok(tm_status(run.verdict))
        }
        Command::Validate { files } => {
            if files.is_empty() {
                return Err(Error::Input("no files given".into()));
            }
            for f in &files {
                let doc = load_document(f)?;
                let _ = writeln!(o.stdout, "{}: ok ({})", f.display(), doc.kind_name());
            }
            Ok(EXIT_YES)
        }
    }
}

fn show_tree(g: &Grammar, t: &grammar::ParseTree) -> String {
    match t {
        grammar::ParseTree::Leaf(c) => c.to_string(),
        grammar::ParseTree::Node { var, children, .. } => {
            let inner: Vec<String> = children.iter().map(|c| show_tree(g, c)).collect();
            format!("[{} {}]", g.var_name(*var), inner.join(" "))
        }
    }
}
