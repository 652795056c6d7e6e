//! C interface to the formlang toolkit.
//!
//! Machines and grammars cross the boundary as opaque handles created from
//! JSON documents and released with the matching `_free` function. Every
//! fallible call returns an [`FlStatus`]; after a failure,
//! [`fl_last_error`] describes it. Strings returned through `char **`
//! out-parameters are owned by the caller and released with
//! [`fl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use formlang::document::{self, Document};
use formlang::fa::{self, AcceptanceMode, FiniteAutomaton};
use formlang::grammar::{self, CountMode, Grammar, GrammarClass, DEFAULT_WORD_BUDGET};
use formlang::minimize;
use formlang::pda::{Budget, Pda};
use formlang::regex;
use formlang::rewriting;
use formlang::Error;

/// Result of a call. `FL_STATUS_OK` and `FL_STATUS_NO` are the two answers
/// of a yes/no question; everything from `FL_STATUS_INPUT` up is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlStatus {
    Ok = 0,
    No = 1,
    Input = 2,
    Structure = 3,
    Parse = 4,
    Resource = 5,
    Divergence = 6,
    Validation = 7,
    Json = 8,
    Io = 9,
    NullArgument = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

/// How a nondeterministic automaton accepts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlMode {
    Exists = 0,
    ForAll = 1,
    Parity = 2,
}

impl From<FlMode> for AcceptanceMode {
    fn from(m: FlMode) -> Self {
        match m {
            FlMode::Exists => AcceptanceMode::Exists,
            FlMode::ForAll => AcceptanceMode::ForAll,
            FlMode::Parity => AcceptanceMode::Parity,
        }
    }
}

/// A finite automaton, deterministic or not.
pub struct FlAutomaton(FiniteAutomaton);

/// A grammar of any class.
pub struct FlGrammar(Grammar);

/// A pushdown automaton.
pub struct FlPda(Pda);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Input(_) => FlStatus::Input,
            Error::Structure(_) => FlStatus::Structure,
            Error::Parse { .. } => FlStatus::Parse,
            Error::Resource(_) => FlStatus::Resource,
            Error::Divergence(_) => FlStatus::Divergence,
            Error::Validation(_) => FlStatus::Validation,
            Error::Json { .. } => FlStatus::Json,
            Error::Io(_) => FlStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<FlStatus, Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> FlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FlStatus::Panic
        }
    }
}

fn answer(yes: bool) -> FlStatus {
    if yes {
        FlStatus::Ok
    } else {
        FlStatus::No
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FlStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(FlStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(Failure(FlStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(FlStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FlStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s)
        .map_err(|_| Failure(FlStatus::Input, "string holds a nul byte".into()))?
        .into_raw();
    Ok(())
}

fn parse(json: &str) -> Result<Document, Failure> {
    Ok(document::parse_document(json)?)
}

fn wrong_kind(want: &str, got: &Document) -> Failure {
    Failure(
        FlStatus::Structure,
        format!("expected {want}, found a {} document", got.kind_name()),
    )
}

/// Message for the most recent failure on this thread, or null after a
/// successful call. The pointer stays valid until the next call.
#[no_mangle]
pub extern "C" fn fl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a `dfa` or `nfa` document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_from_json(json: *const c_char, out: *mut *mut FlAutomaton) -> FlStatus {
    guard(|| match parse(text(json, "json")?)? {
        Document::Automaton(m) => put(out, FlAutomaton(m)),
        other => Err(wrong_kind("an automaton", &other)),
    })
}

/// Serializes an automaton to its JSON document.
///
/// # Safety
/// `m` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_to_json(m: *const FlAutomaton, out: *mut *mut c_char) -> FlStatus {
    guard(|| {
        let m = handle(m, "automaton")?;
        put_string(out, document::automaton_to_json(&m.0).to_string())?;
        Ok(FlStatus::Ok)
    })
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_num_states(m: *const FlAutomaton) -> usize {
    m.as_ref().map_or(0, |m| m.0.num_states())
}

/// Runs the automaton on `word`. Deterministic automata ignore `mode`.
/// Returns `FL_STATUS_OK` on acceptance and `FL_STATUS_NO` on rejection.
///
/// # Safety
/// `m` must be a live handle and `word` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_run(m: *const FlAutomaton, word: *const c_char, mode: FlMode) -> FlStatus {
    guard(|| {
        let m = &handle(m, "automaton")?.0;
        let w = text(word, "word")?;
        let yes = if m.is_deterministic() { m.dfa_run(w)? } else { m.nfa_run(w, mode.into())? };
        Ok(answer(yes))
    })
}

/// Subset construction under the given acceptance mode.
///
/// # Safety
/// `m` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_determinize(
    m: *const FlAutomaton,
    mode: FlMode,
    out: *mut *mut FlAutomaton,
) -> FlStatus {
    guard(|| {
        let d = fa::determinize(&handle(m, "automaton")?.0, mode.into())?;
        put(out, FlAutomaton(d))
    })
}

/// Minimal equivalent DFA. The input must be deterministic.
///
/// # Safety
/// `m` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_minimize(m: *const FlAutomaton, out: *mut *mut FlAutomaton) -> FlStatus {
    guard(|| put(out, FlAutomaton(minimize::minimize(&handle(m, "automaton")?.0)?)))
}

/// Decides language equality. Nondeterministic inputs are determinized
/// under existential acceptance first. On `FL_STATUS_NO`, a shortest word
/// accepted by exactly one of the two is stored in `*witness` when
/// `witness` is not null.
///
/// # Safety
/// `a` and `b` must be live handles; `witness` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_equivalent(
    a: *const FlAutomaton,
    b: *const FlAutomaton,
    witness: *mut *mut c_char,
) -> FlStatus {
    guard(|| {
        let a = deterministic(&handle(a, "first automaton")?.0)?;
        let b = deterministic(&handle(b, "second automaton")?.0)?;
        equivalence(&a, &b, witness)
    })
}

fn deterministic(m: &FiniteAutomaton) -> Result<FiniteAutomaton, Error> {
    if m.is_deterministic() {
        Ok(m.clone())
    } else {
        fa::determinize(m, AcceptanceMode::Exists)
    }
}

unsafe fn equivalence(a: &FiniteAutomaton, b: &FiniteAutomaton, witness: *mut *mut c_char) -> Outcome {
    match fa::equivalence_check(a, b)? {
        None => Ok(FlStatus::Ok),
        Some(w) => {
            if !witness.is_null() {
                put_string(witness, w)?;
            }
            Ok(FlStatus::No)
        }
    }
}

/// Compiles a regular expression to an ε-NFA. When `alphabet` is not null,
/// its characters are added to the automaton's alphabet.
///
/// # Safety
/// `pattern` must be a nul-terminated string, `alphabet` null or one, and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_regex_compile(
    pattern: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut FlAutomaton,
) -> FlStatus {
    guard(|| {
        let r = regex::parse_regex(text(pattern, "pattern")?)?;
        let m = if alphabet.is_null() {
            regex::regex_to_nfa(&r)
        } else {
            regex::regex_to_nfa_over(&r, text(alphabet, "alphabet")?.chars())
        };
        put(out, FlAutomaton(m))
    })
}

/// Releases an automaton. Null is ignored.
///
/// # Safety
/// `m` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fl_automaton_free(m: *mut FlAutomaton) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a `grammar` document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_from_json(json: *const c_char, out: *mut *mut FlGrammar) -> FlStatus {
    guard(|| match parse(text(json, "json")?)? {
        Document::Grammar(g) => put(out, FlGrammar(g)),
        other => Err(wrong_kind("a grammar", &other)),
    })
}

/// Serializes a grammar to its JSON document.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_to_json(g: *const FlGrammar, out: *mut *mut c_char) -> FlStatus {
    guard(|| {
        put_string(out, document::grammar_to_json(&handle(g, "grammar")?.0).to_string())?;
        Ok(FlStatus::Ok)
    })
}

/// Membership of `word`. Context-free grammars go through CYK; the others
/// use a bounded search over sentential forms, which may report
/// `FL_STATUS_RESOURCE`.
///
/// # Safety
/// `g` must be a live handle and `word` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_member(g: *const FlGrammar, word: *const c_char) -> FlStatus {
    guard(|| {
        let g = &handle(g, "grammar")?.0;
        let w = text(word, "word")?;
        let yes = if g.is_context_free() {
            if g.class() == GrammarClass::Cnf {
                grammar::cyk_member(g, w)?
            } else {
                grammar::cyk_member(&grammar::to_cnf(g)?, w)?
            }
        } else {
            rewriting::csg_member(g, w, rewriting::DEFAULT_FORM_BUDGET)?
        };
        Ok(answer(yes))
    })
}

/// Equivalent grammar in Chomsky normal form.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_to_cnf(g: *const FlGrammar, out: *mut *mut FlGrammar) -> FlStatus {
    guard(|| put(out, FlGrammar(grammar::to_cnf(&handle(g, "grammar")?.0)?)))
}

/// Number of words of each length `0..=max_len`, written to `*out` as
/// space-separated decimal integers. Context-free grammars outside Chomsky
/// normal form are converted first.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_count(g: *const FlGrammar, max_len: usize, out: *mut *mut c_char) -> FlStatus {
    guard(|| {
        let g = &handle(g, "grammar")?.0;
        let converted;
        let g = if g.class() == GrammarClass::Cnf {
            g
        } else {
            converted = grammar::to_cnf(g)?;
            &converted
        };
        let counts = grammar::count_words(g, max_len, CountMode::Explicit { budget: DEFAULT_WORD_BUDGET })?;
        let line: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        put_string(out, line.join(" "))?;
        Ok(FlStatus::Ok)
    })
}

/// Releases a grammar. Null is ignored.
///
/// # Safety
/// `g` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fl_grammar_free(g: *mut FlGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a `pda` document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fl_pda_from_json(json: *const c_char, out: *mut *mut FlPda) -> FlStatus {
    guard(|| match parse(text(json, "json")?)? {
        Document::Pda(p) => put(out, FlPda(p)),
        other => Err(wrong_kind("a pushdown automaton", &other)),
    })
}

/// Searches for an accepting run on `word`. A zero `max_stack` or
/// `max_configs` picks the default for the word's length. A search cut off
/// by either limit reports `FL_STATUS_RESOURCE`.
///
/// # Safety
/// `p` must be a live handle and `word` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fl_pda_run(
    p: *const FlPda,
    word: *const c_char,
    max_stack: usize,
    max_configs: usize,
) -> FlStatus {
    guard(|| {
        let p = &handle(p, "pda")?.0;
        let w = text(word, "word")?;
        let mut budget = Budget::for_word(w);
        if max_stack > 0 {
            budget.max_stack = max_stack;
        }
        if max_configs > 0 {
            budget.max_configs = max_configs;
        }
        Ok(answer(p.npda_run(w, budget)?))
    })
}

/// Releases a pushdown automaton. Null is ignored.
///
/// # Safety
/// `p` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fl_pda_free(p: *mut FlPda) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
