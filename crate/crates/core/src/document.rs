//! JSON documents for every machine and grammar type.
//!
//! Each document carries a `"type"` tag (`"dfa"`, `"nfa"`, `"grammar"`,
//! `"pda"`, `"counter"`, `"tm"`). Symbols are JSON strings holding exactly
//! one character; the empty string marks ε where a schema allows it.
//! Reading a document validates it completely, so everything handed out by
//! [`parse_document`] satisfies its type's invariants.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::counters::{CounterAction, CounterMachine, ZeroTest};
use crate::error::{Error, Result};
use crate::fa::{FiniteAutomaton, Kind};
use crate::grammar::{Grammar, GrammarClass, Rule, Sym};
use crate::pda::{Pda, StackAction};
use crate::rewriting::{Move, TuringMachine};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Automaton(FiniteAutomaton),
    Grammar(Grammar),
    Pda(Pda),
    Counter(CounterMachine),
    Tm(TuringMachine),
}

impl Document {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Document::Automaton(m) if m.is_deterministic() => "dfa",
            Document::Automaton(_) => "nfa",
            Document::Grammar(_) => "grammar",
            Document::Pda(_) => "pda",
            Document::Counter(_) => "counter",
            Document::Tm(_) => "tm",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Automaton(m) => automaton_to_json(m),
            Document::Grammar(g) => grammar_to_json(g),
            Document::Pda(p) => pda_to_json(p),
            Document::Counter(c) => counter_to_json(c),
            Document::Tm(t) => tm_to_json(t),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// Reads and validates a document from disk.
pub fn load_document(path: impl AsRef<Path>) -> Result<Document> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_document(&text)
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    let tag = value
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::validation("document has no string field `type`"))?
        .to_string();
    match tag.as_str() {
        "dfa" | "nfa" => Ok(Document::Automaton(automaton_from_doc(
            serde_json::from_value(value)?,
        )?)),
        "grammar" => Ok(Document::Grammar(grammar_from_doc(serde_json::from_value(
            value,
        )?)?)),
        "pda" => Ok(Document::Pda(pda_from_doc(serde_json::from_value(value)?)?)),
        "counter" => Ok(Document::Counter(counter_from_doc(serde_json::from_value(
            value,
        )?)?)),
        "tm" => Ok(Document::Tm(tm_from_doc(serde_json::from_value(value)?)?)),
        other => Err(Error::validation(format!("unknown document type `{other}`"))),
    }
}

fn symbol(s: &str, what: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::validation(format!(
            "{what} `{s}` must be exactly one character"
        ))),
    }
}

fn optional_symbol(s: &str, what: &str) -> Result<Option<char>> {
    if s.is_empty() {
        Ok(None)
    } else {
        symbol(s, what).map(Some)
    }
}

fn alphabet(list: &[String], what: &str) -> Result<Vec<char>> {
    list.iter().map(|s| symbol(s, what)).collect()
}

/// Name → index, rejecting duplicates.
fn index(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::validation(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, name: &str, what: &str) -> Result<usize> {
    map.get(name)
        .copied()
        .ok_or_else(|| Error::validation(format!("unknown {what} `{name}`")))
}

fn chars_to_strings<'a>(it: impl IntoIterator<Item = &'a char>) -> Vec<String> {
    it.into_iter().map(|c| c.to_string()).collect()
}

// ---------------------------------------------------------------- automata

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonDoc {
    #[serde(rename = "type")]
    kind: String,
    states: Vec<String>,
    alphabet: Vec<String>,
    start: String,
    accepting: Vec<String>,
    transitions: Vec<FaTransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaTransitionDoc {
    from: String,
    symbol: String,
    to: Vec<String>,
}

fn automaton_from_doc(doc: AutomatonDoc) -> Result<FiniteAutomaton> {
    let kind = if doc.kind == "dfa" {
        Kind::Deterministic
    } else {
        Kind::Nondeterministic
    };
    let states = index(&doc.states, "state")?;
    let sigma = alphabet(&doc.alphabet, "alphabet symbol")?;
    let start = lookup(&states, &doc.start, "start state")?;
    let accepting = doc
        .accepting
        .iter()
        .map(|s| lookup(&states, s, "accepting state"))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for t in &doc.transitions {
        let from = lookup(&states, &t.from, "state")?;
        let label = optional_symbol(&t.symbol, "transition symbol")?;
        for to in &t.to {
            edges.push((from, label, lookup(&states, to, "state")?));
        }
    }
    FiniteAutomaton::from_parts(kind, doc.states, sigma, start, accepting, edges)
}

pub fn automaton_to_json(m: &FiniteAutomaton) -> Value {
    let mut grouped: std::collections::BTreeMap<(usize, Option<char>), Vec<String>> =
        Default::default();
    for (s, label, t) in m.edges() {
        grouped
            .entry((s, label))
            .or_default()
            .push(m.name(t).to_string());
    }
    let doc = AutomatonDoc {
        kind: if m.is_deterministic() { "dfa" } else { "nfa" }.to_string(),
        states: m.state_names().to_vec(),
        alphabet: chars_to_strings(m.alphabet()),
        start: m.name(m.start()).to_string(),
        accepting: m.accepting().iter().map(|&s| m.name(s).to_string()).collect(),
        transitions: grouped
            .into_iter()
            .map(|((s, label), to)| FaTransitionDoc {
                from: m.name(s).to_string(),
                symbol: label.map(String::from).unwrap_or_default(),
                to,
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("automaton serializes")
}

// ---------------------------------------------------------------- grammars

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GrammarDoc {
    #[serde(rename = "type")]
    kind: String,
    class: String,
    variables: Vec<String>,
    terminals: Vec<String>,
    start: String,
    rules: Vec<RuleDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    lhs: Vec<String>,
    rhs: Vec<String>,
}

fn grammar_from_doc(doc: GrammarDoc) -> Result<Grammar> {
    let class: GrammarClass = doc.class.parse()?;
    let vars = index(&doc.variables, "variable")?;
    let terms: BTreeSet<char> = alphabet(&doc.terminals, "terminal")?.into_iter().collect();
    let resolve = |s: &String| -> Result<Sym> {
        if let Some(&v) = vars.get(s) {
            return Ok(Sym::Var(v));
        }
        match symbol(s, "grammar symbol") {
            Ok(c) if terms.contains(&c) => Ok(Sym::Term(c)),
            _ => Err(Error::validation(format!("unknown grammar symbol `{s}`"))),
        }
    };
    let rules = doc
        .rules
        .iter()
        .map(|r| {
            Ok(Rule::new(
                r.lhs.iter().map(resolve).collect::<Result<_>>()?,
                r.rhs.iter().map(resolve).collect::<Result<_>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let start = lookup(&vars, &doc.start, "start variable")?;
    Grammar::new(class, doc.variables, terms, start, rules)
}

pub fn grammar_to_json(g: &Grammar) -> Value {
    let show = |syms: &[Sym]| syms.iter().map(|&s| g.show_sym(s)).collect();
    let doc = GrammarDoc {
        kind: "grammar".into(),
        class: g.class().as_str().into(),
        variables: g.variables().to_vec(),
        terminals: chars_to_strings(g.terminals()),
        start: g.var_name(g.start()).to_string(),
        rules: g
            .rules()
            .iter()
            .map(|r| RuleDoc {
                lhs: show(&r.lhs),
                rhs: show(&r.rhs),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("grammar serializes")
}

// -------------------------------------------------------------------- PDAs

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdaDoc {
    #[serde(rename = "type")]
    kind: String,
    deterministic: bool,
    states: Vec<String>,
    input_alphabet: Vec<String>,
    stack_alphabet: Vec<String>,
    start: String,
    accept: Vec<AcceptDoc>,
    transitions: Vec<PdaTransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AcceptDoc {
    state: String,
    top: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdaTransitionDoc {
    state: String,
    top: String,
    symbol: String,
    to: String,
    action: ActionDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    kind: String,
    #[serde(default)]
    payload: Vec<String>,
}

const EMPTY: &str = "empty";

fn pda_from_doc(doc: PdaDoc) -> Result<Pda> {
    let states = index(&doc.states, "state")?;
    let gamma = index(&doc.stack_alphabet, "stack symbol")?;
    if gamma.contains_key(EMPTY) {
        return Err(Error::validation("`empty` is reserved and cannot be a stack symbol"));
    }
    let top = |s: &str| -> Result<Option<usize>> {
        if s == EMPTY {
            Ok(None)
        } else {
            lookup(&gamma, s, "stack symbol").map(Some)
        }
    };
    let mut b = Pda::builder(
        doc.states.clone(),
        alphabet(&doc.input_alphabet, "input symbol")?,
        doc.stack_alphabet.clone(),
        lookup(&states, &doc.start, "start state")?,
    );
    for a in &doc.accept {
        b.accept(lookup(&states, &a.state, "state")?, top(&a.top)?);
    }
    for t in &doc.transitions {
        let payload = t
            .action
            .payload
            .iter()
            .map(|s| lookup(&gamma, s, "stack symbol"))
            .collect::<Result<Vec<_>>>()?;
        let action = match (t.action.kind.as_str(), payload.as_slice()) {
            ("push", [g]) => StackAction::Push(*g),
            ("pop", []) => StackAction::Pop,
            ("none", []) => StackAction::None,
            ("replace", _) => StackAction::Replace(payload),
            (kind, _) => {
                return Err(Error::validation(format!(
                    "bad stack action `{kind}` with {} payload symbols",
                    payload.len()
                )))
            }
        };
        b.transition(
            lookup(&states, &t.state, "state")?,
            top(&t.top)?,
            optional_symbol(&t.symbol, "input symbol")?,
            lookup(&states, &t.to, "state")?,
            action,
        );
    }
    b.build(doc.deterministic)
}

pub fn pda_to_json(p: &Pda) -> Value {
    let top = |t: Option<usize>| match t {
        Some(g) => p.stack_symbol(g).to_string(),
        None => EMPTY.to_string(),
    };
    let doc = PdaDoc {
        kind: "pda".into(),
        deterministic: p.is_deterministic(),
        states: p.state_names().to_vec(),
        input_alphabet: chars_to_strings(p.input_alphabet()),
        stack_alphabet: p.stack_alphabet().to_vec(),
        start: p.state_name(p.start()).to_string(),
        accept: p
            .acceptance()
            .iter()
            .map(|&(s, t)| AcceptDoc {
                state: p.state_name(s).to_string(),
                top: top(t),
            })
            .collect(),
        transitions: p
            .transitions()
            .iter()
            .map(|t| {
                let (kind, payload) = match &t.action {
                    StackAction::Push(g) => ("push", vec![*g]),
                    StackAction::Pop => ("pop", vec![]),
                    StackAction::None => ("none", vec![]),
                    StackAction::Replace(gs) => ("replace", gs.clone()),
                };
                PdaTransitionDoc {
                    state: p.state_name(t.from).to_string(),
                    top: top(t.top),
                    symbol: t.symbol.map(String::from).unwrap_or_default(),
                    to: p.state_name(t.to).to_string(),
                    action: ActionDoc {
                        kind: kind.into(),
                        payload: payload.iter().map(|&g| p.stack_symbol(g).to_string()).collect(),
                    },
                }
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("pda serializes")
}

// --------------------------------------------------------- counter machines

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterDoc {
    #[serde(rename = "type")]
    kind: String,
    deterministic: bool,
    counters: usize,
    states: Vec<String>,
    alphabet: Vec<String>,
    start: String,
    accept: Vec<CounterAcceptDoc>,
    transitions: Vec<CounterTransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterAcceptDoc {
    state: String,
    zero: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterTransitionDoc {
    state: String,
    zero: String,
    symbol: String,
    to: String,
    actions: Vec<String>,
}

fn zero_pattern(s: &str, k: usize) -> Result<Vec<ZeroTest>> {
    let pattern: Vec<ZeroTest> = s
        .chars()
        .map(|c| match c {
            'z' => Ok(ZeroTest::Zero),
            'n' => Ok(ZeroTest::Nonzero),
            other => Err(Error::validation(format!(
                "zero pattern letter `{other}` must be `z` or `n`"
            ))),
        })
        .collect::<Result<_>>()?;
    if pattern.len() != k {
        return Err(Error::validation(format!(
            "zero pattern `{s}` does not have {k} letters"
        )));
    }
    Ok(pattern)
}

fn show_pattern(p: &[ZeroTest]) -> String {
    p.iter()
        .map(|z| match z {
            ZeroTest::Zero => 'z',
            ZeroTest::Nonzero => 'n',
        })
        .collect()
}

fn counter_from_doc(doc: CounterDoc) -> Result<CounterMachine> {
    let states = index(&doc.states, "state")?;
    let k = doc.counters;
    let mut b = CounterMachine::builder(
        doc.states.clone(),
        alphabet(&doc.alphabet, "symbol")?,
        k,
        lookup(&states, &doc.start, "start state")?,
    );
    for a in &doc.accept {
        b.accept(lookup(&states, &a.state, "state")?, zero_pattern(&a.zero, k)?);
    }
    for t in &doc.transitions {
        let actions = t
            .actions
            .iter()
            .map(|a| match a.as_str() {
                "inc" => Ok(CounterAction::Inc),
                "dec" => Ok(CounterAction::Dec),
                "none" => Ok(CounterAction::None),
                other => Err(Error::validation(format!("unknown counter action `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        b.transition(
            lookup(&states, &t.state, "state")?,
            zero_pattern(&t.zero, k)?,
            symbol(&t.symbol, "symbol")?,
            lookup(&states, &t.to, "state")?,
            actions,
        );
    }
    b.build(doc.deterministic)
}

pub fn counter_to_json(c: &CounterMachine) -> Value {
    let doc = CounterDoc {
        kind: "counter".into(),
        deterministic: c.is_deterministic(),
        counters: c.counters(),
        states: c.state_names().to_vec(),
        alphabet: chars_to_strings(c.alphabet()),
        start: c.state_name(c.start()).to_string(),
        accept: c
            .acceptance()
            .iter()
            .map(|(s, z)| CounterAcceptDoc {
                state: c.state_name(*s).to_string(),
                zero: show_pattern(z),
            })
            .collect(),
        transitions: c
            .transitions()
            .iter()
            .map(|t| CounterTransitionDoc {
                state: c.state_name(t.from).to_string(),
                zero: show_pattern(&t.zero),
                symbol: t.symbol.to_string(),
                to: c.state_name(t.to).to_string(),
                actions: t
                    .actions
                    .iter()
                    .map(|a| {
                        match a {
                            CounterAction::Inc => "inc",
                            CounterAction::Dec => "dec",
                            CounterAction::None => "none",
                        }
                        .to_string()
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("counter machine serializes")
}

// --------------------------------------------------------- Turing machines

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TmDoc {
    #[serde(rename = "type")]
    kind: String,
    states: Vec<String>,
    tape_alphabet: Vec<String>,
    blank: String,
    input_alphabet: Vec<String>,
    start: String,
    accept: String,
    #[serde(default)]
    lba: bool,
    transitions: Vec<TmTransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TmTransitionDoc {
    state: String,
    read: String,
    write: String,
    next: String,
    #[serde(rename = "move")]
    direction: i8,
}

fn tm_from_doc(doc: TmDoc) -> Result<TuringMachine> {
    let states = index(&doc.states, "state")?;
    let mut tm = TuringMachine::builder(
        doc.states.clone(),
        alphabet(&doc.tape_alphabet, "tape symbol")?,
        symbol(&doc.blank, "blank")?,
        alphabet(&doc.input_alphabet, "input symbol")?,
        lookup(&states, &doc.start, "start state")?,
        lookup(&states, &doc.accept, "accept state")?,
    );
    tm.lba(doc.lba);
    for t in &doc.transitions {
        let dir = match t.direction {
            1 => Move::Right,
            -1 => Move::Left,
            d => return Err(Error::validation(format!("move must be 1 or -1, got {d}"))),
        };
        tm.transition(
            lookup(&states, &t.state, "state")?,
            symbol(&t.read, "tape symbol")?,
            symbol(&t.write, "tape symbol")?,
            lookup(&states, &t.next, "state")?,
            dir,
        );
    }
    tm.build()
}

pub fn tm_to_json(tm: &TuringMachine) -> Value {
    let doc = TmDoc {
        kind: "tm".into(),
        states: tm.state_names().to_vec(),
        tape_alphabet: chars_to_strings(tm.tape_alphabet()),
        blank: tm.blank().to_string(),
        input_alphabet: chars_to_strings(tm.input_alphabet()),
        start: tm.state_name(tm.start()).to_string(),
        accept: tm.state_name(tm.accept_state()).to_string(),
        lba: tm.is_lba(),
        transitions: tm
            .transitions()
            .map(|(state, read, write, next, dir)| TmTransitionDoc {
                state: tm.state_name(state).to_string(),
                read: read.to_string(),
                write: write.to_string(),
                next: tm.state_name(next).to_string(),
                direction: match dir {
                    Move::Right => 1,
                    Move::Left => -1,
                },
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("turing machine serializes")
}
