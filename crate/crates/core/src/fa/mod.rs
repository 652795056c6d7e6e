//! Finite automata: values, run semantics and the closure constructions.
//!
//! A [`FiniteAutomaton`] stores its states densely (a [`StateId`] is an
//! index) and keeps a human-readable name for every state. Constructed
//! automata receive fresh names that record where each state came from,
//! e.g. `{1,2}` for a subset, but no operation ever compares automata by
//! name.

mod ops;
mod run;

pub use ops::{
    complement, concatenate, determinize, equivalence_check, fraction_language, interleave,
    product, remove_epsilon, reverse, star, union, Combine, Fraction,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Dense index of a state inside one automaton.
pub type StateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Deterministic,
    Nondeterministic,
}

/// How a nondeterministic automaton decides acceptance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcceptanceMode {
    /// Some computation path ends in an accepting state.
    Exists,
    /// Every computation path survives and ends in an accepting state.
    ForAll,
    /// The number of accepting paths is odd.
    Parity,
}

impl AcceptanceMode {
    pub const ALL: [AcceptanceMode; 3] = [Self::Exists, Self::ForAll, Self::Parity];
}

impl std::str::FromStr for AcceptanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exists" => Ok(Self::Exists),
            "forall" | "for-all" => Ok(Self::ForAll),
            "parity" => Ok(Self::Parity),
            other => Err(Error::input(format!("unknown acceptance mode `{other}`"))),
        }
    }
}

type Row = BTreeMap<Option<char>, BTreeSet<StateId>>;

/// A finite automaton, deterministic or nondeterministic with ε-moves.
///
/// A `None` label is an ε-transition. Deterministic automata carry no
/// ε-labels and at most one target per `(state, symbol)`; they may be
/// partial, in which case operations that need totality add a rejecting
/// sink first (see [`FiniteAutomaton::totalize`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    names: Vec<String>,
    alphabet: BTreeSet<char>,
    start: StateId,
    accepting: BTreeSet<StateId>,
    delta: Vec<Row>,
    kind: Kind,
}

impl FiniteAutomaton {
    /// Assembles and validates an automaton from dense parts.
    pub fn from_parts(
        kind: Kind,
        names: Vec<String>,
        alphabet: impl IntoIterator<Item = char>,
        start: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        edges: impl IntoIterator<Item = (StateId, Option<char>, StateId)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::validation(format!(
                    "duplicate state name `{name}` (states {j} and {i})"
                )));
            }
        }
        if start >= n {
            return Err(Error::validation("start state is not a state"));
        }
        let accepting: BTreeSet<StateId> = accepting.into_iter().collect();
        if let Some(&bad) = accepting.iter().find(|&&s| s >= n) {
            return Err(Error::validation(format!("accepting state {bad} is not a state")));
        }
        let alphabet: BTreeSet<char> = alphabet.into_iter().collect();
        let mut delta: Vec<Row> = vec![Row::new(); n];
        for (from, label, to) in edges {
            if from >= n || to >= n {
                return Err(Error::validation("transition endpoint is not a state"));
            }
            if let Some(a) = label {
                if !alphabet.contains(&a) {
                    return Err(Error::validation(format!(
                        "transition label `{a}` is not in the alphabet"
                    )));
                }
            }
            delta[from].entry(label).or_default().insert(to);
        }
        let fa = FiniteAutomaton {
            names,
            alphabet,
            start,
            accepting,
            delta,
            kind,
        };
        if kind == Kind::Deterministic {
            fa.check_deterministic()?;
        }
        Ok(fa)
    }

    fn check_deterministic(&self) -> Result<()> {
        for (s, row) in self.delta.iter().enumerate() {
            for (label, targets) in row {
                match label {
                    None => {
                        return Err(Error::validation(format!(
                            "deterministic automaton has an ε-transition at state `{}`",
                            self.names[s]
                        )))
                    }
                    Some(a) if targets.len() > 1 => {
                        return Err(Error::validation(format!(
                            "deterministic automaton has {} targets for (`{}`, `{a}`)",
                            targets.len(),
                            self.names[s]
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_deterministic(&self) -> bool {
        self.kind == Kind::Deterministic
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting.contains(&s)
    }

    /// Targets of `s` on `label` (`None` is ε).
    pub fn targets(&self, s: StateId, label: Option<char>) -> impl Iterator<Item = StateId> + '_ {
        self.delta[s].get(&label).into_iter().flatten().copied()
    }

    /// The deterministic successor, if any.
    pub fn next(&self, s: StateId, a: char) -> Option<StateId> {
        self.delta[s].get(&Some(a)).and_then(|t| t.iter().next().copied())
    }

    /// Every transition as `(from, label, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (StateId, Option<char>, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(s, row)| {
            row.iter()
                .flat_map(move |(&label, targets)| targets.iter().map(move |&t| (s, label, t)))
        })
    }

    pub fn has_epsilon(&self) -> bool {
        self.delta.iter().any(|row| row.contains_key(&None))
    }

    /// True when every `(state, symbol)` has at least one target.
    pub fn is_total(&self) -> bool {
        self.delta.iter().all(|row| {
            self.alphabet
                .iter()
                .all(|a| row.get(&Some(*a)).is_some_and(|t| !t.is_empty()))
        })
    }

    /// States reachable from the start, in breadth-first order.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for targets in self.delta[s].values() {
                for &t in targets {
                    if !seen[t] {
                        seen[t] = true;
                        order.push(t);
                    }
                }
            }
        }
        order
    }

    /// Adds a fresh rejecting sink for every missing `(state, symbol)`.
    /// Total automata are returned unchanged.
    pub fn totalize(&self) -> FiniteAutomaton {
        if self.is_total() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.names.len();
        out.names.push(fresh_name(&self.names, "⊥"));
        out.delta.push(Row::new());
        for s in 0..out.names.len() {
            for &a in &self.alphabet {
                let entry = out.delta[s].entry(Some(a)).or_default();
                if entry.is_empty() {
                    entry.insert(sink);
                }
            }
        }
        out
    }

    /// The same automaton over a larger alphabet. New symbols have no
    /// transitions, so a deterministic result is partial.
    pub fn with_alphabet(&self, extra: impl IntoIterator<Item = char>) -> FiniteAutomaton {
        let mut out = self.clone();
        out.alphabet.extend(extra);
        out
    }

    /// Keeps only the states reachable from the start.
    pub fn trim_unreachable(&self) -> FiniteAutomaton {
        let order = self.reachable();
        if order.len() == self.num_states() {
            return self.clone();
        }
        let mut map = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            map[s] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(s, _, _)| map[s] != usize::MAX)
            .map(|(s, l, t)| (map[s], l, map[t]))
            .collect();
        FiniteAutomaton::from_parts(
            self.kind,
            order.iter().map(|&s| self.names[s].clone()).collect(),
            self.alphabet.iter().copied(),
            0,
            self.accepting.iter().filter(|&&s| map[s] != usize::MAX).map(|&s| map[s]),
            edges,
        )
        .expect("trimming preserves validity")
    }

    pub(crate) fn require_deterministic(&self, op: &str) -> Result<()> {
        if self.is_deterministic() {
            Ok(())
        } else {
            Err(Error::structure(format!(
                "{op} needs a deterministic automaton; determinize first"
            )))
        }
    }

    pub(crate) fn check_word(&self, w: &str) -> Result<()> {
        match w.chars().find(|a| !self.alphabet.contains(a)) {
            Some(a) => Err(Error::input(format!("symbol `{a}` is not in the alphabet"))),
            None => Ok(()),
        }
    }
}

/// Returns `base`, or `base` with a numeric suffix, so that it differs from
/// every name in `taken`.
pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|cand| !taken.iter().any(|n| n == cand))
        .unwrap()
}

/// Makes a list of names pairwise distinct by suffixing repeats.
pub(crate) fn dedupe_names(names: Vec<String>) -> Vec<String> {
    let mut used = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let mut cand = name.clone();
        let mut k = 1;
        while !used.insert(cand.clone()) {
            cand = format!("{name}#{k}");
            k += 1;
        }
        out.push(cand);
    }
    out
}

/// Name-based construction of automata, mostly for hand-written machines.
#[derive(Debug, Default, Clone)]
pub struct FaBuilder {
    names: Vec<String>,
    index: HashMap<String, StateId>,
    alphabet: BTreeSet<char>,
    start: Option<StateId>,
    accepting: BTreeSet<StateId>,
    edges: Vec<(StateId, Option<char>, StateId)>,
}

impl FaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alphabet(&mut self, symbols: impl IntoIterator<Item = char>) -> &mut Self {
        self.alphabet.extend(symbols);
        self
    }

    /// Looks up or declares a state.
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        self.start = Some(self.state(name));
        self
    }

    pub fn accept(&mut self, name: &str) -> &mut Self {
        let id = self.state(name);
        self.accepting.insert(id);
        self
    }

    pub fn edge(&mut self, from: &str, symbol: char, to: &str) -> &mut Self {
        let (f, t) = (self.state(from), self.state(to));
        self.alphabet.insert(symbol);
        self.edges.push((f, Some(symbol), t));
        self
    }

    pub fn epsilon(&mut self, from: &str, to: &str) -> &mut Self {
        let (f, t) = (self.state(from), self.state(to));
        self.edges.push((f, None, t));
        self
    }

    pub fn build(&self, kind: Kind) -> Result<FiniteAutomaton> {
        let start = self
            .start
            .ok_or_else(|| Error::validation("automaton has no start state"))?;
        FiniteAutomaton::from_parts(
            kind,
            self.names.clone(),
            self.alphabet.iter().copied(),
            start,
            self.accepting.iter().copied(),
            self.edges.iter().copied(),
        )
    }
}

/// An automaton accepting exactly the given finite set of words, built as a
/// prefix tree. Deterministic and partial.
pub fn from_words<'a>(
    words: impl IntoIterator<Item = &'a str>,
    alphabet: impl IntoIterator<Item = char>,
) -> FiniteAutomaton {
    let mut b = FaBuilder::new();
    b.alphabet(alphabet).start("ε");
    for w in words {
        let mut prefix = String::new();
        let mut from = "ε".to_string();
        for a in w.chars() {
            prefix.push(a);
            b.edge(&from, a, &prefix);
            from = prefix.clone();
        }
        b.accept(&from);
    }
    b.build(Kind::Deterministic)
        .expect("prefix tree is deterministic")
}
