//! Pushdown automata.
//!
//! Transitions look at the control state, the top of the stack (or the
//! fact that the stack is empty) and optionally one input symbol. A machine
//! accepts in a configuration whose `(state, top)` pair belongs to its
//! acceptance set, where the top may again be "empty".

mod convert;
mod run;

pub use convert::{cfg_to_npda, npda_to_cfg, pda_intersect_regular};
pub use run::{Budget, DEFAULT_EPSILON_CAP};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fa::StateId;

/// Index into the stack alphabet.
pub type StackSym = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackAction {
    Push(StackSym),
    Pop,
    None,
    /// Pop the top, then push the payload (listed bottom to top).
    Replace(Vec<StackSym>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdaTransition {
    pub from: StateId,
    pub top: Option<StackSym>,
    pub symbol: Option<char>,
    pub to: StateId,
    pub action: StackAction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    states: Vec<String>,
    input: BTreeSet<char>,
    stack: Vec<String>,
    start: StateId,
    acceptance: BTreeSet<(StateId, Option<StackSym>)>,
    transitions: Vec<PdaTransition>,
    deterministic: bool,
    /// Transition indices by `(state, top)`.
    by_source: BTreeMap<(StateId, Option<StackSym>), Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct PdaBuilder {
    states: Vec<String>,
    input: Vec<char>,
    stack: Vec<String>,
    start: StateId,
    acceptance: Vec<(StateId, Option<StackSym>)>,
    transitions: Vec<PdaTransition>,
}

impl PdaBuilder {
    pub fn accept(&mut self, state: StateId, top: Option<StackSym>) -> &mut Self {
        self.acceptance.push((state, top));
        self
    }

    pub fn transition(
        &mut self,
        from: StateId,
        top: Option<StackSym>,
        symbol: Option<char>,
        to: StateId,
        action: StackAction,
    ) -> &mut Self {
        self.transitions.push(PdaTransition {
            from,
            top,
            symbol,
            to,
            action,
        });
        self
    }

    pub fn build(&self, deterministic: bool) -> Result<Pda> {
        let n = self.states.len();
        let g = self.stack.len();
        let names: BTreeSet<&String> = self.states.iter().collect();
        if names.len() != n {
            return Err(Error::validation("duplicate control state name"));
        }
        let stack_names: BTreeSet<&String> = self.stack.iter().collect();
        if stack_names.len() != g {
            return Err(Error::validation("duplicate stack symbol"));
        }
        if self.start >= n {
            return Err(Error::validation("start state is not a state"));
        }
        let input: BTreeSet<char> = self.input.iter().copied().collect();
        let top_ok = |t: Option<StackSym>| t.is_none_or(|t| t < g);
        for &(s, t) in &self.acceptance {
            if s >= n || !top_ok(t) {
                return Err(Error::validation("acceptance pair refers to unknown state or symbol"));
            }
        }
        let mut transitions: Vec<PdaTransition> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            if t.from >= n || t.to >= n || !top_ok(t.top) {
                return Err(Error::validation("transition refers to unknown state or stack symbol"));
            }
            if let Some(a) = t.symbol {
                if !input.contains(&a) {
                    return Err(Error::validation(format!(
                        "transition symbol `{a}` is not in the input alphabet"
                    )));
                }
            }
            match &t.action {
                StackAction::Push(x) if *x >= g => {
                    return Err(Error::validation("push of unknown stack symbol"))
                }
                StackAction::Replace(xs) if xs.iter().any(|&x| x >= g) => {
                    return Err(Error::validation("replace with unknown stack symbol"))
                }
                StackAction::Pop | StackAction::Replace(_) if t.top.is_none() => {
                    return Err(Error::validation(format!(
                        "transition from `{}` pops an empty stack",
                        self.states[t.from]
                    )))
                }
                _ => {}
            }
            if seen.insert(t.clone()) {
                transitions.push(t.clone());
            }
        }
        let mut by_source: BTreeMap<(StateId, Option<StackSym>), Vec<usize>> = BTreeMap::new();
        for (i, t) in transitions.iter().enumerate() {
            by_source.entry((t.from, t.top)).or_default().push(i);
        }
        if deterministic {
            for (&(s, top), idx) in &by_source {
                let eps = idx.iter().filter(|&&i| transitions[i].symbol.is_none()).count();
                let mut per_symbol: BTreeMap<char, usize> = BTreeMap::new();
                for &i in idx {
                    if let Some(a) = transitions[i].symbol {
                        *per_symbol.entry(a).or_default() += 1;
                    }
                }
                let clash = (eps > 0 && idx.len() > 1) || per_symbol.values().any(|&c| c > 1);
                if clash {
                    let top = top.map_or("empty", |t| self.stack[t].as_str());
                    return Err(Error::validation(format!(
                        "deterministic PDA has competing transitions at (`{}`, `{top}`)",
                        self.states[s]
                    )));
                }
            }
        }
        Ok(Pda {
            states: self.states.clone(),
            input,
            stack: self.stack.clone(),
            start: self.start,
            acceptance: self.acceptance.iter().copied().collect(),
            transitions,
            deterministic,
            by_source,
        })
    }
}

impl Pda {
    pub fn builder(
        states: Vec<String>,
        input_alphabet: impl IntoIterator<Item = char>,
        stack_alphabet: Vec<String>,
        start: StateId,
    ) -> PdaBuilder {
        PdaBuilder {
            states,
            input: input_alphabet.into_iter().collect(),
            stack: stack_alphabet,
            start,
            acceptance: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|n| n == name)
    }

    pub fn input_alphabet(&self) -> &BTreeSet<char> {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &[String] {
        &self.stack
    }

    pub fn stack_symbol(&self, g: StackSym) -> &str {
        &self.stack[g]
    }

    pub fn stack_id(&self, name: &str) -> Option<StackSym> {
        self.stack.iter().position(|n| n == name)
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn acceptance(&self) -> &BTreeSet<(StateId, Option<StackSym>)> {
        &self.acceptance
    }

    pub fn transitions(&self) -> &[PdaTransition] {
        &self.transitions
    }

    pub fn accepts_config(&self, state: StateId, stack: &[StackSym]) -> bool {
        self.acceptance.contains(&(state, stack.last().copied()))
    }

    /// Transitions applicable in `state` with `stack`.
    pub(crate) fn applicable<'a>(
        &'a self,
        state: StateId,
        stack: &[StackSym],
    ) -> impl Iterator<Item = &'a PdaTransition> + 'a {
        self.by_source
            .get(&(state, stack.last().copied()))
            .into_iter()
            .flatten()
            .map(move |&i| &self.transitions[i])
    }

    pub(crate) fn check_word(&self, w: &str) -> Result<()> {
        match w.chars().find(|a| !self.input.contains(a)) {
            Some(a) => Err(Error::input(format!(
                "symbol `{a}` is not in the input alphabet"
            ))),
            None => Ok(()),
        }
    }
}

/// Applies a stack action; the caller has matched the top already.
pub(crate) fn apply(stack: &mut Vec<StackSym>, action: &StackAction) {
    match action {
        StackAction::Push(g) => stack.push(*g),
        StackAction::Pop => {
            stack.pop();
        }
        StackAction::None => {}
        StackAction::Replace(payload) => {
            stack.pop();
            stack.extend_from_slice(payload);
        }
    }
}
