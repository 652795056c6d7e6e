//! Real-time counter automata.
//!
//! A machine with `k` counters reads one symbol per step. A transition is
//! chosen by the control state, the symbol and the zero/nonzero pattern of
//! the counters, and then changes each counter by at most one. Because the
//! pattern must say "nonzero" before a decrement is allowed, counters can
//! never go negative.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::fa::StateId;
use crate::pda::{Pda, StackAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZeroTest {
    Zero,
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CounterAction {
    Inc,
    Dec,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CounterTransition {
    pub from: StateId,
    pub zero: Vec<ZeroTest>,
    pub symbol: char,
    pub to: StateId,
    pub actions: Vec<CounterAction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterMachine {
    states: Vec<String>,
    alphabet: BTreeSet<char>,
    k: usize,
    start: StateId,
    acceptance: BTreeSet<(StateId, Vec<ZeroTest>)>,
    transitions: Vec<CounterTransition>,
    deterministic: bool,
    index: BTreeMap<(StateId, Vec<ZeroTest>, char), Vec<usize>>,
}

/// A state together with the counter values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CounterConfig {
    pub state: StateId,
    pub values: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CounterBuilder {
    states: Vec<String>,
    alphabet: Vec<char>,
    k: usize,
    start: StateId,
    acceptance: Vec<(StateId, Vec<ZeroTest>)>,
    transitions: Vec<CounterTransition>,
}

impl CounterBuilder {
    pub fn accept(&mut self, state: StateId, zero: Vec<ZeroTest>) -> &mut Self {
        self.acceptance.push((state, zero));
        self
    }

    pub fn transition(
        &mut self,
        from: StateId,
        zero: Vec<ZeroTest>,
        symbol: char,
        to: StateId,
        actions: Vec<CounterAction>,
    ) -> &mut Self {
        self.transitions.push(CounterTransition {
            from,
            zero,
            symbol,
            to,
            actions,
        });
        self
    }

    pub fn build(&self, deterministic: bool) -> Result<CounterMachine> {
        let n = self.states.len();
        if self.states.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::validation("duplicate control state name"));
        }
        if self.start >= n {
            return Err(Error::validation("start state is not a state"));
        }
        let alphabet: BTreeSet<char> = self.alphabet.iter().copied().collect();
        for (s, z) in &self.acceptance {
            if *s >= n || z.len() != self.k {
                return Err(Error::validation("malformed acceptance pair"));
            }
        }
        let mut index: BTreeMap<(StateId, Vec<ZeroTest>, char), Vec<usize>> = BTreeMap::new();
        let mut transitions = Vec::new();
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            if t.from >= n || t.to >= n {
                return Err(Error::validation("transition refers to an unknown state"));
            }
            if t.zero.len() != self.k || t.actions.len() != self.k {
                return Err(Error::validation(format!(
                    "transition from `{}` does not describe {} counters",
                    self.states[t.from], self.k
                )));
            }
            if !alphabet.contains(&t.symbol) {
                return Err(Error::validation(format!(
                    "symbol `{}` is not in the alphabet",
                    t.symbol
                )));
            }
            if t
                .zero
                .iter()
                .zip(&t.actions)
                .any(|(z, a)| *z == ZeroTest::Zero && *a == CounterAction::Dec)
            {
                return Err(Error::validation(format!(
                    "transition from `{}` decrements a counter that is zero",
                    self.states[t.from]
                )));
            }
            if seen.insert(t.clone()) {
                index
                    .entry((t.from, t.zero.clone(), t.symbol))
                    .or_default()
                    .push(transitions.len());
                transitions.push(t.clone());
            }
        }
        if deterministic {
            for s in 0..n {
                for zero in patterns(self.k) {
                    for &a in &alphabet {
                        let count = index.get(&(s, zero.clone(), a)).map_or(0, Vec::len);
                        if count != 1 {
                            return Err(Error::validation(format!(
                                "deterministic counter machine has {count} transitions for (`{}`, {zero:?}, `{a}`)",
                                self.states[s]
                            )));
                        }
                    }
                }
            }
        }
        Ok(CounterMachine {
            states: self.states.clone(),
            alphabet,
            k: self.k,
            start: self.start,
            acceptance: self.acceptance.iter().cloned().collect(),
            transitions,
            deterministic,
            index,
        })
    }
}

/// All `2^k` zero patterns.
fn patterns(k: usize) -> Vec<Vec<ZeroTest>> {
    (0..1usize << k)
        .map(|bits| {
            (0..k)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        ZeroTest::Nonzero
                    } else {
                        ZeroTest::Zero
                    }
                })
                .collect()
        })
        .collect()
}

impl CounterMachine {
    pub fn builder(
        states: Vec<String>,
        alphabet: impl IntoIterator<Item = char>,
        k: usize,
        start: StateId,
    ) -> CounterBuilder {
        CounterBuilder {
            states,
            alphabet: alphabet.into_iter().collect(),
            k,
            start,
            acceptance: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn counters(&self) -> usize {
        self.k
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

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn acceptance(&self) -> &BTreeSet<(StateId, Vec<ZeroTest>)> {
        &self.acceptance
    }

    pub fn transitions(&self) -> &[CounterTransition] {
        &self.transitions
    }

    pub fn initial(&self) -> CounterConfig {
        CounterConfig {
            state: self.start,
            values: vec![0; self.k],
        }
    }

    fn pattern_of(values: &[u64]) -> Vec<ZeroTest> {
        values
            .iter()
            .map(|&v| if v == 0 { ZeroTest::Zero } else { ZeroTest::Nonzero })
            .collect()
    }

    pub fn is_accepting(&self, c: &CounterConfig) -> bool {
        self.acceptance
            .contains(&(c.state, Self::pattern_of(&c.values)))
    }

    /// Configurations reachable from `c` by reading `a`.
    pub fn successors(&self, c: &CounterConfig, a: char) -> Vec<CounterConfig> {
        let key = (c.state, Self::pattern_of(&c.values), a);
        self.index
            .get(&key)
            .into_iter()
            .flatten()
            .map(|&i| {
                let t = &self.transitions[i];
                let values = c
                    .values
                    .iter()
                    .zip(&t.actions)
                    .map(|(&v, act)| match act {
                        CounterAction::Inc => v + 1,
                        CounterAction::Dec => v - 1,
                        CounterAction::None => v,
                    })
                    .collect();
                CounterConfig {
                    state: t.to,
                    values,
                }
            })
            .collect()
    }

    fn check_word(&self, w: &str) -> Result<()> {
        match w.chars().find(|a| !self.alphabet.contains(a)) {
            Some(a) => Err(Error::input(format!("symbol `{a}` is not in the alphabet"))),
            None => Ok(()),
        }
    }

    /// The configurations occupied after each prefix of `w`, one set per
    /// step (`|w| + 1` sets in all).
    pub fn trace(&self, w: &str) -> Result<Vec<BTreeSet<CounterConfig>>> {
        self.check_word(w)?;
        let mut current = BTreeSet::from([self.initial()]);
        let mut out = vec![current.clone()];
        for a in w.chars() {
            current = current
                .iter()
                .flat_map(|c| self.successors(c, a))
                .collect();
            out.push(current.clone());
        }
        Ok(out)
    }

    /// Whether some run on `w` ends in an accepting configuration. Counter
    /// values never exceed `|w|`, so the search is finite.
    pub fn ca_run(&self, w: &str) -> Result<bool> {
        let last = self.trace(w)?.pop().expect("at least the initial set");
        Ok(last.iter().any(|c| self.is_accepting(c)))
    }

    /// Number of distinct configurations reachable in at most `t` steps,
    /// over all inputs.
    pub fn count_reachable(&self, t: usize, budget: usize) -> Result<usize> {
        let mut seen: HashSet<CounterConfig> = HashSet::from([self.initial()]);
        let mut queue = VecDeque::from([(self.initial(), 0usize)]);
        while let Some((c, depth)) = queue.pop_front() {
            if depth == t {
                continue;
            }
            for &a in &self.alphabet {
                for next in self.successors(&c, a) {
                    if seen.insert(next.clone()) {
                        if seen.len() > budget {
                            return Err(Error::resource(format!(
                                "more than {budget} configurations"
                            )));
                        }
                        queue.push_back((next, depth + 1));
                    }
                }
            }
        }
        Ok(seen.len())
    }
}

/// Simulates a one-counter machine by a PDA whose stack holds one `I` per
/// unit of the counter: "zero" becomes "empty stack".
pub fn counter_to_pda(m: &CounterMachine) -> Result<Pda> {
    if m.counters() != 1 {
        return Err(Error::structure(format!(
            "only one-counter machines translate to a PDA, this one has {}",
            m.counters()
        )));
    }
    const I: usize = 0;
    let top = |z: ZeroTest| match z {
        ZeroTest::Zero => None,
        ZeroTest::Nonzero => Some(I),
    };
    let mut b = Pda::builder(
        m.state_names().to_vec(),
        m.alphabet().iter().copied(),
        vec!["I".into()],
        m.start(),
    );
    for t in m.transitions() {
        let action = match t.actions[0] {
            CounterAction::Inc => StackAction::Push(I),
            CounterAction::Dec => StackAction::Pop,
            CounterAction::None => StackAction::None,
        };
        b.transition(t.from, top(t.zero[0]), Some(t.symbol), t.to, action);
    }
    for (s, z) in m.acceptance() {
        b.accept(*s, top(z[0]));
    }
    b.build(m.is_deterministic())
}
