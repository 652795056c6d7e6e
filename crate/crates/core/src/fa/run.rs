use std::collections::BTreeSet;

use super::{AcceptanceMode, FiniteAutomaton, StateId};
use crate::error::{Error, Result};

impl FiniteAutomaton {
    /// δ*(s, w) for a deterministic automaton; `None` when the run falls off
    /// a missing transition.
    pub fn delta_star(&self, s: StateId, w: &str) -> Result<Option<StateId>> {
        self.require_deterministic("δ*")?;
        self.check_word(w)?;
        Ok(w.chars().try_fold(s, |q, a| self.next(q, a)))
    }

    /// Runs a deterministic automaton on `w`.
    pub fn dfa_run(&self, w: &str) -> Result<bool> {
        Ok(self
            .delta_star(self.start, w)?
            .is_some_and(|q| self.is_accepting(q)))
    }

    /// All states reachable from `set` through ε-moves, `set` included.
    pub fn epsilon_closure(&self, set: impl IntoIterator<Item = StateId>) -> BTreeSet<StateId> {
        let mut closure: BTreeSet<StateId> = BTreeSet::new();
        let mut stack: Vec<StateId> = set.into_iter().collect();
        while let Some(s) = stack.pop() {
            if closure.insert(s) {
                stack.extend(self.targets(s, None));
            }
        }
        closure
    }

    /// Symbol-successors of an ε-closed set, closed again.
    pub fn step_set(&self, set: &BTreeSet<StateId>, a: char) -> BTreeSet<StateId> {
        self.epsilon_closure(set.iter().flat_map(|&s| self.targets(s, Some(a))))
    }

    /// True when a path sitting in `s` cannot read `a`, not even after
    /// further ε-moves.
    pub(crate) fn dies_on(&self, s: StateId, a: char) -> bool {
        self.epsilon_closure([s])
            .iter()
            .all(|&q| self.targets(q, Some(a)).next().is_none())
    }

    /// Runs the automaton on `w` under the given acceptance mode.
    ///
    /// Under [`AcceptanceMode::ForAll`] a path that has no way to read the
    /// next symbol counts as rejecting. Under [`AcceptanceMode::Parity`]
    /// ε-moves are allowed only when no ε-cycle is reachable, since the
    /// number of paths is otherwise infinite.
    pub fn nfa_run(&self, w: &str, mode: AcceptanceMode) -> Result<bool> {
        self.check_word(w)?;
        match mode {
            AcceptanceMode::Exists => {
                let mut set = self.epsilon_closure([self.start]);
                for a in w.chars() {
                    set = self.step_set(&set, a);
                }
                Ok(set.iter().any(|&s| self.is_accepting(s)))
            }
            AcceptanceMode::ForAll => {
                let mut set = self.epsilon_closure([self.start]);
                for a in w.chars() {
                    if set.iter().any(|&s| self.dies_on(s, a)) {
                        return Ok(false);
                    }
                    set = self.step_set(&set, a);
                }
                Ok(set.iter().all(|&s| self.is_accepting(s)))
            }
            AcceptanceMode::Parity => {
                let order = self.epsilon_topological_order()?;
                let n = self.num_states();
                // Path counts wrap modulo 2^128, which keeps their parity.
                let mut counts = vec![0u128; n];
                counts[self.start] = 1;
                self.propagate_epsilon(&mut counts, &order);
                for a in w.chars() {
                    let mut next = vec![0u128; n];
                    for s in 0..n {
                        if counts[s] != 0 {
                            for t in self.targets(s, Some(a)) {
                                next[t] = next[t].wrapping_add(counts[s]);
                            }
                        }
                    }
                    counts = next;
                    self.propagate_epsilon(&mut counts, &order);
                }
                let total = self
                    .accepting
                    .iter()
                    .fold(0u128, |acc, &s| acc.wrapping_add(counts[s]));
                Ok(total % 2 == 1)
            }
        }
    }

    fn propagate_epsilon(&self, counts: &mut [u128], order: &[StateId]) {
        for &s in order {
            if counts[s] == 0 {
                continue;
            }
            let c = counts[s];
            for t in self.targets(s, None) {
                counts[t] = counts[t].wrapping_add(c);
            }
        }
    }

    /// Topological order of the ε-graph over reachable states, or a
    /// structure error if a reachable ε-cycle exists.
    fn epsilon_topological_order(&self) -> Result<Vec<StateId>> {
        let reach = self.reachable();
        let n = self.num_states();
        let mut indeg = vec![0usize; n];
        let mut live = vec![false; n];
        for &s in &reach {
            live[s] = true;
        }
        for &s in &reach {
            for t in self.targets(s, None) {
                indeg[t] += 1;
            }
        }
        let mut queue: Vec<StateId> = reach.iter().copied().filter(|&s| indeg[s] == 0).collect();
        let mut order = Vec::with_capacity(reach.len());
        while let Some(s) = queue.pop() {
            order.push(s);
            for t in self.targets(s, None) {
                indeg[t] -= 1;
                if indeg[t] == 0 && live[t] {
                    queue.push(t);
                }
            }
        }
        if order.len() < reach.len() {
            return Err(Error::structure(
                "parity acceptance is undefined with a reachable ε-cycle",
            ));
        }
        Ok(order)
    }
}
