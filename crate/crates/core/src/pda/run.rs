use std::collections::{HashSet, VecDeque};

use super::{apply, Pda, StackSym};
use crate::error::{Error, Result};
use crate::fa::StateId;

/// Longest run of consecutive ε-moves a deterministic run may make.
pub const DEFAULT_EPSILON_CAP: usize = 10_000;

/// Limits for the nondeterministic configuration search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_stack: usize,
    pub max_configs: usize,
}

impl Budget {
    /// A budget scaled to the input: stack depth `4|w| + 16`, one million
    /// configurations.
    pub fn for_word(w: &str) -> Self {
        Budget {
            max_stack: 4 * w.chars().count() + 16,
            max_configs: 1_000_000,
        }
    }
}

/// Outcome of one deterministic step attempt.
enum Step {
    Moved,
    Stuck,
}

impl Pda {
    fn require_deterministic(&self) -> Result<()> {
        if self.deterministic {
            Ok(())
        } else {
            Err(Error::structure("dpda_run needs a deterministic PDA"))
        }
    }

    fn step_det(&self, state: &mut StateId, stack: &mut Vec<StackSym>, symbol: Option<char>) -> Step {
        let t = self
            .applicable(*state, stack)
            .find(|t| t.symbol == symbol);
        match t {
            Some(t) => {
                *state = t.to;
                apply(stack, &t.action);
                Step::Moved
            }
            None => Step::Stuck,
        }
    }

    fn has_epsilon_move(&self, state: StateId, stack: &[StackSym]) -> bool {
        self.applicable(state, stack).any(|t| t.symbol.is_none())
    }

    /// Runs a deterministic PDA and reports the stack height after each
    /// input symbol has been read, together with the verdict.
    pub fn dpda_trace(&self, w: &str, epsilon_cap: usize) -> Result<(bool, Vec<usize>)> {
        self.require_deterministic()?;
        self.check_word(w)?;
        let mut state = self.start;
        let mut stack: Vec<StackSym> = Vec::new();
        let mut heights = Vec::new();
        for a in w.chars() {
            let mut eps = 0;
            while self.has_epsilon_move(state, &stack) {
                eps += 1;
                if eps > epsilon_cap {
                    return Err(Error::Divergence(format!(
                        "more than {epsilon_cap} consecutive ε-moves"
                    )));
                }
                self.step_det(&mut state, &mut stack, None);
            }
            match self.step_det(&mut state, &mut stack, Some(a)) {
                Step::Moved => heights.push(stack.len()),
                Step::Stuck => return Ok((false, heights)),
            }
        }
        let mut eps = 0;
        loop {
            if self.accepts_config(state, &stack) {
                return Ok((true, heights));
            }
            if !self.has_epsilon_move(state, &stack) {
                return Ok((false, heights));
            }
            eps += 1;
            if eps > epsilon_cap {
                return Err(Error::Divergence(format!(
                    "more than {epsilon_cap} consecutive ε-moves after the input"
                )));
            }
            self.step_det(&mut state, &mut stack, None);
        }
    }

    /// Runs a deterministic PDA on `w`. The word is accepted when some
    /// configuration reached after reading all of it, including along the
    /// trailing chain of ε-moves, is accepting.
    pub fn dpda_run(&self, w: &str, epsilon_cap: usize) -> Result<bool> {
        self.dpda_trace(w, epsilon_cap).map(|(v, _)| v)
    }

    /// Breadth-first search for an accepting computation on `w`.
    ///
    /// Configurations `(state, stack, position)` are deduplicated. Pushes
    /// beyond `budget.max_stack` and configurations beyond
    /// `budget.max_configs` are cut off; if that happened and nothing
    /// accepted, the answer is a resource error rather than a rejection.
    pub fn npda_run(&self, w: &str, budget: Budget) -> Result<bool> {
        self.check_word(w)?;
        let word: Vec<char> = w.chars().collect();
        let n = word.len();
        let start = (self.start, Vec::<StackSym>::new(), 0usize);
        let mut seen: HashSet<(StateId, Vec<StackSym>, usize)> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut truncated = false;
        while let Some((state, stack, pos)) = queue.pop_front() {
            if pos == n && self.accepts_config(state, &stack) {
                return Ok(true);
            }
            for t in self.applicable(state, &stack) {
                let next_pos = match t.symbol {
                    None => pos,
                    Some(a) if pos < n && word[pos] == a => pos + 1,
                    Some(_) => continue,
                };
                let mut next_stack = stack.clone();
                apply(&mut next_stack, &t.action);
                if next_stack.len() > budget.max_stack {
                    truncated = true;
                    continue;
                }
                let cfg = (t.to, next_stack, next_pos);
                if seen.contains(&cfg) {
                    continue;
                }
                if seen.len() >= budget.max_configs {
                    truncated = true;
                    continue;
                }
                seen.insert(cfg.clone());
                queue.push_back(cfg);
            }
        }
        if truncated {
            Err(Error::resource(format!(
                "search cut off (stack ≤ {}, ≤ {} configurations) without finding an accepting path",
                budget.max_stack, budget.max_configs
            )))
        } else {
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn dyck3_dpda() {
        let p = corpus::dyck3_dpda();
        assert!(p.dpda_run("([]{})", DEFAULT_EPSILON_CAP).unwrap());
        assert!(!p.dpda_run("([)]", DEFAULT_EPSILON_CAP).unwrap());
        assert!(p.dpda_run("", DEFAULT_EPSILON_CAP).unwrap());
        assert!(!p.dpda_run("((", DEFAULT_EPSILON_CAP).unwrap());
    }

    #[test]
    fn palindromes() {
        let p = corpus::palindrome_npda();
        for (w, expected) in [("abba", true), ("ab", false), ("aba", true), ("", true), ("abab", false)] {
            assert_eq!(p.npda_run(w, Budget::for_word(w)).unwrap(), expected, "{w}");
        }
        assert!(p.dpda_run("aa", 10).is_err());
    }

    #[test]
    fn epsilon_loop_diverges() {
        let mut b = Pda::builder(vec!["q".into()], ['a'], vec!["X".into()], 0);
        b.transition(0, None, None, 0, super::super::StackAction::None);
        let p = b.build(true).unwrap();
        assert!(matches!(p.dpda_run("a", 50), Err(Error::Divergence(_))));
    }

    #[test]
    fn unbounded_pushing_hits_the_budget() {
        let mut b = Pda::builder(vec!["q".into()], ['a'], vec!["X".into()], 0);
        b.transition(0, None, None, 0, super::super::StackAction::Push(0));
        b.transition(0, Some(0), None, 0, super::super::StackAction::Push(0));
        let p = b.build(false).unwrap();
        let budget = Budget {
            max_stack: 20,
            max_configs: 1000,
        };
        assert!(matches!(p.npda_run("a", budget), Err(Error::Resource(_))));
    }

    #[test]
    fn determinism_is_checked_on_build() {
        let mut b = Pda::builder(vec!["q".into()], ['a'], vec!["X".into()], 0);
        b.transition(0, None, None, 0, super::super::StackAction::None);
        b.transition(0, None, Some('a'), 0, super::super::StackAction::None);
        assert!(matches!(b.build(true), Err(Error::Validation(_))));
        assert!(b.build(false).is_ok());
    }
}
