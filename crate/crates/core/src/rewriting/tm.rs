use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fa::StateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }
}

/// A deterministic single-tape Turing machine. A missing transition halts
/// and rejects; entering the accept state halts and accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    tape: BTreeSet<char>,
    blank: char,
    input: BTreeSet<char>,
    start: StateId,
    accept: StateId,
    lba: bool,
    delta: BTreeMap<(StateId, char), (char, StateId, Move)>,
}

#[derive(Debug, Clone)]
pub struct TuringMachineBuilder {
    states: Vec<String>,
    tape: Vec<char>,
    blank: char,
    input: Vec<char>,
    start: StateId,
    accept: StateId,
    lba: bool,
    transitions: Vec<(StateId, char, char, StateId, Move)>,
}

impl TuringMachineBuilder {
    pub fn lba(&mut self, on: bool) -> &mut Self {
        self.lba = on;
        self
    }

    pub fn transition(
        &mut self,
        state: StateId,
        read: char,
        write: char,
        next: StateId,
        dir: Move,
    ) -> &mut Self {
        self.transitions.push((state, read, write, next, dir));
        self
    }

    pub fn build(&self) -> Result<TuringMachine> {
        let n = self.states.len();
        if self.states.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::validation("duplicate control state name"));
        }
        if self.start >= n || self.accept >= n {
            return Err(Error::validation("start or accept state is not a state"));
        }
        let tape: BTreeSet<char> = self.tape.iter().copied().collect();
        if !tape.contains(&self.blank) {
            return Err(Error::validation("the blank is not a tape symbol"));
        }
        let input: BTreeSet<char> = self.input.iter().copied().collect();
        if let Some(a) = input.iter().find(|a| !tape.contains(a) || **a == self.blank) {
            return Err(Error::validation(format!(
                "input symbol `{a}` must be a non-blank tape symbol"
            )));
        }
        let mut delta = BTreeMap::new();
        for &(s, read, write, next, dir) in &self.transitions {
            if s >= n || next >= n {
                return Err(Error::validation("transition refers to an unknown state"));
            }
            if !tape.contains(&read) || !tape.contains(&write) {
                return Err(Error::validation("transition uses a symbol off the tape alphabet"));
            }
            if s == self.accept {
                return Err(Error::validation(format!(
                    "the accept state `{}` has an outgoing transition",
                    self.states[s]
                )));
            }
            if let Some(old) = delta.insert((s, read), (write, next, dir)) {
                if old != (write, next, dir) {
                    return Err(Error::validation(format!(
                        "two transitions for (`{}`, `{read}`)",
                        self.states[s]
                    )));
                }
            }
        }
        Ok(TuringMachine {
            states: self.states.clone(),
            tape,
            blank: self.blank,
            input,
            start: self.start,
            accept: self.accept,
            lba: self.lba,
            delta,
        })
    }
}

/// Tape contents, head position and control state. Cells missing from
/// `tape` hold the blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmConfig {
    pub tape: BTreeMap<i64, char>,
    pub head: i64,
    pub state: StateId,
    /// Length of the original input; bounds the head in LBA mode.
    pub input_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Continue(TmConfig),
    Accept,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    Timeout,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Timeout => "timeout",
        }
    }
}

/// Verdict of a bounded run and the number of steps taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TmRun {
    pub verdict: Verdict,
    pub steps: usize,
}

impl TuringMachine {
    #[allow(clippy::too_many_arguments)]
    pub fn builder(
        states: Vec<String>,
        tape_alphabet: impl IntoIterator<Item = char>,
        blank: char,
        input_alphabet: impl IntoIterator<Item = char>,
        start: StateId,
        accept: StateId,
    ) -> TuringMachineBuilder {
        TuringMachineBuilder {
            states,
            tape: tape_alphabet.into_iter().collect(),
            blank,
            input: input_alphabet.into_iter().collect(),
            start,
            accept,
            lba: false,
            transitions: Vec::new(),
        }
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn tape_alphabet(&self) -> &BTreeSet<char> {
        &self.tape
    }

    pub fn blank(&self) -> char {
        self.blank
    }

    pub fn input_alphabet(&self) -> &BTreeSet<char> {
        &self.input
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accept_state(&self) -> StateId {
        self.accept
    }

    pub fn is_lba(&self) -> bool {
        self.lba
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, char, char, StateId, Move)> + '_ {
        self.delta
            .iter()
            .map(|(&(s, read), &(write, next, dir))| (s, read, write, next, dir))
    }

    /// The configuration with `w` at positions `0..|w|`, the head on cell 0
    /// and the control in the start state.
    pub fn initial(&self, w: &str) -> Result<TmConfig> {
        if let Some(a) = w.chars().find(|a| !self.input.contains(a)) {
            return Err(Error::input(format!("symbol `{a}` is not in the input alphabet")));
        }
        Ok(TmConfig {
            tape: w.chars().enumerate().map(|(i, a)| (i as i64, a)).collect(),
            head: 0,
            state: self.start,
            input_len: w.chars().count(),
        })
    }

    pub fn read(&self, c: &TmConfig) -> char {
        c.tape.get(&c.head).copied().unwrap_or(self.blank)
    }

    /// One move of the machine.
    pub fn tm_step(&self, c: &TmConfig) -> StepOutcome {
        if c.state == self.accept {
            return StepOutcome::Accept;
        }
        let Some(&(write, next, dir)) = self.delta.get(&(c.state, self.read(c))) else {
            return StepOutcome::Reject;
        };
        if next == self.accept {
            return StepOutcome::Accept;
        }
        let head = c.head + dir.offset();
        if self.lba && (head < 0 || head >= c.input_len as i64) {
            return StepOutcome::Reject;
        }
        let mut tape = c.tape.clone();
        if write == self.blank {
            tape.remove(&c.head);
        } else {
            tape.insert(c.head, write);
        }
        StepOutcome::Continue(TmConfig {
            tape,
            head,
            state: next,
            input_len: c.input_len,
        })
    }

    /// Runs from the initial configuration on `w` for at most `step_limit`
    /// steps. Running out of steps gives [`Verdict::Timeout`], never a
    /// rejection.
    pub fn tm_run(&self, w: &str, step_limit: usize) -> Result<TmRun> {
        self.tm_trace(w, step_limit).map(|(run, _)| run)
    }

    /// Like [`TuringMachine::tm_run`], also returning every configuration
    /// visited, the initial one first.
    pub fn tm_trace(&self, w: &str, step_limit: usize) -> Result<(TmRun, Vec<TmConfig>)> {
        let mut c = self.initial(w)?;
        if c.state == self.accept {
            let run = TmRun {
                verdict: Verdict::Accept,
                steps: 0,
            };
            return Ok((run, vec![c]));
        }
        let mut trace = vec![c.clone()];
        for steps in 1..=step_limit {
            match self.tm_step(&c) {
                StepOutcome::Continue(next) => {
                    trace.push(next.clone());
                    c = next;
                }
                StepOutcome::Accept => {
                    let run = TmRun {
                        verdict: Verdict::Accept,
                        steps,
                    };
                    return Ok((run, trace));
                }
                StepOutcome::Reject => {
                    let run = TmRun {
                        verdict: Verdict::Reject,
                        steps,
                    };
                    return Ok((run, trace));
                }
            }
        }
        let run = TmRun {
            verdict: Verdict::Timeout,
            steps: step_limit,
        };
        Ok((run, trace))
    }
}
