//! Seeded generators for automata, grammars and words.
//!
//! Every generator takes a seed, so a failing case can be replayed exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fa::{FiniteAutomaton, Kind, StateId};
use crate::grammar::{Grammar, GrammarClass, Rule, Sym};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// A random NFA with `1..=max_states` states. Each possible edge is present
/// with probability `density`; ε-edges are drawn only when `epsilon` is set.
pub fn random_nfa(
    rng: &mut SeededRng,
    max_states: usize,
    alphabet: &[char],
    density: f64,
    epsilon: bool,
) -> FiniteAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut edges = Vec::new();
    let labels: Vec<Option<char>> = alphabet
        .iter()
        .map(|&a| Some(a))
        .chain(epsilon.then_some(None))
        .collect();
    for s in 0..n {
        for &l in &labels {
            for t in 0..n {
                let p = if l.is_none() { density / 2.0 } else { density };
                if rng.gen_bool(p) {
                    edges.push((s, l, t));
                }
            }
        }
    }
    let accepting: Vec<StateId> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        state_names(n),
        alphabet.iter().copied(),
        0,
        accepting,
        edges,
    )
    .expect("generated automaton is valid")
}

/// A random total DFA with exactly `n` states.
pub fn random_dfa(rng: &mut SeededRng, n: usize, alphabet: &[char]) -> FiniteAutomaton {
    let mut edges = Vec::new();
    for s in 0..n {
        for &a in alphabet {
            edges.push((s, Some(a), rng.gen_range(0..n)));
        }
    }
    let accepting: Vec<StateId> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    FiniteAutomaton::from_parts(
        Kind::Deterministic,
        state_names(n),
        alphabet.iter().copied(),
        0,
        accepting,
        edges,
    )
    .expect("generated automaton is valid")
}

/// A DFA for the same language as `m` (which must be deterministic) with
/// every state split into two copies. Each edge goes to a randomly chosen
/// copy of its target, so the result is usually far from minimal.
pub fn duplicate_states(rng: &mut SeededRng, m: &FiniteAutomaton) -> FiniteAutomaton {
    let n = m.num_states();
    let names: Vec<String> = m
        .state_names()
        .iter()
        .flat_map(|s| [format!("{s}.0"), format!("{s}.1")])
        .collect();
    let mut edges = Vec::new();
    for (s, label, t) in m.edges() {
        for copy in 0..2 {
            edges.push((2 * s + copy, label, 2 * t + rng.gen_range(0..2)));
        }
    }
    let accepting: Vec<StateId> = m
        .accepting()
        .iter()
        .flat_map(|&f| [2 * f, 2 * f + 1])
        .collect();
    let start = 2 * m.start() + rng.gen_range(0..2);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.shuffle(rng);
    let mut position = vec![0; 2 * n];
    for (i, &s) in order.iter().enumerate() {
        position[s] = i;
    }
    FiniteAutomaton::from_parts(
        m.kind(),
        order.iter().map(|&s| names[s].clone()).collect(),
        m.alphabet().iter().copied(),
        position[start],
        accepting.into_iter().map(|f| position[f]),
        edges
            .into_iter()
            .map(|(s, l, t)| (position[s], l, position[t])),
    )
    .expect("duplicated automaton is valid")
}

/// A random CNF grammar with `1..=max_vars` variables over `terminals`.
/// The start may derive ε (and then never occurs on a right-hand side).
pub fn random_cnf(rng: &mut SeededRng, max_vars: usize, terminals: &[char]) -> Grammar {
    let n = rng.gen_range(1..=max_vars);
    let names: Vec<String> = (0..n)
        .map(|i| if i == 0 { "S".into() } else { format!("V{i}") })
        .collect();
    let mut rules = Vec::new();
    let start_on_right = rng.gen_bool(0.5);
    let body_vars: Vec<usize> = if start_on_right {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    for v in 0..n {
        for &a in terminals {
            if rng.gen_bool(0.4) {
                rules.push(Rule::new(vec![Sym::Var(v)], vec![Sym::Term(a)]));
            }
        }
        for &b in &body_vars {
            for &c in &body_vars {
                if rng.gen_bool(0.25) {
                    rules.push(Rule::new(vec![Sym::Var(v)], vec![Sym::Var(b), Sym::Var(c)]));
                }
            }
        }
    }
    if !start_on_right && rng.gen_bool(0.3) {
        rules.push(Rule::new(vec![Sym::Var(0)], vec![]));
    }
    Grammar::new(GrammarClass::Cnf, names, terminals.iter().copied(), 0, rules)
        .expect("generated grammar is in CNF")
}

/// A uniformly random word of length `len`.
pub fn random_word(rng: &mut SeededRng, alphabet: &[char], len: usize) -> String {
    (0..len)
        .map(|_| *alphabet.choose(rng).expect("nonempty alphabet"))
        .collect()
}

/// Every word over `alphabet` of length at most `max_len`, shortest first
/// and lexicographically within a length.
pub fn all_words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut sorted = alphabet.to_vec();
    sorted.sort_unstable();
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                sorted.iter().map(move |&a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
