//! Reference implementations used as test oracles. None of them calls the
//! algorithm it checks; they work from the raw transition data or from the
//! definition of the language.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use formlang::fa::FiniteAutomaton;
use formlang::grammar::{Grammar, Sym};

/// All words over `alphabet` of length at most `max`, shortest first.
pub fn words(alphabet: &[char], max: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in alphabet {
                next.push(format!("{w}{a}"));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn alphabet_of(m: &FiniteAutomaton) -> Vec<char> {
    m.alphabet().iter().copied().collect()
}

/// Existential acceptance by depth-first search over (state, position)
/// configurations, following ε-edges explicitly.
pub fn accepts(m: &FiniteAutomaton, w: &str) -> bool {
    let w: Vec<char> = w.chars().collect();
    let edges: Vec<_> = m.edges().collect();
    let mut seen = HashSet::new();
    let mut stack = vec![(m.start(), 0usize)];
    while let Some((s, i)) = stack.pop() {
        if !seen.insert((s, i)) {
            continue;
        }
        if i == w.len() && m.accepting().contains(&s) {
            return true;
        }
        for &(from, label, to) in &edges {
            if from != s {
                continue;
            }
            match label {
                None => stack.push((to, i)),
                Some(a) if i < w.len() && w[i] == a => stack.push((to, i + 1)),
                _ => {}
            }
        }
    }
    false
}

/// For an ε-free automaton: enumerates every computation path on `w` and
/// reports (some path accepts, every path survives and accepts, the number
/// of accepting paths is odd).
pub fn path_semantics(m: &FiniteAutomaton, w: &str) -> (bool, bool, bool) {
    assert!(!m.has_epsilon(), "path oracle is for ε-free automata");
    let w: Vec<char> = w.chars().collect();
    let edges: Vec<_> = m.edges().collect();
    let mut accepting = 0u64;
    let mut all_good = true;
    fn walk(
        m: &FiniteAutomaton,
        edges: &[(usize, Option<char>, usize)],
        w: &[char],
        s: usize,
        i: usize,
        accepting: &mut u64,
        all_good: &mut bool,
    ) {
        if i == w.len() {
            if m.accepting().contains(&s) {
                *accepting += 1;
            } else {
                *all_good = false;
            }
            return;
        }
        let mut moved = false;
        for &(from, label, to) in edges {
            if from == s && label == Some(w[i]) {
                moved = true;
                walk(m, edges, w, to, i + 1, accepting, all_good);
            }
        }
        if !moved {
            *all_good = false;
        }
    }
    walk(m, &edges, &w, m.start(), 0, &mut accepting, &mut all_good);
    (accepting > 0, all_good, accepting % 2 == 1)
}

/// The accepted words of length at most `max`.
pub fn language(m: &FiniteAutomaton, max: usize) -> BTreeSet<String> {
    words(&alphabet_of(m), max)
        .into_iter()
        .filter(|w| accepts(m, w))
        .collect()
}

/// Whether a grammar of any context-free shape derives `w`, by a fixpoint
/// over "symbol sequence derives substring" facts.
pub fn grammar_derives(g: &Grammar, w: &str) -> bool {
    let w: Vec<char> = w.chars().collect();
    let n = w.len();
    let nv = g.num_variables();
    // derives[v][i][j]: variable v derives w[i..j]
    let mut derives = vec![vec![vec![false; n + 1]; n + 1]; nv];
    loop {
        let mut changed = false;
        for r in g.rules() {
            let v = r.head().expect("context-free rule");
            for i in 0..=n {
                for j in i..=n {
                    if !derives[v][i][j] && seq_derives(&r.rhs, &w, i, j, &derives) {
                        derives[v][i][j] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    derives[g.start()][0][n]
}

fn seq_derives(rhs: &[Sym], w: &[char], i: usize, j: usize, derives: &[Vec<Vec<bool>>]) -> bool {
    match rhs.split_first() {
        None => i == j,
        Some((Sym::Term(a), rest)) => i < j && w[i] == *a && seq_derives(rest, w, i + 1, j, derives),
        Some((Sym::Var(v), rest)) => {
            (i..=j).any(|k| derives[*v][i][k] && seq_derives(rest, w, k, j, derives))
        }
    }
}

pub fn grammar_language(g: &Grammar, max: usize) -> BTreeSet<String> {
    let alphabet: Vec<char> = g.terminals().iter().copied().collect();
    words(&alphabet, max)
        .into_iter()
        .filter(|w| grammar_derives(g, w))
        .collect()
}

/// Properly nested over the given (open, close) pairs.
pub fn is_dyck(w: &str, pairs: &[(char, char)]) -> bool {
    let mut stack = Vec::new();
    for c in w.chars() {
        if let Some(&(_, close)) = pairs.iter().find(|(o, _)| *o == c) {
            stack.push(close);
        } else if stack.pop() != Some(c) {
            return false;
        }
    }
    stack.is_empty()
}

pub const PAIRS: [(char, char); 3] = [('(', ')'), ('[', ']'), ('{', '}')];

pub fn is_anbn(w: &str) -> bool {
    let n = w.len() / 2;
    w.len() % 2 == 0 && w == format!("{}{}", "a".repeat(n), "b".repeat(n))
}

pub fn is_palindrome(w: &str) -> bool {
    w.chars().eq(w.chars().rev())
}

pub fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Dyck words of length `len` over `k` pairs, by the closed form.
pub fn dyck_count(k: u128, len: u128) -> u128 {
    if len % 2 == 1 {
        return 0;
    }
    let h = len / 2;
    k.pow(h as u32) * binomial(len, h) / (h + 1)
}

/// Shortest word on which two automata disagree, by enumeration.
pub fn shortest_disagreement(
    m1: &FiniteAutomaton,
    m2: &FiniteAutomaton,
    max: usize,
) -> Option<String> {
    words(&alphabet_of(m1), max)
        .into_iter()
        .find(|w| accepts(m1, w) != accepts(m2, w))
}
