//! Minimization by partition refinement, and the tools built on the
//! resulting partition: distinguishing suffixes, isomorphism of minimal
//! machines and the pumping decomposition of accepted words.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::fa::{FiniteAutomaton, Kind, StateId};

/// Blocks of mutually indistinguishable states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePartition {
    pub blocks: Vec<BTreeSet<StateId>>,
}

impl StatePartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, s: StateId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&s))
    }
}

/// A split `w = xyz` of an accepted word with pumping constant `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpDecomposition {
    pub x: String,
    pub y: String,
    pub z: String,
    pub p: usize,
}

impl PumpDecomposition {
    /// `x yᵗ z`
    pub fn pumped(&self, t: usize) -> String {
        format!("{}{}{}", self.x, self.y.repeat(t), self.z)
    }
}

/// Moore refinement over the given (reachable) states of a total DFA.
/// Returns a class index per state; states outside `states` get
/// `usize::MAX`. Classes are numbered in order of first appearance.
fn refine(t: &FiniteAutomaton, states: &[StateId]) -> Vec<usize> {
    let mut class = vec![usize::MAX; t.num_states()];
    for &s in states {
        class[s] = usize::from(t.is_accepting(s));
    }
    let mut count = 0;
    loop {
        let mut signatures: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut next = vec![usize::MAX; t.num_states()];
        for &s in states {
            let mut sig = vec![class[s]];
            sig.extend(t.alphabet().iter().map(|&a| class[t.next(s, a).unwrap()]));
            let fresh = signatures.len();
            next[s] = *signatures.entry(sig).or_insert(fresh);
        }
        let new_count = signatures.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

/// The minimal DFA for `L(m)`: a sink is added if `m` is partial,
/// unreachable states are dropped and the rest merged block by block.
pub fn minimize(m: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    m.require_deterministic("minimize")?;
    let t = m.totalize().trim_unreachable();
    let states: Vec<StateId> = (0..t.num_states()).collect();
    let class = refine(&t, &states);
    let n = class.iter().max().map_or(0, |&c| c + 1);
    let mut members: Vec<Vec<&str>> = vec![Vec::new(); n];
    for s in 0..t.num_states() {
        members[class[s]].push(t.name(s));
    }
    let names = members
        .iter()
        .map(|ms| if ms.len() == 1 { ms[0].to_string() } else { format!("[{}]", ms.join(",")) })
        .collect();
    let mut edges = BTreeSet::new();
    for (s, label, q) in t.edges() {
        edges.insert((class[s], label, class[q]));
    }
    let accepting: BTreeSet<StateId> = t.accepting().iter().map(|&s| class[s]).collect();
    FiniteAutomaton::from_parts(
        Kind::Deterministic,
        crate::fa::dedupe_names(names),
        t.alphabet().iter().copied(),
        class[t.start()],
        accepting,
        edges,
    )
}

/// The stable partition of the reachable states of `m`.
///
/// When `m` is partial the refinement also sees the added sink; the sink
/// itself is not a state of `m` and is left out of the blocks.
pub fn state_partition(m: &FiniteAutomaton) -> Result<StatePartition> {
    m.require_deterministic("state partition")?;
    let t = m.totalize();
    let reachable = t.reachable();
    let class = refine(&t, &reachable);
    let mut blocks: BTreeMap<usize, BTreeSet<StateId>> = BTreeMap::new();
    for &s in &reachable {
        if s < m.num_states() {
            blocks.entry(class[s]).or_default().insert(s);
        }
    }
    Ok(StatePartition {
        blocks: blocks.into_values().collect(),
    })
}

/// A shortest word that leads exactly one of `s1`, `s2` into an accepting
/// state, or `None` when the two states are equivalent.
pub fn distinguishing_suffix(
    m: &FiniteAutomaton,
    s1: StateId,
    s2: StateId,
) -> Result<Option<String>> {
    m.require_deterministic("distinguishing suffix")?;
    for s in [s1, s2] {
        if s >= m.num_states() {
            return Err(Error::input(format!("unknown state {s}")));
        }
    }
    let t = m.totalize();
    let mut parent: BTreeMap<(StateId, StateId), Option<((StateId, StateId), char)>> =
        BTreeMap::from([((s1, s2), None)]);
    let mut queue = VecDeque::from([(s1, s2)]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if t.is_accepting(p) != t.is_accepting(q) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, a)) = parent[&cur] {
                word.push(a);
                cur = prev;
            }
            return Ok(Some(word.into_iter().rev().collect()));
        }
        for &a in t.alphabet() {
            let next = (t.next(p, a).unwrap(), t.next(q, a).unwrap());
            if !parent.contains_key(&next) {
                parent.insert(next, Some((pair, a)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Whether a bijection between the reachable states preserves start,
/// acceptance and every transition. Partial machines are totalized first.
pub fn isomorphic(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> Result<bool> {
    m1.require_deterministic("isomorphism")?;
    m2.require_deterministic("isomorphism")?;
    if m1.alphabet() != m2.alphabet() {
        return Ok(false);
    }
    let t1 = m1.totalize().trim_unreachable();
    let t2 = m2.totalize().trim_unreachable();
    if t1.num_states() != t2.num_states() {
        return Ok(false);
    }
    let n = t1.num_states();
    let mut fwd = vec![usize::MAX; n];
    let mut back = vec![usize::MAX; n];
    fwd[t1.start()] = t2.start();
    back[t2.start()] = t1.start();
    let mut queue = VecDeque::from([t1.start()]);
    while let Some(s) = queue.pop_front() {
        let q = fwd[s];
        if t1.is_accepting(s) != t2.is_accepting(q) {
            return Ok(false);
        }
        for &a in t1.alphabet() {
            let (s2, q2) = (t1.next(s, a).unwrap(), t2.next(q, a).unwrap());
            match (fwd[s2], back[q2]) {
                (usize::MAX, usize::MAX) => {
                    fwd[s2] = q2;
                    back[q2] = s2;
                    queue.push_back(s2);
                }
                (f, b) if f == q2 && b == s2 => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Splits an accepted word at the first repeated state among those visited
/// while reading its first `p` symbols, `p` being the number of states.
pub fn pump_decompose(m: &FiniteAutomaton, w: &str) -> Result<PumpDecomposition> {
    m.require_deterministic("pumping decomposition")?;
    let p = m.num_states();
    let chars: Vec<char> = w.chars().collect();
    if chars.len() < p {
        return Err(Error::input(format!(
            "word has length {} but the pumping constant is {p}",
            chars.len()
        )));
    }
    if !m.dfa_run(w)? {
        return Err(Error::input("word is not accepted"));
    }
    let mut first_visit: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut s = m.start();
    for (j, &a) in chars.iter().enumerate().take(p + 1) {
        if let Some(&i) = first_visit.get(&s) {
            return Ok(split(&chars, i, j, p));
        }
        first_visit.insert(s, j);
        if j < p {
            s = m.next(s, a).expect("accepted run is defined");
        }
    }
    // With p states the (p+1)-th visited state must repeat; reaching this
    // point means the word had exactly p symbols and the last state closed
    // the cycle.
    let i = first_visit[&s];
    Ok(split(&chars, i, p, p))
}

fn split(chars: &[char], i: usize, j: usize, p: usize) -> PumpDecomposition {
    PumpDecomposition {
        x: chars[..i].iter().collect(),
        y: chars[i..j].iter().collect(),
        z: chars[j..].iter().collect(),
        p,
    }
}
