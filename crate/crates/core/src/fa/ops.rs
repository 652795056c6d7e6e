use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{dedupe_names, AcceptanceMode, FiniteAutomaton, Kind, StateId};
use crate::error::{Error, Result};

/// Breadth-first materialization of a deterministic automaton whose states
/// are values of `K`. Only states reachable from `start` are built.
fn build_dfa<K: Ord + Clone>(
    alphabet: &BTreeSet<char>,
    start: K,
    step: impl Fn(&K, char) -> K,
    accept: impl Fn(&K) -> bool,
    name: impl Fn(&K) -> String,
) -> FiniteAutomaton {
    let mut index: BTreeMap<K, StateId> = BTreeMap::new();
    let mut keys = vec![start.clone()];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i].clone();
        for &a in alphabet {
            let next = step(&key, a);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    index.insert(next.clone(), id);
                    keys.push(next);
                    id
                }
            };
            edges.push((i, Some(a), id));
        }
        i += 1;
    }
    let accepting: Vec<StateId> = (0..keys.len()).filter(|&s| accept(&keys[s])).collect();
    let names = dedupe_names(keys.iter().map(&name).collect());
    FiniteAutomaton::from_parts(
        Kind::Deterministic,
        names,
        alphabet.iter().copied(),
        0,
        accepting,
        edges,
    )
    .expect("materialized automaton is deterministic")
}

fn subset_name(m: &FiniteAutomaton, set: &BTreeSet<StateId>) -> String {
    let parts: Vec<&str> = set.iter().map(|&s| m.name(s)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Simulates `m` with a deterministic automaton under the given mode.
///
/// * exists: subsets of ε-closed state sets, accepting when they meet the
///   accepting set;
/// * for-all: the same subsets plus one dead state entered as soon as some
///   path cannot continue; accepting when the subset lies inside the
///   accepting set;
/// * parity: states are 0/1 vectors counting paths modulo 2. ε-moves are
///   rejected in this mode.
///
/// The result is total.
pub fn determinize(m: &FiniteAutomaton, mode: AcceptanceMode) -> Result<FiniteAutomaton> {
    match mode {
        AcceptanceMode::Exists => {
            let start = m.epsilon_closure([m.start()]);
            Ok(build_dfa(
                m.alphabet(),
                start,
                |set, a| m.step_set(set, a),
                |set| set.iter().any(|&s| m.is_accepting(s)),
                |set| subset_name(m, set),
            ))
        }
        AcceptanceMode::ForAll => {
            let start = Some(m.epsilon_closure([m.start()]));
            Ok(build_dfa(
                m.alphabet(),
                start,
                |key, a| match key {
                    None => None,
                    Some(set) if set.iter().any(|&s| m.dies_on(s, a)) => None,
                    Some(set) => Some(m.step_set(set, a)),
                },
                |key| {
                    key.as_ref()
                        .is_some_and(|set| set.iter().all(|&s| m.is_accepting(s)))
                },
                |key| match key {
                    None => "dead".to_string(),
                    Some(set) => subset_name(m, set),
                },
            ))
        }
        AcceptanceMode::Parity => {
            if m.has_epsilon() {
                return Err(Error::structure(
                    "parity determinization does not support ε-transitions",
                ));
            }
            let n = m.num_states();
            let mut start = vec![false; n];
            start[m.start()] = true;
            Ok(build_dfa(
                m.alphabet(),
                start,
                |f, a| {
                    let mut next = vec![false; n];
                    for (s, &on) in f.iter().enumerate() {
                        if on {
                            for t in m.targets(s, Some(a)) {
                                next[t] ^= true;
                            }
                        }
                    }
                    next
                },
                |f| m.accepting().iter().filter(|&&s| f[s]).count() % 2 == 1,
                |f| f.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            ))
        }
    }
}

/// Swaps accepting and rejecting states of a deterministic automaton,
/// totalizing it first.
pub fn complement(m: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    m.require_deterministic("complement")?;
    let total = m.totalize();
    let accepting: Vec<StateId> = (0..total.num_states())
        .filter(|&s| !total.is_accepting(s))
        .collect();
    FiniteAutomaton::from_parts(
        Kind::Deterministic,
        total.state_names().to_vec(),
        total.alphabet().iter().copied(),
        total.start(),
        accepting,
        total.edges().collect::<Vec<_>>(),
    )
}

/// Boolean combination used for acceptance in [`product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    And,
    Or,
    Xor,
}

impl Combine {
    pub fn apply(self, x: bool, y: bool) -> bool {
        match self {
            Combine::And => x && y,
            Combine::Or => x || y,
            Combine::Xor => x != y,
        }
    }
}

fn same_alphabet(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> Result<()> {
    if m1.alphabet() == m2.alphabet() {
        Ok(())
    } else {
        Err(Error::input(format!(
            "alphabet mismatch: {:?} vs {:?}",
            m1.alphabet(),
            m2.alphabet()
        )))
    }
}

/// Runs two deterministic automata in parallel (reachable pairs only).
pub fn product(
    m1: &FiniteAutomaton,
    m2: &FiniteAutomaton,
    combine: Combine,
) -> Result<FiniteAutomaton> {
    m1.require_deterministic("product")?;
    m2.require_deterministic("product")?;
    same_alphabet(m1, m2)?;
    let (t1, t2) = (m1.totalize(), m2.totalize());
    Ok(build_dfa(
        t1.alphabet(),
        (t1.start(), t2.start()),
        |&(p, q), a| (t1.next(p, a).unwrap(), t2.next(q, a).unwrap()),
        |&(p, q)| combine.apply(t1.is_accepting(p), t2.is_accepting(q)),
        |&(p, q)| format!("({},{})", t1.name(p), t2.name(q)),
    ))
}

/// `None` when both deterministic automata accept the same language,
/// otherwise a shortest word on which they disagree.
///
/// The witness is found by breadth-first search of the symmetric-difference
/// product, so its length is below the product of the two state counts.
pub fn equivalence_check(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> Result<Option<String>> {
    m1.require_deterministic("equivalence check")?;
    m2.require_deterministic("equivalence check")?;
    same_alphabet(m1, m2)?;
    let (t1, t2) = (m1.totalize(), m2.totalize());
    let start = (t1.start(), t2.start());
    let mut parent: BTreeMap<(StateId, StateId), Option<((StateId, StateId), char)>> =
        BTreeMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if t1.is_accepting(p) != t2.is_accepting(q) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, a)) = parent[&cur] {
                word.push(a);
                cur = prev;
            }
            return Ok(Some(word.into_iter().rev().collect()));
        }
        for &a in t1.alphabet() {
            let next = (t1.next(p, a).unwrap(), t2.next(q, a).unwrap());
            if !parent.contains_key(&next) {
                parent.insert(next, Some((pair, a)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Copies the states and transitions of `m` into `names`/`edges` with
/// `offset`, prefixing names with `tag`.
fn embed(
    m: &FiniteAutomaton,
    tag: &str,
    names: &mut Vec<String>,
    edges: &mut Vec<(StateId, Option<char>, StateId)>,
) -> StateId {
    let offset = names.len();
    names.extend(m.state_names().iter().map(|n| format!("{tag}{n}")));
    edges.extend(m.edges().map(|(s, l, t)| (s + offset, l, t + offset)));
    offset
}

/// L(m1)·L(m2): disjoint union with ε-edges from m1's accepting states to
/// m2's start.
pub fn concatenate(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> FiniteAutomaton {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let o1 = embed(m1, "L.", &mut names, &mut edges);
    let o2 = embed(m2, "R.", &mut names, &mut edges);
    for &f in m1.accepting() {
        edges.push((f + o1, None, m2.start() + o2));
    }
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        names,
        m1.alphabet().union(m2.alphabet()).copied(),
        m1.start() + o1,
        m2.accepting().iter().map(|&f| f + o2),
        edges,
    )
    .expect("concatenation is valid")
}

/// L(m1) ∪ L(m2): a fresh start with ε-edges into both machines.
pub fn union(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> FiniteAutomaton {
    let mut names = vec!["∪".to_string()];
    let mut edges = Vec::new();
    let o1 = embed(m1, "L.", &mut names, &mut edges);
    let o2 = embed(m2, "R.", &mut names, &mut edges);
    edges.push((0, None, m1.start() + o1));
    edges.push((0, None, m2.start() + o2));
    let accepting: Vec<StateId> = m1
        .accepting()
        .iter()
        .map(|&f| f + o1)
        .chain(m2.accepting().iter().map(|&f| f + o2))
        .collect();
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        names,
        m1.alphabet().union(m2.alphabet()).copied(),
        0,
        accepting,
        edges,
    )
    .expect("union is valid")
}

/// L(m)*: ε-edges from accepting states back to the start, plus a fresh
/// accepting start so that ε is accepted.
pub fn star(m: &FiniteAutomaton) -> FiniteAutomaton {
    let mut names = vec!["★".to_string()];
    let mut edges = Vec::new();
    let o = embed(m, "", &mut names, &mut edges);
    let names = dedupe_names(names);
    let old_start = m.start() + o;
    edges.push((0, None, old_start));
    for &f in m.accepting() {
        edges.push((f + o, None, old_start));
    }
    let accepting: Vec<StateId> = std::iter::once(0)
        .chain(m.accepting().iter().map(|&f| f + o))
        .collect();
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        names,
        m.alphabet().iter().copied(),
        0,
        accepting,
        edges,
    )
    .expect("star is valid")
}

/// L(m)^R: arrows reversed, a fresh start with ε-edges to the old accepting
/// states, and the old start as the only accepting state.
pub fn reverse(m: &FiniteAutomaton) -> FiniteAutomaton {
    let mut names = vec!["⟲".to_string()];
    names.extend(m.state_names().iter().cloned());
    let names = dedupe_names(names);
    let mut edges: Vec<_> = m.edges().map(|(s, l, t)| (t + 1, l, s + 1)).collect();
    edges.extend(m.accepting().iter().map(|&f| (0, None, f + 1)));
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        names,
        m.alphabet().iter().copied(),
        0,
        [m.start() + 1],
        edges,
    )
    .expect("reversal is valid")
}

/// The interleavings L(m1) ≀ L(m2): pairs of states where each step (or
/// ε-move) advances exactly one component.
pub fn interleave(m1: &FiniteAutomaton, m2: &FiniteAutomaton) -> Result<FiniteAutomaton> {
    same_alphabet(m1, m2)?;
    let labels: Vec<Option<char>> = std::iter::once(None)
        .chain(m1.alphabet().iter().map(|&a| Some(a)))
        .collect();
    let start = (m1.start(), m2.start());
    let mut index = BTreeMap::from([(start, 0usize)]);
    let mut keys = vec![start];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (p, q) = keys[i];
        for &label in &labels {
            let succ = m1
                .targets(p, label)
                .map(|p2| (p2, q))
                .chain(m2.targets(q, label).map(|q2| (p, q2)));
            for next in succ.collect::<Vec<_>>() {
                let id = *index.entry(next).or_insert_with(|| {
                    keys.push(next);
                    keys.len() - 1
                });
                edges.push((i, label, id));
            }
        }
        i += 1;
    }
    let accepting: Vec<StateId> = (0..keys.len())
        .filter(|&k| m1.is_accepting(keys[k].0) && m2.is_accepting(keys[k].1))
        .collect();
    let names = keys
        .iter()
        .map(|&(p, q)| format!("({},{})", m1.name(p), m2.name(q)))
        .collect();
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        dedupe_names(names),
        m1.alphabet().iter().copied(),
        0,
        accepting,
        edges,
    )
}

/// Which slice of the words of a language [`fraction_language`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fraction {
    /// `{x : ∃y, |x| = |y|, xy ∈ L}`
    FirstHalf,
    /// `{y : ∃x,z, |x| = |y| = |z|, xyz ∈ L}`
    MiddleThird,
}

/// Nondeterministic recognizer for the first halves or middle thirds of the
/// words of a deterministic automaton's language.
///
/// First half: a forward tracker reads the input from the start while a
/// backward tracker walks one arbitrary transition backwards per symbol from
/// a guessed accepting state; accept when they meet.
///
/// Middle third: from a guessed state `q` a forward tracker reads the input,
/// one backward tracker walks from `q` towards the start state and another
/// walks back from a guessed accepting state; accept when the first
/// backward tracker sits on the start state and the other two meet.
pub fn fraction_language(m: &FiniteAutomaton, which: Fraction) -> Result<FiniteAutomaton> {
    m.require_deterministic("fraction language")?;
    let t = m.totalize();
    let n = t.num_states();
    let mut pred: Vec<BTreeSet<StateId>> = vec![BTreeSet::new(); n];
    for (s, _, q) in t.edges() {
        pred[q].insert(s);
    }
    // Every tracker tuple is stored as three components; the first-half
    // machine leaves the first one at usize::MAX.
    const UNUSED: usize = usize::MAX;
    let mut initial = Vec::new();
    match which {
        Fraction::FirstHalf => {
            for &f in t.accepting() {
                initial.push((UNUSED, t.start(), f));
            }
        }
        Fraction::MiddleThird => {
            for q in 0..n {
                for &f in t.accepting() {
                    initial.push((q, q, f));
                }
            }
        }
    }
    let mut index: BTreeMap<(usize, usize, usize), StateId> = BTreeMap::new();
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    let mut edges = Vec::new();
    // State 0 is a fresh start that guesses the initial tuple.
    let mut intern = |key: (usize, usize, usize),
                      keys: &mut Vec<(usize, usize, usize)>|
     -> StateId {
        *index.entry(key).or_insert_with(|| {
            keys.push(key);
            keys.len()
        })
    };
    for key in initial {
        let id = intern(key, &mut keys);
        edges.push((0, None, id));
    }
    let mut i = 0;
    while i < keys.len() {
        let (back, fwd, end) = keys[i];
        let from = i + 1;
        for &a in t.alphabet() {
            let fwd2 = t.next(fwd, a).unwrap();
            let backs: Vec<usize> = if back == UNUSED {
                vec![UNUSED]
            } else {
                pred[back].iter().copied().collect()
            };
            for &b2 in &backs {
                for &e2 in &pred[end] {
                    let id = intern((b2, fwd2, e2), &mut keys);
                    edges.push((from, Some(a), id));
                }
            }
        }
        i += 1;
    }
    let accepting: Vec<StateId> = keys
        .iter()
        .enumerate()
        .filter(|(_, &(back, fwd, end))| {
            fwd == end && (back == UNUSED || back == t.start())
        })
        .map(|(k, _)| k + 1)
        .collect();
    let mut names = vec!["guess".to_string()];
    names.extend(keys.iter().map(|&(back, fwd, end)| {
        if back == UNUSED {
            format!("({},{})", t.name(fwd), t.name(end))
        } else {
            format!("({},{},{})", t.name(back), t.name(fwd), t.name(end))
        }
    }));
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        dedupe_names(names),
        t.alphabet().iter().copied(),
        0,
        accepting,
        edges,
    )
}

/// An equivalent automaton without ε-transitions over the same states.
pub fn remove_epsilon(m: &FiniteAutomaton) -> FiniteAutomaton {
    if !m.has_epsilon() {
        return m.clone();
    }
    let n = m.num_states();
    let mut edges = Vec::new();
    let mut accepting = Vec::new();
    for s in 0..n {
        let closure = m.epsilon_closure([s]);
        if closure.iter().any(|&q| m.is_accepting(q)) {
            accepting.push(s);
        }
        for &a in m.alphabet() {
            let targets = m.epsilon_closure(
                closure
                    .iter()
                    .flat_map(|&q| m.targets(q, Some(a)))
                    .collect::<Vec<_>>(),
            );
            edges.extend(targets.into_iter().map(|t| (s, Some(a), t)));
        }
    }
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        m.state_names().to_vec(),
        m.alphabet().iter().copied(),
        m.start(),
        accepting,
        edges,
    )
    .expect("ε-removal is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fa::from_words;

    #[test]
    fn m3_subset_construction_has_eight_states() {
        let d = determinize(&corpus::m3(), AcceptanceMode::Exists).unwrap();
        assert_eq!(d.num_states(), 8);
    }

    #[test]
    fn parity_determinize_rejects_epsilon() {
        let m = star(&corpus::no_bb());
        assert!(matches!(
            determinize(&m, AcceptanceMode::Parity),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn complement_of_no_bb() {
        let c = complement(&corpus::no_bb()).unwrap();
        assert!(c.dfa_run("abb").unwrap());
        assert!(!c.dfa_run("bab").unwrap());
        assert!(matches!(complement(&corpus::m3()), Err(Error::Structure(_))));
    }

    #[test]
    fn complement_of_everything_is_empty() {
        let mut b = crate::fa::FaBuilder::new();
        b.start("q").accept("q").edge("q", 'a', "q").edge("q", 'b', "q");
        let all = b.build(Kind::Deterministic).unwrap();
        let none = complement(&all).unwrap();
        assert!(none.accepting().is_empty());
    }

    #[test]
    fn product_memberships() {
        let p = product(&corpus::no_bb(), &corpus::even_b(), Combine::And).unwrap();
        assert!(p.dfa_run("ab").unwrap() == false);
        // "ab" has one b, so it is not in the even-b language.
        assert!(!p.dfa_run("b").unwrap());
        assert!(p.dfa_run("bab").unwrap());
        let x = product(&corpus::no_bb(), &corpus::no_bb(), Combine::Xor).unwrap();
        assert!(x.accepting().is_empty());
    }

    #[test]
    fn product_alphabet_mismatch() {
        assert!(matches!(
            product(&corpus::no_bb(), &corpus::mod3(), Combine::And),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn unary_two_versus_three() {
        let w = equivalence_check(&corpus::unary_mod(2), &corpus::unary_mod(3)).unwrap();
        assert_eq!(w.as_deref(), Some("aa"));
        assert_eq!(
            equivalence_check(&corpus::no_bb(), &corpus::no_bb()).unwrap(),
            None
        );
    }

    #[test]
    fn concatenation_examples() {
        let a = from_words(["a"], ['a', 'b']);
        let b = from_words(["b"], ['a', 'b']);
        let ab = concatenate(&a, &b);
        assert!(ab.nfa_run("ab", AcceptanceMode::Exists).unwrap());
        assert!(!ab.nfa_run("ba", AcceptanceMode::Exists).unwrap());
        let l1l2 = concatenate(&corpus::no_bb(), &corpus::even_b());
        assert!(l1l2.nfa_run("babaabbab", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn star_examples() {
        let ab = from_words(["ab"], ['a', 'b']);
        let s = star(&ab);
        assert!(s.nfa_run("", AcceptanceMode::Exists).unwrap());
        assert!(s.nfa_run("abab", AcceptanceMode::Exists).unwrap());
        assert!(!s.nfa_run("aba", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn star_does_not_accept_returns_to_start() {
        // (aa)*b: the start state is revisited after "aa", which is not in L*.
        let mut b = crate::fa::FaBuilder::new();
        b.start("0")
            .edge("0", 'a', "1")
            .edge("1", 'a', "0")
            .edge("0", 'b', "f")
            .accept("f");
        let m = b.build(Kind::Deterministic).unwrap();
        let s = star(&m);
        assert!(!s.nfa_run("aa", AcceptanceMode::Exists).unwrap());
        assert!(s.nfa_run("aabb", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn reverse_no_bb() {
        let r = reverse(&corpus::no_bb());
        assert!(r.nfa_run("bab", AcceptanceMode::Exists).unwrap());
        assert!(!r.nfa_run("abba", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn cat_and_tapir() {
        let sigma: Vec<char> = "catpir".chars().collect();
        let cat = from_words(["cat"], sigma.iter().copied());
        let tapir = from_words(["tapir"], sigma.iter().copied());
        let m = interleave(&cat, &tapir).unwrap();
        assert!(m.nfa_run("ctaapitr", AcceptanceMode::Exists).unwrap());
        assert!(!m.nfa_run("cattapi", AcceptanceMode::Exists).unwrap());
        assert!(!m.nfa_run("ctaapitrr", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn first_half_of_ab_star() {
        let mut b = crate::fa::FaBuilder::new();
        b.start("0")
            .accept("0")
            .edge("0", 'a', "1")
            .edge("1", 'b', "0");
        let m = b.build(Kind::Deterministic).unwrap();
        let half = fraction_language(&m, Fraction::FirstHalf).unwrap();
        assert!(half.nfa_run("ab", AcceptanceMode::Exists).unwrap());
        assert!(half.nfa_run("", AcceptanceMode::Exists).unwrap());
        assert!(half.nfa_run("a", AcceptanceMode::Exists).unwrap());
        assert!(!half.nfa_run("b", AcceptanceMode::Exists).unwrap());
        assert!(!half.nfa_run("aa", AcceptanceMode::Exists).unwrap());
    }

    #[test]
    fn remove_epsilon_keeps_language() {
        let m = star(&corpus::no_bb());
        let e = remove_epsilon(&m);
        assert!(!e.has_epsilon());
        for w in ["", "a", "bb", "bab", "abba"] {
            assert_eq!(
                e.nfa_run(w, AcceptanceMode::Exists).unwrap(),
                m.nfa_run(w, AcceptanceMode::Exists).unwrap()
            );
        }
    }
}
