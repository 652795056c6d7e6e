use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Pda, StackAction, StackSym};
use crate::error::{Error, Result};
use crate::fa::{fresh_name, FiniteAutomaton, StateId};
use crate::grammar::{trim, Grammar, GrammarClass, Rule, Sym};

/// The textbook top-down recognizer of `L(g)`.
///
/// `q0` pushes the start symbol and moves to `q`. In `q` a variable on top
/// is replaced (by an ε-move) with one of its right-hand sides, leftmost
/// symbol on top, and a terminal on top is matched against the input and
/// popped. The machine accepts in `q` with an empty stack.
pub fn cfg_to_npda(g: &Grammar) -> Result<Pda> {
    g.require_context_free("cfg_to_npda")?;
    let mut stack: Vec<String> = Vec::new();
    for v in g.variables() {
        let name = if v == "empty" { fresh_name(&stack, "empty'") } else { v.clone() };
        stack.push(name);
    }
    let nv = stack.len();
    let terminals: Vec<char> = g.terminals().iter().copied().collect();
    stack.extend(terminals.iter().map(|c| c.to_string()));
    let term_sym = |c: char| nv + terminals.iter().position(|&t| t == c).unwrap();
    let sym = |s: &Sym| match *s {
        Sym::Var(v) => v,
        Sym::Term(c) => term_sym(c),
    };
    let mut b = Pda::builder(vec!["q0".into(), "q".into()], terminals.clone(), stack, 0);
    b.transition(0, None, None, 1, StackAction::Push(g.start()));
    for r in g.rules() {
        let v = r.head().expect("context-free");
        let action = if r.rhs.is_empty() {
            StackAction::Pop
        } else {
            StackAction::Replace(r.rhs.iter().rev().map(sym).collect())
        };
        b.transition(1, Some(v), None, 1, action);
    }
    for &c in &terminals {
        b.transition(1, Some(term_sym(c)), Some(c), 1, StackAction::Pop);
    }
    b.accept(1, None);
    b.build(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Op {
    Push(StackSym),
    Pop,
    Keep,
}

/// One move of the normalized machine, which always sees a top symbol
/// (`Z₀` marks the bottom) and does exactly one stack operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct NMove {
    from: StateId,
    top: StackSym,
    symbol: Option<char>,
    to: StateId,
    op: Op,
}

struct Normalized {
    states: Vec<String>,
    stack: Vec<String>,
    moves: Vec<NMove>,
    start: StateId,
    drain: StateId,
    bottom: StackSym,
}

fn normalize(p: &Pda) -> Normalized {
    let mut states = p.state_names().to_vec();
    let mut stack = p.stack_alphabet().to_vec();
    let bottom = stack.len();
    stack.push(fresh_name(&stack, "Z₀"));
    let all_tops: Vec<StackSym> = (0..stack.len()).collect();
    let real_tops: Vec<StackSym> = (0..bottom).collect();
    let mut moves = BTreeSet::new();
    for (k, t) in p.transitions().iter().enumerate() {
        let top = t.top.unwrap_or(bottom);
        let mv = |to, op| NMove {
            from: t.from,
            top,
            symbol: t.symbol,
            to,
            op,
        };
        match &t.action {
            StackAction::None => {
                moves.insert(mv(t.to, Op::Keep));
            }
            StackAction::Push(g) => {
                moves.insert(mv(t.to, Op::Push(*g)));
            }
            StackAction::Pop => {
                moves.insert(mv(t.to, Op::Pop));
            }
            StackAction::Replace(payload) if payload.is_empty() => {
                moves.insert(mv(t.to, Op::Pop));
            }
            StackAction::Replace(payload) => {
                // Pop, then push the payload one symbol at a time through
                // fresh intermediate states.
                let mut chain = Vec::with_capacity(payload.len());
                for i in 0..payload.len() {
                    let name = format!("{}~{k}.{i}", states[t.from]);
                    states.push(fresh_name(&states, &name));
                    chain.push(states.len() - 1);
                }
                chain.push(t.to);
                moves.insert(mv(chain[0], Op::Pop));
                for &y in &all_tops {
                    moves.insert(NMove {
                        from: chain[0],
                        top: y,
                        symbol: None,
                        to: chain[1],
                        op: Op::Push(payload[0]),
                    });
                }
                for i in 1..payload.len() {
                    moves.insert(NMove {
                        from: chain[i],
                        top: payload[i - 1],
                        symbol: None,
                        to: chain[i + 1],
                        op: Op::Push(payload[i]),
                    });
                }
            }
        }
    }
    states.push(fresh_name(&states, "drain"));
    let drain = states.len() - 1;
    for &(s, top) in p.acceptance() {
        moves.insert(NMove {
            from: s,
            top: top.unwrap_or(bottom),
            symbol: None,
            to: drain,
            op: Op::Keep,
        });
    }
    for &g in &real_tops {
        moves.insert(NMove {
            from: drain,
            top: g,
            symbol: None,
            to: drain,
            op: Op::Pop,
        });
    }
    Normalized {
        states,
        stack,
        moves: moves.into_iter().collect(),
        start: p.start(),
        drain,
        bottom,
    }
}

/// A grammar for `L(p)` built from the computations of `p`.
///
/// The machine is first normalized: the empty stack becomes a bottom
/// marker `Z₀`, replace-actions become a pop followed by a chain of pushes,
/// and every accepting configuration gets an ε-move into a drain state that
/// pops everything down to `Z₀`. The variable `[p,q,X]` then derives the
/// input read on a path from `p` to `q` that starts and ends with `X` on
/// top and never pops it:
///
/// * `[p,p,X] → ε`
/// * `[p,q,X] → a [r,q,X]` for a move `p → r` reading `a` (or ε) that
///   leaves the stack alone,
/// * `[p,q,X] → a [r,s,Y] b [u,q,X]` for a move `p → r` pushing `Y` and a
///   move `s → u` popping `Y`.
///
/// The start symbol is `[start, drain, Z₀]`; useless variables are trimmed.
pub fn npda_to_cfg(p: &Pda) -> Result<Grammar> {
    let n = normalize(p);
    let mut from: BTreeMap<(StateId, StackSym), Vec<NMove>> = BTreeMap::new();
    for &m in &n.moves {
        from.entry((m.from, m.top)).or_default().push(m);
    }
    let pop_sources: BTreeMap<StackSym, Vec<NMove>> = n
        .moves
        .iter()
        .filter(|m| m.op == Op::Pop)
        .fold(BTreeMap::new(), |mut acc, m| {
            acc.entry(m.top).or_insert_with(Vec::new).push(*m);
            acc
        });

    type Key = (StateId, StateId, StackSym);
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut intern = |k: Key, keys: &mut Vec<Key>| -> usize {
        *ids.entry(k).or_insert_with(|| {
            keys.push(k);
            keys.len() - 1
        })
    };
    let start = intern((n.start, n.drain, n.bottom), &mut keys);
    let mut rules: Vec<Rule> = Vec::new();
    let term = |a: Option<char>| a.map(Sym::Term);
    let mut i = 0;
    while i < keys.len() {
        let (p0, q, x) = keys[i];
        let lhs = vec![Sym::Var(i)];
        if p0 == q {
            rules.push(Rule::new(lhs.clone(), Vec::new()));
        }
        for m in from.get(&(p0, x)).into_iter().flatten() {
            match m.op {
                Op::Keep => {
                    let rest = intern((m.to, q, x), &mut keys);
                    let rhs: Vec<Sym> = term(m.symbol).into_iter().chain([Sym::Var(rest)]).collect();
                    rules.push(Rule::new(lhs.clone(), rhs));
                }
                Op::Push(y) => {
                    for m2 in pop_sources.get(&y).into_iter().flatten() {
                        let inner = intern((m.to, m2.from, y), &mut keys);
                        let rest = intern((m2.to, q, x), &mut keys);
                        let rhs: Vec<Sym> = term(m.symbol)
                            .into_iter()
                            .chain([Sym::Var(inner)])
                            .chain(term(m2.symbol))
                            .chain([Sym::Var(rest)])
                            .collect();
                        rules.push(Rule::new(lhs.clone(), rhs));
                    }
                }
                Op::Pop => {}
            }
        }
        i += 1;
    }
    let names = keys
        .iter()
        .map(|&(a, b, x)| format!("[{},{},{}]", n.states[a], n.states[b], n.stack[x]))
        .collect();
    let g = Grammar::new(
        GrammarClass::ContextFree,
        names,
        p.input_alphabet().iter().copied(),
        start,
        rules,
    )?;
    trim(&g)
}

/// Runs `p` and the deterministic automaton `m` side by side on the input;
/// the stack belongs to `p` alone.
pub fn pda_intersect_regular(p: &Pda, m: &FiniteAutomaton) -> Result<Pda> {
    m.require_deterministic("intersection with a PDA")?;
    if p.input_alphabet() != m.alphabet() {
        return Err(Error::input(format!(
            "alphabet mismatch: {:?} vs {:?}",
            p.input_alphabet(),
            m.alphabet()
        )));
    }
    let m = m.totalize();
    let nm = m.num_states();
    let pair = |s: StateId, t: StateId| s * nm + t;
    let mut names = Vec::with_capacity(p.num_states() * nm);
    for s in 0..p.num_states() {
        for t in 0..nm {
            names.push(format!("({},{})", p.state_name(s), m.name(t)));
        }
    }
    let mut b = Pda::builder(
        names,
        p.input_alphabet().iter().copied(),
        p.stack_alphabet().to_vec(),
        pair(p.start(), m.start()),
    );
    for tr in p.transitions() {
        for t in 0..nm {
            let t2 = match tr.symbol {
                Some(a) => m.next(t, a).expect("total"),
                None => t,
            };
            b.transition(pair(tr.from, t), tr.top, tr.symbol, pair(tr.to, t2), tr.action.clone());
        }
    }
    for &(s, top) in p.acceptance() {
        for &t in m.accepting() {
            b.accept(pair(s, t), top);
        }
    }
    b.build(p.is_deterministic())
}
