use super::{Grammar, GrammarClass, Rule, Sym};
use crate::error::{Error, Result};
use crate::fa::{remove_epsilon, FiniteAutomaton, Kind};

/// One state per variable: `A → tB` is an edge from `A` to `B` on `t` and
/// `A → ε` makes `A` accepting.
pub fn regular_grammar_to_nfa(g: &Grammar) -> Result<FiniteAutomaton> {
    g.check_class(GrammarClass::Regular)
        .map_err(|e| Error::structure(e.to_string()))?;
    let mut edges = Vec::new();
    let mut accepting = Vec::new();
    for r in g.rules() {
        let v = r.head().expect("regular rules are context-free");
        match r.rhs.as_slice() {
            [] => accepting.push(v),
            [Sym::Term(t), Sym::Var(b)] => edges.push((v, Some(*t), *b)),
            _ => unreachable!("checked regular"),
        }
    }
    FiniteAutomaton::from_parts(
        Kind::Nondeterministic,
        g.variables().to_vec(),
        g.terminals().iter().copied(),
        g.start(),
        accepting,
        edges,
    )
}

/// The inverse construction: variables are the states (renamed when a
/// state name collides with a terminal). ε-moves are removed first.
pub fn nfa_to_regular_grammar(m: &FiniteAutomaton) -> Result<Grammar> {
    let m = remove_epsilon(m);
    let mut names: Vec<String> = Vec::with_capacity(m.num_states());
    for name in m.state_names() {
        let mut chars = name.chars();
        let clashes = matches!((chars.next(), chars.next()), (Some(c), None) if m.alphabet().contains(&c));
        let base = if clashes { format!("q{name}") } else { name.clone() };
        names.push(crate::fa::fresh_name(&names, &base));
    }
    let mut rules: Vec<Rule> = m
        .edges()
        .map(|(s, a, t)| {
            Rule::new(
                vec![Sym::Var(s)],
                vec![Sym::Term(a.expect("ε-free")), Sym::Var(t)],
            )
        })
        .collect();
    rules.extend(
        m.accepting()
            .iter()
            .map(|&s| Rule::new(vec![Sym::Var(s)], Vec::new())),
    );
    Grammar::new(
        GrammarClass::Regular,
        names,
        m.alphabet().iter().copied(),
        m.start(),
        rules,
    )
}
