use std::collections::BTreeSet;

use super::{fresh_var, Grammar, GrammarClass, Rule, Sym, VarId};
use crate::error::Result;

/// Variables of `g1` and `g2` side by side, renamed apart with `.1`/`.2`
/// suffixes, plus a fresh start variable at index 0.
fn side_by_side(g1: &Grammar, g2: &Grammar) -> (Vec<String>, Vec<Rule>, VarId, VarId) {
    let mut names = vec![String::new()];
    names.extend(g1.variables().iter().map(|v| format!("{v}.1")));
    let off2 = names.len();
    names.extend(g2.variables().iter().map(|v| format!("{v}.2")));
    let shift = |r: &Rule, off: usize| {
        let f = |s: &Sym| match *s {
            Sym::Var(x) => Sym::Var(x + off),
            t => t,
        };
        Rule::new(r.lhs.iter().map(f).collect(), r.rhs.iter().map(f).collect())
    };
    let mut rules: Vec<Rule> = g1.rules().iter().map(|r| shift(r, 1)).collect();
    rules.extend(g2.rules().iter().map(|r| shift(r, off2)));
    names[0] = fresh_var(&names, "S");
    (names, rules, g1.start() + 1, g2.start() + off2)
}

fn terminals(g1: &Grammar, g2: &Grammar) -> BTreeSet<char> {
    g1.terminals().union(g2.terminals()).copied().collect()
}

/// `S → S₁ | S₂`
pub fn union(g1: &Grammar, g2: &Grammar) -> Result<Grammar> {
    g1.require_context_free("grammar union")?;
    g2.require_context_free("grammar union")?;
    let (names, mut rules, s1, s2) = side_by_side(g1, g2);
    rules.push(Rule::new(vec![Sym::Var(0)], vec![Sym::Var(s1)]));
    rules.push(Rule::new(vec![Sym::Var(0)], vec![Sym::Var(s2)]));
    Grammar::new(GrammarClass::ContextFree, names, terminals(g1, g2), 0, rules)
}

/// `S → S₁ S₂`
pub fn concatenation(g1: &Grammar, g2: &Grammar) -> Result<Grammar> {
    g1.require_context_free("grammar concatenation")?;
    g2.require_context_free("grammar concatenation")?;
    let (names, mut rules, s1, s2) = side_by_side(g1, g2);
    rules.push(Rule::new(vec![Sym::Var(0)], vec![Sym::Var(s1), Sym::Var(s2)]));
    Grammar::new(GrammarClass::ContextFree, names, terminals(g1, g2), 0, rules)
}

/// `S' → S'S' | S | ε`
pub fn star(g: &Grammar) -> Result<Grammar> {
    g.require_context_free("grammar star")?;
    let mut names = g.variables().to_vec();
    let s = names.len();
    names.push(fresh_var(&names, &format!("{}*", names[g.start()])));
    let mut rules = g.rules().to_vec();
    rules.push(Rule::new(vec![Sym::Var(s)], vec![Sym::Var(s), Sym::Var(s)]));
    rules.push(Rule::new(vec![Sym::Var(s)], vec![Sym::Var(g.start())]));
    rules.push(Rule::new(vec![Sym::Var(s)], Vec::new()));
    Grammar::new(GrammarClass::ContextFree, names, g.terminals().iter().copied(), s, rules)
}

/// Every right-hand side reversed.
pub fn reversal(g: &Grammar) -> Result<Grammar> {
    g.require_context_free("grammar reversal")?;
    let rules = g.rules().iter().map(|r| {
        let mut rhs = r.rhs.clone();
        rhs.reverse();
        Rule::new(r.lhs.clone(), rhs)
    });
    Grammar::new(
        GrammarClass::ContextFree,
        g.variables().to_vec(),
        g.terminals().iter().copied(),
        g.start(),
        rules,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::generate_words;

    fn cfg(text: &str) -> Grammar {
        Grammar::from_text(GrammarClass::ContextFree, text).unwrap()
    }

    #[test]
    fn closures_on_small_languages() {
        let ab = cfg("S -> ab");
        let c = cfg("S -> c | ε");
        let u = generate_words(&union(&ab, &c).unwrap(), 4, 1000).unwrap();
        assert_eq!(u.len(), 3);
        let k = generate_words(&concatenation(&ab, &c).unwrap(), 4, 1000).unwrap();
        assert!(k.contains("abc") && k.contains("ab") && k.len() == 2);
        let s = generate_words(&star(&ab).unwrap(), 4, 1000).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), ["", "ab", "abab"]);
        let r = generate_words(&reversal(&ab).unwrap(), 4, 1000).unwrap();
        assert!(r.contains("ba"));
    }
}
