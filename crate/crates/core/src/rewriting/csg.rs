use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::grammar::{Grammar, GrammarClass, Sym};

/// Default cap on the number of distinct sentential forms visited.
pub const DEFAULT_FORM_BUDGET: usize = 2_000_000;

/// Decides whether a noncontracting grammar generates `w`.
///
/// No rule shortens a sentential form, so every derivation of `w` passes
/// only through forms of length at most `|w|`. A breadth-first search over
/// those forms therefore terminates. The empty word is generated exactly
/// when the grammar has the rule `S → ε`.
pub fn csg_member(g: &Grammar, w: &str, budget: usize) -> Result<bool> {
    g.check_class(GrammarClass::Noncontracting)
        .map_err(|e| Error::structure(format!("csg_member needs a noncontracting grammar: {e}")))?;
    if let Some(a) = w.chars().find(|a| !g.terminals().contains(a)) {
        return Err(Error::input(format!("symbol `{a}` is not a terminal")));
    }
    let target: Vec<Sym> = w.chars().map(Sym::Term).collect();
    if target.is_empty() {
        return Ok(g.has_start_epsilon());
    }
    let rules: Vec<_> = g.rules().iter().filter(|r| !r.rhs.is_empty()).collect();
    let start = vec![Sym::Var(g.start())];
    let mut seen: HashSet<Vec<Sym>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(form) = queue.pop_front() {
        if form == target {
            return Ok(true);
        }
        for r in &rules {
            let grow = r.rhs.len() - r.lhs.len();
            if form.len() + grow > target.len() || r.lhs.len() > form.len() {
                continue;
            }
            for at in 0..=form.len() - r.lhs.len() {
                if form[at..at + r.lhs.len()] != r.lhs[..] {
                    continue;
                }
                let mut next = Vec::with_capacity(form.len() + grow);
                next.extend_from_slice(&form[..at]);
                next.extend_from_slice(&r.rhs);
                next.extend_from_slice(&form[at + r.lhs.len()..]);
                if seen.insert(next.clone()) {
                    if seen.len() > budget {
                        return Err(Error::resource(format!(
                            "more than {budget} sentential forms of length ≤ {}",
                            target.len()
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}
