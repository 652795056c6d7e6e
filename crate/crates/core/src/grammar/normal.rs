use std::collections::{BTreeMap, BTreeSet};

use super::{fresh_var, Grammar, GrammarClass, Sym, VarId};
use crate::error::Result;

type Alts = Vec<BTreeSet<Vec<Sym>>>;

fn nullable_in(alts: &Alts) -> Vec<bool> {
    let mut nullable = vec![false; alts.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for (v, set) in alts.iter().enumerate() {
            if !nullable[v]
                && set.iter().any(|rhs| {
                    rhs.iter()
                        .all(|s| matches!(*s, Sym::Var(x) if nullable[x]))
                })
            {
                nullable[v] = true;
                changed = true;
            }
        }
    }
    nullable
}

/// Variables that derive the empty word.
pub fn nullable_variables(g: &Grammar) -> Result<BTreeSet<VarId>> {
    g.require_context_free("nullable analysis")?;
    let nullable = nullable_in(&g.alternative_sets());
    Ok((0..nullable.len()).filter(|&v| nullable[v]).collect())
}

/// Drops rules mentioning unproductive variables, then everything
/// unreachable from `start`.
fn trim_alts(alts: &mut Alts, start: VarId) {
    let n = alts.len();
    let mut productive = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !productive[v]
                && alts[v].iter().any(|rhs| {
                    rhs.iter().all(|s| match *s {
                        Sym::Var(x) => productive[x],
                        Sym::Term(_) => true,
                    })
                })
            {
                productive[v] = true;
                changed = true;
            }
        }
    }
    for set in alts.iter_mut() {
        set.retain(|rhs| {
            rhs.iter()
                .all(|s| !matches!(*s, Sym::Var(x) if !productive[x]))
        });
    }
    let mut reachable = vec![false; n];
    reachable[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for rhs in &alts[v] {
            for s in rhs {
                if let Sym::Var(x) = *s {
                    if !reachable[x] {
                        reachable[x] = true;
                        stack.push(x);
                    }
                }
            }
        }
    }
    for (v, set) in alts.iter_mut().enumerate() {
        if !reachable[v] {
            set.clear();
        }
    }
}

/// Removes useless symbols: unproductive variables and anything not
/// reachable from the start symbol.
pub fn trim(g: &Grammar) -> Result<Grammar> {
    g.require_context_free("trim")?;
    let mut alts = g.alternative_sets();
    trim_alts(&mut alts, g.start());
    Grammar::from_alternatives(
        g.class(),
        g.variables().to_vec(),
        g.terminals(),
        g.start(),
        &alts,
    )
}

/// Every way of deleting a subset of the nullable occurrences in `rhs`.
fn drop_nullable(rhs: &[Sym], nullable: &[bool]) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    for &s in rhs {
        let optional = matches!(s, Sym::Var(x) if nullable[x]);
        let mut next = Vec::with_capacity(out.len() * 2);
        for prefix in out {
            if optional {
                next.push(prefix.clone());
            }
            let mut with = prefix;
            with.push(s);
            next.push(with);
        }
        out = next;
    }
    out
}

/// Chomsky normal form.
///
/// Stages: a fresh start symbol, removal of ε-rules, removal of unit rules,
/// removal of useless symbols, isolation of terminals in long rules and
/// binarization. The language is preserved exactly; if it contains ε the
/// fresh start gets an ε-rule.
///
/// New variables are named after what they stand for: `S₀` for the start,
/// `⟨a⟩` for the terminal `a`, `⟨B·C⟩` for the tail `BC` of a long rule.
pub fn to_cnf(g: &Grammar) -> Result<Grammar> {
    g.require_context_free("CNF conversion")?;
    let mut names = g.variables().to_vec();
    let mut alts = g.alternative_sets();

    let s0 = names.len();
    names.push(fresh_var(&names, &format!("{}₀", names[g.start()])));
    alts.push(BTreeSet::from([vec![Sym::Var(g.start())]]));

    let nullable = nullable_in(&alts);
    for (v, set) in alts.iter_mut().enumerate() {
        let mut next = BTreeSet::new();
        for rhs in set.iter() {
            for variant in drop_nullable(rhs, &nullable) {
                if !variant.is_empty() {
                    next.insert(variant);
                }
            }
        }
        if v == s0 && nullable[s0] {
            next.insert(Vec::new());
        }
        *set = next;
    }

    let n = alts.len();
    let is_unit = |rhs: &Vec<Sym>| matches!(rhs.as_slice(), [Sym::Var(_)]);
    let mut lifted: Alts = vec![BTreeSet::new(); n];
    for v in 0..n {
        let mut closure = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for rhs in &alts[u] {
                if let [Sym::Var(x)] = rhs.as_slice() {
                    if closure.insert(*x) {
                        stack.push(*x);
                    }
                }
            }
        }
        for &u in &closure {
            lifted[v].extend(alts[u].iter().filter(|r| !is_unit(r)).cloned());
        }
    }
    let mut alts = lifted;
    trim_alts(&mut alts, s0);

    let mut term_var: BTreeMap<char, VarId> = BTreeMap::new();
    for v in 0..alts.len() {
        let rules: Vec<Vec<Sym>> = alts[v].iter().cloned().collect();
        let mut next = BTreeSet::new();
        for rhs in rules {
            if rhs.len() < 2 {
                next.insert(rhs);
                continue;
            }
            let replaced = rhs
                .into_iter()
                .map(|s| match s {
                    Sym::Term(a) => Sym::Var(*term_var.entry(a).or_insert_with(|| {
                        names.push(fresh_var(&names, &format!("⟨{a}⟩")));
                        names.len() - 1
                    })),
                    var => var,
                })
                .collect();
            next.insert(replaced);
        }
        alts[v] = next;
    }
    alts.resize(names.len(), BTreeSet::new());
    for (&a, &t) in &term_var {
        alts[t].insert(vec![Sym::Term(a)]);
    }

    let mut tail_var: BTreeMap<Vec<Sym>, VarId> = BTreeMap::new();
    let mut pending: Vec<VarId> = (0..alts.len()).collect();
    while let Some(v) = pending.pop() {
        let rules: Vec<Vec<Sym>> = alts[v].iter().cloned().collect();
        let mut next = BTreeSet::new();
        for rhs in rules {
            if rhs.len() <= 2 {
                next.insert(rhs);
                continue;
            }
            let tail = rhs[1..].to_vec();
            let t = match tail_var.get(&tail) {
                Some(&t) => t,
                None => {
                    let label: Vec<&str> = tail
                        .iter()
                        .map(|s| match *s {
                            Sym::Var(x) => names[x].as_str(),
                            Sym::Term(_) => unreachable!("terminals were isolated"),
                        })
                        .collect();
                    names.push(fresh_var(&names, &format!("⟨{}⟩", label.join("·"))));
                    let t = names.len() - 1;
                    alts.push(BTreeSet::from([tail.clone()]));
                    tail_var.insert(tail, t);
                    pending.push(t);
                    t
                }
            };
            next.insert(vec![rhs[0], Sym::Var(t)]);
        }
        alts[v] = next;
    }

    Grammar::from_alternatives(GrammarClass::Cnf, names, g.terminals(), s0, &alts)
}

/// Replaces a leading `Var(x)` in each alternative by every alternative of `x`.
fn substitute_leading(rules: &BTreeSet<Vec<Sym>>, x: VarId, with: &BTreeSet<Vec<Sym>>) -> BTreeSet<Vec<Sym>> {
    let mut out = BTreeSet::new();
    for rhs in rules {
        if rhs.first() == Some(&Sym::Var(x)) {
            for d in with {
                let mut r = d.clone();
                r.extend_from_slice(&rhs[1..]);
                out.insert(r);
            }
        } else {
            out.insert(rhs.clone());
        }
    }
    out
}

/// Greibach normal form, via Chomsky normal form.
///
/// Variables are ordered by index; rules `Aᵢ → Aⱼγ` with `j < i` are
/// substituted away, direct left recursion is replaced by a fresh variable
/// (`Aᵢ'`), and finally leading variables are substituted back from the
/// highest index down so that every rule starts with a terminal.
pub fn to_gnf(g: &Grammar) -> Result<Grammar> {
    let c = to_cnf(g)?;
    let mut names = c.variables().to_vec();
    let n = names.len();
    let mut alts = c.alternative_sets();
    let has_eps = alts[c.start()].remove(&Vec::new());

    let mut fresh: Vec<VarId> = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if alts[i].iter().any(|r| r.first() == Some(&Sym::Var(j))) {
                alts[i] = substitute_leading(&alts[i], j, &alts[j].clone());
            }
        }
        let (rec, base): (Vec<Vec<Sym>>, Vec<Vec<Sym>>) = alts[i]
            .iter()
            .cloned()
            .partition(|r| r.first() == Some(&Sym::Var(i)));
        if rec.is_empty() {
            continue;
        }
        names.push(fresh_var(&names, &format!("{}'", names[i])));
        let z = names.len() - 1;
        fresh.push(z);
        let mut a_rules = BTreeSet::new();
        for b in base {
            let mut with_z = b.clone();
            with_z.push(Sym::Var(z));
            a_rules.insert(b);
            a_rules.insert(with_z);
        }
        let mut z_rules = BTreeSet::new();
        for r in rec {
            let alpha = r[1..].to_vec();
            let mut with_z = alpha.clone();
            with_z.push(Sym::Var(z));
            z_rules.insert(alpha);
            z_rules.insert(with_z);
        }
        alts[i] = a_rules;
        alts.push(z_rules);
    }

    for i in (0..n).rev() {
        loop {
            let lead = alts[i].iter().find_map(|r| match r.first() {
                Some(&Sym::Var(x)) => Some(x),
                _ => None,
            });
            match lead {
                Some(x) => {
                    let with = alts[x].clone();
                    alts[i] = substitute_leading(&alts[i], x, &with);
                }
                None => break,
            }
        }
    }
    for &z in &fresh {
        loop {
            let lead = alts[z].iter().find_map(|r| match r.first() {
                Some(&Sym::Var(x)) => Some(x),
                _ => None,
            });
            match lead {
                Some(x) => {
                    let with = alts[x].clone();
                    alts[z] = substitute_leading(&alts[z], x, &with);
                }
                None => break,
            }
        }
    }

    if has_eps {
        alts[c.start()].insert(Vec::new());
    }
    trim_alts(&mut alts, c.start());
    Grammar::from_alternatives(GrammarClass::Gnf, names, c.terminals(), c.start(), &alts)
}
