use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Grammar, Sym, VarId};
use crate::error::Result;

/// A derivation tree. Leaves are terminals; inner nodes record the index of
/// the rule (into [`Grammar::rules`]) that expanded them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParseTree {
    Leaf(char),
    Node {
        var: VarId,
        rule: usize,
        children: Vec<ParseTree>,
    },
}

impl ParseTree {
    /// The terminals at the leaves, left to right.
    pub fn frontier(&self) -> String {
        let mut out = String::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut String) {
        match self {
            ParseTree::Leaf(c) => out.push(*c),
            ParseTree::Node { children, .. } => children.iter().for_each(|c| c.collect(out)),
        }
    }

    /// Whether every node spells out the right-hand side of its rule.
    pub fn is_consistent_with(&self, g: &Grammar) -> bool {
        match self {
            ParseTree::Leaf(_) => true,
            ParseTree::Node {
                var,
                rule,
                children,
            } => {
                let Some(r) = g.rules().get(*rule) else {
                    return false;
                };
                r.head() == Some(*var)
                    && r.rhs.len() == children.len()
                    && r.rhs.iter().zip(children).all(|(s, c)| match (s, c) {
                        (Sym::Term(a), ParseTree::Leaf(b)) => a == b,
                        (Sym::Var(x), ParseTree::Node { var, .. }) => x == var,
                        _ => false,
                    })
                    && children.iter().all(|c| c.is_consistent_with(g))
            }
        }
    }

    /// Variables from the root down to the deepest variable node, following
    /// the longest path (leftmost on ties), paired with each node.
    pub(crate) fn longest_path(&self) -> Vec<&ParseTree> {
        match self {
            ParseTree::Leaf(_) => Vec::new(),
            ParseTree::Node { children, .. } => {
                let mut best: Vec<&ParseTree> = Vec::new();
                for c in children {
                    let p = c.longest_path();
                    if p.len() > best.len() {
                        best = p;
                    }
                }
                let mut path = vec![self];
                path.extend(best);
                path
            }
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ParseTree::Leaf(_) => 0,
            ParseTree::Node { children, .. } => {
                1 + children.iter().map(ParseTree::height).max().unwrap_or(0)
            }
        }
    }
}

/// Binary and terminal rules of a CNF grammar, indexed for table filling.
struct CnfIndex {
    unary: Vec<(VarId, char, usize)>,
    binary: Vec<(VarId, VarId, VarId, usize)>,
    epsilon: Option<usize>,
}

impl CnfIndex {
    fn new(g: &Grammar) -> Self {
        let mut idx = CnfIndex {
            unary: Vec::new(),
            binary: Vec::new(),
            epsilon: None,
        };
        for (i, r) in g.rules().iter().enumerate() {
            let v = r.head().expect("CNF rules are context-free");
            match r.rhs.as_slice() {
                [Sym::Term(a)] => idx.unary.push((v, *a, i)),
                [Sym::Var(b), Sym::Var(c)] => idx.binary.push((v, *b, *c, i)),
                [] if v == g.start() => idx.epsilon = Some(i),
                _ => unreachable!("checked CNF"),
            }
        }
        idx
    }
}

/// CYK table: `table[i][len]` is the set of variables deriving
/// `w[i..i+len]`, as a bitmask over variable indices.
fn cyk_table(g: &Grammar, idx: &CnfIndex, w: &[char]) -> Vec<Vec<Vec<bool>>> {
    let n = w.len();
    let nv = g.num_variables();
    let mut table = vec![vec![vec![false; nv]; n + 1]; n + 1];
    for (i, &a) in w.iter().enumerate() {
        for &(v, b, _) in &idx.unary {
            if a == b {
                table[i][1][v] = true;
            }
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            for split in 1..len {
                for &(v, b, c, _) in &idx.binary {
                    if !table[i][len][v] && table[i][split][b] && table[i + split][len - split][c] {
                        table[i][len][v] = true;
                    }
                }
            }
        }
    }
    table
}

/// Membership by the CYK dynamic program.
pub fn cyk_member(g: &Grammar, w: &str) -> Result<bool> {
    g.require_cnf("CYK")?;
    let idx = CnfIndex::new(g);
    let w: Vec<char> = w.chars().collect();
    if w.is_empty() {
        return Ok(idx.epsilon.is_some());
    }
    let table = cyk_table(g, &idx, &w);
    Ok(table[0][w.len()][g.start()])
}

/// Number of distinct parse trees of `w`, by counting through the CYK
/// table.
pub fn count_parse_trees(g: &Grammar, w: &str) -> Result<BigUint> {
    g.require_cnf("parse-tree counting")?;
    let idx = CnfIndex::new(g);
    let w: Vec<char> = w.chars().collect();
    let n = w.len();
    if n == 0 {
        return Ok(if idx.epsilon.is_some() {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let nv = g.num_variables();
    let mut count = vec![vec![vec![BigUint::zero(); nv]; n + 1]; n + 1];
    for (i, &a) in w.iter().enumerate() {
        for &(v, b, _) in &idx.unary {
            if a == b {
                count[i][1][v] += 1u32;
            }
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            for split in 1..len {
                for &(v, b, c, _) in &idx.binary {
                    let l = &count[i][split][b];
                    let r = &count[i + split][len - split][c];
                    if !l.is_zero() && !r.is_zero() {
                        let prod = l * r;
                        count[i][len][v] += prod;
                    }
                }
            }
        }
    }
    Ok(count[0][n][g.start()].clone())
}

struct TreeBuilder<'a> {
    idx: &'a CnfIndex,
    table: &'a [Vec<Vec<bool>>],
    w: &'a [char],
    limit: usize,
    memo: HashMap<(VarId, usize, usize), Rc<Vec<ParseTree>>>,
}

impl TreeBuilder<'_> {
    fn trees(&mut self, v: VarId, i: usize, len: usize) -> Rc<Vec<ParseTree>> {
        if let Some(t) = self.memo.get(&(v, i, len)) {
            return t.clone();
        }
        let mut out = Vec::new();
        if len == 1 {
            for &(u, a, rule) in &self.idx.unary {
                if u == v && a == self.w[i] {
                    out.push(ParseTree::Node {
                        var: v,
                        rule,
                        children: vec![ParseTree::Leaf(a)],
                    });
                }
            }
        } else {
            'outer: for split in 1..len {
                for &(u, b, c, rule) in &self.idx.binary {
                    if u != v
                        || !self.table[i][split][b]
                        || !self.table[i + split][len - split][c]
                    {
                        continue;
                    }
                    let left = self.trees(b, i, split);
                    let right = self.trees(c, i + split, len - split);
                    for l in left.iter() {
                        for r in right.iter() {
                            if out.len() == self.limit {
                                break 'outer;
                            }
                            out.push(ParseTree::Node {
                                var: v,
                                rule,
                                children: vec![l.clone(), r.clone()],
                            });
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((v, i, len), out.clone());
        out
    }
}

/// Up to `limit` distinct parse trees of `w` under a CNF grammar. An empty
/// list means `w` is not in the language.
pub fn enumerate_parse_trees(g: &Grammar, w: &str, limit: usize) -> Result<Vec<ParseTree>> {
    g.require_cnf("parse-tree enumeration")?;
    let idx = CnfIndex::new(g);
    let chars: Vec<char> = w.chars().collect();
    if chars.is_empty() {
        return Ok(match idx.epsilon {
            Some(rule) if limit > 0 => vec![ParseTree::Node {
                var: g.start(),
                rule,
                children: Vec::new(),
            }],
            _ => Vec::new(),
        });
    }
    let table = cyk_table(g, &idx, &chars);
    if !table[0][chars.len()][g.start()] {
        return Ok(Vec::new());
    }
    let mut b = TreeBuilder {
        idx: &idx,
        table: &table,
        w: &chars,
        limit,
        memo: HashMap::new(),
    };
    let trees = b.trees(g.start(), 0, chars.len());
    Ok(trees.as_ref().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::grammar::{to_cnf, GrammarClass};

    fn cnf(text: &str) -> Grammar {
        to_cnf(&Grammar::from_text(GrammarClass::ContextFree, text).unwrap()).unwrap()
    }

    #[test]
    fn dyck2_membership() {
        let g = cnf("S -> (S)S | [S]S | ε");
        assert!(cyk_member(&g, "([])[]").unwrap());
        assert!(!cyk_member(&g, "[(])").unwrap());
        assert!(cyk_member(&g, "").unwrap());
    }

    #[test]
    fn requires_cnf() {
        let g = Grammar::from_text(GrammarClass::ContextFree, "S -> aSb | ε").unwrap();
        assert!(matches!(cyk_member(&g, "ab"), Err(Error::Structure(_))));
    }

    #[test]
    fn tree_counts() {
        let d2 = cnf("S -> (S)S | [S]S | ε");
        assert_eq!(enumerate_parse_trees(&d2, "()()", 10).unwrap().len(), 1);
        let amb = cnf("S -> S(S)S | ε");
        let trees = enumerate_parse_trees(&amb, "()()", 10).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(count_parse_trees(&amb, "()()").unwrap(), BigUint::from(2u32));
        for t in &trees {
            assert_eq!(t.frontier(), "()()");
            assert!(t.is_consistent_with(&amb));
        }
        assert!(enumerate_parse_trees(&d2, "(]", 10).unwrap().is_empty());
    }

    #[test]
    fn limit_caps_output() {
        let g = cnf("S -> SS | a");
        // Catalan(4) = 14 bracketings of five a's.
        assert_eq!(count_parse_trees(&g, "aaaaa").unwrap(), BigUint::from(14u32));
        assert_eq!(enumerate_parse_trees(&g, "aaaaa", 3).unwrap().len(), 3);
        assert_eq!(enumerate_parse_trees(&g, "aaaaa", 100).unwrap().len(), 14);
    }
}
