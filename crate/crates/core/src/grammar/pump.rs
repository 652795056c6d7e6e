use super::cyk::{enumerate_parse_trees, ParseTree};
use super::Grammar;
use crate::error::{Error, Result};

/// A split `w = uvxyz` with pumping constant `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CflPumpDecomposition {
    pub u: String,
    pub v: String,
    pub x: String,
    pub y: String,
    pub z: String,
    pub p: usize,
}

impl CflPumpDecomposition {
    /// `u vᵗ x yᵗ z`
    pub fn pumped(&self, t: usize) -> String {
        format!(
            "{}{}{}{}{}",
            self.u,
            self.v.repeat(t),
            self.x,
            self.y.repeat(t),
            self.z
        )
    }
}

/// Character span `[start, end)` of every node on `path`, computed by
/// walking the tree alongside it.
fn spans(root: &ParseTree, path: &[&ParseTree]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(path.len());
    let mut offset = 0;
    let mut node = root;
    for (k, &p) in path.iter().enumerate() {
        debug_assert!(std::ptr::eq(node, p));
        let len = node.frontier().chars().count();
        out.push((offset, offset + len));
        if let (ParseTree::Node { children, .. }, Some(&next)) = (node, path.get(k + 1)) {
            for c in children {
                if std::ptr::eq(c, next) {
                    node = c;
                    break;
                }
                offset += c.frontier().chars().count();
            }
        }
    }
    out
}

/// Pumping decomposition of a long word of a CNF grammar.
///
/// With `p = 2^|V|` and `|w| > p`, a parse tree of `w` has a root-to-leaf
/// path with more than `|V|` variables. Among the last `|V| + 1` variables
/// of the longest such path, the deepest variable that repeats a variable
/// above it (the nearest such occurrence) bounds the two nested subtrees
/// giving `vxy` and `x`.
pub fn cfl_pump_decompose(g: &Grammar, w: &str) -> Result<CflPumpDecomposition> {
    g.require_cnf("pumping decomposition")?;
    let nv = g.num_variables();
    let p = 1usize
        .checked_shl(nv as u32)
        .filter(|&p| p != 0)
        .ok_or_else(|| Error::input("pumping constant overflows"))?;
    let chars: Vec<char> = w.chars().collect();
    if chars.len() <= p {
        return Err(Error::input(format!(
            "word has length {} but must be longer than p = {p}",
            chars.len()
        )));
    }
    let trees = enumerate_parse_trees(g, w, 1)?;
    let tree = trees
        .first()
        .ok_or_else(|| Error::input("word is not in the language"))?;
    let path = tree.longest_path();
    let vars: Vec<usize> = path
        .iter()
        .map(|n| match n {
            ParseTree::Node { var, .. } => *var,
            ParseTree::Leaf(_) => unreachable!(),
        })
        .collect();
    let window_start = vars.len().saturating_sub(nv + 1);
    let (i, j) = (window_start..vars.len())
        .rev()
        .find_map(|j| {
            (window_start..j)
                .rev()
                .find(|&i| vars[i] == vars[j])
                .map(|i| (i, j))
        })
        .ok_or_else(|| Error::structure("no repeated variable on the longest path"))?;
    let sp = spans(tree, &path);
    let (outer, inner) = (sp[i], sp[j]);
    let slice = |a: usize, b: usize| chars[a..b].iter().collect::<String>();
    Ok(CflPumpDecomposition {
        u: slice(0, outer.0),
        v: slice(outer.0, inner.0),
        x: slice(inner.0, inner.1),
        y: slice(inner.1, outer.1),
        z: slice(outer.1, chars.len()),
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{cyk_member, to_cnf, GrammarClass};

    #[test]
    fn anbn_pumps_in_step() {
        let g = to_cnf(&Grammar::from_text(GrammarClass::ContextFree, "S -> aSb | ε").unwrap())
            .unwrap();
        let p = 1 << g.num_variables();
        let n = p / 2 + 1;
        let w = "a".repeat(n) + &"b".repeat(n);
        let d = cfl_pump_decompose(&g, &w).unwrap();
        assert!(!d.v.is_empty() && d.v.chars().all(|c| c == 'a'));
        assert_eq!(d.v.len(), d.y.len());
        assert!(d.y.chars().all(|c| c == 'b'));
        assert!((d.v.len() + d.x.len() + d.y.len()) <= d.p);
        for t in 0..4 {
            assert!(cyk_member(&g, &d.pumped(t)).unwrap());
        }
    }

    #[test]
    fn short_words_are_refused() {
        let g = to_cnf(&Grammar::from_text(GrammarClass::ContextFree, "S -> aSb | ε").unwrap())
            .unwrap();
        assert!(matches!(cfl_pump_decompose(&g, "aabb"), Err(Error::Input(_))));
    }
}
