use std::collections::BTreeSet;

use super::{Grammar, Sym};
use crate::error::{Error, Result};

/// Default cap on the number of words [`generate_words`] may collect.
pub const DEFAULT_WORD_BUDGET: usize = 2_000_000;

/// Words of each variable, bucketed by length.
pub(crate) type Layers = Vec<Vec<BTreeSet<String>>>;

/// Shortest derivable word length per variable (`usize::MAX` when the
/// variable derives nothing).
fn min_lengths(g: &Grammar) -> Vec<usize> {
    let mut min = vec![usize::MAX; g.num_variables()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            let v = r.head().expect("context-free");
            let len = r.rhs.iter().try_fold(0usize, |acc, s| match *s {
                Sym::Term(_) => Some(acc + 1),
                Sym::Var(x) if min[x] != usize::MAX => Some(acc + min[x]),
                Sym::Var(_) => None,
            });
            if let Some(len) = len {
                if len < min[v] {
                    min[v] = len;
                    changed = true;
                }
            }
        }
    }
    min
}

struct Expander<'a> {
    layers: &'a Layers,
    min_suffix: Vec<usize>,
    out: BTreeSet<String>,
}

impl Expander<'_> {
    fn go(&mut self, rhs: &[Sym], i: usize, remaining: usize, word: &mut String) {
        if i == rhs.len() {
            if remaining == 0 {
                self.out.insert(word.clone());
            }
            return;
        }
        if self.min_suffix[i] > remaining {
            return;
        }
        match rhs[i] {
            Sym::Term(c) => {
                word.push(c);
                self.go(rhs, i + 1, remaining - 1, word);
                word.pop();
            }
            Sym::Var(x) => {
                let rest_min = self.min_suffix[i + 1];
                for len in 0..=remaining - rest_min {
                    let layers = self.layers;
                    for w in &layers[x][len] {
                        let mark = word.len();
                        word.push_str(w);
                        self.go(rhs, i + 1, remaining - len, word);
                        word.truncate(mark);
                    }
                }
            }
        }
    }
}

/// Per-variable word sets up to `maxlen`, built length by length. Each
/// length layer is closed under the rules by a small fixpoint, which takes
/// care of unit and nullable chains.
pub(crate) fn word_layers(g: &Grammar, maxlen: usize, budget: usize) -> Result<Layers> {
    g.require_context_free("word generation")?;
    let min = min_lengths(g);
    let n = g.num_variables();
    let mut layers: Layers = vec![vec![BTreeSet::new(); maxlen + 1]; n];
    let rules: Vec<(usize, Vec<Sym>, Vec<usize>)> = g
        .rules()
        .iter()
        .filter_map(|r| {
            let v = r.head()?;
            let mut suffix = vec![0usize; r.rhs.len() + 1];
            for i in (0..r.rhs.len()).rev() {
                let m = match r.rhs[i] {
                    Sym::Term(_) => 1,
                    Sym::Var(x) => min[x],
                };
                suffix[i] = suffix[i + 1].saturating_add(m);
            }
            (suffix[0] != usize::MAX).then(|| (v, r.rhs.clone(), suffix))
        })
        .collect();
    let mut total = 0usize;
    for len in 0..=maxlen {
        loop {
            let mut changed = false;
            for (v, rhs, suffix) in &rules {
                if suffix[0] > len {
                    continue;
                }
                let mut ex = Expander {
                    layers: &layers,
                    min_suffix: suffix.clone(),
                    out: BTreeSet::new(),
                };
                ex.go(rhs, 0, len, &mut String::new());
                let found = ex.out;
                let layer = &mut layers[*v][len];
                for w in found {
                    if layer.insert(w) {
                        changed = true;
                        total += 1;
                        if total > budget {
                            return Err(Error::resource(format!(
                                "more than {budget} words up to length {maxlen}"
                            )));
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok(layers)
}

/// Every word of `L(g)` of length at most `maxlen`.
///
/// Works on the grammar as given (no normal form needed) and fails with a
/// resource error once more than `budget` words have been collected across
/// all variables.
pub fn generate_words(g: &Grammar, maxlen: usize, budget: usize) -> Result<BTreeSet<String>> {
    let layers = word_layers(g, maxlen, budget)?;
    Ok(layers[g.start()].iter().flatten().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::GrammarClass;

    fn words(text: &str, maxlen: usize) -> BTreeSet<String> {
        let g = Grammar::from_text(GrammarClass::ContextFree, text).unwrap();
        generate_words(&g, maxlen, 100_000).unwrap()
    }

    fn set(ws: &[&str]) -> BTreeSet<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn small_languages() {
        assert_eq!(words("S -> (S)S | [S]S | ε", 2), set(&["", "()", "[]"]));
        assert_eq!(words("S -> ε", 5), set(&[""]));
        assert_eq!(words("S -> aSbS | bSaS | ε", 2), set(&["", "ab", "ba"]));
    }

    #[test]
    fn unit_and_nullable_chains() {
        assert_eq!(words("S -> A; A -> B | a; B -> S | ε", 1), set(&["", "a"]));
        assert_eq!(words("S -> SS | a", 3), set(&["a", "aa", "aaa"]));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Grammar::from_text(GrammarClass::ContextFree, "S -> aS | bS | ε").unwrap();
        assert!(matches!(generate_words(&g, 10, 100), Err(Error::Resource(_))));
    }
}
