use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::generate::word_layers;
use super::{Grammar, Sym};
use crate::error::{Error, Result};

/// How [`count_words`] obtains its numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Build the actual word sets; exact for every grammar. Fails once more
    /// than `budget` words have been produced.
    Explicit { budget: usize },
    /// Count derivations by length. Equal to the word count only when the
    /// grammar is unambiguous, which the caller asserts by choosing this.
    AssumeUnambiguous,
}

/// Derivation counts `d₀..d_L` of a CNF grammar by length.
pub fn count_derivations_by_length(g: &Grammar, max_len: usize) -> Result<Vec<BigUint>> {
    g.require_cnf("derivation counting")?;
    let nv = g.num_variables();
    let mut n: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_len + 1]; nv];
    for len in 1..=max_len {
        for r in g.rules() {
            let v = r.head().expect("CNF");
            match r.rhs.as_slice() {
                [Sym::Term(_)] if len == 1 => n[v][1] += 1u32,
                [Sym::Var(b), Sym::Var(c)] => {
                    let mut acc = BigUint::zero();
                    for i in 1..len {
                        if !n[*b][i].is_zero() && !n[*c][len - i].is_zero() {
                            acc += &n[*b][i] * &n[*c][len - i];
                        }
                    }
                    n[v][len] += acc;
                }
                _ => {}
            }
        }
    }
    let mut out = n.swap_remove(g.start());
    out[0] = if g.has_start_epsilon() {
        BigUint::one()
    } else {
        BigUint::zero()
    };
    Ok(out)
}

/// `n₀..n_L`, the number of words of each length in `L(g)`.
pub fn count_words(g: &Grammar, max_len: usize, mode: CountMode) -> Result<Vec<BigUint>> {
    g.require_cnf("word counting")?;
    match mode {
        CountMode::AssumeUnambiguous => count_derivations_by_length(g, max_len),
        CountMode::Explicit { budget } => {
            let layers = word_layers(g, max_len, budget)?;
            Ok(layers[g.start()]
                .iter()
                .map(|set| BigUint::from(set.len()))
                .collect())
        }
    }
}

/// Number of words of length `len` in the Dyck language with `k` bracket
/// pairs: `k^{len/2} · C(len, len/2) / (len/2 + 1)`.
pub fn dyck_coefficient(k: u32, len: usize) -> Result<BigUint> {
    if len % 2 == 1 {
        return Err(Error::input(format!("length {len} is odd")));
    }
    let half = len / 2;
    let mut binom = BigUint::one();
    for i in 0..half {
        binom = binom * BigUint::from(len - i) / BigUint::from(i + 1);
    }
    Ok(BigUint::from(k).pow(half as u32) * binom / BigUint::from(half + 1))
}
