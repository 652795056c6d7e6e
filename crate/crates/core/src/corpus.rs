//! The bundled example machines and grammars.
//!
//! Every file in the crate's `corpus/` directory is compiled in; the
//! accessors below parse them on each call.

use crate::counters::CounterMachine;
use crate::document::{parse_document, Document};
use crate::fa::{FaBuilder, FiniteAutomaton, Kind};
use crate::grammar::Grammar;
use crate::pda::Pda;
use crate::rewriting::TuringMachine;

/// `(file name, contents)` for every corpus document.
pub const FILES: &[(&str, &str)] = &[
    ("ab_swap.json", include_str!("../corpus/ab_swap.json")),
    ("ab_swap_strict.json", include_str!("../corpus/ab_swap_strict.json")),
    ("aeqb.json", include_str!("../corpus/aeqb.json")),
    ("aeqb_dca.json", include_str!("../corpus/aeqb_dca.json")),
    ("ambiguous_dyck1.json", include_str!("../corpus/ambiguous_dyck1.json")),
    ("amgtbn.json", include_str!("../corpus/amgtbn.json")),
    ("anbn.json", include_str!("../corpus/anbn.json")),
    ("anbncn_csg.json", include_str!("../corpus/anbncn_csg.json")),
    ("copy_csg.json", include_str!("../corpus/copy_csg.json")),
    ("dyck1.json", include_str!("../corpus/dyck1.json")),
    ("dyck1_pda.json", include_str!("../corpus/dyck1_pda.json")),
    ("dyck2.json", include_str!("../corpus/dyck2.json")),
    ("dyck3.json", include_str!("../corpus/dyck3.json")),
    ("dyck3_dpda.json", include_str!("../corpus/dyck3_dpda.json")),
    ("even_b.json", include_str!("../corpus/even_b.json")),
    ("grid_dca.json", include_str!("../corpus/grid_dca.json")),
    ("m3.json", include_str!("../corpus/m3.json")),
    ("mod3.json", include_str!("../corpus/mod3.json")),
    ("no_c_before_a.json", include_str!("../corpus/no_c_before_a.json")),
    ("nobb.json", include_str!("../corpus/nobb.json")),
    ("nobb6.json", include_str!("../corpus/nobb6.json")),
    ("nonpal_nca.json", include_str!("../corpus/nonpal_nca.json")),
    ("palindrome.json", include_str!("../corpus/palindrome.json")),
    ("palindrome_npda.json", include_str!("../corpus/palindrome_npda.json")),
    ("tm_anbn.json", include_str!("../corpus/tm_anbn.json")),
    ("tm_loop.json", include_str!("../corpus/tm_loop.json")),
    ("tm_scan.json", include_str!("../corpus/tm_scan.json")),
    ("unary_l2.json", include_str!("../corpus/unary_l2.json")),
    ("unary_l3.json", include_str!("../corpus/unary_l3.json")),
];

/// Contents of a corpus file by name.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a corpus file by name.
pub fn load(name: &str) -> Document {
    let text = source(name).unwrap_or_else(|| panic!("no corpus file `{name}`"));
    parse_document(text).unwrap_or_else(|e| panic!("corpus file `{name}` is invalid: {e}"))
}

/// Words over {a, b} without two consecutive b's; three states.
pub fn no_bb() -> FiniteAutomaton {
    match load("nobb.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("nobb.json holds a automaton"),
    }
}

/// The same language as [`no_bb`] with every state doubled; six states.
pub fn no_bb6() -> FiniteAutomaton {
    match load("nobb6.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("nobb6.json holds a automaton"),
    }
}

/// Words with an even number of b's.
pub fn even_b() -> FiniteAutomaton {
    match load("even_b.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("even_b.json holds a automaton"),
    }
}

/// Words over {a, b, c} in which no c is followed later by an a.
pub fn no_c_before_a() -> FiniteAutomaton {
    match load("no_c_before_a.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("no_c_before_a.json holds a automaton"),
    }
}

/// Binary numbers divisible by three, read most significant bit first.
pub fn mod3() -> FiniteAutomaton {
    match load("mod3.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("mod3.json holds a automaton"),
    }
}

/// Words whose third symbol from the end is b; four states, nondeterministic.
pub fn m3() -> FiniteAutomaton {
    match load("m3.json") {
        Document::Automaton(x) => x,
        _ => unreachable!("m3.json holds a automaton"),
    }
}

/// Balanced parentheses, unambiguously: `S → (S)S | ε`.
pub fn dyck1() -> Grammar {
    match load("dyck1.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("dyck1.json holds a grammar"),
    }
}

/// Balanced words over two bracket pairs.
pub fn dyck2() -> Grammar {
    match load("dyck2.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("dyck2.json holds a grammar"),
    }
}

/// Balanced words over three bracket pairs.
pub fn dyck3() -> Grammar {
    match load("dyck3.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("dyck3.json holds a grammar"),
    }
}

/// Balanced parentheses with an ambiguous grammar, `S → S(S)S | ε`.
pub fn ambiguous_dyck1() -> Grammar {
    match load("ambiguous_dyck1.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("ambiguous_dyck1.json holds a grammar"),
    }
}

/// `aⁿbⁿ` for n ≥ 0.
pub fn anbn() -> Grammar {
    match load("anbn.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("anbn.json holds a grammar"),
    }
}

/// Palindromes over {a, b}.
pub fn palindrome() -> Grammar {
    match load("palindrome.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("palindrome.json holds a grammar"),
    }
}

/// Words with as many a's as b's.
pub fn aeqb() -> Grammar {
    match load("aeqb.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("aeqb.json holds a grammar"),
    }
}

/// `aᵐbⁿ` with m > n.
pub fn amgtbn() -> Grammar {
    match load("amgtbn.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("amgtbn.json holds a grammar"),
    }
}

/// Nonempty copy words `ww` over {a, b}, noncontracting.
pub fn copy_csg() -> Grammar {
    match load("copy_csg.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("copy_csg.json holds a grammar"),
    }
}

/// `aⁿbⁿcⁿ` for n ≥ 0, noncontracting.
pub fn anbncn_csg() -> Grammar {
    match load("anbncn_csg.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("anbncn_csg.json holds a grammar"),
    }
}

/// A noncontracting grammar using the swap rule `AB → BA`.
pub fn ab_swap() -> Grammar {
    match load("ab_swap.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("ab_swap.json holds a grammar"),
    }
}

/// [`ab_swap`] with the swap replaced by three rules that each rewrite one variable in context.
pub fn ab_swap_strict() -> Grammar {
    match load("ab_swap_strict.json") {
        Document::Grammar(x) => x,
        _ => unreachable!("ab_swap_strict.json holds a grammar"),
    }
}

/// Deterministic PDA for balanced parentheses.
pub fn dyck1_pda() -> Pda {
    match load("dyck1_pda.json") {
        Document::Pda(x) => x,
        _ => unreachable!("dyck1_pda.json holds a pda"),
    }
}

/// Deterministic PDA for balanced words over `()`, `[]` and `{}`.
pub fn dyck3_dpda() -> Pda {
    match load("dyck3_dpda.json") {
        Document::Pda(x) => x,
        _ => unreachable!("dyck3_dpda.json holds a pda"),
    }
}

/// Palindromes over {a, b}: push the first half, guess the middle, pop the rest.
pub fn palindrome_npda() -> Pda {
    match load("palindrome_npda.json") {
        Document::Pda(x) => x,
        _ => unreachable!("palindrome_npda.json holds a pda"),
    }
}

/// Deterministic one-counter machine for words with as many a's as b's.
pub fn aeqb_dca() -> CounterMachine {
    match load("aeqb_dca.json") {
        Document::Counter(x) => x,
        _ => unreachable!("aeqb_dca.json holds a counter"),
    }
}

/// Nondeterministic one-counter machine for the words that are not palindromes.
pub fn nonpal_nca() -> CounterMachine {
    match load("nonpal_nca.json") {
        Document::Counter(x) => x,
        _ => unreachable!("nonpal_nca.json holds a counter"),
    }
}

/// Deterministic two-counter machine for closed walks (e, w, n, s) that stay in the first quadrant.
pub fn grid_dca() -> CounterMachine {
    match load("grid_dca.json") {
        Document::Counter(x) => x,
        _ => unreachable!("grid_dca.json holds a counter"),
    }
}

/// Decides `aⁿbⁿ` by crossing off one a and one b per pass.
pub fn tm_anbn() -> TuringMachine {
    match load("tm_anbn.json") {
        Document::Tm(x) => x,
        _ => unreachable!("tm_anbn.json holds a tm"),
    }
}

/// Runs right over blanks forever.
pub fn tm_loop() -> TuringMachine {
    match load("tm_loop.json") {
        Document::Tm(x) => x,
        _ => unreachable!("tm_loop.json holds a tm"),
    }
}

/// Scans right to the first blank and accepts.
pub fn tm_scan() -> TuringMachine {
    match load("tm_scan.json") {
        Document::Tm(x) => x,
        _ => unreachable!("tm_scan.json holds a tm"),
    }
}

/// Unary words whose length is a multiple of `p`, as a `p`-state cycle.
pub fn unary_mod(p: usize) -> FiniteAutomaton {
    assert!(p > 0, "the modulus must be positive");
    let mut b = FaBuilder::new();
    b.alphabet(['a']).start("0").accept("0");
    for i in 0..p {
        b.edge(&i.to_string(), 'a', &((i + 1) % p).to_string());
    }
    b.build(Kind::Deterministic).expect("cycle is deterministic")
}

/// Words over {a, b} whose `k`-th symbol from the end is b, as a
/// `(k + 1)`-state NFA. Its minimal DFA has `2^k` states.
pub fn l_k(k: usize) -> FiniteAutomaton {
    assert!(k > 0, "k must be positive");
    let mut b = FaBuilder::new();
    b.alphabet(['a', 'b']).start("0").accept(&k.to_string());
    b.edge("0", 'a', "0").edge("0", 'b', "0").edge("0", 'b', "1");
    for i in 1..k {
        let (from, to) = (i.to_string(), (i + 1).to_string());
        b.edge(&from, 'a', &to).edge(&from, 'b', &to);
    }
    b.build(Kind::Nondeterministic).expect("valid automaton")
}
