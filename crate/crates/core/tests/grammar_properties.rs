mod common;

use common::{dyck_count, grammar_derives, grammar_language, is_anbn, is_dyck, words, PAIRS};
use formlang::corpus;
use formlang::fa::{self, FaBuilder, Kind};
use formlang::grammar::{
    self, cfl_pump_decompose, count_parse_trees, count_words, cyk_member, dyck_coefficient,
    enumerate_parse_trees, generate_words, nfa_to_regular_grammar, regular_grammar_to_nfa,
    to_cnf, to_gnf, CountMode, Grammar, GrammarClass, DEFAULT_WORD_BUDGET,
};
use formlang::random::{self, rng};
use num_bigint::BigUint;
use proptest::prelude::*;

fn corpus_cfgs() -> Vec<(&'static str, Grammar)> {
    vec![
        ("dyck1", corpus::dyck1()),
        ("dyck2", corpus::dyck2()),
        ("anbn", corpus::anbn()),
        ("palindrome", corpus::palindrome()),
        ("aeqb", corpus::aeqb()),
        ("amgtbn", corpus::amgtbn()),
    ]
}

#[test]
fn dyck2_cnf_membership() {
    let cnf = to_cnf(&corpus::dyck2()).unwrap();
    assert!(cyk_member(&cnf, "([])[]").unwrap());
    assert!(!cyk_member(&cnf, "[(])").unwrap());
}

#[test]
fn anbn_cnf_membership() {
    let cnf = to_cnf(&corpus::anbn()).unwrap();
    assert!(cyk_member(&cnf, "aabb").unwrap());
    assert!(!cyk_member(&cnf, "aab").unwrap());
}

#[test]
fn normal_forms_preserve_words() {
    for (name, g) in corpus_cfgs() {
        let expected = generate_words(&g, 8, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(expected, grammar_language(&g, 8), "{name}: generator vs oracle");
        let cnf = to_cnf(&g).unwrap();
        cnf.check_class(GrammarClass::Cnf).unwrap();
        assert_eq!(generate_words(&cnf, 8, DEFAULT_WORD_BUDGET).unwrap(), expected, "{name} cnf");
        let gnf = to_gnf(&g).unwrap();
        gnf.check_class(GrammarClass::Gnf).unwrap();
        assert_eq!(generate_words(&gnf, 8, DEFAULT_WORD_BUDGET).unwrap(), expected, "{name} gnf");
    }
}

#[test]
fn gnf_of_nonempty_anbn() {
    let g = Grammar::from_text(GrammarClass::ContextFree, "S -> aSb | ab").unwrap();
    let gnf = to_gnf(&g).unwrap();
    let words = generate_words(&gnf, 8, DEFAULT_WORD_BUDGET).unwrap();
    let expected: std::collections::BTreeSet<String> =
        (1..=4).map(|n| format!("{}{}", "a".repeat(n), "b".repeat(n))).collect();
    assert_eq!(words, expected);
}

#[test]
fn gnf_of_dyck1_to_length_ten() {
    let g = corpus::dyck1();
    let gnf = to_gnf(&g).unwrap();
    assert_eq!(
        generate_words(&gnf, 10, DEFAULT_WORD_BUDGET).unwrap(),
        generate_words(&g, 10, DEFAULT_WORD_BUDGET).unwrap()
    );
}

#[test]
fn small_enumerations() {
    let d2 = generate_words(&corpus::dyck2(), 2, DEFAULT_WORD_BUDGET).unwrap();
    assert_eq!(d2.into_iter().collect::<Vec<_>>(), ["", "()", "[]"]);
    let ab = generate_words(&corpus::aeqb(), 2, DEFAULT_WORD_BUDGET).unwrap();
    assert_eq!(ab.into_iter().collect::<Vec<_>>(), ["", "ab", "ba"]);
}

#[test]
fn tree_counts() {
    let d2 = to_cnf(&corpus::dyck2()).unwrap();
    assert_eq!(count_parse_trees(&d2, "()()").unwrap(), BigUint::from(1u32));
    let amb = to_cnf(&corpus::ambiguous_dyck1()).unwrap();
    assert!(count_parse_trees(&amb, "()()").unwrap() >= BigUint::from(2u32));
    for t in enumerate_parse_trees(&amb, "()()", 10).unwrap() {
        assert_eq!(t.frontier(), "()()");
        assert!(t.is_consistent_with(&amb));
    }
}

#[test]
fn dyck_closed_form() {
    assert_eq!(dyck_coefficient(1, 4).unwrap(), BigUint::from(2u32));
    assert_eq!(dyck_coefficient(2, 2).unwrap(), BigUint::from(2u32));
    assert_eq!(dyck_coefficient(1, 6).unwrap(), BigUint::from(5u32));
    assert_eq!(dyck_coefficient(2, 4).unwrap(), BigUint::from(8u32));
    assert!(dyck_coefficient(1, 3).is_err());
    for k in 1..=3u32 {
        for len in (0..=16).step_by(2) {
            assert_eq!(
                dyck_coefficient(k, len).unwrap(),
                BigUint::from(dyck_count(k as u128, len as u128))
            );
        }
    }
    let d2 = to_cnf(&corpus::dyck2()).unwrap();
    let counts = count_words(&d2, 4, CountMode::Explicit { budget: DEFAULT_WORD_BUDGET }).unwrap();
    assert_eq!(counts[4], BigUint::from(8u32));
    let words = generate_words(&corpus::dyck1(), 6, DEFAULT_WORD_BUDGET).unwrap();
    let oracle = common::words(&['(', ')'], 6)
        .into_iter()
        .filter(|w| w.len() == 6 && is_dyck(w, &PAIRS))
        .count();
    assert_eq!(words.iter().filter(|w| w.len() == 6).count(), oracle);
    assert_eq!(oracle, 5);
}

#[test]
fn regular_grammar_to_nfa_ends_in_b() {
    let g = Grammar::from_text(GrammarClass::Regular, "S -> aS | bT; T -> aS | bT | ε").unwrap();
    let m = regular_grammar_to_nfa(&g).unwrap();
    for w in words(&['a', 'b'], 6) {
        assert_eq!(common::accepts(&m, &w), w.ends_with('b'), "{w}");
    }
}

#[test]
fn no_bb_regular_round_trip() {
    let g = nfa_to_regular_grammar(&corpus::no_bb()).unwrap();
    assert_eq!(g.num_variables(), 3);
    let m = regular_grammar_to_nfa(&g).unwrap();
    let d = fa::determinize(&m, fa::AcceptanceMode::Exists).unwrap();
    assert_eq!(fa::equivalence_check(&d, &corpus::no_bb()).unwrap(), None);
    assert_eq!(grammar_language(&g, 8), common::language(&corpus::no_bb(), 8));
}

#[test]
fn pumping_anbn_and_dyck1() {
    let anbn = to_cnf(&corpus::anbn()).unwrap();
    let p = 1usize << anbn.num_variables();
    for n in p / 2 + 1..p / 2 + 4 {
        let w = format!("{}{}", "a".repeat(n), "b".repeat(n));
        let d = cfl_pump_decompose(&anbn, &w).unwrap();
        assert!(!d.v.is_empty() && d.v.chars().all(|c| c == 'a'));
        assert_eq!(d.v.len(), d.y.len());
        assert!(d.y.chars().all(|c| c == 'b'));
        for t in 0..4 {
            assert!(is_anbn(&d.pumped(t)));
            assert!(cyk_member(&anbn, &d.pumped(t)).unwrap());
        }
    }
    let d1 = to_cnf(&corpus::dyck1()).unwrap();
    let p = 1usize << d1.num_variables();
    let w = format!("{}{}", "(".repeat(p / 2 + 1), ")".repeat(p / 2 + 1));
    let d = cfl_pump_decompose(&d1, &w).unwrap();
    assert!(d.v.len() + d.y.len() > 0);
    assert!(d.v.len() + d.x.len() + d.y.len() <= p);
    for t in 0..4 {
        assert!(is_dyck(&d.pumped(t), &PAIRS));
    }
}

#[test]
fn abc_refutes_a_cfg_claim() {
    // A CNF grammar that wrongly claims to generate aⁿbⁿcⁿ: it generates
    // aⁿbⁿc* instead. Some pumped word falls outside aⁿbⁿcⁿ.
    let g = Grammar::from_text(GrammarClass::ContextFree, "S -> TC; T -> aTb | ab; C -> cC | c")
        .unwrap();
    let cnf = to_cnf(&g).unwrap();
    let p = 1usize << cnf.num_variables();
    let n = p / 3 + 1;
    let w = format!("{}{}{}", "a".repeat(n), "b".repeat(n), "c".repeat(n));
    let d = cfl_pump_decompose(&cnf, &w).unwrap();
    let in_abc = |s: &str| {
        let k = s.len() / 3;
        s.len() % 3 == 0 && s == format!("{}{}{}", "a".repeat(k), "b".repeat(k), "c".repeat(k))
    };
    assert!((0..4).any(|t| !in_abc(&d.pumped(t))));
}

#[test]
fn closure_constructions() {
    let (g1, g2) = (corpus::anbn(), corpus::dyck1());
    let l1 = grammar_language(&g1, 6);
    let l2 = grammar_language(&g2, 6);
    let all = |g: &Grammar| grammar_language(g, 6);
    let u = grammar::union(&g1, &g2).unwrap();
    let c = grammar::concatenation(&g1, &g2).unwrap();
    let s = grammar::star(&g1).unwrap();
    let r = grammar::reversal(&g1).unwrap();
    let sigma: Vec<char> = "ab()".chars().collect();
    let lu = all(&u);
    let lc = all(&c);
    let ls = all(&s);
    let lr = all(&r);
    for w in words(&sigma, 6) {
        assert_eq!(lu.contains(&w), l1.contains(&w) || l2.contains(&w), "union {w}");
        let cat = (0..=w.len()).any(|i| l1.contains(&w[..i]) && l2.contains(&w[i..]));
        assert_eq!(lc.contains(&w), cat, "concat {w}");
        let rev: String = w.chars().rev().collect();
        assert_eq!(lr.contains(&w), l1.contains(&rev), "reverse {w}");
        let mut reach = vec![false; w.len() + 1];
        reach[0] = true;
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                if reach[i] && l1.contains(&w[i..j]) {
                    reach[j] = true;
                }
            }
        }
        assert_eq!(ls.contains(&w), reach[w.len()], "star {w}");
    }
}

#[test]
fn class_checks() {
    assert!(Grammar::from_text(GrammarClass::Regular, "S -> aSb").is_err());
    assert!(Grammar::from_text(GrammarClass::Cnf, "S -> aS").is_err());
    assert!(Grammar::from_text(GrammarClass::Noncontracting, "S -> ab; ab -> a").is_err());
    assert!(Grammar::from_text(GrammarClass::Noncontracting, "S -> aS | ε").is_err());
    assert!(Grammar::from_text(GrammarClass::Noncontracting, "S -> T | ε; T -> aT | a").is_ok());
}

#[test]
fn sorted_dyck_prefix_example() {
    let mut b = FaBuilder::new();
    b.start("open")
        .accept("open")
        .accept("close")
        .edge("open", '(', "open")
        .edge("open", ')', "close")
        .edge("close", ')', "close");
    let filter = b.build(Kind::Deterministic).unwrap();
    let p = formlang::pda::pda_intersect_regular(&corpus::dyck1_pda(), &filter).unwrap();
    for w in words(&['(', ')'], 8) {
        let n = w.len() / 2;
        let expected = w == format!("{}{}", "(".repeat(n), ")".repeat(n));
        let got = p.npda_run(&w, formlang::pda::Budget::for_word(&w)).unwrap();
        assert_eq!(got, expected, "{w}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyk_agrees_with_oracle(seed in any::<u64>()) {
        let g = random::random_cnf(&mut rng(seed), 4, &['a', 'b']);
        let generated = generate_words(&g, 6, DEFAULT_WORD_BUDGET).unwrap();
        for w in words(&['a', 'b'], 6) {
            let oracle = grammar_derives(&g, &w);
            prop_assert_eq!(cyk_member(&g, &w).unwrap(), oracle, "{}", w);
            prop_assert_eq!(generated.contains(&w), oracle, "{}", w);
        }
    }

    #[test]
    fn trees_are_sound(seed in any::<u64>(), w in "[ab]{0,6}") {
        let g = random::random_cnf(&mut rng(seed), 3, &['a', 'b']);
        let trees = enumerate_parse_trees(&g, &w, 50).unwrap();
        let count = count_parse_trees(&g, &w).unwrap();
        prop_assert_eq!(trees.is_empty(), count == BigUint::from(0u32));
        if count <= BigUint::from(50u32) {
            prop_assert_eq!(BigUint::from(trees.len()), count);
        }
        for t in &trees {
            prop_assert_eq!(t.frontier(), w.clone());
            prop_assert!(t.is_consistent_with(&g));
        }
    }

    #[test]
    fn normal_forms_on_random_grammars(seed in any::<u64>()) {
        let g = random::random_cnf(&mut rng(seed), 3, &['a', 'b']);
        let expected = grammar_language(&g, 6);
        let gnf = to_gnf(&g).unwrap();
        prop_assert_eq!(grammar_language(&gnf, 6), expected.clone());
        let cnf = to_cnf(&gnf).unwrap();
        prop_assert_eq!(grammar_language(&cnf, 6), expected);
    }

    #[test]
    fn cfl_pumping_clauses(seed in any::<u64>()) {
        let g = random::random_cnf(&mut rng(seed), 2, &['a', 'b']);
        let p = 1usize << g.num_variables();
        let long: Vec<String> = generate_words(&g, p + 3, DEFAULT_WORD_BUDGET)
            .unwrap()
            .into_iter()
            .filter(|w| w.len() > p)
            .take(10)
            .collect();
        for w in long {
            let d = cfl_pump_decompose(&g, &w).unwrap();
            prop_assert_eq!(d.pumped(1), w.clone());
            prop_assert!(!d.v.is_empty() || !d.y.is_empty());
            prop_assert!(d.v.len() + d.x.len() + d.y.len() <= p);
            for t in 0..4 {
                prop_assert!(cyk_member(&g, &d.pumped(t)).unwrap());
            }
        }
    }
}
