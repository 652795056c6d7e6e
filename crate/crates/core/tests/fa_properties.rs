mod common;

use common::{accepts, alphabet_of, language, path_semantics, shortest_disagreement, words};
use formlang::corpus;
use formlang::fa::{self, AcceptanceMode, Combine, FaBuilder, Fraction, Kind};
use formlang::random::{self, rng};
use proptest::prelude::*;

const AB: [char; 2] = ['a', 'b'];

#[test]
fn no_bb_table() {
    let m = corpus::no_bb();
    assert!(m.dfa_run("bab").unwrap());
    assert!(!m.dfa_run("abb").unwrap());
    let names: Vec<&str> = "abb"
        .char_indices()
        .map(|(i, _)| m.name(m.delta_star(m.start(), &"abb"[..=i]).unwrap().unwrap()))
        .collect();
    assert_eq!(names, ["1", "2", "3"]);
}

#[test]
fn m3_paths() {
    let m = corpus::m3();
    assert!(m.nfa_run("abba", AcceptanceMode::Exists).unwrap());
    assert!(!m.nfa_run("baaa", AcceptanceMode::Exists).unwrap());
    for w in words(&AB, 7) {
        let third_last_is_b = w.len() >= 3 && w.as_bytes()[w.len() - 3] == b'b';
        assert_eq!(path_semantics(&m, &w).0, third_last_is_b, "{w}");
    }
}

#[test]
fn m3_subsets() {
    let d = fa::determinize(&corpus::m3(), AcceptanceMode::Exists).unwrap();
    assert_eq!(d.trim_unreachable().num_states(), 8);
}

#[test]
fn complement_of_no_bb() {
    let c = fa::complement(&corpus::no_bb()).unwrap();
    assert!(c.dfa_run("abb").unwrap());
    assert!(!c.dfa_run("bab").unwrap());
}

#[test]
fn product_examples() {
    let m = fa::product(&corpus::no_bb(), &corpus::even_b(), Combine::And).unwrap();
    // "ab" has a single b, so it is not in the even-b language.
    assert!(!m.dfa_run("ab").unwrap());
    assert!(!m.dfa_run("b").unwrap());
    assert!(m.dfa_run("baba").unwrap());
    let lcm = fa::product(&corpus::unary_mod(2), &corpus::unary_mod(3), Combine::And).unwrap();
    assert_eq!(formlang::minimize::minimize(&lcm).unwrap().num_states(), 6);
}

#[test]
fn unary_witness() {
    let w = fa::equivalence_check(&corpus::unary_mod(2), &corpus::unary_mod(3)).unwrap();
    assert_eq!(w.as_deref(), Some("aa"));
}

#[test]
fn concat_example() {
    let m = fa::concatenate(&corpus::no_bb(), &corpus::even_b());
    assert!(m.nfa_run("babaabbab", AcceptanceMode::Exists).unwrap());
    assert!(accepts(&m, "babaabbab"));
}

#[test]
fn star_of_ab() {
    let ab = fa::from_words(["ab"], AB);
    let s = fa::star(&ab);
    assert!(s.nfa_run("abab", AcceptanceMode::Exists).unwrap());
    assert!(!s.nfa_run("aba", AcceptanceMode::Exists).unwrap());
    assert!(s.nfa_run("", AcceptanceMode::Exists).unwrap());
}

#[test]
fn reverse_examples() {
    let r = fa::reverse(&corpus::no_bb());
    assert!(r.nfa_run("bab", AcceptanceMode::Exists).unwrap());
    let lk = fa::reverse(&corpus::l_k(3));
    let d = fa::determinize(&lk, AcceptanceMode::Exists).unwrap();
    assert_eq!(formlang::minimize::minimize(&d).unwrap().num_states(), 5);
}

#[test]
fn interleave_lengths() {
    let sigma: Vec<char> = "acioprt".chars().collect();
    let cat = fa::from_words(["cat"], sigma.iter().copied());
    let tapir = fa::from_words(["tapir"], sigma.iter().copied());
    let m = fa::interleave(&cat, &tapir).unwrap();
    assert!(m.nfa_run("ctaapitr", AcceptanceMode::Exists).unwrap());
    for w in language(&m, 8) {
        assert_eq!(w.len(), 8);
    }
}

#[test]
fn first_half_of_ab_star() {
    let mut b = FaBuilder::new();
    b.start("0").accept("0").edge("0", 'a', "1").edge("1", 'b', "0");
    let m = b.build(Kind::Deterministic).unwrap();
    let h = fa::fraction_language(&m, Fraction::FirstHalf).unwrap();
    assert!(h.nfa_run("ab", AcceptanceMode::Exists).unwrap());
}

#[test]
fn parity_rejects_epsilon_for_determinize() {
    let mut b = FaBuilder::new();
    b.start("p").accept("q").epsilon("p", "q").edge("q", 'a', "q");
    let m = b.build(Kind::Nondeterministic).unwrap();
    assert!(fa::determinize(&m, AcceptanceMode::Parity).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinize_matches_paths(seed in any::<u64>()) {
        let m = random::random_nfa(&mut rng(seed), 5, &AB, 0.3, false);
        let ds: Vec<_> = AcceptanceMode::ALL
            .iter()
            .map(|&mode| fa::determinize(&m, mode).unwrap())
            .collect();
        for w in words(&AB, 6) {
            let (exists, forall, parity) = path_semantics(&m, &w);
            prop_assert_eq!(ds[0].dfa_run(&w).unwrap(), exists, "exists {}", w);
            prop_assert_eq!(ds[1].dfa_run(&w).unwrap(), forall, "forall {}", w);
            prop_assert_eq!(ds[2].dfa_run(&w).unwrap(), parity, "parity {}", w);
        }
    }

    #[test]
    fn determinize_with_epsilon(seed in any::<u64>()) {
        let m = random::random_nfa(&mut rng(seed), 5, &AB, 0.3, true);
        let d = fa::determinize(&m, AcceptanceMode::Exists).unwrap();
        let f = fa::determinize(&m, AcceptanceMode::ForAll).unwrap();
        for w in words(&AB, 6) {
            prop_assert_eq!(d.dfa_run(&w).unwrap(), accepts(&m, &w), "{}", w);
            prop_assert_eq!(f.dfa_run(&w).unwrap(), m.nfa_run(&w, AcceptanceMode::ForAll).unwrap());
        }
    }

    #[test]
    fn delta_star_composes(seed in any::<u64>(), w in "[ab]{0,8}", cut in 0usize..9) {
        let m = random::random_dfa(&mut rng(seed), 4, &AB);
        let cut = cut.min(w.len());
        let (u, v) = w.split_at(cut);
        let mid = m.delta_star(m.start(), u).unwrap().unwrap();
        prop_assert_eq!(m.delta_star(m.start(), &w).unwrap(), m.delta_star(mid, v).unwrap());
    }

    #[test]
    fn product_is_pointwise(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m1 = random::random_dfa(&mut rng(s1), 3, &AB);
        let m2 = random::random_dfa(&mut rng(s2), 3, &AB);
        for op in [Combine::And, Combine::Or, Combine::Xor] {
            let p = fa::product(&m1, &m2, op).unwrap();
            for w in words(&AB, 6) {
                prop_assert_eq!(p.dfa_run(&w).unwrap(), op.apply(accepts(&m1, &w), accepts(&m2, &w)));
            }
        }
    }

    #[test]
    fn closures_match_set_definitions(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m1 = random::random_nfa(&mut rng(s1), 3, &AB, 0.35, true);
        let m2 = random::random_nfa(&mut rng(s2), 3, &AB, 0.35, true);
        let l1 = language(&m1, 6);
        let l2 = language(&m2, 6);
        let cat = fa::concatenate(&m1, &m2);
        let st = fa::star(&m1);
        let rev = fa::reverse(&m1);
        let inter = fa::interleave(&m1, &m2).unwrap();
        for w in words(&AB, 6) {
            let splits = (0..=w.len()).map(|i| w.split_at(i));
            let in_cat = splits.clone().any(|(u, v)| l1.contains(u) && l2.contains(v));
            prop_assert_eq!(accepts(&cat, &w), in_cat, "concat {}", w);
            prop_assert_eq!(accepts(&st, &w), in_star(&l1, &w), "star {}", w);
            let r: String = w.chars().rev().collect();
            prop_assert_eq!(accepts(&rev, &w), l1.contains(&r), "reverse {}", w);
            prop_assert_eq!(accepts(&inter, &w), in_shuffle(&l1, &l2, &w), "interleave {}", w);
        }
    }

    #[test]
    fn first_half_matches_definition(seed in any::<u64>()) {
        let m = random::random_dfa(&mut rng(seed), 3, &AB);
        let h = fa::fraction_language(&m, Fraction::FirstHalf).unwrap();
        let t = fa::fraction_language(&m, Fraction::MiddleThird).unwrap();
        let lang = language(&m, 12);
        for x in words(&AB, 4) {
            let ys = words(&AB, x.len()).into_iter().filter(|y| y.len() == x.len()).collect::<Vec<_>>();
            let half = ys.iter().any(|y| lang.contains(&format!("{x}{y}")));
            prop_assert_eq!(accepts(&h, &x), half, "half {}", x);
            let third = ys.iter().any(|a| ys.iter().any(|c| lang.contains(&format!("{a}{x}{c}"))));
            prop_assert_eq!(accepts(&t, &x), third, "third {}", x);
        }
    }

    #[test]
    fn equivalence_witness_is_shortest(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m1 = random::random_dfa(&mut rng(s1), 3, &AB);
        let m2 = random::random_dfa(&mut rng(s2), 3, &AB);
        let bound = m1.num_states() * m2.num_states();
        let brute = shortest_disagreement(&m1, &m2, bound);
        let w = fa::equivalence_check(&m1, &m2).unwrap();
        match (&w, &brute) {
            (None, None) => {}
            (Some(w), Some(b)) => {
                prop_assert!(w.len() < bound);
                prop_assert_eq!(w.len(), b.len());
                prop_assert_ne!(accepts(&m1, w), accepts(&m2, w));
            }
            _ => prop_assert!(false, "library {:?} vs enumeration {:?}", w, brute),
        }
    }

    #[test]
    fn remove_epsilon_keeps_language(seed in any::<u64>()) {
        let m = random::random_nfa(&mut rng(seed), 4, &AB, 0.3, true);
        let e = fa::remove_epsilon(&m);
        prop_assert!(!e.has_epsilon());
        prop_assert_eq!(language(&e, 6), language(&m, 6));
        prop_assert_eq!(alphabet_of(&e), alphabet_of(&m));
    }
}

fn in_star(l: &std::collections::BTreeSet<String>, w: &str) -> bool {
    // reachable[i]: w[..i] is a concatenation of words of l
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if reach[i] {
            for j in i + 1..=n {
                if l.contains(&w[i..j]) {
                    reach[j] = true;
                }
            }
        }
    }
    reach[n]
}

fn in_shuffle(
    l1: &std::collections::BTreeSet<String>,
    l2: &std::collections::BTreeSet<String>,
    w: &str,
) -> bool {
    let chars: Vec<char> = w.chars().collect();
    let n = chars.len();
    (0u32..1 << n).any(|mask| {
        let (mut u, mut v) = (String::new(), String::new());
        for (i, &c) in chars.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.push(c);
            } else {
                v.push(c);
            }
        }
        l1.contains(&u) && l2.contains(&v)
    })
}
