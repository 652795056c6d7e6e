use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use formlang_ffi::*;

fn corpus(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
    fl_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    let p = fl_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn automaton(name: &str) -> *mut FlAutomaton {
    let mut m = ptr::null_mut();
    assert_eq!(fl_automaton_from_json(corpus(name).as_ptr(), &mut m), FlStatus::Ok);
    m
}

#[test]
fn automaton_lifecycle() {
    unsafe {
        let m = automaton("nobb.json");
        assert_eq!(fl_automaton_run(m, c("bab").as_ptr(), FlMode::Exists), FlStatus::Ok);
        assert_eq!(fl_automaton_run(m, c("abba").as_ptr(), FlMode::Exists), FlStatus::No);
        assert_eq!(fl_automaton_run(m, c("abc").as_ptr(), FlMode::Exists), FlStatus::Input);
        assert!(last_error().contains('c'));

        let mut json = ptr::null_mut();
        assert_eq!(fl_automaton_to_json(m, &mut json), FlStatus::Ok);
        let text = CString::new(take(json)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(fl_automaton_from_json(text.as_ptr(), &mut again), FlStatus::Ok);
        assert_eq!(fl_automaton_equivalent(m, again, ptr::null_mut()), FlStatus::Ok);
        assert!(fl_last_error().is_null());
        fl_automaton_free(again);
        fl_automaton_free(m);
    }
}

#[test]
fn determinize_minimize_and_compare() {
    unsafe {
        let nfa = automaton("m3.json");
        assert_eq!(fl_automaton_minimize(nfa, &mut ptr::null_mut()), FlStatus::Structure);
        let mut d = ptr::null_mut();
        assert_eq!(fl_automaton_determinize(nfa, FlMode::Exists, &mut d), FlStatus::Ok);
        let mut min = ptr::null_mut();
        assert_eq!(fl_automaton_minimize(d, &mut min), FlStatus::Ok);
        assert!(fl_automaton_num_states(min) <= fl_automaton_num_states(d));
        assert_eq!(fl_automaton_equivalent(d, min, ptr::null_mut()), FlStatus::Ok);
        for w in ["", "a", "ab", "bba", "abab"] {
            let w = c(w);
            assert_eq!(
                fl_automaton_run(nfa, w.as_ptr(), FlMode::Exists),
                fl_automaton_run(min, w.as_ptr(), FlMode::Exists)
            );
        }
        for m in [nfa, d, min] {
            fl_automaton_free(m);
        }

        let (l2, l3) = (automaton("unary_l2.json"), automaton("unary_l3.json"));
        let mut witness = ptr::null_mut();
        assert_eq!(fl_automaton_equivalent(l2, l3, &mut witness), FlStatus::No);
        assert_eq!(take(witness), "aa");
        fl_automaton_free(l2);
        fl_automaton_free(l3);
    }
}

#[test]
fn regex_compile() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(fl_regex_compile(c("(a+b)*bb(a+b)*").as_ptr(), ptr::null(), &mut m), FlStatus::Ok);
        let nobb = automaton("nobb.json");
        let mut witness = ptr::null_mut();
        assert_eq!(fl_automaton_equivalent(m, nobb, &mut witness), FlStatus::No);
        assert_eq!(take(witness), "");
        fl_automaton_free(m);
        fl_automaton_free(nobb);

        let mut m = ptr::null_mut();
        assert_eq!(fl_regex_compile(c("a*").as_ptr(), c("ab").as_ptr(), &mut m), FlStatus::Ok);
        assert_eq!(fl_automaton_run(m, c("b").as_ptr(), FlMode::Exists), FlStatus::No);
        fl_automaton_free(m);

        assert_eq!(fl_regex_compile(c("(ab").as_ptr(), ptr::null(), &mut ptr::null_mut()), FlStatus::Parse);
    }
}

#[test]
fn grammar_calls() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(fl_grammar_from_json(corpus("dyck1.json").as_ptr(), &mut g), FlStatus::Ok);
        assert_eq!(fl_grammar_member(g, c("(())()").as_ptr()), FlStatus::Ok);
        assert_eq!(fl_grammar_member(g, c("())(").as_ptr()), FlStatus::No);
        let mut counts = ptr::null_mut();
        assert_eq!(fl_grammar_count(g, 8, &mut counts), FlStatus::Ok);
        assert_eq!(take(counts), "1 0 1 0 2 0 5 0 14");
        let mut cnf = ptr::null_mut();
        assert_eq!(fl_grammar_to_cnf(g, &mut cnf), FlStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(fl_grammar_to_json(cnf, &mut json), FlStatus::Ok);
        assert!(take(json).contains("\"grammar\""));
        fl_grammar_free(cnf);
        fl_grammar_free(g);

        let mut csg = ptr::null_mut();
        assert_eq!(fl_grammar_from_json(corpus("anbncn_csg.json").as_ptr(), &mut csg), FlStatus::Ok);
        assert_eq!(fl_grammar_member(csg, c("aabbcc").as_ptr()), FlStatus::Ok);
        assert_eq!(fl_grammar_member(csg, c("aabcc").as_ptr()), FlStatus::No);
        fl_grammar_free(csg);
    }
}

#[test]
fn pda_calls() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(fl_pda_from_json(corpus("palindrome_npda.json").as_ptr(), &mut p), FlStatus::Ok);
        assert_eq!(fl_pda_run(p, c("abba").as_ptr(), 0, 0), FlStatus::Ok);
        assert_eq!(fl_pda_run(p, c("abb").as_ptr(), 0, 0), FlStatus::No);
        assert_eq!(fl_pda_run(p, c("abaaba").as_ptr(), 0, 1), FlStatus::Resource);
        fl_pda_free(p);
    }
}

#[test]
fn misuse_is_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(fl_automaton_from_json(ptr::null(), &mut m), FlStatus::NullArgument);
        assert_eq!(fl_automaton_from_json(c("{\"type\": ").as_ptr(), &mut m), FlStatus::Json);
        assert_eq!(fl_automaton_from_json(corpus("dyck1.json").as_ptr(), &mut m), FlStatus::Structure);
        assert!(last_error().contains("grammar"));
        assert!(m.is_null());
        let mut g = ptr::null_mut();
        assert_eq!(fl_grammar_from_json(corpus("nobb.json").as_ptr(), &mut g), FlStatus::Structure);
        let bad = [0x61u8, 0xff, 0];
        let nobb = automaton("nobb.json");
        assert_eq!(
            fl_automaton_run(nobb, bad.as_ptr().cast(), FlMode::Exists),
            FlStatus::InvalidUtf8
        );
        assert_eq!(fl_automaton_run(ptr::null(), c("a").as_ptr(), FlMode::Exists), FlStatus::NullArgument);
        assert_eq!(fl_automaton_num_states(ptr::null()), 0);
        fl_automaton_free(nobb);
        fl_automaton_free(ptr::null_mut());
        fl_string_free(ptr::null_mut());
    }
}
