//! Regular expressions over single-character symbols.
//!
//! Concrete syntax: `∅` (or `@`) for the empty language, `ε` (or `_`) for
//! the empty word, juxtaposition for concatenation, `+` for union, postfix
//! `*`, and parentheses. `*` binds tighter than concatenation, which binds
//! tighter than `+`. Whitespace is ignored. Any other character is a
//! symbol, so `+ * ( ) @ _ ε ∅` cannot themselves be symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fa::{self, AcceptanceMode, FaBuilder, FiniteAutomaton, Kind, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Symbol(char),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    /// Concatenation that drops ε factors and absorbs into ∅.
    fn cat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, x) | (x, Regex::Epsilon) => x,
            (a, b) => Regex::concat(a, b),
        }
    }

    /// Union that drops ∅ operands.
    fn or(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, x) | (x, Regex::Empty) => x,
            (a, b) => Regex::union(a, b),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Symbol(_) => 1,
            Regex::Concat(a, b) | Regex::Union(a, b) => 1 + a.size() + b.size(),
            Regex::Star(a) => 1 + a.size(),
        }
    }

    /// Symbols occurring in the expression.
    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Symbol(a) => {
                out.insert(*a);
            }
            Regex::Concat(a, b) | Regex::Union(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Regex::Star(a) => a.collect_symbols(out),
        }
    }

    /// The expression for the reversed language.
    pub fn reversed(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Symbol(_) => self.clone(),
            Regex::Concat(a, b) => Regex::concat(b.reversed(), a.reversed()),
            Regex::Union(a, b) => Regex::union(a.reversed(), b.reversed()),
            Regex::Star(a) => Regex::star(a.reversed()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Regex::Empty => f.write_str("∅")?,
            Regex::Epsilon => f.write_str("ε")?,
            Regex::Symbol(a) => write!(f, "{a}")?,
            Regex::Concat(a, b) => {
                a.write_at(f, 1)?;
                b.write_at(f, 2)?;
            }
            Regex::Union(a, b) => {
                a.write_at(f, 0)?;
                f.write_str("+")?;
                b.write_at(f, 1)?;
            }
            Regex::Star(a) => {
                a.write_at(f, 3)?;
                f.write_str("*")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1), |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut factor = match self.postfix()? {
            Some(r) => r,
            None => {
                return Err(match self.peek() {
                    None => self.error("expression ends where an operand was expected"),
                    Some(c) => self.error(format!("expected an operand, found `{c}`")),
                })
            }
        };
        while let Some(next) = self.postfix()? {
            factor = Regex::concat(factor, next);
        }
        Ok(factor)
    }

    fn postfix(&mut self) -> Result<Option<Regex>> {
        let Some(mut atom) = self.atom()? else {
            return Ok(None);
        };
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = Regex::star(atom);
        }
        Ok(Some(atom))
    }

    fn atom(&mut self) -> Result<Option<Regex>> {
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let r = match c {
            '+' | ')' => return Ok(None),
            '*' => return Err(self.error("`*` has nothing to repeat")),
            '(' => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("unbalanced `(`"));
                }
                inner
            }
            '∅' | '@' => Regex::Empty,
            'ε' | '_' => Regex::Epsilon,
            a => Regex::Symbol(a),
        };
        self.pos += 1;
        Ok(Some(r))
    }
}

impl FromStr for Regex {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
        };
        let r = p.union()?;
        match p.peek() {
            None => Ok(r),
            Some(')') => Err(p.error("unbalanced `)`")),
            Some(c) => Err(p.error(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses the concrete syntax described in the module documentation.
pub fn parse_regex(text: &str) -> Result<Regex> {
    text.parse()
}

/// Compiles by structural recursion: the base automata for ∅, ε and single
/// symbols, the ε-edge union gadget, concatenation and star. The alphabet
/// is the set of symbols occurring in `r`.
pub fn regex_to_nfa(r: &Regex) -> FiniteAutomaton {
    match r {
        Regex::Empty => FaBuilder::new()
            .start("∅")
            .build(Kind::Nondeterministic)
            .expect("base automaton"),
        Regex::Epsilon => FaBuilder::new()
            .start("ε")
            .accept("ε")
            .build(Kind::Nondeterministic)
            .expect("base automaton"),
        Regex::Symbol(a) => FaBuilder::new()
            .start("·")
            .edge("·", *a, "✓")
            .accept("✓")
            .build(Kind::Nondeterministic)
            .expect("base automaton"),
        Regex::Concat(a, b) => fa::concatenate(&regex_to_nfa(a), &regex_to_nfa(b)),
        Regex::Union(a, b) => fa::union(&regex_to_nfa(a), &regex_to_nfa(b)),
        Regex::Star(a) => fa::star(&regex_to_nfa(a)),
    }
}

/// [`regex_to_nfa`] with the alphabet widened to include `alphabet`.
pub fn regex_to_nfa_over(r: &Regex, alphabet: impl IntoIterator<Item = char>) -> FiniteAutomaton {
    regex_to_nfa(r).with_alphabet(alphabet)
}

/// Whether `w` matches `r`. A symbol that does not occur in `r` is a
/// mismatch, not an error.
pub fn regex_match(r: &Regex, w: &str) -> bool {
    let m = regex_to_nfa(r);
    if w.chars().any(|a| !m.alphabet().contains(&a)) {
        return false;
    }
    m.nfa_run(w, AcceptanceMode::Exists)
        .expect("word is over the alphabet")
}

/// Generalized automaton used during state elimination: edge labels are
/// regexes, node `n` is the added accepting sink.
struct Gnfa {
    edges: BTreeMap<(usize, usize), Regex>,
}

impl Gnfa {
    fn add(&mut self, u: usize, v: usize, r: Regex) {
        let merged = match self.edges.remove(&(u, v)) {
            Some(old) => Regex::or(old, r),
            None => r,
        };
        if merged != Regex::Empty {
            self.edges.insert((u, v), merged);
        }
    }

    fn degree_product(&self, s: usize) -> usize {
        let ins = self.edges.keys().filter(|&&(u, v)| v == s && u != s).count();
        let outs = self.edges.keys().filter(|&&(u, v)| u == s && v != s).count();
        ins * outs
    }

    fn eliminate(&mut self, s: usize) {
        let loop_re = self.edges.remove(&(s, s));
        let incoming: Vec<(usize, Regex)> = self
            .edges
            .iter()
            .filter(|(&(_, v), _)| v == s)
            .map(|(&(u, _), r)| (u, r.clone()))
            .collect();
        let outgoing: Vec<(usize, Regex)> = self
            .edges
            .iter()
            .filter(|(&(u, _), _)| u == s)
            .map(|(&(_, v), r)| (v, r.clone()))
            .collect();
        self.edges.retain(|&(u, v), _| u != s && v != s);
        for (u, r1) in &incoming {
            for (v, r2) in &outgoing {
                let middle = match &loop_re {
                    Some(l) => Regex::cat(r1.clone(), Regex::star(l.clone())),
                    None => r1.clone(),
                };
                self.add(*u, *v, Regex::cat(middle, r2.clone()));
            }
        }
    }
}

fn build_gnfa(m: &FiniteAutomaton) -> Gnfa {
    let n = m.num_states();
    let mut g = Gnfa {
        edges: BTreeMap::new(),
    };
    // Parallel edges are merged in a fixed order: ε first, then symbols.
    let mut parallel: BTreeMap<(usize, usize), Vec<Option<char>>> = BTreeMap::new();
    for (s, label, t) in m.edges() {
        parallel.entry((s, t)).or_default().push(label);
    }
    for ((s, t), mut labels) in parallel {
        labels.sort();
        for l in labels {
            g.add(s, t, l.map_or(Regex::Epsilon, Regex::Symbol));
        }
    }
    for &f in m.accepting() {
        g.add(f, n, Regex::Epsilon);
    }
    g
}

fn finish(mut g: Gnfa, start: usize, sink: usize) -> Regex {
    let body = g.edges.remove(&(start, sink)).unwrap_or(Regex::Empty);
    match g.edges.remove(&(start, start)) {
        Some(l) => Regex::cat(Regex::star(l), body),
        None => body,
    }
}

/// A regex for L(m) by state elimination. Interior states are removed
/// cheapest first, where the cost of a state is its in-degree times its
/// out-degree (self-loops excluded); ties go to the lower state index.
pub fn nfa_to_regex(m: &FiniteAutomaton) -> Regex {
    let n = m.num_states();
    let mut g = build_gnfa(m);
    let mut interior: BTreeSet<usize> = (0..n).filter(|&s| s != m.start()).collect();
    while let Some(&s) = interior
        .iter()
        .min_by_key(|&&s| (g.degree_product(s), s))
    {
        interior.remove(&s);
        g.eliminate(s);
    }
    finish(g, m.start(), n)
}

/// State elimination in a caller-chosen order, which must list every state
/// except the start exactly once.
pub fn nfa_to_regex_with_order(m: &FiniteAutomaton, order: &[StateId]) -> Result<Regex> {
    let n = m.num_states();
    let expected: BTreeSet<usize> = (0..n).filter(|&s| s != m.start()).collect();
    let given: BTreeSet<usize> = order.iter().copied().collect();
    if given != expected || order.len() != expected.len() {
        return Err(Error::input(
            "elimination order must list every non-start state exactly once",
        ));
    }
    let mut g = build_gnfa(m);
    for &s in order {
        g.eliminate(s);
    }
    Ok(finish(g, m.start(), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn re(s: &str) -> Regex {
        s.parse().unwrap()
    }

    #[test]
    fn parse_shape() {
        let sym = |c| Regex::Symbol(c);
        let expected = Regex::concat(
            Regex::star(Regex::union(sym('a'), Regex::concat(sym('b'), sym('a')))),
            Regex::union(Regex::Epsilon, sym('b')),
        );
        assert_eq!(re("(a+ba)*(_+b)"), expected);
        assert_eq!(re("_"), Regex::Epsilon);
        assert_eq!(re("∅"), Regex::Empty);
    }

    #[test]
    fn parse_errors_have_positions() {
        for (text, pos) in [("a+", 2), ("(ab", 3), ("ab)", 2), ("*a", 0), ("a+*", 2), ("()", 1)] {
            match text.parse::<Regex>() {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_reparses() {
        for text in ["(a+ba)*(_+b)", "a**", "(ab)*+∅", "a(b+c)d", "(a+b)(a+b)*"] {
            let r = re(text);
            assert_eq!(re(&r.to_string()), r, "{text} -> {r}");
        }
    }

    #[test]
    fn matching() {
        assert!(regex_match(&re("(a+ba)*(_+b)"), "bab"));
        assert!(!regex_match(&re("(a+ba)*(_+b)"), "abb"));
        assert!(!regex_match(&re("@"), ""));
        assert!(regex_match(&re("_"), ""));
        assert!(!regex_match(&re("a*"), "ac"));
    }

    #[test]
    fn both_no_bb_expressions() {
        let target = corpus::no_bb();
        for text in ["(a+ba)*(_+b)", "(_+b)(aa*b)*a*"] {
            let m = regex_to_nfa_over(&re(text), target.alphabet().iter().copied());
            let d = fa::determinize(&m, AcceptanceMode::Exists).unwrap();
            assert_eq!(fa::equivalence_check(&d, &target).unwrap(), None, "{text}");
        }
    }

    #[test]
    fn empty_accepting_set_gives_empty_language() {
        let mut b = FaBuilder::new();
        b.start("p").edge("p", 'a', "q").edge("q", 'b', "p");
        let m = b.build(Kind::Deterministic).unwrap();
        assert_eq!(nfa_to_regex(&m), Regex::Empty);
    }

    #[test]
    fn elimination_orders_agree() {
        let m = corpus::no_c_before_a();
        let r1 = nfa_to_regex(&m);
        let order: Vec<usize> = (0..m.num_states()).rev().filter(|&s| s != m.start()).collect();
        let r2 = nfa_to_regex_with_order(&m, &order).unwrap();
        let alpha = m.alphabet().iter().copied().collect::<Vec<_>>();
        let d1 = fa::determinize(&regex_to_nfa_over(&r1, alpha.clone()), AcceptanceMode::Exists).unwrap();
        let d2 = fa::determinize(&regex_to_nfa_over(&r2, alpha), AcceptanceMode::Exists).unwrap();
        assert_eq!(fa::equivalence_check(&d1, &d2).unwrap(), None);
        assert!(nfa_to_regex_with_order(&m, &[0]).is_err());
    }
}
