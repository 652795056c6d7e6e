//! Grammars over single-character terminals.
//!
//! One [`Grammar`] type covers context-free, regular, Chomsky, Greibach and
//! noncontracting grammars; the [`GrammarClass`] flag says which shape the
//! rules are promised to have and is checked on construction.

mod closure;
mod count;
mod cyk;
mod generate;
mod normal;
mod pump;
mod regular;

pub use closure::{concatenation, reversal, star, union};
pub use count::{count_derivations_by_length, count_words, dyck_coefficient, CountMode};
pub use cyk::{count_parse_trees, cyk_member, enumerate_parse_trees, ParseTree};
pub use generate::{generate_words, DEFAULT_WORD_BUDGET};
pub use normal::{nullable_variables, to_cnf, to_gnf, trim};
pub use pump::{cfl_pump_decompose, CflPumpDecomposition};
pub use regular::{nfa_to_regular_grammar, regular_grammar_to_nfa};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub type VarId = usize;

/// A grammar symbol: a variable (by index) or a terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Var(VarId),
    Term(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: Vec<Sym>,
    pub rhs: Vec<Sym>,
}

impl Rule {
    pub fn new(lhs: Vec<Sym>, rhs: Vec<Sym>) -> Self {
        Rule { lhs, rhs }
    }

    /// The variable on the left of a context-free rule.
    pub fn head(&self) -> Option<VarId> {
        match self.lhs.as_slice() {
            [Sym::Var(v)] => Some(*v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrammarClass {
    ContextFree,
    Regular,
    Cnf,
    Gnf,
    Noncontracting,
}

impl GrammarClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GrammarClass::ContextFree => "cfg",
            GrammarClass::Regular => "regular",
            GrammarClass::Cnf => "cnf",
            GrammarClass::Gnf => "gnf",
            GrammarClass::Noncontracting => "noncontracting",
        }
    }
}

impl std::str::FromStr for GrammarClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cfg" => GrammarClass::ContextFree,
            "regular" => GrammarClass::Regular,
            "cnf" => GrammarClass::Cnf,
            "gnf" => GrammarClass::Gnf,
            "noncontracting" => GrammarClass::Noncontracting,
            other => return Err(Error::validation(format!("unknown grammar class `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    variables: Vec<String>,
    terminals: BTreeSet<char>,
    start: VarId,
    rules: Vec<Rule>,
    class: GrammarClass,
}

impl Grammar {
    /// Builds and validates a grammar. Duplicate rules are merged.
    pub fn new(
        class: GrammarClass,
        variables: Vec<String>,
        terminals: impl IntoIterator<Item = char>,
        start: VarId,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Self> {
        let terminals: BTreeSet<char> = terminals.into_iter().collect();
        let mut seen = HashMap::new();
        for (i, v) in variables.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::validation(format!("duplicate variable `{v}`")));
            }
            let mut chars = v.chars();
            if let (Some(c), None) = (chars.next(), chars.next()) {
                if terminals.contains(&c) {
                    return Err(Error::validation(format!(
                        "`{v}` is both a variable and a terminal"
                    )));
                }
            }
        }
        if start >= variables.len() {
            return Err(Error::validation("start symbol is not a variable"));
        }
        let mut unique = BTreeSet::new();
        let mut kept = Vec::new();
        for rule in rules {
            if rule.lhs.is_empty() {
                return Err(Error::validation("rule with empty left-hand side"));
            }
            for sym in rule.lhs.iter().chain(&rule.rhs) {
                match *sym {
                    Sym::Var(v) if v >= variables.len() => {
                        return Err(Error::validation(format!("rule uses unknown variable {v}")))
                    }
                    Sym::Term(c) if !terminals.contains(&c) => {
                        return Err(Error::validation(format!("rule uses unknown terminal `{c}`")))
                    }
                    _ => {}
                }
            }
            if unique.insert(rule.clone()) {
                kept.push(rule);
            }
        }
        let g = Grammar {
            variables,
            terminals,
            start,
            rules: kept,
            class,
        };
        g.check_class(class)?;
        Ok(g)
    }

    /// Parses a compact rule list such as `S -> aSb | ε; T -> TT`.
    ///
    /// Rules are separated by `;` or newlines. A variable is an uppercase
    /// ASCII letter optionally followed by digits or primes; `ε` stands for
    /// nothing; every other non-blank character except `|` is a terminal.
    /// The start symbol is the left-hand side of the first rule.
    pub fn from_text(class: GrammarClass, text: &str) -> Result<Self> {
        let mut variables: Vec<String> = Vec::new();
        let mut terminals = BTreeSet::new();
        let mut rules = Vec::new();
        let intern = |name: String, variables: &mut Vec<String>| -> VarId {
            match variables.iter().position(|v| *v == name) {
                Some(i) => i,
                None => {
                    variables.push(name);
                    variables.len() - 1
                }
            }
        };
        let mut tokenize = |s: &str, variables: &mut Vec<String>| -> Vec<Sym> {
            let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
            let mut out = Vec::new();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                i += 1;
                if c == 'ε' {
                    continue;
                }
                if c.is_ascii_uppercase() {
                    let mut name = c.to_string();
                    while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '\'') {
                        name.push(chars[i]);
                        i += 1;
                    }
                    out.push(Sym::Var(intern(name, variables)));
                } else {
                    terminals.insert(c);
                    out.push(Sym::Term(c));
                }
            }
            out
        };
        for line in text.split([';', '\n']) {
            if line.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
                Error::Parse {
                    position: 0,
                    message: format!("rule `{}` has no `->`", line.trim()),
                }
            })?;
            let lhs = tokenize(lhs, &mut variables);
            for alt in rhs.split('|') {
                let rhs = tokenize(alt, &mut variables);
                rules.push(Rule::new(lhs.clone(), rhs));
            }
        }
        if variables.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "grammar has no rules".into(),
            });
        }
        Grammar::new(class, variables, terminals, 0, rules)
    }

    pub fn class(&self) -> GrammarClass {
        self.class
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.variables[v]
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn terminals(&self) -> &BTreeSet<char> {
        &self.terminals
    }

    pub fn start(&self) -> VarId {
        self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Right-hand sides of the context-free rules for `v`.
    pub fn alternatives(&self, v: VarId) -> impl Iterator<Item = (usize, &[Sym])> + '_ {
        self.rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.head() == Some(v))
            .map(|(i, r)| (i, r.rhs.as_slice()))
    }

    pub fn has_start_epsilon(&self) -> bool {
        self.alternatives(self.start).any(|(_, rhs)| rhs.is_empty())
    }

    /// The same grammar under another class flag, revalidated.
    pub fn with_class(&self, class: GrammarClass) -> Result<Self> {
        self.check_class(class)?;
        let mut g = self.clone();
        g.class = class;
        Ok(g)
    }

    pub fn is_context_free(&self) -> bool {
        self.rules.iter().all(|r| r.head().is_some())
    }

    fn start_in_rhs(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.rhs.contains(&Sym::Var(self.start)))
    }

    /// An ε-rule is tolerated only as `S → ε` with `S` absent from every
    /// right-hand side.
    fn epsilon_ok(&self, r: &Rule) -> bool {
        r.head() == Some(self.start) && !self.start_in_rhs()
    }

    /// Whether the rules have the shape promised by `class`, with the
    /// offending rule in the error.
    pub fn check_class(&self, class: GrammarClass) -> Result<()> {
        for r in &self.rules {
            let ok = match class {
                GrammarClass::ContextFree => r.head().is_some(),
                GrammarClass::Regular => {
                    r.head().is_some()
                        && matches!(r.rhs.as_slice(), [] | [Sym::Term(_), Sym::Var(_)])
                }
                GrammarClass::Cnf => {
                    r.head().is_some()
                        && match r.rhs.as_slice() {
                            [Sym::Term(_)] | [Sym::Var(_), Sym::Var(_)] => true,
                            [] => self.epsilon_ok(r),
                            _ => false,
                        }
                }
                GrammarClass::Gnf => {
                    r.head().is_some()
                        && match r.rhs.split_first() {
                            Some((Sym::Term(_), rest)) => {
                                rest.iter().all(|s| matches!(s, Sym::Var(_)))
                            }
                            None => self.epsilon_ok(r),
                            _ => false,
                        }
                }
                GrammarClass::Noncontracting => {
                    r.lhs.len() <= r.rhs.len()
                        || (r.rhs.is_empty() && self.epsilon_ok(r))
                }
            };
            if !ok {
                return Err(Error::validation(format!(
                    "rule `{}` does not fit the {} class",
                    self.show_rule(r),
                    class.as_str()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn require_cnf(&self, op: &str) -> Result<()> {
        self.check_class(GrammarClass::Cnf)
            .map_err(|_| Error::structure(format!("{op} needs a grammar in Chomsky normal form")))
    }

    pub(crate) fn require_context_free(&self, op: &str) -> Result<()> {
        if self.is_context_free() {
            Ok(())
        } else {
            Err(Error::structure(format!(
                "{op} needs a context-free grammar"
            )))
        }
    }

    pub fn show_sym(&self, s: Sym) -> String {
        match s {
            Sym::Var(v) => self.variables[v].clone(),
            Sym::Term(c) => c.to_string(),
        }
    }

    pub fn show_rule(&self, r: &Rule) -> String {
        let side = |syms: &[Sym]| {
            if syms.is_empty() {
                "ε".to_string()
            } else {
                syms.iter().map(|&s| self.show_sym(s)).collect::<Vec<_>>().join(" ")
            }
        };
        format!("{} → {}", side(&r.lhs), side(&r.rhs))
    }

    /// Rebuilds a grammar from per-variable alternatives, keeping only
    /// variables that occur. Used by the normal-form constructions.
    pub(crate) fn from_alternatives(
        class: GrammarClass,
        names: Vec<String>,
        terminals: &BTreeSet<char>,
        start: VarId,
        alts: &[BTreeSet<Vec<Sym>>],
    ) -> Result<Self> {
        let mut used = vec![false; names.len()];
        used[start] = true;
        for (v, set) in alts.iter().enumerate() {
            if set.is_empty() {
                continue;
            }
            used[v] = true;
            for rhs in set {
                for s in rhs {
                    if let Sym::Var(x) = s {
                        used[*x] = true;
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; names.len()];
        let mut kept = Vec::new();
        for (v, name) in names.into_iter().enumerate() {
            if used[v] {
                map[v] = kept.len();
                kept.push(name);
            }
        }
        let remap = |s: &Sym| match *s {
            Sym::Var(x) => Sym::Var(map[x]),
            t => t,
        };
        let mut rules = Vec::new();
        for (v, set) in alts.iter().enumerate() {
            for rhs in set {
                rules.push(Rule::new(
                    vec![Sym::Var(map[v])],
                    rhs.iter().map(remap).collect(),
                ));
            }
        }
        Grammar::new(class, kept, terminals.iter().copied(), map[start], rules)
    }

    /// Per-variable alternatives of a context-free grammar.
    pub(crate) fn alternative_sets(&self) -> Vec<BTreeSet<Vec<Sym>>> {
        let mut alts = vec![BTreeSet::new(); self.variables.len()];
        for r in &self.rules {
            if let Some(v) = r.head() {
                alts[v].insert(r.rhs.clone());
            }
        }
        alts
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", self.show_rule(r))?;
        }
        Ok(())
    }
}

/// `base` or a tagged variant of it that is not yet in `names`.
pub(crate) fn fresh_var(names: &[String], base: &str) -> String {
    crate::fa::fresh_name(names, base)
}
