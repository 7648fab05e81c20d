//! Term languages: variables, function symbols whose arities are sets of
//! variables (indicia), terms, term tuples and substitution.
//!
//! A tuple `I → J` is indexed by `J` and has entries whose variables lie in
//! `I`. Composing `s : I → J` then `r : J → K` substitutes the entries of
//! `s` into the entries of `r`.

mod fol;
mod lawvere;
mod monad;
mod morphism;

pub use fol::{pullback_fol, EquationalPresentation, Equation, ExpressionLanguage, FolLanguage};
pub use lawvere::{lawvere_fragment, lawvere_functor, LawvereFragment};
pub use monad::{check_term_monad_laws, check_term_monad_laws_with, MonadReport, MonadViolation};
pub use morphism::{
    apply_morphism, apply_morphism_tuple, coproduct_languages, enumerate_morphisms, ArityNaturality, Coproduct,
    TermLanguageMorphism,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const MAX_VARIABLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("tuple index does not cover the term's variables")]
    IndexMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(usize),
    #[error("unknown symbol {0}")]
    UnknownSymbol(usize),
    #[error("symbol {0} applied to the wrong number of arguments")]
    ArityMismatch(usize),
    #[error("an entry uses variables outside the tuple's domain")]
    DomainViolation,
    #[error("too many variables")]
    TooManyVariables,
    #[error("name {0} declared twice")]
    DuplicateName(String),
    #[error("arity of {0} is not a set of variables")]
    BadArity(String),
    #[error("variable map is not a bijection")]
    NotABijection,
    #[error("languages have different variables")]
    VariableMismatch,
    #[error("symbol {0} is mapped to a symbol of different arity")]
    ArityNotPreserved(usize),
}

/// A set of variables, as a bit mask over variable indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indicia(pub u64);

impl Indicia {
    pub const EMPTY: Indicia = Indicia(0);

    pub fn full(n: usize) -> Indicia {
        if n >= 64 {
            Indicia(u64::MAX)
        } else {
            Indicia((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Indicia {
        Indicia(1 << v)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Indicia {
        Indicia(vars.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn union(self, other: Indicia) -> Indicia {
        Indicia(self.0 | other.0)
    }

    pub fn is_subset(self, other: Indicia) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Variables in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&v| self.contains(v))
    }

    /// Position of `v` among the members.
    pub fn rank(self, v: usize) -> Option<usize> {
        self.contains(v).then(|| (self.0 & ((1u64 << v) - 1)).count_ones() as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermLanguage {
    pub variables: Vec<String>,
    pub symbols: Vec<String>,
    pub arity: Vec<Indicia>,
}

impl TermLanguage {
    pub fn new(variables: Vec<String>, symbols: Vec<(String, Vec<String>)>) -> Result<Self, TermError> {
        if variables.len() > MAX_VARIABLES {
            return Err(TermError::TooManyVariables);
        }
        let mut names: Vec<&String> = variables.iter().chain(symbols.iter().map(|s| &s.0)).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(TermError::DuplicateName(w[0].clone()));
        }
        let mut arity = Vec::with_capacity(symbols.len());
        for (name, vars) in &symbols {
            let mut a = Indicia::EMPTY;
            for v in vars {
                let i = variables.iter().position(|x| x == v).ok_or_else(|| TermError::BadArity(name.clone()))?;
                a = a.union(Indicia::singleton(i));
            }
            arity.push(a);
        }
        Ok(TermLanguage { variables, symbols: symbols.into_iter().map(|s| s.0).collect(), arity })
    }

    pub fn from_indicia(variables: Vec<String>, symbols: Vec<String>, arity: Vec<Indicia>) -> Result<Self, TermError> {
        let names = symbols
            .iter()
            .zip(&arity)
            .map(|(s, a)| (s.clone(), a.iter().map(|v| variables.get(v).cloned().unwrap_or_default()).collect()))
            .collect();
        if symbols.len() != arity.len() || arity.iter().any(|a| !a.is_subset(Indicia::full(variables.len()))) {
            return Err(TermError::BadArity(String::new()));
        }
        TermLanguage::new(variables, names)
    }

    pub fn all_vars(&self) -> Indicia {
        Indicia::full(self.variables.len())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn check_term(&self, t: &Term) -> Result<(), TermError> {
        match t {
            Term::Var(v) if *v < self.variables.len() => Ok(()),
            Term::Var(v) => Err(TermError::UnknownVariable(*v)),
            Term::App(f, args) => {
                let a = self.arity.get(*f).ok_or(TermError::UnknownSymbol(*f))?;
                if a.len() != args.len() {
                    return Err(TermError::ArityMismatch(*f));
                }
                args.iter().try_for_each(|x| self.check_term(x))
            }
        }
    }

    pub fn check_tuple(&self, s: &TermTuple) -> Result<(), TermError> {
        let all = self.all_vars();
        if !s.domain.is_subset(all) || !s.index.is_subset(all) {
            return Err(TermError::UnknownVariable(self.variables.len()));
        }
        s.entries.iter().try_for_each(|t| self.check_term(t))
    }

    /// Printed as an s-expression; constants print as bare names.
    pub fn display<'a>(&'a self, t: &'a Term) -> TermDisplay<'a> {
        TermDisplay { lang: self, term: t }
    }
}

/// A term. The arguments of an application are listed in increasing order
/// of the variables in the symbol's arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn depth(&self) -> u32 {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// The variables occurring in `t`.
pub fn term_arity(t: &Term) -> Indicia {
    match t {
        Term::Var(v) => Indicia::singleton(*v),
        Term::App(_, args) => args.iter().fold(Indicia::EMPTY, |acc, a| acc.union(term_arity(a))),
    }
}

pub struct TermDisplay<'a> {
    lang: &'a TermLanguage,
    term: &'a Term,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => f.write_str(&self.lang.variables[*v]),
            Term::App(s, args) if args.is_empty() => f.write_str(&self.lang.symbols[*s]),
            Term::App(s, args) => {
                write!(f, "({}", self.lang.symbols[*s])?;
                for a in args {
                    write!(f, " {}", self.lang.display(a))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A `J`-indexed tuple of terms over `I`, as a morphism `I → J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermTuple {
    pub domain: Indicia,
    pub index: Indicia,
    /// In increasing order of the index variables.
    pub entries: Vec<Term>,
}

impl TermTuple {
    pub fn new(domain: Indicia, index: Indicia, entries: Vec<Term>) -> Result<Self, TermError> {
        if entries.len() != index.len() {
            return Err(TermError::IndexMismatch);
        }
        if entries.iter().any(|t| !term_arity(t).is_subset(domain)) {
            return Err(TermError::DomainViolation);
        }
        Ok(TermTuple { domain, index, entries })
    }

    pub fn identity(i: Indicia) -> Self {
        TermTuple { domain: i, index: i, entries: i.iter().map(Term::Var).collect() }
    }

    /// The one-entry tuple `v ↦ t` over the variables of `t`.
    pub fn singleton(v: usize, t: Term) -> Self {
        TermTuple { domain: term_arity(&t), index: Indicia::singleton(v), entries: alloc::vec![t] }
    }

    pub fn entry(&self, v: usize) -> Option<&Term> {
        self.index.rank(v).map(|r| &self.entries[r])
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(Term::depth).max().unwrap_or(0)
    }
}

/// Replace each variable of `t` by its entry in `s`.
pub fn substitute(t: &Term, s: &TermTuple) -> Result<Term, TermError> {
    if !term_arity(t).is_subset(s.index) {
        return Err(TermError::IndexMismatch);
    }
    Ok(subst_unchecked(t, s))
}

fn subst_unchecked(t: &Term, s: &TermTuple) -> Term {
    match t {
        Term::Var(v) => s.entry(*v).expect("index covers term").clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| subst_unchecked(a, s)).collect()),
    }
}

/// `s : I → J` then `r : J → K`, giving `I → K`.
pub fn tuple_compose(s: &TermTuple, r: &TermTuple) -> Result<TermTuple, TermError> {
    if r.domain != s.index {
        return Err(TermError::IndexMismatch);
    }
    Ok(TermTuple { domain: s.domain, index: r.index, entries: r.entries.iter().map(|e| subst_unchecked(e, s)).collect() })
}

/// Every term over `vars` of depth at most `depth`, by increasing depth.
pub fn enumerate_terms(lang: &TermLanguage, vars: Indicia, depth: u32) -> Vec<Term> {
    let mut all: Vec<Term> = vars.iter().map(Term::Var).collect();
    // Start of the terms of depth exactly k - 1.
    let mut prev_start = 0;
    for k in 1..=depth {
        let below = all.clone();
        let cur_start = all.len();
        for (f, a) in lang.arity.iter().enumerate() {
            let n = a.len();
            if n == 0 {
                if k == 1 {
                    all.push(Term::App(f, Vec::new()));
                }
                continue;
            }
            if below.len() == prev_start {
                continue;
            }
            let mut pick = alloc::vec![0usize; n];
            loop {
                if pick.iter().any(|&i| i >= prev_start) {
                    all.push(Term::App(f, pick.iter().map(|&i| below[i].clone()).collect()));
                }
                let Some(k) = (0..n).rev().find(|&k| pick[k] + 1 < below.len()) else { break };
                pick[k] += 1;
                pick[k + 1..].iter_mut().for_each(|p| *p = 0);
            }
        }
        prev_start = cur_start;
    }
    all
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    pub(crate) fn lang(vars: &[&str], syms: &[(&str, &[&str])]) -> TermLanguage {
        TermLanguage::new(
            vars.iter().map(|s| s.to_string()).collect(),
            syms.iter().map(|(f, a)| (f.to_string(), a.iter().map(|s| s.to_string()).collect())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn arity_of_terms() {
        let x = Term::Var(0);
        assert_eq!(term_arity(&x), Indicia::singleton(0));
        let fxy = Term::App(0, vec![Term::Var(0), Term::Var(1)]);
        assert_eq!(term_arity(&fxy), Indicia::full(2));
        let nested = Term::App(0, vec![Term::App(1, vec![Term::Var(0)]), Term::Var(0)]);
        assert_eq!(term_arity(&nested), Indicia::singleton(0));
        assert_eq!(nested.depth(), 2);
    }

    #[test]
    fn substitution_examples() {
        let x = Term::Var(0);
        assert_eq!(substitute(&x, &TermTuple::identity(Indicia::singleton(0))).unwrap(), x);
        let fx = Term::App(0, vec![Term::Var(0)]);
        let gy = Term::App(1, vec![Term::Var(1)]);
        let s = TermTuple::new(Indicia::singleton(1), Indicia::singleton(0), vec![gy.clone()]).unwrap();
        assert_eq!(substitute(&fx, &s).unwrap(), Term::App(0, vec![gy]));
        let only_y = TermTuple::identity(Indicia::singleton(1));
        assert_eq!(substitute(&fx, &only_y), Err(TermError::IndexMismatch));
    }

    #[test]
    fn tuple_composition() {
        let x = Indicia::singleton(0);
        let fx = Term::App(0, vec![Term::Var(0)]);
        let s = TermTuple::new(x, x, vec![fx.clone()]).unwrap();
        let id = TermTuple::identity(x);
        assert_eq!(tuple_compose(&id, &s).unwrap(), s);
        assert_eq!(tuple_compose(&s, &id).unwrap(), s);
        let ss = tuple_compose(&s, &s).unwrap();
        assert_eq!(ss.entries, vec![Term::App(0, vec![fx])]);
        let wrong = TermTuple::identity(Indicia::singleton(1));
        assert_eq!(tuple_compose(&wrong, &s), Err(TermError::IndexMismatch));
    }

    #[test]
    fn enumeration_counts() {
        let l = lang(&["x"], &[("f", &["x"])]);
        let ts = enumerate_terms(&l, Indicia::singleton(0), 2);
        assert_eq!(ts.len(), 3);
        let l2 = lang(&["x", "y"], &[("f", &["x", "y"]), ("g", &["x", "y"])]);
        assert_eq!(enumerate_terms(&l2, Indicia::full(2), 2).len(), 202);
        assert_eq!(enumerate_terms(&l2, Indicia::singleton(0), 2).len(), 19);
        assert_eq!(enumerate_terms(&l2, Indicia::EMPTY, 2).len(), 0);
        let c = lang(&["x"], &[("c", &[]), ("f", &["x"])]);
        let ts = enumerate_terms(&c, Indicia::EMPTY, 2);
        assert_eq!(ts.len(), 2);
        assert!(ts.iter().all(|t| t.depth() <= 2));
        let mut sorted = ts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ts.len());
    }

    #[test]
    fn display_and_validation() {
        let l = lang(&["x", "y"], &[("f", &["x", "y"]), ("c", &[])]);
        let t = Term::App(0, vec![Term::App(1, vec![]), Term::Var(1)]);
        assert_eq!(l.display(&t).to_string(), "(f c y)");
        assert!(l.check_term(&t).is_ok());
        assert_eq!(l.check_term(&Term::App(0, vec![])), Err(TermError::ArityMismatch(0)));
        assert!(matches!(
            TermLanguage::new(vec!["x".into(), "x".into()], vec![]),
            Err(TermError::DuplicateName(_))
        ));
    }
}
