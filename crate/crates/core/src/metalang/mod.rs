//! The metashell: a lisp-like first-order language with restricted
//! quantification and namespaced identifiers.
//!
//! Sentences are read with [`parse_sentence`] / [`parse_sentences`], printed
//! with [`print_canonical`], and inspected with [`free_variables`],
//! [`validate`] and [`lint_categorical_design`].

mod lint;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use crate::sexpr::SourceSpan;
pub use lint::{lint_categorical_design, validate, ComplianceRecord, ComplianceReport, Construct, ValidationIssue};
pub use parse::{parse_sentence, parse_sentences, parse_term, sentence_from_sexpr, term_from_sexpr, ParseError, ParseErrorKind};
pub use print::{print_canonical, print_term};

/// Connectives, quantifiers and equality. Every other head symbol names a
/// predicate.
pub const KEYWORDS: [&str; 8] = ["and", "or", "implies", "iff", "not", "forall", "exists", "="];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NameError {
    #[error("empty name")]
    Empty,
    #[error("local name must be lowercase letters, digits and hyphens")]
    BadLocal,
    #[error("prefix segments must be all lowercase or all uppercase")]
    MixedCase,
    #[error("empty or malformed prefix segment")]
    BadSegment,
}

/// A possibly prefixed name such as `vlrg.ftn:function`, `CAT:category` or
/// `graph`.
///
/// `prefix_path` holds the lowercase-normalised dotted prefix; `raw` keeps
/// the surface text so that special (uppercase) prefixes survive printing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QualifiedName {
    pub prefix_path: Vec<String>,
    pub local: String,
    pub raw: String,
}

pub(crate) fn is_lower_segment(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

pub(crate) fn is_upper_segment(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '-')
        && s.chars().any(|c| c.is_ascii_uppercase())
}

impl QualifiedName {
    pub fn parse(raw: &str) -> Result<Self, NameError> {
        if raw.is_empty() {
            return Err(NameError::Empty);
        }
        let (prefix, local) = match raw.rsplit_once(':') {
            Some((p, l)) => (Some(p), l),
            None => (None, raw),
        };
        if !is_lower_segment(local) {
            return Err(NameError::BadLocal);
        }
        let mut prefix_path = Vec::new();
        if let Some(prefix) = prefix {
            let segments: Vec<&str> = prefix.split('.').collect();
            let upper = segments.iter().any(|s| s.chars().any(|c| c.is_ascii_uppercase()));
            for seg in segments {
                let ok = if upper { is_upper_segment(seg) || seg.chars().all(|c| c.is_ascii_digit()) } else { is_lower_segment(seg) };
                if !ok {
                    return Err(if seg.is_empty() || seg.contains(':') {
                        NameError::BadSegment
                    } else if upper {
                        NameError::MixedCase
                    } else {
                        NameError::BadSegment
                    });
                }
                prefix_path.push(seg.to_ascii_lowercase());
            }
        }
        Ok(QualifiedName { prefix_path, local: String::from(local), raw: String::from(raw) })
    }

    /// An unprefixed name. Panics if `local` is not a valid local name.
    pub fn simple(local: &str) -> Self {
        assert!(is_lower_segment(local), "invalid local name {local:?}");
        QualifiedName { prefix_path: Vec::new(), local: String::from(local), raw: String::from(local) }
    }

    pub fn is_qualified(&self) -> bool {
        !self.prefix_path.is_empty()
    }

    /// The prefix as written, e.g. `vlrg.ftn` or `SET.LIM.PBK`.
    pub fn prefix_text(&self) -> Option<&str> {
        self.raw.rsplit_once(':').map(|(p, _)| p)
    }

    /// True when the prefix is written in the uppercase special form.
    pub fn has_special_prefix(&self) -> bool {
        self.prefix_text().is_some_and(|p| p.chars().any(|c| c.is_ascii_uppercase()))
    }
}

impl fmt::Display for QualifiedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// Includes the leading `?`.
    Variable(String),
    Constant(QualifiedName),
    Application { head: QualifiedName, args: Vec<MetaTerm> },
    Tuple(Vec<MetaTerm>),
}

#[derive(Clone, Debug)]
pub struct MetaTerm {
    pub kind: TermKind,
    pub span: SourceSpan,
}

impl PartialEq for MetaTerm {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for MetaTerm {}

impl MetaTerm {
    pub fn new(kind: TermKind) -> Self {
        MetaTerm { kind, span: SourceSpan::default() }
    }
    pub fn var(name: &str) -> Self {
        Self::new(TermKind::Variable(String::from(name)))
    }
    pub fn constant(name: QualifiedName) -> Self {
        Self::new(TermKind::Constant(name))
    }
    pub fn app(head: QualifiedName, args: Vec<MetaTerm>) -> Self {
        Self::new(TermKind::Application { head, args })
    }
    pub fn tuple(items: Vec<MetaTerm>) -> Self {
        Self::new(TermKind::Tuple(items))
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match &self.kind {
            TermKind::Variable(v) => {
                out.insert(v.clone());
            }
            TermKind::Constant(_) => {}
            TermKind::Application { args, .. } | TermKind::Tuple(args) => {
                for a in args {
                    a.collect_variables(out);
                }
            }
        }
    }

    pub fn for_each_name(&self, f: &mut impl FnMut(&QualifiedName)) {
        match &self.kind {
            TermKind::Variable(_) => {}
            TermKind::Constant(n) => f(n),
            TermKind::Application { head, args } => {
                f(head);
                args.iter().for_each(|a| a.for_each_name(f));
            }
            TermKind::Tuple(args) => args.iter().for_each(|a| a.for_each_name(f)),
        }
    }
}

/// A quantifier binding `?x (guard ?x)`.
#[derive(Clone, Debug)]
pub struct Binding {
    pub var: String,
    pub guard: MetaSentence,
    pub span: SourceSpan,
}

impl PartialEq for Binding {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.guard == other.guard
    }
}
impl Eq for Binding {}

impl Binding {
    pub fn new(var: &str, guard: MetaSentence) -> Self {
        Binding { var: String::from(var), guard, span: SourceSpan::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SentenceKind {
    Atom { pred: QualifiedName, args: Vec<MetaTerm> },
    Equal(MetaTerm, MetaTerm),
    Not(Box<MetaSentence>),
    And(Vec<MetaSentence>),
    Or(Vec<MetaSentence>),
    Implies(Box<MetaSentence>, Box<MetaSentence>),
    Iff(Box<MetaSentence>, Box<MetaSentence>),
    Forall(Vec<Binding>, Box<MetaSentence>),
    Exists(Vec<Binding>, Box<MetaSentence>),
}

/// A metashell sentence. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct MetaSentence {
    pub kind: SentenceKind,
    pub span: SourceSpan,
}

impl PartialEq for MetaSentence {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for MetaSentence {}

impl MetaSentence {
    pub fn new(kind: SentenceKind) -> Self {
        MetaSentence { kind, span: SourceSpan::default() }
    }
    pub fn atom(pred: QualifiedName, args: Vec<MetaTerm>) -> Self {
        Self::new(SentenceKind::Atom { pred, args })
    }
    pub fn equal(lhs: MetaTerm, rhs: MetaTerm) -> Self {
        Self::new(SentenceKind::Equal(lhs, rhs))
    }
    pub fn not(inner: MetaSentence) -> Self {
        Self::new(SentenceKind::Not(Box::new(inner)))
    }
    pub fn and(items: Vec<MetaSentence>) -> Self {
        Self::new(SentenceKind::And(items))
    }
    pub fn or(items: Vec<MetaSentence>) -> Self {
        Self::new(SentenceKind::Or(items))
    }
    pub fn implies(lhs: MetaSentence, rhs: MetaSentence) -> Self {
        Self::new(SentenceKind::Implies(Box::new(lhs), Box::new(rhs)))
    }
    pub fn iff(lhs: MetaSentence, rhs: MetaSentence) -> Self {
        Self::new(SentenceKind::Iff(Box::new(lhs), Box::new(rhs)))
    }
    pub fn forall(bindings: Vec<Binding>, body: MetaSentence) -> Self {
        Self::new(SentenceKind::Forall(bindings, Box::new(body)))
    }
    pub fn exists(bindings: Vec<Binding>, body: MetaSentence) -> Self {
        Self::new(SentenceKind::Exists(bindings, Box::new(body)))
    }

    /// Every qualified name occurring in the sentence, including predicates
    /// and function heads, in left-to-right order.
    pub fn for_each_name(&self, f: &mut impl FnMut(&QualifiedName)) {
        match &self.kind {
            SentenceKind::Atom { pred, args } => {
                f(pred);
                args.iter().for_each(|a| a.for_each_name(f));
            }
            SentenceKind::Equal(a, b) => {
                a.for_each_name(f);
                b.for_each_name(f);
            }
            SentenceKind::Not(s) => s.for_each_name(f),
            SentenceKind::And(items) | SentenceKind::Or(items) => items.iter().for_each(|s| s.for_each_name(f)),
            SentenceKind::Implies(a, b) | SentenceKind::Iff(a, b) => {
                a.for_each_name(f);
                b.for_each_name(f);
            }
            SentenceKind::Forall(bs, body) | SentenceKind::Exists(bs, body) => {
                bs.iter().for_each(|b| b.guard.for_each_name(f));
                body.for_each_name(f);
            }
        }
    }
}

impl fmt::Display for MetaSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

impl fmt::Display for MetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Variables occurring outside any binder for them.
pub fn free_variables(s: &MetaSentence) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(s, &mut Vec::new(), &mut out);
    out
}

fn collect_free(s: &MetaSentence, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let add_term = |t: &MetaTerm, bound: &Vec<String>, out: &mut BTreeSet<String>| {
        let mut vs = BTreeSet::new();
        t.collect_variables(&mut vs);
        out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
    };
    match &s.kind {
        SentenceKind::Atom { args, .. } => args.iter().for_each(|a| add_term(a, bound, out)),
        SentenceKind::Equal(a, b) => {
            add_term(a, bound, out);
            add_term(b, bound, out);
        }
        SentenceKind::Not(inner) => collect_free(inner, bound, out),
        SentenceKind::And(items) | SentenceKind::Or(items) => {
            for item in items {
                collect_free(item, bound, out);
            }
        }
        SentenceKind::Implies(a, b) | SentenceKind::Iff(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        SentenceKind::Forall(bindings, body) | SentenceKind::Exists(bindings, body) => {
            let depth = bound.len();
            // Bindings scope sequentially: a guard sees its own variable and
            // every earlier one.
            for b in bindings {
                bound.push(b.var.clone());
                collect_free(&b.guard, bound, out);
            }
            collect_free(body, bound, out);
            bound.truncate(depth);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn qualified_names() {
        let n = QualifiedName::parse("vlrg.ftn:function").unwrap();
        assert_eq!(n.prefix_path, vec!["vlrg", "ftn"]);
        assert_eq!(n.local, "function");
        let s = QualifiedName::parse("SET.LIM.PBK:pullback").unwrap();
        assert_eq!(s.prefix_path, vec!["set", "lim", "pbk"]);
        assert!(s.has_special_prefix());
        assert_eq!(QualifiedName::parse("Set.lim:x"), Err(NameError::MixedCase));
        assert_eq!(QualifiedName::parse("a:B"), Err(NameError::BadLocal));
        assert_eq!(QualifiedName::parse("a..b:c"), Err(NameError::BadSegment));
        assert_eq!(QualifiedName::parse("lrg.gph.mor:2-cell").unwrap().local, "2-cell");
    }

    #[test]
    fn free_variables_examples() {
        let s = parse_sentence("(thing ?x)").unwrap();
        assert_eq!(free_variables(&s).into_iter().collect::<Vec<_>>(), vec!["?x"]);
        let s = parse_sentence("(forall (?x (object ?x)) (thing ?x))").unwrap();
        assert!(free_variables(&s).is_empty());
    }

    #[test]
    fn free_variables_of_inner_body() {
        let s = parse_sentence(
            "(forall (?c0 (collection ?c0) ?c1 (collection ?c1))
               (iff (isomorphic ?c0 ?c1)
                    (exists (?f (vlrg.ftn:bijection ?f))
                        (and (= (source ?f) ?c0) (= (target ?f) ?c1)))))",
        )
        .unwrap();
        let SentenceKind::Forall(_, body) = &s.kind else { panic!() };
        let free: Vec<_> = free_variables(body).into_iter().collect();
        assert_eq!(free, vec!["?c0", "?c1"]);
        assert!(free_variables(&s).is_empty());
    }
}
