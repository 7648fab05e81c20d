use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{free_variables, Binding, MetaSentence, MetaTerm, SentenceKind, SourceSpan, TermKind};

/// Problems found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    /// A quantifier guard that does not mention the variable it restricts.
    GuardMissesVariable { var: String, span: SourceSpan },
    /// The same variable bound twice in one binding list.
    DuplicateBinding { var: String, span: SourceSpan },
    /// A variable not bound by any enclosing quantifier.
    FreeVariable { var: String, span: SourceSpan },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::GuardMissesVariable { var, span } => {
                write!(f, "{span}: guard of {var} does not mention it")
            }
            ValidationIssue::DuplicateBinding { var, span } => write!(f, "{span}: {var} bound twice"),
            ValidationIssue::FreeVariable { var, span } => write!(f, "{span}: {var} is free"),
        }
    }
}

/// Check restricted quantification and closedness.
pub fn validate(s: &MetaSentence) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    check_bindings(s, &mut issues);
    for var in free_variables(s) {
        issues.push(ValidationIssue::FreeVariable { span: find_variable(s, &var).unwrap_or_else(|| s.span.clone()), var });
    }
    issues
}

fn check_bindings(s: &MetaSentence, issues: &mut Vec<ValidationIssue>) {
    match &s.kind {
        SentenceKind::Atom { .. } | SentenceKind::Equal(..) => {}
        SentenceKind::Not(inner) => check_bindings(inner, issues),
        SentenceKind::And(items) | SentenceKind::Or(items) => items.iter().for_each(|i| check_bindings(i, issues)),
        SentenceKind::Implies(a, b) | SentenceKind::Iff(a, b) => {
            check_bindings(a, issues);
            check_bindings(b, issues);
        }
        SentenceKind::Forall(bindings, body) | SentenceKind::Exists(bindings, body) => {
            let mut seen = BTreeSet::new();
            for Binding { var, guard, span } in bindings {
                if !seen.insert(var.as_str()) {
                    issues.push(ValidationIssue::DuplicateBinding { var: var.clone(), span: span.clone() });
                }
                if !free_variables(guard).contains(var) {
                    issues.push(ValidationIssue::GuardMissesVariable { var: var.clone(), span: span.clone() });
                }
                check_bindings(guard, issues);
            }
            check_bindings(body, issues);
        }
    }
}

fn find_variable(s: &MetaSentence, var: &str) -> Option<SourceSpan> {
    fn in_term(t: &MetaTerm, var: &str) -> Option<SourceSpan> {
        match &t.kind {
            TermKind::Variable(v) if v == var => Some(t.span.clone()),
            TermKind::Variable(_) | TermKind::Constant(_) => None,
            TermKind::Application { args, .. } | TermKind::Tuple(args) => args.iter().find_map(|a| in_term(a, var)),
        }
    }
    match &s.kind {
        SentenceKind::Atom { args, .. } => args.iter().find_map(|a| in_term(a, var)),
        SentenceKind::Equal(a, b) => in_term(a, var).or_else(|| in_term(b, var)),
        SentenceKind::Not(inner) => find_variable(inner, var),
        SentenceKind::And(items) | SentenceKind::Or(items) => items.iter().find_map(|i| find_variable(i, var)),
        SentenceKind::Implies(a, b) | SentenceKind::Iff(a, b) => find_variable(a, var).or_else(|| find_variable(b, var)),
        SentenceKind::Forall(bs, body) | SentenceKind::Exists(bs, body) => {
            if bs.iter().any(|b| b.var == var) {
                None
            } else {
                bs.iter().find_map(|b| find_variable(&b.guard, var)).or_else(|| find_variable(body, var))
            }
        }
    }
}

/// Constructs that break the categorical design principle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construct {
    Forall,
    Exists,
    And,
    Or,
    Implies,
    Iff,
    Not,
    Variable,
}

impl Construct {
    pub fn name(self) -> &'static str {
        match self {
            Construct::Forall => "forall",
            Construct::Exists => "exists",
            Construct::And => "and",
            Construct::Or => "or",
            Construct::Implies => "implies",
            Construct::Iff => "iff",
            Construct::Not => "not",
            Construct::Variable => "variable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplianceRecord {
    pub index: usize,
    pub span: SourceSpan,
    pub compliant: bool,
    pub offending: BTreeSet<Construct>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplianceReport {
    pub records: Vec<ComplianceRecord>,
}

impl ComplianceReport {
    pub fn compliant_count(&self) -> usize {
        self.records.iter().filter(|r| r.compliant).count()
    }

    pub fn total(&self) -> usize {
        self.records.len()
    }

    /// Fraction of compliant sentences; 1 for an empty report.
    pub fn ratio(&self) -> f64 {
        if self.records.is_empty() {
            1.0
        } else {
            self.compliant_count() as f64 / self.total() as f64
        }
    }
}

fn term_constructs(t: &MetaTerm, out: &mut BTreeSet<Construct>) {
    match &t.kind {
        TermKind::Variable(_) => {
            out.insert(Construct::Variable);
        }
        TermKind::Constant(_) => {}
        TermKind::Application { args, .. } | TermKind::Tuple(args) => args.iter().for_each(|a| term_constructs(a, out)),
    }
}

fn sentence_constructs(s: &MetaSentence, out: &mut BTreeSet<Construct>) {
    match &s.kind {
        SentenceKind::Atom { args, .. } => args.iter().for_each(|a| term_constructs(a, out)),
        SentenceKind::Equal(a, b) => {
            term_constructs(a, out);
            term_constructs(b, out);
        }
        SentenceKind::Not(inner) => {
            out.insert(Construct::Not);
            sentence_constructs(inner, out);
        }
        SentenceKind::And(items) | SentenceKind::Or(items) => {
            out.insert(if matches!(s.kind, SentenceKind::And(_)) { Construct::And } else { Construct::Or });
            items.iter().for_each(|i| sentence_constructs(i, out));
        }
        SentenceKind::Implies(a, b) | SentenceKind::Iff(a, b) => {
            out.insert(if matches!(s.kind, SentenceKind::Implies(..)) { Construct::Implies } else { Construct::Iff });
            sentence_constructs(a, out);
            sentence_constructs(b, out);
        }
        SentenceKind::Forall(bs, body) | SentenceKind::Exists(bs, body) => {
            out.insert(if matches!(s.kind, SentenceKind::Forall(..)) { Construct::Forall } else { Construct::Exists });
            bs.iter().for_each(|b| {
                out.insert(Construct::Variable);
                sentence_constructs(&b.guard, out);
            });
            sentence_constructs(body, out);
        }
    }
}

/// A sentence complies when it is an atom or an equation over variable-free
/// terms.
pub fn lint_categorical_design(sentences: &[MetaSentence]) -> ComplianceReport {
    let records = sentences
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let mut offending = BTreeSet::new();
            sentence_constructs(s, &mut offending);
            ComplianceRecord { index, span: s.span.clone(), compliant: offending.is_empty(), offending }
        })
        .collect();
    ComplianceReport { records }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use alloc::vec;

    const TABLE7: &str = "(forall (?c0 (collection ?c0) ?c1 (collection ?c1))
    (and (iff (isomorphic ?c0 ?c1)
              (exists (?f (vlrg.ftn:bijection ?f))
                  (and (= (source ?f) ?c0) (= (target ?f) ?c1))))))";

    #[test]
    fn quantified_sentence_is_non_compliant() {
        let s = parse_sentence(TABLE7).unwrap();
        let report = lint_categorical_design(&[s]);
        let r = &report.records[0];
        assert!(!r.compliant);
        let names: Vec<_> = r.offending.iter().map(|c| c.name()).collect();
        assert_eq!(names, vec!["forall", "exists", "and", "iff", "variable"]);
    }

    #[test]
    fn ground_equations_are_compliant() {
        let ss = parse_sentences("(vlrg.ftn:function graph)\n(= (vlrg.ftn:source graph) category)", None).unwrap();
        let report = lint_categorical_design(&ss);
        assert_eq!(report.compliant_count(), 2);
        assert_eq!(report.ratio(), 1.0);
        assert_eq!(lint_categorical_design(&[]).ratio(), 1.0);
        let with_var = parse_sentence("(= (source ?f) a)").unwrap();
        assert!(!lint_categorical_design(&[with_var]).records[0].compliant);
    }

    #[test]
    fn restricted_quantification_check() {
        assert!(validate(&parse_sentence(TABLE7).unwrap()).is_empty());
        assert!(validate(&parse_sentence("(forall (?x (object ?x)) (thing ?x))").unwrap()).is_empty());
        let bad = validate(&parse_sentence("(forall (?x (object a)) (thing ?x))").unwrap());
        assert!(matches!(bad.as_slice(), [ValidationIssue::GuardMissesVariable { var, .. }] if var == "?x"));
        let free = validate(&parse_sentence("(thing ?y)").unwrap());
        assert!(matches!(free.as_slice(), [ValidationIssue::FreeVariable { span, .. }] if span.column == 8));
        let dup = validate(&parse_sentence("(exists (?x (p ?x) ?x (q ?x)) (r ?x))").unwrap());
        assert!(dup.iter().any(|i| matches!(i, ValidationIssue::DuplicateBinding { .. })));
    }
}
