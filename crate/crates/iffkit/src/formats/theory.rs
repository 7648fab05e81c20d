//! `(theory <id> (institution <name>) (signature ...) (axioms <sentence>...))`
//!
//! Axioms use the metalanguage sentence syntax. The institution defaults
//! to `prop`, whose signature lists atom names and whose sentences are
//! connectives over bare atoms, `true` and `false`. For `eqn` the
//! signature is a term-language body and every axiom an equation over
//! `?`-variables; `fol` adds `(relation <r> (arity ...))` declarations
//! and relational atoms.

use iffkit_core::institution::{Eqn, EqnSentence, FolMorphism, FolSentence, Institution, Prop, PropMorphism, PropSentence, PropSignature, Theory, TinyFol};
use iffkit_core::metalang::{is_keyword, print_canonical, sentence_from_sexpr, MetaSentence, MetaTerm, QualifiedName, SentenceKind, TermKind};
use iffkit_core::sexpr::{Sexpr, SourceSpan};
use iffkit_core::termlang::{pullback_fol, ExpressionLanguage, FolLanguage, Term, TermLanguage, TermLanguageMorphism};

use super::language::{arity_names, read_language_body, read_symbol, write_language_body};
use super::{distinct, expect_form, form_line, name, shape, shape_at, single_form, surface_name, FormatError};

/// An institution whose theories have a file syntax.
pub trait TheorySyntax: Institution + Sized {
    const KEYWORD: &'static str;

    fn read_signature(&self, items: &[Sexpr], at: &Sexpr) -> Result<Self::Signature, FormatError>;
    /// The items following `signature`.
    fn write_signature(&self, sig: &Self::Signature) -> Vec<String>;
    fn read_sentence(&self, sig: &Self::Signature, s: &MetaSentence) -> Result<Self::Sentence, FormatError>;
    fn write_sentence(&self, sig: &Self::Signature, s: &Self::Sentence) -> MetaSentence;
    /// Names missing from `pairs` map to the same name in the target.
    fn read_morphism(&self, source: &Self::Signature, target: &Self::Signature, pairs: &[(String, String)]) -> Result<Self::Morphism, String>;

    fn wrap(id: String, theory: Theory<Self>) -> TheoryFile;
    fn unwrap(file: TheoryFile) -> Option<(String, Theory<Self>)>;
}

#[derive(Clone, Debug)]
pub enum TheoryFile {
    Prop(String, Theory<Prop>),
    Eqn(String, Theory<Eqn>),
    Fol(String, Theory<TinyFol>),
}

impl TheoryFile {
    pub fn id(&self) -> &str {
        match self {
            TheoryFile::Prop(id, _) | TheoryFile::Eqn(id, _) | TheoryFile::Fol(id, _) => id,
        }
    }

    pub fn institution(&self) -> &'static str {
        match self {
            TheoryFile::Prop(..) => Prop::KEYWORD,
            TheoryFile::Eqn(..) => Eqn::KEYWORD,
            TheoryFile::Fol(..) => TinyFol::KEYWORD,
        }
    }

    pub fn print(&self) -> String {
        match self {
            TheoryFile::Prop(id, t) => print_theory(&Prop, id, t),
            TheoryFile::Eqn(id, t) => print_theory(&Eqn, id, t),
            TheoryFile::Fol(id, t) => print_theory(&TinyFol, id, t),
        }
    }

    pub fn axiom_count(&self) -> usize {
        match self {
            TheoryFile::Prop(_, t) => t.axioms.len(),
            TheoryFile::Eqn(_, t) => t.axioms.len(),
            TheoryFile::Fol(_, t) => t.axioms.len(),
        }
    }
}

pub fn parse_theory(text: &str, file: Option<&str>) -> Result<TheoryFile, FormatError> {
    let form = single_form(text, file, "theory")?;
    theory_from_sexpr(&form)
}

pub fn theory_from_sexpr(form: &Sexpr) -> Result<TheoryFile, FormatError> {
    let body = expect_form(form, "theory")?;
    let (id, rest) = match body.split_first() {
        Some((id, rest)) => (name(id)?, rest),
        None => return shape(form, "theory needs an id"),
    };
    let (inst, rest) = match rest.split_first() {
        Some((x, tail)) if x.as_form().is_some_and(|(h, _)| h == "institution") => match expect_form(x, "institution")? {
            [n] => (name(n)?, tail),
            _ => return shape(x, "expected (institution <name>)"),
        },
        _ => (Prop::KEYWORD.to_string(), rest),
    };
    let [sig, axioms] = rest else {
        return shape(form, "expected (theory <id> (signature ...) (axioms ...))");
    };
    match inst.as_str() {
        "prop" => read_theory(&Prop, id, sig, axioms),
        "eqn" => read_theory(&Eqn, id, sig, axioms),
        "fol" => read_theory(&TinyFol, id, sig, axioms),
        other => shape(form, format!("unknown institution {other}; expected prop, eqn or fol")),
    }
}

fn read_theory<I: TheorySyntax>(inst: &I, id: String, sig: &Sexpr, axioms: &Sexpr) -> Result<TheoryFile, FormatError> {
    let signature = inst.read_signature(expect_form(sig, "signature")?, sig)?;
    let mut sentences = Vec::new();
    for a in expect_form(axioms, "axioms")? {
        let meta = sentence_from_sexpr(a)?;
        sentences.push(inst.read_sentence(&signature, &meta)?);
    }
    match Theory::new(inst, signature, sentences) {
        Ok(t) => Ok(I::wrap(id, t)),
        Err(e) => shape(axioms, e.to_string()),
    }
}

pub fn print_theory<I: TheorySyntax>(inst: &I, id: &str, t: &Theory<I>) -> String {
    let mut out = format!("(theory {id}\n  (institution {})\n  {}\n  (axioms", I::KEYWORD, form_line("signature", inst.write_signature(&t.signature)));
    for a in &t.axioms {
        out.push_str("\n    ");
        out.push_str(&print_canonical(&inst.write_sentence(&t.signature, a)));
    }
    out.push_str("))\n");
    out
}

pub fn show_sentence<I: TheorySyntax>(inst: &I, sig: &I::Signature, s: &I::Sentence) -> String {
    print_canonical(&inst.write_sentence(sig, s))
}

fn images(kind: &str, src: &[String], tgt: &[String], pairs: &[(String, String)], used: &mut [bool]) -> Result<Vec<usize>, String> {
    src.iter()
        .map(|a| {
            let mut hit = None;
            for (k, (x, y)) in pairs.iter().enumerate() {
                if x == a {
                    if hit.is_some() {
                        return Err(format!("{a} is mapped twice"));
                    }
                    used[k] = true;
                    hit = Some(tgt.iter().position(|t| t == y).ok_or_else(|| format!("{y} is not a {kind} of the target"))?);
                }
            }
            hit.or_else(|| tgt.iter().position(|t| t == a)).ok_or_else(|| format!("no image for {kind} {a}"))
        })
        .collect()
}

fn all_used(pairs: &[(String, String)], used: &[bool]) -> Result<(), String> {
    match pairs.iter().zip(used).find(|(_, u)| !**u) {
        Some(((a, _), _)) => Err(format!("{a} is not in the source signature")),
        None => Ok(()),
    }
}

/// Signature symbols must read back from sentence text.
fn check_symbol(at: &Sexpr, s: &str) -> Result<(), FormatError> {
    if QualifiedName::parse(s).is_err() || is_keyword(s) || s == "true" || s == "false" {
        return shape(at, format!("{s} cannot be used as a symbol"));
    }
    Ok(())
}

fn sentence_error<T>(s: &MetaSentence, message: impl Into<String>) -> Result<T, FormatError> {
    shape_at(&s.span, message)
}

impl TheorySyntax for Prop {
    const KEYWORD: &'static str = "prop";

    fn read_signature(&self, items: &[Sexpr], _at: &Sexpr) -> Result<PropSignature, FormatError> {
        let atoms = distinct(items, "atom")?;
        for (x, a) in items.iter().zip(&atoms) {
            check_symbol(x, a)?;
        }
        Ok(PropSignature::new(atoms))
    }

    fn write_signature(&self, sig: &PropSignature) -> Vec<String> {
        sig.atoms.clone()
    }

    fn read_sentence(&self, sig: &PropSignature, s: &MetaSentence) -> Result<PropSentence, FormatError> {
        let fold = |items: &[MetaSentence], unit: PropSentence, join: fn(PropSentence, PropSentence) -> PropSentence| {
            let mut acc: Option<PropSentence> = None;
            for it in items.iter().rev() {
                let x = self.read_sentence(sig, it)?;
                acc = Some(match acc {
                    None => x,
                    Some(r) => join(x, r),
                });
            }
            Ok::<_, FormatError>(acc.unwrap_or(unit))
        };
        Ok(match &s.kind {
            SentenceKind::Atom { pred, args } if args.is_empty() => match pred.raw.as_str() {
                "true" => PropSentence::True,
                "false" => PropSentence::False,
                n => match sig.atom(n) {
                    Some(i) => PropSentence::Atom(i),
                    None => return sentence_error(s, format!("unknown atom {n}")),
                },
            },
            SentenceKind::Atom { .. } => return sentence_error(s, "propositional atoms take no arguments"),
            SentenceKind::Not(a) => PropSentence::not(self.read_sentence(sig, a)?),
            SentenceKind::And(items) => fold(items, PropSentence::True, PropSentence::and)?,
            SentenceKind::Or(items) => fold(items, PropSentence::False, PropSentence::or)?,
            SentenceKind::Implies(a, b) => PropSentence::implies(self.read_sentence(sig, a)?, self.read_sentence(sig, b)?),
            SentenceKind::Iff(a, b) => PropSentence::iff(self.read_sentence(sig, a)?, self.read_sentence(sig, b)?),
            SentenceKind::Equal(..) | SentenceKind::Forall(..) | SentenceKind::Exists(..) => {
                return sentence_error(s, "not a propositional sentence")
            }
        })
    }

    fn write_sentence(&self, sig: &PropSignature, s: &PropSentence) -> MetaSentence {
        let w = |x: &PropSentence| self.write_sentence(sig, x);
        match s {
            PropSentence::True => MetaSentence::atom(QualifiedName::simple("true"), Vec::new()),
            PropSentence::False => MetaSentence::atom(QualifiedName::simple("false"), Vec::new()),
            PropSentence::Atom(i) => MetaSentence::atom(surface_name(&sig.atoms[*i]), Vec::new()),
            PropSentence::Not(a) => MetaSentence::not(w(a)),
            PropSentence::And(a, b) => MetaSentence::and(vec![w(a), w(b)]),
            PropSentence::Or(a, b) => MetaSentence::or(vec![w(a), w(b)]),
            PropSentence::Implies(a, b) => MetaSentence::implies(w(a), w(b)),
            PropSentence::Iff(a, b) => MetaSentence::iff(w(a), w(b)),
        }
    }

    fn read_morphism(&self, source: &PropSignature, target: &PropSignature, pairs: &[(String, String)]) -> Result<PropMorphism, String> {
        let mut used = vec![false; pairs.len()];
        let map = images("atom", &source.atoms, &target.atoms, pairs, &mut used)?;
        all_used(pairs, &used)?;
        PropMorphism::new(source, target, map).map_err(|e| e.to_string())
    }

    fn wrap(id: String, theory: Theory<Self>) -> TheoryFile {
        TheoryFile::Prop(id, theory)
    }

    fn unwrap(file: TheoryFile) -> Option<(String, Theory<Self>)> {
        match file {
            TheoryFile::Prop(id, t) => Some((id, t)),
            _ => None,
        }
    }
}

fn check_language(l: &TermLanguage, at: &Sexpr) -> Result<(), FormatError> {
    for v in &l.variables {
        if QualifiedName::parse(v).map_or(true, |q| q.is_qualified()) {
            return shape(at, format!("variable {v} cannot be written as ?{v}"));
        }
    }
    l.symbols.iter().try_for_each(|s| check_symbol(at, s))
}

fn meta_term(l: &TermLanguage, t: &Term) -> MetaTerm {
    match t {
        Term::Var(v) => MetaTerm::var(&format!("?{}", l.variables[*v])),
        Term::App(f, args) if args.is_empty() => MetaTerm::constant(surface_name(&l.symbols[*f])),
        Term::App(f, args) => MetaTerm::app(surface_name(&l.symbols[*f]), args.iter().map(|a| meta_term(l, a)).collect()),
    }
}

fn term_of(l: &TermLanguage, t: &MetaTerm) -> Result<Term, FormatError> {
    let symbol = |q: &QualifiedName, n: usize| match l.symbol_index(&q.raw) {
        Some(f) if l.arity[f].len() == n => Ok(f),
        Some(f) => shape_at(&t.span, format!("{} takes {} arguments", q.raw, l.arity[f].len())),
        None => shape_at(&t.span, format!("unknown symbol {}", q.raw)),
    };
    match &t.kind {
        TermKind::Variable(v) => match l.var_index(&v[1..]) {
            Some(i) => Ok(Term::Var(i)),
            None => shape_at(&t.span, format!("unknown variable {v}")),
        },
        TermKind::Constant(q) => Ok(Term::App(symbol(q, 0)?, Vec::new())),
        TermKind::Application { head, args } => {
            let f = symbol(head, args.len())?;
            Ok(Term::App(f, args.iter().map(|a| term_of(l, a)).collect::<Result<_, _>>()?))
        }
        TermKind::Tuple(_) => shape_at(&t.span, "tuples are not terms here"),
    }
}

fn equation_of(l: &TermLanguage, s: &MetaSentence) -> Result<Option<EqnSentence>, FormatError> {
    match &s.kind {
        SentenceKind::Equal(a, b) => Ok(Some(EqnSentence::new(term_of(l, a)?, term_of(l, b)?))),
        _ => Ok(None),
    }
}

fn term_morphism(source: &TermLanguage, target: &TermLanguage, pairs: &[(String, String)], used: &mut [bool]) -> Result<TermLanguageMorphism, String> {
    let vars = images("variable", &source.variables, &target.variables, pairs, used)?;
    let syms = images("symbol", &source.symbols, &target.symbols, pairs, used)?;
    TermLanguageMorphism::new(source, target, vars, syms).map_err(|e| e.to_string())
}

impl TheorySyntax for Eqn {
    const KEYWORD: &'static str = "eqn";

    fn read_signature(&self, items: &[Sexpr], at: &Sexpr) -> Result<TermLanguage, FormatError> {
        let l = read_language_body(items, |_| Ok(false))?;
        check_language(&l, at)?;
        Ok(l)
    }

    fn write_signature(&self, sig: &TermLanguage) -> Vec<String> {
        write_language_body(sig)
    }

    fn read_sentence(&self, sig: &TermLanguage, s: &MetaSentence) -> Result<EqnSentence, FormatError> {
        match equation_of(sig, s)? {
            Some(e) => Ok(e),
            None => sentence_error(s, "expected an equation (= <term> <term>)"),
        }
    }

    fn write_sentence(&self, sig: &TermLanguage, s: &EqnSentence) -> MetaSentence {
        MetaSentence::equal(meta_term(sig, &s.lhs), meta_term(sig, &s.rhs))
    }

    fn read_morphism(&self, source: &TermLanguage, target: &TermLanguage, pairs: &[(String, String)]) -> Result<TermLanguageMorphism, String> {
        let mut used = vec![false; pairs.len()];
        let m = term_morphism(source, target, pairs, &mut used)?;
        all_used(pairs, &used)?;
        Ok(m)
    }

    fn wrap(id: String, theory: Theory<Self>) -> TheoryFile {
        TheoryFile::Eqn(id, theory)
    }

    fn unwrap(file: TheoryFile) -> Option<(String, Theory<Self>)> {
        match file {
            TheoryFile::Eqn(id, t) => Some((id, t)),
            _ => None,
        }
    }
}

impl TheorySyntax for TinyFol {
    const KEYWORD: &'static str = "fol";

    fn read_signature(&self, items: &[Sexpr], at: &Sexpr) -> Result<FolLanguage, FormatError> {
        let mut relations = Vec::new();
        let terms = read_language_body(items, |x| {
            if x.as_form().is_some_and(|(h, _)| h == "relation") {
                relations.push((read_symbol(x, "relation")?, x.span.clone()));
                Ok(true)
            } else {
                Ok(false)
            }
        })?;
        check_language(&terms, at)?;
        for (k, ((r, arity), span)) in relations.iter().enumerate() {
            let clash = terms.variables.contains(r) || terms.symbols.contains(r) || relations[..k].iter().any(|((q, _), _)| q == r);
            if clash {
                return shape_at(span, format!("duplicate name {r}"));
            }
            check_symbol(at, r)?;
            if let Some(v) = arity.iter().find(|v| !terms.variables.contains(v)) {
                return shape_at(span, format!("arity of {r} names undeclared variable {v}"));
            }
        }
        let relations: Vec<(String, Vec<String>)> = relations.into_iter().map(|(r, _)| r).collect();
        let identity: Vec<usize> = (0..terms.variables.len()).collect();
        ExpressionLanguage::new(terms.variables.clone(), relations)
            .and_then(|e| pullback_fol(&e, &terms, &identity))
            .or_else(|e| shape(at, e.to_string()))
    }

    fn write_signature(&self, sig: &FolLanguage) -> Vec<String> {
        let mut out = write_language_body(&sig.terms);
        let e = &sig.expressions;
        for (r, a) in e.relations.iter().zip(&e.arity) {
            out.push(format!("(relation {r} {})", form_line("arity", arity_names(&e.variables, *a))));
        }
        out
    }

    fn read_sentence(&self, sig: &FolLanguage, s: &MetaSentence) -> Result<FolSentence, FormatError> {
        if let Some(e) = equation_of(&sig.terms, s)? {
            return Ok(FolSentence::Equal(e));
        }
        let SentenceKind::Atom { pred, args } = &s.kind else {
            return sentence_error(s, "expected an equation or a relational atom");
        };
        let e = &sig.expressions;
        let Some(r) = e.relations.iter().position(|x| *x == pred.raw) else {
            return sentence_error(s, format!("unknown relation {}", pred.raw));
        };
        if args.len() != e.arity[r].len() {
            return sentence_error(s, format!("{} takes {} arguments", pred.raw, e.arity[r].len()));
        }
        Ok(FolSentence::Atom(r, args.iter().map(|a| term_of(&sig.terms, a)).collect::<Result<_, _>>()?))
    }

    fn write_sentence(&self, sig: &FolLanguage, s: &FolSentence) -> MetaSentence {
        match s {
            FolSentence::Equal(e) => Eqn.write_sentence(&sig.terms, e),
            FolSentence::Atom(r, args) => {
                MetaSentence::atom(surface_name(&sig.expressions.relations[*r]), args.iter().map(|a| meta_term(&sig.terms, a)).collect())
            }
        }
    }

    fn read_morphism(&self, source: &FolLanguage, target: &FolLanguage, pairs: &[(String, String)]) -> Result<FolMorphism, String> {
        let mut used = vec![false; pairs.len()];
        let terms = term_morphism(&source.terms, &target.terms, pairs, &mut used)?;
        let rel_map = images("relation", &source.expressions.relations, &target.expressions.relations, pairs, &mut used)?;
        all_used(pairs, &used)?;
        let m = FolMorphism { source: source.clone(), target: target.clone(), terms, rel_map };
        if m.is_valid() {
            Ok(m)
        } else {
            Err("relation arities are not preserved".into())
        }
    }

    fn wrap(id: String, theory: Theory<Self>) -> TheoryFile {
        TheoryFile::Fol(id, theory)
    }

    fn unwrap(file: TheoryFile) -> Option<(String, Theory<Self>)> {
        match file {
            TheoryFile::Fol(id, t) => Some((id, t)),
            _ => None,
        }
    }
}

/// The span of a theory file used when reporting on it as a whole.
pub fn file_span(file: Option<&str>) -> SourceSpan {
    SourceSpan { file: file.map(Into::into), line: 1, column: 1, ..Default::default() }
}
