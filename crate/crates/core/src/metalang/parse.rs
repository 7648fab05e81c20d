use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{is_keyword, is_lower_segment, Binding, MetaSentence, MetaTerm, QualifiedName, SentenceKind, TermKind};
use crate::sexpr::{read_all, ReadErrorKind, Sexpr, SexprKind, SourceSpan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnbalancedParen,
    UnterminatedString,
    /// Head position holds something that is neither a keyword nor a name.
    UnknownHead,
    BadVariable,
    BadIdentifier,
    EmptyInput,
    /// Wrong shape for a keyword form, e.g. `(not a b)`.
    Malformed(&'static str),
    /// More than one sentence where exactly one was expected.
    TrailingInput,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind:?}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

fn err<T>(kind: ParseErrorKind, span: &SourceSpan) -> Result<T, ParseError> {
    Err(ParseError { kind, span: span.clone() })
}

fn read(text: &str, file: Option<Arc<str>>) -> Result<Vec<Sexpr>, ParseError> {
    read_all(text, file).map_err(|e| ParseError {
        kind: match e.kind {
            ReadErrorKind::UnbalancedParen => ParseErrorKind::UnbalancedParen,
            ReadErrorKind::UnterminatedString => ParseErrorKind::UnterminatedString,
        },
        span: e.span,
    })
}

/// Parse exactly one sentence.
pub fn parse_sentence(text: &str) -> Result<MetaSentence, ParseError> {
    let forms = read(text, None)?;
    match forms.as_slice() {
        [] => err(ParseErrorKind::EmptyInput, &SourceSpan { line: 1, column: 1, length: 0, ..Default::default() }),
        [one] => sentence_from_sexpr(one),
        [_, second, ..] => err(ParseErrorKind::TrailingInput, &second.span),
    }
}

/// Parse every sentence in `text`, in order. Empty text yields no sentences.
pub fn parse_sentences(text: &str, file: Option<Arc<str>>) -> Result<Vec<MetaSentence>, ParseError> {
    read(text, file)?.iter().map(sentence_from_sexpr).collect()
}

/// Parse a single term, e.g. `(vlrg.ftn:source graph)`.
pub fn parse_term(text: &str) -> Result<MetaTerm, ParseError> {
    let forms = read(text, None)?;
    match forms.as_slice() {
        [] => err(ParseErrorKind::EmptyInput, &SourceSpan { line: 1, column: 1, length: 0, ..Default::default() }),
        [one] => term_from_sexpr(one),
        [_, second, ..] => err(ParseErrorKind::TrailingInput, &second.span),
    }
}

fn name(sym: &str, span: &SourceSpan) -> Result<QualifiedName, ParseError> {
    QualifiedName::parse(sym).or_else(|_| err(ParseErrorKind::BadIdentifier, span))
}

fn variable(sym: &str, span: &SourceSpan) -> Result<String, ParseError> {
    match sym.strip_prefix('?') {
        Some(rest) if is_lower_segment(rest) => Ok(String::from(sym)),
        _ => err(ParseErrorKind::BadVariable, span),
    }
}

pub fn sentence_from_sexpr(x: &Sexpr) -> Result<MetaSentence, ParseError> {
    let kind = match &x.kind {
        SexprKind::Symbol(s) if s.starts_with('?') => {
            return err(ParseErrorKind::Malformed("variable in sentence position"), &x.span)
        }
        SexprKind::Symbol(s) if is_keyword(s) => return err(ParseErrorKind::Malformed("bare keyword"), &x.span),
        SexprKind::Symbol(s) => SentenceKind::Atom { pred: name(s, &x.span)?, args: Vec::new() },
        SexprKind::Str(_) => return err(ParseErrorKind::Malformed("string in sentence position"), &x.span),
        SexprKind::Tuple(_) => return err(ParseErrorKind::Malformed("tuple in sentence position"), &x.span),
        SexprKind::List(items) => {
            let Some((head, rest)) = items.split_first() else {
                return err(ParseErrorKind::UnknownHead, &x.span);
            };
            let head_sym = match &head.kind {
                SexprKind::Symbol(s) if !s.starts_with('?') => s.as_str(),
                _ => return err(ParseErrorKind::UnknownHead, &head.span),
            };
            keyword_form(head_sym, rest, x, head)?
        }
    };
    Ok(MetaSentence { kind, span: x.span.clone() })
}

fn keyword_form(head: &str, rest: &[Sexpr], whole: &Sexpr, head_x: &Sexpr) -> Result<SentenceKind, ParseError> {
    let boxed = |x: &Sexpr| sentence_from_sexpr(x).map(Box::new);
    Ok(match head {
        "not" => match rest {
            [inner] => SentenceKind::Not(boxed(inner)?),
            _ => return err(ParseErrorKind::Malformed("not takes one sentence"), &whole.span),
        },
        "and" => SentenceKind::And(rest.iter().map(sentence_from_sexpr).collect::<Result<_, _>>()?),
        "or" => SentenceKind::Or(rest.iter().map(sentence_from_sexpr).collect::<Result<_, _>>()?),
        "implies" | "iff" => match rest {
            [a, b] => {
                let (a, b) = (boxed(a)?, boxed(b)?);
                if head == "implies" {
                    SentenceKind::Implies(a, b)
                } else {
                    SentenceKind::Iff(a, b)
                }
            }
            _ => return err(ParseErrorKind::Malformed("binary connective takes two sentences"), &whole.span),
        },
        "=" => match rest {
            [a, b] => SentenceKind::Equal(term_from_sexpr(a)?, term_from_sexpr(b)?),
            _ => return err(ParseErrorKind::Malformed("= takes two terms"), &whole.span),
        },
        "forall" | "exists" => match rest {
            [bindings, body] => {
                let bindings = parse_bindings(bindings)?;
                let body = boxed(body)?;
                if head == "forall" {
                    SentenceKind::Forall(bindings, body)
                } else {
                    SentenceKind::Exists(bindings, body)
                }
            }
            _ => return err(ParseErrorKind::Malformed("quantifier takes bindings and a body"), &whole.span),
        },
        _ => SentenceKind::Atom {
            pred: name(head, &head_x.span)?,
            args: rest.iter().map(term_from_sexpr).collect::<Result<_, _>>()?,
        },
    })
}

fn parse_bindings(x: &Sexpr) -> Result<Vec<Binding>, ParseError> {
    let Some(items) = x.as_list() else {
        return err(ParseErrorKind::Malformed("bindings must be a list"), &x.span);
    };
    if items.is_empty() || items.len() % 2 != 0 {
        return err(ParseErrorKind::Malformed("bindings alternate variable and guard"), &x.span);
    }
    items
        .chunks(2)
        .map(|pair| {
            let var = match &pair[0].kind {
                SexprKind::Symbol(s) => variable(s, &pair[0].span)?,
                _ => return err(ParseErrorKind::BadVariable, &pair[0].span),
            };
            let guard = sentence_from_sexpr(&pair[1])?;
            Ok(Binding { var, guard, span: pair[0].span.clone() })
        })
        .collect()
}

pub fn term_from_sexpr(x: &Sexpr) -> Result<MetaTerm, ParseError> {
    let kind = match &x.kind {
        SexprKind::Symbol(s) if s.starts_with('?') => TermKind::Variable(variable(s, &x.span)?),
        SexprKind::Symbol(s) if is_keyword(s) => {
            return err(ParseErrorKind::Malformed("keyword in term position"), &x.span)
        }
        SexprKind::Symbol(s) => TermKind::Constant(name(s, &x.span)?),
        SexprKind::Str(_) => return err(ParseErrorKind::Malformed("string in term position"), &x.span),
        SexprKind::Tuple(items) => TermKind::Tuple(items.iter().map(term_from_sexpr).collect::<Result<_, _>>()?),
        SexprKind::List(items) => {
            let Some((head, args)) = items.split_first() else {
                return err(ParseErrorKind::UnknownHead, &x.span);
            };
            let head = match &head.kind {
                SexprKind::Symbol(s) if !s.starts_with('?') && !is_keyword(s) => name(s, &head.span)?,
                _ => return err(ParseErrorKind::UnknownHead, &head.span),
            };
            if args.is_empty() {
                return err(ParseErrorKind::Malformed("application needs at least one argument"), &x.span);
            }
            TermKind::Application { head, args: args.iter().map(term_from_sexpr).collect::<Result<_, _>>()? }
        }
    };
    Ok(MetaTerm { kind, span: x.span.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn n(s: &str) -> QualifiedName {
        QualifiedName::parse(s).unwrap()
    }

    #[test]
    fn negated_self_membership() {
        let s = parse_sentence("(not (collection collection))").unwrap();
        let expected = MetaSentence::not(MetaSentence::atom(n("collection"), vec![MetaTerm::constant(n("collection"))]));
        assert_eq!(s, expected);
    }

    #[test]
    fn equality_of_constants() {
        let s = parse_sentence("(= underlying graph)").unwrap();
        assert_eq!(s, MetaSentence::equal(MetaTerm::constant(n("underlying")), MetaTerm::constant(n("graph"))));
    }

    #[test]
    fn restricted_forall() {
        let s = parse_sentence("(forall (?x (object ?x)) (thing ?x))").unwrap();
        let expected = MetaSentence::forall(
            vec![Binding::new("?x", MetaSentence::atom(n("object"), vec![MetaTerm::var("?x")]))],
            MetaSentence::atom(n("thing"), vec![MetaTerm::var("?x")]),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn empty_conjunction() {
        assert_eq!(parse_sentence("(and)").unwrap(), MetaSentence::and(vec![]));
    }

    #[test]
    fn nested_application_and_tuple() {
        let s = parse_sentence("(= graph-pair (vlrg.lim.pbk.obj:pairing [graph graph]))").unwrap();
        let SentenceKind::Equal(_, rhs) = &s.kind else { panic!() };
        let TermKind::Application { head, args } = &rhs.kind else { panic!() };
        assert_eq!(head.prefix_path, vec!["vlrg", "lim", "pbk", "obj"]);
        assert!(matches!(args[0].kind, TermKind::Tuple(ref items) if items.len() == 2));
    }

    #[test]
    fn error_kinds() {
        let kind = |t: &str| parse_sentence(t).unwrap_err().kind;
        assert_eq!(kind(""), ParseErrorKind::EmptyInput);
        assert_eq!(kind("  ; only a comment\n"), ParseErrorKind::EmptyInput);
        assert_eq!(kind("(not (a b)"), ParseErrorKind::UnbalancedParen);
        assert_eq!(kind("(?p a)"), ParseErrorKind::UnknownHead);
        assert_eq!(kind("((f a) b)"), ParseErrorKind::UnknownHead);
        assert_eq!(kind("()"), ParseErrorKind::UnknownHead);
        assert_eq!(kind("(thing ?X)"), ParseErrorKind::BadVariable);
        assert_eq!(kind("(forall (x (object x)) (thing x))"), ParseErrorKind::BadVariable);
        assert_eq!(kind("(Thing a)"), ParseErrorKind::BadIdentifier);
        assert!(matches!(kind("(not a b)"), ParseErrorKind::Malformed(_)));
        assert!(matches!(kind("(= (f) a)"), ParseErrorKind::Malformed(_)));
        assert_eq!(kind("a b"), ParseErrorKind::TrailingInput);
    }

    #[test]
    fn spans_point_at_nodes() {
        let s = parse_sentence("(and\n  (p a)\n  (q ?y))").unwrap();
        let SentenceKind::And(items) = &s.kind else { panic!() };
        assert_eq!((items[1].span.line, items[1].span.column, items[1].span.length), (3, 3, 6));
        let e = parse_sentence("(and\n  (p a)\n  (q ?Y))").unwrap_err();
        assert_eq!((e.span.line, e.span.column, e.span.length), (3, 6, 2));
    }

    #[test]
    fn comments_are_skipped() {
        let ss = parse_sentences("; header\n(p a) ; trailing\n(q b)\n", None).unwrap();
        assert_eq!(ss.len(), 2);
    }
}
