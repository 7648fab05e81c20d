use alloc::string::String;

use super::{Binding, MetaSentence, MetaTerm, SentenceKind, TermKind};

/// Single-line canonical text. Atoms without arguments print as a bare name.
pub fn print_canonical(s: &MetaSentence) -> String {
    let mut out = String::new();
    write_sentence(s, &mut out);
    out
}

pub fn print_term(t: &MetaTerm) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &MetaTerm, out: &mut String) {
    match &t.kind {
        TermKind::Variable(v) => out.push_str(v),
        TermKind::Constant(n) => out.push_str(&n.raw),
        TermKind::Application { head, args } => {
            out.push('(');
            out.push_str(&head.raw);
            for a in args {
                out.push(' ');
                write_term(a, out);
            }
            out.push(')');
        }
        TermKind::Tuple(items) => {
            out.push('[');
            for (i, a) in items.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write_term(a, out);
            }
            out.push(']');
        }
    }
}

fn write_form(head: &str, items: &[MetaSentence], out: &mut String) {
    out.push('(');
    out.push_str(head);
    for s in items {
        out.push(' ');
        write_sentence(s, out);
    }
    out.push(')');
}

fn write_quantifier(head: &str, bindings: &[Binding], body: &MetaSentence, out: &mut String) {
    out.push('(');
    out.push_str(head);
    out.push_str(" (");
    for (i, b) in bindings.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&b.var);
        out.push(' ');
        write_sentence(&b.guard, out);
    }
    out.push_str(") ");
    write_sentence(body, out);
    out.push(')');
}

fn write_sentence(s: &MetaSentence, out: &mut String) {
    match &s.kind {
        SentenceKind::Atom { pred, args } if args.is_empty() => out.push_str(&pred.raw),
        SentenceKind::Atom { pred, args } => {
            out.push('(');
            out.push_str(&pred.raw);
            for a in args {
                out.push(' ');
                write_term(a, out);
            }
            out.push(')');
        }
        SentenceKind::Equal(a, b) => {
            out.push_str("(= ");
            write_term(a, out);
            out.push(' ');
            write_term(b, out);
            out.push(')');
        }
        SentenceKind::Not(inner) => write_form("not", core::slice::from_ref(&**inner), out),
        SentenceKind::And(items) => write_form("and", items, out),
        SentenceKind::Or(items) => write_form("or", items, out),
        SentenceKind::Implies(a, b) => {
            out.push_str("(implies ");
            write_sentence(a, out);
            out.push(' ');
            write_sentence(b, out);
            out.push(')');
        }
        SentenceKind::Iff(a, b) => {
            out.push_str("(iff ");
            write_sentence(a, out);
            out.push(' ');
            write_sentence(b, out);
            out.push(')');
        }
        SentenceKind::Forall(bs, body) => write_quantifier("forall", bs, body, out),
        SentenceKind::Exists(bs, body) => write_quantifier("exists", bs, body, out),
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use alloc::vec;

    #[test]
    fn prints_table_forms() {
        let s = MetaSentence::not(MetaSentence::atom(
            QualifiedName::simple("collection"),
            vec![MetaTerm::constant(QualifiedName::simple("collection"))],
        ));
        assert_eq!(print_canonical(&s), "(not (collection collection))");
        assert_eq!(print_canonical(&MetaSentence::equal(MetaTerm::var("?a"), MetaTerm::var("?b"))), "(= ?a ?b)");
        assert_eq!(print_canonical(&MetaSentence::and(vec![])), "(and)");
    }

    #[test]
    fn normalises_layout() {
        let text = "(forall (?c (collection ?c))\n    (ur:object ?c))";
        let s = parse_sentence(text).unwrap();
        assert_eq!(print_canonical(&s), "(forall (?c (collection ?c)) (ur:object ?c))");
        assert_eq!(print_canonical(&parse_sentence("(p)").unwrap()), "p");
    }
}
