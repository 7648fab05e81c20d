//! `(term-language <id> (vars ...) (symbol <f> (arity ...))...)` followed by
//! any number of `(equation (over <id>) <lhs> <rhs>)` forms.
//!
//! Inside these files a bare name is a variable when the language declares
//! it as one, and otherwise a constant symbol.

use iffkit_core::institution::EqnSentence;
use iffkit_core::sexpr::{Sexpr, SexprKind};
use iffkit_core::termlang::{Indicia, LawvereFragment, Term, TermLanguage};

use super::{distinct, expect_form, form_line, name, read_forms, shape, shape_at, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageFile {
    pub id: String,
    pub language: TermLanguage,
    pub equations: Vec<EqnSentence>,
}

/// The `(vars ...)` and `(symbol ...)` items of a language declaration.
/// Items with other heads are handed to `extra` and otherwise rejected.
pub(crate) fn read_language_body(
    items: &[Sexpr],
    mut extra: impl FnMut(&Sexpr) -> Result<bool, FormatError>,
) -> Result<TermLanguage, FormatError> {
    let mut vars: Option<Vec<String>> = None;
    let mut symbols: Vec<(String, Vec<String>)> = Vec::new();
    for item in items {
        match item.as_form() {
            Some(("vars", vs)) if vars.is_none() => vars = Some(distinct(vs, "variable")?),
            Some(("symbol", _)) => symbols.push(read_symbol(item, "symbol")?),
            _ if extra(item)? => {}
            _ => return shape(item, "expected (vars ...) or (symbol <f> (arity ...))"),
        }
    }
    let vars = vars.unwrap_or_default();
    for (s, arity) in &symbols {
        if let Some(v) = arity.iter().find(|v| !vars.contains(v)) {
            let at = items.iter().find(|i| i.as_form().is_some_and(|(_, r)| r.first().and_then(Sexpr::as_text) == Some(s))).unwrap_or(&items[0]);
            return shape(at, format!("arity of {s} names undeclared variable {v}"));
        }
    }
    TermLanguage::new(vars, symbols).map_err(|e| match items.first() {
        Some(at) => FormatError::Shape { span: at.span.clone(), message: e.to_string() },
        None => FormatError::Shape { span: Default::default(), message: e.to_string() },
    })
}

/// `(<head> <name> (arity v...))`
pub(crate) fn read_symbol(item: &Sexpr, head: &str) -> Result<(String, Vec<String>), FormatError> {
    match expect_form(item, head)? {
        [f, arity] => Ok((name(f)?, distinct(expect_form(arity, "arity")?, "arity variable")?)),
        _ => shape(item, format!("expected ({head} <name> (arity ...))")),
    }
}

pub(crate) fn arity_names(vars: &[String], a: Indicia) -> Vec<&str> {
    a.iter().map(|v| vars[v].as_str()).collect()
}

pub(crate) fn write_language_body(l: &TermLanguage) -> Vec<String> {
    let mut out = vec![form_line("vars", &l.variables)];
    for (f, a) in l.symbols.iter().zip(&l.arity) {
        out.push(format!("(symbol {f} {})", form_line("arity", arity_names(&l.variables, *a))));
    }
    out
}

/// A term written with bare names.
pub fn read_term(l: &TermLanguage, x: &Sexpr) -> Result<Term, FormatError> {
    match &x.kind {
        SexprKind::Symbol(s) => {
            if let Some(v) = l.var_index(s) {
                return Ok(Term::Var(v));
            }
            match l.symbol_index(s) {
                Some(f) if l.arity[f].is_empty() => Ok(Term::App(f, Vec::new())),
                Some(_) => shape(x, format!("{s} needs arguments")),
                None => shape(x, format!("unknown name {s}")),
            }
        }
        SexprKind::List(items) => {
            let Some((head, args)) = items.split_first() else { return shape(x, "empty term") };
            let s = name(head)?;
            let Some(f) = l.symbol_index(&s) else { return shape(head, format!("unknown symbol {s}")) };
            if args.len() != l.arity[f].len() {
                return shape(x, format!("{s} takes {} arguments", l.arity[f].len()));
            }
            Ok(Term::App(f, args.iter().map(|a| read_term(l, a)).collect::<Result<_, _>>()?))
        }
        _ => shape(x, "expected a term"),
    }
}

pub fn write_term(l: &TermLanguage, t: &Term) -> String {
    l.display(t).to_string()
}

pub fn parse_language(text: &str, file: Option<&str>) -> Result<LanguageFile, FormatError> {
    let forms = read_forms(text, file)?;
    let Some((first, rest)) = forms.split_first() else {
        return shape_at(&Default::default(), "expected a term-language form");
    };
    let body = expect_form(first, "term-language")?;
    let Some((id, decls)) = body.split_first() else { return shape(first, "term-language needs an id") };
    let id = name(id)?;
    let language = read_language_body(decls, |_| Ok(false))?;
    let mut equations = Vec::new();
    for eq in rest {
        let [over, lhs, rhs] = expect_form(eq, "equation")? else {
            return shape(eq, "expected (equation (over <id>) <lhs> <rhs>)");
        };
        match expect_form(over, "over")? {
            [o] if name(o)? == id => {}
            _ => return shape(over, format!("equation must be over {id}")),
        }
        equations.push(EqnSentence::new(read_term(&language, lhs)?, read_term(&language, rhs)?));
    }
    Ok(LanguageFile { id, language, equations })
}

pub fn print_language(f: &LanguageFile) -> String {
    let mut out = format!("(term-language {}", f.id);
    for line in write_language_body(&f.language) {
        out.push_str("\n  ");
        out.push_str(&line);
    }
    out.push_str(")\n");
    for e in &f.equations {
        out.push_str(&format!("(equation (over {}) {} {})\n", f.id, write_term(&f.language, &e.lhs), write_term(&f.language, &e.rhs)));
    }
    out
}

/// Objects then morphisms of a Lawvere fragment, one per line.
pub fn print_lawvere(id: &str, l: &TermLanguage, frag: &LawvereFragment) -> String {
    let mut out = format!(
        "(lawvere {id} (depth {}) (objects {}) (morphisms {}))\n",
        frag.depth,
        frag.objects.len(),
        frag.morphisms.len()
    );
    for (k, o) in frag.objects.iter().enumerate() {
        out.push_str(&format!("(object {k} ({}))\n", arity_names(&l.variables, *o).join(" ")));
    }
    for (k, m) in frag.morphisms.iter().enumerate() {
        let entries: Vec<String> = m.entries.iter().map(|t| write_term(l, t)).collect();
        out.push_str(&format!(
            "(morphism {k} ({}) ({}) ({}))\n",
            arity_names(&l.variables, m.domain).join(" "),
            arity_names(&l.variables, m.index).join(" "),
            entries.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use iffkit_core::termlang::lawvere_fragment;

    const MONOID: &str = "(term-language monoid (vars x y) (symbol e (arity)) (symbol m (arity x y)))
        (equation (over monoid) (m x e) x)";

    #[test]
    fn round_trip() {
        let f = parse_language(MONOID, None).unwrap();
        assert_eq!(f.language.symbols, ["e", "m"]);
        assert_eq!(f.equations.len(), 1);
        let text = print_language(&f);
        assert_eq!(parse_language(&text, None).unwrap(), f);
        assert_eq!(print_language(&parse_language(&text, None).unwrap()), text);
    }

    #[test]
    fn arity_order_is_variable_order() {
        let f = parse_language("(term-language l (vars x y) (symbol g (arity y x)))", None).unwrap();
        assert!(print_language(&f).contains("(symbol g (arity x y))"));
    }

    #[test]
    fn bad_terms() {
        for bad in ["(m x)", "(n x y)", "m", "z", "[x]", "()"] {
            let text = format!("(term-language monoid (vars x y) (symbol e (arity)) (symbol m (arity x y))) (equation (over monoid) {bad} x)");
            assert!(parse_language(&text, None).is_err(), "{bad}");
        }
        assert!(parse_language("(term-language l (vars x) (symbol f (arity z)))", None).is_err());
        assert!(parse_language("(term-language l (vars x x))", None).is_err());
        assert!(parse_language("(term-language l (vars x) (symbol x (arity)))", None).is_err());
        assert!(parse_language("(term-language l (vars x)) (equation (over k) x x)", None).is_err());
    }

    #[test]
    fn lawvere_listing_counts() {
        let f = parse_language("(term-language u (vars x) (symbol s (arity x)))", None).unwrap();
        let frag = lawvere_fragment(&f.language, 1).unwrap();
        let out = print_lawvere("u", &f.language, &frag);
        assert_eq!(out.lines().count(), 1 + frag.objects.len() + frag.morphisms.len());
        assert!(out.contains("(morphism") && out.contains("(s x)"));
    }
}
