//! Readers and printers for the s-expression corpus formats.

use std::path::Path;
use std::sync::Arc;

use iffkit_core::metalang::{ParseError, QualifiedName};
use iffkit_core::sexpr::{read_all, ReadError, Sexpr, SourceSpan};

pub mod alignment;
pub mod context;
pub mod diagram;
pub mod language;
pub mod leveled;
pub mod theory;
pub mod vocab;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Read(#[from] ReadError),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{span}: {message}")]
    Shape { span: SourceSpan, message: String },
    #[error("{file}:{line}: {message}")]
    Line { file: String, line: usize, message: String },
}

pub(crate) fn shape<T>(at: &Sexpr, message: impl Into<String>) -> Result<T, FormatError> {
    shape_at(&at.span, message)
}

pub(crate) fn shape_at<T>(span: &SourceSpan, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Shape { span: span.clone(), message: message.into() })
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub(crate) fn read_forms(text: &str, file: Option<&str>) -> Result<Vec<Sexpr>, FormatError> {
    Ok(read_all(text, file.map(Arc::from))?)
}

/// Exactly one top-level form.
pub(crate) fn single_form(text: &str, file: Option<&str>, what: &str) -> Result<Sexpr, FormatError> {
    let mut forms = read_forms(text, file)?;
    match forms.len() {
        1 => Ok(forms.remove(0)),
        0 => shape_at(&SourceSpan { file: file.map(Arc::from), line: 1, column: 1, ..Default::default() }, format!("expected a {what} form")),
        _ => shape(&forms[1], format!("expected a single {what} form")),
    }
}

/// The arguments of `(head ...)`.
pub(crate) fn expect_form<'a>(x: &'a Sexpr, head: &str) -> Result<&'a [Sexpr], FormatError> {
    match x.as_form() {
        Some((h, rest)) if h == head => Ok(rest),
        _ => shape(x, format!("expected ({head} ...)")),
    }
}

pub(crate) fn name(x: &Sexpr) -> Result<String, FormatError> {
    match x.as_text() {
        Some(s) => Ok(s.to_string()),
        None => shape(x, "expected a name"),
    }
}

pub(crate) fn names(items: &[Sexpr]) -> Result<Vec<String>, FormatError> {
    items.iter().map(name).collect()
}

pub(crate) fn list(x: &Sexpr) -> Result<&[Sexpr], FormatError> {
    match x.as_list() {
        Some(items) => Ok(items),
        None => shape(x, "expected a list"),
    }
}

/// A two-element list `(a b)` of names.
pub(crate) fn pair(x: &Sexpr) -> Result<(String, String), FormatError> {
    match list(x)? {
        [a, b] => Ok((name(a)?, name(b)?)),
        _ => shape(x, "expected a pair (a b)"),
    }
}

/// Names that must be unique within one declaration.
pub(crate) fn distinct(items: &[Sexpr], what: &str) -> Result<Vec<String>, FormatError> {
    let out = names(items)?;
    for (i, n) in out.iter().enumerate() {
        if out[..i].contains(n) {
            return shape(&items[i], format!("duplicate {what} {n}"));
        }
    }
    Ok(out)
}

/// Symbols printed inside sentences keep their surface text even when it
/// is not a well-formed name.
pub(crate) fn surface_name(raw: &str) -> QualifiedName {
    QualifiedName::parse(raw).unwrap_or_else(|_| QualifiedName { prefix_path: Vec::new(), local: raw.to_string(), raw: raw.to_string() })
}

pub(crate) fn joined(items: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    items.into_iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().join(" ")
}

/// `(head a b c)`, or `(head)` for no items.
pub(crate) fn form_line(head: &str, items: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let body = joined(items);
    if body.is_empty() {
        format!("({head})")
    } else {
        format!("({head} {body})")
    }
}

/// A name as it must be written to read back as the same name.
pub(crate) fn quoted(s: &str) -> String {
    let plain = !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | '"' | ';' | '\\'));
    if plain {
        s.to_string()
    } else {
        Sexpr { kind: iffkit_core::sexpr::SexprKind::Str(s.to_string()), span: SourceSpan::default() }.to_string()
    }
}
