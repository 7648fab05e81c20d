//! A small s-expression reader shared by the metalanguage parser and the
//! corpus file formats.
//!
//! Three delimiters are recognised: `( ... )` lists, `[ ... ]` tuples and
//! `"..."` strings. A `;` starts a comment that runs to the end of the line.
//! Everything else that is not whitespace is a symbol character; symbol
//! validation is left to the consumers.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Location of a syntax node in its source text.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Option<Arc<str>>,
    /// Byte offset of the first character.
    pub offset: usize,
    /// 1-based line.
    pub line: u32,
    /// 1-based column, counted in characters.
    pub column: u32,
    /// Length in characters.
    pub length: u32,
}

impl SourceSpan {
    /// Byte range covered by the span inside `text`.
    pub fn byte_range(&self, text: &str) -> core::ops::Range<usize> {
        let start = self.offset.min(text.len());
        let end = text[start..]
            .char_indices()
            .nth(self.length as usize)
            .map_or(text.len(), |(i, _)| start + i);
        start..end
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}:", file)?;
        }
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SexprKind {
    Symbol(String),
    Str(String),
    List(Vec<Sexpr>),
    Tuple(Vec<Sexpr>),
}

#[derive(Clone, Debug)]
pub struct Sexpr {
    pub kind: SexprKind,
    pub span: SourceSpan,
}

impl PartialEq for Sexpr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Sexpr {}

impl Sexpr {
    pub fn as_symbol(&self) -> Option<&str> {
        match &self.kind {
            SexprKind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    /// Symbol or string contents.
    pub fn as_text(&self) -> Option<&str> {
        match &self.kind {
            SexprKind::Symbol(s) | SexprKind::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexpr]> {
        match &self.kind {
            SexprKind::List(items) => Some(items),
            _ => None,
        }
    }

    /// `(head rest...)` where `head` is a symbol.
    pub fn as_form(&self) -> Option<(&str, &[Sexpr])> {
        let items = self.as_list()?;
        let (head, rest) = items.split_first()?;
        Some((head.as_symbol()?, rest))
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(f: &mut fmt::Formatter<'_>, items: &[Sexpr], open: char, close: char) -> fmt::Result {
            write!(f, "{}", open)?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", item)?;
            }
            write!(f, "{}", close)
        }
        match &self.kind {
            SexprKind::Symbol(s) => write!(f, "{}", s),
            SexprKind::Str(s) => {
                write!(f, "\"")?;
                for c in s.chars() {
                    match c {
                        '"' => write!(f, "\\\"")?,
                        '\\' => write!(f, "\\\\")?,
                        '\n' => write!(f, "\\n")?,
                        c => write!(f, "{}", c)?,
                    }
                }
                write!(f, "\"")
            }
            SexprKind::List(items) => seq(f, items, '(', ')'),
            SexprKind::Tuple(items) => seq(f, items, '[', ']'),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadErrorKind {
    UnbalancedParen,
    UnterminatedString,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind:?}")]
pub struct ReadError {
    pub kind: ReadErrorKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    text: &'a str,
    file: Option<Arc<str>>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn mark(&self) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            offset: self.pos,
            line: self.line,
            column: self.column,
            length: 1,
        }
    }

    fn close(&self, mut start: SourceSpan) -> SourceSpan {
        start.length = self.text[start.offset..self.pos].chars().count() as u32;
        start
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | '"' | ';')
}

/// Read every top-level expression in `text`.
pub fn read_all(text: &str, file: Option<Arc<str>>) -> Result<Vec<Sexpr>, ReadError> {
    let mut cur = Cursor { text, file, pos: 0, line: 1, column: 1 };
    // Each frame holds the opening span, the expected closer and the items so far.
    let mut stack: Vec<(SourceSpan, char, Vec<Sexpr>)> = Vec::new();
    let mut top = Vec::new();
    loop {
        cur.skip_trivia();
        let Some(c) = cur.peek() else { break };
        let start = cur.mark();
        let node = match c {
            '(' | '[' => {
                cur.bump();
                stack.push((start, if c == '(' { ')' } else { ']' }, Vec::new()));
                continue;
            }
            ')' | ']' => {
                cur.bump();
                match stack.pop() {
                    Some((open, want, items)) if want == c => {
                        let span = cur.close(open);
                        let kind = if c == ')' { SexprKind::List(items) } else { SexprKind::Tuple(items) };
                        Sexpr { kind, span }
                    }
                    Some((open, _, _)) => {
                        return Err(ReadError { kind: ReadErrorKind::UnbalancedParen, span: open })
                    }
                    None => {
                        return Err(ReadError { kind: ReadErrorKind::UnbalancedParen, span: start })
                    }
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None => {
                            return Err(ReadError {
                                kind: ReadErrorKind::UnterminatedString,
                                span: start,
                            })
                        }
                        Some('"') => break,
                        Some('\\') => match cur.bump() {
                            Some('n') => s.push('\n'),
                            Some(other) => s.push(other),
                            None => {
                                return Err(ReadError {
                                    kind: ReadErrorKind::UnterminatedString,
                                    span: start,
                                })
                            }
                        },
                        Some(other) => s.push(other),
                    }
                }
                Sexpr { kind: SexprKind::Str(s), span: cur.close(start) }
            }
            _ => {
                let begin = cur.pos;
                while let Some(c) = cur.peek() {
                    if is_delim(c) {
                        break;
                    }
                    cur.bump();
                }
                let sym = String::from(&text[begin..cur.pos]);
                Sexpr { kind: SexprKind::Symbol(sym), span: cur.close(start) }
            }
        };
        match stack.last_mut() {
            Some((_, _, items)) => items.push(node),
            None => top.push(node),
        }
    }
    if let Some((open, _, _)) = stack.pop() {
        // Report the innermost unclosed form.
        return Err(ReadError { kind: ReadErrorKind::UnbalancedParen, span: open });
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_and_tuples() {
        let out = read_all("(a [b c] \"d e\") ; trailing\nf", None).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(alloc::format!("{}", out[0]), "(a [b c] \"d e\")");
        assert_eq!(out[1].span.line, 2);
        assert_eq!(out[1].span.column, 1);
    }

    #[test]
    fn unclosed_form_reports_its_opener() {
        let err = read_all("(a b)\n  (c (d e)", None).unwrap_err();
        assert_eq!(err.kind, ReadErrorKind::UnbalancedParen);
        assert_eq!((err.span.line, err.span.column), (2, 3));
    }

    #[test]
    fn stray_closer_and_mismatch() {
        assert_eq!(read_all("a )", None).unwrap_err().span.column, 3);
        let err = read_all("(a ]", None).unwrap_err();
        assert_eq!(err.kind, ReadErrorKind::UnbalancedParen);
        assert_eq!(err.span.column, 1);
    }

    #[test]
    fn span_lengths_count_characters() {
        let out = read_all("(ab \"é\")", None).unwrap();
        assert_eq!(out[0].span.length, 8);
        assert_eq!(out[0].span.byte_range("(ab \"é\")"), 0..9);
    }
}
