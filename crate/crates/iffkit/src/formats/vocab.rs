//! Line-oriented vocabulary files.
//!
//! ```text
//! # comment
//! common <concept> <level>
//! namespace <level> <path> [special=PREFIX[,PREFIX]] [deprecated]
//! <level> <path> <term> <kind> [special=PREFIX[,PREFIX]]
//! ```
//!
//! An entry line registers its namespace on first use.

use iffkit_core::registry::{Metalevel, NamespaceId, Registry, VocabularyKind};

use super::FormatError;

struct Options<'a> {
    special: Vec<&'a str>,
    deprecated: bool,
}

fn options<'a>(words: &[&'a str]) -> Result<Options<'a>, String> {
    let mut o = Options { special: Vec::new(), deprecated: false };
    for w in words {
        if let Some(list) = w.strip_prefix("special=") {
            o.special.extend(list.split(',').filter(|s| !s.is_empty()));
        } else if *w == "deprecated" {
            o.deprecated = true;
        } else {
            return Err(format!("unexpected {w:?}"));
        }
    }
    Ok(o)
}

fn level(w: &str) -> Result<Metalevel, String> {
    Metalevel::parse(w).ok_or_else(|| format!("unknown level {w}"))
}

fn namespace(reg: &mut Registry, lvl: &str, path: &str, o: &Options) -> Result<NamespaceId, String> {
    let lvl = level(lvl)?;
    let segments: Vec<String> = path.split('.').map(str::to_string).collect();
    let id = match reg.find_namespace(lvl, &segments) {
        Some(id) => {
            let ns = reg.namespace(id).expect("found");
            if let Some(sp) = o.special.iter().find(|s| !ns.special_prefixes.iter().any(|p| p == *s)) {
                return Err(format!("{sp} added to an existing namespace"));
            }
            id
        }
        None => {
            let segs: Vec<&str> = segments.iter().map(String::as_str).collect();
            reg.register_namespace(lvl, &segs, &o.special).map_err(|e| e.to_string())?
        }
    };
    if o.deprecated {
        reg.set_deprecated(id, true).map_err(|e| e.to_string())?;
    }
    Ok(id)
}

fn line(reg: &mut Registry, words: &[&str]) -> Result<(), String> {
    match words {
        ["common", concept, lvl] => reg.common_levels.set(concept, level(lvl)?).map_err(|e| e.to_string()),
        ["namespace", lvl, path, rest @ ..] => namespace(reg, lvl, path, &options(rest)?).map(|_| ()),
        [lvl, path, term, kind, rest @ ..] => {
            let o = options(rest)?;
            if o.deprecated {
                return Err("deprecated belongs on a namespace line".into());
            }
            let kind = VocabularyKind::parse(kind).ok_or_else(|| format!("unknown kind {kind}"))?;
            let ns = namespace(reg, lvl, path, &o)?;
            reg.add_entry(ns, term, kind).map_err(|e| e.to_string())
        }
        _ => Err("expected `common`, `namespace` or `level path term kind`".into()),
    }
}

/// Add the contents of one vocabulary file to `reg`.
pub fn load_vocab(reg: &mut Registry, text: &str, file: &str) -> Result<(), FormatError> {
    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        line(reg, &words).map_err(|message| FormatError::Line { file: file.to_string(), line: k + 1, message })?;
    }
    Ok(())
}

/// A vocabulary file that loads back into the same registry.
pub fn print_vocab(reg: &Registry) -> String {
    let mut out = String::new();
    for (concept, lvl) in reg.common_levels.iter() {
        out.push_str(&format!("common {concept} {lvl}\n"));
    }
    for ns in reg.namespaces() {
        out.push_str(&format!("namespace {} {}", ns.level, ns.path_text()));
        if !ns.special_prefixes.is_empty() {
            out.push_str(&format!(" special={}", ns.special_prefixes.iter().map(String::as_str).collect::<Vec<_>>().join(",")));
        }
        if ns.deprecated {
            out.push_str(" deprecated");
        }
        out.push('\n');
    }
    for e in reg.entries() {
        let ns = reg.namespace(e.namespace).expect("entries name registered namespaces");
        out.push_str(&format!("{} {} {} {}\n", ns.level, ns.path_text(), e.term, e.kind.name()));
    }
    out
}

/// One line of counts per namespace, in registration order.
pub fn print_report(reg: &Registry) -> String {
    let mut out = String::new();
    for ns in reg.namespaces() {
        let c = reg.vocabulary_report(ns.id).expect("registered");
        out.push_str(&format!(
            "(namespace {} (sets {}) (functions {}) (relations {}) (total {}){})\n",
            ns.general_form(),
            c.sets,
            c.functions,
            c.relations,
            c.total,
            if ns.deprecated { " deprecated" } else { "" }
        ));
    }
    out
}
