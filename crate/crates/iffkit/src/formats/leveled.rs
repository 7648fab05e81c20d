//! Leveled data: `(set <level> <id> (<elem>...))`,
//! `(function <level> <id> <src> <tgt> ((x y)...))` and
//! `(relation <level> <id> <left> <right> ((x y)...))`, where the carriers
//! name sets declared earlier in the file.

use std::collections::BTreeSet;

use iffkit_core::metastack::{is_abridgment, is_restriction, is_subobject, LeveledFunction, LeveledRelation, LeveledSet};
use iffkit_core::registry::Metalevel;
use iffkit_core::sexpr::Sexpr;

use super::{distinct, form_line, list, name, pair, quoted, read_forms, shape, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leveled {
    Set(LeveledSet),
    Function { source: String, target: String, function: LeveledFunction },
    Relation { left: String, right: String, relation: LeveledRelation },
}

impl Leveled {
    pub fn level(&self) -> Metalevel {
        match self {
            Leveled::Set(s) => s.level,
            Leveled::Function { function, .. } => function.level,
            Leveled::Relation { relation, .. } => relation.level,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeveledData {
    pub items: Vec<(String, Leveled)>,
}

impl LeveledData {
    pub fn get(&self, id: &str) -> Option<&Leveled> {
        self.items.iter().find(|(k, _)| k == id).map(|(_, v)| v)
    }

    fn set(&self, at: &Sexpr, level: Metalevel) -> Result<(String, LeveledSet), FormatError> {
        let id = name(at)?;
        match self.get(&id) {
            Some(Leveled::Set(s)) if s.level == level => Ok((id, s.clone())),
            Some(Leveled::Set(s)) => shape(at, format!("{id} is a {} set, expected {level}", s.level)),
            _ => shape(at, format!("{id} is not a declared set")),
        }
    }
}

/// True when `forms` looks like leveled data rather than sentences.
pub fn is_leveled(forms: &[Sexpr]) -> bool {
    forms.first().and_then(Sexpr::as_form).is_some_and(|(h, rest)| matches!(h, "set" | "function" | "relation") && rest.first().and_then(Sexpr::as_symbol).is_some_and(|l| Metalevel::parse(l).is_some()))
}

fn pairs(x: &Sexpr) -> Result<Vec<(String, String)>, FormatError> {
    list(x)?.iter().map(pair).collect()
}

pub fn parse_leveled(text: &str, file: Option<&str>) -> Result<LeveledData, FormatError> {
    leveled_from_forms(&read_forms(text, file)?)
}

pub fn leveled_from_forms(forms: &[Sexpr]) -> Result<LeveledData, FormatError> {
    let mut data = LeveledData::default();
    for f in forms {
        let Some((head, args)) = f.as_form() else { return shape(f, "expected a set, function or relation form") };
        let Some((lvl, args)) = args.split_first() else { return shape(f, "missing level") };
        let lvl_name = name(lvl)?;
        let Some(level) = Metalevel::parse(&lvl_name) else { return shape(lvl, format!("unknown level {lvl_name}")) };
        let Some((id, args)) = args.split_first() else { return shape(f, "missing id") };
        let id = name(id)?;
        if data.get(&id).is_some() {
            return shape(f, format!("duplicate id {id}"));
        }
        let item = match (head, args) {
            ("set", [elems]) => Leveled::Set(LeveledSet::new(level, distinct(list(elems)?, "element")?).or_else(|e| shape(f, e.to_string()))?),
            ("function", [src, tgt, map]) => {
                let (source, s) = data.set(src, level)?;
                let (target, t) = data.set(tgt, level)?;
                let map = pairs(map)?;
                let keys: BTreeSet<&String> = map.iter().map(|(a, _)| a).collect();
                if keys.len() != map.len() {
                    return shape(f, "an element has two images");
                }
                let function = LeveledFunction::new(s, t, map).or_else(|e| shape(f, e.to_string()))?;
                Leveled::Function { source, target, function }
            }
            ("relation", [l, r, ext]) => {
                let (left, a) = data.set(l, level)?;
                let (right, b) = data.set(r, level)?;
                let relation = LeveledRelation::new(a, b, pairs(ext)?).or_else(|e| shape(f, e.to_string()))?;
                Leveled::Relation { left, right, relation }
            }
            _ => return shape(f, format!("malformed {head} form")),
        };
        data.items.push((id, item));
    }
    Ok(data)
}

fn pair_list<'a>(ps: impl Iterator<Item = (&'a String, &'a String)>) -> String {
    let items: Vec<String> = ps.map(|(a, b)| format!("({} {})", quoted(a), quoted(b))).collect();
    format!("({})", items.join(" "))
}

pub fn print_leveled(data: &LeveledData) -> String {
    let mut out = String::new();
    for (id, item) in &data.items {
        let line = match item {
            Leveled::Set(s) => {
                let elems: Vec<String> = s.elements.iter().map(|e| quoted(e)).collect();
                format!("(set {} {} ({}))", s.level, quoted(id), elems.join(" "))
            }
            Leveled::Function { source, target, function } => {
                format!("(function {} {} {} {} {})", function.level, quoted(id), quoted(source), quoted(target), pair_list(function.map.iter()))
            }
            Leveled::Relation { left, right, relation } => format!(
                "(relation {} {} {} {} {})",
                relation.level,
                quoted(id),
                quoted(left),
                quoted(right),
                pair_list(relation.extent.iter().map(|(a, b)| (a, b)))
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Every fundamental relation that holds from an item to one of the same
/// kind a level up: `(subobject a b)`, `(restriction f g)`, `(abridgment r s)`.
pub fn fundamental_relations(data: &LeveledData) -> Vec<String> {
    let mut out = Vec::new();
    for (lo, x) in &data.items {
        for (hi, y) in &data.items {
            if y.level().below() != Some(x.level()) {
                continue;
            }
            let (kind, holds) = match (x, y) {
                (Leveled::Set(a), Leveled::Set(b)) => ("subobject", is_subobject(a, b)),
                (Leveled::Function { function: f, .. }, Leveled::Function { function: g, .. }) => ("restriction", is_restriction(f, g)),
                (Leveled::Relation { relation: r, .. }, Leveled::Relation { relation: s, .. }) => ("abridgment", is_abridgment(r, s)),
                _ => continue,
            };
            if holds == Ok(true) {
                out.push(form_line(kind, [quoted(lo), quoted(hi)]));
            }
        }
    }
    out
}
