//! Metalevels, namespaces and vocabularies.
//!
//! A namespace is identified by its metalevel and a dotted concept path. It
//! can be written four ways: `lrg.cat` (level alias), `2.cat` (numeric
//! level), `cat` (bare, using the common-use level of `cat`) and `CAT`
//! (a registered special prefix).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::metalang::{is_lower_segment, is_upper_segment, MetaSentence, QualifiedName};

const ALIASES: [&str; 5] = ["obj", "sml", "lrg", "vlrg", "ur"];

/// One of the five metalevels: object, lower (small), upper (large), top
/// (very large) and ur (generic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Metalevel(u8);

impl Metalevel {
    pub const OBJ: Metalevel = Metalevel(0);
    pub const SML: Metalevel = Metalevel(1);
    pub const LRG: Metalevel = Metalevel(2);
    pub const VLRG: Metalevel = Metalevel(3);
    pub const UR: Metalevel = Metalevel(4);

    pub fn new(index: u8) -> Option<Metalevel> {
        (index <= 4).then_some(Metalevel(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn alias(self) -> &'static str {
        ALIASES[self.0 as usize]
    }

    /// Accepts the alias or the numeric form.
    pub fn parse(s: &str) -> Option<Metalevel> {
        if let Some(i) = ALIASES.iter().position(|a| *a == s) {
            return Some(Metalevel(i as u8));
        }
        if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
            return s.parse::<u8>().ok().and_then(Metalevel::new);
        }
        None
    }

    /// The next level down, if any.
    pub fn below(self) -> Option<Metalevel> {
        self.0.checked_sub(1).map(Metalevel)
    }
}

impl fmt::Display for Metalevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.alias())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamespaceId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Namespace {
    pub id: NamespaceId,
    pub level: Metalevel,
    pub path: Vec<String>,
    pub special_prefixes: BTreeSet<String>,
    pub deprecated: bool,
}

impl Namespace {
    pub fn path_text(&self) -> String {
        self.path.join(".")
    }

    /// `lrg.cat`
    pub fn general_form(&self) -> String {
        alloc::format!("{}.{}", self.level.alias(), self.path_text())
    }

    /// `2.cat`
    pub fn numeric_form(&self) -> String {
        alloc::format!("{}.{}", self.level.index(), self.path_text())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VocabularyKind {
    Set,
    Function,
    Relation,
}

impl VocabularyKind {
    pub fn name(self) -> &'static str {
        match self {
            VocabularyKind::Set => "set",
            VocabularyKind::Function => "function",
            VocabularyKind::Relation => "relation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "set" => Some(VocabularyKind::Set),
            "function" => Some(VocabularyKind::Function),
            "relation" => Some(VocabularyKind::Relation),
            _ => None,
        }
    }
}

/// Who cites a vocabulary entry: a term of some namespace, or a namespace
/// sentence that mentions none of its own terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UseRef {
    pub namespace: NamespaceId,
    pub term: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VocabularyEntry {
    pub namespace: NamespaceId,
    pub term: String,
    pub kind: VocabularyKind,
    pub uses: BTreeSet<UseRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("namespace {0} is already registered")]
    DuplicateNamespace(String),
    #[error("special prefix {0} is already in use")]
    SpecialPrefixClash(String),
    #[error("invalid namespace segment {0:?}")]
    InvalidSegment(String),
    #[error("namespace path is empty")]
    EmptyPath,
    #[error("mixed-case prefix {0}")]
    MixedCase(String),
    #[error("unknown prefix {0}")]
    UnknownPrefix(String),
    #[error("no common-use level for {0}")]
    NoCommonLevel(String),
    #[error("ambiguous name {0}")]
    AmbiguousPrefix(String),
    #[error("unknown namespace")]
    UnknownNamespace,
    #[error("unknown term {0}")]
    UnknownTerm(String),
    #[error("{0} is already defined in its namespace")]
    DuplicateEntry(String),
    #[error("concept {0} already has a different common level")]
    CommonLevelConflict(String),
}

/// Common-use level of each top-level concept (`cat` is used at `lrg`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommonLevelTable {
    levels: BTreeMap<String, Metalevel>,
}

impl CommonLevelTable {
    pub fn set(&mut self, concept: &str, level: Metalevel) -> Result<(), RegistryError> {
        match self.levels.get(concept) {
            Some(l) if *l != level => Err(RegistryError::CommonLevelConflict(concept.to_string())),
            _ => {
                self.levels.insert(concept.to_string(), level);
                Ok(())
            }
        }
    }

    pub fn get(&self, concept: &str) -> Option<Metalevel> {
        self.levels.get(concept).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Metalevel)> {
        self.levels.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub namespace: NamespaceId,
    /// Set when the namespace is deprecated; resolution still succeeds.
    pub deprecated: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VocabularyCounts {
    pub sets: usize,
    pub functions: usize,
    pub relations: usize,
    pub total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WarrantStatus {
    /// Used from another namespace on the same level or below.
    Usable,
    /// Used by another term of its own namespace.
    Supporting,
    Both,
    /// No warranting use; violates conceptual warrant.
    Orphan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WarrantReport {
    /// `(namespace, term, status)` in registry order.
    pub entries: Vec<(NamespaceId, String, WarrantStatus)>,
}

impl WarrantReport {
    pub fn orphans(&self) -> impl Iterator<Item = &(NamespaceId, String, WarrantStatus)> {
        self.entries.iter().filter(|e| e.2 == WarrantStatus::Orphan)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Registry {
    namespaces: Vec<Namespace>,
    by_key: BTreeMap<(Metalevel, Vec<String>), NamespaceId>,
    by_special: BTreeMap<String, NamespaceId>,
    entries: Vec<VocabularyEntry>,
    entry_index: BTreeMap<(NamespaceId, String), usize>,
    pub common_levels: CommonLevelTable,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn namespaces(&self) -> &[Namespace] {
        &self.namespaces
    }

    pub fn namespace(&self, id: NamespaceId) -> Option<&Namespace> {
        self.namespaces.get(id.0)
    }

    pub fn entries(&self) -> &[VocabularyEntry] {
        &self.entries
    }

    pub fn find_namespace(&self, level: Metalevel, path: &[String]) -> Option<NamespaceId> {
        self.by_key.get(&(level, path.to_vec())).copied()
    }

    pub fn register_namespace(
        &mut self,
        level: Metalevel,
        path: &[&str],
        special_prefixes: &[&str],
    ) -> Result<NamespaceId, RegistryError> {
        if path.is_empty() {
            return Err(RegistryError::EmptyPath);
        }
        if let Some(bad) = path.iter().find(|s| !is_lower_segment(s)) {
            return Err(RegistryError::InvalidSegment(bad.to_string()));
        }
        let path: Vec<String> = path.iter().map(|s| s.to_string()).collect();
        let key = (level, path.clone());
        if self.by_key.contains_key(&key) {
            return Err(RegistryError::DuplicateNamespace(alloc::format!("{}.{}", level, path.join("."))));
        }
        for sp in special_prefixes {
            if !sp.split('.').all(is_upper_segment) {
                return Err(RegistryError::InvalidSegment(sp.to_string()));
            }
            if self.by_special.contains_key(*sp) {
                return Err(RegistryError::SpecialPrefixClash(sp.to_string()));
            }
        }
        let id = NamespaceId(self.namespaces.len());
        for sp in special_prefixes {
            self.by_special.insert(sp.to_string(), id);
        }
        self.by_key.insert(key, id);
        self.namespaces.push(Namespace {
            id,
            level,
            path,
            special_prefixes: special_prefixes.iter().map(|s| s.to_string()).collect(),
            deprecated: false,
        });
        Ok(id)
    }

    pub fn set_deprecated(&mut self, id: NamespaceId, deprecated: bool) -> Result<(), RegistryError> {
        let ns = self.namespaces.get_mut(id.0).ok_or(RegistryError::UnknownNamespace)?;
        ns.deprecated = deprecated;
        Ok(())
    }

    pub fn add_entry(&mut self, ns: NamespaceId, term: &str, kind: VocabularyKind) -> Result<(), RegistryError> {
        if ns.0 >= self.namespaces.len() {
            return Err(RegistryError::UnknownNamespace);
        }
        if !is_lower_segment(term) {
            return Err(RegistryError::InvalidSegment(term.to_string()));
        }
        let key = (ns, term.to_string());
        if self.entry_index.contains_key(&key) {
            return Err(RegistryError::DuplicateEntry(alloc::format!("{}:{}", self.namespaces[ns.0].general_form(), term)));
        }
        self.entry_index.insert(key, self.entries.len());
        self.entries.push(VocabularyEntry { namespace: ns, term: term.to_string(), kind, uses: BTreeSet::new() });
        Ok(())
    }

    pub fn remove_entry(&mut self, ns: NamespaceId, term: &str) -> Result<VocabularyEntry, RegistryError> {
        let idx = self
            .entry_index
            .remove(&(ns, term.to_string()))
            .ok_or_else(|| RegistryError::UnknownTerm(term.to_string()))?;
        let removed = self.entries.remove(idx);
        for v in self.entry_index.values_mut() {
            if *v > idx {
                *v -= 1;
            }
        }
        Ok(removed)
    }

    pub fn entry(&self, ns: NamespaceId, term: &str) -> Option<&VocabularyEntry> {
        self.entry_index.get(&(ns, term.to_string())).map(|&i| &self.entries[i])
    }

    /// Resolve any of the four surface forms of a namespace prefix.
    pub fn resolve(&self, surface: &str) -> Result<Resolution, RegistryError> {
        let unknown = || RegistryError::UnknownPrefix(surface.to_string());
        let segments: Vec<&str> = surface.split('.').collect();
        if segments.iter().any(|s| s.is_empty()) {
            return Err(unknown());
        }
        let has_upper = surface.chars().any(|c| c.is_ascii_uppercase());
        let id = if has_upper {
            if !segments.iter().all(|s| is_upper_segment(s)) {
                return Err(RegistryError::MixedCase(surface.to_string()));
            }
            *self.by_special.get(surface).ok_or_else(unknown)?
        } else {
            if let Some(bad) = segments.iter().find(|s| !is_lower_segment(s)) {
                return Err(RegistryError::InvalidSegment(bad.to_string()));
            }
            let first = segments[0];
            let numeric = first.chars().all(|c| c.is_ascii_digit());
            if numeric && (segments.len() == 1 || Metalevel::parse(first).is_none()) {
                return Err(unknown());
            }
            match Metalevel::parse(first) {
                Some(level) if segments.len() > 1 => {
                    let path: Vec<String> = segments[1..].iter().map(|s| s.to_string()).collect();
                    self.find_namespace(level, &path).ok_or_else(unknown)?
                }
                _ => {
                    let level = self
                        .common_levels
                        .get(first)
                        .ok_or_else(|| RegistryError::NoCommonLevel(first.to_string()))?;
                    let path: Vec<String> = segments.iter().map(|s| s.to_string()).collect();
                    self.find_namespace(level, &path).ok_or_else(unknown)?
                }
            }
        };
        Ok(Resolution { namespace: id, deprecated: self.namespaces[id.0].deprecated })
    }

    /// Find the entry a name refers to. Unqualified names are looked up in
    /// `context` first and then registry-wide, where more than one match is
    /// an error.
    pub fn lookup_term(&self, name: &QualifiedName, context: Option<NamespaceId>) -> Result<&VocabularyEntry, RegistryError> {
        if let Some(prefix) = name.prefix_text() {
            let ns = self.resolve(prefix)?.namespace;
            return self.entry(ns, &name.local).ok_or_else(|| RegistryError::UnknownTerm(name.raw.clone()));
        }
        if let Some(e) = context.and_then(|ns| self.entry(ns, &name.local)) {
            return Ok(e);
        }
        let mut hits = self.entries.iter().filter(|e| e.term == name.local);
        match (hits.next(), hits.next()) {
            (Some(e), None) => Ok(e),
            (Some(_), Some(_)) => Err(RegistryError::AmbiguousPrefix(name.raw.clone())),
            (None, _) => Err(RegistryError::UnknownTerm(name.raw.clone())),
        }
    }

    pub fn vocabulary_report(&self, ns: NamespaceId) -> Result<VocabularyCounts, RegistryError> {
        if ns.0 >= self.namespaces.len() {
            return Err(RegistryError::UnknownNamespace);
        }
        let mut c = VocabularyCounts::default();
        for e in self.entries.iter().filter(|e| e.namespace == ns) {
            match e.kind {
                VocabularyKind::Set => c.sets += 1,
                VocabularyKind::Function => c.functions += 1,
                VocabularyKind::Relation => c.relations += 1,
            }
            c.total += 1;
        }
        Ok(c)
    }

    /// Record the use edges induced by a sentence of namespace `ns`: every
    /// mentioned entry is used by each mentioned term of `ns` other than
    /// itself, or by `ns` itself when the sentence mentions none of its
    /// terms. Names that fail to resolve are returned, not recorded.
    pub fn record_uses(&mut self, ns: NamespaceId, sentence: &MetaSentence) -> Vec<RegistryError> {
        let mut mentioned = Vec::new();
        let mut problems = Vec::new();
        sentence.for_each_name(&mut |n| match self.lookup_term(n, Some(ns)) {
            Ok(e) => {
                let key = (e.namespace, e.term.clone());
                if !mentioned.contains(&key) {
                    mentioned.push(key);
                }
            }
            Err(err) => problems.push(err),
        });
        let own: Vec<&String> = mentioned.iter().filter(|(n, _)| *n == ns).map(|(_, t)| t).collect();
        let users: Vec<UseRef> = if own.is_empty() {
            alloc::vec![UseRef { namespace: ns, term: None }]
        } else {
            own.iter().map(|t| UseRef { namespace: ns, term: Some((*t).clone()) }).collect()
        };
        for (ens, term) in &mentioned {
            let idx = self.entry_index[&(*ens, term.clone())];
            for u in &users {
                if u.namespace == *ens && u.term.as_deref() == Some(term.as_str()) {
                    continue;
                }
                self.entries[idx].uses.insert(u.clone());
            }
        }
        problems
    }

    pub fn warrant_check(&self) -> WarrantReport {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let level = self.namespaces[e.namespace.0].level;
                let usable = e
                    .uses
                    .iter()
                    .any(|u| u.namespace != e.namespace && self.namespaces[u.namespace.0].level <= level);
                let supporting = e
                    .uses
                    .iter()
                    .any(|u| u.namespace == e.namespace && u.term.as_deref() != Some(e.term.as_str()));
                let status = match (usable, supporting) {
                    (true, true) => WarrantStatus::Both,
                    (true, false) => WarrantStatus::Usable,
                    (false, true) => WarrantStatus::Supporting,
                    (false, false) => WarrantStatus::Orphan,
                };
                (e.namespace, e.term.clone(), status)
            })
            .collect();
        WarrantReport { entries }
    }

    /// A registry holding the IFF-UR namespace `ur.ur` and its thirty terms.
    pub fn iff_ur() -> Registry {
        let mut reg = Registry::new();
        reg.common_levels.set("ur", Metalevel::UR).expect("fresh table");
        let ns = reg.register_namespace(Metalevel::UR, &["ur"], &["UR"]).expect("fresh registry");
        for k in crate::metastack::KERNEL_CORRESPONDENCE {
            reg.add_entry(ns, k.term, k.kind).expect("kernel terms are unique");
        }
        reg
    }
}
