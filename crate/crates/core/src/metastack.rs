//! Finite sets, functions and relations tagged with a metalevel, and the
//! three fundamental relations between adjacent levels: subset,
//! restriction and abridgment.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::registry::{Metalevel, VocabularyKind};

pub type Element = String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MetastackError {
    #[error("object level carries no metastack data")]
    ObjectLevel,
    #[error("expected level {expected}, found {found}")]
    LevelMismatch { expected: u8, found: u8 },
    #[error("{0} is not an element of the carrier")]
    NotInCarrier(Element),
    #[error("no image for {0}")]
    Undefined(Element),
    #[error("image of {0} escapes the chosen target")]
    ImageEscapesTarget(Element),
    #[error("functions are not composable")]
    NotComposable,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LeveledSet {
    pub level: Metalevel,
    pub elements: BTreeSet<Element>,
}

impl LeveledSet {
    pub fn new<I, S>(level: Metalevel, elements: I) -> Result<Self, MetastackError>
    where
        I: IntoIterator<Item = S>,
        S: Into<Element>,
    {
        if level == Metalevel::OBJ {
            return Err(MetastackError::ObjectLevel);
        }
        Ok(LeveledSet { level, elements: elements.into_iter().map(Into::into).collect() })
    }

    pub fn contains(&self, x: &str) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subset_of(&self, other: &LeveledSet) -> bool {
        self.elements.is_subset(&other.elements)
    }

    fn relevel(&self, level: Metalevel) -> LeveledSet {
        LeveledSet { level, elements: self.elements.clone() }
    }
}

/// A function, possibly partial. When `domain` is set the map is defined
/// exactly on it; otherwise on all of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledFunction {
    pub level: Metalevel,
    pub source: LeveledSet,
    pub target: LeveledSet,
    pub map: BTreeMap<Element, Element>,
    pub domain: Option<BTreeSet<Element>>,
}

impl LeveledFunction {
    pub fn new<I, A, B>(source: LeveledSet, target: LeveledSet, map: I) -> Result<Self, MetastackError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Element>,
        B: Into<Element>,
    {
        let map: BTreeMap<Element, Element> = map.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let f = LeveledFunction { level: source.level, source, target, map, domain: None };
        f.check()?;
        Ok(f)
    }

    pub fn partial<I, A, B>(
        source: LeveledSet,
        target: LeveledSet,
        domain: BTreeSet<Element>,
        map: I,
    ) -> Result<Self, MetastackError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Element>,
        B: Into<Element>,
    {
        let map = map.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let f = LeveledFunction { level: source.level, source, target, map, domain: Some(domain) };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), MetastackError> {
        for s in [&self.source, &self.target] {
            if s.level != self.level {
                return Err(MetastackError::LevelMismatch { expected: self.level.index(), found: s.level.index() });
            }
        }
        let dom = self.domain();
        for x in dom.iter() {
            if !self.source.contains(x) {
                return Err(MetastackError::NotInCarrier((*x).clone()));
            }
            let y = self.map.get(*x).ok_or_else(|| MetastackError::Undefined((*x).clone()))?;
            if !self.target.contains(y) {
                return Err(MetastackError::NotInCarrier(y.clone()));
            }
        }
        if let Some(extra) = self.map.keys().find(|k| !dom.contains(k)) {
            return Err(MetastackError::NotInCarrier(extra.clone()));
        }
        Ok(())
    }

    pub fn domain(&self) -> BTreeSet<&Element> {
        match &self.domain {
            Some(d) => d.iter().collect(),
            None => self.source.elements.iter().collect(),
        }
    }

    pub fn is_total(&self) -> bool {
        self.domain.as_ref().is_none_or(|d| d == &self.source.elements)
    }

    pub fn apply(&self, x: &str) -> Option<&Element> {
        self.map.get(x)
    }

    pub fn identity(set: &LeveledSet) -> LeveledFunction {
        LeveledFunction {
            level: set.level,
            source: set.clone(),
            target: set.clone(),
            map: set.elements.iter().map(|x| (x.clone(), x.clone())).collect(),
            domain: None,
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &LeveledFunction) -> Result<LeveledFunction, MetastackError> {
        if self.target != g.source || !self.is_total() || !g.is_total() {
            return Err(MetastackError::NotComposable);
        }
        let map = self.map.iter().map(|(x, y)| (x.clone(), g.map[y].clone())).collect();
        Ok(LeveledFunction { level: self.level, source: self.source.clone(), target: g.target.clone(), map, domain: None })
    }

    /// The total function on the definition domain.
    pub fn totalize(&self) -> LeveledFunction {
        let elements = self.domain().into_iter().cloned().collect();
        LeveledFunction {
            level: self.level,
            source: LeveledSet { level: self.level, elements },
            target: self.target.clone(),
            map: self.map.clone(),
            domain: None,
        }
    }

    /// The graph of the function as a relation.
    pub fn to_relation(&self) -> LeveledRelation {
        LeveledRelation {
            level: self.level,
            left: self.source.clone(),
            right: self.target.clone(),
            extent: self.map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledRelation {
    pub level: Metalevel,
    pub left: LeveledSet,
    pub right: LeveledSet,
    pub extent: BTreeSet<(Element, Element)>,
}

impl LeveledRelation {
    pub fn new<I, A, B>(left: LeveledSet, right: LeveledSet, extent: I) -> Result<Self, MetastackError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Element>,
        B: Into<Element>,
    {
        if left.level != right.level {
            return Err(MetastackError::LevelMismatch { expected: left.level.index(), found: right.level.index() });
        }
        let extent: BTreeSet<(Element, Element)> = extent.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        for (a, b) in &extent {
            if !left.contains(a) {
                return Err(MetastackError::NotInCarrier(a.clone()));
            }
            if !right.contains(b) {
                return Err(MetastackError::NotInCarrier(b.clone()));
            }
        }
        Ok(LeveledRelation { level: left.level, left, right, extent })
    }

    pub fn projection0(&self) -> impl Iterator<Item = &Element> {
        self.extent.iter().map(|p| &p.0)
    }

    pub fn projection1(&self) -> impl Iterator<Item = &Element> {
        self.extent.iter().map(|p| &p.1)
    }
}

fn adjacent(lower: Metalevel, upper: Metalevel) -> Result<(), MetastackError> {
    if upper.below() == Some(lower) {
        Ok(())
    } else {
        Err(MetastackError::LevelMismatch { expected: lower.index() + 1, found: upper.index() })
    }
}

pub fn is_subobject(lower: &LeveledSet, upper: &LeveledSet) -> Result<bool, MetastackError> {
    adjacent(lower.level, upper.level)?;
    Ok(lower.is_subset_of(upper))
}

/// The inclusion square from `f_k` to `f_k1` commutes.
pub fn is_restriction(f_k: &LeveledFunction, f_k1: &LeveledFunction) -> Result<bool, MetastackError> {
    adjacent(f_k.level, f_k1.level)?;
    if !f_k.source.is_subset_of(&f_k1.source) || !f_k.target.is_subset_of(&f_k1.target) {
        return Ok(false);
    }
    let upper_dom = f_k1.domain();
    Ok(f_k.domain().into_iter().all(|x| upper_dom.contains(x) && f_k.map.get(x) == f_k1.map.get(x)))
}

/// `r_k` is the full relation induced by `r_k1` on the smaller carriers.
pub fn is_abridgment(r_k: &LeveledRelation, r_k1: &LeveledRelation) -> Result<bool, MetastackError> {
    adjacent(r_k.level, r_k1.level)?;
    if !r_k.left.is_subset_of(&r_k1.left) || !r_k.right.is_subset_of(&r_k1.right) {
        return Ok(false);
    }
    let induced: BTreeSet<&(Element, Element)> =
        r_k1.extent.iter().filter(|(a, b)| r_k.left.contains(a) && r_k.right.contains(b)).collect();
    Ok(induced.len() == r_k.extent.len() && r_k.extent.iter().all(|p| induced.contains(p)))
}

fn lower_level(level: Metalevel) -> Result<Metalevel, MetastackError> {
    match level.below() {
        Some(l) if l != Metalevel::OBJ => Ok(l),
        _ => Err(MetastackError::ObjectLevel),
    }
}

fn chosen_subset(carrier: &LeveledSet, chosen: &BTreeSet<Element>, level: Metalevel) -> Result<LeveledSet, MetastackError> {
    if let Some(x) = chosen.iter().find(|x| !carrier.contains(x)) {
        return Err(MetastackError::NotInCarrier(x.clone()));
    }
    Ok(LeveledSet { level, elements: chosen.clone() })
}

pub fn specialize_set(upper: &LeveledSet, chosen: &BTreeSet<Element>) -> Result<LeveledSet, MetastackError> {
    chosen_subset(upper, chosen, lower_level(upper.level)?)
}

pub fn specialize_function(
    f: &LeveledFunction,
    source: &BTreeSet<Element>,
    target: &BTreeSet<Element>,
) -> Result<LeveledFunction, MetastackError> {
    let level = lower_level(f.level)?;
    let src = chosen_subset(&f.source, source, level)?;
    let tgt = chosen_subset(&f.target, target, level)?;
    let upper_dom = f.domain();
    let mut map = BTreeMap::new();
    let mut domain = BTreeSet::new();
    for x in &src.elements {
        if !upper_dom.contains(x) {
            continue;
        }
        let y = &f.map[x];
        if !tgt.contains(y) {
            return Err(MetastackError::ImageEscapesTarget(x.clone()));
        }
        map.insert(x.clone(), y.clone());
        domain.insert(x.clone());
    }
    let domain = (f.domain.is_some() && domain != src.elements).then_some(domain);
    Ok(LeveledFunction { level, source: src, target: tgt, map, domain })
}

pub fn specialize_relation(
    r: &LeveledRelation,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
) -> Result<LeveledRelation, MetastackError> {
    let level = lower_level(r.level)?;
    let left = chosen_subset(&r.left, left, level)?;
    let right = chosen_subset(&r.right, right, level)?;
    let extent = r.extent.iter().filter(|(a, b)| left.contains(a) && right.contains(b)).cloned().collect();
    Ok(LeveledRelation { level, left, right, extent })
}

/// Composable pair `f : A → B`, `g : B → C` at a level and its counterpart
/// one level up.
#[derive(Clone, Debug)]
pub struct InclusionCase {
    pub lower: (LeveledFunction, LeveledFunction),
    pub upper: (LeveledFunction, LeveledFunction),
}

/// Composition at the lower level is the restriction of composition at the
/// upper level, and identities restrict to identities.
pub fn verify_inclusion_functoriality(cases: &[InclusionCase]) -> Result<bool, MetastackError> {
    for c in cases {
        let (f, g) = &c.lower;
        let (f1, g1) = &c.upper;
        let low = f.then(g)?;
        let up = f1.then(g1)?;
        if !is_restriction(&low, &up)? {
            return Ok(false);
        }
        for (s, s1) in [(&f.source, &f1.source), (&f.target, &f1.target), (&g.target, &g1.target)] {
            if !is_restriction(&LeveledFunction::identity(s), &LeveledFunction::identity(s1))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Re-tag data one level down without changing it.
pub fn relevel_function(f: &LeveledFunction) -> Result<LeveledFunction, MetastackError> {
    let level = lower_level(f.level)?;
    Ok(LeveledFunction {
        level,
        source: f.source.relevel(level),
        target: f.target.relevel(level),
        map: f.map.clone(),
        domain: f.domain.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelTerm {
    /// Symbol used in the kernel diagrams; empty for `thing`.
    pub symbol: &'static str,
    pub term: &'static str,
    pub kind: VocabularyKind,
}

const fn k(symbol: &'static str, term: &'static str, kind: VocabularyKind) -> KernelTerm {
    KernelTerm { symbol, term, kind }
}

use VocabularyKind::{Function as F, Relation as R, Set as S};

/// The IFF-UR symbol to term correspondence.
pub const KERNEL_CORRESPONDENCE: [KernelTerm; 30] = [
    k("", "thing", S),
    k("Obj", "object", S),
    k("Mor", "morphism", S),
    k("Mor×Mor", "morphism-morphism", S),
    k("Rel", "relation", S),
    k("Sub", "subordinate", S),
    k("∂0", "source", F),
    k("∂1", "target", F),
    k("ρ", "mor2rel", F),
    k("μ0", "morphism0", F),
    k("μ1", "morphism1", F),
    k("∘", "composition", F),
    k("1", "identity", F),
    k("o0", "object0", F),
    k("o1", "object1", F),
    k("ε", "extent", F),
    k("π0", "projection0", F),
    k("π1", "projection1", F),
    k("λ", "lesser", F),
    k("γ", "greater", F),
    k("ι", "inclusion", F),
    k("δ", "reflex", F),
    k("≤", "subobject", R),
    k("⊥", "disjoint", R),
    k("≅", "isomorphic", R),
    k("⌊", "restriction", R),
    k("◁", "abridgment", R),
    k("Mono", "monomorphism", R),
    k("Epi", "epimorphism", R),
    k("Iso", "isomorphism", R),
];

pub fn kernel_term(symbol: &str) -> Option<&'static KernelTerm> {
    KERNEL_CORRESPONDENCE.iter().find(|k| !k.symbol.is_empty() && k.symbol == symbol)
}

pub fn kernel_terms_of(kind: VocabularyKind) -> Vec<&'static str> {
    KERNEL_CORRESPONDENCE.iter().filter(|k| k.kind == kind).map(|k| k.term).collect()
}
