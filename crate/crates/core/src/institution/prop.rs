//! Propositional logic over finite atom sets.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use super::{Institution, InstitutionError};
use crate::ifca::ConceptLattice;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropSignature {
    pub atoms: Vec<String>,
}

impl PropSignature {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Self {
        PropSignature { atoms: atoms.into_iter().map(Into::into).collect() }
    }

    pub fn atom(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropMorphism {
    pub source: PropSignature,
    pub target: PropSignature,
    pub map: Vec<usize>,
}

impl PropMorphism {
    pub fn new(source: &PropSignature, target: &PropSignature, map: Vec<usize>) -> Result<Self, InstitutionError> {
        if map.len() != source.atoms.len() || map.iter().any(|&a| a >= target.atoms.len()) {
            return Err(InstitutionError::EndpointMismatch);
        }
        Ok(PropMorphism { source: source.clone(), target: target.clone(), map })
    }

    pub fn by_names(source: &PropSignature, target: &PropSignature, pairs: &[(&str, &str)]) -> Result<Self, InstitutionError> {
        let mut map = alloc::vec![usize::MAX; source.atoms.len()];
        for (a, b) in pairs {
            let i = source.atom(a).ok_or(InstitutionError::EndpointMismatch)?;
            map[i] = target.atom(b).ok_or(InstitutionError::EndpointMismatch)?;
        }
        PropMorphism::new(source, target, map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropSentence {
    True,
    False,
    Atom(usize),
    Not(Box<PropSentence>),
    And(Box<PropSentence>, Box<PropSentence>),
    Or(Box<PropSentence>, Box<PropSentence>),
    Implies(Box<PropSentence>, Box<PropSentence>),
    Iff(Box<PropSentence>, Box<PropSentence>),
}

use PropSentence as P;

impl PropSentence {
    pub fn not(a: PropSentence) -> Self {
        P::Not(Box::new(a))
    }
    pub fn and(a: PropSentence, b: PropSentence) -> Self {
        P::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: PropSentence, b: PropSentence) -> Self {
        P::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: PropSentence, b: PropSentence) -> Self {
        P::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: PropSentence, b: PropSentence) -> Self {
        P::Iff(Box::new(a), Box::new(b))
    }

    /// Number of connectives.
    pub fn size(&self) -> u32 {
        match self {
            P::True | P::False | P::Atom(_) => 0,
            P::Not(a) => 1 + a.size(),
            P::And(a, b) | P::Or(a, b) | P::Implies(a, b) | P::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Bit `i` is the value of atom `i`.
    pub fn eval(&self, model: u64) -> bool {
        match self {
            P::True => true,
            P::False => false,
            P::Atom(i) => model >> i & 1 == 1,
            P::Not(a) => !a.eval(model),
            P::And(a, b) => a.eval(model) && b.eval(model),
            P::Or(a, b) => a.eval(model) || b.eval(model),
            P::Implies(a, b) => !a.eval(model) || b.eval(model),
            P::Iff(a, b) => a.eval(model) == b.eval(model),
        }
    }

    pub fn rename(&self, map: &[usize]) -> PropSentence {
        let bin = |a: &PropSentence, b: &PropSentence| (Box::new(a.rename(map)), Box::new(b.rename(map)));
        match self {
            P::True => P::True,
            P::False => P::False,
            P::Atom(i) => P::Atom(map[*i]),
            P::Not(a) => P::Not(Box::new(a.rename(map))),
            P::And(a, b) => {
                let (a, b) = bin(a, b);
                P::And(a, b)
            }
            P::Or(a, b) => {
                let (a, b) = bin(a, b);
                P::Or(a, b)
            }
            P::Implies(a, b) => {
                let (a, b) = bin(a, b);
                P::Implies(a, b)
            }
            P::Iff(a, b) => {
                let (a, b) = bin(a, b);
                P::Iff(a, b)
            }
        }
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            P::True | P::False => None,
            P::Atom(i) => Some(*i),
            P::Not(a) => a.max_atom(),
            P::And(a, b) | P::Or(a, b) | P::Implies(a, b) | P::Iff(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a PropSignature) -> PropDisplay<'a> {
        PropDisplay { s: self, sig }
    }
}

pub struct PropDisplay<'a> {
    s: &'a PropSentence,
    sig: &'a PropSignature,
}

impl fmt::Display for PropDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |s| PropDisplay { s, sig: self.sig };
        match self.s {
            P::True => f.write_str("true"),
            P::False => f.write_str("false"),
            P::Atom(i) => f.write_str(&self.sig.atoms[*i]),
            P::Not(a) => write!(f, "(not {})", sub(a)),
            P::And(a, b) => write!(f, "(and {} {})", sub(a), sub(b)),
            P::Or(a, b) => write!(f, "(or {} {})", sub(a), sub(b)),
            P::Implies(a, b) => write!(f, "(implies {} {})", sub(a), sub(b)),
            P::Iff(a, b) => write!(f, "(iff {} {})", sub(a), sub(b)),
        }
    }
}

/// All sentences with at most `size` connectives, by increasing size.
pub fn prop_sentences(atoms: usize, size: u32) -> Vec<PropSentence> {
    let mut layers: Vec<Vec<PropSentence>> = Vec::new();
    let mut base = alloc::vec![P::True, P::False];
    base.extend((0..atoms).map(P::Atom));
    layers.push(base);
    for k in 1..=size as usize {
        let mut layer: Vec<PropSentence> = layers[k - 1].iter().cloned().map(P::not).collect();
        for op in 0..4 {
            for a in 0..k {
                for l in &layers[a] {
                    for r in &layers[k - 1 - a] {
                        let (l, r) = (l.clone(), r.clone());
                        layer.push(match op {
                            0 => P::and(l, r),
                            1 => P::or(l, r),
                            2 => P::implies(l, r),
                            _ => P::iff(l, r),
                        });
                    }
                }
            }
        }
        layers.push(layer);
    }
    layers.into_iter().flatten().collect()
}

pub const MAX_ATOMS: usize = 16;

/// Models are bitmasks over the atoms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Prop;

impl Institution for Prop {
    type Signature = PropSignature;
    type Morphism = PropMorphism;
    type Sentence = PropSentence;
    type Model = u64;

    fn name(&self) -> &'static str {
        "prop"
    }
    fn source<'a>(&self, m: &'a PropMorphism) -> &'a PropSignature {
        &m.source
    }
    fn target<'a>(&self, m: &'a PropMorphism) -> &'a PropSignature {
        &m.target
    }
    fn identity(&self, sig: &PropSignature) -> PropMorphism {
        PropMorphism { source: sig.clone(), target: sig.clone(), map: (0..sig.atoms.len()).collect() }
    }
    fn compose(&self, f: &PropMorphism, g: &PropMorphism) -> Option<PropMorphism> {
        (f.target == g.source).then(|| PropMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            map: f.map.iter().map(|&a| g.map[a]).collect(),
        })
    }
    fn morphisms(&self, a: &PropSignature, b: &PropSignature) -> Vec<PropMorphism> {
        let (n, k) = (a.atoms.len(), b.atoms.len());
        crate::cat::FinMap::all(n, k).map(|f| PropMorphism { source: a.clone(), target: b.clone(), map: f.images }).collect()
    }
    fn sentences(&self, sig: &PropSignature, depth: u32) -> Vec<PropSentence> {
        prop_sentences(sig.atoms.len(), depth)
    }
    fn depth(&self, s: &PropSentence) -> u32 {
        s.size()
    }
    fn well_formed(&self, sig: &PropSignature, s: &PropSentence) -> bool {
        s.max_atom().is_none_or(|a| a < sig.atoms.len())
    }
    fn translate(&self, m: &PropMorphism, s: &PropSentence) -> PropSentence {
        s.rename(&m.map)
    }
    fn models(&self, sig: &PropSignature, _bound: usize) -> Vec<u64> {
        let n = sig.atoms.len().min(MAX_ATOMS);
        (0..1u64 << n).collect()
    }
    fn reduct(&self, m: &PropMorphism, model: &u64) -> u64 {
        m.map.iter().enumerate().fold(0, |acc, (i, &a)| acc | (model >> a & 1) << i)
    }
    fn satisfies(&self, _sig: &PropSignature, model: &u64, s: &PropSentence) -> bool {
        s.eval(*model)
    }
    fn show_sentence(&self, sig: &PropSignature, s: &PropSentence) -> String {
        format!("{}", s.display(sig))
    }
    fn show_model(&self, sig: &PropSignature, m: &u64) -> String {
        let on: Vec<&str> = (0..sig.atoms.len()).filter(|&i| m >> i & 1 == 1).map(|i| sig.atoms[i].as_str()).collect();
        format!("{{{}}}", on.join(" "))
    }
    fn exact(&self) -> bool {
        true
    }
}

/// Closed theories at a fixed signature, as sets of sentence indices.
#[derive(Clone, Debug)]
pub struct TheoryLattice {
    pub signature: PropSignature,
    pub sentences: Vec<PropSentence>,
    pub theories: Vec<FixedBitSet>,
    /// Truth table of each sentence over the `2^n` models.
    tables: Vec<u64>,
    index: BTreeMap<Vec<usize>, usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LatticeLawReport {
    pub pairs: usize,
    pub triples: usize,
    pub absorption_failures: usize,
    pub associativity_failures: usize,
    pub commutativity_failures: usize,
    pub idempotence_failures: usize,
}

impl LatticeLawReport {
    pub fn holds(&self) -> bool {
        self.absorption_failures + self.associativity_failures + self.commutativity_failures + self.idempotence_failures == 0
    }
}

fn key(s: &FixedBitSet) -> Vec<usize> {
    s.ones().collect()
}

/// Theories are enumerated from the `2^(2^n)` model sets, closed and
/// deduplicated.
pub fn lattice_of_theories(sig: &PropSignature, depth: u32) -> Result<TheoryLattice, InstitutionError> {
    let n = sig.atoms.len();
    if n > 3 {
        return Err(InstitutionError::TooLarge);
    }
    let sentences = prop_sentences(n, depth);
    let models = 1u64 << n;
    let tables: Vec<u64> =
        sentences.iter().map(|s| (0..models).filter(|&m| s.eval(m)).fold(0, |acc, m| acc | 1 << m)).collect();
    let mut lattice = TheoryLattice { signature: sig.clone(), sentences, theories: Vec::new(), tables, index: BTreeMap::new() };
    let mut found = BTreeMap::new();
    for s in 0..1u64 << models {
        let t = lattice.sentences_true_in(s);
        let closed = lattice.close(&t);
        found.entry(key(&closed)).or_insert(closed);
    }
    lattice.theories = found.into_values().collect();
    lattice.index = lattice.theories.iter().enumerate().map(|(i, t)| (key(t), i)).collect();
    Ok(lattice)
}

impl TheoryLattice {
    pub fn len(&self) -> usize {
        self.theories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theories.is_empty()
    }

    fn all_models(&self) -> u64 {
        (1u64 << (1u64 << self.signature.atoms.len())) - 1
    }

    fn sentences_true_in(&self, model_set: u64) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.sentences.len());
        for (i, &t) in self.tables.iter().enumerate() {
            if t & model_set == model_set {
                out.insert(i);
            }
        }
        out
    }

    pub fn models_of(&self, theory: &FixedBitSet) -> u64 {
        theory.ones().fold(self.all_models(), |acc, i| acc & self.tables[i])
    }

    pub fn close(&self, sentences: &FixedBitSet) -> FixedBitSet {
        self.sentences_true_in(self.models_of(sentences))
    }

    pub fn index_of(&self, theory: &FixedBitSet) -> Option<usize> {
        self.index.get(&key(theory)).copied()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.theories[a].is_subset(&self.theories[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut t = self.theories[a].clone();
        t.intersect_with(&self.theories[b]);
        self.index_of(&t).expect("intersection of closed theories is closed")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut t = self.theories[a].clone();
        t.union_with(&self.theories[b]);
        self.index_of(&self.close(&t)).expect("closure is a member")
    }

    pub fn check_laws(&self) -> LatticeLawReport {
        let n = self.len();
        let mut r = LatticeLawReport::default();
        for a in 0..n {
            r.idempotence_failures += usize::from(self.meet(a, a) != a || self.join(a, a) != a);
            for b in 0..n {
                r.pairs += 1;
                r.absorption_failures += usize::from(self.meet(self.join(a, b), a) != a || self.join(self.meet(a, b), a) != a);
                r.commutativity_failures += usize::from(self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a));
                for c in 0..n {
                    r.triples += 1;
                    let m = self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c));
                    let j = self.join(self.join(a, b), c) != self.join(a, self.join(b, c));
                    r.associativity_failures += usize::from(m || j);
                }
            }
        }
        r
    }

    /// Whether concept intents are exactly these theories, with extent
    /// inclusion reversing theory inclusion. The concept types must be the
    /// sentences of this lattice in order.
    pub fn anti_isomorphic_to(&self, concepts: &ConceptLattice) -> bool {
        if concepts.len() != self.len() {
            return false;
        }
        let map: Option<Vec<usize>> = concepts.concepts.iter().map(|k| self.index_of(&k.intent)).collect();
        let Some(map) = map else { return false };
        let mut seen = alloc::vec![false; self.len()];
        if map.iter().any(|&t| core::mem::replace(&mut seen[t], true)) {
            return false;
        }
        (0..concepts.len()).all(|a| (0..concepts.len()).all(|b| concepts.le(a, b) == self.le(map[b], map[a])))
    }
}
