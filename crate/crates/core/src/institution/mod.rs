//! Institutions: signatures, sentences, models and satisfaction, with
//! theories and bounded-model entailment on top.

pub mod eqn;
pub mod fol;
pub mod lazy;
pub mod prop;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::ifca::{concepts, Classification, ConceptLattice};

pub use eqn::{Eqn, EqnSentence};
pub use fol::{FolMorphism, FolSentence, TinyFol};
pub use prop::{lattice_of_theories, Prop, PropMorphism, PropSentence, PropSignature, TheoryLattice};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InstitutionError {
    #[error("too many atoms or symbols to enumerate")]
    TooLarge,
    #[error("sentence is not over the signature")]
    IllFormedSentence,
    #[error("morphism endpoints do not match")]
    EndpointMismatch,
}

pub trait Institution {
    type Signature: Clone + Debug + PartialEq;
    type Morphism: Clone + Debug + PartialEq;
    type Sentence: Clone + Debug + Ord;
    type Model: Clone + Debug + PartialEq;

    fn name(&self) -> &'static str;
    fn source<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Signature;
    fn target<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Signature;
    fn identity(&self, sig: &Self::Signature) -> Self::Morphism;
    /// `f` followed by `g`.
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Option<Self::Morphism>;
    fn morphisms(&self, a: &Self::Signature, b: &Self::Signature) -> Vec<Self::Morphism>;

    fn sentences(&self, sig: &Self::Signature, depth: u32) -> Vec<Self::Sentence>;
    fn depth(&self, s: &Self::Sentence) -> u32;
    fn well_formed(&self, sig: &Self::Signature, s: &Self::Sentence) -> bool;
    fn translate(&self, m: &Self::Morphism, s: &Self::Sentence) -> Self::Sentence;

    fn models(&self, sig: &Self::Signature, bound: usize) -> Vec<Self::Model>;
    fn reduct(&self, m: &Self::Morphism, model: &Self::Model) -> Self::Model;
    fn satisfies(&self, sig: &Self::Signature, model: &Self::Model, s: &Self::Sentence) -> bool;

    fn show_sentence(&self, sig: &Self::Signature, s: &Self::Sentence) -> String;
    fn show_model(&self, sig: &Self::Signature, m: &Self::Model) -> String;

    /// Whether bounded-model entailment coincides with entailment.
    fn exact(&self) -> bool {
        false
    }

    /// For each candidate, whether every model up to `bound` of all axioms
    /// satisfies it.
    fn entails_each(&self, sig: &Self::Signature, axioms: &[Self::Sentence], candidates: &[Self::Sentence], bound: usize) -> Vec<bool> {
        let models: Vec<Self::Model> =
            self.models(sig, bound).into_iter().filter(|m| axioms.iter().all(|a| self.satisfies(sig, m, a))).collect();
        candidates.iter().map(|c| models.iter().all(|m| self.satisfies(sig, m, c))).collect()
    }

    /// Some model up to `bound` satisfies every axiom.
    fn satisfiable(&self, sig: &Self::Signature, axioms: &[Self::Sentence], bound: usize) -> bool {
        self.models(sig, bound).iter().any(|m| axioms.iter().all(|a| self.satisfies(sig, m, a)))
    }

    /// Sentences where the satisfaction square fails, with a witness model
    /// of the target signature.
    fn satisfaction_violations(
        &self,
        m: &Self::Morphism,
        sentences: &[Self::Sentence],
        bound: usize,
    ) -> Vec<SatisfactionViolation<Self::Sentence, Self::Model>> {
        let (src, tgt) = (self.source(m), self.target(m));
        let models = self.models(tgt, bound);
        let reducts: Vec<Self::Model> = models.iter().map(|x| self.reduct(m, x)).collect();
        let mut out = Vec::new();
        for s in sentences {
            let t = self.translate(m, s);
            for (x, r) in models.iter().zip(&reducts) {
                let in_reduct = self.satisfies(src, r, s);
                if in_reduct != self.satisfies(tgt, x, &t) {
                    out.push(SatisfactionViolation { sentence: s.clone(), model: x.clone(), reduct_satisfies: in_reduct });
                    break;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfactionViolation<S, M> {
    pub sentence: S,
    pub model: M,
    pub reduct_satisfies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport<S, M> {
    pub violations: Vec<SatisfactionViolation<S, M>>,
    pub sentences_checked: usize,
}

impl<S, M> ViolationReport<S, M> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_satisfaction_condition<I: Institution>(
    inst: &I,
    m: &I::Morphism,
    depth: u32,
    bound: usize,
) -> ViolationReport<I::Sentence, I::Model> {
    let sentences = inst.sentences(inst.source(m), depth);
    let violations = inst.satisfaction_violations(m, &sentences, bound);
    ViolationReport { violations, sentences_checked: sentences.len() }
}

/// Translation along identities and composites on enumerated sentences,
/// reducts on enumerated models. Returns the number of failures.
pub fn check_functoriality<I: Institution>(inst: &I, f: &I::Morphism, g: &I::Morphism, depth: u32, bound: usize) -> usize {
    let Some(fg) = inst.compose(f, g) else { return 1 };
    let (a, c) = (inst.source(f), inst.target(g));
    let id = inst.identity(a);
    let mut failures = 0;
    for s in inst.sentences(a, depth) {
        failures += usize::from(inst.translate(&id, &s) != s);
        failures += usize::from(inst.translate(&fg, &s) != inst.translate(g, &inst.translate(f, &s)));
    }
    let id_c = inst.identity(c);
    for x in inst.models(c, bound) {
        failures += usize::from(inst.reduct(&id_c, &x) != x);
        failures += usize::from(inst.reduct(&fg, &x) != inst.reduct(f, &inst.reduct(g, &x)));
    }
    failures
}

/// An institution with its reduct replaced, for mutation tests.
pub struct WithReduct<'a, I: Institution> {
    pub inner: &'a I,
    pub reduct: &'a dyn Fn(&I::Morphism, &I::Model) -> I::Model,
}

impl<I: Institution> Institution for WithReduct<'_, I> {
    type Signature = I::Signature;
    type Morphism = I::Morphism;
    type Sentence = I::Sentence;
    type Model = I::Model;

    fn name(&self) -> &'static str {
        self.inner.name()
    }
    fn source<'a>(&self, m: &'a I::Morphism) -> &'a I::Signature {
        self.inner.source(m)
    }
    fn target<'a>(&self, m: &'a I::Morphism) -> &'a I::Signature {
        self.inner.target(m)
    }
    fn identity(&self, sig: &I::Signature) -> I::Morphism {
        self.inner.identity(sig)
    }
    fn compose(&self, f: &I::Morphism, g: &I::Morphism) -> Option<I::Morphism> {
        self.inner.compose(f, g)
    }
    fn morphisms(&self, a: &I::Signature, b: &I::Signature) -> Vec<I::Morphism> {
        self.inner.morphisms(a, b)
    }
    fn sentences(&self, sig: &I::Signature, depth: u32) -> Vec<I::Sentence> {
        self.inner.sentences(sig, depth)
    }
    fn depth(&self, s: &I::Sentence) -> u32 {
        self.inner.depth(s)
    }
    fn well_formed(&self, sig: &I::Signature, s: &I::Sentence) -> bool {
        self.inner.well_formed(sig, s)
    }
    fn translate(&self, m: &I::Morphism, s: &I::Sentence) -> I::Sentence {
        self.inner.translate(m, s)
    }
    fn models(&self, sig: &I::Signature, bound: usize) -> Vec<I::Model> {
        self.inner.models(sig, bound)
    }
    fn reduct(&self, m: &I::Morphism, model: &I::Model) -> I::Model {
        (self.reduct)(m, model)
    }
    fn satisfies(&self, sig: &I::Signature, model: &I::Model, s: &I::Sentence) -> bool {
        self.inner.satisfies(sig, model, s)
    }
    fn satisfiable(&self, sig: &I::Signature, axioms: &[I::Sentence], bound: usize) -> bool {
        self.inner.satisfiable(sig, axioms, bound)
    }
    fn show_sentence(&self, sig: &I::Signature, s: &I::Sentence) -> String {
        self.inner.show_sentence(sig, s)
    }
    fn show_model(&self, sig: &I::Signature, m: &I::Model) -> String {
        self.inner.show_model(sig, m)
    }
}

#[derive(Debug)]
pub struct Theory<I: Institution> {
    pub signature: I::Signature,
    pub axioms: BTreeSet<I::Sentence>,
}

impl<I: Institution> Clone for Theory<I> {
    fn clone(&self) -> Self {
        Theory { signature: self.signature.clone(), axioms: self.axioms.clone() }
    }
}

impl<I: Institution> Theory<I> {
    pub fn new(inst: &I, signature: I::Signature, axioms: impl IntoIterator<Item = I::Sentence>) -> Result<Self, InstitutionError> {
        let axioms: BTreeSet<I::Sentence> = axioms.into_iter().collect();
        if axioms.iter().any(|a| !inst.well_formed(&signature, a)) {
            return Err(InstitutionError::IllFormedSentence);
        }
        Ok(Theory { signature, axioms })
    }

    pub fn axiom_list(&self) -> Vec<I::Sentence> {
        self.axioms.iter().cloned().collect()
    }
}

impl<I: Institution> PartialEq for Theory<I> {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.axioms == other.axioms
    }
}

#[derive(Clone, Debug)]
pub struct ClosedTheory<I: Institution> {
    pub signature: I::Signature,
    pub sentences: BTreeSet<I::Sentence>,
    pub depth: u32,
    pub bound: usize,
}

impl<I: Institution> PartialEq for ClosedTheory<I> {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.sentences == other.sentences
    }
}

pub fn entails<I: Institution>(inst: &I, t: &Theory<I>, s: &I::Sentence, bound: usize) -> bool {
    inst.entails_each(&t.signature, &t.axiom_list(), core::slice::from_ref(s), bound)[0]
}

/// Entailed sentences up to `depth`.
pub fn closure<I: Institution>(inst: &I, t: &Theory<I>, depth: u32, bound: usize) -> ClosedTheory<I> {
    let candidates = inst.sentences(&t.signature, depth);
    let verdicts = inst.entails_each(&t.signature, &t.axiom_list(), &candidates, bound);
    let sentences = candidates.into_iter().zip(verdicts).filter_map(|(s, ok)| ok.then_some(s)).collect();
    ClosedTheory { signature: t.signature.clone(), sentences, depth, bound }
}

/// No model up to `bound` satisfies every axiom.
pub fn is_inconsistent<I: Institution>(inst: &I, t: &Theory<I>, bound: usize) -> bool {
    !inst.satisfiable(&t.signature, &t.axiom_list(), bound)
}

#[derive(Debug)]
pub struct TheoryMorphism<I: Institution> {
    pub source: Theory<I>,
    pub target: Theory<I>,
    pub sig: I::Morphism,
}

impl<I: Institution> Clone for TheoryMorphism<I> {
    fn clone(&self) -> Self {
        TheoryMorphism { source: self.source.clone(), target: self.target.clone(), sig: self.sig.clone() }
    }
}

/// Every translated source axiom is in the target's closure at the bounds.
pub fn check_theory_morphism<I: Institution>(inst: &I, tm: &TheoryMorphism<I>, depth: u32, bound: usize) -> bool {
    if *inst.source(&tm.sig) != tm.source.signature || *inst.target(&tm.sig) != tm.target.signature {
        return false;
    }
    let translated: Vec<I::Sentence> = tm.source.axioms.iter().map(|a| inst.translate(&tm.sig, a)).collect();
    if translated.iter().any(|t| inst.depth(t) > depth) {
        return false;
    }
    inst.entails_each(&tm.target.signature, &tm.target.axiom_list(), &translated, bound).into_iter().all(|b| b)
}

/// Models as tokens, sentences as types.
pub fn truth_classification<I: Institution>(inst: &I, sig: &I::Signature, sentences: &[I::Sentence], models: &[I::Model]) -> Classification {
    let mut c = Classification::new(
        models.iter().map(|m| inst.show_model(sig, m)).collect(),
        sentences.iter().map(|s| inst.show_sentence(sig, s)).collect(),
    );
    for (i, m) in models.iter().enumerate() {
        for (j, s) in sentences.iter().enumerate() {
            if inst.satisfies(sig, m, s) {
                c.set(i, j, true);
            }
        }
    }
    c
}

pub fn truth_lattice<I: Institution>(inst: &I, sig: &I::Signature, depth: u32, bound: usize) -> (Classification, ConceptLattice) {
    let c = truth_classification(inst, sig, &inst.sentences(sig, depth), &inst.models(sig, bound));
    let l = concepts(&c);
    (c, l)
}
