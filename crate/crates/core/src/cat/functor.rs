use alloc::vec::Vec;

use super::{CatError, FinCategory};

#[derive(Clone, Debug)]
pub struct FinFunctor<'a> {
    pub source: &'a FinCategory,
    pub target: &'a FinCategory,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Arity,
    Endpoints { morphism: usize },
    Identity { object: usize },
    Composition { g: usize, f: usize },
}

fn same(a: &FinCategory, b: &FinCategory) -> bool {
    core::ptr::eq(a, b) || a == b
}

impl<'a> FinFunctor<'a> {
    pub fn identity(c: &'a FinCategory) -> Self {
        FinFunctor { source: c, target: c, on_objects: (0..c.objects).collect(), on_morphisms: (0..c.morphisms.len()).collect() }
    }

    /// Preservation of endpoints, identities and every defined composite.
    pub fn check(&self) -> Vec<FunctorViolation> {
        let (s, t) = (self.source, self.target);
        if self.on_objects.len() != s.objects
            || self.on_morphisms.len() != s.morphisms.len()
            || self.on_objects.iter().any(|&o| o >= t.objects)
            || self.on_morphisms.iter().any(|&m| m >= t.morphisms.len())
        {
            return alloc::vec![FunctorViolation::Arity];
        }
        let mut out = Vec::new();
        for (m, &(a, b)) in s.morphisms.iter().enumerate() {
            if t.morphisms[self.on_morphisms[m]] != (self.on_objects[a], self.on_objects[b]) {
                out.push(FunctorViolation::Endpoints { morphism: m });
            }
        }
        for o in 0..s.objects {
            if self.on_morphisms[s.identities[o]] != t.identities[self.on_objects[o]] {
                out.push(FunctorViolation::Identity { object: o });
            }
        }
        for (&(g, f), &h) in &s.comp {
            if t.compose(self.on_morphisms[g], self.on_morphisms[f]) != Some(self.on_morphisms[h]) {
                out.push(FunctorViolation::Composition { g, f });
            }
        }
        out
    }

    pub fn is_functor(&self) -> bool {
        self.check().is_empty()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor<'a>) -> Result<FinFunctor<'a>, CatError> {
        if !same(self.target, other.source) {
            return Err(CatError::NotComposable);
        }
        Ok(FinFunctor {
            source: self.source,
            target: other.target,
            on_objects: self.on_objects.iter().map(|&o| other.on_objects[o]).collect(),
            on_morphisms: self.on_morphisms.iter().map(|&m| other.on_morphisms[m]).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FinNatTrans<'a> {
    pub from: FinFunctor<'a>,
    pub to: FinFunctor<'a>,
    pub components: Vec<Option<usize>>,
}

impl<'a> FinNatTrans<'a> {
    pub fn identity(f: FinFunctor<'a>) -> Self {
        let components = f.on_objects.iter().map(|&o| Some(f.target.identities[o])).collect();
        FinNatTrans { from: f.clone(), to: f, components }
    }

    /// Every component has the right endpoints and every naturality square
    /// commutes.
    pub fn check_naturality(&self) -> Result<bool, CatError> {
        let (f, g) = (&self.from, &self.to);
        if !same(f.source, g.source) || !same(f.target, g.target) {
            return Err(CatError::NotComposable);
        }
        let (s, t) = (f.source, f.target);
        let mut comps = Vec::with_capacity(s.objects);
        for o in 0..s.objects {
            let c = self.components.get(o).copied().flatten().ok_or(CatError::ComponentMissing(o))?;
            if c >= t.morphisms.len() || t.morphisms[c] != (f.on_objects[o], g.on_objects[o]) {
                return Ok(false);
            }
            comps.push(c);
        }
        Ok(s.morphisms.iter().enumerate().all(|(m, &(a, b))| {
            let left = t.compose(g.on_morphisms[m], comps[a]);
            let right = t.compose(comps[b], f.on_morphisms[m]);
            left.is_some() && left == right
        }))
    }
}
