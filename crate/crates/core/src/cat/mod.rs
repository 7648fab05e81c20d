//! Finite categories and finite-set constructions.
//!
//! A finite set is a size `n` with elements `0..n`. The product `X × Y`
//! encodes the pair `(i, j)` as `i * |Y| + j`.

mod category;
mod diagram;
mod exponent;
mod functor;
pub mod unionfind;

pub use category::{check_category_laws, classify_morphism, ConcreteCategory, FinCategory, Grading, LawReport, LawViolation, MorphismClass};
pub use diagram::{colimit, limit, verify_universal_property, Colimit, ConeKind, Diagram, Limit};
pub use exponent::{curry, exponent, uncurry, Exponent};
pub use functor::{FinFunctor, FinNatTrans, FunctorViolation};

use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("unknown morphism {0}")]
    UnknownMorphism(usize),
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("legs do not form a cone")]
    NotACone,
    #[error("no component at object {0}")]
    ComponentMissing(usize),
    #[error("edge {0} does not match its endpoint sets")]
    IllFormedDiagram(usize),
    #[error("map image out of range")]
    BadMap,
    #[error("morphisms are not composable")]
    NotComposable,
}

/// A total function between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinMap {
    pub source: usize,
    pub target: usize,
    pub images: Vec<usize>,
}

impl FinMap {
    pub fn new(source: usize, target: usize, images: Vec<usize>) -> Result<Self, CatError> {
        if images.len() != source || images.iter().any(|&y| y >= target) {
            return Err(CatError::BadMap);
        }
        Ok(FinMap { source, target, images })
    }

    pub fn identity(n: usize) -> Self {
        FinMap { source: n, target: n, images: (0..n).collect() }
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Self {
        FinMap { source, target, images: alloc::vec![value; source] }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap, CatError> {
        if self.target != g.source {
            return Err(CatError::NotComposable);
        }
        Ok(FinMap { source: self.source, target: g.target, images: self.images.iter().map(|&y| g.images[y]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.target];
        self.images.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = alloc::vec![false; self.target];
        self.images.iter().for_each(|&y| seen[y] = true);
        seen.into_iter().all(|b| b)
    }

    /// Every map `source → target`, in lexicographic order of images.
    pub fn all(source: usize, target: usize) -> AllMaps {
        AllMaps { source, target, next: if target == 0 && source > 0 { None } else { Some(alloc::vec![0; source]) } }
    }
}

pub struct AllMaps {
    source: usize,
    target: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = FinMap;

    fn next(&mut self) -> Option<FinMap> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = self.source;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < self.target {
                succ[i] += 1;
                advanced = true;
                break;
            }
            succ[i] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(FinMap { source: self.source, target: self.target, images: cur })
    }
}

/// `n ^ k`, saturating.
pub fn power(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, _| acc.saturating_mul(n))
}

/// A finite directed multigraph. Edge `e` runs `edges[e].0 → edges[e].1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl FinGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self, CatError> {
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s >= nodes || t >= nodes) {
            return Err(CatError::UnknownObject(s.max(t)));
        }
        Ok(FinGraph { nodes, edges })
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_enumeration_counts() {
        assert_eq!(FinMap::all(2, 3).count(), 9);
        assert_eq!(FinMap::all(0, 3).count(), 1);
        assert_eq!(FinMap::all(0, 0).count(), 1);
        assert_eq!(FinMap::all(2, 0).count(), 0);
        let maps: Vec<_> = FinMap::all(2, 2).map(|m| m.images).collect();
        assert_eq!(maps, alloc::vec![alloc::vec![0, 0], alloc::vec![0, 1], alloc::vec![1, 0], alloc::vec![1, 1]]);
    }

    #[test]
    fn map_properties() {
        let f = FinMap::new(2, 3, alloc::vec![0, 2]).unwrap();
        assert!(f.is_injective() && !f.is_surjective());
        assert_eq!(FinMap::new(2, 1, alloc::vec![0, 1]), Err(CatError::BadMap));
        let g = FinMap::constant(3, 1, 0);
        assert_eq!(f.then(&g).unwrap(), FinMap::constant(2, 1, 0));
        assert!(g.then(&f).is_err());
    }
}
