//! Classifications, infomorphisms, concept lattices and local logics.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassificationError {
    #[error("incidence names unknown token {0}")]
    UnknownToken(String),
    #[error("incidence names unknown type {0}")]
    UnknownType(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("too many types for an exhaustive check")]
    TooManyTypes,
}

/// Tokens, types and the incidence between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tokens: Vec<String>,
    pub types: Vec<String>,
    /// Types of each token.
    rows: Vec<FixedBitSet>,
    /// Tokens of each type.
    cols: Vec<FixedBitSet>,
}

impl Classification {
    pub fn new(tokens: Vec<String>, types: Vec<String>) -> Self {
        let rows = alloc::vec![FixedBitSet::with_capacity(types.len()); tokens.len()];
        let cols = alloc::vec![FixedBitSet::with_capacity(tokens.len()); types.len()];
        Classification { tokens, types, rows, cols }
    }

    pub fn from_names(tokens: &[&str], types: &[&str], incidence: &[(&str, &str)]) -> Result<Self, ClassificationError> {
        for names in [tokens, types] {
            let mut sorted = names.to_vec();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(ClassificationError::DuplicateName(w[0].into()));
            }
        }
        let mut c = Classification::new(tokens.iter().map(|s| String::from(*s)).collect(), types.iter().map(|s| String::from(*s)).collect());
        for (a, t) in incidence {
            let i = tokens.iter().position(|x| x == a).ok_or_else(|| ClassificationError::UnknownToken((*a).into()))?;
            let j = types.iter().position(|x| x == t).ok_or_else(|| ClassificationError::UnknownType((*t).into()))?;
            c.set(i, j, true);
        }
        Ok(c)
    }

    pub fn set(&mut self, token: usize, ty: usize, value: bool) {
        self.rows[token].set(ty, value);
        self.cols[ty].set(token, value);
    }

    pub fn holds(&self, token: usize, ty: usize) -> bool {
        self.rows[token].contains(ty)
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn row(&self, token: usize) -> &FixedBitSet {
        &self.rows[token]
    }

    pub fn column(&self, ty: usize) -> &FixedBitSet {
        &self.cols[ty]
    }

    pub fn all_tokens(&self) -> FixedBitSet {
        full(self.tokens.len())
    }

    pub fn all_types(&self) -> FixedBitSet {
        full(self.types.len())
    }

    /// Types held by every token of `x`.
    pub fn intent(&self, x: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_types();
        for a in x.ones() {
            out.intersect_with(&self.rows[a]);
        }
        out
    }

    /// Tokens holding every type of `y`.
    pub fn extent(&self, y: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_tokens();
        for t in y.ones() {
            out.intersect_with(&self.cols[t]);
        }
        out
    }

    pub fn close_tokens(&self, x: &FixedBitSet) -> FixedBitSet {
        self.extent(&self.intent(x))
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }
}

pub fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn bits(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for m in members {
        s.insert(m);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalConcept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

/// Concepts in lectic order of their extents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptLattice {
    pub concepts: Vec<FormalConcept>,
    by_extent: BTreeMap<Vec<usize>, usize>,
}

fn key(s: &FixedBitSet) -> Vec<usize> {
    s.ones().collect()
}

/// All concepts, by next closure over token indices.
pub fn concepts(c: &Classification) -> ConceptLattice {
    let n = c.token_count();
    let mut out = Vec::new();
    let mut a = c.close_tokens(&FixedBitSet::with_capacity(n));
    loop {
        out.push(FormalConcept { intent: c.intent(&a), extent: a.clone() });
        let mut next = None;
        for i in (0..n).rev() {
            if a.contains(i) {
                continue;
            }
            let mut seed = a.clone();
            seed.remove_range(i..);
            seed.insert(i);
            let b = c.close_tokens(&seed);
            let new_below = (0..i).any(|j| b.contains(j) && !a.contains(j));
            if !new_below {
                next = Some(b);
                break;
            }
        }
        match next {
            Some(b) => a = b,
            None => break,
        }
    }
    ConceptLattice::from_concepts(out)
}

impl ConceptLattice {
    pub fn from_concepts(concepts: Vec<FormalConcept>) -> Self {
        let by_extent = concepts.iter().enumerate().map(|(i, k)| (key(&k.extent), i)).collect();
        ConceptLattice { concepts, by_extent }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn index_of_extent(&self, extent: &FixedBitSet) -> Option<usize> {
        self.by_extent.get(&key(extent)).copied()
    }

    /// Order by extent inclusion.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.concepts[a].extent.is_subset(&self.concepts[b].extent)
    }

    pub fn meet(&self, c: &Classification, a: usize, b: usize) -> usize {
        let mut e = self.concepts[a].extent.clone();
        e.intersect_with(&self.concepts[b].extent);
        self.index_of_extent(&c.close_tokens(&e)).expect("closed extent is a concept")
    }

    pub fn join(&self, c: &Classification, a: usize, b: usize) -> usize {
        let mut i = self.concepts[a].intent.clone();
        i.intersect_with(&self.concepts[b].intent);
        self.index_of_extent(&c.extent(&i)).expect("closed extent is a concept")
    }

    pub fn top(&self) -> usize {
        (0..self.len()).max_by_key(|&i| self.concepts[i].extent.count_ones(..)).expect("lattice is nonempty")
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).min_by_key(|&i| self.concepts[i].extent.count_ones(..)).expect("lattice is nonempty")
    }
}

/// Maps `types(A) → types(B)` and `tokens(B) → tokens(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infomorphism {
    pub type_map: Vec<usize>,
    pub token_map: Vec<usize>,
}

impl Infomorphism {
    pub fn identity(c: &Classification) -> Self {
        Infomorphism { type_map: (0..c.type_count()).collect(), token_map: (0..c.token_count()).collect() }
    }

    /// `token_map(b) ⊨_A α` iff `b ⊨_B type_map(α)` for all `b`, `α`.
    pub fn check(&self, a: &Classification, b: &Classification) -> bool {
        if self.type_map.len() != a.type_count()
            || self.token_map.len() != b.token_count()
            || self.type_map.iter().any(|&t| t >= b.type_count())
            || self.token_map.iter().any(|&x| x >= a.token_count())
        {
            return false;
        }
        (0..b.token_count()).all(|tok| (0..a.type_count()).all(|ty| a.holds(self.token_map[tok], ty) == b.holds(tok, self.type_map[ty])))
    }

    /// `self : A ⇄ B` followed by `other : B ⇄ C`.
    pub fn then(&self, other: &Infomorphism) -> Infomorphism {
        Infomorphism {
            type_map: self.type_map.iter().map(|&t| other.type_map[t]).collect(),
            token_map: other.token_map.iter().map(|&x| self.token_map[x]).collect(),
        }
    }
}

/// `rows[a]` lists the `B`-types related to `A`-token `a`. A bond has every
/// row closed in `B` and every column closed in `A`.
pub fn is_bond(a: &Classification, b: &Classification, rows: &[FixedBitSet]) -> bool {
    if rows.len() != a.token_count() {
        return false;
    }
    let rows_closed = rows.iter().all(|r| b.intent(&b.extent(r)) == *r);
    let cols_closed = (0..b.type_count()).all(|t| {
        let col = bits(a.token_count(), (0..rows.len()).filter(|&x| rows[x].contains(t)));
        a.extent(&a.intent(&col)) == col
    });
    rows_closed && cols_closed
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: FixedBitSet,
    pub consequent: FixedBitSet,
}

impl Sequent {
    /// A type state satisfies the sequent when holding every antecedent
    /// entails holding some consequent.
    pub fn satisfied_by(&self, state: &FixedBitSet) -> bool {
        !self.antecedent.is_subset(state) || !self.consequent.is_disjoint(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLogic {
    pub classification: Classification,
    pub constraints: Vec<Sequent>,
    pub normal_tokens: FixedBitSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLogicReport {
    pub sound: bool,
    pub complete: bool,
    /// `(token, constraint)` pairs breaking soundness.
    pub violations: Vec<(usize, usize)>,
}

pub const MAX_LOGIC_TYPES: usize = 20;

/// Complete means every type state satisfying the constraints is the state
/// of some normal token, so no sequent true on all normal tokens escapes
/// the constraints.
pub fn check_local_logic(l: &LocalLogic) -> Result<LocalLogicReport, ClassificationError> {
    let c = &l.classification;
    let n = c.type_count();
    if n > MAX_LOGIC_TYPES {
        return Err(ClassificationError::TooManyTypes);
    }
    let mut violations = Vec::new();
    for tok in l.normal_tokens.ones() {
        for (k, s) in l.constraints.iter().enumerate() {
            if !s.satisfied_by(c.row(tok)) {
                violations.push((tok, k));
            }
        }
    }
    let normal_states: alloc::collections::BTreeSet<Vec<usize>> = l.normal_tokens.ones().map(|t| key(c.row(t))).collect();
    let complete = (0u64..1 << n).all(|mask| {
        let state = bits(n, (0..n).filter(|&i| mask & (1 << i) != 0));
        !l.constraints.iter().all(|s| s.satisfied_by(&state)) || normal_states.contains(&key(&state))
    });
    Ok(LocalLogicReport { sound: violations.is_empty(), complete, violations })
}

/// Every sequent over the types that every normal token satisfies.
pub fn theory_of_normal_tokens(l: &LocalLogic) -> Result<Vec<Sequent>, ClassificationError> {
    let c = &l.classification;
    let n = c.type_count();
    if n > MAX_LOGIC_TYPES / 2 {
        return Err(ClassificationError::TooManyTypes);
    }
    let mut out = Vec::new();
    for g in 0u64..1 << n {
        for d in 0u64..1 << n {
            let s = Sequent {
                antecedent: bits(n, (0..n).filter(|&i| g & (1 << i) != 0)),
                consequent: bits(n, (0..n).filter(|&i| d & (1 << i) != 0)),
            };
            if l.normal_tokens.ones().all(|t| s.satisfied_by(c.row(t))) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Classification {
        Classification::from_names(&["a", "b"], &["1", "2"], &[("a", "1"), ("b", "2")]).unwrap()
    }

    #[test]
    fn derivations() {
        let c = diamond();
        let none = FixedBitSet::with_capacity(2);
        assert_eq!(c.intent(&none), c.all_types());
        assert_eq!(c.extent(&none), c.all_tokens());
        let a = bits(2, [0]);
        assert_eq!(c.intent(&a), bits(2, [0]));
        assert_eq!(c.extent(&c.intent(&a)), a);
    }

    #[test]
    fn worked_lattices() {
        let empty = Classification::new(Vec::new(), Vec::new());
        assert_eq!(concepts(&empty).len(), 1);
        let d = concepts(&diamond());
        assert_eq!(d.len(), 4);
        let chain = Classification::from_names(&["a", "b"], &["1", "2"], &[("a", "1"), ("a", "2"), ("b", "2")]).unwrap();
        assert_eq!(concepts(&chain).len(), 2);
    }

    #[test]
    fn lectic_order() {
        let d = concepts(&diamond());
        let extents: Vec<Vec<usize>> = d.concepts.iter().map(|k| k.extent.ones().collect()).collect();
        assert_eq!(extents, alloc::vec![alloc::vec![], alloc::vec![1], alloc::vec![0], alloc::vec![0, 1]]);
        let c = diamond();
        assert_eq!(d.concepts[d.meet(&c, 1, 2)].extent.count_ones(..), 0);
        assert_eq!(d.join(&c, 1, 2), d.top());
        assert_eq!(d.bottom(), 0);
    }

    #[test]
    fn infomorphism_checks() {
        let c = diamond();
        assert!(Infomorphism::identity(&c).check(&c, &c));
        let collapse = Infomorphism { type_map: alloc::vec![0, 0], token_map: alloc::vec![0, 1] };
        assert!(!collapse.check(&c, &c));
        let one = Classification::from_names(&["*"], &["t"], &[("*", "t")]).unwrap();
        for tok in 0..2 {
            let i = Infomorphism { type_map: alloc::vec![0, 0], token_map: alloc::vec![tok] };
            assert!(!i.check(&c, &one));
        }
        let full_row = Classification::from_names(&["a"], &["1", "2"], &[("a", "1"), ("a", "2")]).unwrap();
        let i = Infomorphism { type_map: alloc::vec![0, 0], token_map: alloc::vec![0] };
        assert!(i.check(&full_row, &one));
    }

    #[test]
    fn local_logic_cases() {
        let c = Classification::from_names(&["a", "b", "c"], &["1", "2"], &[("a", "1"), ("b", "1"), ("b", "2")]).unwrap();
        let all = c.all_tokens();
        let free = LocalLogic { classification: c.clone(), constraints: Vec::new(), normal_tokens: all.clone() };
        let r = check_local_logic(&free).unwrap();
        assert!(r.sound && !r.complete);
        let bad = LocalLogic {
            classification: c.clone(),
            constraints: alloc::vec![Sequent { antecedent: bits(2, [0]), consequent: bits(2, [1]) }],
            normal_tokens: all.clone(),
        };
        let r = check_local_logic(&bad).unwrap();
        assert!(!r.sound);
        assert_eq!(r.violations, alloc::vec![(0, 0)]);
        let mut fix = free.clone();
        fix.constraints = theory_of_normal_tokens(&free).unwrap();
        let r = check_local_logic(&fix).unwrap();
        assert!(r.sound && r.complete);
    }

    #[test]
    fn bonds() {
        let c = diamond();
        let rows: Vec<FixedBitSet> = (0..2).map(|t| c.row(t).clone()).collect();
        assert!(is_bond(&c, &c, &rows));
        let chain = Classification::from_names(&["a", "b"], &["1", "2"], &[("a", "1"), ("a", "2"), ("b", "2")]).unwrap();
        let not_closed = alloc::vec![bits(2, [0]), bits(2, [])];
        assert!(!is_bond(&c, &chain, &not_closed));
    }
}
