use alloc::vec::Vec;

use super::unionfind::UnionFind;
use super::{CatError, FinGraph, FinMap};

/// A diagram of finite sets over a shape graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub shape: FinGraph,
    pub sets: Vec<usize>,
    pub maps: Vec<FinMap>,
}

impl Diagram {
    pub fn new(shape: FinGraph, sets: Vec<usize>, maps: Vec<FinMap>) -> Result<Self, CatError> {
        let d = Diagram { shape, sets, maps };
        d.validate()?;
        Ok(d)
    }

    pub fn empty() -> Self {
        Diagram { shape: FinGraph::default(), sets: Vec::new(), maps: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), CatError> {
        if self.sets.len() != self.shape.nodes {
            return Err(CatError::UnknownObject(self.sets.len()));
        }
        if self.maps.len() != self.shape.edges.len() {
            return Err(CatError::IllFormedDiagram(self.maps.len().min(self.shape.edges.len())));
        }
        for (e, (&(s, t), m)) in self.shape.edges.iter().zip(&self.maps).enumerate() {
            if s >= self.sets.len() || t >= self.sets.len() {
                return Err(CatError::UnknownObject(s.max(t)));
            }
            if m.source != self.sets[s] || m.target != self.sets[t] || m.images.len() != m.source || m.images.iter().any(|&y| y >= m.target) {
                return Err(CatError::IllFormedDiagram(e));
            }
        }
        Ok(())
    }

    /// Two parallel maps `f, g : a → b`.
    pub fn parallel_pair(f: FinMap, g: FinMap) -> Result<Self, CatError> {
        let sets = alloc::vec![f.source, f.target];
        Diagram::new(FinGraph { nodes: 2, edges: alloc::vec![(0, 1), (0, 1)] }, sets, alloc::vec![f, g])
    }

    /// The cospan `f : a → c ← b : g`.
    pub fn cospan(f: FinMap, g: FinMap) -> Result<Self, CatError> {
        let sets = alloc::vec![f.source, g.source, f.target];
        Diagram::new(FinGraph { nodes: 3, edges: alloc::vec![(0, 2), (1, 2)] }, sets, alloc::vec![f, g])
    }

    /// The span `f : c → a`, `g : c → b`, with nodes ordered `a, b, c`.
    pub fn span(f: FinMap, g: FinMap) -> Result<Self, CatError> {
        let sets = alloc::vec![f.target, g.target, f.source];
        Diagram::new(FinGraph { nodes: 3, edges: alloc::vec![(2, 0), (2, 1)] }, sets, alloc::vec![f, g])
    }

    pub fn discrete(sets: Vec<usize>) -> Self {
        Diagram { shape: FinGraph { nodes: sets.len(), edges: Vec::new() }, sets, maps: Vec::new() }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.sets.len() + 1);
        let mut acc = 0;
        for &n in &self.sets {
            off.push(acc);
            acc += n;
        }
        off.push(acc);
        off
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub apex: usize,
    /// The compatible family behind each apex element.
    pub families: Vec<Vec<usize>>,
    pub legs: Vec<FinMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub apex: usize,
    /// Members `(node, element)` of each class, classes ordered by least
    /// member of the disjoint union.
    pub classes: Vec<Vec<(usize, usize)>>,
    pub legs: Vec<FinMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Limit,
    Colimit,
}

/// Compatible families in lexicographic order.
pub fn limit(d: &Diagram) -> Limit {
    let n = d.sets.len();
    let mut families = Vec::new();
    let mut cur = alloc::vec![0usize; n];
    // Edges checked once both endpoints are assigned: at the later node.
    let mut checks: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (e, &(s, t)) in d.shape.edges.iter().enumerate() {
        checks[s.max(t)].push(e);
    }
    fn go(d: &Diagram, checks: &[Vec<usize>], node: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if node == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..d.sets[node] {
            cur[node] = x;
            let ok = checks[node].iter().all(|&e| {
                let (s, t) = d.shape.edges[e];
                d.maps[e].images[cur[s]] == cur[t]
            });
            if ok {
                go(d, checks, node + 1, cur, out);
            }
        }
    }
    go(d, &checks, 0, &mut cur, &mut families);
    let apex = families.len();
    let legs = (0..n)
        .map(|node| FinMap { source: apex, target: d.sets[node], images: families.iter().map(|f| f[node]).collect() })
        .collect();
    Limit { apex, families, legs }
}

/// Quotient of the disjoint union by the equivalence the edges generate.
pub fn colimit(d: &Diagram) -> Colimit {
    let off = d.offsets();
    let total = off[d.sets.len()];
    let mut uf = UnionFind::new(total);
    for (e, &(s, t)) in d.shape.edges.iter().enumerate() {
        for (x, &y) in d.maps[e].images.iter().enumerate() {
            uf.union(off[s] + x, off[t] + y);
        }
    }
    let (apex, labels) = uf.labels();
    let mut classes = alloc::vec![Vec::new(); apex];
    for node in 0..d.sets.len() {
        for x in 0..d.sets[node] {
            classes[labels[off[node] + x]].push((node, x));
        }
    }
    for c in &mut classes {
        c.sort_by_key(|&(node, x)| off[node] + x);
    }
    let legs = (0..d.sets.len())
        .map(|node| FinMap { source: d.sets[node], target: apex, images: labels[off[node]..off[node + 1]].to_vec() })
        .collect();
    Colimit { apex, classes, legs }
}

fn check_cone(d: &Diagram, apex: usize, legs: &[FinMap], kind: ConeKind) -> Result<(), CatError> {
    d.validate()?;
    if legs.len() != d.sets.len() {
        return Err(CatError::NotACone);
    }
    for (node, leg) in legs.iter().enumerate() {
        let (s, t) = match kind {
            ConeKind::Limit => (apex, d.sets[node]),
            ConeKind::Colimit => (d.sets[node], apex),
        };
        if leg.source != s || leg.target != t || leg.images.len() != s || leg.images.iter().any(|&y| y >= t) {
            return Err(CatError::NotACone);
        }
    }
    for (e, &(s, t)) in d.shape.edges.iter().enumerate() {
        let m = &d.maps[e];
        let commutes = match kind {
            ConeKind::Limit => (0..apex).all(|a| m.images[legs[s].images[a]] == legs[t].images[a]),
            ConeKind::Colimit => (0..d.sets[s]).all(|x| legs[t].images[m.images[x]] == legs[s].images[x]),
        };
        if !commutes {
            return Err(CatError::NotACone);
        }
    }
    Ok(())
}

/// Every cone (cocone) with apex of size at most `bound` factors through the
/// given one by exactly one map.
///
/// Cones from an `n`-element set are `n` independent cones from a point, so
/// for limits it suffices to test apex sizes 0 and 1. For colimits, test
/// objects of size 0, 1 and 2 detect every failure of surjectivity and of
/// the kernel condition, so larger test objects are redundant.
pub fn verify_universal_property(d: &Diagram, apex: usize, legs: &[FinMap], kind: ConeKind, bound: usize) -> Result<bool, CatError> {
    check_cone(d, apex, legs, kind)?;
    Ok(match kind {
        ConeKind::Limit => bound == 0 || limit_point_test(d, apex, legs),
        ConeKind::Colimit => (0..=bound.min(2)).all(|c| colimit_test(d, apex, legs, c)),
    })
}

fn limit_point_test(d: &Diagram, apex: usize, legs: &[FinMap]) -> bool {
    let n = d.sets.len();
    let mut family = alloc::vec![0usize; n];
    fn go(d: &Diagram, apex: usize, legs: &[FinMap], node: usize, family: &mut Vec<usize>) -> bool {
        if node == family.len() {
            if !d.shape.edges.iter().enumerate().all(|(e, &(s, t))| d.maps[e].images[family[s]] == family[t]) {
                return true;
            }
            let mediators = (0..apex).filter(|&a| (0..family.len()).all(|i| legs[i].images[a] == family[i])).take(2).count();
            return mediators == 1;
        }
        (0..d.sets[node]).all(|x| {
            family[node] = x;
            go(d, apex, legs, node + 1, family)
        })
    }
    go(d, apex, legs, 0, &mut family)
}

/// All cocones into a `c`-element set, each checked for a unique mediator.
fn colimit_test(d: &Diagram, apex: usize, legs: &[FinMap], c: usize) -> bool {
    let off = d.offsets();
    let total = off[d.sets.len()];
    let mut who = Vec::with_capacity(total);
    for node in 0..d.sets.len() {
        for x in 0..d.sets[node] {
            who.push((node, x));
        }
    }
    // Constraint `val[i] == val[j]` checked when the later index is assigned.
    let mut checks: Vec<Vec<usize>> = alloc::vec![Vec::new(); total];
    for (e, &(s, t)) in d.shape.edges.iter().enumerate() {
        for (x, &y) in d.maps[e].images.iter().enumerate() {
            let (i, j) = (off[s] + x, off[t] + y);
            checks[i.max(j)].push(i.min(j));
        }
    }
    let mut preimages: Vec<Vec<usize>> = alloc::vec![Vec::new(); apex];
    for (i, &(node, x)) in who.iter().enumerate() {
        preimages[legs[node].images[x]].push(i);
    }
    let mut val = alloc::vec![0usize; total];
    fn go(i: usize, c: usize, checks: &[Vec<usize>], val: &mut Vec<usize>, preimages: &[Vec<usize>]) -> bool {
        if i == val.len() {
            return count_mediators(preimages, val, c) == 1;
        }
        (0..c).all(|v| {
            val[i] = v;
            if checks[i].iter().any(|&j| val[j] != v) {
                return true;
            }
            go(i + 1, c, checks, val, preimages)
        })
    }
    go(0, c, &checks, &mut val, &preimages)
}

/// Number of maps `u : apex → c` with `u ∘ leg = cocone`, stopping at 2.
fn count_mediators(preimages: &[Vec<usize>], val: &[usize], c: usize) -> usize {
    let mut u = alloc::vec![0usize; preimages.len()];
    fn go(p: usize, c: usize, u: &mut Vec<usize>, preimages: &[Vec<usize>], val: &[usize], found: &mut usize) {
        if *found >= 2 {
            return;
        }
        if p == u.len() {
            *found += 1;
            return;
        }
        for t in 0..c {
            if preimages[p].iter().all(|&i| val[i] == t) {
                u[p] = t;
                go(p + 1, c, u, preimages, val, found);
            }
        }
    }
    let mut found = 0;
    go(0, c, &mut u, preimages, val, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn map(s: usize, t: usize, im: &[usize]) -> FinMap {
        FinMap::new(s, t, im.to_vec()).unwrap()
    }

    #[test]
    fn pullback_over_point() {
        let d = Diagram::cospan(map(2, 1, &[0, 0]), map(2, 1, &[0, 0])).unwrap();
        let l = limit(&d);
        assert_eq!(l.apex, 4);
        assert!(verify_universal_property(&d, l.apex, &l.legs, ConeKind::Limit, 3).unwrap());
    }

    #[test]
    fn coequalizer_merges_chain() {
        let d = Diagram::parallel_pair(map(2, 3, &[0, 1]), map(2, 3, &[1, 2])).unwrap();
        let c = colimit(&d);
        assert_eq!(c.apex, 1);
        assert!(verify_universal_property(&d, c.apex, &c.legs, ConeKind::Colimit, 3).unwrap());
    }

    #[test]
    fn empty_diagram() {
        let d = Diagram::empty();
        let l = limit(&d);
        assert_eq!(l.apex, 1);
        assert_eq!(colimit(&d).apex, 0);
        assert!(verify_universal_property(&d, 1, &[], ConeKind::Limit, 4).unwrap());
        assert!(!verify_universal_property(&d, 2, &[], ConeKind::Limit, 4).unwrap());
        assert!(verify_universal_property(&d, 0, &[], ConeKind::Colimit, 4).unwrap());
        assert!(!verify_universal_property(&d, 1, &[], ConeKind::Colimit, 4).unwrap());
    }

    #[test]
    fn pushout_of_disjoint_points() {
        let d = Diagram::span(map(0, 1, &[]), map(0, 1, &[])).unwrap();
        let c = colimit(&d);
        assert_eq!(c.apex, 2);
        assert_eq!(c.classes, vec![vec![(0, 0)], vec![(1, 0)]]);
    }

    #[test]
    fn dropped_projection_fails() {
        let d = Diagram::discrete(vec![2, 2]);
        let l = limit(&d);
        assert!(verify_universal_property(&d, l.apex, &l.legs, ConeKind::Limit, 4).unwrap());
        let only_first = Diagram::discrete(vec![2]);
        assert!(!verify_universal_property(&only_first, l.apex, &l.legs[..1], ConeKind::Limit, 4).unwrap());
        assert_eq!(verify_universal_property(&d, l.apex, &l.legs[..1], ConeKind::Limit, 4), Err(CatError::NotACone));
    }

    #[test]
    fn non_cone_is_rejected() {
        let d = Diagram::parallel_pair(map(1, 2, &[0]), map(1, 2, &[1])).unwrap();
        let legs = vec![map(1, 1, &[0]), map(2, 1, &[0, 0])];
        assert!(verify_universal_property(&d, 1, &legs, ConeKind::Colimit, 2).unwrap());
        let legs = vec![map(1, 2, &[0]), map(2, 2, &[0, 1])];
        assert_eq!(verify_universal_property(&d, 2, &legs, ConeKind::Colimit, 2), Err(CatError::NotACone));
    }

    #[test]
    fn pointed_terminal() {
        let d = Diagram::empty();
        for apex in 0..4 {
            assert_eq!(verify_universal_property(&d, apex, &[], ConeKind::Limit, 4).unwrap(), apex == 1);
        }
    }
}
