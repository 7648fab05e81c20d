use iffkit_core::cat::{
    classify_morphism, colimit, curry, exponent, limit, uncurry, verify_universal_property, ConcreteCategory, ConeKind, Diagram,
    FinCategory, FinFunctor, FinGraph, FinMap,
};
use petgraph::unionfind::UnionFind;
use proptest::prelude::*;

/// Nodes with carriers up to 4 and up to 4 edges; an edge into an empty
/// carrier from a nonempty one is dropped.
fn diagram() -> impl Strategy<Value = Diagram> {
    (
        prop::collection::vec(0usize..=4, 1..=4),
        prop::collection::vec((any::<usize>(), any::<usize>(), prop::collection::vec(any::<usize>(), 4)), 0..=4),
    )
        .prop_map(|(sets, raw)| {
            let n = sets.len();
            let mut edges = Vec::new();
            let mut maps = Vec::new();
            for (s, t, im) in raw {
                let (s, t) = (s % n, t % n);
                if sets[t] == 0 && sets[s] > 0 {
                    continue;
                }
                let images = im[..sets[s]].iter().map(|&y| y % sets[t]).collect();
                edges.push((s, t));
                maps.push(FinMap::new(sets[s], sets[t], images).unwrap());
            }
            Diagram::new(FinGraph::new(n, edges).unwrap(), sets, maps).unwrap()
        })
}

fn union_find_classes(d: &Diagram) -> usize {
    let mut offset = vec![0];
    for &n in &d.sets {
        offset.push(offset.last().unwrap() + n);
    }
    let total = *offset.last().unwrap();
    let mut uf = UnionFind::<usize>::new(total);
    for (&(s, t), m) in d.shape.edges.iter().zip(&d.maps) {
        for x in 0..m.source {
            uf.union(offset[s] + x, offset[t] + m.apply(x));
        }
    }
    let mut roots: Vec<usize> = (0..total).map(|x| uf.find(x)).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

fn brute_force_limit(d: &Diagram) -> usize {
    let total: usize = d.sets.iter().product();
    (0..total)
        .filter(|&code| {
            let mut rest = code;
            let family: Vec<usize> = d
                .sets
                .iter()
                .rev()
                .map(|&n| {
                    let v = rest % n;
                    rest /= n;
                    v
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect();
            d.shape.edges.iter().zip(&d.maps).all(|(&(s, t), m)| m.apply(family[s]) == family[t])
        })
        .count()
}

fn small_diagram() -> impl Strategy<Value = Diagram> {
    (
        prop::collection::vec(0usize..=2, 1..=3),
        prop::collection::vec((any::<usize>(), any::<usize>(), prop::collection::vec(any::<usize>(), 2)), 0..=3),
    )
        .prop_map(|(sets, raw)| {
            let n = sets.len();
            let mut edges = Vec::new();
            let mut maps = Vec::new();
            for (s, t, im) in raw {
                let (s, t) = (s % n, t % n);
                if sets[t] == 0 && sets[s] > 0 {
                    continue;
                }
                edges.push((s, t));
                maps.push(FinMap::new(sets[s], sets[t], im[..sets[s]].iter().map(|&y| y % sets[t]).collect()).unwrap());
            }
            Diagram::new(FinGraph::new(n, edges).unwrap(), sets, maps).unwrap()
        })
}

fn is_cone(d: &Diagram, legs: &[FinMap], kind: ConeKind) -> bool {
    d.shape.edges.iter().zip(&d.maps).all(|(&(s, t), m)| match kind {
        ConeKind::Colimit => m.then(&legs[t]).unwrap() == legs[s],
        ConeKind::Limit => legs[s].then(m).unwrap() == legs[t],
    })
}

/// Universality by enumerating every cone with apex up to `bound` and every
/// candidate mediator.
fn naive_universal(d: &Diagram, apex: usize, legs: &[FinMap], kind: ConeKind, bound: usize) -> bool {
    (0..=bound).all(|c| {
        let spaces: Vec<Vec<FinMap>> = d
            .sets
            .iter()
            .map(|&n| match kind {
                ConeKind::Colimit => FinMap::all(n, c).collect(),
                ConeKind::Limit => FinMap::all(c, n).collect(),
            })
            .collect();
        if spaces.iter().any(Vec::is_empty) {
            return true;
        }
        let mut pick = vec![0; spaces.len()];
        loop {
            let family: Vec<FinMap> = pick.iter().zip(&spaces).map(|(&k, sp)| sp[k].clone()).collect();
            if is_cone(d, &family, kind) {
                let mediators = match kind {
                    ConeKind::Colimit => FinMap::all(apex, c).filter(|u| legs.iter().zip(&family).all(|(l, f)| &l.then(u).unwrap() == f)).count(),
                    ConeKind::Limit => FinMap::all(c, apex).filter(|u| legs.iter().zip(&family).all(|(l, f)| &u.then(l).unwrap() == f)).count(),
                };
                if mediators != 1 {
                    return false;
                }
            }
            let Some(i) = (0..pick.len()).find(|&i| pick[i] + 1 < spaces[i].len()) else { return true };
            pick[i] += 1;
            pick[..i].iter_mut().for_each(|k| *k = 0);
        }
    })
}

/// The universal cone and two altered ones: an unused extra apex element,
/// and for colimits a merge of two classes, for limits a duplicated point.
fn candidates(d: &Diagram) -> Vec<(ConeKind, usize, Vec<FinMap>)> {
    let c = colimit(d);
    let l = limit(d);
    let mut out = vec![(ConeKind::Colimit, c.apex, c.legs.clone()), (ConeKind::Limit, l.apex, l.legs.clone())];
    let widened = c.legs.iter().map(|g| FinMap::new(g.source, c.apex + 1, g.images.clone()).unwrap()).collect();
    out.push((ConeKind::Colimit, c.apex + 1, widened));
    if c.apex >= 2 {
        let merged = c.legs.iter().map(|g| FinMap::new(g.source, c.apex - 1, g.images.iter().map(|&y| y.min(c.apex - 2)).collect()).unwrap()).collect();
        out.push((ConeKind::Colimit, c.apex - 1, merged));
    }
    if l.apex >= 1 {
        let doubled = l.legs.iter().map(|g| FinMap::new(l.apex + 1, g.target, g.images.iter().copied().chain([g.images[0]]).collect()).unwrap()).collect();
        out.push((ConeKind::Limit, l.apex + 1, doubled));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn reduced_universality_test_agrees_with_naive_search(d in small_diagram()) {
        for (kind, apex, legs) in candidates(&d) {
            prop_assert_eq!(verify_universal_property(&d, apex, &legs, kind, 3).unwrap(), naive_universal(&d, apex, &legs, kind, 3), "{:?}", kind);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn colimit_is_universal_and_matches_union_find(d in diagram()) {
        let c = colimit(&d);
        prop_assert_eq!(c.apex, union_find_classes(&d));
        prop_assert!(verify_universal_property(&d, c.apex, &c.legs, ConeKind::Colimit, 4).unwrap());
    }

    #[test]
    fn limit_is_universal_and_matches_enumeration(d in diagram()) {
        let l = limit(&d);
        prop_assert_eq!(l.apex, brute_force_limit(&d));
        prop_assert!(verify_universal_property(&d, l.apex, &l.legs, ConeKind::Limit, 4).unwrap());
    }

    #[test]
    fn merging_two_classes_breaks_colimit(d in diagram()) {
        let c = colimit(&d);
        prop_assume!(c.apex >= 2);
        let legs: Vec<FinMap> = c
            .legs
            .iter()
            .map(|l| FinMap::new(l.source, c.apex - 1, l.images.iter().map(|&y| if y == c.apex - 1 { 0 } else { y }).collect()).unwrap())
            .collect();
        prop_assert!(!verify_universal_property(&d, c.apex - 1, &legs, ConeKind::Colimit, 4).unwrap());
    }

    #[test]
    fn exponent_transpose_is_bijective(a in 0usize..=3, b in 0usize..=3, c in 0usize..=3, raw in prop::collection::vec(any::<usize>(), 9)) {
        let e = exponent(a, b);
        prop_assume!(b > 0 || c * a == 0);
        let images = raw[..c * a].iter().map(|&y| y % b).collect();
        let h = FinMap::new(c * a, b, images).unwrap();
        let k = curry(&h, c, &e);
        prop_assert_eq!(uncurry(&k, &e), h);
        prop_assert_eq!(curry(&uncurry(&k, &e), c, &e), k);
    }
}

#[test]
fn exponent_counts_all_transposes() {
    for a in 0..=3 {
        for b in 0..=3 {
            let e = exponent(a, b);
            for c in 0..=2 {
                let maps: Vec<FinMap> = FinMap::all(c * a, b).collect();
                let mut curried: Vec<Vec<usize>> = maps.iter().map(|h| curry(h, c, &e).images).collect();
                curried.sort();
                curried.dedup();
                assert_eq!(curried.len(), maps.len());
                assert_eq!(maps.len(), FinMap::all(c, e.size).count());
            }
        }
    }
}

#[test]
fn isomorphisms_are_monic_and_epic() {
    let sets = ConcreteCategory::finite_sets(3);
    let c = &sets.category;
    for m in 0..c.morphisms.len() {
        let k = classify_morphism(c, m).unwrap();
        if k.iso {
            assert!(k.mono && k.epi);
        }
        let f = &sets.maps[m];
        assert_eq!(k.mono, f.is_injective());
        assert_eq!(k.epi, f.is_surjective());
    }
}

fn endofunctors(c: &FinCategory) -> Vec<FinFunctor<'_>> {
    assert_eq!(c.objects, 1);
    let n = c.morphisms.len();
    let mut out = Vec::new();
    for code in 0..n.pow(n as u32) {
        let mut rest = code;
        let on_morphisms = (0..n)
            .map(|_| {
                let m = rest % n;
                rest /= n;
                m
            })
            .collect();
        let f = FinFunctor { source: c, target: c, on_objects: vec![0], on_morphisms };
        if f.is_functor() {
            out.push(f);
        }
    }
    out
}

#[test]
fn functors_compose() {
    let maps: Vec<(usize, usize, FinMap)> = FinMap::all(2, 2).map(|f| (0, 0, f)).collect();
    let monoid = ConcreteCategory::generated(vec![2], maps).unwrap();
    let c = &monoid.category;
    let fs = endofunctors(c);
    assert!(fs.len() > 1);
    let id = FinFunctor::identity(c);
    for f in &fs {
        assert_eq!(f.then(&id).unwrap().on_morphisms, f.on_morphisms);
        assert_eq!(id.then(f).unwrap().on_morphisms, f.on_morphisms);
        for g in &fs {
            let fg = f.then(g).unwrap();
            assert!(fg.is_functor());
            for h in &fs {
                assert_eq!(fg.then(h).unwrap().on_morphisms, f.then(&g.then(h).unwrap()).unwrap().on_morphisms);
            }
        }
    }
}
