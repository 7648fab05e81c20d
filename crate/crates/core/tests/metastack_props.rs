use std::collections::BTreeSet;

use iffkit_core::metastack::{
    is_abridgment, is_restriction, is_subobject, relevel_function, specialize_function, specialize_relation, specialize_set, LeveledFunction,
    LeveledRelation, LeveledSet,
};
use iffkit_core::registry::Metalevel;
use proptest::prelude::*;

fn el(i: usize) -> String {
    format!("e{i}")
}

#[derive(Clone, Debug)]
struct Data {
    level: Metalevel,
    f: LeveledFunction,
    r: LeveledRelation,
    /// Membership bits for the chosen subsets, one per carrier element.
    keep_src: Vec<bool>,
    keep_tgt: Vec<bool>,
    keep_inner: Vec<bool>,
}

fn data() -> impl Strategy<Value = Data> {
    (2u8..=4, 1usize..=5, 1usize..=5).prop_flat_map(|(level, a, b)| {
        (
            prop::collection::vec(0..b, a),
            prop::collection::vec(any::<bool>(), a * b),
            prop::collection::vec(any::<bool>(), a),
            prop::collection::vec(any::<bool>(), b),
            prop::collection::vec(any::<bool>(), a),
        )
            .prop_map(move |(images, rel, keep_src, keep_tgt, keep_inner)| {
                let level = Metalevel::new(level).unwrap();
                let src = LeveledSet::new(level, (0..a).map(el)).unwrap();
                let tgt = LeveledSet::new(level, (a..a + b).map(el)).unwrap();
                let f = LeveledFunction::new(src.clone(), tgt.clone(), images.iter().enumerate().map(|(x, &y)| (el(x), el(a + y)))).unwrap();
                let pairs = (0..a * b).filter(|&k| rel[k]).map(|k| (el(k / b), el(a + k % b)));
                let r = LeveledRelation::new(src, tgt, pairs).unwrap();
                Data { level, f, r, keep_src, keep_tgt, keep_inner }
            })
    })
}

fn chosen(set: &LeveledSet, keep: &[bool]) -> BTreeSet<String> {
    set.elements.iter().zip(keep).filter(|(_, &k)| k).map(|(x, _)| x.clone()).collect()
}

/// The chosen target subset, enlarged by the images of the chosen sources.
fn closed_target(f: &LeveledFunction, src: &BTreeSet<String>, keep: &[bool]) -> BTreeSet<String> {
    let mut t = chosen(&f.target, keep);
    t.extend(src.iter().map(|x| f.map[x].clone()));
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn specialized_functions_are_restrictions(d in data()) {
        let s = chosen(&d.f.source, &d.keep_src);
        let t = closed_target(&d.f, &s, &d.keep_tgt);
        let low = specialize_function(&d.f, &s, &t).unwrap();
        prop_assert!(is_restriction(&low, &d.f).unwrap());
        prop_assert!(is_subobject(&low.source, &d.f.source).unwrap());
        prop_assert!(is_subobject(&low.target, &d.f.target).unwrap());
        prop_assert_eq!(specialize_set(&d.f.source, &s).unwrap(), low.source.clone());

        // Redirect one image inside the chosen target.
        if let Some(x) = s.iter().next() {
            if let Some(other) = t.iter().find(|y| **y != d.f.map[x]) {
                let mut bad = low.clone();
                bad.map.insert(x.clone(), other.clone());
                prop_assert!(!is_restriction(&bad, &d.f).unwrap());
            }
        }
        let mut foreign = low.clone();
        foreign.source.elements.insert("stray".into());
        foreign.map.insert("stray".into(), d.f.target.elements.iter().next().unwrap().clone());
        prop_assert!(!is_restriction(&foreign, &d.f).unwrap());
    }

    #[test]
    fn restriction_implies_subobjects(d in data(), e in data()) {
        let s = chosen(&e.f.source, &e.keep_src);
        let t = closed_target(&e.f, &s, &e.keep_tgt);
        let at = |f: &LeveledFunction, level| {
            let src = LeveledSet::new(level, f.source.elements.iter().cloned()).unwrap();
            let tgt = LeveledSet::new(level, f.target.elements.iter().cloned()).unwrap();
            LeveledFunction::new(src, tgt, f.map.iter().map(|(x, y)| (x.clone(), y.clone()))).unwrap()
        };
        let lowers = [specialize_function(&e.f, &s, &t).unwrap(), relevel_function(&at(&d.f, e.level)).unwrap()];
        for low in &lowers {
            if is_restriction(low, &e.f).unwrap() {
                prop_assert!(is_subobject(&low.source, &e.f.source).unwrap());
                prop_assert!(is_subobject(&low.target, &e.f.target).unwrap());
            }
        }
    }

    #[test]
    fn abridgment_is_the_induced_subrelation(d in data()) {
        let l = chosen(&d.r.left, &d.keep_src);
        let r = chosen(&d.r.right, &d.keep_tgt);
        let low = specialize_relation(&d.r, &l, &r).unwrap();
        prop_assert!(is_abridgment(&low, &d.r).unwrap());
        for p in &low.extent {
            let mut fewer = low.clone();
            fewer.extent.remove(p);
            prop_assert!(!is_abridgment(&fewer, &d.r).unwrap());
        }
        let missing = l.iter().flat_map(|a| r.iter().map(move |b| (a.clone(), b.clone()))).find(|p| !low.extent.contains(p));
        if let Some(p) = missing {
            let mut more = low.clone();
            more.extent.insert(p);
            prop_assert!(!is_abridgment(&more, &d.r).unwrap());
        }
    }

    #[test]
    fn restriction_composes_across_levels(d in data()) {
        prop_assume!(d.level == Metalevel::UR);
        let s3 = chosen(&d.f.source, &d.keep_src);
        let t3 = closed_target(&d.f, &s3, &d.keep_tgt);
        let mid = specialize_function(&d.f, &s3, &t3).unwrap();
        let s2: BTreeSet<String> = s3.iter().zip(&d.keep_inner).filter(|(_, &k)| k).map(|(x, _)| x.clone()).collect();
        let t2 = closed_target(&mid, &s2, &[]);
        let stepwise = specialize_function(&mid, &s2, &t2).unwrap();
        let direct = relevel_function(&specialize_function(&d.f, &s2, &t2).unwrap()).unwrap();
        prop_assert_eq!(&stepwise, &direct);
        prop_assert!(is_restriction(&stepwise, &mid).unwrap());
    }
}
