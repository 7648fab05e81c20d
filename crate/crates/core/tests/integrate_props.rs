use std::collections::BTreeSet;

use iffkit_core::cat::FinGraph;
use iffkit_core::institution::prop::prop_sentences;
use iffkit_core::institution::{closure, entails, Institution, Prop, PropMorphism, PropSignature, Theory};
use iffkit_core::integrate::{fuse, verify_fusion_universal, AlignmentDiagram};
use proptest::prelude::*;

const POOL: [&str; 3] = ["p", "q", "r"];

#[derive(Clone, Debug)]
struct Raw {
    atoms: Vec<Vec<bool>>,
    axioms: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, Vec<usize>)>,
}

fn raw() -> impl Strategy<Value = Raw> {
    (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(any::<bool>(), 3), n),
            prop::collection::vec(prop::collection::vec(any::<usize>(), 0..=2), n),
            prop::collection::vec((0..n, 0..n, prop::collection::vec(any::<usize>(), 3)), 0..=3),
        )
            .prop_map(|(atoms, axioms, edges)| Raw { atoms, axioms, edges })
    })
}

fn diagram(r: &Raw) -> AlignmentDiagram<Prop> {
    let sigs: Vec<PropSignature> = r
        .atoms
        .iter()
        .map(|keep| {
            let names: Vec<&str> = POOL.iter().zip(keep).filter(|(_, &k)| k).map(|(a, _)| *a).collect();
            PropSignature::new(if names.is_empty() { vec!["p"] } else { names })
        })
        .collect();
    let theories = sigs
        .iter()
        .zip(&r.axioms)
        .map(|(s, picks)| {
            let pool = prop_sentences(s.atoms.len(), 2);
            Theory::new(&Prop, s.clone(), picks.iter().map(|&p| pool[p % pool.len()].clone())).unwrap()
        })
        .collect();
    let mut shape = Vec::new();
    let mut edges = Vec::new();
    for (s, t, map) in &r.edges {
        if s == t {
            continue;
        }
        let k = sigs[*t].atoms.len();
        let map = map[..sigs[*s].atoms.len()].iter().map(|&x| x % k).collect();
        shape.push((*s, *t));
        edges.push(PropMorphism::new(&sigs[*s], &sigs[*t], map).unwrap());
    }
    AlignmentDiagram {
        shape: FinGraph::new(sigs.len(), shape).unwrap(),
        names: (0..sigs.len()).map(|i| format!("T{i}")).collect(),
        theories,
        edges,
    }
}

/// The same diagram with node `i` moved to position `perm[i]` and the
/// edge list reversed.
fn permuted(d: &AlignmentDiagram<Prop>, perm: &[usize]) -> AlignmentDiagram<Prop> {
    let n = d.theories.len();
    let mut names = vec![String::new(); n];
    let mut theories = d.theories.clone();
    for i in 0..n {
        names[perm[i]] = d.names[i].clone();
        theories[perm[i]] = d.theories[i].clone();
    }
    let shape = d.shape.edges.iter().rev().map(|&(s, t)| (perm[s], perm[t])).collect();
    let edges = d.edges.iter().rev().cloned().collect();
    AlignmentDiagram { shape: FinGraph::new(n, shape).unwrap(), names, theories, edges }
}

fn shown(d: &AlignmentDiagram<Prop>) -> (Vec<String>, BTreeSet<String>, BTreeSet<Vec<(String, String)>>) {
    let r = fuse(&Prop, d, 0).unwrap();
    let sig = &r.theory.signature;
    let axioms = r.theory.axioms.iter().map(|a| Prop.show_sentence(sig, a)).collect();
    let provenance = r.provenance.iter().map(|c| c.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()).collect();
    (sig.atoms.clone(), axioms, provenance)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fusion_ignores_node_order(r in raw(), rot in 0usize..3, flip in any::<bool>()) {
        let d = diagram(&r);
        let n = d.theories.len();
        let mut perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        if flip {
            perm.reverse();
        }
        prop_assert_eq!(shown(&d), shown(&permuted(&d, &perm)));
    }

    #[test]
    fn fusion_preserves_node_closures(r in raw()) {
        let d = diagram(&r);
        let fused = fuse(&Prop, &d, 0).unwrap();
        for (t, inj) in d.theories.iter().zip(&fused.injections) {
            for s in closure(&Prop, t, 2, 0).sentences {
                prop_assert!(entails(&Prop, &fused.theory, &Prop.translate(&inj.sig, &s), 0));
            }
        }
    }

    #[test]
    fn random_fusions_are_universal(r in raw()) {
        let d = diagram(&r);
        let fused = fuse(&Prop, &d, 0).unwrap();
        prop_assert!(verify_fusion_universal(&Prop, &d, &fused, 3, 0));
    }
}
