use iffkit_core::institution::prop::prop_sentences;
use iffkit_core::institution::{
    check_satisfaction_condition, closure, entails, lattice_of_theories, Eqn, Institution, Prop, PropMorphism, PropSignature, Theory,
};
use iffkit_core::termlang::{enumerate_morphisms, Indicia, TermLanguage};
use proptest::prelude::*;

fn sig(n: usize) -> PropSignature {
    PropSignature::new((0..n).map(|i| format!("a{i}")))
}

/// A theory of up to three sentences of size at most 2 over `n` atoms.
fn prop_theory(n: usize, picks: &[usize]) -> Theory<Prop> {
    let pool = prop_sentences(n, 2);
    Theory::new(&Prop, sig(n), picks.iter().map(|&p| pool[p % pool.len()].clone())).unwrap()
}

/// Entailment straight from the definition, over every valuation.
fn entails_by_tables(t: &Theory<Prop>, s: &iffkit_core::institution::PropSentence) -> bool {
    (0..1u64 << t.signature.atoms.len()).all(|m| !t.axioms.iter().all(|a| a.eval(m)) || s.eval(m))
}

fn lang(nv: usize, masks: &[u64]) -> TermLanguage {
    let full = (1u64 << nv) - 1;
    TermLanguage::from_indicia(
        (0..nv).map(|i| format!("x{i}")).collect(),
        (0..masks.len()).map(|i| format!("f{i}")).collect(),
        masks.iter().map(|&m| Indicia(m & full)).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prop_entailment_matches_tables(n in 0usize..=3, picks in prop::collection::vec(any::<usize>(), 0..=3), s in any::<usize>()) {
        let t = prop_theory(n, &picks);
        let pool = prop_sentences(n, 3);
        let s = &pool[s % pool.len()];
        prop_assert_eq!(entails(&Prop, &t, s, 0), entails_by_tables(&t, s));
    }

    #[test]
    fn entailment_is_monotone(n in 1usize..=3, picks in prop::collection::vec(any::<usize>(), 0..=3), extra in any::<usize>()) {
        let t = prop_theory(n, &picks);
        let mut bigger = picks.clone();
        bigger.push(extra);
        let u = prop_theory(n, &bigger);
        for s in prop_sentences(n, 2) {
            if entails(&Prop, &t, &s, 0) {
                prop_assert!(entails(&Prop, &u, &s, 0));
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(n in 0usize..=2, picks in prop::collection::vec(any::<usize>(), 0..=3), extra in any::<usize>()) {
        let t = prop_theory(n, &picks);
        let c = closure(&Prop, &t, 2, 0);
        prop_assert!(t.axioms.iter().all(|a| c.sentences.contains(a)));
        let again = closure(&Prop, &Theory::new(&Prop, sig(n), c.sentences.iter().cloned()).unwrap(), 2, 0);
        prop_assert_eq!(&again.sentences, &c.sentences);
        let mut bigger = picks.clone();
        bigger.push(extra);
        let cu = closure(&Prop, &prop_theory(n, &bigger), 2, 0);
        prop_assert!(c.sentences.iter().all(|s| cu.sentences.contains(s)));
    }

    #[test]
    fn prop_satisfaction_condition(n in 0usize..=3, k in 1usize..=3, map in prop::collection::vec(any::<usize>(), 3), model in any::<u64>()) {
        let (a, b) = (sig(n), sig(k));
        let m = PropMorphism::new(&a, &b, map[..n].iter().map(|&x| x % k).collect()).unwrap();
        let model = model & ((1u64 << k) - 1);
        let r = Prop.reduct(&m, &model);
        for s in prop_sentences(n, 2) {
            prop_assert_eq!(Prop.satisfies(&a, &r, &s), Prop.satisfies(&b, &model, &Prop.translate(&m, &s)));
        }
    }

    #[test]
    fn eqn_satisfaction_condition(
        nv in 1usize..=2,
        src in prop::collection::vec(0u64..4, 0..=2),
        tgt in prop::collection::vec(0u64..4, 1..=2),
        pick in any::<usize>(),
    ) {
        let (a, b) = (lang(nv, &src), lang(nv, &tgt));
        let all = enumerate_morphisms(&a, &b);
        prop_assume!(!all.is_empty());
        let m = &all[pick % all.len()];
        prop_assert!(check_satisfaction_condition(&Eqn, m, 1, 2).holds());
    }

    #[test]
    fn eqn_lazy_entailment_matches_enumeration(
        masks in prop::collection::vec(0u64..4, 1..=2),
        axioms in prop::collection::vec(any::<usize>(), 0..=2),
        bound in 0usize..=2,
    ) {
        let l = lang(2, &masks);
        let pool = Eqn.sentences(&l, 1);
        let ax: Vec<_> = axioms.iter().map(|&i| pool[i % pool.len()].clone()).collect();
        let lazy = Eqn.entails_each(&l, &ax, &pool, bound);
        let models = Eqn.models(&l, bound);
        for (s, verdict) in pool.iter().zip(lazy) {
            let direct = models.iter().all(|m| !ax.iter().all(|a| Eqn.satisfies(&l, m, a)) || Eqn.satisfies(&l, m, s));
            prop_assert_eq!(verdict, direct);
        }
        let sat = models.iter().any(|m| ax.iter().all(|a| Eqn.satisfies(&l, m, a)));
        prop_assert_eq!(Eqn.satisfiable(&l, &ax, bound), sat);
    }
}

#[test]
fn closed_theories_biject_with_model_sets() {
    for n in 0..=2 {
        let lattice = lattice_of_theories(&sig(n), 3).unwrap();
        let mut model_sets: Vec<u64> = lattice.theories.iter().map(|t| lattice.models_of(t)).collect();
        model_sets.sort();
        model_sets.dedup();
        assert_eq!(model_sets.len(), lattice.len());
        assert_eq!(lattice.len(), 1 << (1 << n));
        for t in &lattice.theories {
            assert_eq!(&lattice.close(t), t);
        }
    }
}
