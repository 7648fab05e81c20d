use fixedbitset::FixedBitSet;
use iffkit_core::ifca::{bits, concepts, Classification, Infomorphism};
use proptest::prelude::*;

fn context(max: usize) -> impl Strategy<Value = Classification> {
    (0..=max, 0..=max).prop_flat_map(|(g, m)| {
        prop::collection::vec(any::<bool>(), g * m).prop_map(move |cells| {
            let mut c = Classification::new((0..g).map(|i| format!("g{i}")).collect(), (0..m).map(|j| format!("m{j}")).collect());
            for (k, &b) in cells.iter().enumerate() {
                c.set(k / m.max(1), k % m.max(1), b);
            }
            c
        })
    })
}

fn subset(n: usize, mask: u32) -> FixedBitSet {
    bits(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

fn is_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.is_subset(b)
}

/// Every closed token set, by double derivation of every subset.
fn brute_force_extents(c: &Classification) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1u32 << c.token_count())
        .map(|mask| c.close_tokens(&subset(c.token_count(), mask)).ones().collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivations_form_a_galois_connection(c in context(6), x in any::<u32>(), y in any::<u32>(), x2 in any::<u32>()) {
        let (g, m) = (c.token_count(), c.type_count());
        let a = subset(g, x);
        let b = subset(m, y);
        prop_assert_eq!(is_subset(&a, &c.extent(&b)), is_subset(&b, &c.intent(&a)));
        let a2 = subset(g, x | x2);
        prop_assert!(is_subset(&c.intent(&a2), &c.intent(&a)));
        prop_assert!(is_subset(&a, &c.close_tokens(&a)));
        prop_assert_eq!(c.intent(&c.extent(&c.intent(&a))), c.intent(&a));
        prop_assert_eq!(c.close_tokens(&c.close_tokens(&a)), c.close_tokens(&a));
    }

    #[test]
    fn next_closure_matches_brute_force(c in context(5)) {
        let lattice = concepts(&c);
        let mut found: Vec<Vec<usize>> = lattice.concepts.iter().map(|k| k.extent.ones().collect()).collect();
        found.sort();
        prop_assert_eq!(found, brute_force_extents(&c));
        for k in &lattice.concepts {
            prop_assert_eq!(&c.intent(&k.extent), &k.intent);
            prop_assert_eq!(&c.extent(&k.intent), &k.extent);
        }
    }

    #[test]
    fn concept_lattice_laws(c in context(5)) {
        let l = concepts(&c);
        let n = l.len();
        for a in 0..n {
            prop_assert!(l.le(l.bottom(), a) && l.le(a, l.top()));
            prop_assert_eq!(l.meet(&c, a, a), a);
            for b in 0..n {
                let m = l.meet(&c, a, b);
                let j = l.join(&c, a, b);
                prop_assert_eq!(m, l.meet(&c, b, a));
                prop_assert_eq!(j, l.join(&c, b, a));
                prop_assert_eq!(l.meet(&c, a, j), a);
                prop_assert_eq!(l.join(&c, a, m), a);
                prop_assert!(l.le(m, a) && l.le(m, b) && l.le(a, j) && l.le(b, j));
                prop_assert_eq!(l.le(a, b), m == a);
            }
        }
    }

    #[test]
    fn infomorphisms_compose(
        a in context(4),
        extra in 0usize..=2,
        tok_b in prop::collection::vec(any::<usize>(), 0..=4),
        tok_c in prop::collection::vec(any::<usize>(), 0..=4),
        noise in prop::collection::vec(any::<bool>(), 64),
    ) {
        prop_assume!(a.token_count() > 0 || tok_b.is_empty());
        let (b, f) = extend(&a, extra, &tok_b, &noise);
        prop_assert!(f.check(&a, &b));
        prop_assume!(b.token_count() > 0 || tok_c.is_empty());
        let (c, g) = extend(&b, extra, &tok_c, &noise[32..]);
        prop_assert!(g.check(&b, &c));
        let fg = f.then(&g);
        prop_assert!(fg.check(&a, &c));
        prop_assert_eq!(Infomorphism::identity(&a).then(&f), f.clone());
        prop_assert_eq!(f.then(&Infomorphism::identity(&b)), f);
    }
}

/// A classification `B` with an infomorphism `A ⇄ B`: types of `A` embed
/// after `extra` fresh types, and each `B`-token copies the row of its
/// image under the token map.
fn extend(a: &Classification, extra: usize, tokens: &[usize], noise: &[bool]) -> (Classification, Infomorphism) {
    let nb = tokens.len();
    let types = a.type_count() + extra;
    let token_map: Vec<usize> = tokens.iter().map(|&t| t % a.token_count().max(1)).collect();
    let type_map: Vec<usize> = (0..a.type_count()).map(|t| (types - 1) - t).collect();
    let mut b = Classification::new((0..nb).map(|i| format!("b{i}")).collect(), (0..types).map(|j| format!("t{j}")).collect());
    for (tok, &src) in token_map.iter().enumerate() {
        for ty in 0..types {
            let v = match type_map.iter().position(|&m| m == ty) {
                Some(alpha) => a.holds(src, alpha),
                None => noise[(tok * types + ty) % noise.len()],
            };
            b.set(tok, ty, v);
        }
    }
    (b, Infomorphism { type_map, token_map })
}

#[test]
fn diamond_lattice_order() {
    let c = Classification::from_names(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "b")]).unwrap();
    let l = concepts(&c);
    let extents: Vec<Vec<usize>> = l.concepts.iter().map(|k| k.extent.ones().collect()).collect();
    assert_eq!(extents, vec![vec![], vec![1], vec![0], vec![0, 1]]);
}
