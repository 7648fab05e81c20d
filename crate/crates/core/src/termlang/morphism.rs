use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Indicia, Term, TermError, TermLanguage, TermTuple};
use crate::cat::{ConcreteCategory, FinCategory, FinFunctor, FinMap, FinNatTrans};

/// A variable bijection and a symbol map preserving arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermLanguageMorphism {
    pub source: TermLanguage,
    pub target: TermLanguage,
    pub var_map: Vec<usize>,
    pub sym_map: Vec<usize>,
}

impl TermLanguageMorphism {
    pub fn new(source: &TermLanguage, target: &TermLanguage, var_map: Vec<usize>, sym_map: Vec<usize>) -> Result<Self, TermError> {
        let nv = source.variables.len();
        if var_map.len() != nv || target.variables.len() != nv {
            return Err(TermError::NotABijection);
        }
        let mut seen = alloc::vec![false; nv];
        for &v in &var_map {
            if v >= nv || core::mem::replace(&mut seen[v], true) {
                return Err(TermError::NotABijection);
            }
        }
        if sym_map.len() != source.symbols.len() {
            return Err(TermError::UnknownSymbol(sym_map.len()));
        }
        let m = TermLanguageMorphism { source: source.clone(), target: target.clone(), var_map, sym_map };
        for (f, &g) in m.sym_map.iter().enumerate() {
            if g >= target.symbols.len() {
                return Err(TermError::UnknownSymbol(g));
            }
            if target.arity[g] != m.map_indicia(source.arity[f]) {
                return Err(TermError::ArityNotPreserved(f));
            }
        }
        Ok(m)
    }

    pub fn identity(l: &TermLanguage) -> Self {
        TermLanguageMorphism {
            source: l.clone(),
            target: l.clone(),
            var_map: (0..l.variables.len()).collect(),
            sym_map: (0..l.symbols.len()).collect(),
        }
    }

    pub fn map_indicia(&self, i: Indicia) -> Indicia {
        Indicia::from_vars(i.iter().map(|v| self.var_map[v]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TermLanguageMorphism) -> Result<Self, TermError> {
        if self.target != other.source {
            return Err(TermError::VariableMismatch);
        }
        Ok(TermLanguageMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            var_map: self.var_map.iter().map(|&v| other.var_map[v]).collect(),
            sym_map: self.sym_map.iter().map(|&f| other.sym_map[f]).collect(),
        })
    }
}

/// Rename variables and symbols, reordering arguments to follow the target
/// arities.
pub fn apply_morphism(m: &TermLanguageMorphism, t: &Term) -> Term {
    match t {
        Term::Var(v) => Term::Var(m.var_map[*v]),
        Term::App(f, args) => {
            let g = m.sym_map[*f];
            let target_arity = m.target.arity[g];
            let mut out: Vec<Option<Term>> = alloc::vec![None; args.len()];
            for (v, a) in m.source.arity[*f].iter().zip(args) {
                let slot = target_arity.rank(m.var_map[v]).expect("arity preserved");
                out[slot] = Some(apply_morphism(m, a));
            }
            Term::App(g, out.into_iter().map(|a| a.expect("bijective reindexing")).collect())
        }
    }
}

pub fn apply_morphism_tuple(m: &TermLanguageMorphism, s: &TermTuple) -> TermTuple {
    let index = m.map_indicia(s.index);
    let mut out: Vec<Option<Term>> = alloc::vec![None; s.entries.len()];
    for (v, e) in s.index.iter().zip(&s.entries) {
        out[index.rank(m.var_map[v]).expect("bijection")] = Some(apply_morphism(m, e));
    }
    TermTuple {
        domain: m.map_indicia(s.domain),
        index,
        entries: out.into_iter().map(|e| e.expect("bijective reindexing")).collect(),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every morphism `source → target`, in lexicographic order of
/// `(var_map, sym_map)`.
pub fn enumerate_morphisms(source: &TermLanguage, target: &TermLanguage) -> Vec<TermLanguageMorphism> {
    let nv = source.variables.len();
    if target.variables.len() != nv {
        return Vec::new();
    }
    let mut out = Vec::new();
    for var_map in permutations(nv) {
        let image = |i: Indicia| Indicia::from_vars(i.iter().map(|v| var_map[v]));
        let candidates: Vec<Vec<usize>> = source
            .arity
            .iter()
            .map(|&a| (0..target.symbols.len()).filter(|&g| target.arity[g] == image(a)).collect())
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut pick = alloc::vec![0usize; candidates.len()];
        loop {
            out.push(TermLanguageMorphism {
                source: source.clone(),
                target: target.clone(),
                var_map: var_map.clone(),
                sym_map: pick.iter().zip(&candidates).map(|(&p, c)| c[p]).collect(),
            });
            let Some(k) = (0..pick.len()).rev().find(|&k| pick[k] + 1 < candidates[k].len()) else { break };
            pick[k] += 1;
            pick[k + 1..].iter_mut().for_each(|p| *p = 0);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub language: TermLanguage,
    pub inl: TermLanguageMorphism,
    pub inr: TermLanguageMorphism,
}

/// Symbols `inl.f` for those of `l1`, then `inr.g` for those of `l2`.
pub fn coproduct_languages(l1: &TermLanguage, l2: &TermLanguage) -> Result<Coproduct, TermError> {
    if l1.variables != l2.variables {
        return Err(TermError::VariableMismatch);
    }
    let symbols = l1.symbols.iter().map(|f| format!("inl.{f}")).chain(l2.symbols.iter().map(|g| format!("inr.{g}"))).collect();
    let arity = l1.arity.iter().chain(&l2.arity).copied().collect();
    let language = TermLanguage { variables: l1.variables.clone(), symbols, arity };
    let ids: Vec<usize> = (0..l1.variables.len()).collect();
    let n1 = l1.symbols.len();
    let inl = TermLanguageMorphism::new(l1, &language, ids.clone(), (0..n1).collect())?;
    let inr = TermLanguageMorphism::new(l2, &language, ids, (n1..n1 + l2.symbols.len()).collect())?;
    Ok(Coproduct { language, inl, inr })
}

/// The arity transformation from symbols to the powerset of variables, over
/// the category of all morphisms among a list of languages.
#[derive(Clone, Debug)]
pub struct ArityNaturality {
    pub languages: Vec<TermLanguage>,
    pub morphisms: Vec<(usize, usize, TermLanguageMorphism)>,
    pub lang_category: FinCategory,
    pub sets: ConcreteCategory,
    pub ftn: (Vec<usize>, Vec<usize>),
    pub powerset: (Vec<usize>, Vec<usize>),
    pub components: Vec<Option<usize>>,
}

impl ArityNaturality {
    pub fn build(languages: &[TermLanguage]) -> Result<Self, TermError> {
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for (i, a) in languages.iter().enumerate() {
            for (j, b) in languages.iter().enumerate() {
                for m in enumerate_morphisms(a, b) {
                    index.insert((i, j, m.var_map.clone(), m.sym_map.clone()), morphisms.len());
                    morphisms.push((i, j, m));
                }
            }
        }
        let mut comp = BTreeMap::new();
        for (fi, (a, b, f)) in morphisms.iter().enumerate() {
            for (gi, (b2, c, g)) in morphisms.iter().enumerate() {
                if b == b2 {
                    let h = f.then(g)?;
                    comp.insert((gi, fi), index[&(*a, *c, h.var_map, h.sym_map)]);
                }
            }
        }
        let identities = languages
            .iter()
            .enumerate()
            .map(|(i, l)| index[&(i, i, (0..l.variables.len()).collect::<Vec<_>>(), (0..l.symbols.len()).collect::<Vec<_>>())])
            .collect();
        let lang_category = FinCategory {
            objects: languages.len(),
            morphisms: morphisms.iter().map(|(a, b, _)| (*a, *b)).collect(),
            identities,
            comp,
            grading: None,
        };

        let mut sizes = Vec::new();
        for l in languages {
            sizes.push(l.symbols.len());
            sizes.push(1usize << l.variables.len());
        }
        let ftn_map = |m: &TermLanguageMorphism| FinMap { source: m.source.symbols.len(), target: m.target.symbols.len(), images: m.sym_map.clone() };
        let pow_map = |m: &TermLanguageMorphism| {
            let n = 1usize << m.source.variables.len();
            FinMap { source: n, target: n, images: (0..n as u64).map(|s| m.map_indicia(Indicia(s)).0 as usize).collect() }
        };
        let arity_map = |l: &TermLanguage| FinMap {
            source: l.symbols.len(),
            target: 1 << l.variables.len(),
            images: l.arity.iter().map(|a| a.0 as usize).collect(),
        };
        let mut gens = Vec::new();
        for (a, b, m) in &morphisms {
            gens.push((2 * a, 2 * b, ftn_map(m)));
            gens.push((2 * a + 1, 2 * b + 1, pow_map(m)));
        }
        for (i, l) in languages.iter().enumerate() {
            gens.push((2 * i, 2 * i + 1, arity_map(l)));
        }
        let sets = ConcreteCategory::generated(sizes, gens).map_err(|_| TermError::BadArity(alloc::string::String::from("arity")))?;
        let lookup = |s: usize, t: usize, f: &FinMap| sets.morphism(s, t, &f.images).expect("generator present");
        let ftn = (
            (0..languages.len()).map(|i| 2 * i).collect(),
            morphisms.iter().map(|(a, b, m)| lookup(2 * a, 2 * b, &ftn_map(m))).collect(),
        );
        let powerset = (
            (0..languages.len()).map(|i| 2 * i + 1).collect(),
            morphisms.iter().map(|(a, b, m)| lookup(2 * a + 1, 2 * b + 1, &pow_map(m))).collect(),
        );
        let components = languages.iter().enumerate().map(|(i, l)| Some(lookup(2 * i, 2 * i + 1, &arity_map(l)))).collect();
        Ok(ArityNaturality { languages: languages.to_vec(), morphisms, lang_category, sets, ftn, powerset, components })
    }

    pub fn ftn_functor(&self) -> FinFunctor<'_> {
        FinFunctor {
            source: &self.lang_category,
            target: &self.sets.category,
            on_objects: self.ftn.0.clone(),
            on_morphisms: self.ftn.1.clone(),
        }
    }

    pub fn powerset_functor(&self) -> FinFunctor<'_> {
        FinFunctor {
            source: &self.lang_category,
            target: &self.sets.category,
            on_objects: self.powerset.0.clone(),
            on_morphisms: self.powerset.1.clone(),
        }
    }

    pub fn transformation(&self) -> FinNatTrans<'_> {
        FinNatTrans { from: self.ftn_functor(), to: self.powerset_functor(), components: self.components.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::lang;
    use super::super::{lawvere_fragment, lawvere_functor, substitute, tuple_compose};
    use super::*;
    use crate::cat::check_category_laws;

    #[test]
    fn swap_reindexes_arguments() {
        let l = lang(&["x", "y"], &[("f", &["x", "y"])]);
        let m = TermLanguageMorphism::new(&l, &l, alloc::vec![1, 0], alloc::vec![0]).unwrap();
        let t = Term::App(0, alloc::vec![Term::Var(0), Term::App(0, alloc::vec![Term::Var(0), Term::Var(0)])]);
        let u = apply_morphism(&m, &t);
        assert_eq!(u, Term::App(0, alloc::vec![Term::App(0, alloc::vec![Term::Var(1), Term::Var(1)]), Term::Var(1)]));
        assert_eq!(apply_morphism(&TermLanguageMorphism::identity(&l), &t), t);
        assert_eq!(apply_morphism(&m, &u), t);
    }

    #[test]
    fn arity_must_be_preserved() {
        let l = lang(&["x", "y"], &[("f", &["x"]), ("g", &["y"])]);
        assert!(TermLanguageMorphism::new(&l, &l, alloc::vec![1, 0], alloc::vec![1, 0]).is_ok());
        assert_eq!(TermLanguageMorphism::new(&l, &l, alloc::vec![1, 0], alloc::vec![0, 1]), Err(TermError::ArityNotPreserved(0)));
        assert_eq!(TermLanguageMorphism::new(&l, &l, alloc::vec![0, 0], alloc::vec![0, 1]), Err(TermError::NotABijection));
        assert_eq!(enumerate_morphisms(&l, &l).len(), 2);
    }

    #[test]
    fn morphisms_commute_with_substitution() {
        let l = lang(&["x", "y"], &[("f", &["x"]), ("g", &["y"])]);
        let m = TermLanguageMorphism::new(&l, &l, alloc::vec![1, 0], alloc::vec![1, 0]).unwrap();
        let all = super::super::enumerate_terms(&l, l.all_vars(), 2);
        let full = l.all_vars();
        for t in &all {
            for a in all.iter().take(6) {
                for b in all.iter().take(6) {
                    let s = TermTuple::new(full, full, alloc::vec![a.clone(), b.clone()]).unwrap();
                    let lhs = apply_morphism(&m, &substitute(t, &s).unwrap());
                    let rhs = substitute(&apply_morphism(&m, t), &apply_morphism_tuple(&m, &s)).unwrap();
                    assert_eq!(lhs, rhs);
                    let c = tuple_compose(&s, &s).unwrap();
                    assert_eq!(apply_morphism_tuple(&m, &c), tuple_compose(&apply_morphism_tuple(&m, &s), &apply_morphism_tuple(&m, &s)).unwrap());
                }
            }
        }
    }

    #[test]
    fn law_of_a_morphism_is_a_functor() {
        let l = lang(&["x", "y"], &[("f", &["x"]), ("g", &["y"])]);
        let fr = lawvere_fragment(&l, 2).unwrap();
        assert!(check_category_laws(&fr.category).is_lawful());
        for m in enumerate_morphisms(&l, &l) {
            let func = lawvere_functor(&m, &fr, &fr).unwrap();
            assert!(func.is_functor());
        }
    }

    #[test]
    fn coproduct_universal_property() {
        let v = &["x"][..];
        let l1 = lang(v, &[("f", &["x"])]);
        let l2 = lang(v, &[("g", &[])]);
        let cp = coproduct_languages(&l1, &l2).unwrap();
        assert_eq!(cp.language.symbols, alloc::vec!["inl.f", "inr.g"]);
        let empty = lang(v, &[]);
        let with_empty = coproduct_languages(&l1, &empty).unwrap();
        assert_eq!(with_empty.language.arity, l1.arity);
        let targets = [lang(v, &[("a", &["x"]), ("b", &[])]), lang(v, &[("a", &["x"]), ("b", &["x"])]), lang(v, &[("c", &[])])];
        for l3 in &targets {
            for a in enumerate_morphisms(&l1, l3) {
                for b in enumerate_morphisms(&l2, l3) {
                    let mediators = enumerate_morphisms(&cp.language, l3)
                        .into_iter()
                        .filter(|u| cp.inl.then(u).unwrap().sym_map == a.sym_map && cp.inr.then(u).unwrap().sym_map == b.sym_map)
                        .count();
                    assert_eq!(mediators, 1);
                }
            }
        }
        let other = lang(&["y"], &[]);
        assert!(matches!(coproduct_languages(&l1, &other), Err(TermError::VariableMismatch)));
    }

    #[test]
    fn arity_is_natural() {
        let a = lang(&["x", "y"], &[("f", &["x"]), ("g", &["y"]), ("h", &["x", "y"])]);
        let b = lang(&["u", "v"], &[("p", &["u"]), ("q", &["v"]), ("r", &["u", "v"]), ("s", &["u", "v"])]);
        let nat = ArityNaturality::build(&[a, b]).unwrap();
        assert!(nat.ftn_functor().is_functor());
        assert!(nat.powerset_functor().is_functor());
        assert!(nat.transformation().check_naturality().unwrap());
        let mut bad = nat.transformation();
        bad.components.swap(0, 1);
        assert!(!bad.check_naturality().unwrap());
    }
}
