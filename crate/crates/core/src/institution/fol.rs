//! Unsorted first-order logic without nested quantifiers: sentences are
//! universally closed equations and relational atoms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::eqn::{eval_term, reduct_tables, show_tables, CellMap, EqnSentence};
use super::lazy::{explore, valuations, Goal, Need, Partial};
use super::{Institution, SatisfactionViolation};
use crate::termlang::{apply_morphism, enumerate_morphisms, enumerate_terms, FolLanguage, Term, TermLanguageMorphism};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FolSentence {
    Equal(EqnSentence),
    /// Arguments follow the relation's arity variables in increasing order.
    Atom(usize, Vec<Term>),
}

impl FolSentence {
    pub fn depth(&self) -> u32 {
        match self {
            FolSentence::Equal(e) => e.depth(),
            FolSentence::Atom(_, args) => args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

/// A term-language morphism with a relation map over the same variable
/// bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolMorphism {
    pub source: FolLanguage,
    pub target: FolLanguage,
    pub terms: TermLanguageMorphism,
    pub rel_map: Vec<usize>,
}

impl FolMorphism {
    pub fn identity(l: &FolLanguage) -> Self {
        FolMorphism {
            source: l.clone(),
            target: l.clone(),
            terms: TermLanguageMorphism::identity(&l.terms),
            rel_map: (0..l.expressions.relations.len()).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let (s, t) = (&self.source.expressions, &self.target.expressions);
        self.terms.source == self.source.terms
            && self.terms.target == self.target.terms
            && self.rel_map.len() == s.relations.len()
            && self.rel_map.iter().zip(&s.arity).all(|(&r, &a)| r < t.relations.len() && t.arity[r] == self.terms.map_indicia(a))
    }

    /// Cells of functions then relations.
    fn cell_map(&self) -> CellMap {
        let nf = self.target.terms.symbols.len();
        let mut map = CellMap::of(&self.terms);
        for (&a, &r) in self.source.expressions.arity.iter().zip(&self.rel_map) {
            map.op.push(nf + r);
            let target = self.target.expressions.arity[r];
            map.perm.push(a.iter().map(|v| target.rank(self.terms.var_map[v]).expect("arity preserved")).collect());
        }
        map
    }
}

fn direct(l: &FolLanguage) -> CellMap {
    let mut map = CellMap::direct(&l.terms);
    let nf = l.terms.symbols.len();
    for (r, a) in l.expressions.arity.iter().enumerate() {
        map.op.push(nf + r);
        map.perm.push((0..a.len()).collect());
    }
    map
}

fn shape(l: &FolLanguage) -> (Vec<usize>, Vec<bool>) {
    let mut ar: Vec<usize> = l.terms.arity.iter().map(|a| a.len()).collect();
    let mut rel = alloc::vec![false; ar.len()];
    ar.extend(l.expressions.arity.iter().map(|a| a.len()));
    rel.resize(ar.len(), true);
    (ar, rel)
}

fn holds(p: &Partial, map: &CellMap, nf: usize, s: &FolSentence, val: &[u8]) -> Result<bool, Need> {
    match s {
        FolSentence::Equal(e) => Ok(eval_term(p, map, &e.lhs, val)? == eval_term(p, map, &e.rhs, val)?),
        FolSentence::Atom(r, args) => {
            let mut target_args = [0u8; 64];
            let op = nf + r;
            for (i, a) in args.iter().enumerate() {
                target_args[map.perm[op][i]] = eval_term(p, map, a, val)?;
            }
            Ok(p.read(map.op[op], &target_args[..args.len()])? == 1)
        }
    }
}

struct FolGoal<'a> {
    map: &'a CellMap,
    nf: usize,
    sentence: &'a FolSentence,
    vals: &'a [Vec<u8>],
}

impl Goal for FolGoal<'_> {
    fn count(&self) -> usize {
        self.vals.len()
    }
    fn check(&self, p: &Partial, i: usize) -> Result<bool, Need> {
        holds(p, self.map, self.nf, self.sentence, &self.vals[i])
    }
}

/// Structures are tables of the function symbols followed by the relation
/// symbols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TinyFol;

impl Institution for TinyFol {
    type Signature = FolLanguage;
    type Morphism = FolMorphism;
    type Sentence = FolSentence;
    type Model = Partial;

    fn name(&self) -> &'static str {
        "fol"
    }
    fn source<'a>(&self, m: &'a FolMorphism) -> &'a FolLanguage {
        &m.source
    }
    fn target<'a>(&self, m: &'a FolMorphism) -> &'a FolLanguage {
        &m.target
    }
    fn identity(&self, sig: &FolLanguage) -> FolMorphism {
        FolMorphism::identity(sig)
    }
    fn compose(&self, f: &FolMorphism, g: &FolMorphism) -> Option<FolMorphism> {
        if f.target != g.source {
            return None;
        }
        Some(FolMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            terms: f.terms.then(&g.terms).ok()?,
            rel_map: f.rel_map.iter().map(|&r| g.rel_map[r]).collect(),
        })
    }
    fn morphisms(&self, a: &FolLanguage, b: &FolLanguage) -> Vec<FolMorphism> {
        let mut out = Vec::new();
        for tm in enumerate_morphisms(&a.terms, &b.terms) {
            let candidates: Vec<Vec<usize>> = a
                .expressions
                .arity
                .iter()
                .map(|&ar| (0..b.expressions.relations.len()).filter(|&r| b.expressions.arity[r] == tm.map_indicia(ar)).collect())
                .collect();
            if candidates.iter().any(Vec::is_empty) {
                continue;
            }
            let mut pick = alloc::vec![0usize; candidates.len()];
            loop {
                out.push(FolMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    terms: tm.clone(),
                    rel_map: pick.iter().zip(&candidates).map(|(&p, c)| c[p]).collect(),
                });
                let Some(k) = (0..pick.len()).rev().find(|&k| pick[k] + 1 < candidates[k].len()) else { break };
                pick[k] += 1;
                pick[k + 1..].iter_mut().for_each(|p| *p = 0);
            }
        }
        out
    }
    fn sentences(&self, sig: &FolLanguage, depth: u32) -> Vec<FolSentence> {
        let terms = enumerate_terms(&sig.terms, sig.terms.all_vars(), depth);
        let mut out = Vec::new();
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i..] {
                out.push(FolSentence::Equal(EqnSentence::new(a.clone(), b.clone())));
            }
        }
        for (r, a) in sig.expressions.arity.iter().enumerate() {
            let k = a.len();
            if terms.is_empty() && k > 0 {
                continue;
            }
            let mut pick = alloc::vec![0usize; k];
            loop {
                out.push(FolSentence::Atom(r, pick.iter().map(|&p| terms[p].clone()).collect()));
                let Some(q) = (0..k).rev().find(|&q| pick[q] + 1 < terms.len()) else { break };
                pick[q] += 1;
                pick[q + 1..].iter_mut().for_each(|p| *p = 0);
            }
        }
        out
    }
    fn depth(&self, s: &FolSentence) -> u32 {
        s.depth()
    }
    fn well_formed(&self, sig: &FolLanguage, s: &FolSentence) -> bool {
        match s {
            FolSentence::Equal(e) => sig.terms.check_term(&e.lhs).is_ok() && sig.terms.check_term(&e.rhs).is_ok(),
            FolSentence::Atom(r, args) => {
                *r < sig.expressions.relations.len()
                    && args.len() == sig.expressions.arity[*r].len()
                    && args.iter().all(|t| sig.terms.check_term(t).is_ok())
            }
        }
    }
    fn translate(&self, m: &FolMorphism, s: &FolSentence) -> FolSentence {
        match s {
            FolSentence::Equal(e) => FolSentence::Equal(EqnSentence::new(apply_morphism(&m.terms, &e.lhs), apply_morphism(&m.terms, &e.rhs))),
            FolSentence::Atom(r, args) => {
                let r2 = m.rel_map[*r];
                let target = m.target.expressions.arity[r2];
                let mut out: Vec<Option<Term>> = alloc::vec![None; args.len()];
                for (v, a) in m.source.expressions.arity[*r].iter().zip(args) {
                    out[target.rank(m.terms.var_map[v]).expect("arity preserved")] = Some(apply_morphism(&m.terms, a));
                }
                FolSentence::Atom(r2, out.into_iter().map(|t| t.expect("bijective reordering")).collect())
            }
        }
    }
    fn models(&self, sig: &FolLanguage, bound: usize) -> Vec<Partial> {
        let (ar, rel) = shape(sig);
        super::eqn::all_structures(&ar, &rel, bound)
    }
    fn reduct(&self, m: &FolMorphism, x: &Partial) -> Partial {
        let (ar, rel) = shape(&m.source);
        let mut r = Partial::new(x.size, &ar, &rel);
        r.tables = reduct_tables(&ar, &m.cell_map(), x);
        r
    }
    fn satisfies(&self, sig: &FolLanguage, x: &Partial, s: &FolSentence) -> bool {
        let map = direct(sig);
        let nf = sig.terms.symbols.len();
        valuations(sig.variables.len(), x.size).iter().all(|v| holds(x, &map, nf, s, v).expect("total structure"))
    }
    fn show_sentence(&self, sig: &FolLanguage, s: &FolSentence) -> String {
        match s {
            FolSentence::Equal(e) => format!("(= {} {})", sig.terms.display(&e.lhs), sig.terms.display(&e.rhs)),
            FolSentence::Atom(r, args) if args.is_empty() => sig.expressions.relations[*r].clone(),
            FolSentence::Atom(r, args) => {
                let shown: Vec<String> = args.iter().map(|a| format!("{}", sig.terms.display(a))).collect();
                format!("({} {})", sig.expressions.relations[*r], shown.join(" "))
            }
        }
    }
    fn show_model(&self, sig: &FolLanguage, m: &Partial) -> String {
        let names: Vec<&str> = sig.terms.symbols.iter().chain(&sig.expressions.relations).map(String::as_str).collect();
        show_tables(m, &names)
    }

    fn satisfiable(&self, sig: &FolLanguage, axioms: &[FolSentence], bound: usize) -> bool {
        let map = direct(sig);
        let nf = sig.terms.symbols.len();
        let (ar, rel) = shape(sig);
        (0..=bound).any(|size| {
            let vals = valuations(sig.variables.len(), size as u8);
            let goals: Vec<FolGoal> = axioms.iter().map(|s| FolGoal { map: &map, nf, sentence: s, vals: &vals }).collect();
            let refs: Vec<&dyn Goal> = goals.iter().map(|g| g as &dyn Goal).collect();
            let mut p = Partial::new(size as u8, &ar, &rel);
            !explore(&mut p, &refs, &|r| !r[r.len() - 1], &mut |r, _| r.len() < axioms.len() || !r.iter().all(|&b| b))
        })
    }

    fn entails_each(&self, sig: &FolLanguage, axioms: &[FolSentence], candidates: &[FolSentence], bound: usize) -> Vec<bool> {
        let map = direct(sig);
        let nf = sig.terms.symbols.len();
        let (ar, rel) = shape(sig);
        candidates
            .iter()
            .map(|c| {
                (0..=bound).all(|size| {
                    let vals = valuations(sig.variables.len(), size as u8);
                    let goals: Vec<FolGoal> =
                        axioms.iter().chain(core::iter::once(c)).map(|s| FolGoal { map: &map, nf, sentence: s, vals: &vals }).collect();
                    let refs: Vec<&dyn Goal> = goals.iter().map(|g| g as &dyn Goal).collect();
                    let n = axioms.len();
                    let mut p = Partial::new(size as u8, &ar, &rel);
                    explore(&mut p, &refs, &|r| r.len() <= n && !r[r.len() - 1], &mut |r, _| r.len() <= n || r[n])
                })
            })
            .collect()
    }

    fn satisfaction_violations(&self, m: &FolMorphism, sentences: &[FolSentence], bound: usize) -> Vec<SatisfactionViolation<FolSentence, Partial>> {
        let via = m.cell_map();
        let target = direct(&m.target);
        let (nf, nf2) = (m.source.terms.symbols.len(), m.target.terms.symbols.len());
        let (ar, rel) = shape(&m.target);
        let mut out = Vec::new();
        for s in sentences {
            let t = self.translate(m, s);
            for size in 0..=bound {
                let vals = valuations(m.source.variables.len(), size as u8);
                let a = FolGoal { map: &via, nf, sentence: s, vals: &vals };
                let b = FolGoal { map: &target, nf: nf2, sentence: &t, vals: &vals };
                let mut p = Partial::new(size as u8, &ar, &rel);
                let mut witness = None;
                explore(&mut p, &[&a, &b], &|_| false, &mut |r, p| {
                    if r[0] != r[1] {
                        witness = Some((p.completed(), r[0]));
                        return false;
                    }
                    true
                });
                if let Some((model, reduct_satisfies)) = witness {
                    out.push(SatisfactionViolation { sentence: s.clone(), model, reduct_satisfies });
                    break;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_functoriality, check_satisfaction_condition, entails, Theory};
    use super::*;
    use crate::termlang::tests::lang;
    use crate::termlang::{pullback_fol, ExpressionLanguage};
    use alloc::string::ToString;

    fn fol(vars: &[&str], funcs: &[(&str, &[&str])], rels: &[(&str, &[&str])]) -> FolLanguage {
        let t = lang(vars, funcs);
        let e = ExpressionLanguage::new(
            vars.iter().map(|s| s.to_string()).collect(),
            rels.iter().map(|(r, a)| (r.to_string(), a.iter().map(|s| s.to_string()).collect())).collect(),
        )
        .unwrap();
        pullback_fol(&e, &t, &(0..vars.len()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn atoms_and_equalities() {
        let l = fol(&["x", "y"], &[("f", &["x"])], &[("r", &["x", "y"])]);
        let s = TinyFol.sentences(&l, 1);
        assert!(s.iter().any(|s| matches!(s, FolSentence::Atom(..))));
        let swap = TinyFol.morphisms(&l, &l);
        assert!(!swap.is_empty());
        for m in &swap {
            assert!(m.is_valid());
            let r = check_satisfaction_condition(&TinyFol, m, 1, 2);
            assert!(r.holds(), "{:?}", r.violations);
        }
        let id = TinyFol.identity(&l);
        assert_eq!(check_functoriality(&TinyFol, &id, &id, 1, 1), 0);
    }

    #[test]
    fn bounded_entailment() {
        let l = fol(&["x"], &[("f", &["x"])], &[("p", &["x"])]);
        let x = Term::Var(0);
        let fx = Term::App(0, alloc::vec![x.clone()]);
        let t = Theory::new(&TinyFol, l.clone(), [FolSentence::Atom(0, alloc::vec![x.clone()])]).unwrap();
        assert!(entails(&TinyFol, &t, &FolSentence::Atom(0, alloc::vec![fx.clone()]), 2));
        let lazy = TinyFol.entails_each(&l, &t.axiom_list(), &TinyFol.sentences(&l, 1), 2);
        let models: Vec<Partial> = TinyFol.models(&l, 2).into_iter().filter(|m| TinyFol.satisfies(&l, m, &t.axiom_list()[0])).collect();
        let brute: Vec<bool> = TinyFol.sentences(&l, 1).iter().map(|s| models.iter().all(|m| TinyFol.satisfies(&l, m, s))).collect();
        assert_eq!(lazy, brute);
        assert!(!entails(&TinyFol, &t, &FolSentence::Equal(EqnSentence::new(fx, x)), 2));
    }
}
