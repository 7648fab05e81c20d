//! Equational logic over term languages. Sentences are equations
//! quantified over every variable of the language; models are finite
//! algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::lazy::{explore, valuations, Goal, Need, Partial};
use super::{Institution, SatisfactionViolation};
use crate::termlang::{apply_morphism, enumerate_morphisms, enumerate_terms, Term, TermLanguage, TermLanguageMorphism};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EqnSentence {
    pub lhs: Term,
    pub rhs: Term,
}

impl EqnSentence {
    /// Sides are stored in term order.
    pub fn new(a: Term, b: Term) -> Self {
        if a <= b {
            EqnSentence { lhs: a, rhs: b }
        } else {
            EqnSentence { lhs: b, rhs: a }
        }
    }

    pub fn depth(&self) -> u32 {
        self.lhs.depth().max(self.rhs.depth())
    }
}

/// Where the operation of each source symbol is read in a target structure,
/// and how its arguments are reordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub op: Vec<usize>,
    /// `perm[f][i]` is the target argument position of argument `i` of `f`.
    pub perm: Vec<Vec<usize>>,
}

impl CellMap {
    pub fn direct(lang: &TermLanguage) -> Self {
        CellMap { op: (0..lang.symbols.len()).collect(), perm: lang.arity.iter().map(|a| (0..a.len()).collect()).collect() }
    }

    pub fn of(m: &TermLanguageMorphism) -> Self {
        let perm = m
            .source
            .arity
            .iter()
            .zip(&m.sym_map)
            .map(|(a, &g)| a.iter().map(|v| m.target.arity[g].rank(m.var_map[v]).expect("arity preserved")).collect())
            .collect();
        CellMap { op: m.sym_map.clone(), perm }
    }
}

pub(super) fn eval_term(p: &Partial, map: &CellMap, t: &Term, val: &[u8]) -> Result<u8, Need> {
    match t {
        Term::Var(v) => Ok(val[*v]),
        Term::App(f, args) => {
            let mut target_args = [0u8; 64];
            let k = args.len();
            for (i, a) in args.iter().enumerate() {
                target_args[map.perm[*f][i]] = eval_term(p, map, a, val)?;
            }
            p.read(map.op[*f], &target_args[..k])
        }
    }
}

/// Tables of `source` read through `map` from a structure of the target.
pub(super) fn reduct_tables(source_arities: &[usize], map: &CellMap, x: &Partial) -> Vec<Vec<u8>> {
    source_arities
        .iter()
        .enumerate()
        .map(|(f, &k)| {
            valuations(k, x.size)
                .iter()
                .map(|args| {
                    let mut t = alloc::vec![0u8; k];
                    for (i, &a) in args.iter().enumerate() {
                        t[map.perm[f][i]] = a;
                    }
                    x.tables[map.op[f]][x.cell_of(&t)]
                })
                .collect()
        })
        .collect()
}

pub(super) fn show_tables(p: &Partial, names: &[&str]) -> String {
    let mut out = format!("(structure (size {})", p.size);
    for (name, t) in names.iter().zip(&p.tables) {
        let cells: Vec<String> = t.iter().map(|c| format!("{c}")).collect();
        out.push_str(&format!(" ({} {})", name, cells.join(" ")));
    }
    out.push(')');
    out
}

struct EqGoal<'a> {
    map: &'a CellMap,
    sentence: &'a EqnSentence,
    vals: &'a [Vec<u8>],
}

impl Goal for EqGoal<'_> {
    fn count(&self) -> usize {
        self.vals.len()
    }
    fn check(&self, p: &Partial, i: usize) -> Result<bool, Need> {
        let l = eval_term(p, self.map, &self.sentence.lhs, &self.vals[i])?;
        Ok(l == eval_term(p, self.map, &self.sentence.rhs, &self.vals[i])?)
    }
}

fn arities(l: &TermLanguage) -> Vec<usize> {
    l.arity.iter().map(|a| a.len()).collect()
}

/// Entailment and satisfaction are checked by search over partial
/// algebras; `models` enumerates every algebra and is only practical for
/// small languages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Eqn;

impl Institution for Eqn {
    type Signature = TermLanguage;
    type Morphism = TermLanguageMorphism;
    type Sentence = EqnSentence;
    type Model = Partial;

    fn name(&self) -> &'static str {
        "eqn"
    }
    fn source<'a>(&self, m: &'a TermLanguageMorphism) -> &'a TermLanguage {
        &m.source
    }
    fn target<'a>(&self, m: &'a TermLanguageMorphism) -> &'a TermLanguage {
        &m.target
    }
    fn identity(&self, sig: &TermLanguage) -> TermLanguageMorphism {
        TermLanguageMorphism::identity(sig)
    }
    fn compose(&self, f: &TermLanguageMorphism, g: &TermLanguageMorphism) -> Option<TermLanguageMorphism> {
        f.then(g).ok()
    }
    fn morphisms(&self, a: &TermLanguage, b: &TermLanguage) -> Vec<TermLanguageMorphism> {
        enumerate_morphisms(a, b)
    }
    fn sentences(&self, sig: &TermLanguage, depth: u32) -> Vec<EqnSentence> {
        let terms = enumerate_terms(sig, sig.all_vars(), depth);
        let mut out = Vec::new();
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i..] {
                out.push(EqnSentence::new(a.clone(), b.clone()));
            }
        }
        out
    }
    fn depth(&self, s: &EqnSentence) -> u32 {
        s.depth()
    }
    fn well_formed(&self, sig: &TermLanguage, s: &EqnSentence) -> bool {
        sig.check_term(&s.lhs).is_ok() && sig.check_term(&s.rhs).is_ok()
    }
    fn translate(&self, m: &TermLanguageMorphism, s: &EqnSentence) -> EqnSentence {
        EqnSentence::new(apply_morphism(m, &s.lhs), apply_morphism(m, &s.rhs))
    }
    fn models(&self, sig: &TermLanguage, bound: usize) -> Vec<Partial> {
        all_structures(&arities(sig), &alloc::vec![false; sig.symbols.len()], bound)
    }
    fn reduct(&self, m: &TermLanguageMorphism, x: &Partial) -> Partial {
        let ar = arities(&m.source);
        let mut r = Partial::new(x.size, &ar, &alloc::vec![false; ar.len()]);
        r.tables = reduct_tables(&ar, &CellMap::of(m), x);
        r
    }
    fn satisfies(&self, sig: &TermLanguage, x: &Partial, s: &EqnSentence) -> bool {
        let map = CellMap::direct(sig);
        valuations(sig.variables.len(), x.size).iter().all(|v| {
            eval_term(x, &map, &s.lhs, v).expect("total algebra") == eval_term(x, &map, &s.rhs, v).expect("total algebra")
        })
    }
    fn show_sentence(&self, sig: &TermLanguage, s: &EqnSentence) -> String {
        format!("(= {} {})", sig.display(&s.lhs), sig.display(&s.rhs))
    }
    fn show_model(&self, sig: &TermLanguage, m: &Partial) -> String {
        let names: Vec<&str> = sig.symbols.iter().map(String::as_str).collect();
        show_tables(m, &names)
    }

    fn satisfiable(&self, sig: &TermLanguage, axioms: &[EqnSentence], bound: usize) -> bool {
        let map = CellMap::direct(sig);
        let ar = arities(sig);
        let rel = alloc::vec![false; ar.len()];
        (0..=bound).any(|size| {
            let vals = valuations(sig.variables.len(), size as u8);
            let goals: Vec<EqGoal> = axioms.iter().map(|s| EqGoal { map: &map, sentence: s, vals: &vals }).collect();
            let refs: Vec<&dyn Goal> = goals.iter().map(|g| g as &dyn Goal).collect();
            let mut p = Partial::new(size as u8, &ar, &rel);
            !explore(&mut p, &refs, &|r| !r[r.len() - 1], &mut |r, _| r.len() < axioms.len() || !r.iter().all(|&b| b))
        })
    }

    fn entails_each(&self, sig: &TermLanguage, axioms: &[EqnSentence], candidates: &[EqnSentence], bound: usize) -> Vec<bool> {
        let map = CellMap::direct(sig);
        let ar = arities(sig);
        let rel = alloc::vec![false; ar.len()];
        candidates
            .iter()
            .map(|c| {
                (0..=bound).all(|size| {
                    let vals = valuations(sig.variables.len(), size as u8);
                    let goals: Vec<EqGoal> =
                        axioms.iter().chain(core::iter::once(c)).map(|s| EqGoal { map: &map, sentence: s, vals: &vals }).collect();
                    let refs: Vec<&dyn Goal> = goals.iter().map(|g| g as &dyn Goal).collect();
                    let n = axioms.len();
                    let mut p = Partial::new(size as u8, &ar, &rel);
                    explore(&mut p, &refs, &|r| r.len() <= n && !r[r.len() - 1], &mut |r, _| r.len() <= n || r[n])
                })
            })
            .collect()
    }

    fn satisfaction_violations(
        &self,
        m: &TermLanguageMorphism,
        sentences: &[EqnSentence],
        bound: usize,
    ) -> Vec<SatisfactionViolation<EqnSentence, Partial>> {
        let via = CellMap::of(m);
        let direct = CellMap::direct(&m.target);
        let ar = arities(&m.target);
        let rel = alloc::vec![false; ar.len()];
        let mut out = Vec::new();
        for s in sentences {
            let t = self.translate(m, s);
            for size in 0..=bound {
                let vals = valuations(m.source.variables.len(), size as u8);
                let a = EqGoal { map: &via, sentence: s, vals: &vals };
                let b = EqGoal { map: &direct, sentence: &t, vals: &vals };
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

/// Every structure with carrier size at most `bound`.
pub(super) fn all_structures(arities: &[usize], relations: &[bool], bound: usize) -> Vec<Partial> {
    let mut out = Vec::new();
    for size in 0..=bound as u8 {
        let mut p = Partial::new(size, arities, relations);
        let cells: Vec<(usize, usize)> = p.tables.iter().enumerate().flat_map(|(op, t)| (0..t.len()).map(move |c| (op, c))).collect();
        if cells.iter().any(|&(op, _)| p.ranges[op] == 0) {
            continue;
        }
        cells.iter().for_each(|&(op, c)| p.tables[op][c] = 0);
        loop {
            out.push(p.clone());
            let Some(k) = (0..cells.len()).rev().find(|&k| p.tables[cells[k].0][cells[k].1] + 1 < p.ranges[cells[k].0]) else { break };
            p.tables[cells[k].0][cells[k].1] += 1;
            for &(op, c) in &cells[k + 1..] {
                p.tables[op][c] = 0;
            }
        }
    }
    out
}
