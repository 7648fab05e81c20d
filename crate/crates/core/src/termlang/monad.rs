use alloc::vec::Vec;

use super::{enumerate_terms, subst_unchecked, Indicia, Term, TermLanguage, TermTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonadViolation {
    /// Substituting the identity tuple changed the term.
    LeftUnit { term: Term, index: Indicia },
    /// Substituting into a bare variable did not return the entry.
    RightUnit { var: usize, entry: Term },
    Associativity { term: Term, inner: TermTuple, outer: TermTuple },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonadReport {
    pub violations: Vec<MonadViolation>,
    pub count: usize,
    pub checks: usize,
}

impl MonadReport {
    pub const KEEP: usize = 64;

    pub fn is_lawful(&self) -> bool {
        self.count == 0
    }

    fn record(&mut self, ok: bool, v: impl FnOnce() -> MonadViolation) {
        self.checks += 1;
        if !ok {
            if self.violations.len() < Self::KEEP {
                self.violations.push(v());
            }
            self.count += 1;
        }
    }
}

pub fn check_term_monad_laws(lang: &TermLanguage, depth: u32) -> MonadReport {
    check_term_monad_laws_with(lang, depth, &|t, s| subst_unchecked(t, s))
}

/// The laws with a caller-supplied substitution. Associativity is checked
/// for `t` over `J`, `s : I → J` and `r : K → I` whose depths sum to at most
/// `depth`, comparing `t[s][r]` with `t[s[r]]`.
pub fn check_term_monad_laws_with(lang: &TermLanguage, depth: u32, subst: &dyn Fn(&Term, &TermTuple) -> Term) -> MonadReport {
    let mut report = MonadReport::default();
    let nv = lang.variables.len();
    let subsets: Vec<Indicia> = (0..1u64 << nv).map(Indicia).collect();
    // Terms over each subset, by increasing depth.
    let over: Vec<Vec<Term>> = subsets.iter().map(|&i| enumerate_terms(lang, i, depth)).collect();
    let upto = |i: usize, k: u32| over[i].iter().take_while(|t| t.depth() <= k).count();

    for (j, &jset) in subsets.iter().enumerate() {
        for t in &over[j] {
            let id = TermTuple::identity(jset);
            report.record(subst(t, &id) == *t, || MonadViolation::LeftUnit { term: t.clone(), index: jset });
        }
    }
    for v in 0..nv {
        for (i, &iset) in subsets.iter().enumerate() {
            for u in &over[i] {
                let s = TermTuple { domain: iset, index: Indicia::singleton(v), entries: alloc::vec![u.clone()] };
                report.record(subst(&Term::Var(v), &s) == *u, || MonadViolation::RightUnit { var: v, entry: u.clone() });
            }
        }
    }
    let compose = |s: &TermTuple, r: &TermTuple| TermTuple {
        domain: r.domain,
        index: s.index,
        entries: s.entries.iter().map(|e| subst(e, r)).collect(),
    };
    for (j, &jset) in subsets.iter().enumerate() {
        for t in &over[j] {
            let a = t.depth();
            for (i, &iset) in subsets.iter().enumerate() {
                for s in tuples(&over[i], iset, jset, upto(i, depth - a)) {
                    let b = s.degree();
                    let ts = subst(t, &s);
                    for (k, &kset) in subsets.iter().enumerate() {
                        for r in tuples(&over[k], kset, iset, upto(k, depth - a - b)) {
                            let lhs = subst(&ts, &r);
                            let rhs = subst(t, &compose(&s, &r));
                            report.record(lhs == rhs, || MonadViolation::Associativity { term: t.clone(), inner: s.clone(), outer: r.clone() });
                        }
                    }
                }
            }
        }
    }
    report
}

/// Tuples `domain → index` whose entries come from the first `limit` terms.
fn tuples(terms: &[Term], domain: Indicia, index: Indicia, limit: usize) -> Vec<TermTuple> {
    let k = index.len();
    if limit == 0 && k > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = alloc::vec![0usize; k];
    loop {
        out.push(TermTuple { domain, index, entries: pick.iter().map(|&p| terms[p].clone()).collect() });
        let Some(q) = (0..k).rev().find(|&q| pick[q] + 1 < limit) else { break };
        pick[q] += 1;
        pick[q + 1..].iter_mut().for_each(|p| *p = 0);
    }
    out
}
