//! Alignment diagrams of theories and their fusion by colimits of
//! signatures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cat::unionfind::UnionFind;
use crate::cat::FinGraph;
use crate::institution::{
    check_theory_morphism, Eqn, FolMorphism, Institution, Prop, PropMorphism, PropSignature, Theory, TheoryMorphism, TinyFol,
};
use crate::termlang::{ExpressionLanguage, FolLanguage, Indicia, TermLanguage, TermLanguageMorphism};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntegrateError {
    #[error("variable bijections disagree around a cycle")]
    IncompatibleVariables,
    #[error("symbol {0} receives two arities")]
    ArityConflict(String),
    #[error("diagram is ill-formed")]
    IllFormedDiagram,
    #[error("edge {0} is not a theory morphism")]
    EdgeNotTheoryMorphism(usize),
}

/// A colimit signature with its injections. `provenance[k]` lists the
/// `(node, symbol)` pairs merged into symbol `k` of the colimit.
#[derive(Clone, Debug)]
pub struct SignatureColimit<I: Institution + ?Sized> {
    pub signature: I::Signature,
    pub injections: Vec<I::Morphism>,
    pub symbols: Vec<String>,
    pub provenance: Vec<Vec<(String, String)>>,
}

pub trait Fusable: Institution {
    fn signature_colimit(
        &self,
        shape: &FinGraph,
        names: &[String],
        signatures: &[Self::Signature],
        edges: &[Self::Morphism],
    ) -> Result<SignatureColimit<Self>, IntegrateError>;

    /// Candidate cocone targets with at most `bound` symbols, shaped like
    /// `like`.
    fn small_signatures(&self, like: &Self::Signature, bound: usize) -> Vec<Self::Signature>;
}

struct Part<'a> {
    names: &'a [String],
    arities: Vec<Indicia>,
}

struct PartColimit {
    names: Vec<String>,
    arities: Vec<Indicia>,
    inj: Vec<Vec<usize>>,
    provenance: Vec<Vec<(String, String)>>,
}

/// Quotient of the disjoint union of the parts by the edge maps. A class
/// takes the least local name of its members when no other class wants
/// that name, and otherwise its least `node:name` form.
fn colimit_part(
    node_names: &[String],
    parts: &[Part],
    phi: &[Vec<usize>],
    edges: &[(usize, usize, &[usize])],
) -> Result<PartColimit, IntegrateError> {
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    offsets.push(0);
    for p in parts {
        offsets.push(offsets.last().unwrap() + p.names.len());
    }
    let total = *offsets.last().unwrap();
    let mut uf = UnionFind::new(total);
    for &(s, t, map) in edges {
        if map.len() != parts[s].names.len() || map.iter().any(|&b| b >= parts[t].names.len()) {
            return Err(IntegrateError::IllFormedDiagram);
        }
        for (a, &b) in map.iter().enumerate() {
            uf.union(offsets[s] + a, offsets[t] + b);
        }
    }
    let (count, labels) = uf.labels();
    let mut members: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); count];
    for (node, p) in parts.iter().enumerate() {
        for a in 0..p.names.len() {
            members[labels[offsets[node] + a]].push((node, a));
        }
    }
    let mut arities = Vec::with_capacity(count);
    for class in &members {
        let transported: BTreeSet<Indicia> =
            class.iter().map(|&(n, a)| Indicia::from_vars(parts[n].arities[a].iter().map(|v| phi[n][v]))).collect();
        if transported.len() > 1 {
            let (n, a) = class[0];
            return Err(IntegrateError::ArityConflict(parts[n].names[a].clone()));
        }
        arities.push(transported.into_iter().next().expect("classes are nonempty"));
    }
    let local: Vec<&String> = members.iter().map(|c| c.iter().map(|&(n, a)| &parts[n].names[a]).min().unwrap()).collect();
    let mut wanted: BTreeMap<&String, usize> = BTreeMap::new();
    for l in &local {
        *wanted.entry(l).or_default() += 1;
    }
    let chosen: Vec<String> = members
        .iter()
        .zip(&local)
        .map(|(c, l)| {
            if wanted[l] == 1 {
                (*l).clone()
            } else {
                c.iter().map(|&(n, a)| format!("{}:{}", node_names[n], parts[n].names[a])).min().unwrap()
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| chosen[a].cmp(&chosen[b]));
    let mut position = alloc::vec![0; count];
    for (k, &c) in order.iter().enumerate() {
        position[c] = k;
    }
    let inj = parts
        .iter()
        .enumerate()
        .map(|(node, p)| (0..p.names.len()).map(|a| position[labels[offsets[node] + a]]).collect())
        .collect();
    let provenance = order
        .iter()
        .map(|&c| {
            let mut v: Vec<(String, String)> = members[c].iter().map(|&(n, a)| (node_names[n].clone(), parts[n].names[a].clone())).collect();
            v.sort();
            v
        })
        .collect();
    Ok(PartColimit {
        names: order.iter().map(|&c| chosen[c].clone()).collect(),
        arities: order.iter().map(|&c| arities[c]).collect(),
        inj,
        provenance,
    })
}

/// Identify every node's variables with the colimit's: within a connected
/// component through the edge bijections, across components by position.
/// The colimit takes the variable names of node 0.
fn identify_variables(shape: &FinGraph, vars: &[&[String]], maps: &[&[usize]]) -> Result<(Vec<String>, Vec<Vec<usize>>), IntegrateError> {
    let Some(first) = vars.first() else { return Ok((Vec::new(), Vec::new())) };
    let n = first.len();
    if vars.iter().any(|v| v.len() != n) {
        return Err(IntegrateError::IncompatibleVariables);
    }
    let mut phi: Vec<Option<Vec<usize>>> = alloc::vec![None; vars.len()];
    for root in 0..vars.len() {
        if phi[root].is_some() {
            continue;
        }
        phi[root] = Some((0..n).collect());
        let mut changed = true;
        while changed {
            changed = false;
            for (&(s, t), m) in shape.edges.iter().zip(maps) {
                match (&phi[s], &phi[t]) {
                    (Some(ps), None) => {
                        let mut pt = alloc::vec![0; n];
                        for v in 0..n {
                            pt[m[v]] = ps[v];
                        }
                        phi[t] = Some(pt);
                        changed = true;
                    }
                    (None, Some(pt)) => {
                        phi[s] = Some((0..n).map(|v| pt[m[v]]).collect());
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
    }
    let phi: Vec<Vec<usize>> = phi.into_iter().map(|p| p.expect("every node is reached")).collect();
    for (&(s, t), m) in shape.edges.iter().zip(maps) {
        if (0..n).any(|v| phi[t][m[v]] != phi[s][v]) {
            return Err(IntegrateError::IncompatibleVariables);
        }
    }
    Ok((first.to_vec(), phi))
}

fn check_shape<I: Institution + ?Sized>(inst: &I, shape: &FinGraph, signatures: &[I::Signature], edges: &[I::Morphism]) -> Result<(), IntegrateError> {
    if signatures.len() != shape.nodes || edges.len() != shape.edges.len() {
        return Err(IntegrateError::IllFormedDiagram);
    }
    for (&(s, t), m) in shape.edges.iter().zip(edges) {
        if *inst.source(m) != signatures[s] || *inst.target(m) != signatures[t] {
            return Err(IntegrateError::IllFormedDiagram);
        }
    }
    Ok(())
}

impl Fusable for Prop {
    fn signature_colimit(
        &self,
        shape: &FinGraph,
        names: &[String],
        signatures: &[PropSignature],
        edges: &[PropMorphism],
    ) -> Result<SignatureColimit<Prop>, IntegrateError> {
        check_shape(self, shape, signatures, edges)?;
        let parts: Vec<Part> = signatures.iter().map(|s| Part { names: &s.atoms, arities: alloc::vec![Indicia::EMPTY; s.atoms.len()] }).collect();
        let phi = alloc::vec![Vec::new(); signatures.len()];
        let e: Vec<(usize, usize, &[usize])> = shape.edges.iter().zip(edges).map(|(&(s, t), m)| (s, t, m.map.as_slice())).collect();
        let c = colimit_part(names, &parts, &phi, &e)?;
        let signature = PropSignature { atoms: c.names.clone() };
        let injections = signatures
            .iter()
            .zip(c.inj)
            .map(|(s, map)| PropMorphism { source: s.clone(), target: signature.clone(), map })
            .collect();
        Ok(SignatureColimit { signature, injections, symbols: c.names, provenance: c.provenance })
    }

    fn small_signatures(&self, _like: &PropSignature, bound: usize) -> Vec<PropSignature> {
        (0..=bound).map(|k| PropSignature::new((0..k).map(|i| format!("s{i}")))).collect()
    }
}

fn term_colimit(
    names: &[String],
    shape: &FinGraph,
    langs: &[&TermLanguage],
    edges: &[&TermLanguageMorphism],
) -> Result<(TermLanguage, Vec<TermLanguageMorphism>, PartColimit, Vec<Vec<usize>>), IntegrateError> {
    let vars: Vec<&[String]> = langs.iter().map(|l| l.variables.as_slice()).collect();
    let var_maps: Vec<&[usize]> = edges.iter().map(|m| m.var_map.as_slice()).collect();
    let (variables, phi) = identify_variables(shape, &vars, &var_maps)?;
    let parts: Vec<Part> = langs.iter().map(|l| Part { names: &l.symbols, arities: l.arity.clone() }).collect();
    let e: Vec<(usize, usize, &[usize])> = shape.edges.iter().zip(edges).map(|(&(s, t), m)| (s, t, m.sym_map.as_slice())).collect();
    let c = colimit_part(names, &parts, &phi, &e)?;
    let language = TermLanguage::from_indicia(variables, c.names.clone(), c.arities.clone()).map_err(|_| IntegrateError::IllFormedDiagram)?;
    let injections = langs
        .iter()
        .zip(&c.inj)
        .zip(&phi)
        .map(|((l, inj), p)| {
            TermLanguageMorphism::new(l, &language, p.clone(), inj.clone()).map_err(|_| IntegrateError::ArityConflict(String::new()))
        })
        .collect::<Result<_, _>>()?;
    Ok((language, injections, c, phi))
}

impl Fusable for Eqn {
    fn signature_colimit(
        &self,
        shape: &FinGraph,
        names: &[String],
        signatures: &[TermLanguage],
        edges: &[TermLanguageMorphism],
    ) -> Result<SignatureColimit<Eqn>, IntegrateError> {
        check_shape(self, shape, signatures, edges)?;
        let langs: Vec<&TermLanguage> = signatures.iter().collect();
        let e: Vec<&TermLanguageMorphism> = edges.iter().collect();
        let (signature, injections, c, _) = term_colimit(names, shape, &langs, &e)?;
        Ok(SignatureColimit { signature, injections, symbols: c.names, provenance: c.provenance })
    }

    fn small_signatures(&self, like: &TermLanguage, bound: usize) -> Vec<TermLanguage> {
        arity_multisets(like.variables.len(), bound)
            .into_iter()
            .map(|a| TermLanguage::from_indicia(like.variables.clone(), symbol_names("s", a.len()), a).expect("fresh names"))
            .collect()
    }
}

impl Fusable for TinyFol {
    fn signature_colimit(
        &self,
        shape: &FinGraph,
        names: &[String],
        signatures: &[FolLanguage],
        edges: &[FolMorphism],
    ) -> Result<SignatureColimit<TinyFol>, IntegrateError> {
        check_shape(self, shape, signatures, edges)?;
        let langs: Vec<&TermLanguage> = signatures.iter().map(|s| &s.terms).collect();
        let e: Vec<&TermLanguageMorphism> = edges.iter().map(|m| &m.terms).collect();
        let (terms, term_inj, c, phi) = term_colimit(names, shape, &langs, &e)?;
        let parts: Vec<Part> =
            signatures.iter().map(|s| Part { names: &s.expressions.relations, arities: s.expressions.arity.clone() }).collect();
        let re: Vec<(usize, usize, &[usize])> = shape.edges.iter().zip(edges).map(|(&(s, t), m)| (s, t, m.rel_map.as_slice())).collect();
        let r = colimit_part(names, &parts, &phi, &re)?;
        if r.names.iter().any(|n| terms.symbols.contains(n) || terms.variables.contains(n)) {
            return Err(IntegrateError::IllFormedDiagram);
        }
        let expressions = ExpressionLanguage { variables: terms.variables.clone(), relations: r.names.clone(), arity: r.arities.clone() };
        let nv = terms.variables.len();
        let signature = FolLanguage { variables: terms.variables.clone(), terms, expressions, expression_renaming: (0..nv).collect() };
        let injections = signatures
            .iter()
            .zip(term_inj)
            .zip(r.inj)
            .map(|((s, t), rel_map)| FolMorphism { source: s.clone(), target: signature.clone(), terms: t, rel_map })
            .collect();
        let mut symbols = c.names;
        symbols.extend(r.names);
        let mut provenance = c.provenance;
        provenance.extend(r.provenance);
        Ok(SignatureColimit { signature, injections, symbols, provenance })
    }

    fn small_signatures(&self, like: &FolLanguage, bound: usize) -> Vec<FolLanguage> {
        let n = like.variables.len();
        let mut out = Vec::new();
        for f in arity_multisets(n, bound) {
            for r in arity_multisets(n, bound - f.len()) {
                let terms = TermLanguage::from_indicia(like.variables.clone(), symbol_names("s", f.len()), f.clone()).expect("fresh names");
                let expressions = ExpressionLanguage { variables: like.variables.clone(), relations: symbol_names("r", r.len()), arity: r };
                out.push(FolLanguage { variables: like.variables.clone(), terms, expressions, expression_renaming: (0..n).collect() });
            }
        }
        out
    }
}

fn symbol_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Nondecreasing lists of at most `bound` variable subsets.
fn arity_multisets(vars: usize, bound: usize) -> Vec<Vec<Indicia>> {
    let choices = 1u64 << vars;
    let mut out = alloc::vec![Vec::new()];
    let mut frontier = alloc::vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for l in &frontier {
            let start = l.last().map_or(0, |i: &Indicia| i.0);
            for a in start..choices {
                let mut m = l.clone();
                m.push(Indicia(a));
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[derive(Clone, Debug)]
pub struct AlignmentDiagram<I: Institution> {
    pub shape: FinGraph,
    pub names: Vec<String>,
    pub theories: Vec<Theory<I>>,
    pub edges: Vec<I::Morphism>,
}

impl<I: Institution> AlignmentDiagram<I> {
    /// Shape, endpoints, and every edge a theory morphism at the bounds.
    pub fn validate(&self, inst: &I, depth: u32, bound: usize) -> Result<(), IntegrateError> {
        let sigs: Vec<I::Signature> = self.theories.iter().map(|t| t.signature.clone()).collect();
        if self.names.len() != self.theories.len() {
            return Err(IntegrateError::IllFormedDiagram);
        }
        check_shape(inst, &self.shape, &sigs, &self.edges)?;
        for (k, (&(s, t), m)) in self.shape.edges.iter().zip(&self.edges).enumerate() {
            let tm = TheoryMorphism { source: self.theories[s].clone(), target: self.theories[t].clone(), sig: m.clone() };
            if !check_theory_morphism(inst, &tm, depth, bound) {
                return Err(IntegrateError::EdgeNotTheoryMorphism(k));
            }
        }
        Ok(())
    }

    pub fn signatures(&self) -> Vec<I::Signature> {
        self.theories.iter().map(|t| t.signature.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FusionResult<I: Institution> {
    pub theory: Theory<I>,
    pub injections: Vec<TheoryMorphism<I>>,
    pub symbols: Vec<String>,
    pub provenance: Vec<Vec<(String, String)>>,
    /// No model up to the bound satisfies the fused axioms.
    pub inconsistent: bool,
}

/// The colimit signature with every node axiom translated into it.
pub fn fuse<I: Fusable>(inst: &I, d: &AlignmentDiagram<I>, bound: usize) -> Result<FusionResult<I>, IntegrateError> {
    let c = inst.signature_colimit(&d.shape, &d.names, &d.signatures(), &d.edges)?;
    let axioms: BTreeSet<I::Sentence> =
        d.theories.iter().zip(&c.injections).flat_map(|(t, m)| t.axioms.iter().map(move |a| inst.translate(m, a))).collect();
    let theory = Theory { signature: c.signature.clone(), axioms };
    let inconsistent = !inst.satisfiable(&theory.signature, &theory.axiom_list(), bound);
    let injections = d
        .theories
        .iter()
        .zip(c.injections)
        .map(|(t, sig)| TheoryMorphism { source: t.clone(), target: theory.clone(), sig })
        .collect();
    Ok(FusionResult { theory, injections, symbols: c.symbols, provenance: c.provenance, inconsistent })
}

/// Every cocone into a signature with at most `bound` symbols factors
/// through the fused theory by exactly one mediating theory morphism.
/// Each cocone is tested against the least theory that makes its legs
/// theory morphisms; a mediator into that theory is one into every theory
/// for which the legs are theory morphisms.
pub fn verify_fusion_universal<I: Fusable>(inst: &I, d: &AlignmentDiagram<I>, result: &FusionResult<I>, bound: usize, model_bound: usize) -> bool {
    let inj: Vec<&I::Morphism> = result.injections.iter().map(|t| &t.sig).collect();
    if inj.len() != d.theories.len() {
        return false;
    }
    let cocone = |legs: &[&I::Morphism]| {
        d.shape.edges.iter().zip(&d.edges).all(|(&(s, t), e)| inst.compose(e, legs[t]).is_some_and(|c| c == *legs[s]))
    };
    if !cocone(&inj) || inj.iter().zip(&d.theories).any(|(m, t)| *inst.source(m) != t.signature || *inst.target(m) != result.theory.signature) {
        return false;
    }
    let colim = &result.theory.signature;
    for target in inst.small_signatures(colim, bound) {
        let legs: Vec<Vec<I::Morphism>> = d.theories.iter().map(|t| inst.morphisms(&t.signature, &target)).collect();
        let mediators = inst.morphisms(colim, &target);
        let mut pick: Vec<usize> = Vec::with_capacity(legs.len());
        if !each_cocone(inst, d, &legs, &mut pick, &mut |family| {
            let axioms: Vec<I::Sentence> =
                d.theories.iter().zip(family).flat_map(|(t, m)| t.axioms.iter().map(|a| inst.translate(m, a))).collect();
            let least = Theory { signature: target.clone(), axioms: axioms.into_iter().collect() };
            let mut found = 0;
            for u in &mediators {
                if inj.iter().zip(family).all(|(i, leg)| inst.compose(i, u).is_some_and(|c| c == **leg)) {
                    let depth = result.theory.axioms.iter().map(|a| inst.depth(a)).max().unwrap_or(0);
                    let tm = TheoryMorphism { source: result.theory.clone(), target: least.clone(), sig: u.clone() };
                    if check_theory_morphism(inst, &tm, depth, model_bound) {
                        found += 1;
                    }
                }
            }
            found == 1
        }) {
            return false;
        }
    }
    true
}

/// Calls `f` on each compatible family of legs; stops when `f` fails.
fn each_cocone<I: Institution>(
    inst: &I,
    d: &AlignmentDiagram<I>,
    legs: &[Vec<I::Morphism>],
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[&I::Morphism]) -> bool,
) -> bool {
    let node = pick.len();
    if node == legs.len() {
        let family: Vec<&I::Morphism> = pick.iter().enumerate().map(|(n, &p)| &legs[n][p]).collect();
        return f(&family);
    }
    for p in 0..legs[node].len() {
        pick.push(p);
        let ok = d.shape.edges.iter().zip(&d.edges).all(|(&(s, t), e)| {
            if s.max(t) != node {
                return true;
            }
            inst.compose(e, &legs[t][pick[t]]).is_some_and(|c| c == legs[s][pick[s]])
        });
        if ok && !each_cocone(inst, d, legs, pick, f) {
            pick.pop();
            return false;
        }
        pick.pop();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{colimit, Diagram, FinMap};
    use crate::institution::{closure, PropSentence as P};
    use alloc::string::ToString;

    fn sig(atoms: &[&str]) -> PropSignature {
        PropSignature::new(atoms.iter().copied())
    }

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    /// `T1 ← T0 → T2` with nodes ordered `T1, T2, T0`.
    pub(crate) fn span() -> AlignmentDiagram<Prop> {
        let (s1, s0, s2) = (sig(&["p", "q"]), sig(&["q"]), sig(&["q", "r"]));
        let t1 = Theory::new(&Prop, s1.clone(), [P::Atom(0)]).unwrap();
        let t0 = Theory::new(&Prop, s0.clone(), []).unwrap();
        let t2 = Theory::new(&Prop, s2.clone(), [P::implies(P::Atom(0), P::Atom(1))]).unwrap();
        let e1 = PropMorphism::by_names(&s0, &s1, &[("q", "q")]).unwrap();
        let e2 = PropMorphism::by_names(&s0, &s2, &[("q", "q")]).unwrap();
        AlignmentDiagram {
            shape: FinGraph::new(3, alloc::vec![(2, 0), (2, 1)]).unwrap(),
            names: names(&["T1", "T2", "T0"]),
            theories: alloc::vec![t1, t2, t0],
            edges: alloc::vec![e1, e2],
        }
    }

    #[test]
    fn span_fuses() {
        let d = span();
        d.validate(&Prop, 2, 0).unwrap();
        let r = fuse(&Prop, &d, 0).unwrap();
        assert_eq!(r.theory.signature.atoms, names(&["p", "q", "r"]));
        let expected: BTreeSet<P> = [P::Atom(0), P::implies(P::Atom(1), P::Atom(2))].into_iter().collect();
        assert_eq!(r.theory.axioms, expected);
        assert!(!r.inconsistent);
        assert_eq!(r.provenance[1], alloc::vec![("T0".to_string(), "q".to_string()), ("T1".into(), "q".into()), ("T2".into(), "q".into())]);
        assert!(verify_fusion_universal(&Prop, &d, &r, 4, 0));
    }

    #[test]
    fn redirected_injection_fails() {
        let d = span();
        let mut r = fuse(&Prop, &d, 0).unwrap();
        r.injections[0].sig.map[0] = 2;
        assert!(!verify_fusion_universal(&Prop, &d, &r, 4, 0));
    }

    #[test]
    fn single_node() {
        let s = sig(&["a", "b"]);
        let t = Theory::new(&Prop, s.clone(), [P::or(P::Atom(0), P::Atom(1))]).unwrap();
        let d = AlignmentDiagram { shape: FinGraph::new(1, Vec::new()).unwrap(), names: names(&["T"]), theories: alloc::vec![t.clone()], edges: Vec::new() };
        let r = fuse(&Prop, &d, 0).unwrap();
        assert_eq!(r.theory, t);
        assert!(verify_fusion_universal(&Prop, &d, &r, 3, 0));
    }

    #[test]
    fn negation_is_inconsistent() {
        let s = sig(&["p"]);
        let a = Theory::new(&Prop, s.clone(), [P::Atom(0)]).unwrap();
        let b = Theory::new(&Prop, s.clone(), [P::not(P::Atom(0))]).unwrap();
        let base = Theory::new(&Prop, s.clone(), []).unwrap();
        let id = Prop.identity(&s);
        let d = AlignmentDiagram {
            shape: FinGraph::new(3, alloc::vec![(2, 0), (2, 1)]).unwrap(),
            names: names(&["A", "B", "S"]),
            theories: alloc::vec![a, b, base],
            edges: alloc::vec![id.clone(), id],
        };
        let r = fuse(&Prop, &d, 0).unwrap();
        assert!(r.inconsistent);
        assert_eq!(r.theory.signature.atoms, names(&["p"]));
    }

    #[test]
    fn disjoint_names_are_qualified() {
        let s = sig(&["p"]);
        let t = Theory::new(&Prop, s.clone(), []).unwrap();
        let d = AlignmentDiagram {
            shape: FinGraph::new(2, Vec::new()).unwrap(),
            names: names(&["A", "B"]),
            theories: alloc::vec![t.clone(), t],
            edges: Vec::new(),
        };
        let r = fuse(&Prop, &d, 0).unwrap();
        assert_eq!(r.theory.signature.atoms, names(&["A:p", "B:p"]));
    }

    #[test]
    fn agrees_with_set_colimit() {
        let d = span();
        let sigs = d.signatures();
        let c = Prop.signature_colimit(&d.shape, &d.names, &sigs, &d.edges).unwrap();
        let maps = d.edges.iter().map(|m| FinMap::new(m.source.atoms.len(), m.target.atoms.len(), m.map.clone()).unwrap()).collect();
        let sets = Diagram::new(d.shape.clone(), sigs.iter().map(|s| s.atoms.len()).collect(), maps).unwrap();
        assert_eq!(colimit(&sets).apex, c.signature.atoms.len());
    }

    #[test]
    fn closure_is_preserved() {
        let d = span();
        let r = fuse(&Prop, &d, 0).unwrap();
        let fused = closure(&Prop, &r.theory, 2, 0).sentences;
        for (t, inj) in d.theories.iter().zip(&r.injections) {
            for s in closure(&Prop, t, 1, 0).sentences {
                assert!(fused.contains(&Prop.translate(&inj.sig, &s)) || Prop.translate(&inj.sig, &s).size() > 2);
            }
        }
    }

    #[test]
    fn eqn_variables_follow_bijections() {
        use crate::termlang::tests::lang;
        let a = lang(&["x", "y"], &[("f", &["x"])]);
        let b = lang(&["u", "v"], &[("g", &["v"]), ("h", &["u", "v"])]);
        let m = TermLanguageMorphism::new(&a, &b, alloc::vec![1, 0], alloc::vec![0]).unwrap();
        let shape = FinGraph::new(2, alloc::vec![(0, 1)]).unwrap();
        let c = Eqn.signature_colimit(&shape, &names(&["A", "B"]), &[a.clone(), b.clone()], &[m.clone()]).unwrap();
        assert_eq!(c.signature.variables, names(&["x", "y"]));
        assert_eq!(c.symbols, names(&["f", "h"]));
        assert_eq!(c.signature.arity[0], Indicia::singleton(0));
        let cyc = FinGraph::new(2, alloc::vec![(0, 1), (0, 1)]).unwrap();
        let a2 = lang(&["x", "y"], &[]);
        let b2 = lang(&["u", "v"], &[]);
        let id = TermLanguageMorphism::new(&a2, &b2, alloc::vec![0, 1], Vec::new()).unwrap();
        let sw = TermLanguageMorphism::new(&a2, &b2, alloc::vec![1, 0], Vec::new()).unwrap();
        assert_eq!(
            Eqn.signature_colimit(&cyc, &names(&["A", "B"]), &[a2, b2], &[id, sw]).err(),
            Some(IntegrateError::IncompatibleVariables)
        );
    }
}
