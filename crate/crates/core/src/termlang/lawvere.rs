use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{enumerate_terms, term_arity, Indicia, Term, TermError, TermLanguage, TermLanguageMorphism, TermTuple};
use crate::cat::{FinCategory, FinFunctor, Grading};

const NONE: u32 = u32::MAX;

/// Objects are all indicia (object `k` is the mask `k`), morphisms are all
/// tuples of degree at most `depth`. A composite is materialized when the
/// degrees of its factors sum to at most `depth`; the remaining composable
/// pairs are boundary pairs.
#[derive(Clone, Debug)]
pub struct LawvereFragment {
    pub depth: u32,
    pub objects: Vec<Indicia>,
    pub morphisms: Vec<TermTuple>,
    pub category: FinCategory,
    pub boundary_pairs: u64,
    terms: Vec<Term>,
    term_ids: BTreeMap<Term, u32>,
    /// Position of each term among the terms over each object.
    position: Vec<Vec<u32>>,
    over: Vec<Vec<u32>>,
    offsets: Vec<Vec<usize>>,
}

impl LawvereFragment {
    pub fn morphism_index(&self, t: &TermTuple) -> Option<usize> {
        let (i, j) = (t.domain.0 as usize, t.index.0 as usize);
        if i >= self.objects.len() || j >= self.objects.len() || t.entries.len() != t.index.len() {
            return None;
        }
        let ids: Option<Vec<u32>> = t.entries.iter().map(|e| self.term_ids.get(e).copied()).collect();
        self.index_of_ids(i, j, &ids?)
    }

    fn index_of_ids(&self, i: usize, j: usize, ids: &[u32]) -> Option<usize> {
        let base = self.over[i].len();
        let mut acc = 0usize;
        for &id in ids {
            let p = self.position[i][id as usize];
            if p == NONE {
                return None;
            }
            acc = acc * base + p as usize;
        }
        Some(self.offsets[i][j] + acc)
    }

    /// Terms of depth at most the fragment depth over all variables.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

enum Node {
    Var(usize),
    App(usize, Vec<u32>),
}

pub fn lawvere_fragment(lang: &TermLanguage, depth: u32) -> Result<LawvereFragment, TermError> {
    let nv = lang.variables.len();
    if nv > 16 {
        return Err(TermError::TooManyVariables);
    }
    let nobj = 1usize << nv;
    let terms = enumerate_terms(lang, lang.all_vars(), depth);
    let term_ids: BTreeMap<Term, u32> = terms.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    let nodes: Vec<Node> = terms
        .iter()
        .map(|t| match t {
            Term::Var(v) => Node::Var(*v),
            Term::App(f, args) => Node::App(*f, args.iter().map(|a| term_ids[a]).collect()),
        })
        .collect();
    let apps: BTreeMap<(usize, Vec<u32>), u32> = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match n {
            Node::App(f, args) => Some(((*f, args.clone()), i as u32)),
            Node::Var(_) => None,
        })
        .collect();
    let depths: Vec<u32> = terms.iter().map(Term::depth).collect();
    let arities: Vec<Indicia> = terms.iter().map(term_arity).collect();
    let objects: Vec<Indicia> = (0..nobj as u64).map(Indicia).collect();
    let mut over = Vec::with_capacity(nobj);
    let mut position = Vec::with_capacity(nobj);
    for &i in &objects {
        let list: Vec<u32> = (0..terms.len() as u32).filter(|&t| arities[t as usize].is_subset(i)).collect();
        let mut pos = alloc::vec![NONE; terms.len()];
        for (p, &t) in list.iter().enumerate() {
            pos[t as usize] = p as u32;
        }
        over.push(list);
        position.push(pos);
    }

    let mut morphisms = Vec::new();
    let mut entry_ids: Vec<Vec<u32>> = Vec::new();
    let mut ends = Vec::new();
    let mut degrees = Vec::new();
    let mut offsets = alloc::vec![alloc::vec![0usize; nobj]; nobj];
    for i in 0..nobj {
        for j in 0..nobj {
            offsets[i][j] = morphisms.len();
            let k = objects[j].len();
            let base = over[i].len();
            if base == 0 && k > 0 {
                continue;
            }
            let mut pick = alloc::vec![0usize; k];
            loop {
                let ids: Vec<u32> = pick.iter().map(|&p| over[i][p]).collect();
                degrees.push(ids.iter().map(|&t| depths[t as usize]).max().unwrap_or(0));
                morphisms.push(TermTuple {
                    domain: objects[i],
                    index: objects[j],
                    entries: ids.iter().map(|&t| terms[t as usize].clone()).collect(),
                });
                entry_ids.push(ids);
                ends.push((i, j));
                let Some(q) = (0..k).rev().find(|&q| pick[q] + 1 < base) else { break };
                pick[q] += 1;
                pick[q + 1..].iter_mut().for_each(|p| *p = 0);
            }
        }
    }
    let identities: Vec<usize> = (0..nobj)
        .map(|i| {
            let ids: Vec<u32> = objects[i].iter().map(|v| term_ids[&Term::Var(v)]).collect();
            offsets[i][i] + ids.iter().fold(0, |acc, &t| acc * over[i].len() + position[i][t as usize] as usize)
        })
        .collect();

    // Morphisms into and out of each object.
    let mut into: Vec<Vec<usize>> = alloc::vec![Vec::new(); nobj];
    let mut out_of: Vec<Vec<usize>> = alloc::vec![Vec::new(); nobj];
    for (m, &(s, t)) in ends.iter().enumerate() {
        into[t].push(m);
        out_of[s].push(m);
    }
    for v in out_of.iter_mut() {
        v.sort_by_key(|&m| degrees[m]);
    }

    let mut comp = BTreeMap::new();
    let mut boundary = 0u64;
    let mut cache = alloc::vec![NONE; terms.len()];
    let mut sigma = alloc::vec![NONE; nv];
    for j in 0..nobj {
        for &f in &into[j] {
            let i = ends[f].0;
            sigma.iter_mut().for_each(|s| *s = NONE);
            for (v, &t) in objects[j].iter().zip(&entry_ids[f]) {
                sigma[v] = t;
            }
            cache.iter_mut().for_each(|c| *c = NONE);
            let outs = &out_of[j];
            let within = outs.partition_point(|&g| degrees[f] + degrees[g] <= depth);
            boundary += (outs.len() - within) as u64;
            for &g in &outs[..within] {
                let k = ends[g].1;
                let ids: Vec<u32> = entry_ids[g].iter().map(|&t| subst_id(t, &sigma, &nodes, &apps, &mut cache)).collect();
                let base = over[i].len();
                let h = offsets[i][k] + ids.iter().fold(0, |acc, &t| acc * base + position[i][t as usize] as usize);
                comp.insert((g, f), h);
            }
        }
    }

    let category = FinCategory {
        objects: nobj,
        morphisms: ends,
        identities,
        comp,
        grading: Some(Grading { degrees, bound: depth }),
    };
    Ok(LawvereFragment {
        depth,
        objects,
        morphisms,
        category,
        boundary_pairs: boundary,
        terms,
        term_ids,
        position,
        over,
        offsets,
    })
}

fn subst_id(t: u32, sigma: &[u32], nodes: &[Node], apps: &BTreeMap<(usize, Vec<u32>), u32>, cache: &mut [u32]) -> u32 {
    if cache[t as usize] != NONE {
        return cache[t as usize];
    }
    let r = match &nodes[t as usize] {
        Node::Var(v) => sigma[*v],
        Node::App(f, args) => {
            let new_args: Vec<u32> = args.iter().map(|&a| subst_id(a, sigma, nodes, apps, cache)).collect();
            *apps.get(&(*f, new_args)).expect("composite within the materialized depth")
        }
    };
    cache[t as usize] = r;
    r
}

/// `law(m)` restricted to materialized fragments of equal depth.
pub fn lawvere_functor<'a>(
    m: &TermLanguageMorphism,
    source: &'a LawvereFragment,
    target: &'a LawvereFragment,
) -> Option<FinFunctor<'a>> {
    let on_objects = source.objects.iter().map(|&i| m.map_indicia(i).0 as usize).collect();
    let on_morphisms: Option<Vec<usize>> =
        source.morphisms.iter().map(|t| target.morphism_index(&super::apply_morphism_tuple(m, t))).collect();
    Some(FinFunctor { source: &source.category, target: &target.category, on_objects, on_morphisms: on_morphisms? })
}
