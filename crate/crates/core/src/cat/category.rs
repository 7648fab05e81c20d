use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{CatError, FinMap};

/// Degrees of morphisms and the bound below which composites are
/// materialized. Pairs whose degrees sum past the bound may be absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<u32>,
    pub bound: u32,
}

/// A category with an explicit composition table keyed `(g, f) ↦ g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: usize,
    /// `(source, target)` of each morphism.
    pub morphisms: Vec<(usize, usize)>,
    pub identities: Vec<usize>,
    pub comp: BTreeMap<(usize, usize), usize>,
    pub grading: Option<Grading>,
}

impl FinCategory {
    /// The category with one object and only its identity.
    pub fn terminal() -> Self {
        let mut comp = BTreeMap::new();
        comp.insert((0, 0), 0);
        FinCategory { objects: 1, morphisms: alloc::vec![(0, 0)], identities: alloc::vec![0], comp, grading: None }
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].0
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].1
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn degree(&self, m: usize) -> u32 {
        self.grading.as_ref().map_or(0, |gr| gr.degrees[m])
    }

    fn within_bound(&self, total: u32) -> bool {
        self.grading.as_ref().is_none_or(|gr| total <= gr.bound)
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m] == (a, b)).collect()
    }

    /// Morphisms out of each object, in order of increasing degree.
    pub fn out_of(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.objects];
        for (m, &(s, _)) in self.morphisms.iter().enumerate() {
            out[s].push(m);
        }
        for v in &mut out {
            v.sort_by_key(|&m| (self.degree(m), m));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    BadMorphism { morphism: usize },
    IdentityEndpoints { object: usize },
    UnexpectedComposite { g: usize, f: usize },
    MissingComposite { g: usize, f: usize },
    CompositeEndpoints { g: usize, f: usize, composite: usize },
    LeftIdentity { f: usize },
    RightIdentity { f: usize },
    Associativity { h: usize, g: usize, f: usize },
    DegreeOutOfBound { morphism: usize },
}

/// Violations found by [`check_category_laws`]; at most
/// [`LawReport::KEEP`] are stored, `count` is the full tally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
    pub count: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
}

impl LawReport {
    pub const KEEP: usize = 256;

    pub fn is_lawful(&self) -> bool {
        self.count == 0
    }

    fn push(&mut self, v: LawViolation) {
        if self.violations.len() < Self::KEEP {
            self.violations.push(v);
        }
        self.count += 1;
    }
}

/// Identity and associativity laws, on every composable pair and triple that
/// lies within the grading bound.
pub fn check_category_laws(c: &FinCategory) -> LawReport {
    let mut r = LawReport::default();
    let n = c.morphisms.len();
    for (m, &(s, t)) in c.morphisms.iter().enumerate() {
        if s >= c.objects || t >= c.objects {
            r.push(LawViolation::BadMorphism { morphism: m });
        }
    }
    if r.count > 0 || c.identities.len() != c.objects {
        if c.identities.len() != c.objects {
            r.push(LawViolation::IdentityEndpoints { object: c.identities.len().min(c.objects) });
        }
        return r;
    }
    if let Some(gr) = &c.grading {
        for m in 0..n {
            if gr.degrees.get(m).is_none_or(|&d| d > gr.bound) {
                r.push(LawViolation::DegreeOutOfBound { morphism: m });
            }
        }
        if r.count > 0 {
            return r;
        }
    }
    for (o, &id) in c.identities.iter().enumerate() {
        if id >= n || c.morphisms[id] != (o, o) || c.degree(id) != 0 {
            r.push(LawViolation::IdentityEndpoints { object: o });
        }
    }
    for (&(g, f), &h) in &c.comp {
        if g >= n || f >= n || h >= n {
            r.push(LawViolation::UnexpectedComposite { g, f });
            continue;
        }
        if c.source(g) != c.target(f) {
            r.push(LawViolation::UnexpectedComposite { g, f });
        } else if c.morphisms[h] != (c.source(f), c.target(g)) {
            r.push(LawViolation::CompositeEndpoints { g, f, composite: h });
        }
    }
    if r.count > 0 {
        return r;
    }
    let out = c.out_of();
    for f in 0..n {
        let (a, b) = c.morphisms[f];
        if c.compose(f, c.identities[a]) != Some(f) {
            r.push(LawViolation::RightIdentity { f });
        }
        if c.compose(c.identities[b], f) != Some(f) {
            r.push(LawViolation::LeftIdentity { f });
        }
        let df = c.degree(f);
        for &g in &out[b] {
            let dg = c.degree(g);
            if !c.within_bound(df + dg) {
                break;
            }
            r.pairs_checked += 1;
            let Some(gf) = c.compose(g, f) else {
                r.push(LawViolation::MissingComposite { g, f });
                continue;
            };
            for &h in &out[c.target(g)] {
                if !c.within_bound(df + dg + c.degree(h)) {
                    break;
                }
                r.triples_checked += 1;
                let left = c.compose(h, gf);
                let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                if left.is_none() || left != right {
                    r.push(LawViolation::Associativity { h, g, f });
                }
            }
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

/// Cancellation properties by exhaustive search over parallel pairs.
pub fn classify_morphism(c: &FinCategory, m: usize) -> Result<MorphismClass, CatError> {
    if m >= c.morphisms.len() {
        return Err(CatError::UnknownMorphism(m));
    }
    let (a, b) = c.morphisms[m];
    let injective = |images: Vec<Option<usize>>| {
        let defined: Vec<usize> = images.into_iter().flatten().collect();
        let mut sorted = defined.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == defined.len()
    };
    let mono = (0..c.objects).all(|x| injective(c.hom(x, a).into_iter().map(|u| c.compose(m, u)).collect()));
    let epi = (0..c.objects).all(|y| injective(c.hom(b, y).into_iter().map(|u| c.compose(u, m)).collect()));
    let iso = c
        .hom(b, a)
        .into_iter()
        .any(|n| c.compose(n, m) == Some(c.identities[a]) && c.compose(m, n) == Some(c.identities[b]));
    Ok(MorphismClass { mono, epi, iso })
}

/// A category whose objects are finite sets and whose morphisms are
/// functions, closed under composition.
#[derive(Clone, Debug)]
pub struct ConcreteCategory {
    pub category: FinCategory,
    pub sets: Vec<usize>,
    pub maps: Vec<FinMap>,
    index: BTreeMap<(usize, usize, Vec<usize>), usize>,
}

impl ConcreteCategory {
    /// All functions between the sets `0..=max`.
    pub fn finite_sets(max: usize) -> Self {
        let sets: Vec<usize> = (0..=max).collect();
        let mut gens = Vec::new();
        for a in 0..=max {
            for b in 0..=max {
                gens.extend(FinMap::all(a, b).map(|f| (a, b, f)));
            }
        }
        Self::generated(sets, gens).expect("maps between listed sets")
    }

    /// Close the given maps between the listed objects under composition.
    pub fn generated(sets: Vec<usize>, gens: Vec<(usize, usize, FinMap)>) -> Result<Self, CatError> {
        type Entry = (usize, usize, FinMap);
        fn add(index: &mut BTreeMap<(usize, usize, Vec<usize>), usize>, maps: &mut Vec<Entry>, s: usize, t: usize, f: FinMap) {
            index.entry((s, t, f.images.clone())).or_insert_with(|| {
                maps.push((s, t, f));
                maps.len() - 1
            });
        }
        let mut maps: Vec<Entry> = Vec::new();
        let mut index = BTreeMap::new();
        for (o, &n) in sets.iter().enumerate() {
            add(&mut index, &mut maps, o, o, FinMap::identity(n));
        }
        for (s, t, f) in gens {
            if s >= sets.len() || t >= sets.len() {
                return Err(CatError::UnknownObject(s.max(t)));
            }
            if f.source != sets[s] || f.target != sets[t] {
                return Err(CatError::BadMap);
            }
            add(&mut index, &mut maps, s, t, f);
        }
        let mut done = 0;
        loop {
            let len = maps.len();
            let mut fresh = Vec::new();
            for i in 0..len {
                for j in 0..len {
                    if i < done && j < done {
                        continue;
                    }
                    let (fs, ft, f) = &maps[i];
                    let (gs, gt, g) = &maps[j];
                    if ft == gs {
                        fresh.push((*fs, *gt, f.then(g).expect("endpoints match")));
                    }
                }
            }
            done = len;
            for (s, t, h) in fresh {
                add(&mut index, &mut maps, s, t, h);
            }
            if maps.len() == len {
                break;
            }
        }
        let mut comp = BTreeMap::new();
        for (fi, (fs, ft, f)) in maps.iter().enumerate() {
            for (gi, (gs, gt, g)) in maps.iter().enumerate() {
                if ft == gs {
                    let h = f.then(g).expect("endpoints match");
                    comp.insert((gi, fi), index[&(*fs, *gt, h.images)]);
                }
            }
        }
        let identities = (0..sets.len()).collect();
        let category = FinCategory {
            objects: sets.len(),
            morphisms: maps.iter().map(|(s, t, _)| (*s, *t)).collect(),
            identities,
            comp,
            grading: None,
        };
        Ok(ConcreteCategory { category, sets, maps: maps.into_iter().map(|(_, _, f)| f).collect(), index })
    }

    pub fn morphism(&self, source: usize, target: usize, images: &[usize]) -> Option<usize> {
        self.index.get(&(source, target, images.to_vec())).copied()
    }
}
