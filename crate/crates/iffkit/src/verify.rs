//! Bounded verification suites. Every check is deterministic for a fixed
//! [`Config`]; random cases come from a seeded ChaCha stream.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iffkit_core::cat::{check_category_laws, colimit, limit, verify_universal_property, ConeKind, Diagram, FinGraph, FinMap};
use iffkit_core::ifca::{concepts, Classification};
use iffkit_core::institution::{
    check_satisfaction_condition, lattice_of_theories, truth_lattice, Eqn, Institution, Prop, PropMorphism, PropSignature, TinyFol,
};
use iffkit_core::integrate::{fuse, verify_fusion_universal};
use iffkit_core::metalang::{lint_categorical_design, parse_sentence, parse_sentences, print_canonical, validate, MetaSentence};
use iffkit_core::metastack::{
    is_abridgment, is_restriction, is_subobject, specialize_function, specialize_relation, specialize_set, LeveledFunction,
    LeveledRelation, LeveledSet,
};
use iffkit_core::registry::{Metalevel, Registry};
use iffkit_core::termlang::{
    apply_morphism, check_term_monad_laws, enumerate_morphisms, enumerate_terms, lawvere_fragment, lawvere_functor, pullback_fol,
    ExpressionLanguage, Indicia, TermLanguage, TermLanguageMorphism,
};

use crate::corpus;
use crate::formats::alignment::{parse_alignment, Alignment};
use crate::formats::context::parse_context;
use crate::formats::diagram::parse_diagram;
use crate::formats::language::parse_language;
use crate::formats::leveled::{fundamental_relations, parse_leveled};
use crate::formats::theory::show_sentence;
use crate::formats::vocab::load_vocab;
use crate::formats::FormatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Sentence depth for closures and lattices.
    pub depth: u32,
    /// Largest carrier for bounded model enumeration.
    pub model_bound: usize,
    /// Largest cocone apex tried by universal-property checks.
    pub cocone_bound: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { depth: 2, model_bound: 3, cocone_bound: 4, seed: 0x1ff }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Summary of pass or the first few failures.
fn report(passed_detail: String, failures: &[String]) -> Outcome {
    if failures.is_empty() {
        return outcome(true, passed_detail);
    }
    let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
    outcome(false, format!("{} failure(s): {}", failures.len(), shown.join("; ")))
}

fn rng(cfg: &Config, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub run: fn(&Config) -> Outcome,
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "corpus round trip", run: corpus_round_trip },
    Criterion { number: 2, title: "ur vocabulary counts", run: ur_counts },
    Criterion { number: 3, title: "categorical design lint", run: lint_tables },
    Criterion { number: 4, title: "leveled specialization", run: leveled_specialization },
    Criterion { number: 5, title: "limits and colimits", run: random_diagrams },
    Criterion { number: 6, title: "term languages", run: term_languages },
    Criterion { number: 7, title: "next closure", run: next_closure },
    Criterion { number: 8, title: "satisfaction condition", run: satisfaction },
    Criterion { number: 9, title: "lattice of theories", run: theory_lattice },
    Criterion { number: 10, title: "span fusion", run: span_fusion },
];

pub struct Check {
    pub label: &'static str,
    pub run: fn(&Config) -> Outcome,
}

pub struct Suite {
    pub name: &'static str,
    pub checks: &'static [Check],
}

pub const SUITES: [Suite; 8] = [
    Suite {
        name: "cat-engine",
        checks: &[Check { label: "random diagrams", run: random_diagrams }, Check { label: "pushout.dgm", run: pushout_file }],
    },
    Suite { name: "ifca", checks: &[Check { label: "next closure", run: next_closure }] },
    Suite {
        name: "institution",
        checks: &[Check { label: "satisfaction condition", run: satisfaction }, Check { label: "lattice of theories", run: theory_lattice }],
    },
    Suite { name: "integrate", checks: &[Check { label: "span fusion", run: span_fusion }] },
    Suite {
        name: "metalang",
        checks: &[Check { label: "corpus round trip", run: corpus_round_trip }, Check { label: "lint", run: lint_tables }],
    },
    Suite {
        name: "metastack",
        checks: &[Check { label: "specialization", run: leveled_specialization }, Check { label: "levels.lvl", run: levels_file }],
    },
    Suite {
        name: "registry",
        checks: &[Check { label: "ur vocabulary", run: ur_counts }, Check { label: "corpus prefixes", run: corpus_prefixes }],
    },
    Suite {
        name: "termlang",
        checks: &[Check { label: "term languages", run: term_languages }, Check { label: "monoid.lang", run: monoid_file }],
    },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<(&'static str, Outcome)>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, o)| o.passed)
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Run `suites` concurrently; results come back sorted by name.
pub fn run_suites(suites: &[&'static Suite], cfg: &Config) -> Vec<SuiteResult> {
    let mut results: Vec<SuiteResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|s| {
                scope.spawn(move || SuiteResult { name: s.name, checks: s.checks.iter().map(|c| (c.label, (c.run)(cfg))).collect() })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    results.sort_by_key(|r| r.name);
    results
}

pub fn print_results(results: &[SuiteResult]) -> String {
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{} {}", status(r.passed()), r.name);
        for (label, o) in &r.checks {
            let _ = writeln!(out, "  {} {label}: {}", status(o.passed), o.detail);
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} suites, {failed} failed", results.len());
    out
}

pub const TABLES: [&str; 4] = ["tables1.iff", "table2.iff", "table5.iff", "table7.iff"];

fn corpus_sentences(name: &str) -> Result<Vec<MetaSentence>, FormatError> {
    Ok(parse_sentences(&corpus::text(name)?, Some(name.into()))?)
}

fn corpus_round_trip(_: &Config) -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for file in TABLES {
        let sentences = match corpus_sentences(file) {
            Ok(s) => s,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        for s in sentences {
            total += 1;
            let printed = print_canonical(&s);
            match parse_sentence(&printed) {
                Ok(back) if back == s && print_canonical(&back) == printed => {}
                Ok(_) => failures.push(format!("{}: reprint differs", s.span)),
                Err(e) => failures.push(format!("{}: {e}", s.span)),
            }
            if !validate(&s).is_empty() {
                failures.push(format!("{}: not a closed restricted sentence", s.span));
            }
        }
    }
    report(format!("{} files, {total} sentences are fixed points of parse and print", TABLES.len()), &failures)
}

fn ur_counts(_: &Config) -> Outcome {
    let mut reg = Registry::new();
    let loaded = corpus::text("ur.vocab").and_then(|t| load_vocab(&mut reg, &t, "ur.vocab"));
    if let Err(e) = loaded {
        return outcome(false, e.to_string());
    }
    let counts = |r: &Registry| r.resolve("ur").and_then(|res| r.vocabulary_report(res.namespace));
    match (counts(&reg), counts(&Registry::iff_ur())) {
        (Ok(c), Ok(built_in)) => {
            let expected = (6, 16, 8, 30);
            let ok = (c.sets, c.functions, c.relations, c.total) == expected && c == built_in;
            outcome(ok, format!("sets {}, functions {}, relations {}, total {}", c.sets, c.functions, c.relations, c.total))
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

fn lint_tables(_: &Config) -> Outcome {
    let (t2, t7) = match (corpus_sentences("table2.iff"), corpus_sentences("table7.iff")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
    };
    let (r2, r7) = (lint_categorical_design(&t2), lint_categorical_design(&t7));
    let ok = r2.total() > 0 && r2.compliant_count() == r2.total() && r7.total() > 0 && r7.compliant_count() == 0;
    outcome(
        ok,
        format!(
            "table 2 {}/{} compliant, table 7 {}/{} compliant",
            r2.compliant_count(),
            r2.total(),
            r7.compliant_count(),
            r7.total()
        ),
    )
}

fn element(i: usize) -> String {
    format!("e{i}")
}

fn chosen(set: &LeveledSet, rng: &mut ChaCha8Rng) -> BTreeSet<String> {
    set.elements.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// One random leveled data set: its specializations must pass every
/// fundamental relation, and each single-element mutation must fail one.
fn leveled_case(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let level = Metalevel::new(rng.gen_range(2..=4)).expect("valid level");
    let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let err = |e: iffkit_core::metastack::MetastackError| e.to_string();
    let src = LeveledSet::new(level, (0..a).map(element)).map_err(err)?;
    let tgt = LeveledSet::new(level, (a..a + b).map(element)).map_err(err)?;
    let images: Vec<(String, String)> = (0..a).map(|x| (element(x), element(a + rng.gen_range(0..b)))).collect();
    let f = LeveledFunction::new(src.clone(), tgt.clone(), images).map_err(err)?;
    let pairs: Vec<(String, String)> =
        (0..a).flat_map(|x| (0..b).map(move |y| (element(x), element(a + y)))).filter(|_| rng.gen_bool(0.5)).collect();
    let r = LeveledRelation::new(src.clone(), tgt.clone(), pairs).map_err(err)?;

    let s = chosen(&src, rng);
    let mut t = chosen(&tgt, rng);
    t.extend(s.iter().map(|x| f.map[x].clone()));
    let low_set = specialize_set(&src, &s).map_err(err)?;
    let low_f = specialize_function(&f, &s, &t).map_err(err)?;
    let low_r = specialize_relation(&r, &s, &t).map_err(err)?;
    if !(is_subobject(&low_set, &src).map_err(err)?) {
        return Err("specialized set is not a subobject".into());
    }
    if !(is_restriction(&low_f, &f).map_err(err)?) {
        return Err("specialized function is not a restriction".into());
    }
    if !(is_abridgment(&low_r, &r).map_err(err)?) {
        return Err("specialized relation is not an abridgment".into());
    }

    let mut mutations = 0;
    let mut stray_set = low_set.clone();
    stray_set.elements.insert("stray".into());
    if is_subobject(&stray_set, &src).map_err(err)? {
        return Err("a foreign element kept the subobject relation".into());
    }
    mutations += 1;
    if let Some(x) = s.iter().next() {
        if let Some(other) = t.iter().find(|y| **y != f.map[x]) {
            let mut bad = low_f.clone();
            bad.map.insert(x.clone(), other.clone());
            if is_restriction(&bad, &f).map_err(err)? {
                return Err("a redirected image kept the restriction relation".into());
            }
            mutations += 1;
        }
    }
    if let Some(p) = low_r.extent.iter().next().cloned() {
        let mut fewer = low_r.clone();
        fewer.extent.remove(&p);
        if is_abridgment(&fewer, &r).map_err(err)? {
            return Err("a dropped pair kept the abridgment relation".into());
        }
        mutations += 1;
    }
    let missing = s.iter().flat_map(|x| t.iter().map(move |y| (x.clone(), y.clone()))).find(|p| !low_r.extent.contains(p));
    if let Some(p) = missing {
        let mut more = low_r.clone();
        more.extent.insert(p);
        if is_abridgment(&more, &r).map_err(err)? {
            return Err("an added pair kept the abridgment relation".into());
        }
        mutations += 1;
    }
    Ok(mutations)
}

fn leveled_specialization(cfg: &Config) -> Outcome {
    let mut rng = rng(cfg, 4);
    let mut mutations = 0;
    let mut failures = Vec::new();
    for case in 0..200 {
        match leveled_case(&mut rng) {
            Ok(m) => mutations += m,
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    report(format!("200 data sets specialize and check; {mutations} mutations rejected"), &failures)
}

fn levels_file(_: &Config) -> Outcome {
    let data = match corpus::text("levels.lvl").and_then(|t| parse_leveled(&t, Some("levels.lvl"))) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let rels = fundamental_relations(&data);
    let expected = [
        "(subobject objects0 objects)",
        "(subobject kinds0 kinds)",
        "(restriction kind0 kind)",
        "(abridgment member0 member)",
    ];
    outcome(rels == expected, rels.join(" "))
}

fn random_diagram(rng: &mut ChaCha8Rng) -> Diagram {
    let n = rng.gen_range(1..=4);
    let sets: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    let mut edges = Vec::new();
    let mut maps = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if sets[t] == 0 && sets[s] > 0 {
            continue;
        }
        let images = (0..sets[s]).map(|_| rng.gen_range(0..sets[t])).collect();
        edges.push((s, t));
        maps.push(FinMap::new(sets[s], sets[t], images).expect("images in range"));
    }
    Diagram::new(FinGraph::new(n, edges).expect("endpoints in range"), sets, maps).expect("maps match the carriers")
}

/// Classes of the disjoint union under the edge maps.
fn union_find_classes(d: &Diagram) -> usize {
    let mut offset = vec![0];
    for &n in &d.sets {
        offset.push(offset.last().unwrap() + n);
    }
    let total = *offset.last().unwrap();
    let mut uf = UnionFind::<usize>::new(total);
    for (&(s, t), m) in d.shape.edges.iter().zip(&d.maps) {
        for x in 0..m.source {
            uf.union(offset[s] + x, offset[t] + m.apply(x));
        }
    }
    (0..total).map(|x| uf.find(x)).collect::<BTreeSet<_>>().len()
}

/// Compatible families, counted by enumerating the product.
fn families(d: &Diagram) -> usize {
    let total: usize = d.sets.iter().product();
    (0..total)
        .filter(|&code| {
            let mut rest = code;
            let family: Vec<usize> = d
                .sets
                .iter()
                .map(|&n| {
                    let v = rest % n;
                    rest /= n;
                    v
                })
                .collect();
            d.shape.edges.iter().zip(&d.maps).all(|(&(s, t), m)| m.apply(family[s]) == family[t])
        })
        .count()
}

fn random_diagrams(cfg: &Config) -> Outcome {
    let mut rng = rng(cfg, 5);
    let mut failures = Vec::new();
    for case in 0..500 {
        let d = random_diagram(&mut rng);
        let c = colimit(&d);
        let l = limit(&d);
        if c.apex != union_find_classes(&d) {
            failures.push(format!("case {case}: colimit has {} classes, union-find {}", c.apex, union_find_classes(&d)));
        }
        if l.apex != families(&d) {
            failures.push(format!("case {case}: limit has {} elements, enumeration {}", l.apex, families(&d)));
        }
        for (kind, apex, legs) in [(ConeKind::Colimit, c.apex, &c.legs), (ConeKind::Limit, l.apex, &l.legs)] {
            if verify_universal_property(&d, apex, legs, kind, cfg.cocone_bound) != Ok(true) {
                failures.push(format!("case {case}: {kind:?} is not universal"));
            }
        }
    }
    report(format!("500 diagrams; universal at bound {}; class counts match union-find", cfg.cocone_bound), &failures)
}

fn pushout_file(cfg: &Config) -> Outcome {
    let d = match corpus::text("pushout.dgm").and_then(|t| parse_diagram(&t, Some("pushout.dgm"))) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let c = colimit(&d.diagram);
    let universal = verify_universal_property(&d.diagram, c.apex, &c.legs, ConeKind::Colimit, cfg.cocone_bound) == Ok(true);
    outcome(universal && c.apex == union_find_classes(&d.diagram), format!("pushout has {} classes", c.apex))
}

/// Every language with at most two variables and two symbols; symbols are
/// ordered, so `[f0, f1]` and `[f1, f0]` with different arities differ.
pub fn small_term_languages(prefix: &str) -> Vec<TermLanguage> {
    let mut out = Vec::new();
    for nv in 0..=2usize {
        let masks = 1u64 << nv;
        for ns in 0..=2u32 {
            for code in 0..masks.pow(ns) {
                let arity: Vec<Indicia> = (0..ns).map(|i| Indicia(code / masks.pow(i) % masks)).collect();
                let vars = (0..nv).map(|i| format!("{prefix}x{i}")).collect();
                let syms = (0..ns).map(|i| format!("{prefix}f{i}")).collect();
                out.push(TermLanguage::from_indicia(vars, syms, arity).expect("distinct names"));
            }
        }
    }
    out
}

fn injective(m: &TermLanguageMorphism) -> bool {
    m.var_map.iter().collect::<BTreeSet<_>>().len() == m.var_map.len()
}

fn term_languages(cfg: &Config) -> Outcome {
    let depth = 2;
    let langs = small_term_languages("");
    let mut failures = Vec::new();
    if langs.len() != 31 {
        failures.push(format!("{} languages, expected 31", langs.len()));
    }
    let mut fragments = Vec::new();
    for (i, l) in langs.iter().enumerate() {
        match lawvere_fragment(l, depth) {
            Ok(f) => {
                let laws = check_category_laws(&f.category);
                if !laws.is_lawful() {
                    failures.push(format!("language {i}: category laws fail: {:?}", laws.violations.first()));
                }
                fragments.push(f);
            }
            Err(e) => return outcome(false, format!("language {i}: {e}")),
        }
        if !check_term_monad_laws(l, depth).is_lawful() {
            failures.push(format!("language {i}: monad laws fail"));
        }
    }
    let homs: Vec<Vec<Vec<TermLanguageMorphism>>> = langs.iter().map(|a| langs.iter().map(|b| enumerate_morphisms(a, b)).collect()).collect();
    let mut rng = rng(cfg, 6);
    let mut sampled = 0;
    while sampled < 100 {
        let a = rng.gen_range(0..langs.len());
        let targets: Vec<usize> = (0..langs.len()).filter(|&b| !homs[a][b].is_empty()).collect();
        let b = targets[rng.gen_range(0..targets.len())];
        let c = rng.gen_range(0..langs.len());
        if homs[b][c].is_empty() {
            continue;
        }
        sampled += 1;
        let f = &homs[a][b][rng.gen_range(0..homs[a][b].len())];
        let g = &homs[b][c][rng.gen_range(0..homs[b][c].len())];
        let fg = match f.then(g) {
            Ok(fg) => fg,
            Err(e) => {
                failures.push(format!("morphism {a}->{b}->{c}: {e}"));
                continue;
            }
        };
        let id = TermLanguageMorphism::identity(&langs[a]);
        for t in enumerate_terms(&langs[a], langs[a].all_vars(), depth) {
            if apply_morphism(&fg, &t) != apply_morphism(g, &apply_morphism(f, &t)) || apply_morphism(&id, &t) != t {
                failures.push(format!("morphism {a}->{b}->{c}: not functorial on a term"));
                break;
            }
        }
        if injective(f) && !lawvere_functor(f, &fragments[a], &fragments[b]).is_some_and(|law| law.is_functor()) {
            failures.push(format!("morphism {a}->{b}: induced Lawvere map is not a functor"));
        }
    }
    report(format!("{} languages at depth {depth}: category and monad laws hold; 100 morphisms act functorially", langs.len()), &failures)
}

fn monoid_file(_: &Config) -> Outcome {
    match corpus::text("monoid.lang").and_then(|t| parse_language(&t, Some("monoid.lang"))) {
        Ok(f) => {
            let ok = f.language.variables.len() == 2 && f.language.symbols.len() == 2 && f.equations.len() == 1;
            let frag = lawvere_fragment(&f.language, 1);
            let lawful = frag.as_ref().is_ok_and(|fr| check_category_laws(&fr.category).is_lawful());
            outcome(ok && lawful, format!("{} symbols, {} equation, depth-1 fragment lawful", f.language.symbols.len(), f.equations.len()))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn random_context(rng: &mut ChaCha8Rng) -> Classification {
    let (g, m) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let mut c = Classification::new((0..g).map(|i| format!("g{i}")).collect(), (0..m).map(|j| format!("m{j}")).collect());
    for i in 0..g {
        for j in 0..m {
            c.set(i, j, rng.gen_bool(0.5));
        }
    }
    c
}

/// Every (extent, intent) pair, by closing each token subset with the
/// incidence table directly.
fn brute_force_concepts(c: &Classification) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let (g, m) = (c.token_count(), c.type_count());
    (0..1u32 << g)
        .map(|mask| {
            let intent: Vec<usize> = (0..m).filter(|&j| (0..g).all(|i| mask >> i & 1 == 0 || c.holds(i, j))).collect();
            let extent: Vec<usize> = (0..g).filter(|&i| intent.iter().all(|&j| c.holds(i, j))).collect();
            (extent, intent)
        })
        .collect()
}

fn concept_pairs(c: &Classification) -> Vec<(Vec<usize>, Vec<usize>)> {
    concepts(c).concepts.iter().map(|k| (k.extent.ones().collect(), k.intent.ones().collect())).collect()
}

fn next_closure(cfg: &Config) -> Outcome {
    let mut rng = rng(cfg, 7);
    let mut failures = Vec::new();
    let check = |label: String, c: &Classification, failures: &mut Vec<String>| {
        let found = concept_pairs(c);
        let unique: BTreeSet<_> = found.iter().cloned().collect();
        if unique.len() != found.len() || unique != brute_force_concepts(c) {
            failures.push(format!("{label}: {} concepts, brute force {}", found.len(), brute_force_concepts(c).len()));
        }
        found.len()
    };
    for case in 0..200 {
        check(format!("context {case}"), &random_context(&mut rng), &mut failures);
    }
    let mut named = Vec::new();
    for (file, expected) in [("diamond.ctx", 4), ("chain.ctx", 2)] {
        match corpus::text(file).and_then(|t| parse_context(&t, Some(file))) {
            Ok(ctx) => {
                let n = check(file.to_string(), &ctx.classification, &mut failures);
                if n != expected {
                    failures.push(format!("{file}: {n} concepts, expected {expected}"));
                }
                named.push(format!("{file} {n}"));
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    report(format!("200 random contexts match brute force; {}", named.join(", ")), &failures)
}

fn prop_signature(n: usize) -> PropSignature {
    PropSignature::new((0..n).map(|i| format!("a{i}")))
}

/// Every morphism between every ordered pair of signatures; returns the
/// morphism and sentence counts.
fn satisfaction_family<I: Institution>(
    inst: &I,
    sigs: &[I::Signature],
    morphisms: impl Fn(&I::Signature, &I::Signature) -> Vec<I::Morphism>,
    depth: u32,
    bound: usize,
    failures: &mut Vec<String>,
) -> (usize, usize) {
    let (mut ms, mut sentences) = (0, 0);
    for (i, a) in sigs.iter().enumerate() {
        for (j, b) in sigs.iter().enumerate() {
            for m in morphisms(a, b) {
                let r = check_satisfaction_condition(inst, &m, depth, bound);
                ms += 1;
                sentences += r.sentences_checked;
                if !r.holds() {
                    failures.push(format!("{} {i}->{j}: {} sentence(s) break the condition", inst.name(), r.violations.len()));
                }
            }
        }
    }
    (ms, sentences)
}

/// Every first-order language with at most two variables, two function
/// symbols and two relation symbols.
pub fn small_fol_languages() -> Vec<iffkit_core::termlang::FolLanguage> {
    let mut out = Vec::new();
    for t in small_term_languages("") {
        let nv = t.variables.len();
        let masks = 1u64 << nv;
        for nr in 0..=2u32 {
            for code in 0..masks.pow(nr) {
                let rels = (0..nr)
                    .map(|i| {
                        let m = Indicia(code / masks.pow(i) % masks);
                        (format!("r{i}"), m.iter().map(|v| t.variables[v].clone()).collect())
                    })
                    .collect();
                let e = ExpressionLanguage::new(t.variables.clone(), rels).expect("distinct names");
                out.push(pullback_fol(&e, &t, &(0..nv).collect::<Vec<_>>()).expect("identity bijection"));
            }
        }
    }
    out
}

fn satisfaction(cfg: &Config) -> Outcome {
    let mut failures = Vec::new();
    let sigs: Vec<PropSignature> = (0..=3).map(prop_signature).collect();
    let prop_maps = |a: &PropSignature, b: &PropSignature| -> Vec<PropMorphism> {
        let (n, k) = (a.atoms.len(), b.atoms.len());
        if k == 0 && n > 0 {
            return Vec::new();
        }
        let count = k.max(1).pow(n as u32);
        (0..count).map(|code| PropMorphism::new(a, b, (0..n).map(|i| code / k.pow(i as u32) % k).collect()).expect("in range")).collect()
    };
    let prop = satisfaction_family(&Prop, &sigs, prop_maps, 3, 0, &mut failures);
    let eqn_sigs = small_term_languages("");
    let eqn = satisfaction_family(&Eqn, &eqn_sigs, enumerate_morphisms, 1, cfg.model_bound, &mut failures);
    let fol_sigs = small_fol_languages();
    let fol = satisfaction_family(&TinyFol, &fol_sigs, |a, b| TinyFol.morphisms(a, b), 1, 2, &mut failures);
    report(
        format!(
            "prop {} morphisms ({} sentences); eqn {} morphisms, models up to {}; fol {} morphisms, structures up to 2",
            prop.0, prop.1, eqn.0, cfg.model_bound, fol.0
        ),
        &failures,
    )
}

fn theory_lattice(cfg: &Config) -> Outcome {
    let sig = PropSignature::new(["p", "q"]);
    let lattice = match lattice_of_theories(&sig, cfg.depth) {
        Ok(l) => l,
        Err(e) => return outcome(false, e.to_string()),
    };
    let laws = lattice.check_laws();
    let (_, truth) = truth_lattice(&Prop, &sig, cfg.depth, 0);
    let anti = lattice.anti_isomorphic_to(&truth);
    let ok = lattice.len() == 16 && laws.holds() && anti;
    outcome(
        ok,
        format!(
            "{} closed theories over (p q) at depth {}; laws {}; anti-isomorphic to the {}-concept truth lattice: {anti}",
            lattice.len(),
            cfg.depth,
            if laws.holds() { "hold" } else { "fail" },
            truth.len()
        ),
    )
}

pub fn load_alignment(name: &str) -> Result<Alignment, FormatError> {
    let text = corpus::text(name)?;
    parse_alignment(&text, Some(name), &|path| Ok((corpus::text(path)?, path.to_string())))
}

fn merge_output() -> Vec<u8> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = crate::cli::run(["iffkit", "merge", "span.align"], &mut out, &mut err);
    out.extend(format!("exit {code}").bytes());
    out
}

fn span_fusion(cfg: &Config) -> Outcome {
    let d = match load_alignment("span.align") {
        Ok(Alignment::Prop(d)) => d,
        Ok(other) => return outcome(false, format!("span.align is a {} alignment", other.institution())),
        Err(e) => return outcome(false, e.to_string()),
    };
    let r = match fuse(&Prop, &d, cfg.model_bound) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let sig = &r.theory.signature;
    let axioms: BTreeSet<String> = r.theory.axioms.iter().map(|a| show_sentence(&Prop, sig, a)).collect();
    let expected: BTreeSet<String> = ["p", "(implies q r)"].map(String::from).into();
    let universal = verify_fusion_universal(&Prop, &d, &r, cfg.cocone_bound, cfg.model_bound);
    let stable = merge_output() == merge_output();
    let ok = sig.atoms == ["p", "q", "r"] && axioms == expected && !r.inconsistent && universal && stable;
    let listed: Vec<&str> = axioms.iter().map(String::as_str).collect();
    outcome(
        ok,
        format!(
            "signature ({}), axioms {}; universal at bound {}: {universal}; merge output stable: {stable}",
            sig.atoms.join(" "),
            listed.join(" "),
            cfg.cocone_bound
        ),
    )
}

fn corpus_prefixes(_: &Config) -> Outcome {
    let mut reg = Registry::new();
    for v in ["ur.vocab", "iff.vocab"] {
        if let Err(e) = corpus::text(v).and_then(|t| load_vocab(&mut reg, &t, v)) {
            return outcome(false, e.to_string());
        }
    }
    let mut names = BTreeSet::new();
    let mut failures = Vec::new();
    for file in TABLES {
        match corpus_sentences(file) {
            Ok(ss) => ss.iter().for_each(|s| s.for_each_name(&mut |n| {
                if let Some(p) = n.prefix_text() {
                    names.insert(p.to_string());
                }
            })),
            Err(e) => failures.push(e.to_string()),
        }
    }
    for p in &names {
        if let Err(e) = reg.resolve(p) {
            failures.push(format!("{p}: {e}"));
        }
    }
    report(format!("{} prefixes in the tables resolve", names.len()), &failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_family_sizes() {
        assert_eq!(small_term_languages("").len(), 31);
        assert_eq!(small_fol_languages().len(), 3 * 3 + 7 * 7 + 21 * 21);
    }

    #[test]
    fn quick_checks_pass() {
        let cfg = Config::default();
        for f in [corpus_round_trip, ur_counts, lint_tables, levels_file, pushout_file, monoid_file, corpus_prefixes] {
            let o = f(&cfg);
            assert!(o.passed, "{}", o.detail);
        }
    }

    #[test]
    fn results_are_sorted() {
        let cfg = Config::default();
        let picked = [suite("registry").unwrap(), suite("metalang").unwrap()];
        let r = run_suites(&picked, &cfg);
        assert_eq!(r.iter().map(|r| r.name).collect::<Vec<_>>(), ["metalang", "registry"]);
        assert!(print_results(&r).ends_with("2 suites, 0 failed\n"));
    }
}
