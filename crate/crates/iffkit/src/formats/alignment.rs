//! `(alignment (node <id> <theory-file>)... (edge <from> <to> (sig-map (a b)...))...)`
//!
//! Theory files are resolved by the caller, normally relative to the
//! alignment file. Every node must use the same institution.

use iffkit_core::cat::FinGraph;
use iffkit_core::institution::{Eqn, Prop, TinyFol};
use iffkit_core::integrate::AlignmentDiagram;
use iffkit_core::sexpr::Sexpr;

use super::theory::{parse_theory, TheoryFile, TheorySyntax};
use super::{expect_form, name, pair, shape, single_form, FormatError};

#[derive(Clone, Debug)]
pub enum Alignment {
    Prop(AlignmentDiagram<Prop>),
    Eqn(AlignmentDiagram<Eqn>),
    Fol(AlignmentDiagram<TinyFol>),
}

impl Alignment {
    pub fn institution(&self) -> &'static str {
        match self {
            Alignment::Prop(_) => Prop::KEYWORD,
            Alignment::Eqn(_) => Eqn::KEYWORD,
            Alignment::Fol(_) => TinyFol::KEYWORD,
        }
    }
}

struct Edge<'a> {
    from: usize,
    to: usize,
    pairs: Vec<(String, String)>,
    at: &'a Sexpr,
}

/// Text of a referenced file and a label for error messages.
pub type Loader<'a> = dyn Fn(&str) -> Result<(String, String), FormatError> + 'a;

/// `load(path)` returns the text of a node's theory file and a label for
/// error messages.
pub fn parse_alignment(
    text: &str,
    file: Option<&str>,
    load: &Loader,
) -> Result<Alignment, FormatError> {
    let form = single_form(text, file, "alignment")?;
    let mut nodes: Vec<(String, TheoryFile, &Sexpr)> = Vec::new();
    let mut raw_edges = Vec::new();
    for item in expect_form(&form, "alignment")? {
        match item.as_form() {
            Some(("node", [id, path])) => {
                let id = name(id)?;
                if nodes.iter().any(|n| n.0 == id) {
                    return shape(item, format!("duplicate node {id}"));
                }
                let (text, label) = load(&name(path)?)?;
                nodes.push((id, parse_theory(&text, Some(&label))?, item));
            }
            Some(("edge", [from, to, map])) => raw_edges.push((from, to, map, item)),
            _ => return shape(item, "expected (node <id> <file>) or (edge <from> <to> (sig-map ...))"),
        }
    }
    let index = |x: &Sexpr| {
        let n = name(x)?;
        match nodes.iter().position(|k| k.0 == n) {
            Some(i) => Ok(i),
            None => shape(x, format!("unknown node {n}")),
        }
    };
    let mut edges = Vec::new();
    for (from, to, map, at) in raw_edges {
        let pairs = expect_form(map, "sig-map")?.iter().map(pair).collect::<Result<_, _>>()?;
        edges.push(Edge { from: index(from)?, to: index(to)?, pairs, at });
    }
    let Some(first) = nodes.first() else { return shape(&form, "alignment has no nodes") };
    let inst = first.1.institution();
    if let Some(n) = nodes.iter().find(|n| n.1.institution() != inst) {
        return shape(n.2, format!("node {} is not a {inst} theory", n.0));
    }
    let nodes: Vec<(String, TheoryFile)> = nodes.into_iter().map(|(id, t, _)| (id, t)).collect();
    Ok(match inst {
        "prop" => Alignment::Prop(build(&Prop, nodes, &edges)?),
        "eqn" => Alignment::Eqn(build(&Eqn, nodes, &edges)?),
        _ => Alignment::Fol(build(&TinyFol, nodes, &edges)?),
    })
}

fn build<I: TheorySyntax>(inst: &I, nodes: Vec<(String, TheoryFile)>, edges: &[Edge]) -> Result<AlignmentDiagram<I>, FormatError> {
    let mut names = Vec::new();
    let mut theories = Vec::new();
    for (id, t) in nodes {
        names.push(id);
        theories.push(I::unwrap(t).expect("institutions checked").1);
    }
    let mut morphisms = Vec::new();
    for e in edges {
        match inst.read_morphism(&theories[e.from].signature, &theories[e.to].signature, &e.pairs) {
            Ok(m) => morphisms.push(m),
            Err(message) => return shape(e.at, message),
        }
    }
    let shape_graph = FinGraph::new(names.len(), edges.iter().map(|e| (e.from, e.to)).collect()).expect("endpoints are node indices");
    Ok(AlignmentDiagram { shape: shape_graph, names, theories, edges: morphisms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use iffkit_core::integrate::fuse;

    fn files(path: &str) -> Result<(String, String), FormatError> {
        let text = match path {
            "T0.thy" => "(theory T0 (signature q) (axioms))",
            "T1.thy" => "(theory T1 (signature p q) (axioms p))",
            "T2.thy" => "(theory T2 (signature q r) (axioms (implies q r)))",
            "E.thy" => "(theory E (institution eqn) (signature (vars x)) (axioms))",
            _ => return Err(FormatError::Shape { span: Default::default(), message: format!("no file {path}") }),
        };
        Ok((text.to_string(), path.to_string()))
    }

    const SPAN: &str = "(alignment (node T1 T1.thy) (node T2 T2.thy) (node T0 T0.thy)
        (edge T0 T1 (sig-map (q q))) (edge T0 T2 (sig-map (q q))))";

    #[test]
    fn span_loads_and_fuses() {
        let Alignment::Prop(d) = parse_alignment(SPAN, None, &files).unwrap() else { panic!() };
        assert_eq!(d.names, ["T1", "T2", "T0"]);
        assert_eq!(d.shape.edges, [(2, 0), (2, 1)]);
        let r = fuse(&Prop, &d, 0).unwrap();
        assert_eq!(r.theory.signature.atoms, ["p", "q", "r"]);
    }

    #[test]
    fn errors() {
        for bad in [
            "(alignment)",
            "(alignment (node A T0.thy) (node A T1.thy))",
            "(alignment (node A T0.thy) (edge A B (sig-map)))",
            "(alignment (node A T1.thy) (node B T0.thy) (edge A B (sig-map)))",
            "(alignment (node A T0.thy) (node B T1.thy) (edge A B (sig-map (q z))))",
            "(alignment (node A T0.thy) (node B E.thy))",
            "(alignment (node A missing.thy))",
            "(alignment (vertex A T0.thy))",
        ] {
            assert!(parse_alignment(bad, None, &files).is_err(), "{bad}");
        }
    }
}
