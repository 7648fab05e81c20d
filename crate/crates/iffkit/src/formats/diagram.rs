//! `(diagram <id> (node <name> (<elem>...))... (arrow <name> <from> <to> ((x y)...))...)`

use iffkit_core::cat::{Diagram, FinGraph, FinMap};

use super::{distinct, expect_form, list, name, pair, quoted, shape, single_form, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub id: String,
    pub nodes: Vec<String>,
    /// Element names of each node's set.
    pub elements: Vec<Vec<String>>,
    pub arrows: Vec<String>,
    pub diagram: Diagram,
}

pub fn parse_diagram(text: &str, file: Option<&str>) -> Result<DiagramFile, FormatError> {
    let form = single_form(text, file, "diagram")?;
    let body = expect_form(&form, "diagram")?;
    let Some((id, items)) = body.split_first() else { return shape(&form, "diagram needs an id") };
    let mut nodes: Vec<String> = Vec::new();
    let mut elements: Vec<Vec<String>> = Vec::new();
    let mut arrows: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut maps = Vec::new();
    for item in items {
        match item.as_form() {
            Some(("node", [n, elems])) => {
                let n = name(n)?;
                if nodes.contains(&n) {
                    return shape(item, format!("duplicate node {n}"));
                }
                nodes.push(n);
                elements.push(distinct(list(elems)?, "element")?);
            }
            Some(("arrow", [a, from, to, map])) => {
                let a = name(a)?;
                if arrows.contains(&a) {
                    return shape(item, format!("duplicate arrow {a}"));
                }
                let find = |x| {
                    let n = name(x)?;
                    nodes.iter().position(|k| *k == n).map_or_else(|| shape(x, format!("unknown node {n}")), Ok)
                };
                let (s, t) = (find(from)?, find(to)?);
                let mut images = vec![None; elements[s].len()];
                for p in list(map)? {
                    let (x, y) = pair(p)?;
                    let Some(i) = elements[s].iter().position(|e| *e == x) else { return shape(p, format!("{x} is not in {}", nodes[s])) };
                    let Some(j) = elements[t].iter().position(|e| *e == y) else { return shape(p, format!("{y} is not in {}", nodes[t])) };
                    if images[i].replace(j).is_some() {
                        return shape(p, format!("{x} has two images"));
                    }
                }
                let Some(images) = images.into_iter().collect::<Option<Vec<usize>>>() else {
                    return shape(item, format!("arrow {a} is not total"));
                };
                arrows.push(a);
                edges.push((s, t));
                maps.push(FinMap::new(elements[s].len(), elements[t].len(), images).or_else(|e| shape(item, e.to_string()))?);
            }
            _ => return shape(item, "expected (node <name> (...)) or (arrow <name> <from> <to> (...))"),
        }
    }
    let graph = FinGraph::new(nodes.len(), edges).or_else(|e| shape(&form, e.to_string()))?;
    let sets = elements.iter().map(Vec::len).collect();
    let diagram = Diagram::new(graph, sets, maps).or_else(|e| shape(&form, e.to_string()))?;
    Ok(DiagramFile { id: name(id)?, nodes, elements, arrows, diagram })
}

pub fn print_diagram(d: &DiagramFile) -> String {
    let mut out = format!("(diagram {}", quoted(&d.id));
    for (n, elems) in d.nodes.iter().zip(&d.elements) {
        let es: Vec<String> = elems.iter().map(|e| quoted(e)).collect();
        out.push_str(&format!("\n  (node {} ({}))", quoted(n), es.join(" ")));
    }
    for ((a, &(s, t)), m) in d.arrows.iter().zip(&d.diagram.shape.edges).zip(&d.diagram.maps) {
        let ps: Vec<String> = m.images.iter().enumerate().map(|(x, &y)| format!("({} {})", quoted(&d.elements[s][x]), quoted(&d.elements[t][y]))).collect();
        out.push_str(&format!("\n  (arrow {} {} {} ({}))", quoted(a), quoted(&d.nodes[s]), quoted(&d.nodes[t]), ps.join(" ")));
    }
    out.push_str(")\n");
    out
}
