//! `(classification <id> (tokens ...) (types ...) (incidence (tok typ)...))`

use iffkit_core::ifca::{Classification, ConceptLattice, FormalConcept};

use super::{distinct, expect_form, form_line, name, pair, quoted, shape, single_form, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextFile {
    pub id: String,
    pub classification: Classification,
}

pub fn parse_context(text: &str, file: Option<&str>) -> Result<ContextFile, FormatError> {
    let form = single_form(text, file, "classification")?;
    let body = expect_form(&form, "classification")?;
    let [id, tokens, types, incidence] = body else {
        return shape(&form, "expected (classification <id> (tokens ...) (types ...) (incidence ...))");
    };
    let tokens = distinct(expect_form(tokens, "tokens")?, "token")?;
    let types = distinct(expect_form(types, "types")?, "type")?;
    let mut c = Classification::new(tokens.clone(), types.clone());
    for p in expect_form(incidence, "incidence")? {
        let (a, t) = pair(p)?;
        let Some(i) = tokens.iter().position(|x| *x == a) else { return shape(p, format!("unknown token {a}")) };
        let Some(j) = types.iter().position(|x| *x == t) else { return shape(p, format!("unknown type {t}")) };
        c.set(i, j, true);
    }
    Ok(ContextFile { id: name(id)?, classification: c })
}

pub fn print_context(f: &ContextFile) -> String {
    let c = &f.classification;
    let mut incidence = Vec::new();
    for (i, a) in c.tokens.iter().enumerate() {
        for (j, t) in c.types.iter().enumerate() {
            if c.holds(i, j) {
                incidence.push(format!("({} {})", quoted(a), quoted(t)));
            }
        }
    }
    format!(
        "(classification {}\n  {}\n  {}\n  {})\n",
        quoted(&f.id),
        form_line("tokens", c.tokens.iter().map(|s| quoted(s))),
        form_line("types", c.types.iter().map(|s| quoted(s))),
        form_line("incidence", incidence),
    )
}

pub fn print_concept(c: &Classification, k: &FormalConcept) -> String {
    format!(
        "(concept {} {})",
        form_line("extent", k.extent.ones().map(|i| quoted(&c.tokens[i]))),
        form_line("intent", k.intent.ones().map(|j| quoted(&c.types[j]))),
    )
}

/// One concept per line, in the lattice's own (lectic) order.
pub fn print_concepts(c: &Classification, l: &ConceptLattice) -> String {
    l.concepts.iter().map(|k| print_concept(c, k) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use iffkit_core::ifca::concepts;

    const DIAMOND: &str = "(classification diamond (tokens a b) (types 1 2) (incidence (a 1) (b 2)))";

    #[test]
    fn round_trip() {
        let f = parse_context(DIAMOND, None).unwrap();
        assert_eq!(f.classification.incidence_count(), 2);
        let text = print_context(&f);
        assert_eq!(parse_context(&text, None).unwrap(), f);
        assert_eq!(print_context(&parse_context(&text, None).unwrap()), text);
    }

    #[test]
    fn diamond_concepts() {
        let f = parse_context(DIAMOND, None).unwrap();
        let out = print_concepts(&f.classification, &concepts(&f.classification));
        assert_eq!(out.lines().count(), 4);
        assert!(out.contains("(concept (extent a) (intent 1))"));
        assert!(out.contains("(concept (extent) (intent 1 2))"));
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(parse_context("(classification x (tokens a) (types t) (incidence (a u)))", None).is_err());
        assert!(parse_context("(classification x (tokens a a) (types) (incidence))", None).is_err());
        assert!(parse_context("(classification x (tokens a))", None).is_err());
    }

    #[test]
    fn odd_names_are_quoted() {
        let f = parse_context("(classification x (tokens \"a b\") (types t) (incidence (\"a b\" t)))", None).unwrap();
        assert_eq!(parse_context(&print_context(&f), None).unwrap(), f);
    }
}
