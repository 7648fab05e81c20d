use alloc::string::String;
use alloc::vec::Vec;

use super::{term_arity, Indicia, Term, TermError, TermLanguage};

/// Relation symbols with indicia arities over a variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressionLanguage {
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub arity: Vec<Indicia>,
}

impl ExpressionLanguage {
    pub fn new(variables: Vec<String>, relations: Vec<(String, Vec<String>)>) -> Result<Self, TermError> {
        let as_terms = TermLanguage::new(variables, relations)?;
        Ok(ExpressionLanguage { variables: as_terms.variables, relations: as_terms.symbols, arity: as_terms.arity })
    }
}

/// A term language and an expression language over one variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolLanguage {
    pub variables: Vec<String>,
    pub terms: TermLanguage,
    pub expressions: ExpressionLanguage,
    /// Variable `v` of the original expression language became variable
    /// `expression_renaming[v]`.
    pub expression_renaming: Vec<usize>,
}

/// Identify the variables of `e` with those of `t` along `bijection`
/// (`e` variable index to `t` variable index).
pub fn pullback_fol(e: &ExpressionLanguage, t: &TermLanguage, bijection: &[usize]) -> Result<FolLanguage, TermError> {
    let n = t.variables.len();
    if e.variables.len() != n || bijection.len() != n {
        return Err(TermError::NotABijection);
    }
    let mut seen = alloc::vec![false; n];
    for &v in bijection {
        if v >= n || core::mem::replace(&mut seen[v], true) {
            return Err(TermError::NotABijection);
        }
    }
    let arity = e.arity.iter().map(|a| Indicia::from_vars(a.iter().map(|v| bijection[v]))).collect();
    let expressions = ExpressionLanguage { variables: t.variables.clone(), relations: e.relations.clone(), arity };
    Ok(FolLanguage { variables: t.variables.clone(), terms: t.clone(), expressions, expression_renaming: bijection.to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub over: Indicia,
    pub lhs: Term,
    pub rhs: Term,
}

/// A term language with equations; kept as data, interpreted semantically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationalPresentation {
    pub language: TermLanguage,
    pub equations: Vec<Equation>,
}

impl EquationalPresentation {
    pub fn new(language: TermLanguage, equations: Vec<Equation>) -> Result<Self, TermError> {
        for eq in &equations {
            language.check_term(&eq.lhs)?;
            language.check_term(&eq.rhs)?;
            if !eq.over.is_subset(language.all_vars()) {
                return Err(TermError::UnknownVariable(language.variables.len()));
            }
            if !term_arity(&eq.lhs).union(term_arity(&eq.rhs)).is_subset(eq.over) {
                return Err(TermError::DomainViolation);
            }
        }
        Ok(EquationalPresentation { language, equations })
    }
}
