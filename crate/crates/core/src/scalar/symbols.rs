use std::collections::HashSet;

use crate::error::{Error, Result};

/// Names of the coefficient symbols.
///
/// Variables come first and are the ones the shift operators act on;
/// parameters are inert. A symbol's index in a [`MultiPoly`](super::MultiPoly)
/// exponent vector is its position in `variables ++ parameters`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    variables: Vec<String>,
    parameters: Vec<String>,
}

impl SymbolTable {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        parameters: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let parameters: Vec<String> = parameters.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for (i, name) in variables.iter().chain(parameters.iter()).enumerate() {
            if !is_identifier(name) {
                return Err(Error::validation(
                    format!("symbols[{i}]"),
                    format!("`{name}` is not an identifier"),
                ));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::validation(
                    format!("symbols[{i}]"),
                    format!("duplicate symbol `{name}`"),
                ));
            }
        }
        Ok(Self {
            variables,
            parameters,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Total number of symbols, i.e. the arity of every exponent vector.
    pub fn len(&self) -> usize {
        self.variables.len() + self.parameters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables
            .iter()
            .chain(self.parameters.iter())
            .position(|s| s == name)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|s| s == name)
    }

    pub fn is_variable(&self, index: usize) -> bool {
        index < self.variables.len()
    }

    pub fn name(&self, index: usize) -> &str {
        if index < self.variables.len() {
            &self.variables[index]
        } else {
            &self.parameters[index - self.variables.len()]
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.variables
            .iter()
            .chain(self.parameters.iter())
            .map(String::as_str)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_follow_declaration_order() {
        let t = SymbolTable::new(["k", "n"], ["d", "q", "m"]).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.index_of("d"), Some(2));
        assert!(t.is_variable(1));
        assert!(!t.is_variable(2));
        assert_eq!(t.name(4), "m");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(SymbolTable::new(["k", "n"], ["k"]).is_err());
        assert!(SymbolTable::new(["1x"], Vec::<&str>::new()).is_err());
    }
}
