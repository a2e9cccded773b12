use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::parse::{parse_expression, parse_pattern_app, parse_scalar, Scope};
use crate::apps::VanishingPattern;
use crate::diff::{DiffPoly, Ranking, RankingKind};
use crate::error::{Error, Result};
use crate::scalar::SymbolTable;

/// On-disk layout of a system file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub variables: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub functions: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default)]
    pub ranking: RankingFile,
    #[serde(default)]
    pub boundary: Vec<String>,
    #[serde(default)]
    pub specialize: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingFile {
    #[serde(rename = "type", default = "default_kind")]
    pub kind: String,
    #[serde(default)]
    pub function_order: Option<Vec<String>>,
    #[serde(default)]
    pub variable_order: Option<Vec<String>>,
}

fn default_kind() -> String {
    "orderly".to_string()
}

impl Default for RankingFile {
    fn default() -> Self {
        Self {
            kind: default_kind(),
            function_order: None,
            variable_order: None,
        }
    }
}

/// A validated system with specializations already applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub symbols: SymbolTable,
    pub functions: Vec<String>,
    pub equations: Vec<DiffPoly>,
    pub ranking: Ranking,
    pub boundary: Vec<VanishingPattern>,
}

impl SystemSpec {
    pub fn scope(&self) -> Scope<'_> {
        Scope::new(&self.symbols, &self.functions)
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        let symbols = SymbolTable::new(
            file.variables.iter().cloned(),
            file.parameters.iter().cloned(),
        )?;
        if file.variables.is_empty() {
            return Err(Error::validation(
                "variables",
                "at least one variable is required",
            ));
        }
        if file.functions.is_empty() {
            return Err(Error::validation(
                "functions",
                "at least one function is required",
            ));
        }
        for (i, f) in file.functions.iter().enumerate() {
            if !crate::scalar::is_identifier(f) {
                return Err(Error::validation(
                    format!("functions[{i}]"),
                    format!("`{f}` is not an identifier"),
                ));
            }
            if symbols.index_of(f).is_some() || file.functions[..i].contains(f) {
                return Err(Error::validation(
                    format!("functions[{i}]"),
                    format!("`{f}` is already declared"),
                ));
            }
        }
        if file.equations.is_empty() {
            return Err(Error::validation(
                "equations",
                "at least one equation is required",
            ));
        }
        let functions = file.functions.clone();
        let scope = Scope::new(&symbols, &functions);

        let mut bindings = Vec::new();
        for (name, value) in &file.specialize {
            let path = format!("specialize.{name}");
            let idx = symbols
                .parameters()
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| {
                    Error::validation(&path, format!("`{name}` is not a declared parameter"))
                })?;
            let v =
                parse_scalar(value, scope).map_err(|e| Error::validation(&path, e.to_string()))?;
            bindings.push((symbols.num_variables() + idx, v));
        }

        let mut equations = Vec::with_capacity(file.equations.len());
        for (i, src) in file.equations.iter().enumerate() {
            let mut p =
                parse_expression(src, scope).map_err(|e| at_path(e, format!("equations[{i}]")))?;
            for (var, value) in &bindings {
                p = p.try_map_coeffs(|c| c.substitute(*var, value))?;
            }
            equations.push(p);
        }

        let ranking = ranking_from(&file.ranking, &symbols, &functions)?;
        let boundary = file
            .boundary
            .iter()
            .enumerate()
            .map(|(i, src)| {
                let (func, args) = parse_pattern_app(src, scope)
                    .map_err(|e| at_path(e, format!("boundary[{i}]")))?;
                VanishingPattern::from_args(func, &args)
                    .map_err(|e| at_path(e, format!("boundary[{i}]")))
            })
            .collect::<Result<_>>()?;

        Ok(Self {
            symbols,
            functions,
            equations,
            ranking,
            boundary,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile =
            serde_json::from_str(text).map_err(|e| Error::validation("<system>", e.to_string()))?;
        Self::from_file(&file)
    }
}

/// Parse errors keep their own variant; the field path is only added to
/// validation messages.
fn at_path(e: Error, path: String) -> Error {
    match e {
        Error::Validation { msg, .. } => Error::Validation { path, msg },
        Error::Parse { pos, msg } => Error::Parse {
            pos,
            msg: format!("{path}: {msg}"),
        },
        other => other,
    }
}

fn ranking_from(
    file: &RankingFile,
    symbols: &SymbolTable,
    functions: &[String],
) -> Result<Ranking> {
    let kind = match file.kind.as_str() {
        "orderly" => RankingKind::Orderly,
        "elimination" => RankingKind::Elimination,
        other => {
            return Err(Error::validation(
                "ranking.type",
                format!("expected `orderly` or `elimination`, got `{other}`"),
            ))
        }
    };
    let lookup = |names: &Option<Vec<String>>, all: &[String], path: &str| -> Result<Vec<usize>> {
        match names {
            None => Ok((0..all.len()).collect()),
            Some(names) => names
                .iter()
                .map(|n| {
                    all.iter()
                        .position(|a| a == n)
                        .ok_or_else(|| Error::validation(path, format!("unknown name `{n}`")))
                })
                .collect(),
        }
    };
    let fo = lookup(&file.function_order, functions, "ranking.function_order")?;
    let vo = lookup(
        &file.variable_order,
        symbols.variables(),
        "ranking.variable_order",
    )?;
    Ranking::new(kind, fo, vo)
}

/// Reads and validates a system file.
pub fn load_system(path: impl AsRef<Path>) -> Result<SystemSpec> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: SystemFile = serde_json::from_str(&text)
        .map_err(|e| Error::validation(path.display().to_string(), e.to_string()))?;
    SystemSpec::from_file(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::DiffTerm;

    const MASSIVE: &str = r#"{
        "variables": ["k", "n"],
        "parameters": ["d", "q2", "m2"],
        "functions": ["f"],
        "equations": [
            "(d-k-2*n)*f(k+1,n+1) - k*f(k+2,n) + k*(q2-m2)*f(k+2,n+1) - 2*m2*n*f(k+1,n+2)",
            "(k-n)*f(k+1,n+1) + k*(q2-m2)*f(k+2,n+1) - k*f(k+2,n) + n*f(k,n+2) - n*(q2+m2)*f(k+1,n+2)"
        ],
        "ranking": {"type": "orderly", "function_order": ["f"], "variable_order": ["k", "n"]},
        "boundary": ["f(k+j,n)=0"]
    }"#;

    #[test]
    fn loads_the_integral_system() {
        let s = SystemSpec::from_json(MASSIVE).unwrap();
        assert_eq!(s.equations.len(), 2);
        assert_eq!(s.boundary.len(), 1);
        assert!(s.boundary[0].matches(&DiffTerm::new(0, [2, 0])));
        assert!(!s.boundary[0].matches(&DiffTerm::new(0, [2, 1])));
        assert_eq!(s.equations[0].num_terms(), 4);
    }

    #[test]
    fn specialization_is_applied() {
        let text = MASSIVE.replace(
            "\"boundary\"",
            "\"specialize\": {\"m2\": \"0\"}, \"boundary\"",
        );
        let s = SystemSpec::from_json(&text).unwrap();
        assert_eq!(s.equations[0].num_terms(), 3);
    }

    #[test]
    fn validation_errors_name_the_field() {
        let text = MASSIVE.replace("\"equations\": [", "\"equations\": [], \"unused\": [");
        assert!(SystemSpec::from_json(&text).is_err());
        let empty = r#"{"variables": ["k"], "functions": ["f"], "equations": []}"#;
        assert_eq!(
            SystemSpec::from_json(empty).unwrap_err(),
            Error::validation("equations", "at least one equation is required")
        );
        let bad_rank = r#"{"variables": ["k"], "functions": ["f"], "equations": ["f(k)"], "ranking": {"type": "weird"}}"#;
        assert!(matches!(
            SystemSpec::from_json(bad_rank).unwrap_err(),
            Error::Validation { path, .. } if path == "ranking.type"
        ));
        let bad_spec = r#"{"variables": ["k"], "functions": ["f"], "equations": ["f(k)"], "specialize": {"zz": "0"}}"#;
        assert!(matches!(
            SystemSpec::from_json(bad_spec).unwrap_err(),
            Error::Validation { path, .. } if path == "specialize.zz"
        ));
    }
}
