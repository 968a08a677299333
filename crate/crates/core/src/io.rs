//! JSON interchange for posets and complexes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("input is neither a poset (`covers`) nor a complex (`facets`)")]
    UnknownFormat,
    #[error("expected a {expected}, found a {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep just the reason.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_owned(),
            None => message,
        };
        InputError::Json { line: e.line(), column: e.column(), message }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl PosetFile {
    /// Elements in index order; covers sorted lexicographically by label.
    pub fn from_poset(name: &str, poset: &FinitePoset) -> Self {
        let mut covers: Vec<(String, String)> =
            poset.covers().into_iter().map(|(a, b)| (poset.label(a).to_owned(), poset.label(b).to_owned())).collect();
        covers.sort();
        PosetFile { name: name.to_owned(), elements: poset.labels().to_vec(), covers }
    }

    pub fn to_poset(&self) -> Result<FinitePoset, PosetError> {
        FinitePoset::from_covers(&self.elements, &self.covers)
    }
}

impl ComplexFile {
    /// Vertices and facets in label order, each facet sorted.
    pub fn from_complex(name: &str, complex: &SimplicialComplex) -> Self {
        let mut facets = complex.facets_labeled();
        for f in &mut facets {
            f.sort();
        }
        facets.sort();
        facets.dedup();
        let mut vertices: Vec<String> = complex.vertices().iter().map(|v| v.to_string()).collect();
        vertices.sort();
        ComplexFile { name: name.to_owned(), vertices, facets }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        SimplicialComplex::with_vertices(&self.vertices, &self.facets)
    }
}

/// A parsed input file of either kind.
#[derive(Debug, Clone)]
pub enum Instance {
    Poset { name: String, poset: FinitePoset },
    Complex { name: String, complex: SimplicialComplex },
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::Poset { name, .. } | Instance::Complex { name, .. } => name,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Instance::Poset { .. } => "poset",
            Instance::Complex { .. } => "complex",
        }
    }

    pub fn into_poset(self) -> Result<(String, FinitePoset), InputError> {
        match self {
            Instance::Poset { name, poset } => Ok((name, poset)),
            other => Err(InputError::WrongKind { expected: "poset", found: other.kind() }),
        }
    }

    pub fn to_json(&self) -> String {
        let value = match self {
            Instance::Poset { name, poset } => serde_json::to_value(PosetFile::from_poset(name, poset)),
            Instance::Complex { name, complex } => serde_json::to_value(ComplexFile::from_complex(name, complex)),
        };
        let mut s = serde_json::to_string_pretty(&value.expect("plain data serializes")).expect("value serializes");
        s.push('\n');
        s
    }
}

/// Parses a poset or complex, telling them apart by the `covers` or
/// `facets` key.
pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or(InputError::UnknownFormat)?;
    if obj.contains_key("covers") {
        let file: PosetFile = serde_json::from_str(text)?;
        let poset = file.to_poset()?;
        Ok(Instance::Poset { name: file.name, poset })
    } else if obj.contains_key("facets") {
        let file: ComplexFile = serde_json::from_str(text)?;
        let complex = file.to_complex()?;
        Ok(Instance::Complex { name: file.name, complex })
    } else {
        Err(InputError::UnknownFormat)
    }
}

pub fn read_instance(path: &Path) -> Result<Instance, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    parse_instance(&text)
}

pub fn poset_to_json(name: &str, poset: &FinitePoset) -> String {
    Instance::Poset { name: name.to_owned(), poset: poset.clone() }.to_json()
}

pub fn complex_to_json(name: &str, complex: &SimplicialComplex) -> String {
    Instance::Complex { name: name.to_owned(), complex: complex.clone() }.to_json()
}
