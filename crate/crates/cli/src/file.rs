//! JSON presentation files.
//!
//! ```json
//! {"generators": ["a", "b", "c"], "relations": ["(b a) - (a b) - c"]}
//! {"generators": ["e", "f", "h"],
//!  "lie": {"constants": [{"i": 2, "j": 1, "value": {"3": "-1"}}]}}
//! ```
//!
//! Generators are ordered by declaration, the first being least. Lie indices
//! are 1-based positions in `generators`; only `i > j` entries are needed.
//! Rationals are strings `"p"` or `"p/q"`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use presym_core::lie::{Constant, LieAlgebra};
use presym_core::poly::Multiplier;
use presym_core::{Alphabet, Presentation};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_expression_with, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub constants: Vec<ConstantEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub value: BTreeMap<String, String>,
}

/// An input problem with the location it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub line: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(source: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            source: source.into(),
            line: None,
            message: message.into(),
        }
    }

    fn at_line(mut self, line: Option<usize>) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}: {}", self.source, line, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

impl std::error::Error for InputError {}

/// A presentation file after validation.
#[derive(Debug, Clone)]
pub enum Loaded {
    Relations(Presentation),
    Lie(LieAlgebra),
}

impl Loaded {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Loaded::Relations(p) => p.alphabet(),
            Loaded::Lie(l) => l.basis(),
        }
    }
}

// 1-based line of the first occurrence of `needle` in `text`.
fn line_of(text: &str, needle: &str) -> Option<usize> {
    let quoted = serde_json::to_string(needle).ok()?;
    let at = text.find(&quoted)?;
    Some(text[..at].matches('\n').count() + 1)
}

impl PresentationFile {
    pub fn read(path: &Path) -> Result<(Self, String), InputError> {
        let source = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::new(&source, format!("cannot read file: {e}")))?;
        let file = Self::from_json(&source, &text)?;
        Ok((file, text))
    }

    pub fn from_json(source: &str, text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| {
            InputError::new(source, format!("invalid presentation file: {e}")).at_line(Some(e.line()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Checks the file and builds the engine objects. `text` is the raw
    /// file content, used only to locate errors.
    pub fn load(&self, source: &str, text: &str) -> Result<Loaded, InputError> {
        let alphabet = Alphabet::new(self.generators.iter().cloned())
            .map_err(|e| InputError::new(source, e.to_string()))?;
        match (&self.relations, &self.lie) {
            (Some(_), Some(_)) => Err(InputError::new(
                source,
                "a file may contain `relations` or `lie`, not both",
            )),
            (_, Some(lie)) => {
                if let Some(dim) = lie.dim {
                    if dim != alphabet.len() {
                        return Err(InputError::new(
                            source,
                            format!(
                                "lie.dim is {dim} but {} generators are declared",
                                alphabet.len()
                            ),
                        ));
                    }
                }
                let mut constants = Vec::with_capacity(lie.constants.len());
                for entry in &lie.constants {
                    let mut value = Vec::with_capacity(entry.value.len());
                    for (index, coefficient) in &entry.value {
                        let m: usize = index.parse().map_err(|_| {
                            InputError::new(
                                source,
                                format!("constant ({}, {}): bad basis index `{index}`", entry.i, entry.j),
                            )
                        })?;
                        let c = parse_rational(coefficient).map_err(|e| {
                            InputError::new(
                                source,
                                format!("constant ({}, {}): bad rational `{coefficient}`: {e}", entry.i, entry.j),
                            )
                            .at_line(line_of(text, coefficient))
                        })?;
                        value.push((m, c));
                    }
                    constants.push(Constant {
                        i: entry.i,
                        j: entry.j,
                        value,
                    });
                }
                LieAlgebra::from_constants(alphabet, &constants)
                    .map(Loaded::Lie)
                    .map_err(|e| InputError::new(source, e.to_string()))
            }
            (relations, None) => {
                let mut mul = Multiplier::new();
                let mut polys = Vec::new();
                for (k, text_rel) in relations.iter().flatten().enumerate() {
                    let p = parse_expression_with(text_rel, &alphabet, &mut mul).map_err(|e| {
                        InputError::new(source, format!("relation {}: {e}", k + 1))
                            .at_line(line_of(text, text_rel))
                    })?;
                    if p.is_zero() {
                        return Err(InputError::new(
                            source,
                            format!("relation {} is zero", k + 1),
                        )
                        .at_line(line_of(text, text_rel)));
                    }
                    polys.push(p);
                }
                Presentation::new(alphabet, polys)
                    .map(Loaded::Relations)
                    .map_err(|e| InputError::new(source, e.to_string()))
            }
        }
    }

    /// File form of a relation presentation.
    pub fn from_presentation(presentation: &Presentation) -> Self {
        let alphabet = presentation.alphabet();
        PresentationFile {
            generators: alphabet.names().to_vec(),
            relations: Some(
                presentation
                    .relations()
                    .iter()
                    .map(|r| r.display(alphabet).to_string())
                    .collect(),
            ),
            lie: None,
        }
    }

    /// File form of a Lie algebra, listing the `i > j` entries.
    pub fn from_lie(algebra: &LieAlgebra) -> Self {
        PresentationFile {
            generators: algebra.basis().names().to_vec(),
            relations: None,
            lie: Some(LieSection {
                dim: Some(algebra.dim()),
                constants: algebra
                    .constants()
                    .into_iter()
                    .map(|c| ConstantEntry {
                        i: c.i,
                        j: c.j,
                        value: c
                            .value
                            .into_iter()
                            .map(|(m, v)| (m.to_string(), v.to_string()))
                            .collect(),
                    })
                    .collect(),
            }),
        }
    }
}
