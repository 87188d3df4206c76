//! The JSON graph file format.

use naimark::{Graph, Multiplicity};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultiplicityField {
    Count(u64),
    Word(String),
}

impl Default for MultiplicityField {
    fn default() -> Self {
        MultiplicityField::Count(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub name: String,
    pub source: String,
    pub range: String,
    #[serde(default)]
    pub multiplicity: MultiplicityField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDocument>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<GraphDocument, DocumentError> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialise") + "\n"
    }

    fn validate(&self) -> Result<(), DocumentError> {
        if self.vertices.is_empty() {
            return Err(DocumentError::Schema(
                "at least one vertex is required".into(),
            ));
        }
        let names = self
            .vertices
            .iter()
            .chain(self.edges.iter().map(|e| &e.name));
        for name in names {
            if !is_identifier(name) {
                return Err(DocumentError::Schema(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
        }
        for e in &self.edges {
            match &e.multiplicity {
                MultiplicityField::Count(0) => {
                    return Err(DocumentError::Schema(format!(
                        "edge `{}` has multiplicity 0",
                        e.name
                    )))
                }
                MultiplicityField::Word(w) if w != "omega" => {
                    return Err(DocumentError::Schema(format!(
                        "edge `{}` has multiplicity `{w}`; use a positive integer or \"omega\"",
                        e.name
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn to_graph(&self) -> Result<Graph, DocumentError> {
        let mut b = Graph::builder().vertices(self.vertices.iter().cloned());
        for e in &self.edges {
            let m = match e.multiplicity {
                MultiplicityField::Count(n) => Multiplicity::Finite(n),
                MultiplicityField::Word(_) => Multiplicity::Omega,
            };
            b = b.bundle(e.name.clone(), e.source.clone(), e.range.clone(), m);
        }
        b.build().map_err(|e| DocumentError::Schema(e.to_string()))
    }

    pub fn from_graph(g: &Graph) -> GraphDocument {
        GraphDocument {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .bundles()
                .iter()
                .map(|b| EdgeDocument {
                    name: b.name.clone(),
                    source: g.vertex_name(b.source).to_string(),
                    range: g.vertex_name(b.range).to_string(),
                    multiplicity: match b.multiplicity {
                        Multiplicity::Finite(n) => MultiplicityField::Count(n),
                        Multiplicity::Omega => MultiplicityField::Word("omega".into()),
                    },
                })
                .collect(),
        }
    }
}
