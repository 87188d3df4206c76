use std::cmp::Ordering;

use super::{EdgeRef, Graph, VertexId};
use crate::error::{Error, Result};

/// A finite path: a bare vertex, or a nonempty composable edge sequence.
///
/// Paths order by length first, then edge by edge, then by source, so a
/// sorted list of paths reads shortest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeRef>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Path {
        Path {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeRef>) -> Result<Path> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::InvalidPath("empty edge sequence".into())),
        };
        for &e in &edges {
            g.check_edge(e)?;
        }
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(Error::InvalidPath(format!(
                    "`{}` does not compose with `{}`",
                    g.render_edge(w[0]),
                    g.render_edge(w[1])
                )));
            }
        }
        Ok(Path {
            source: g.source(first),
            range: g.range(last),
            edges,
        })
    }

    /// Builds a path without checking composability; callers guarantee it.
    pub(crate) fn from_parts(source: VertexId, range: VertexId, edges: Vec<EdgeRef>) -> Path {
        debug_assert!(!edges.is_empty() || source == range);
        Path {
            source,
            range,
            edges,
        }
    }

    /// Number of edges; a vertex path has length zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn first_edge(&self) -> Option<EdgeRef> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeRef> {
        self.edges.last().copied()
    }

    /// Vertices visited, from source to range.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(self.source);
        out.extend(self.edges.iter().map(|&e| g.range(e)));
        out
    }

    /// `self` followed by `other`; fails unless `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.range != other.source {
            return Err(Error::InvalidPath(
                "paths do not compose: range differs from next source".into(),
            ));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    pub fn push(&mut self, g: &Graph, e: EdgeRef) {
        debug_assert_eq!(self.range, g.source(e));
        self.edges.push(e);
        self.range = g.range(e);
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source && other.edges.starts_with(&self.edges)
    }

    /// The path `rest` with `prefix · rest = self`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }
}

impl Graph {
    /// Drops the first edge; a bare vertex is returned unchanged.
    pub fn path_tail(&self, p: &Path) -> Path {
        match p.edges.split_first() {
            None => p.clone(),
            Some((&first, rest)) => Path {
                source: self.range(first),
                range: p.range,
                edges: rest.to_vec(),
            },
        }
    }

    pub fn render_path(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertex_name(p.source).to_string();
        }
        p.edges
            .iter()
            .map(|&e| self.render_edge(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a vertex name or a comma-separated list of edge references.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Ok(v) = self.vertex_id(text) {
            return Ok(Path::vertex(v));
        }
        let edges = text
            .split(',')
            .map(|t| self.parse_edge(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(self, edges)
    }
}
