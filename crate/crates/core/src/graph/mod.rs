//! Directed graphs with edge bundles.
//!
//! A [`Graph`] has a finite, ordered vertex set and an ordered list of
//! bundles. A bundle is a family of parallel edges sharing source and range;
//! its [`Multiplicity`] is either a positive integer or [`Multiplicity::Omega`],
//! which stands for countably many parallel edges. Individual edges are named
//! by an [`EdgeRef`] (bundle plus index) and are only materialised on demand,
//! so an infinite emitter still has a finite presentation.
//!
//! Every set-valued result in this crate is ordered by declaration order.

mod cycles;
mod path;
mod structure;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use cycles::{Component, Cycle};
pub use path::Path;
pub use structure::VertexClass;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BundleId(pub usize);

/// Vertex sets are kept sorted by declaration order.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    pub fn is_omega(self) -> bool {
        matches!(self, Multiplicity::Omega)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Omega => None,
        }
    }

    /// Whether `index` addresses an edge of a bundle with this multiplicity.
    pub fn admits(self, index: u64) -> bool {
        match self {
            Multiplicity::Finite(m) => index < m,
            Multiplicity::Omega => true,
        }
    }

    pub fn saturating_add(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_add(b)
                .map_or(Multiplicity::Omega, Multiplicity::Finite),
            _ => Multiplicity::Omega,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Omega => f.write_str("ω"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
    pub multiplicity: Multiplicity,
}

/// One concrete edge: the `index`-th parallel edge of `bundle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub bundle: BundleId,
    pub index: u64,
}

impl EdgeRef {
    pub fn new(bundle: BundleId, index: u64) -> Self {
        EdgeRef { bundle, index }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    bundles: Vec<Bundle>,
    vertex_index: HashMap<String, VertexId>,
    bundle_index: HashMap<String, BundleId>,
    outgoing: Vec<Vec<BundleId>>,
    incoming: Vec<Vec<BundleId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.bundles == other.bundles
    }
}

impl Eq for Graph {}

/// Incremental construction by name. Validation happens in [`GraphBuilder::build`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    bundles: Vec<(String, String, String, Multiplicity)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(self, name: &str, source: &str, range: &str) -> Self {
        self.bundle(name, source, range, Multiplicity::ONE)
    }

    pub fn bundle(
        mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
        multiplicity: Multiplicity,
    ) -> Self {
        self.bundles
            .push((name.into(), source.into(), range.into(), multiplicity));
        self
    }

    pub fn build(self) -> Result<Graph> {
        let mut vertex_index = HashMap::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let mut bundle_index = HashMap::new();
        let mut bundles = Vec::with_capacity(self.bundles.len());
        for (i, (name, source, range, multiplicity)) in self.bundles.into_iter().enumerate() {
            if vertex_index.contains_key(&name) {
                return Err(Error::InvalidGraph(format!(
                    "bundle `{name}` shares its name with a vertex"
                )));
            }
            if bundle_index.insert(name.clone(), BundleId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate bundle `{name}`")));
            }
            if multiplicity == Multiplicity::Finite(0) {
                return Err(Error::InvalidGraph(format!(
                    "bundle `{name}` has multiplicity 0"
                )));
            }
            let source = *vertex_index
                .get(&source)
                .ok_or_else(|| Error::UnknownVertex(source.clone()))?;
            let range = *vertex_index
                .get(&range)
                .ok_or_else(|| Error::UnknownVertex(range.clone()))?;
            bundles.push(Bundle {
                name,
                source,
                range,
                multiplicity,
            });
        }
        Ok(Graph::assemble(
            self.vertices,
            bundles,
            vertex_index,
            bundle_index,
        ))
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    fn assemble(
        vertices: Vec<String>,
        bundles: Vec<Bundle>,
        vertex_index: HashMap<String, VertexId>,
        bundle_index: HashMap<String, BundleId>,
    ) -> Graph {
        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut incoming = vec![Vec::new(); vertices.len()];
        for (i, b) in bundles.iter().enumerate() {
            outgoing[b.source.0].push(BundleId(i));
            incoming[b.range.0].push(BundleId(i));
        }
        Graph {
            vertices,
            bundles,
            vertex_index,
            bundle_index,
            outgoing,
            incoming,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn bundle_count(&self) -> usize {
        self.bundles.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        names.into_iter().map(|n| self.vertex_id(n)).collect()
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<&str> {
        set.iter().map(|&v| self.vertex_name(v)).collect()
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, b: BundleId) -> &Bundle {
        &self.bundles[b.0]
    }

    pub fn bundle_ids(&self) -> impl Iterator<Item = BundleId> {
        (0..self.bundles.len()).map(BundleId)
    }

    pub fn bundle_id(&self, name: &str) -> Result<BundleId> {
        self.bundle_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownBundle(name.to_string()))
    }

    pub fn outgoing(&self, v: VertexId) -> &[BundleId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[BundleId] {
        &self.incoming[v.0]
    }

    pub fn has_omega(&self) -> bool {
        self.bundles.iter().any(|b| b.multiplicity.is_omega())
    }

    /// Total number of edges leaving `v`, with ω absorbing.
    pub fn out_degree(&self, v: VertexId) -> Multiplicity {
        self.outgoing(v)
            .iter()
            .fold(Multiplicity::Finite(0), |acc, &b| {
                acc.saturating_add(self.bundle(b).multiplicity)
            })
    }

    pub fn edge(&self, bundle: &str, index: u64) -> Result<EdgeRef> {
        let b = self.bundle_id(bundle)?;
        let e = EdgeRef::new(b, index);
        self.check_edge(e)?;
        Ok(e)
    }

    pub fn check_edge(&self, e: EdgeRef) -> Result<()> {
        let bundle = self
            .bundles
            .get(e.bundle.0)
            .ok_or_else(|| Error::UnknownBundle(format!("#{}", e.bundle.0)))?;
        if !bundle.multiplicity.admits(e.index) {
            return Err(Error::InvalidPath(format!(
                "edge index {} out of range for bundle `{}` of multiplicity {}",
                e.index, bundle.name, bundle.multiplicity
            )));
        }
        Ok(())
    }

    pub fn source(&self, e: EdgeRef) -> VertexId {
        self.bundle(e.bundle).source
    }

    pub fn range(&self, e: EdgeRef) -> VertexId {
        self.bundle(e.bundle).range
    }

    /// All edges leaving `v`, one per parallel copy.
    pub fn edges_from(&self, v: VertexId) -> Result<Vec<EdgeRef>> {
        let mut out = Vec::new();
        for &b in self.outgoing(v) {
            match self.bundle(b).multiplicity {
                Multiplicity::Finite(m) => out.extend((0..m).map(|i| EdgeRef::new(b, i))),
                Multiplicity::Omega => {
                    return Err(Error::Unsupported(format!(
                        "bundle `{}` has infinitely many edges",
                        self.bundle(b).name
                    )))
                }
            }
        }
        Ok(out)
    }

    /// All edges entering `v`, one per parallel copy.
    pub fn edges_into(&self, v: VertexId) -> Result<Vec<EdgeRef>> {
        let mut out = Vec::new();
        for &b in self.incoming(v) {
            match self.bundle(b).multiplicity {
                Multiplicity::Finite(m) => out.extend((0..m).map(|i| EdgeRef::new(b, i))),
                Multiplicity::Omega => {
                    return Err(Error::Unsupported(format!(
                        "bundle `{}` has infinitely many edges",
                        self.bundle(b).name
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Ordering key used for canonical cycle rotations.
    pub fn edge_key(&self, e: EdgeRef) -> (&str, u64) {
        (&self.bundle(e.bundle).name, e.index)
    }

    /// `name` for the only edge of a multiplicity-1 bundle, `name#i` otherwise.
    pub fn render_edge(&self, e: EdgeRef) -> String {
        let b = self.bundle(e.bundle);
        if b.multiplicity == Multiplicity::ONE && e.index == 0 {
            b.name.clone()
        } else {
            format!("{}#{}", b.name, e.index)
        }
    }

    pub fn parse_edge(&self, text: &str) -> Result<EdgeRef> {
        let (name, index) = match text.split_once('#') {
            Some((name, idx)) => {
                let index = idx
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad edge index in `{text}`")))?;
                (name, index)
            }
            None => (text, 0),
        };
        self.edge(name, index)
    }

    /// The same graph with every ω-bundle replaced by a bundle of multiplicity `m`.
    pub fn with_omega_as(&self, m: u64) -> Graph {
        let mut g = self.clone();
        for b in &mut g.bundles {
            if b.multiplicity.is_omega() {
                b.multiplicity = Multiplicity::Finite(m);
            }
        }
        g
    }

    /// The subgraph induced on `keep`, retaining bundles with both ends kept.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut builder = Graph::builder();
        for &v in keep {
            builder = builder.vertex(self.vertex_name(v));
        }
        for b in &self.bundles {
            if keep.contains(&b.source) && keep.contains(&b.range) {
                builder = builder.bundle(
                    b.name.clone(),
                    self.vertex_name(b.source),
                    self.vertex_name(b.range),
                    b.multiplicity,
                );
            }
        }
        builder
            .build()
            .expect("induced subgraph of a valid graph is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_clashing_names() {
        let err = Graph::builder()
            .vertex("u")
            .vertex("u")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
        let err = Graph::builder()
            .vertex("u")
            .edge("u", "u", "u")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
        let err = Graph::builder()
            .vertex("u")
            .edge("e", "u", "x")
            .build()
            .unwrap_err();
        assert_eq!(err, Error::UnknownVertex("x".into()));
    }

    #[test]
    fn zero_multiplicity_rejected() {
        let err = Graph::builder()
            .vertex("u")
            .bundle("e", "u", "u", Multiplicity::Finite(0))
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
    }

    #[test]
    fn edge_rendering_and_parsing() {
        let g = Graph::builder()
            .vertices(["u", "v"])
            .edge("e", "u", "v")
            .bundle("f", "u", "v", Multiplicity::Finite(3))
            .bundle("g", "v", "u", Multiplicity::Omega)
            .build()
            .unwrap();
        let e = g.edge("e", 0).unwrap();
        assert_eq!(g.render_edge(e), "e");
        let f1 = g.edge("f", 1).unwrap();
        assert_eq!(g.render_edge(f1), "f#1");
        assert_eq!(g.render_edge(g.edge("f", 0).unwrap()), "f#0");
        assert_eq!(g.parse_edge("f#1").unwrap(), f1);
        assert!(g.edge("f", 3).is_err());
        assert!(g.edge("g", 1_000_000).is_ok());
        assert_eq!(
            g.out_degree(g.vertex_id("u").unwrap()),
            Multiplicity::Finite(4)
        );
        assert_eq!(g.out_degree(g.vertex_id("v").unwrap()), Multiplicity::Omega);
    }
}
