use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{BundleId, EdgeRef, Graph, Multiplicity, Path, VertexId, VertexSet};
use crate::error::{Error, Result};

/// Upper bound on the number of simple cycles materialised at once.
const CYCLE_LIMIT: usize = 1 << 20;

/// A simple cycle, stored in its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<EdgeRef>,
}

impl Cycle {
    /// Wraps a closed edge sequence and rotates it into canonical position.
    pub fn canonical(g: &Graph, edges: Vec<EdgeRef>) -> Cycle {
        let n = edges.len();
        let best = (0..n)
            .min_by(|&i, &j| {
                let a = (0..n).map(|k| g.edge_key(edges[(i + k) % n]));
                let b = (0..n).map(|k| g.edge_key(edges[(j + k) % n]));
                a.cmp(b)
            })
            .unwrap_or(0);
        let mut edges = edges;
        edges.rotate_left(best);
        Cycle { edges }
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn base(&self, g: &Graph) -> VertexId {
        g.source(self.edges[0])
    }

    pub fn as_path(&self, g: &Graph) -> Path {
        let base = self.base(g);
        Path::from_parts(base, base, self.edges.clone())
    }
}

/// A strongly connected component together with the number of edges
/// (parallel copies counted, ω absorbing) running inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    pub internal_edges: Multiplicity,
}

impl Component {
    /// Whether the component carries at least one cycle.
    pub fn is_cyclic(&self) -> bool {
        self.internal_edges != Multiplicity::Finite(0)
    }

    /// A cyclic strongly connected multigraph is a single cycle exactly when
    /// it has as many edges as vertices; anything more yields two distinct
    /// simple cycles through a common vertex.
    pub fn has_two_cycles(&self) -> bool {
        match self.internal_edges {
            Multiplicity::Omega => true,
            Multiplicity::Finite(m) => m > self.vertices.len() as u64,
        }
    }
}

impl Graph {
    fn skeleton(&self) -> DiGraph<(), BundleId> {
        let mut dg = DiGraph::with_capacity(self.vertex_count(), self.bundle_count());
        for _ in self.vertices() {
            dg.add_node(());
        }
        for id in self.bundle_ids() {
            let b = self.bundle(id);
            dg.add_edge(NodeIndex::new(b.source.0), NodeIndex::new(b.range.0), id);
        }
        dg
    }

    /// Strongly connected components, ordered by their least vertex.
    pub fn components(&self) -> Vec<Component> {
        let dg = self.skeleton();
        let mut comps: Vec<VertexSet> = tarjan_scc(&dg)
            .into_iter()
            .map(|c| c.into_iter().map(|n| VertexId(n.index())).collect())
            .collect();
        comps.sort_by_key(|c: &VertexSet| *c.iter().next().expect("components are nonempty"));
        comps
            .into_iter()
            .map(|vertices| {
                let internal_edges = self
                    .bundles()
                    .iter()
                    .filter(|b| vertices.contains(&b.source) && vertices.contains(&b.range))
                    .fold(Multiplicity::Finite(0), |acc, b| {
                        acc.saturating_add(b.multiplicity)
                    });
                Component {
                    vertices,
                    internal_edges,
                }
            })
            .collect()
    }

    pub fn vertices_on_cycles(&self) -> VertexSet {
        self.components()
            .into_iter()
            .filter(Component::is_cyclic)
            .flat_map(|c| c.vertices)
            .collect()
    }

    /// Vertices lying on a cycle that stays inside `within`.
    pub(crate) fn vertices_on_cycles_within(&self, within: &VertexSet) -> VertexSet {
        self.induced(within)
            .vertices_on_cycles()
            .into_iter()
            .map(|v| {
                *within
                    .iter()
                    .nth(v.0)
                    .expect("induced keeps declaration order")
            })
            .collect()
    }

    pub fn has_cycle(&self) -> bool {
        self.components().iter().any(Component::is_cyclic)
    }

    /// Bundles whose source and range share a cyclic component.
    pub(crate) fn cycle_bundles(&self) -> Vec<BundleId> {
        let comps = self.components();
        let mut comp_of = vec![usize::MAX; self.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for v in &c.vertices {
                comp_of[v.0] = i;
            }
        }
        self.bundle_ids()
            .filter(|&id| {
                let b = self.bundle(id);
                comp_of[b.source.0] == comp_of[b.range.0]
            })
            .collect()
    }

    /// Every simple cycle (no repeated vertex), parallel edges counted as
    /// distinct, each in its least rotation under (bundle name, index).
    ///
    /// A cycle through an ω-bundle comes in infinitely many parallel copies,
    /// so that case is reported as unsupported.
    pub fn simple_cycles(&self) -> Result<Vec<Cycle>> {
        if let Some(&b) = self
            .cycle_bundles()
            .iter()
            .find(|&&b| self.bundle(b).multiplicity.is_omega())
        {
            return Err(Error::Unsupported(format!(
                "ω-bundle `{}` lies on a cycle, so there are infinitely many simple cycles",
                self.bundle(b).name
            )));
        }
        let mut bundle_cycles = Vec::new();
        for start in self.vertices() {
            let mut stack = vec![start];
            let mut trail = Vec::new();
            self.circuits_from(start, &mut stack, &mut trail, &mut bundle_cycles)?;
        }
        let mut out = Vec::new();
        for bundles in bundle_cycles {
            self.expand_parallel(&bundles, &mut Vec::new(), &mut out)?;
        }
        out.sort();
        Ok(out)
    }

    /// Circuits whose least vertex is `start`, as bundle sequences.
    fn circuits_from(
        &self,
        start: VertexId,
        stack: &mut Vec<VertexId>,
        trail: &mut Vec<BundleId>,
        found: &mut Vec<Vec<BundleId>>,
    ) -> Result<()> {
        let here = *stack.last().expect("stack holds the start vertex");
        for &b in self.outgoing(here) {
            let next = self.bundle(b).range;
            if next == start {
                trail.push(b);
                found.push(trail.clone());
                trail.pop();
                if found.len() > CYCLE_LIMIT {
                    return Err(Error::TooLarge("more than 2^20 simple cycles".into()));
                }
            } else if next > start && !stack.contains(&next) {
                stack.push(next);
                trail.push(b);
                self.circuits_from(start, stack, trail, found)?;
                trail.pop();
                stack.pop();
            }
        }
        Ok(())
    }

    fn expand_parallel(
        &self,
        bundles: &[BundleId],
        prefix: &mut Vec<EdgeRef>,
        out: &mut Vec<Cycle>,
    ) -> Result<()> {
        let Some((&b, rest)) = bundles.split_first() else {
            out.push(Cycle::canonical(self, prefix.clone()));
            return if out.len() > CYCLE_LIMIT {
                Err(Error::TooLarge("more than 2^20 simple cycles".into()))
            } else {
                Ok(())
            };
        };
        let m = self
            .bundle(b)
            .multiplicity
            .finite()
            .expect("ω-bundles on cycles are rejected earlier");
        for i in 0..m {
            prefix.push(EdgeRef::new(b, i));
            self.expand_parallel(rest, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    pub fn render_cycle(&self, c: &Cycle) -> String {
        c.edges()
            .iter()
            .map(|&e| self.render_edge(e))
            .collect::<Vec<_>>()
            .join(",")
    }
}
