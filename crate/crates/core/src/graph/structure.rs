use std::collections::VecDeque;

use super::{Graph, Multiplicity, VertexId, VertexSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Regular,
    Sink,
    InfiniteEmitter,
}

impl VertexClass {
    pub fn is_singular(self) -> bool {
        !matches!(self, VertexClass::Regular)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::Regular => "regular",
            VertexClass::Sink => "sink",
            VertexClass::InfiniteEmitter => "infinite emitter",
        }
    }
}

impl Graph {
    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn classify_vertex(&self, v: VertexId) -> Result<VertexClass> {
        self.check_vertex(v)?;
        Ok(self.class_of(v))
    }

    pub fn class_of(&self, v: VertexId) -> VertexClass {
        match self.out_degree(v) {
            Multiplicity::Finite(0) => VertexClass::Sink,
            Multiplicity::Finite(_) => VertexClass::Regular,
            Multiplicity::Omega => VertexClass::InfiniteEmitter,
        }
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.class_of(v) == VertexClass::Regular
    }

    pub fn is_singular(&self, v: VertexId) -> bool {
        self.class_of(v).is_singular()
    }

    pub fn sinks(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.class_of(v) == VertexClass::Sink)
            .collect()
    }

    pub fn singular_vertices(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_singular(v)).collect()
    }

    /// Everything reachable from `v` by a path, `v` included.
    pub fn tree_of(&self, v: VertexId) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.reach_forward([v]))
    }

    pub fn reach_forward(&self, start: impl IntoIterator<Item = VertexId>) -> VertexSet {
        self.reach(start, |g, v| {
            g.outgoing(v).iter().map(|&b| g.bundle(b).range).collect()
        })
    }

    /// Everything that reaches some vertex of `start`, the start included.
    pub(crate) fn reach_backward(&self, start: impl IntoIterator<Item = VertexId>) -> VertexSet {
        self.reach(start, |g, v| {
            g.incoming(v).iter().map(|&b| g.bundle(b).source).collect()
        })
    }

    /// Like `reach_backward`, but only stepping through vertices of `within`.
    pub(crate) fn reach_backward_within(
        &self,
        start: impl IntoIterator<Item = VertexId>,
        within: &VertexSet,
    ) -> VertexSet {
        self.reach(start, |g, v| {
            g.incoming(v)
                .iter()
                .map(|&b| g.bundle(b).source)
                .filter(|s| within.contains(s))
                .collect()
        })
    }

    fn reach(
        &self,
        start: impl IntoIterator<Item = VertexId>,
        step: impl Fn(&Graph, VertexId) -> Vec<VertexId>,
    ) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for v in start {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in step(self, v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_hereditary(&self, h: &VertexSet) -> bool {
        self.bundles()
            .iter()
            .all(|b| !h.contains(&b.source) || h.contains(&b.range))
    }

    fn lands_in(&self, v: VertexId, h: &VertexSet) -> bool {
        self.outgoing(v)
            .iter()
            .all(|&b| h.contains(&self.bundle(b).range))
    }

    pub fn is_saturated(&self, h: &VertexSet) -> bool {
        self.vertices()
            .all(|v| h.contains(&v) || !self.is_regular(v) || !self.lands_in(v, h))
    }

    /// The chain `H₀ ⊊ H₁ ⊊ … ⊊ Hₙ = H̄`, where each step adds every regular
    /// vertex all of whose edges land in the previous set.
    pub fn saturation_chain(&self, h: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(h)?;
        if !self.is_hereditary(h) {
            return Err(Error::Contract(format!(
                "{{{}}} is not hereditary",
                self.set_names(h).join(",")
            )));
        }
        let mut chain = vec![h.clone()];
        loop {
            let current = chain.last().expect("chain is nonempty");
            let added: Vec<VertexId> = self
                .vertices()
                .filter(|v| {
                    !current.contains(v) && self.is_regular(*v) && self.lands_in(*v, current)
                })
                .collect();
            if added.is_empty() {
                return Ok(chain);
            }
            let mut next = current.clone();
            next.extend(added);
            chain.push(next);
        }
    }

    pub fn saturate(&self, h: &VertexSet) -> Result<VertexSet> {
        Ok(self.saturation_chain(h)?.pop().expect("chain is nonempty"))
    }

    /// Infinite emitters outside `h` with finitely many, but at least one,
    /// edges into the complement of `h`.
    ///
    /// Only heredity of `h` is required; admissible pairs additionally ask
    /// for saturation.
    pub fn breaking_vertices(&self, h: &VertexSet) -> Result<VertexSet> {
        self.check_set(h)?;
        if !self.is_hereditary(h) {
            return Err(Error::Contract(format!(
                "{{{}}} is not hereditary",
                self.set_names(h).join(",")
            )));
        }
        Ok(self.breaking_unchecked(h))
    }

    pub(crate) fn breaking_unchecked(&self, h: &VertexSet) -> VertexSet {
        self.vertices()
            .filter(|&v| self.is_singular(v))
            .filter(|&v| match self.escaping(v, h) {
                Multiplicity::Finite(n) => n > 0,
                Multiplicity::Omega => false,
            })
            .collect()
    }

    /// Number of edges from `v` into the complement of `h`.
    pub fn escaping(&self, v: VertexId, h: &VertexSet) -> Multiplicity {
        self.outgoing(v)
            .iter()
            .map(|&b| self.bundle(b))
            .filter(|b| !h.contains(&b.range))
            .fold(Multiplicity::Finite(0), |acc, b| {
                acc.saturating_add(b.multiplicity)
            })
    }

    /// Vertices whose tree has no bifurcation (out-degree ≥ 2, with ω counted
    /// as ≥ 2) and meets no cycle.
    pub fn line_points(&self) -> VertexSet {
        let on_cycle = self.vertices_on_cycles();
        let bad: VertexSet = self
            .vertices()
            .filter(|&v| {
                on_cycle.contains(&v) || !matches!(self.out_degree(v), Multiplicity::Finite(0 | 1))
            })
            .collect();
        // v is a line point iff no bad vertex is reachable from it.
        let tainted = self.reach_backward(bad.iter().copied());
        self.vertices().filter(|v| !tainted.contains(v)).collect()
    }

    pub fn is_line_point(&self, v: VertexId) -> bool {
        self.line_points().contains(&v)
    }

    pub fn downward_directed(&self) -> bool {
        let trees: Vec<VertexSet> = self.vertices().map(|v| self.reach_forward([v])).collect();
        trees
            .iter()
            .enumerate()
            .all(|(i, a)| trees[i + 1..].iter().all(|b| !a.is_disjoint(b)))
    }
}
