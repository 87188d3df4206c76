//! Admissible pairs, quotient graphs and ideal graphs.
//!
//! Graded ideals of the algebra of a graph correspond to admissible pairs
//! `(H, S)`: a saturated hereditary vertex set `H` together with a subset `S`
//! of its breaking vertices. The quotient by such an ideal is again the
//! algebra of a graph, built by [`quotient`]; the ideal generated by `H` is
//! the algebra of the graph built by [`ideal_graph`].

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Multiplicity, Path, VertexId, VertexSet};

/// Largest vertex count accepted by [`enumerate_admissible_pairs`].
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    h: VertexSet,
    s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<AdmissiblePair> {
        if !g.is_hereditary(&h) || !g.is_saturated(&h) {
            return Err(Error::Contract(format!(
                "{{{}}} is not saturated hereditary",
                g.set_names(&h).join(",")
            )));
        }
        let breaking = g.breaking_vertices(&h)?;
        if let Some(&v) = s.iter().find(|v| !breaking.contains(v)) {
            return Err(Error::Contract(format!(
                "`{}` is not a breaking vertex of {{{}}}",
                g.vertex_name(v),
                g.set_names(&h).join(",")
            )));
        }
        Ok(AdmissiblePair { h, s })
    }

    pub fn empty() -> AdmissiblePair {
        AdmissiblePair {
            h: VertexSet::new(),
            s: VertexSet::new(),
        }
    }

    /// The pair `(E⁰, ∅)`, the whole algebra.
    pub fn full(g: &Graph) -> AdmissiblePair {
        AdmissiblePair {
            h: g.all_vertices(),
            s: VertexSet::new(),
        }
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    /// Containment of the corresponding ideals:
    /// `H ⊆ H'` and `S ⊆ H' ∪ S'`.
    pub fn le(&self, other: &AdmissiblePair) -> bool {
        self.h.is_subset(&other.h)
            && self
                .s
                .iter()
                .all(|v| other.h.contains(v) || other.s.contains(v))
    }

    pub fn lt(&self, other: &AdmissiblePair) -> bool {
        self != other && self.le(other)
    }

    pub fn render(&self, g: &Graph) -> String {
        format!(
            "({{{}}}, {{{}}})",
            g.set_names(&self.h).join(","),
            g.set_names(&self.s).join(",")
        )
    }
}

/// Where a vertex of a quotient graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientVertex {
    /// A vertex of the original graph outside `H`.
    Original(VertexId),
    /// The new sink standing for the gap at a breaking vertex outside `S`.
    Gap(VertexId),
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: Graph,
    /// Indexed by the quotient's vertex ids.
    pub origin: Vec<QuotientVertex>,
}

impl Quotient {
    pub fn vertex_of(&self, q: QuotientVertex) -> Option<VertexId> {
        self.origin.iter().position(|&o| o == q).map(VertexId)
    }
}

/// Hands out names not yet used in the graph under construction.
#[derive(Default)]
struct Names(HashSet<String>);

impl Names {
    fn reserve(&mut self, name: &str) {
        self.0.insert(name.to_string());
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        while self.0.contains(&name) {
            name.push('\'');
        }
        self.0.insert(name.clone());
        name
    }
}

fn check_pair(g: &Graph, p: &AdmissiblePair) -> Result<()> {
    AdmissiblePair::new(g, p.h.clone(), p.s.clone()).map(|_| ())
}

/// The graph whose algebra is the quotient by the ideal of `p`.
///
/// Vertices outside `H` are kept, and each breaking vertex `v` not in `S`
/// gains a new sink `w_v`. Bundles ranging outside `H` are kept, and each
/// bundle ranging into such a `v` gets a parallel copy `f_e` ranging into `w_v`.
pub fn quotient(g: &Graph, p: &AdmissiblePair) -> Result<Quotient> {
    check_pair(g, p)?;
    let gaps: Vec<VertexId> = g
        .breaking_unchecked(&p.h)
        .into_iter()
        .filter(|v| !p.s.contains(v))
        .collect();
    let mut names = Names::default();
    for v in g.vertices().filter(|v| !p.h.contains(v)) {
        names.reserve(g.vertex_name(v));
    }
    for b in g.bundles().iter().filter(|b| !p.h.contains(&b.range)) {
        names.reserve(&b.name);
    }
    let mut builder = Graph::builder();
    let mut origin = Vec::new();
    for v in g.vertices().filter(|v| !p.h.contains(v)) {
        builder = builder.vertex(g.vertex_name(v));
        origin.push(QuotientVertex::Original(v));
    }
    let mut gap_names = Vec::new();
    for &v in &gaps {
        let name = names.fresh(&format!("w_{}", g.vertex_name(v)));
        builder = builder.vertex(name.clone());
        origin.push(QuotientVertex::Gap(v));
        gap_names.push((v, name));
    }
    for b in g.bundles().iter().filter(|b| !p.h.contains(&b.range)) {
        builder = builder.bundle(
            b.name.clone(),
            g.vertex_name(b.source),
            g.vertex_name(b.range),
            b.multiplicity,
        );
    }
    for b in g.bundles() {
        if let Some((_, gap)) = gap_names.iter().find(|(v, _)| *v == b.range) {
            let name = names.fresh(&format!("f_{}", b.name));
            builder = builder.bundle(name, g.vertex_name(b.source), gap.clone(), b.multiplicity);
        }
    }
    Ok(Quotient {
        graph: builder.build()?,
        origin,
    })
}

pub fn quotient_graph(g: &Graph, p: &AdmissiblePair) -> Result<Graph> {
    Ok(quotient(g, p)?.graph)
}

/// The graph whose algebra is the ideal generated by the saturation of `h`.
///
/// Its vertices are the saturation `H̄` together with one vertex for each path
/// that enters `H̄` on its last edge; each such path `α` also contributes an
/// edge from the vertex `α` to `r(α)`. Fails when there are infinitely many
/// such paths.
pub fn ideal_graph(g: &Graph, h: &VertexSet) -> Result<Graph> {
    let hbar = g.saturate(h)?;
    let entering = entering_paths(g, &hbar)?;
    let mut names = Names::default();
    for &v in &hbar {
        names.reserve(g.vertex_name(v));
    }
    for b in g.bundles().iter().filter(|b| hbar.contains(&b.source)) {
        names.reserve(&b.name);
    }
    let mut builder = Graph::builder();
    for &v in &hbar {
        builder = builder.vertex(g.vertex_name(v));
    }
    let mut path_names = Vec::new();
    for p in &entering {
        let name = names.fresh(&g.render_path(p));
        builder = builder.vertex(name.clone());
        path_names.push(name);
    }
    for b in g.bundles().iter().filter(|b| hbar.contains(&b.source)) {
        builder = builder.bundle(
            b.name.clone(),
            g.vertex_name(b.source),
            g.vertex_name(b.range),
            b.multiplicity,
        );
    }
    for (p, name) in entering.iter().zip(&path_names) {
        let edge = names.fresh(&format!("~{}", g.render_path(p)));
        builder = builder.bundle(
            edge,
            name.clone(),
            g.vertex_name(p.range()),
            Multiplicity::ONE,
        );
    }
    builder.build()
}

/// Paths whose last edge enters `hbar` from outside, in path order.
pub fn entering_paths(g: &Graph, hbar: &VertexSet) -> Result<Vec<Path>> {
    let crossing: Vec<_> = g
        .bundle_ids()
        .filter(|&b| !hbar.contains(&g.bundle(b).source) && hbar.contains(&g.bundle(b).range))
        .collect();
    if let Some(&b) = crossing
        .iter()
        .find(|&&b| g.bundle(b).multiplicity.is_omega())
    {
        return Err(Error::NotFinitelyPresentable(format!(
            "ω-bundle `{}` enters the ideal",
            g.bundle(b).name
        )));
    }
    let outside: VertexSet = g.vertices().filter(|v| !hbar.contains(v)).collect();
    let feeders = g.reach_backward_within(crossing.iter().map(|&b| g.bundle(b).source), &outside);
    let on_cycle = g.vertices_on_cycles_within(&outside);
    if let Some(v) = feeders.iter().find(|&&v| on_cycle.contains(&v)) {
        return Err(Error::NotFinitelyPresentable(format!(
            "a cycle through `{}` feeds infinitely many paths into the ideal",
            g.vertex_name(*v)
        )));
    }
    if let Some(b) = g.bundles().iter().find(|b| {
        b.multiplicity.is_omega() && feeders.contains(&b.range) && outside.contains(&b.source)
    }) {
        return Err(Error::NotFinitelyPresentable(format!(
            "ω-bundle `{}` feeds infinitely many paths into the ideal",
            b.name
        )));
    }
    let mut out = Vec::new();
    for &c in &crossing {
        let bundle = g.bundle(c);
        let m = bundle.multiplicity.finite().expect("ω checked above");
        let mut heads = vec![Path::vertex(bundle.source)];
        let mut frontier = heads.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for &b in g.incoming(p.source()) {
                    let src = g.bundle(b).source;
                    if !outside.contains(&src) {
                        continue;
                    }
                    let copies = g.bundle(b).multiplicity.finite().expect("ω checked above");
                    for i in 0..copies {
                        let e = EdgeRef::new(b, i);
                        next.push(Path::edge(g, e).concat(p).expect("composable"));
                    }
                }
            }
            heads.extend(next.iter().cloned());
            frontier = next;
        }
        for head in heads {
            for i in 0..m {
                let e = Path::edge(g, EdgeRef::new(c, i));
                out.push(head.concat(&e).expect("composable"));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every admissible pair, ordered by the bit pattern of `H` and then of `S`
/// (bit `i` standing for the `i`-th declared vertex).
pub fn enumerate_admissible_pairs(g: &Graph) -> Result<Vec<AdmissiblePair>> {
    let n = g.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!(
            "{n} vertices; subset enumeration is limited to {ENUMERATION_LIMIT}"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let h: VertexSet = g.vertices().filter(|v| mask & (1 << v.0) != 0).collect();
        if !g.is_hereditary(&h) || !g.is_saturated(&h) {
            continue;
        }
        let breaking: Vec<VertexId> = g.breaking_unchecked(&h).into_iter().collect();
        for smask in 0u32..(1u32 << breaking.len()) {
            let s = breaking
                .iter()
                .enumerate()
                .filter(|(i, _)| smask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            out.push(AdmissiblePair { h: h.clone(), s });
        }
    }
    Ok(out)
}

/// Saturated hereditary subsets in the same order as
/// [`enumerate_admissible_pairs`].
pub fn saturated_hereditary_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let mut out: Vec<VertexSet> = enumerate_admissible_pairs(g)?
        .into_iter()
        .filter(|p| p.s.is_empty())
        .map(|p| p.h)
        .collect();
    out.dedup();
    Ok(out)
}
