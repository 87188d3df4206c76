//! Boundary paths, the shift map, shift-tail equivalence and the census of
//! equivalence classes.
//!
//! A boundary path is either a finite path ending at a singular vertex, or an
//! infinite path. Only eventually periodic infinite paths are representable;
//! they are stored as a minimal prefix followed by a primitive cycle that
//! starts where the prefix ends, which makes structural equality coincide
//! with equality of the underlying edge sequences.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeRef, Graph, Multiplicity, Path, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPath {
    prefix: Path,
    cycle: Option<Vec<EdgeRef>>,
}

impl BoundaryPath {
    /// A finite boundary path; its range must be singular.
    pub fn finite(g: &Graph, path: Path) -> Result<BoundaryPath> {
        if !g.is_singular(path.range()) {
            return Err(Error::InvalidPath(format!(
                "`{}` ends at the regular vertex `{}`",
                g.render_path(&path),
                g.vertex_name(path.range())
            )));
        }
        Ok(BoundaryPath {
            prefix: path,
            cycle: None,
        })
    }

    /// The infinite path `prefix · cycle · cycle · …`, normalised.
    pub fn periodic(g: &Graph, prefix: Path, cycle: Vec<EdgeRef>) -> Result<BoundaryPath> {
        let closed = Path::from_edges(g, cycle.clone())?;
        if closed.source() != closed.range() {
            return Err(Error::InvalidPath(format!(
                "`{}` is not closed",
                g.render_path(&closed)
            )));
        }
        if closed.source() != prefix.range() {
            return Err(Error::InvalidPath(format!(
                "cycle `{}` does not start at the end of `{}`",
                g.render_path(&closed),
                g.render_path(&prefix)
            )));
        }
        let mut cycle = primitive_root(cycle);
        let mut edges = prefix.edges().to_vec();
        // Absorb a trailing copy of the cycle's last edge into the cycle.
        while let (Some(&p), Some(&c)) = (edges.last(), cycle.last()) {
            if p != c {
                break;
            }
            edges.pop();
            cycle.rotate_right(1);
        }
        let prefix = if edges.is_empty() {
            Path::vertex(g.source(cycle[0]))
        } else {
            Path::from_edges(g, edges)?
        };
        Ok(BoundaryPath {
            prefix,
            cycle: Some(cycle),
        })
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn cycle(&self) -> Option<&[EdgeRef]> {
        self.cycle.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_none()
    }

    pub fn source(&self) -> VertexId {
        self.prefix.source()
    }

    /// The first `n` edges (all of them, if the path is finite and shorter).
    pub fn initial_edges(&self, n: usize) -> Vec<EdgeRef> {
        let mut out: Vec<EdgeRef> = self.prefix.edges().iter().take(n).copied().collect();
        if let Some(c) = &self.cycle {
            while out.len() < n {
                out.push(c[(out.len() - self.prefix.len()) % c.len()]);
            }
        }
        out
    }

    /// Drops the first edge. A bare singular vertex is a fixed point; a purely
    /// periodic path rotates its cycle by one step.
    pub fn shift(&self, g: &Graph) -> BoundaryPath {
        match &self.cycle {
            Some(c) if self.prefix.is_vertex() => {
                let mut c = c.clone();
                c.rotate_left(1);
                BoundaryPath {
                    prefix: Path::vertex(g.source(c[0])),
                    cycle: Some(c),
                }
            }
            _ => BoundaryPath {
                prefix: g.path_tail(&self.prefix),
                cycle: self.cycle.clone(),
            },
        }
    }

    pub fn shift_n(&self, g: &Graph, n: usize) -> BoundaryPath {
        (0..n).fold(self.clone(), |b, _| b.shift(g))
    }

    /// Whether the two paths agree after finitely many shifts on each side.
    pub fn st_equivalent(&self, other: &BoundaryPath) -> bool {
        match (&self.cycle, &other.cycle) {
            (None, None) => self.prefix.range() == other.prefix.range(),
            (Some(a), Some(b)) => is_rotation(a, b),
            _ => false,
        }
    }

    pub fn render(&self, g: &Graph) -> String {
        let prefix = g.render_path(&self.prefix);
        match &self.cycle {
            None => prefix,
            Some(c) => {
                let c: Vec<String> = c.iter().map(|&e| g.render_edge(e)).collect();
                format!("{prefix} ({})^ω", c.join(","))
            }
        }
    }
}

/// The shortest block whose repetition gives `edges`.
fn primitive_root(edges: Vec<EdgeRef>) -> Vec<EdgeRef> {
    let n = edges.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| edges[i] == edges[i - d]) {
            return edges[..d].to_vec();
        }
    }
    edges
}

fn is_rotation(a: &[EdgeRef], b: &[EdgeRef]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

/// The number of members of one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassSize {
    Finite(u64),
    CountablyInfinite,
}

impl fmt::Display for ClassSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSize::Finite(n) => write!(f, "{n}"),
            ClassSize::CountablyInfinite => f.write_str("countably infinite"),
        }
    }
}

/// The number of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(usize),
    Uncountable,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Uncountable => f.write_str("uncountable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryClass {
    pub representative: BoundaryPath,
    pub size: ClassSize,
}

/// Shift-tail classes of a graph.
///
/// With a finite cardinality the class list is exhaustive: one class per
/// singular vertex, then one per cycle. With uncountably many classes only the
/// singular-vertex classes are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub cardinality: Cardinality,
    pub classes: Vec<BoundaryClass>,
}

impl ClassCensus {
    pub fn count(&self) -> Option<usize> {
        match self.cardinality {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Uncountable => None,
        }
    }

    /// Index of the listed class containing `b`.
    pub fn class_of(&self, b: &BoundaryPath) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.representative.st_equivalent(b))
    }
}

/// Counts paths by range, honouring multiplicities, or reports that a count is
/// infinite because a cycle or an ω-bundle feeds into the vertex.
struct PathCounter<'g> {
    g: &'g Graph,
    infinite: VertexSet,
    memo: BTreeMap<VertexId, u64>,
}

impl<'g> PathCounter<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut seeds = g.vertices_on_cycles();
        seeds.extend(
            g.bundles()
                .iter()
                .filter(|b| b.multiplicity.is_omega())
                .map(|b| b.range),
        );
        PathCounter {
            g,
            infinite: g.reach_forward(seeds),
            memo: BTreeMap::new(),
        }
    }

    /// Number of paths ending at `v`, the vertex itself included.
    fn ending_at(&mut self, v: VertexId) -> Result<ClassSize> {
        if self.infinite.contains(&v) {
            return Ok(ClassSize::CountablyInfinite);
        }
        Ok(ClassSize::Finite(self.finite_ending_at(v)?))
    }

    fn finite_ending_at(&mut self, v: VertexId) -> Result<u64> {
        if let Some(&n) = self.memo.get(&v) {
            return Ok(n);
        }
        let mut total: u64 = 1;
        for &b in self.g.incoming(v) {
            let bundle = self.g.bundle(b);
            let m = bundle
                .multiplicity
                .finite()
                .expect("ω-bundles feed infinite vertices");
            let upstream = self.finite_ending_at(bundle.source)?;
            total = m
                .checked_mul(upstream)
                .and_then(|x| x.checked_add(total))
                .ok_or_else(|| Error::Overflow("counting paths".into()))?;
        }
        self.memo.insert(v, total);
        Ok(total)
    }

    /// Number of paths ending on `cycle` whose last edge is not a cycle edge.
    fn entering_cycle(&mut self, cycle: &[EdgeRef]) -> Result<ClassSize> {
        let on: HashSet<_> = cycle.iter().map(|e| e.bundle).collect();
        let mut total: u64 = 0;
        for &e in cycle {
            let v = self.g.source(e);
            total = total
                .checked_add(1)
                .ok_or_else(|| Error::Overflow("counting paths".into()))?;
            for &b in self.g.incoming(v) {
                if on.contains(&b) {
                    continue;
                }
                let bundle = self.g.bundle(b);
                let (Multiplicity::Finite(m), false) =
                    (bundle.multiplicity, self.infinite.contains(&bundle.source))
                else {
                    return Ok(ClassSize::CountablyInfinite);
                };
                let upstream = self.finite_ending_at(bundle.source)?;
                total = m
                    .checked_mul(upstream)
                    .and_then(|x| x.checked_add(total))
                    .ok_or_else(|| Error::Overflow("counting paths".into()))?;
            }
        }
        Ok(ClassSize::Finite(total))
    }
}

/// The edges of a strongly connected component that is a single cycle,
/// starting from its least vertex.
fn walk_single_cycle(g: &Graph, vertices: &VertexSet) -> Vec<EdgeRef> {
    let start = *vertices.iter().next().expect("component is nonempty");
    let mut edges = Vec::new();
    let mut at = start;
    loop {
        let b = *g
            .outgoing(at)
            .iter()
            .find(|&&b| vertices.contains(&g.bundle(b).range))
            .expect("every vertex of a cyclic component has an internal edge");
        edges.push(EdgeRef::new(b, 0));
        at = g.bundle(b).range;
        if at == start {
            return edges;
        }
    }
}

/// Classifies the shift-tail classes of `g`.
///
/// The classes are uncountable exactly when some strongly connected component
/// carries two distinct cycles; otherwise there is one class per singular
/// vertex and one per cycle.
pub fn enumerate_classes(g: &Graph) -> Result<ClassCensus> {
    let components = g.components();
    let uncountable = components
        .iter()
        .any(|c| c.is_cyclic() && c.has_two_cycles());
    let mut counter = PathCounter::new(g);
    let mut classes = Vec::new();
    for v in g.singular_vertices() {
        classes.push(BoundaryClass {
            representative: BoundaryPath::finite(g, Path::vertex(v))?,
            size: counter.ending_at(v)?,
        });
    }
    if uncountable {
        return Ok(ClassCensus {
            cardinality: Cardinality::Uncountable,
            classes,
        });
    }
    let mut cycles: Vec<Cycle> = components
        .iter()
        .filter(|c| c.is_cyclic())
        .map(|c| Cycle::canonical(g, walk_single_cycle(g, &c.vertices)))
        .collect();
    cycles.sort();
    for c in cycles {
        let base = Path::vertex(c.base(g));
        classes.push(BoundaryClass {
            size: counter.entering_cycle(c.edges())?,
            representative: BoundaryPath::periodic(g, base, c.edges().to_vec())?,
        });
    }
    Ok(ClassCensus {
        cardinality: Cardinality::Finite(classes.len()),
        classes,
    })
}

/// Number of paths ending at `v`, the bare vertex included.
pub fn paths_into(g: &Graph, v: VertexId) -> Result<ClassSize> {
    g.check_vertex(v)?;
    PathCounter::new(g).ending_at(v)
}

/// Paths of length at most `max_len` ending at `v`, using only the first
/// `omega_copies` edges of each ω-bundle.
pub fn paths_ending_at(g: &Graph, v: VertexId, max_len: usize, omega_copies: u64) -> Vec<Path> {
    let mut out = vec![Path::vertex(v)];
    let mut frontier = vec![(v, Vec::<EdgeRef>::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (head, edges) in frontier {
            for &b in g.incoming(head) {
                let bundle = g.bundle(b);
                let copies = bundle.multiplicity.finite().unwrap_or(omega_copies);
                for i in 0..copies {
                    let mut e = vec![EdgeRef::new(b, i)];
                    e.extend_from_slice(&edges);
                    next.push((bundle.source, e));
                }
            }
        }
        for (s, edges) in &next {
            out.push(Path::from_parts(*s, v, edges.clone()));
        }
        frontier = next;
    }
    out.sort();
    out
}

/// Every finite boundary path of a graph with finitely many of them.
pub fn finite_boundary_paths(g: &Graph) -> Result<Vec<BoundaryPath>> {
    let mut counter = PathCounter::new(g);
    let mut out = Vec::new();
    for v in g.singular_vertices() {
        let ClassSize::Finite(n) = counter.ending_at(v)? else {
            return Err(Error::Unsupported(format!(
                "infinitely many paths end at `{}`",
                g.vertex_name(v)
            )));
        };
        let paths = paths_ending_at(g, v, g.vertex_count(), 0);
        debug_assert_eq!(paths.len() as u64, n);
        for p in paths {
            out.push(BoundaryPath::finite(g, p)?);
        }
    }
    Ok(out)
}

/// A finite sample of boundary paths: finite ones up to length `max_len`, and
/// periodic ones whose prefix has length at most `max_len` and whose cycle is
/// a primitive closed walk of length at most `max_cycle`. Each ω-bundle
/// contributes its first `omega_copies` edges.
pub fn sample_boundary_paths(
    g: &Graph,
    max_len: usize,
    max_cycle: usize,
    omega_copies: u64,
) -> Vec<BoundaryPath> {
    let mut out = Vec::new();
    for v in g.singular_vertices() {
        for p in paths_ending_at(g, v, max_len, omega_copies) {
            out.push(BoundaryPath::finite(g, p).expect("range is singular"));
        }
    }
    for v in g.vertices() {
        for walk in paths_ending_at(g, v, max_cycle, omega_copies) {
            if walk.is_vertex() || walk.source() != v {
                continue;
            }
            for prefix in paths_ending_at(g, v, max_len, omega_copies) {
                out.push(
                    BoundaryPath::periodic(g, prefix, walk.edges().to_vec())
                        .expect("walk is closed at the prefix range"),
                );
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sizes(c: &ClassCensus) -> Vec<ClassSize> {
        c.classes.iter().map(|c| c.size).collect()
    }

    #[test]
    fn shift_examples() {
        let g = fixtures::line3();
        let w = BoundaryPath::finite(&g, g.parse_path("w").unwrap()).unwrap();
        assert_eq!(w.shift(&g), w);
        let ef = BoundaryPath::finite(&g, g.parse_path("e,f").unwrap()).unwrap();
        assert_eq!(
            ef.shift(&g),
            BoundaryPath::finite(&g, g.parse_path("f").unwrap()).unwrap()
        );
        let g = fixtures::loop1();
        let e = g.edge("e", 0).unwrap();
        let p = BoundaryPath::periodic(&g, g.parse_path("v").unwrap(), vec![e]).unwrap();
        assert_eq!(p.shift(&g), p);
    }

    #[test]
    fn finite_paths_need_singular_range() {
        let g = fixtures::line3();
        assert!(BoundaryPath::finite(&g, g.parse_path("e").unwrap()).is_err());
    }

    #[test]
    fn periodic_normalisation() {
        let g = fixtures::loop1();
        let e = g.edge("e", 0).unwrap();
        let long = BoundaryPath::periodic(&g, g.parse_path("e,e").unwrap(), vec![e, e, e]).unwrap();
        assert!(long.prefix().is_vertex());
        assert_eq!(long.cycle().unwrap(), &[e]);

        let g = Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b")
            .edge("y", "b", "a")
            .edge("z", "c", "b")
            .build()
            .unwrap();
        let (x, y, z) = (
            g.edge("x", 0).unwrap(),
            g.edge("y", 0).unwrap(),
            g.edge("z", 0).unwrap(),
        );
        // z,y,x,y,x,... with the prefix z,y,x written out.
        let p = BoundaryPath::periodic(&g, g.parse_path("z,y,x").unwrap(), vec![y, x]).unwrap();
        assert_eq!(p.prefix(), &g.parse_path("z").unwrap());
        assert_eq!(p.cycle().unwrap(), &[y, x]);
        assert_eq!(p.initial_edges(5), vec![z, y, x, y, x]);
        let shifted = p.shift(&g);
        assert!(shifted.prefix().is_vertex());
        assert_eq!(shifted.shift(&g).cycle().unwrap(), &[x, y]);
    }

    #[test]
    fn equivalence_examples() {
        let g = fixtures::fork();
        let v = BoundaryPath::finite(&g, g.parse_path("v").unwrap()).unwrap();
        let e = BoundaryPath::finite(&g, g.parse_path("e").unwrap()).unwrap();
        let w = BoundaryPath::finite(&g, g.parse_path("w").unwrap()).unwrap();
        assert!(v.st_equivalent(&e));
        assert!(!v.st_equivalent(&w));
        let g = fixtures::rose2();
        let base = g.parse_path("v").unwrap();
        let a = BoundaryPath::periodic(&g, base.clone(), vec![g.edge("e", 0).unwrap()]).unwrap();
        let b = BoundaryPath::periodic(&g, base, vec![g.edge("f", 0).unwrap()]).unwrap();
        assert!(!a.st_equivalent(&b));
    }

    #[test]
    fn census_of_fixtures() {
        let c = enumerate_classes(&fixtures::loop1()).unwrap();
        assert_eq!(c.cardinality, Cardinality::Finite(1));
        assert!(!c.classes[0].representative.is_finite());
        assert_eq!(sizes(&c), [ClassSize::Finite(1)]);

        assert_eq!(
            enumerate_classes(&fixtures::rose2()).unwrap().cardinality,
            Cardinality::Uncountable
        );

        let c = enumerate_classes(&fixtures::fork()).unwrap();
        assert_eq!(c.cardinality, Cardinality::Finite(2));
        assert_eq!(sizes(&c), [ClassSize::Finite(2), ClassSize::Finite(2)]);

        let c = enumerate_classes(&fixtures::line3()).unwrap();
        assert_eq!(sizes(&c), [ClassSize::Finite(3)]);

        let c = enumerate_classes(&fixtures::omega2()).unwrap();
        assert_eq!(c.cardinality, Cardinality::Finite(3));
        let g = fixtures::omega2();
        let names: Vec<_> = c
            .classes
            .iter()
            .map(|c| c.representative.render(&g))
            .collect();
        assert_eq!(names, ["v", "w", "u"]);
        assert_eq!(
            sizes(&c),
            [
                ClassSize::Finite(1),
                ClassSize::CountablyInfinite,
                ClassSize::Finite(2)
            ]
        );
    }

    #[test]
    fn cycle_class_sizes() {
        // a -> loop vertex l, l -> sink s.
        let g = Graph::builder()
            .vertices(["a", "l", "s"])
            .edge("x", "a", "l")
            .edge("y", "l", "l")
            .edge("z", "l", "s")
            .build()
            .unwrap();
        let c = enumerate_classes(&g).unwrap();
        assert_eq!(c.cardinality, Cardinality::Finite(2));
        // Sink s sees paths through the loop: infinitely many.
        assert_eq!(c.classes[0].size, ClassSize::CountablyInfinite);
        // Tail y^ω: l y y ... and x y y ...
        assert_eq!(c.classes[1].size, ClassSize::Finite(2));
    }

    #[test]
    fn finite_boundary_paths_of_fork() {
        let g = fixtures::fork();
        let all = finite_boundary_paths(&g).unwrap();
        let names: Vec<_> = all.iter().map(|b| b.render(&g)).collect();
        assert_eq!(names, ["v", "e", "w", "f"]);
        assert!(finite_boundary_paths(&fixtures::omega()).is_err());
    }

    #[test]
    fn samples_are_canonical() {
        let g = fixtures::rose2();
        let sample = sample_boundary_paths(&g, 2, 2, 2);
        for b in &sample {
            let rebuilt =
                BoundaryPath::periodic(&g, b.prefix().clone(), b.cycle().unwrap().to_vec())
                    .unwrap();
            assert_eq!(&rebuilt, b);
        }
        // Primitive closed walks of length ≤ 2 at v: e, f, ef, fe (ef ~ fe).
        let tails: HashSet<Vec<EdgeRef>> = sample
            .iter()
            .filter(|b| b.prefix().is_vertex())
            .map(|b| b.cycle().unwrap().to_vec())
            .collect();
        assert_eq!(tails.len(), 4);
    }
}
