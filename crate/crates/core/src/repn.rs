//! The boundary-path representation and matrix-unit systems.
//!
//! For an acyclic graph without infinite emitters the boundary paths are the
//! finitely many paths ending at sinks. The algebra acts on the rational
//! vector space with these paths as basis: `s_e` prepends `e`, `s_e*` strips a
//! leading `e`, and `p_v` keeps the paths starting at `v`. Columns of every
//! generator matrix are images of basis vectors.

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;

use crate::boundary::{finite_boundary_paths, BoundaryPath};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, Graph, Path, VertexId, VertexSet};
use crate::ideal::entering_paths;
use crate::linalg::{
    format_rational, intertwiner_dim, invariant_closure, Matrix, Rational, SparseRow,
};
use crate::lpa::{normal_form, Element, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Edge(EdgeRef),
    EdgeStar(EdgeRef),
    Vertex(VertexId),
}

impl Generator {
    pub fn render(&self, g: &Graph) -> String {
        match self {
            Generator::Edge(e) => format!("s_{}", g.render_edge(*e)),
            Generator::EdgeStar(e) => format!("s_{}*", g.render_edge(*e)),
            Generator::Vertex(v) => format!("p_{}", g.vertex_name(*v)),
        }
    }
}

/// One summand of the representation: the span of a shift-tail class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub representative: BoundaryPath,
    /// Basis indices, increasing.
    pub indices: Vec<usize>,
}

impl Block {
    pub fn dimension(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Debug, Clone)]
pub struct RepnMatrices {
    graph: Graph,
    basis: Vec<Path>,
    position: HashMap<Path, usize>,
    generators: Vec<(Generator, Matrix)>,
    blocks: Vec<Block>,
}

fn require_finite_acyclic(g: &Graph) -> Result<()> {
    if g.has_omega() {
        return Err(Error::Unsupported("graph has an infinite emitter".into()));
    }
    if g.has_cycle() {
        return Err(Error::Unsupported("graph has a cycle".into()));
    }
    Ok(())
}

/// Realises the boundary-path representation by exact 0/1 matrices.
pub fn build_rho(g: &Graph) -> Result<RepnMatrices> {
    require_finite_acyclic(g)?;
    let boundary = finite_boundary_paths(g)?;
    let blocks = partition(&boundary);
    let basis: Vec<Path> = boundary.iter().map(|b| b.prefix().clone()).collect();
    let position: HashMap<Path, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let n = basis.len();
    let one = Rational::one;
    let mut generators = Vec::new();
    let edges: Vec<EdgeRef> = g
        .vertices()
        .map(|v| g.edges_from(v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let mut edges = edges;
    edges.sort();
    for &e in &edges {
        let front = Path::edge(g, e);
        let triples = basis.iter().enumerate().filter_map(|(j, p)| {
            let image = front.concat(p).ok()?;
            Some((position[&image], j, one()))
        });
        generators.push((Generator::Edge(e), Matrix::from_triples(n, n, triples)));
    }
    for &e in &edges {
        let front = Path::edge(g, e);
        let triples = basis.iter().enumerate().filter_map(|(j, p)| {
            let image = p.strip_prefix(&front)?;
            Some((position[&image], j, one()))
        });
        generators.push((Generator::EdgeStar(e), Matrix::from_triples(n, n, triples)));
    }
    for v in g.vertices() {
        let triples = basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.source() == v)
            .map(|(j, _)| (j, j, one()));
        generators.push((Generator::Vertex(v), Matrix::from_triples(n, n, triples)));
    }
    Ok(RepnMatrices {
        graph: g.clone(),
        basis,
        position,
        generators,
        blocks,
    })
}

/// Groups boundary paths into shift-tail classes, keeping first-seen order.
fn partition(paths: &[BoundaryPath]) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, b) in paths.iter().enumerate() {
        match blocks
            .iter_mut()
            .find(|blk| blk.representative.st_equivalent(b))
        {
            Some(blk) => blk.indices.push(i),
            None => blocks.push(Block {
                representative: b.clone(),
                indices: vec![i],
            }),
        }
    }
    blocks
}

/// Outcome of the orbit test on a set of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    /// For each basis index of the block, the spanning vectors reached from it.
    pub orbits: Vec<(usize, Vec<SparseRow>)>,
}

impl RepnMatrices {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.position.get(p).copied()
    }

    pub fn generators(&self) -> &[(Generator, Matrix)] {
        &self.generators
    }

    pub fn generator(&self, which: Generator) -> &Matrix {
        &self
            .generators
            .iter()
            .find(|(g, _)| *g == which)
            .expect("every generator has a matrix")
            .1
    }

    pub fn edge(&self, e: EdgeRef) -> &Matrix {
        self.generator(Generator::Edge(e))
    }

    pub fn edge_star(&self, e: EdgeRef) -> &Matrix {
        self.generator(Generator::EdgeStar(e))
    }

    pub fn vertex(&self, v: VertexId) -> &Matrix {
        self.generator(Generator::Vertex(v))
    }

    /// The image of an algebra element, built from generator products.
    pub fn evaluate(&self, x: &Element) -> Result<Matrix> {
        let n = self.dimension();
        let mut out = Matrix::zeros(n, n);
        for (m, q) in x.terms() {
            let a = self.path_matrix(m.alpha())?;
            let b = self.path_star_matrix(m.beta())?;
            out = out.add(&a.mul(&b).scale(q));
        }
        Ok(out)
    }

    fn check_path(&self, p: &Path) -> Result<()> {
        let g = &self.graph;
        let foreign = || Error::Contract("element is not over this graph".into());
        g.check_vertex(p.source()).map_err(|_| foreign())?;
        if !p.is_vertex() {
            let rebuilt = Path::from_edges(g, p.edges().to_vec()).map_err(|_| foreign())?;
            if &rebuilt != p {
                return Err(foreign());
            }
        }
        Ok(())
    }

    fn path_matrix(&self, p: &Path) -> Result<Matrix> {
        self.check_path(p)?;
        if p.is_vertex() {
            return Ok(self.vertex(p.source()).clone());
        }
        let mut acc = self.edge(p.edges()[0]).clone();
        for &e in &p.edges()[1..] {
            acc = acc.mul(self.edge(e));
        }
        Ok(acc)
    }

    fn path_star_matrix(&self, p: &Path) -> Result<Matrix> {
        self.check_path(p)?;
        if p.is_vertex() {
            return Ok(self.vertex(p.source()).clone());
        }
        let edges = p.edges();
        let mut acc = self.edge_star(edges[edges.len() - 1]).clone();
        for &e in edges[..edges.len() - 1].iter().rev() {
            acc = acc.mul(self.edge_star(e));
        }
        Ok(acc)
    }

    /// Plain-text dump: a header naming the basis paths, then for each
    /// generator a comment line and its dense rows of exact rationals.
    pub fn dump(&self) -> String {
        let g = &self.graph;
        let basis: Vec<String> = self.basis.iter().map(|p| g.render_path(p)).collect();
        let mut out = format!("# basis: {}\n", basis.join(" "));
        for (gen, m) in &self.generators {
            out.push_str(&format!("# generator {}\n", gen.render(g)));
            for row in m.dense_rows() {
                let row: Vec<String> = row.iter().map(format_rational).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Blocks of the representation, one per shift-tail class.
    pub fn decompose_blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Whether every generator maps each block into itself.
    pub fn is_block_diagonal(&self) -> bool {
        let mut block_of = vec![usize::MAX; self.dimension()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in &b.indices {
                block_of[i] = k;
            }
        }
        self.generators
            .iter()
            .all(|(_, m)| m.entries().all(|(r, c, _)| block_of[r] == block_of[c]))
    }

    /// Checks that the orbit of every basis vector in `indices` spans exactly
    /// the span of `indices`.
    pub fn verify_irreducible(&self, indices: &[usize]) -> IrreducibilityCertificate {
        let ops: Vec<&Matrix> = self.generators.iter().map(|(_, m)| m).collect();
        let mut irreducible = !indices.is_empty();
        let mut orbits = Vec::new();
        for &i in indices {
            let span = invariant_closure(&ops, vec![(i, Rational::one())]);
            let inside = span
                .iter()
                .all(|v| v.iter().all(|(c, _)| indices.binary_search(c).is_ok()));
            if !inside || span.len() != indices.len() {
                irreducible = false;
            }
            orbits.push((i, span));
        }
        IrreducibilityCertificate {
            irreducible,
            orbits,
        }
    }

    pub fn verify_irreducible_block(&self, block: usize) -> IrreducibilityCertificate {
        self.verify_irreducible(&self.blocks[block].indices)
    }

    /// Dimension of the space of module maps from block `a` to block `b`.
    pub fn hom_space_dim(&self, a: usize, b: usize) -> usize {
        let ia = &self.blocks[a].indices;
        let ib = &self.blocks[b].indices;
        let restricted: Vec<(Matrix, Matrix)> = self
            .generators
            .iter()
            .map(|(_, m)| (m.restrict(ia, ia), m.restrict(ib, ib)))
            .collect();
        let pairs: Vec<(&Matrix, &Matrix)> = restricted.iter().map(|(x, y)| (x, y)).collect();
        intertwiner_dim(&pairs, ia.len(), ib.len())
    }

    /// Every relation between generator matrices that defines the algebra;
    /// returns a description of the first failure.
    pub fn check_relations(&self) -> std::result::Result<(), String> {
        let g = &self.graph;
        let n = self.dimension();
        let zero = Matrix::zeros(n, n);
        for v in g.vertices() {
            for w in g.vertices() {
                let prod = self.vertex(v).mul(self.vertex(w));
                let expected = if v == w { self.vertex(v) } else { &zero };
                if &prod != expected {
                    return Err(format!(
                        "p_{} p_{} is wrong",
                        g.vertex_name(v),
                        g.vertex_name(w)
                    ));
                }
            }
        }
        let edges: Vec<EdgeRef> = self
            .generators
            .iter()
            .filter_map(|(gen, _)| match gen {
                Generator::Edge(e) => Some(*e),
                _ => None,
            })
            .collect();
        for &e in &edges {
            let se = self.edge(e);
            let ps = self.vertex(g.source(e));
            let pr = self.vertex(g.range(e));
            if &ps.mul(se) != se || &se.mul(pr) != se {
                return Err(format!(
                    "s_{} is not framed by its end projections",
                    g.render_edge(e)
                ));
            }
            let st = self.edge_star(e);
            if &pr.mul(st) != st || &st.mul(ps) != st {
                return Err(format!(
                    "s_{}* is not framed by its end projections",
                    g.render_edge(e)
                ));
            }
            for &f in &edges {
                let prod = st.mul(self.edge(f));
                let expected = if e == f { pr } else { &zero };
                if &prod != expected {
                    return Err(format!(
                        "s_{}* s_{} is wrong",
                        g.render_edge(e),
                        g.render_edge(f)
                    ));
                }
            }
        }
        for v in g.vertices().filter(|&v| g.is_regular(v)) {
            let mut sum = Matrix::zeros(n, n);
            for e in g.edges_from(v).map_err(|e| e.to_string())? {
                sum = sum.add(&self.edge(e).mul(self.edge_star(e)));
            }
            if &sum != self.vertex(v) {
                return Err(format!(
                    "p_{} is not the sum of its edge projections",
                    g.vertex_name(v)
                ));
            }
        }
        Ok(())
    }
}

/// Matrix units indexed by the paths that first reach the tree of a line
/// point: the vertices of the tree itself and the paths entering it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixUnitSystem {
    pub line_point: VertexId,
    /// The tree of the line point, listed along the line.
    pub line: Vec<VertexId>,
    pub index: Vec<Path>,
    units: Vec<Vec<Monomial>>,
}

/// Builds the matrix units attached to the line point `v`.
///
/// With the tree of `v` written as a line `w_0 = v → w_1 → … → w_n` and
/// `μ(i, j)` the path from `w_i` to `w_j`, the unit for `(α, β)` with
/// `r(α) = w_i`, `r(β) = w_j` is `s_{αμ(i,j)} s_β*` when `i ≤ j` and
/// `s_α s_{βμ(j,i)}*` otherwise.
pub fn matrix_units(g: &Graph, v: VertexId) -> Result<MatrixUnitSystem> {
    g.check_vertex(v)?;
    if !g.is_line_point(v) {
        return Err(Error::Contract(format!(
            "`{}` is not a line point",
            g.vertex_name(v)
        )));
    }
    let mut line_edges: Vec<EdgeRef> = Vec::new();
    let mut line = vec![v];
    let mut at = v;
    while let Some(&b) = g.outgoing(at).first() {
        line_edges.push(EdgeRef::new(b, 0));
        at = g.bundle(b).range;
        line.push(at);
    }
    let tree: VertexSet = line.iter().copied().collect();
    let entering = entering_paths(g, &tree).map_err(|e| match e {
        Error::NotFinitelyPresentable(m) => Error::Unsupported(format!("infinite index set: {m}")),
        other => other,
    })?;
    let mut index: Vec<Path> = line.iter().map(|&w| Path::vertex(w)).collect();
    index.extend(entering);
    let pos = |w: VertexId| {
        line.iter()
            .position(|&x| x == w)
            .expect("range lies on the line")
    };
    let connector = |i: usize, j: usize| -> Path {
        if i == j {
            Path::vertex(line[i])
        } else {
            Path::from_edges(g, line_edges[i..j].to_vec()).expect("line edges compose")
        }
    };
    let units = index
        .iter()
        .map(|a| {
            index
                .iter()
                .map(|b| {
                    let (i, j) = (pos(a.range()), pos(b.range()));
                    let (alpha, beta) = if i <= j {
                        (a.concat(&connector(i, j)).expect("composable"), b.clone())
                    } else {
                        (a.clone(), b.concat(&connector(j, i)).expect("composable"))
                    };
                    Monomial::new(alpha, beta).expect("both end at the line's far end")
                })
                .collect()
        })
        .collect();
    Ok(MatrixUnitSystem {
        line_point: v,
        line,
        index,
        units,
    })
}

impl MatrixUnitSystem {
    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn unit(&self, a: usize, b: usize) -> Element {
        self.units[a][b].clone().into()
    }

    /// Normal forms of every unit, row by row.
    pub fn normal_forms(&self, g: &Graph) -> Result<Vec<Vec<Element>>> {
        self.units
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| normal_form(g, &m.clone().into()))
                    .collect()
            })
            .collect()
    }

    /// Checks `e_ab e_cd = δ_bc e_ad` and `e_ab* = e_ba` in normal form.
    ///
    /// Normal forms live in the span of monomials ending at sinks, which is
    /// closed under products, so products of normal forms are normal forms.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let nf = self.normal_forms(g)?;
        let k = self.size();
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        for (a, row) in nf.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if x.star() != nf[b][a] {
                    return fail(format!("unit ({a},{b}) is not adjoint to ({b},{a})"));
                }
            }
        }
        let bad = (0..k).into_par_iter().find_first(|&a| {
            (0..k).any(|b| {
                (0..k).any(|c| {
                    (0..k).any(|d| {
                        let prod = nf[a][b].mul(&nf[c][d]);
                        if b == c {
                            prod != nf[a][d]
                        } else {
                            !prod.is_zero()
                        }
                    })
                })
            })
        });
        match bad {
            Some(a) => fail(format!(
                "a product of units in row {a} breaks the unit relations"
            )),
            None => Ok(()),
        }
    }

    /// Like [`MatrixUnitSystem::verify`], but normalising every product from
    /// scratch instead of relying on closure of the sink basis.
    pub fn verify_literally(&self, g: &Graph) -> Result<()> {
        let k = self.size();
        for a in 0..k {
            for b in 0..k {
                let x = self.unit(a, b);
                if normal_form(g, &x.star())? != normal_form(g, &self.unit(b, a))? {
                    return Err(Error::InvariantViolation(format!("unit ({a},{b}) star")));
                }
                for c in 0..k {
                    for d in 0..k {
                        let prod = normal_form(g, &x.mul(&self.unit(c, d)))?;
                        let expected = if b == c {
                            normal_form(g, &self.unit(a, d))?
                        } else {
                            Element::zero()
                        };
                        if prod != expected {
                            return Err(Error::InvariantViolation(format!(
                                "units ({a},{b}) and ({c},{d})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
