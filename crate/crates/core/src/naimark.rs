//! Deciding when every irreducible representation is equivalent to every
//! other, building elementary composition series, and sorting graphs into the
//! cases of the spectrum trichotomy.

use std::collections::BTreeSet;

use crate::boundary::{
    enumerate_classes, paths_into, BoundaryPath, Cardinality, ClassCensus, ClassSize,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, VertexSet};
use crate::ideal::{quotient, AdmissiblePair, Quotient, QuotientVertex};
use crate::lpa::{dimension, sink_basis, Monomial};
use crate::repn::{matrix_units, MatrixUnitSystem};

/// All boundary paths are shift-tail equivalent and the graph has no cycle.
pub fn check_condition4(g: &Graph) -> Result<bool> {
    Ok(!g.has_cycle() && enumerate_classes(g)?.cardinality == Cardinality::Finite(1))
}

/// A line point whose tree saturates to the whole vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePointWitness {
    pub line_point: VertexId,
    /// The saturation chain of the tree, ending at the full vertex set.
    pub chain: Vec<VertexSet>,
}

/// The first line point, in declaration order, whose tree saturates to every
/// vertex.
pub fn check_condition5(g: &Graph) -> Result<Option<LinePointWitness>> {
    let all = g.all_vertices();
    for v in g.line_points() {
        let tree = g.tree_of(v)?;
        let chain = g.saturation_chain(&tree)?;
        if chain.last() == Some(&all) {
            return Ok(Some(LinePointWitness {
                line_point: v,
                chain,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaimarkReport {
    pub holds: bool,
    pub condition4: bool,
    pub census: ClassCensus,
    pub condition5: Option<LinePointWitness>,
    /// The matrix-unit index set when the decision is positive.
    pub lambda: Option<Vec<Path>>,
    /// `(dimension of the algebra, |Λ|²)` when the decision is positive.
    pub dimension_check: Option<(u64, u64)>,
}

/// Evaluates both characterisations independently and insists they agree.
pub fn naimark_decision(g: &Graph) -> Result<NaimarkReport> {
    let census = enumerate_classes(g)?;
    let condition4 = !g.has_cycle() && census.cardinality == Cardinality::Finite(1);
    let condition5 = check_condition5(g)?;
    if condition4 != condition5.is_some() {
        return Err(Error::InvariantViolation(format!(
            "class condition says {condition4}, line-point condition says {}",
            condition5.is_some()
        )));
    }
    let mut report = NaimarkReport {
        holds: condition4,
        condition4,
        census,
        condition5,
        lambda: None,
        dimension_check: None,
    };
    if let (Some(w), false) = (&report.condition5, g.has_omega()) {
        let units = matrix_units(g, w.line_point)?;
        let k = units.size() as u64;
        let square = k
            .checked_mul(k)
            .ok_or_else(|| Error::Overflow("squaring the index set size".into()))?;
        let dim = dimension(g)?;
        if dim != square {
            return Err(Error::InvariantViolation(format!(
                "algebra has dimension {dim} but the index set has {k} members"
            )));
        }
        report.lambda = Some(units.index);
        report.dimension_check = Some((dim, square));
    }
    Ok(report)
}

/// The matrix-unit system at the witnessing line point, checked to satisfy the
/// unit relations and to match the sink basis one to one.
pub fn naimark_isomorphism(g: &Graph) -> Result<MatrixUnitSystem> {
    let report = naimark_decision(g)?;
    let Some(w) = report.condition5 else {
        return Err(Error::Contract(
            "the graph has inequivalent irreducible representations".into(),
        ));
    };
    let units = matrix_units(g, w.line_point)?;
    units.verify(g)?;
    let mut images = BTreeSet::new();
    for row in units.normal_forms(g)? {
        for x in row {
            let mut terms = x.terms();
            match (terms.next(), terms.next()) {
                (Some((m, q)), None) if num_traits::One::is_one(q) => {
                    images.insert(m.clone());
                }
                _ => {
                    return Err(Error::InvariantViolation(
                        "a matrix unit is not a single basis monomial".into(),
                    ))
                }
            }
        }
    }
    let basis: BTreeSet<Monomial> = sink_basis(g)?.into_iter().collect();
    if images.len() != units.size() * units.size() || images != basis {
        return Err(Error::InvariantViolation(
            "matrix units do not match the sink basis one to one".into(),
        ));
    }
    Ok(units)
}

/// Which line point each step of a composition series picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinePointOrder {
    #[default]
    Declaration,
    Reverse,
}

/// One factor `I_k / I_{k-1}` of a composition series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    /// Name of the chosen line point in the quotient graph of the step.
    pub line_point: String,
    /// The singular vertex of the original graph whose class the factor
    /// accounts for.
    pub class_vertex: VertexId,
    /// Size of the matrix-unit index set.
    pub size: ClassSize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    /// Strictly increasing, from the zero pair to the full pair.
    pub pairs: Vec<AdmissiblePair>,
    pub factors: Vec<Factor>,
}

impl CompositionSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factor sizes sorted, for order-independent comparison.
    pub fn factor_multiset(&self) -> Vec<(VertexId, ClassSize)> {
        let mut out: Vec<_> = self
            .factors
            .iter()
            .map(|f| (f.class_vertex, f.size))
            .collect();
        out.sort_by_key(|&(v, s)| (v, s.to_string()));
        out
    }

    /// At every pair, the classes accounted for by the factors so far plus
    /// the classes of the quotient make up all classes of the graph.
    pub fn check_additivity(&self, g: &Graph) -> Result<()> {
        let total = class_count(g)?;
        for (i, p) in self.pairs.iter().enumerate() {
            let rest = class_count(&quotient(g, p)?.graph)?;
            if i + rest != total {
                return Err(Error::InvariantViolation(format!(
                    "after {i} steps the quotient has {rest} classes, but the graph has {total}"
                )));
            }
        }
        Ok(())
    }
}

fn class_count(g: &Graph) -> Result<usize> {
    enumerate_classes(g)?
        .count()
        .ok_or_else(|| Error::Unsupported("uncountably many classes".into()))
}

pub fn composition_series(g: &Graph) -> Result<CompositionSeries> {
    composition_series_with(g, LinePointOrder::Declaration)
}

/// Peels off one line-point ideal at a time: in the quotient by the current
/// pair, saturate the tree of a line point, lift that set back to a larger
/// admissible pair, and record the size of the matrix-unit index set.
pub fn composition_series_with(g: &Graph, order: LinePointOrder) -> Result<CompositionSeries> {
    if g.has_cycle() {
        return Err(Error::Unsupported("graph has a cycle".into()));
    }
    let full = AdmissiblePair::full(g);
    let mut pairs = vec![AdmissiblePair::empty()];
    let mut factors = Vec::new();
    loop {
        let current = pairs.last().expect("series starts with the zero pair");
        if *current == full {
            break;
        }
        let q = quotient(g, current)?;
        let qg = &q.graph;
        let points = qg.line_points();
        let chosen = match order {
            LinePointOrder::Declaration => points.iter().next(),
            LinePointOrder::Reverse => points.iter().next_back(),
        };
        let Some(&w) = chosen else {
            return Err(Error::InvariantViolation(
                "a nonzero acyclic quotient has no line point".into(),
            ));
        };
        let tree = qg.tree_of(w)?;
        let sink = *tree
            .iter()
            .find(|&&t| qg.outgoing(t).is_empty())
            .expect("the tree of a line point ends at a sink");
        let k = qg.saturate(&tree)?;
        let next = lift(g, current, &q, &k)?;
        if !current.lt(&next) {
            return Err(Error::InvariantViolation(
                "composition series stalled".into(),
            ));
        }
        let size = match matrix_units(qg, w) {
            Ok(units) => ClassSize::Finite(units.size() as u64),
            Err(Error::Unsupported(_)) => paths_into(qg, sink)?,
            Err(e) => return Err(e),
        };
        let class_vertex = match q.origin[sink.0] {
            QuotientVertex::Original(v) | QuotientVertex::Gap(v) => v,
        };
        factors.push(Factor {
            line_point: qg.vertex_name(w).to_string(),
            class_vertex,
            size,
        });
        pairs.push(next);
    }
    Ok(CompositionSeries { pairs, factors })
}

/// The admissible pair of `g` whose ideal is generated by the ideal of `p`
/// together with the vertices `k` of the quotient by `p`.
///
/// At a breaking vertex `v` outside `S`, the quotient splits `p_v` into the
/// projection onto the escaping edges (the quotient's own `v`) and the gap
/// (the sink `w_v`). So `v` joins `H` only when both halves lie in `k`; other
/// original vertices of `k` join outright. A breaking vertex of the new set
/// keeps its gap in the ideal when it already did, or when `w_v` lies in `k`.
fn lift(g: &Graph, p: &AdmissiblePair, q: &Quotient, k: &VertexSet) -> Result<AdmissiblePair> {
    let mut gaps_in = BTreeSet::new();
    let mut originals = Vec::new();
    for &x in k {
        match q.origin[x.0] {
            QuotientVertex::Original(v) => originals.push(v),
            QuotientVertex::Gap(v) => {
                gaps_in.insert(v);
            }
        }
    }
    let mut h = p.h().clone();
    for v in originals {
        let split = q.vertex_of(QuotientVertex::Gap(v)).is_some();
        if !split || gaps_in.contains(&v) {
            h.insert(v);
        }
    }
    let breaking = g.breaking_vertices(&h)?;
    let s = breaking
        .into_iter()
        .filter(|v| p.s().contains(v) || gaps_in.contains(v))
        .collect();
    AdmissiblePair::new(g, h, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrichotomyCase {
    /// No cycles: irreducibles correspond to classes.
    CaseI,
    /// At least one cycle.
    CaseIII,
}

impl TrichotomyCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TrichotomyCase::CaseI => "CaseI",
            TrichotomyCase::CaseIII => "CaseIII",
        }
    }
}

/// One irreducible representation, named by its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub representative: BoundaryPath,
    pub dimension: ClassSize,
}

/// An acyclic graph with uncountably many classes needs infinitely many
/// vertices, so finite graphs only ever land in the first or third case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrichotomyReport {
    pub case: TrichotomyCase,
    pub census: ClassCensus,
    /// Filled in the acyclic case.
    pub spectrum: Vec<SpectrumEntry>,
}

pub fn trichotomy(g: &Graph) -> Result<TrichotomyReport> {
    let census = enumerate_classes(g)?;
    if g.has_cycle() {
        return Ok(TrichotomyReport {
            case: TrichotomyCase::CaseIII,
            census,
            spectrum: Vec::new(),
        });
    }
    let spectrum = census
        .classes
        .iter()
        .map(|c| SpectrumEntry {
            representative: c.representative.clone(),
            dimension: c.size,
        })
        .collect();
    Ok(TrichotomyReport {
        case: TrichotomyCase::CaseI,
        census,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(g: &Graph, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    #[test]
    fn condition4_examples() {
        assert!(check_condition4(&fixtures::line3()).unwrap());
        assert!(!check_condition4(&fixtures::fork()).unwrap());
        assert!(!check_condition4(&fixtures::loop1()).unwrap());
    }

    #[test]
    fn condition5_examples() {
        let g = fixtures::line3();
        let w = check_condition5(&g).unwrap().unwrap();
        assert_eq!(g.vertex_name(w.line_point), "u");
        let g = fixtures::entry4();
        let w = check_condition5(&g).unwrap().unwrap();
        assert_eq!(g.vertex_name(w.line_point), "x");
        assert_eq!(names(&g, w.chain.last().unwrap()), ["x", "u", "v", "w"]);
        assert!(check_condition5(&fixtures::omega2()).unwrap().is_none());
    }

    #[test]
    fn decisions() {
        let r = naimark_decision(&fixtures::line3()).unwrap();
        assert!(r.holds);
        assert_eq!(r.lambda.as_ref().unwrap().len(), 3);
        assert_eq!(r.dimension_check, Some((9, 9)));
        let r = naimark_decision(&fixtures::rose2()).unwrap();
        assert!(!r.holds);
        let r = naimark_decision(&fixtures::point()).unwrap();
        assert!(r.holds);
        assert_eq!(r.dimension_check, Some((1, 1)));
        for (_, g) in fixtures::all() {
            let r = naimark_decision(&g).unwrap();
            if r.holds {
                assert!(g.downward_directed() && !g.has_cycle() && !g.has_omega());
                assert!(g.sinks().len() <= 1);
            }
        }
    }

    #[test]
    fn isomorphisms() {
        assert_eq!(naimark_isomorphism(&fixtures::line3()).unwrap().size(), 3);
        assert_eq!(naimark_isomorphism(&fixtures::point()).unwrap().size(), 1);
        assert_eq!(naimark_isomorphism(&fixtures::entry4()).unwrap().size(), 4);
        assert!(matches!(
            naimark_isomorphism(&fixtures::fork()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn series_examples() {
        let g = fixtures::fork();
        let s = composition_series(&g).unwrap();
        let hs: Vec<_> = s.pairs.iter().map(|p| names(&g, p.h())).collect();
        assert_eq!(
            hs,
            [
                vec![],
                vec!["v".to_string()],
                vec!["u".into(), "v".into(), "w".into()]
            ]
        );
        assert!(s.pairs.iter().all(|p| p.s().is_empty()));
        let sizes: Vec<_> = s.factors.iter().map(|f| f.size).collect();
        assert_eq!(sizes, [ClassSize::Finite(2), ClassSize::Finite(2)]);
        s.check_additivity(&g).unwrap();
        let r = composition_series_with(&g, LinePointOrder::Reverse).unwrap();
        assert_eq!(r.factor_multiset(), s.factor_multiset());

        let g = fixtures::line3();
        let s = composition_series(&g).unwrap();
        assert_eq!(s.pairs.len(), 2);
        assert_eq!(s.factors[0].size, ClassSize::Finite(3));

        let s = composition_series(&fixtures::point()).unwrap();
        assert_eq!(s.factors[0].size, ClassSize::Finite(1));

        assert!(matches!(
            composition_series(&fixtures::loop1()),
            Err(Error::Unsupported(m)) if m == "graph has a cycle"
        ));
    }

    #[test]
    fn series_through_omega() {
        let g = fixtures::omega2();
        let s = composition_series(&g).unwrap();
        s.check_additivity(&g).unwrap();
        assert_eq!(s.len(), 3);
        let mut sizes: Vec<_> = s.factors.iter().map(|f| f.size.to_string()).collect();
        sizes.sort();
        assert_eq!(sizes, ["1", "2", "countably infinite"]);
        let r = composition_series_with(&g, LinePointOrder::Reverse).unwrap();
        r.check_additivity(&g).unwrap();
        assert_eq!(r.factor_multiset(), s.factor_multiset());
    }

    #[test]
    fn trichotomy_examples() {
        let r = trichotomy(&fixtures::line3()).unwrap();
        assert_eq!(r.case, TrichotomyCase::CaseI);
        assert_eq!(r.spectrum.len(), 1);
        let r = trichotomy(&fixtures::loop1()).unwrap();
        assert_eq!(r.case, TrichotomyCase::CaseIII);
        assert_eq!(r.census.cardinality, Cardinality::Finite(1));
        let r = trichotomy(&fixtures::rose2()).unwrap();
        assert_eq!(r.case, TrichotomyCase::CaseIII);
        assert_eq!(r.census.cardinality, Cardinality::Uncountable);
    }
}
