//! Exhaustive enumeration of small graphs and checks run across all of them.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::graph::{Graph, Multiplicity};
use crate::naimark::{check_condition4, check_condition5};

const VERTEX_NAMES: [&str; 6] = ["a", "b", "c", "d", "p", "q"];

/// A graph on vertices `0..vertices` given by `(source, range, is_omega)`
/// bundles, each of multiplicity one unless marked ω.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub vertices: usize,
    pub bundles: Vec<(usize, usize, bool)>,
}

impl Shape {
    /// Least relabelling under all vertex permutations, with bundles sorted.
    fn canonical(&self) -> Shape {
        let n = self.vertices;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<(usize, usize, bool)>> = None;
        loop {
            let mut relabelled: Vec<_> = self
                .bundles
                .iter()
                .map(|&(s, r, w)| (perm[s], perm[r], w))
                .collect();
            relabelled.sort();
            if best.as_ref().is_none_or(|b| relabelled < *b) {
                best = Some(relabelled);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Shape {
            vertices: n,
            bundles: best.unwrap_or_default(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        let mut b = Graph::builder().vertices(VERTEX_NAMES[..self.vertices].iter().copied());
        for (i, &(s, r, omega)) in self.bundles.iter().enumerate() {
            let m = if omega {
                Multiplicity::Omega
            } else {
                Multiplicity::ONE
            };
            b = b.bundle(format!("e{i}"), VERTEX_NAMES[s], VERTEX_NAMES[r], m);
        }
        b.build().expect("generated shapes are valid graphs")
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Multisets of `k` items from `0..choices`, as nondecreasing sequences.
fn multisets(choices: usize, k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let from = cur.last().copied().unwrap_or(0);
    for c in from..choices {
        cur.push(c);
        multisets(choices, k, out, cur);
        cur.pop();
    }
}

/// Every graph with `1..=max_vertices` vertices and at most `max_bundles`
/// bundles of multiplicity one, up to isomorphism, in a fixed order.
pub fn small_shapes(max_vertices: usize, max_bundles: usize) -> Vec<Shape> {
    assert!(max_vertices <= VERTEX_NAMES.len(), "at most six vertices");
    let mut seen = BTreeSet::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
        for k in 0..=max_bundles {
            let mut picks = Vec::new();
            multisets(pairs.len(), k, &mut picks, &mut Vec::new());
            let canon: Vec<Shape> = picks
                .par_iter()
                .map(|pick| {
                    Shape {
                        vertices: n,
                        bundles: pick
                            .iter()
                            .map(|&i| (pairs[i].0, pairs[i].1, false))
                            .collect(),
                    }
                    .canonical()
                })
                .collect();
            seen.extend(canon);
        }
    }
    seen.into_iter().collect()
}

/// Each shape with exactly one of its bundles promoted to ω, up to isomorphism.
pub fn omega_variants(shapes: &[Shape]) -> Vec<Shape> {
    let seen: BTreeSet<Shape> = shapes
        .par_iter()
        .flat_map_iter(|s| {
            (0..s.bundles.len()).map(move |i| {
                let mut t = s.clone();
                t.bundles[i].2 = true;
                t.canonical()
            })
        })
        .collect();
    seen.into_iter().collect()
}

/// The standard sweep: up to four vertices and five bundles, then the same
/// graphs with one bundle promoted to ω.
pub fn standard_sweep() -> Vec<Graph> {
    let plain = small_shapes(4, 5);
    let omega = omega_variants(&plain);
    plain.iter().chain(&omega).map(Shape::to_graph).collect()
}

/// Counts of walks of each length `0..=max_len` from every vertex, with each
/// ω-bundle standing for `omega_as` parallel edges. Entry `[n][v][w]` counts
/// walks of length `n` from `v` to `w`; counts saturate at `u128::MAX`.
pub fn walk_counts(g: &Graph, max_len: usize, omega_as: u64) -> Vec<Vec<Vec<u128>>> {
    let n = g.vertex_count();
    let mut step = vec![vec![0u128; n]; n];
    for b in g.bundles() {
        let m = b.multiplicity.finite().unwrap_or(omega_as) as u128;
        step[b.source.0][b.range.0] += m;
    }
    let mut out = Vec::with_capacity(max_len + 1);
    let identity: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| u128::from(i == j)).collect())
        .collect();
    out.push(identity);
    for len in 1..=max_len {
        let prev = &out[len - 1];
        let next: Vec<Vec<u128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(0u128, |acc, k| {
                            acc.saturating_add(prev[i][k].saturating_mul(step[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        out.push(next);
    }
    out
}

/// Path counts grow exponentially exactly when some vertex has two distinct
/// closed walks of equal length, since those then generate a free monoid.
/// For graphs with at most four vertices two such walks appear by length 12,
/// the least common multiple of two cycle lengths at most four.
pub fn grows_exponentially(g: &Graph, max_len: usize) -> bool {
    let counts = walk_counts(g, max_len, 2);
    (1..=max_len).any(|len| (0..g.vertex_count()).any(|v| counts[len][v][v] >= 2))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionSweep {
    pub graphs: usize,
    pub positive: usize,
    /// Descriptions of graphs where the two conditions disagree or fail.
    pub discrepancies: Vec<String>,
}

/// Compares the class condition with the line-point condition on each graph.
pub fn condition_sweep(graphs: &[Graph]) -> ConditionSweep {
    let results: Vec<(bool, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let four = check_condition4(g);
            let five = check_condition5(g);
            match (four, five) {
                (Ok(a), Ok(b)) if a == b.is_some() => (a, None),
                (a, b) => (
                    false,
                    Some(format!(
                        "{}: class condition {:?}, line-point condition {:?}",
                        describe(g),
                        a,
                        b.map(|w| w.is_some())
                    )),
                ),
            }
        })
        .collect();
    ConditionSweep {
        graphs: graphs.len(),
        positive: results.iter().filter(|r| r.0).count(),
        discrepancies: results.into_iter().filter_map(|r| r.1).collect(),
    }
}

/// A one-line description such as `a b c | e0:a->b e1:b->c×ω`.
pub fn describe(g: &Graph) -> String {
    let vertices = g.vertex_names().join(" ");
    let bundles: Vec<String> = g
        .bundles()
        .iter()
        .map(|b| {
            let m = if b.multiplicity == Multiplicity::ONE {
                String::new()
            } else {
                format!("×{}", b.multiplicity)
            };
            format!(
                "{}:{}->{}{m}",
                b.name,
                g.vertex_name(b.source),
                g.vertex_name(b.range)
            )
        })
        .collect();
    format!("{vertices} | {}", bundles.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn counts_of_tiny_graphs() {
        // One vertex: 0..=2 loops.
        assert_eq!(small_shapes(1, 2).len(), 3);
        // Two vertices, one bundle: a loop, or an edge between them, plus the
        // empty graphs on one and two vertices and the single loop.
        let shapes = small_shapes(2, 1);
        let two: Vec<_> = shapes.iter().filter(|s| s.vertices == 2).collect();
        assert_eq!(two.len(), 3);
        assert_eq!(shapes.len(), 5);
    }

    #[test]
    fn isomorphic_shapes_collapse() {
        let a = Shape {
            vertices: 3,
            bundles: vec![(0, 1, false), (1, 2, false)],
        };
        let b = Shape {
            vertices: 3,
            bundles: vec![(2, 0, false), (1, 2, false)],
        };
        assert_eq!(a.canonical(), b.canonical());
        let c = Shape {
            vertices: 3,
            bundles: vec![(0, 1, false), (0, 2, false)],
        };
        assert_ne!(a.canonical(), c.canonical());
    }

    #[test]
    fn growth_of_fixtures() {
        assert!(grows_exponentially(&fixtures::rose2(), 12));
        assert!(!grows_exponentially(&fixtures::loop1(), 12));
        assert!(!grows_exponentially(&fixtures::omega(), 12));
        let counts = walk_counts(&fixtures::line3(), 3, 2);
        assert_eq!(counts[2][0][2], 1);
        assert_eq!(counts[3][0][2], 0);
    }

    #[test]
    fn describe_format() {
        assert_eq!(describe(&fixtures::omega2()), "v w u | e:v->w×ω g:v->u");
    }
}
