//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use naimark::boundary::{
    enumerate_classes, paths_ending_at, sample_boundary_paths, Cardinality, ClassSize,
};
use naimark::fixtures;
use naimark::ideal::{ideal_graph, quotient_graph, saturated_hereditary_sets, AdmissiblePair};
use naimark::lpa::{normal_form, sink_basis, Element, Monomial};
use naimark::naimark::{
    composition_series, composition_series_with, naimark_decision, naimark_isomorphism, trichotomy,
    LinePointOrder, TrichotomyCase,
};
use naimark::repn::build_rho;
use naimark::sweep::{condition_sweep, describe, grows_exponentially, standard_sweep};
use naimark::{Graph, VertexSet};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Runs `check` on every graph in parallel and reports the first failures.
fn over_graphs<F>(graphs: &[&Graph], check: F) -> Outcome
where
    F: Fn(&Graph) -> Result<(), String> + Sync,
{
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| check(g).err().map(|e| format!("{}: {e}", describe(g))))
        .collect();
    if failures.is_empty() {
        Ok(format!("{} graphs", graphs.len()))
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Err(format!(
            "{} failures, e.g. {}",
            failures.len(),
            shown.join("; ")
        ))
    }
}

fn acyclic_finite(sweep: &[Graph]) -> Vec<&Graph> {
    sweep
        .iter()
        .filter(|g| !g.has_cycle() && !g.has_omega())
        .collect()
}

fn condition_equivalence(sweep: &[Graph]) -> Outcome {
    let report = condition_sweep(sweep);
    if report.discrepancies.is_empty() {
        Ok(format!(
            "{} graphs, {} positive, 0 discrepancies",
            report.graphs, report.positive
        ))
    } else {
        Err(format!(
            "{} discrepancies, e.g. {}",
            report.discrepancies.len(),
            report.discrepancies[0]
        ))
    }
}

fn matrix_algebra_witness(sweep: &[Graph]) -> Outcome {
    let positive: Vec<&Graph> = sweep
        .par_iter()
        .filter(|g| naimark_decision(g).map(|r| r.holds).unwrap_or(false))
        .collect();
    if positive.is_empty() {
        return Err("no positive graphs in the sweep".into());
    }
    over_graphs(&positive, |g| {
        let report = naimark_decision(g).map_err(|e| e.to_string())?;
        let (dim, square) = report.dimension_check.ok_or("no dimension check")?;
        if dim != square {
            return Err(format!("dimension {dim} against {square}"));
        }
        naimark_isomorphism(g).map_err(|e| e.to_string())?;
        Ok(())
    })
}

fn representation_structure(sweep: &[Graph]) -> Outcome {
    over_graphs(&acyclic_finite(sweep), |g| {
        let r = build_rho(g).map_err(|e| e.to_string())?;
        r.check_relations()?;
        if !r.is_block_diagonal() {
            return Err("blocks are not invariant".into());
        }
        let blocks = r.decompose_blocks().len();
        for a in 0..blocks {
            if !r.verify_irreducible_block(a).irreducible {
                return Err(format!("block {a} is reducible"));
            }
            for b in 0..blocks {
                let d = r.hom_space_dim(a, b);
                if d != usize::from(a == b) {
                    return Err(format!("hom({a},{b}) has dimension {d}"));
                }
            }
        }
        Ok(())
    })
}

fn series_matches_blocks(sweep: &[Graph]) -> Outcome {
    over_graphs(&acyclic_finite(sweep), |g| {
        let err = |e: naimark::Error| e.to_string();
        let series = composition_series(g).map_err(err)?;
        let census = enumerate_classes(g).map_err(err)?;
        let r = build_rho(g).map_err(err)?;
        let blocks = r.decompose_blocks();
        let classes = census.count().ok_or("uncountable census")?;
        if series.len() != classes || classes != blocks.len() {
            return Err(format!(
                "series {} / classes {classes} / blocks {}",
                series.len(),
                blocks.len()
            ));
        }
        for f in &series.factors {
            let block = blocks
                .iter()
                .find(|b| b.representative.prefix().range() == f.class_vertex)
                .ok_or("factor without a block")?;
            if f.size != ClassSize::Finite(block.dimension() as u64) {
                return Err(format!(
                    "factor {} against block {}",
                    f.size,
                    block.dimension()
                ));
            }
        }
        let reverse = composition_series_with(g, LinePointOrder::Reverse).map_err(err)?;
        if reverse.factor_multiset() != series.factor_multiset() {
            return Err("reverse-order run has different factors".into());
        }
        series.check_additivity(g).map_err(err)?;
        reverse.check_additivity(g).map_err(err)?;
        Ok(())
    })
}

/// Class counts, with `None` standing for uncountably many.
fn count(g: &Graph) -> Result<Option<usize>, String> {
    Ok(enumerate_classes(g).map_err(|e| e.to_string())?.count())
}

fn ideal_additivity(sweep: &[Graph]) -> Outcome {
    let all: Vec<&Graph> = sweep.iter().collect();
    let checked = std::sync::atomic::AtomicUsize::new(0);
    let outcome = over_graphs(&all, |g| {
        let total = count(g)?;
        for h in saturated_hereditary_sets(g).map_err(|e| e.to_string())? {
            let Ok(ideal) = ideal_graph(g, &h) else {
                continue;
            };
            let pair =
                AdmissiblePair::new(g, h.clone(), VertexSet::new()).map_err(|e| e.to_string())?;
            let rest = quotient_graph(g, &pair).map_err(|e| e.to_string())?;
            let sum = match (count(&ideal)?, count(&rest)?) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            if sum != total {
                return Err(format!(
                    "H = {:?}: {sum:?} against {total:?}",
                    g.set_names(&h)
                ));
            }
            checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(())
    })?;
    Ok(format!("{outcome}, {} ideals", checked.into_inner()))
}

fn loop_and_rose() -> Outcome {
    let one = trichotomy(&fixtures::loop1()).map_err(|e| e.to_string())?;
    let rose = trichotomy(&fixtures::rose2()).map_err(|e| e.to_string())?;
    let ok = one.case == TrichotomyCase::CaseIII
        && one.census.cardinality == Cardinality::Finite(1)
        && rose.case == TrichotomyCase::CaseIII
        && rose.census.cardinality == Cardinality::Uncountable;
    let summary = format!(
        "LOOP1 {} with {} class(es), ROSE2 {} with {} classes",
        one.case.as_str(),
        one.census.cardinality,
        rose.case.as_str(),
        rose.census.cardinality
    );
    if ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn subsets(g: &Graph) -> Vec<VertexSet> {
    let vs: Vec<_> = g.vertices().collect();
    (0u32..1 << vs.len())
        .map(|mask| {
            vs.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn saturation_laws(g: &Graph) -> Result<usize, String> {
    let hereditary: Vec<VertexSet> = subsets(g)
        .into_iter()
        .filter(|h| g.is_hereditary(h))
        .collect();
    let sat = |h: &VertexSet| g.saturate(h).map_err(|e| e.to_string());
    let mut checks = 0;
    for a in &hereditary {
        let sa = sat(a)?;
        if !a.is_subset(&sa) || sat(&sa)? != sa || !g.is_hereditary(&sa) || !g.is_saturated(&sa) {
            return Err(format!("saturation of {:?}", g.set_names(a)));
        }
        for b in &hereditary {
            if a.is_subset(b) && !sa.is_subset(&sat(b)?) {
                return Err(format!("monotonicity at {:?}", g.set_names(a)));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn equivalence_laws(g: &Graph) -> Result<usize, String> {
    let paths = sample_boundary_paths(g, 6, 3, 2);
    let n = paths.len();
    let rel: Vec<Vec<bool>> = paths
        .iter()
        .map(|a| paths.iter().map(|b| a.st_equivalent(b)).collect())
        .collect();
    for i in 0..n {
        if !rel[i][i] {
            return Err(format!(
                "{} is not equivalent to itself",
                paths[i].render(g)
            ));
        }
        for j in 0..n {
            if rel[i][j] != rel[j][i] {
                return Err("asymmetric".into());
            }
            if rel[i][j] && (0..n).any(|k| rel[j][k] && !rel[i][k]) {
                return Err("not transitive".into());
            }
        }
    }
    Ok(n)
}

fn monomials(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths: Vec<_> = g
        .vertices()
        .flat_map(|v| paths_ending_at(g, v, max_len, 2))
        .collect();
    let mut out = Vec::new();
    for a in &paths {
        for b in paths.iter().filter(|b| b.range() == a.range()) {
            out.push(Monomial::new(a.clone(), b.clone()).expect("ranges agree"));
        }
    }
    out
}

fn grading_laws(g: &Graph) -> Result<usize, String> {
    let ms = monomials(g, 2);
    let mut checks = 0;
    for x in &ms {
        for y in &ms {
            let prod = Element::from(x.clone()).mul(&Element::from(y.clone()));
            let degrees: BTreeSet<i64> = prod.degree_components().into_keys().collect();
            if !degrees.is_empty() && degrees != BTreeSet::from([x.degree() + y.degree()]) {
                return Err(format!("{} times {}", x.render(g), y.render(g)));
            }
            checks += 1;
        }
        if !g.has_cycle() && !g.has_omega() {
            let nf = normal_form(g, &x.clone().into()).map_err(|e| e.to_string())?;
            if nf.degree_components().keys().any(|&d| d != x.degree()) {
                return Err(format!("normal form of {} mixes degrees", x.render(g)));
            }
        }
    }
    Ok(checks)
}

fn injectivity(g: &Graph) -> Result<usize, String> {
    let r = build_rho(g).map_err(|e| e.to_string())?;
    let mut images = BTreeMap::new();
    for m in sink_basis(g).map_err(|e| e.to_string())? {
        let mat = r.evaluate(&m.clone().into()).map_err(|e| e.to_string())?;
        let entries: Vec<_> = mat.entries().map(|(i, j, q)| (i, j, q.clone())).collect();
        if entries.len() != 1 || !num_traits::One::is_one(&entries[0].2) {
            return Err(format!("{} is not an elementary matrix", m.render(g)));
        }
        if images
            .insert((entries[0].0, entries[0].1), m.clone())
            .is_some()
        {
            return Err(format!("{} collides with another monomial", m.render(g)));
        }
    }
    Ok(images.len())
}

fn exact_laws() -> Outcome {
    let mut counts = [0usize; 4];
    for (name, g) in fixtures::all() {
        let tag = |e: String| format!("{name}: {e}");
        counts[0] += saturation_laws(&g).map_err(tag)?;
        counts[1] += equivalence_laws(&g).map_err(tag)?;
        counts[2] += grading_laws(&g).map_err(tag)?;
        if !g.has_cycle() && !g.has_omega() {
            counts[3] += injectivity(&g).map_err(tag)?;
        }
    }
    Ok(format!(
        "{} saturation pairs, {} boundary paths, {} products, {} basis images",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn growth_agreement(sweep: &[Graph]) -> Outcome {
    let all: Vec<&Graph> = sweep.iter().collect();
    over_graphs(&all, |g| {
        let flag = enumerate_classes(g).map_err(|e| e.to_string())?.cardinality
            == Cardinality::Uncountable;
        let grows = grows_exponentially(g, 12);
        if flag == grows {
            Ok(())
        } else {
            Err(format!(
                "uncountable flag {flag}, exponential growth {grows}"
            ))
        }
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = standard_sweep();
    println!(
        "sweep: {} graphs enumerated in {:.1?}",
        sweep.len(),
        start.elapsed()
    );
    let criteria: Vec<Criterion> = vec![
        (
            "class condition and line-point condition agree",
            Box::new(|| condition_equivalence(&sweep)),
        ),
        (
            "positive graphs are full matrix algebras",
            Box::new(|| matrix_algebra_witness(&sweep)),
        ),
        (
            "boundary-path representation splits into irreducibles",
            Box::new(|| representation_structure(&sweep)),
        ),
        (
            "composition series match representation blocks",
            Box::new(|| series_matches_blocks(&sweep)),
        ),
        (
            "class counts add across ideal and quotient",
            Box::new(|| ideal_additivity(&sweep)),
        ),
        ("one-loop and two-loop examples", Box::new(loop_and_rose)),
        ("exact algebraic laws on fixtures", Box::new(exact_laws)),
        (
            "uncountability agrees with path growth",
            Box::new(|| growth_agreement(&sweep)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {name} ({detail}; {elapsed:.1?})",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name} ({detail}; {elapsed:.1?})",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
