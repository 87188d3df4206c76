//! One function per subcommand, each producing text and JSON renderings.

use naimark::boundary::{enumerate_classes, ClassCensus};
use naimark::ideal::{
    enumerate_admissible_pairs, ideal_graph, quotient_graph, saturated_hereditary_sets,
};
use naimark::linalg::format_rational;
use naimark::naimark::{composition_series, naimark_decision, trichotomy};
use naimark::repn::build_rho;
use naimark::sweep::{condition_sweep, standard_sweep};
use naimark::{Graph, Multiplicity, Path, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::document::GraphDocument;

pub struct Report {
    pub text: String,
    pub json: Value,
    /// A negative decision, reported with its own exit code.
    pub negative: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            negative: false,
        }
    }
}

type Outcome = naimark::Result<Report>;

fn names(g: &Graph, set: &VertexSet) -> Vec<String> {
    g.set_names(set).into_iter().map(String::from).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn paths(g: &Graph, ps: &[Path]) -> Vec<String> {
    ps.iter().map(|p| g.render_path(p)).collect()
}

fn census_json(g: &Graph, census: &ClassCensus) -> Value {
    json!({
        "cardinality": census.cardinality.to_string(),
        "classes": census.classes.iter().map(|c| json!({
            "representative": c.representative.render(g),
            "size": c.size.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn census_text(g: &Graph, census: &ClassCensus) -> String {
    let mut out = format!("classes: {}\n", census.cardinality);
    for c in &census.classes {
        out.push_str(&format!(
            "  [{}] size {}\n",
            c.representative.render(g),
            c.size
        ));
    }
    out
}

pub fn analyze(g: &Graph) -> Outcome {
    let classes: Vec<Value> = g
        .vertices()
        .map(|v| json!({"vertex": g.vertex_name(v), "class": g.class_of(v).as_str()}))
        .collect();
    let sinks = names(g, &g.sinks());
    let emitters: Vec<String> = g
        .vertices()
        .filter(|&v| g.class_of(v) == naimark::VertexClass::InfiniteEmitter)
        .map(|v| g.vertex_name(v).to_string())
        .collect();
    let (cycles, cycle_note) = match g.simple_cycles() {
        Ok(cs) => (
            Some(cs.iter().map(|c| g.render_cycle(c)).collect::<Vec<_>>()),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let line_points = names(g, &g.line_points());
    let directed = g.downward_directed();
    let components: Vec<Value> = g
        .components()
        .iter()
        .map(|c| {
            json!({
                "vertices": names(g, &c.vertices),
                "internal_edges": c.internal_edges.to_string(),
                "cyclic": c.is_cyclic(),
            })
        })
        .collect();

    let mut text = String::new();
    for v in g.vertices() {
        text.push_str(&format!(
            "vertex {}: {}\n",
            g.vertex_name(v),
            g.class_of(v).as_str()
        ));
    }
    text.push_str(&format!("sinks: {}\n", braces(&sinks)));
    text.push_str(&format!("infinite emitters: {}\n", braces(&emitters)));
    match (&cycles, &cycle_note) {
        (Some(cs), _) => {
            text.push_str(&format!("simple cycles: {}\n", cs.len()));
            for c in cs {
                text.push_str(&format!("  {c}\n"));
            }
        }
        (None, Some(note)) => text.push_str(&format!("simple cycles: {note}\n")),
        (None, None) => unreachable!(),
    }
    text.push_str(&format!("line points: {}\n", braces(&line_points)));
    text.push_str(&format!("downward directed: {directed}\n"));
    text.push_str(&format!(
        "strongly connected components: {}\n",
        components.len()
    ));
    for c in g.components() {
        text.push_str(&format!(
            "  {} with {} internal edges\n",
            braces(&names(g, &c.vertices)),
            c.internal_edges
        ));
    }
    Ok(Report::new(
        text,
        json!({
            "vertices": classes,
            "sinks": sinks,
            "infinite_emitters": emitters,
            "simple_cycles": cycles,
            "simple_cycles_note": cycle_note,
            "line_points": line_points,
            "downward_directed": directed,
            "components": components,
        }),
    ))
}

pub fn naimark(g: &Graph) -> Outcome {
    let r = naimark_decision(g)?;
    let witness = r
        .condition5
        .as_ref()
        .map(|w| g.vertex_name(w.line_point).to_string());
    let chain: Option<Vec<Vec<String>>> = r
        .condition5
        .as_ref()
        .map(|w| w.chain.iter().map(|s| names(g, s)).collect());
    let lambda = r.lambda.as_ref().map(|l| paths(g, l));
    let mut text = format!(
        "naimark: {}\nall boundary paths equivalent and no cycles: {}\n",
        if r.holds { "holds" } else { "fails" },
        r.condition4
    );
    text.push_str(&format!("census size: {}\n", r.census.cardinality));
    match (&witness, &chain) {
        (Some(v), Some(chain)) => {
            text.push_str(&format!("line point: {v}\n"));
            let steps: Vec<String> = chain.iter().map(|s| braces(s)).collect();
            text.push_str(&format!("saturation chain: {}\n", steps.join(" ⊆ ")));
        }
        _ => text.push_str("line point: none whose tree saturates to every vertex\n"),
    }
    if let Some(l) = &lambda {
        text.push_str(&format!("|Λ| = {}: {}\n", l.len(), braces(l)));
    }
    if let Some((dim, square)) = r.dimension_check {
        text.push_str(&format!("dimension {dim} = |Λ|² = {square}\n"));
    }
    let json = json!({
        "holds": r.holds,
        "condition4": r.condition4,
        "census": census_json(g, &r.census),
        "line_point": witness,
        "saturation_chain": chain,
        "lambda": lambda,
        "lambda_size": r.lambda.as_ref().map(Vec::len),
        "dimension": r.dimension_check.map(|(d, _)| d),
    });
    Ok(Report {
        text,
        json,
        negative: !r.holds,
    })
}

pub fn classes(g: &Graph) -> Outcome {
    let census = enumerate_classes(g)?;
    let t = trichotomy(g)?;
    let mut text = census_text(g, &census);
    text.push_str(&format!("case: {}\n", t.case.as_str()));
    let mut json = census_json(g, &census);
    json["case"] = json!(t.case.as_str());
    Ok(Report::new(text, json))
}

pub fn compseries(g: &Graph) -> Outcome {
    let s = composition_series(g)?;
    let pair_json: Vec<Value> = s
        .pairs
        .iter()
        .map(|p| json!({"H": names(g, p.h()), "S": names(g, p.s())}))
        .collect();
    let factor_json: Vec<Value> = s
        .factors
        .iter()
        .map(|f| {
            json!({
                "line_point": f.line_point,
                "class": g.vertex_name(f.class_vertex),
                "size": f.size.to_string(),
            })
        })
        .collect();
    let mut text = format!("composition series of length {}\n", s.len());
    for (i, p) in s.pairs.iter().enumerate() {
        text.push_str(&format!("  {}\n", p.render(g)));
        if let Some(f) = s.factors.get(i) {
            text.push_str(&format!(
                "    factor {}: line point {}, class of {}, index set size {}\n",
                i + 1,
                f.line_point,
                g.vertex_name(f.class_vertex),
                f.size
            ));
        }
    }
    Ok(Report::new(
        text,
        json!({"pairs": pair_json, "factors": factor_json}),
    ))
}

pub fn rep(g: &Graph) -> Outcome {
    let r = build_rho(g)?;
    let blocks = r.decompose_blocks();
    let basis = paths(g, r.basis());
    let render_block = |b: &naimark::repn::Block| -> Vec<String> {
        b.indices.iter().map(|&i| basis[i].clone()).collect()
    };
    let hom: Vec<Vec<usize>> = (0..blocks.len())
        .map(|a| (0..blocks.len()).map(|b| r.hom_space_dim(a, b)).collect())
        .collect();
    let block_json: Vec<Value> = blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            json!({
                "class": b.representative.render(g),
                "basis": render_block(b),
                "dimension": b.dimension(),
                "irreducible": r.verify_irreducible_block(k).irreducible,
            })
        })
        .collect();
    let generators: serde_json::Map<String, Value> = r
        .generators()
        .iter()
        .map(|(gen, m)| {
            let rows: Vec<Vec<String>> = m
                .dense_rows()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect();
            (gen.render(g), json!(rows))
        })
        .collect();
    let mut text = format!("dimension {}\n", r.dimension());
    for (k, b) in blocks.iter().enumerate() {
        text.push_str(&format!(
            "block [{}]: {} (dimension {}, irreducible: {})\n",
            b.representative.render(g),
            braces(&render_block(b)),
            b.dimension(),
            r.verify_irreducible_block(k).irreducible
        ));
    }
    text.push_str("hom dimensions:\n");
    for row in &hom {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        text.push_str(&format!("  {}\n", row.join(" ")));
    }
    text.push_str(&r.dump());
    Ok(Report::new(
        text,
        json!({
            "basis": basis,
            "blocks": block_json,
            "hom_dimensions": hom,
            "generators": generators,
        }),
    ))
}

pub fn ideals(g: &Graph) -> Outcome {
    let pairs = enumerate_admissible_pairs(g)?;
    let mut text = format!("admissible pairs: {}\n", pairs.len());
    let mut pair_json = Vec::new();
    for p in &pairs {
        let q = quotient_graph(g, p)?;
        text.push_str(&format!(
            "  {} quotient vertices {}\n",
            p.render(g),
            braces(q.vertex_names())
        ));
        pair_json.push(json!({
            "H": names(g, p.h()),
            "S": names(g, p.s()),
            "quotient_vertices": q.vertex_names(),
        }));
    }
    let sets = saturated_hereditary_sets(g)?;
    text.push_str(&format!("saturated hereditary sets: {}\n", sets.len()));
    let mut set_json = Vec::new();
    for h in &sets {
        let (vertices, note) = match ideal_graph(g, h) {
            Ok(ig) => (Some(ig.vertex_names().to_vec()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        match (&vertices, &note) {
            (Some(vs), _) => text.push_str(&format!(
                "  {} ideal graph vertices {}\n",
                braces(&names(g, h)),
                braces(vs)
            )),
            (None, Some(n)) => text.push_str(&format!("  {} {n}\n", braces(&names(g, h)))),
            (None, None) => unreachable!(),
        }
        set_json.push(json!({
            "H": names(g, h),
            "ideal_graph_vertices": vertices,
            "note": note,
        }));
    }
    Ok(Report::new(
        text,
        json!({"admissible_pairs": pair_json, "saturated_hereditary_sets": set_json}),
    ))
}

pub fn export_dot(g: &Graph) -> String {
    let quote = |s: &str| format!("\"{s}\"");
    let mut out = String::from("digraph G {\n");
    for v in g.vertex_names() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for b in g.bundles() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(g.vertex_name(b.source)),
            quote(g.vertex_name(b.range)),
            quote(&format!("{}×{}", b.name, b.multiplicity))
        ));
    }
    out.push_str("}\n");
    out
}

pub fn export_json(g: &Graph) -> String {
    GraphDocument::from_graph(g).render()
}

/// Random graphs on up to five vertices with multiplicities 1, 2 or ω.
pub fn random_graphs(seed: u64, samples: usize) -> Vec<Graph> {
    const NAMES: [&str; 5] = ["a", "b", "c", "d", "p"];
    let mut rng = StdRng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=NAMES.len());
            let k = rng.gen_range(0..=7);
            let mut b = Graph::builder().vertices(NAMES[..n].iter().copied());
            for i in 0..k {
                let m = match rng.gen_range(0..7) {
                    0 => Multiplicity::Omega,
                    1 | 2 => Multiplicity::Finite(2),
                    _ => Multiplicity::ONE,
                };
                let (s, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
                b = b.bundle(format!("e{i}"), NAMES[s], NAMES[r], m);
            }
            b.build().expect("generated graphs are valid")
        })
        .collect()
}

pub fn sweep(seed: Option<u64>, samples: usize) -> Outcome {
    let (graphs, source) = match seed {
        Some(s) => (
            random_graphs(s, samples),
            format!("{samples} random graphs, seed {s}"),
        ),
        None => (
            standard_sweep(),
            "all graphs with at most 4 vertices and 5 bundles, plus one-ω variants".to_string(),
        ),
    };
    let report = condition_sweep(&graphs);
    let mut text = format!(
        "{source}\ngraphs: {}\npositive: {}\ndiscrepancies: {}\n",
        report.graphs,
        report.positive,
        report.discrepancies.len()
    );
    for d in &report.discrepancies {
        text.push_str(&format!("  {d}\n"));
    }
    Ok(Report::new(
        text,
        json!({
            "graphs": report.graphs,
            "positive": report.positive,
            "discrepancies": report.discrepancies,
            "seed": seed,
        }),
    ))
}
