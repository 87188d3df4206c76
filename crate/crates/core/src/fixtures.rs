//! Small named graphs used throughout the tests and by the command line.

use crate::graph::{Graph, Multiplicity};

pub const NAMES: [&str; 8] = [
    "PT", "LINE3", "ENTRY4", "FORK", "LOOP1", "ROSE2", "OMEGA", "OMEGA2",
];

pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name.to_ascii_uppercase().as_str() {
        "PT" => point(),
        "LINE3" => line3(),
        "ENTRY4" => entry4(),
        "FORK" => fork(),
        "LOOP1" => loop1(),
        "ROSE2" => rose2(),
        "OMEGA" => omega(),
        "OMEGA2" => omega2(),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, Graph)> {
    NAMES
        .iter()
        .map(|&n| (n, by_name(n).expect("listed fixture exists")))
        .collect()
}

/// One vertex, no edges.
pub fn point() -> Graph {
    Graph::builder().vertex("v").build().expect("fixture")
}

/// u -e-> v -f-> w
pub fn line3() -> Graph {
    Graph::builder()
        .vertices(["u", "v", "w"])
        .edge("e", "u", "v")
        .edge("f", "v", "w")
        .build()
        .expect("fixture")
}

/// x -g-> u -e-> v -f-> w
pub fn entry4() -> Graph {
    Graph::builder()
        .vertices(["x", "u", "v", "w"])
        .edge("g", "x", "u")
        .edge("e", "u", "v")
        .edge("f", "v", "w")
        .build()
        .expect("fixture")
}

/// u -e-> v, u -f-> w
pub fn fork() -> Graph {
    Graph::builder()
        .vertices(["u", "v", "w"])
        .edge("e", "u", "v")
        .edge("f", "u", "w")
        .build()
        .expect("fixture")
}

/// One vertex with one loop.
pub fn loop1() -> Graph {
    Graph::builder()
        .vertex("v")
        .edge("e", "v", "v")
        .build()
        .expect("fixture")
}

/// One vertex with two loops.
pub fn rose2() -> Graph {
    Graph::builder()
        .vertex("v")
        .edge("e", "v", "v")
        .edge("f", "v", "v")
        .build()
        .expect("fixture")
}

/// v emits infinitely many edges to w.
pub fn omega() -> Graph {
    Graph::builder()
        .vertices(["v", "w"])
        .bundle("e", "v", "w", Multiplicity::Omega)
        .build()
        .expect("fixture")
}

/// v emits infinitely many edges to w and one edge g to u.
pub fn omega2() -> Graph {
    Graph::builder()
        .vertices(["v", "w", "u"])
        .bundle("e", "v", "w", Multiplicity::Omega)
        .edge("g", "v", "u")
        .build()
        .expect("fixture")
}
