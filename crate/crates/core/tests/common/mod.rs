#![allow(dead_code)]

use qpagerank::{generate, DiGraph, FamilyParams};

pub fn family(name: &str, params: &[(&str, f64)], seed: u64) -> DiGraph {
    let mut p = FamilyParams::new();
    for (k, v) in params {
        p = p.with(k, v);
    }
    generate(name, &p, seed).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Twenty seeded random graphs covering every random family.
pub fn random_corpus() -> Vec<(String, DiGraph)> {
    type Spec = (&'static str, Vec<(&'static str, f64)>, u64);
    let specs: Vec<Spec> = vec![
        ("erdos_renyi", vec![("n", 30.0), ("p", 0.1)], 1),
        ("erdos_renyi", vec![("n", 30.0), ("p", 0.1)], 2),
        ("erdos_renyi", vec![("n", 60.0), ("p", 0.05)], 3),
        ("erdos_renyi", vec![("n", 25.0), ("p", 0.15), ("directed", 0.0)], 4),
        ("watts_strogatz", vec![("n", 30.0), ("k", 4.0), ("p", 0.2)], 1),
        ("watts_strogatz", vec![("n", 30.0), ("k", 4.0), ("p", 0.2)], 2),
        ("watts_strogatz", vec![("n", 60.0), ("k", 6.0), ("p", 0.1)], 3),
        ("barabasi_albert", vec![("n", 30.0), ("m", 2.0)], 1),
        ("barabasi_albert", vec![("n", 30.0), ("m", 2.0)], 2),
        ("barabasi_albert", vec![("n", 60.0), ("m", 3.0)], 3),
        ("scale_free_directed", vec![("n", 40.0)], 1),
        ("scale_free_directed", vec![("n", 40.0)], 2),
        ("gn", vec![("n", 30.0)], 1),
        ("gn", vec![("n", 30.0)], 2),
        ("gnc", vec![("n", 30.0)], 1),
        ("gnc", vec![("n", 30.0)], 2),
        ("gnr", vec![("n", 30.0), ("p", 0.5)], 1),
        ("gnr", vec![("n", 30.0), ("p", 0.5)], 2),
        ("random_k_out", vec![("n", 30.0), ("k", 3.0)], 1),
        ("random_k_out", vec![("n", 30.0), ("k", 3.0)], 2),
    ];
    specs
        .into_iter()
        .map(|(name, params, seed)| {
            let label = format!("{name}(seed {seed})");
            (label, family(name, &params, seed))
        })
        .collect()
}
