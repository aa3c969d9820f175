//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::{family, random_corpus};
use num_complex::Complex64;
use qpagerank::diagnostics::default_alpha_grid;
use qpagerank::graph::GraphRng;
use qpagerank::oqw::{evolve_observed, full_space_step, induced_markov_matrix};
use qpagerank::{
    alpha_sweep, compare, google_matrix, kendall_tau, layers_from_root, pagerank, rank_vertices, run, step,
    ComplexMatrix, DiGraph, RankVector, WalkParams, WalkState,
};

type Outcome = Result<String, String>;

const GOLD_TOL: f64 = 5e-4;

fn params(alpha: f64) -> WalkParams {
    WalkParams::new(alpha, 1e-4, 10_000).unwrap()
}

fn pr(g: &DiGraph, alpha: f64) -> RankVector {
    pagerank(g, alpha, 1e-4, 10_000).unwrap().0
}

fn qpr(g: &DiGraph, alpha: f64) -> RankVector {
    run(g, &params(alpha), false).unwrap().qpr
}

/// Records the largest deviation seen and the first violation.
struct Check {
    worst: f64,
    failure: Option<String>,
}

impl Check {
    fn new() -> Self {
        Self { worst: 0.0, failure: None }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let dev = (got - want).abs();
        self.worst = self.worst.max(dev);
        if (dev.is_nan() || dev > tol) && self.failure.is_none() {
            self.failure = Some(format!("{what}: got {got:.6}, want {want:.6} (tol {tol:e})"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what.to_string());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        match self.failure {
            None => Ok(format!("{summary}; max deviation {:.2e}", self.worst)),
            Some(f) => Err(f),
        }
    }
}

fn by_layer(values: &RankVector, layers: &[usize], check: &mut Check, label: &str) -> Vec<f64> {
    let depth = layers.iter().max().unwrap() + 1;
    let mut rep = vec![f64::NAN; depth];
    for (v, &l) in layers.iter().enumerate() {
        if rep[l].is_nan() {
            rep[l] = values[v];
        } else {
            check.close(&format!("{label} layer {l} vertex {v} vs layer mate"), values[v], rep[l], 1e-9);
        }
    }
    rep
}

fn c1_path() -> Outcome {
    let g = family("path", &[("n", 60.0)], 0);
    let want_pr = [0.0107, 0.0193, 0.0181, 0.0175, 0.0171, 0.0169, 0.0168, 0.0167];
    let want_q = [0.0135, 0.0185, 0.0175, 0.0170, 0.0168, 0.0167, 0.0167, 0.0167];
    let mut c = Check::new();
    for (label, values, want) in [("PageRank", pr(&g, 0.85), want_pr), ("qPageRank", qpr(&g, 0.85), want_q)] {
        for (i, &w) in want.iter().enumerate() {
            c.close(&format!("{label} vertex {i}"), values[i], w, GOLD_TOL);
        }
        for i in want.len()..60 - want.len() {
            c.close(&format!("{label} interior vertex {i}"), values[i], 0.0167, GOLD_TOL);
        }
        for i in 0..30 {
            c.close(&format!("{label} mirror of {i}"), values[59 - i], values[i], 1e-12);
        }
    }
    c.finish("path(60) PageRank and qPageRank at alpha 0.85".into())
}

fn c2_uniform() -> Outcome {
    let mut c = Check::new();
    for (g, n) in [
        (family("complete", &[("n", 20.0)], 0), 20.0),
        (family("cycle", &[("n", 60.0)], 0), 60.0),
    ] {
        for (label, values) in [("PageRank", pr(&g, 0.85)), ("qPageRank", qpr(&g, 0.85))] {
            for &x in values.as_slice() {
                c.close(&format!("{label} on {n}-vertex graph"), x, 1.0 / n, 1e-6);
            }
        }
    }
    c.finish("complete(20) = 0.05 and cycle(60) = 1/60 for both".into())
}

fn c3_star_wheel() -> Outcome {
    // Classical column at alpha 0.80, quantum column at 0.85 (see README).
    let mut c = Check::new();
    let star = family("star", &[("n", 61.0)], 0);
    let wheel = family("wheel", &[("n", 61.0)], 0);
    for (name, g, p_hub, p_leaf, q_hub, q_leaf) in [
        ("star", &star, 0.4462, 0.0092, 0.3029, 0.0116),
        ("wheel", &wheel, 0.2132, 0.0133, 0.1794, 0.0139),
    ] {
        let p = pr(g, 0.80);
        let q = qpr(g, 0.85);
        c.close(&format!("{name} PageRank centre"), p[0], p_hub, GOLD_TOL);
        c.close(&format!("{name} qPageRank centre"), q[0], q_hub, GOLD_TOL);
        for v in 1..61 {
            c.close(&format!("{name} PageRank vertex {v}"), p[v], p_leaf, GOLD_TOL);
            c.close(&format!("{name} qPageRank vertex {v}"), q[v], q_leaf, GOLD_TOL);
        }
    }
    c.finish("star(61) and wheel(61) centre and rim values".into())
}

fn c4_balanced_tree() -> Outcome {
    let g = family("balanced_tree", &[("r", 3.0), ("h", 4.0)], 0);
    let layers = layers_from_root(&g, 0).unwrap();
    let mut c = Check::new();
    let p = by_layer(&pr(&g, 0.80), &layers, &mut c, "PageRank");
    let q = by_layer(&qpr(&g, 0.85), &layers, &mut c, "qPageRank");
    let want_p = [0.0091, 0.0123, 0.0138, 0.0161, 0.0049];
    let want_q = [0.0086, 0.0109, 0.0119, 0.0133, 0.0061];
    for l in 0..5 {
        c.close(&format!("PageRank layer {l}"), p[l], want_p[l], GOLD_TOL);
        c.close(&format!("qPageRank layer {l}"), q[l], want_q[l], GOLD_TOL);
    }
    c.finish("balanced_tree(3,4) per-layer values, layers uniform".into())
}

fn c5_directed_tree() -> Outcome {
    let g = family("directed_balanced_tree_out", &[("r", 3.0), ("h", 4.0)], 0);
    let layers = layers_from_root(&g, 0).unwrap();
    let mut c = Check::new();
    let p = by_layer(&pr(&g, 0.85), &layers, &mut c, "PageRank");
    let q = by_layer(&qpr(&g, 0.85), &layers, &mut c, "qPageRank");
    let want_p = [0.005975, 0.007668, 0.008148, 0.008283, 0.008322];
    let want_q = [0.0016, 0.0020, 0.0021, 0.0022, 0.0113];
    for l in 0..5 {
        c.close(&format!("PageRank layer {l}"), p[l], want_p[l], 5e-6);
        c.close(&format!("qPageRank layer {l}"), q[l], want_q[l], GOLD_TOL);
    }
    let tau = compare(&g, &params(0.85)).unwrap().tau;
    c.holds(&format!("Kendall tau {tau} != 1"), tau == 1.0);
    c.finish(format!("directed tree layers, tau = {tau}"))
}

fn c6_paparo7() -> Outcome {
    let g = family("paparo7", &[], 0);
    let q = qpr(&g, 0.85);
    let want = [0.0434, 0.2895, 0.0601, 0.0272, 0.2627, 0.0473, 0.2697];
    let mut c = Check::new();
    for (v, &w) in want.iter().enumerate() {
        c.close(&format!("vertex {}", v + 1), q[v], w, GOLD_TOL);
    }
    let ranks = rank_vertices(&q);
    c.holds(&format!("ranking {ranks:?}"), ranks == [6, 1, 4, 7, 3, 5, 2]);
    c.finish(format!("7-vertex toy graph, ranking {ranks:?}"))
}

fn c7_karate() -> Outcome {
    let g = family("karate", &[], 0);
    let tau = compare(&g, &params(0.85)).unwrap().tau;
    let target = 0.860963;
    if (tau - target).abs() <= 0.02 {
        Ok(format!("karate tau {tau:.6}"))
    } else {
        Err(format!(
            "karate tau {tau:.6}, want {target} +- 0.02 (unweighted graph; see README)"
        ))
    }
}

/// Runs the walk on every corpus graph and applies `check` to each state.
fn per_state(mut check: impl FnMut(&str, usize, &WalkState, &mut Check)) -> Check {
    let mut c = Check::new();
    for (label, g) in random_corpus() {
        evolve_observed(&g, &params(0.85), |t, s| check(&label, t, s, &mut c)).unwrap();
    }
    c
}

fn c8_trace() -> Outcome {
    let c = per_state(|label, t, s, c| {
        c.close(&format!("{label} step {t} total trace"), s.total_trace().re, 1.0, 1e-12);
    });
    c.finish("trace 1 at every step on 20 random graphs".into())
}

fn c9_positivity() -> Outcome {
    let mut worst_eig = f64::INFINITY;
    let mut worst_herm: f64 = 0.0;
    let mut c = per_state(|label, t, s, c| {
        let e = s.min_eigenvalue().unwrap();
        let h = s.hermitian_residual();
        worst_eig = worst_eig.min(e);
        worst_herm = worst_herm.max(h);
        c.holds(&format!("{label} step {t}: min eigenvalue {e:e}"), e >= -1e-10);
        c.holds(&format!("{label} step {t}: Hermitian residual {h:e}"), h <= 1e-12);
    });
    match c.failure.take() {
        None => Ok(format!("min eigenvalue {worst_eig:.2e}, max Hermitian residual {worst_herm:.2e}")),
        Some(f) => Err(f),
    }
}

fn c10_trace_closure() -> Outcome {
    let mut c = Check::new();
    for (label, g) in random_corpus() {
        let m = induced_markov_matrix(&g, 0.85).unwrap();
        let mut s = WalkState::initial(g.n()).unwrap();
        let mut p = s.probabilities().unwrap().into_vec();
        for t in 1..=20 {
            s = step(&s, &g, 0.85).unwrap();
            p = m.mul_vec(&p);
            for (v, (&a, &b)) in p.iter().zip(s.probabilities().unwrap().as_slice()).enumerate() {
                c.close(&format!("{label} t={t} vertex {v}"), b, a, 1e-12);
            }
        }
    }
    c.finish("probabilities equal M^t p0 for t <= 20".into())
}

/// Random valid state whose blocks are not multiples of the identity.
fn random_state(rng: &mut GraphRng, n: usize) -> WalkState {
    let mut weights: Vec<f64> = (0..n).map(|_| 0.05 + rng.unit()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let blocks = weights
        .iter()
        .map(|&w| {
            let a = ComplexMatrix::from_fn(n, |_, _| Complex64::new(rng.unit() - 0.5, rng.unit() - 0.5));
            let m = a.matmul(&a.conj_transpose()).unwrap();
            let tr = m.trace().re;
            m.scale(w / tr)
        })
        .collect();
    WalkState::from_blocks(blocks).unwrap()
}

fn c11_full_space() -> Outcome {
    let mut graphs: Vec<(String, DiGraph)> = Vec::new();
    let mut rng = GraphRng::new(11);
    for i in 0..50 {
        let n = 2 + rng.below(3);
        let p = [0.25, 0.5, 0.75][rng.below(3)];
        let g = family("erdos_renyi", &[("n", n as f64), ("p", p)], 1000 + i);
        graphs.push((format!("random digraph {i}"), g));
    }
    for n in 1..=4 {
        graphs.push((format!("path({n})"), family("path", &[("n", n as f64)], 0)));
        graphs.push((format!("complete({n})"), family("complete", &[("n", n as f64)], 0)));
        graphs.push((
            format!("directed path({n})"),
            DiGraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).unwrap(),
        ));
    }
    for n in 3..=4 {
        graphs.push((format!("cycle({n})"), family("cycle", &[("n", n as f64)], 0)));
        graphs.push((
            format!("directed cycle({n})"),
            DiGraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap(),
        ));
    }
    let mut c = Check::new();
    for (label, g) in &graphs {
        let n = g.n();
        for start in [WalkState::initial(n).unwrap(), random_state(&mut rng, n)] {
            let (mut a, mut b) = (start.clone(), start);
            for t in 1..=3 {
                a = step(&a, g, 0.85).unwrap();
                b = full_space_step(&b, g, 0.85).unwrap();
                for (x, y) in a.blocks().iter().zip(b.blocks()) {
                    let d = x.max_abs_diff(y);
                    c.close(&format!("{label} step {t}"), d, 0.0, 1e-12);
                }
            }
        }
    }
    c.finish(format!("{} graphs with n <= 4, 3 steps from two starts", graphs.len()))
}

fn c12_convergence() -> Outcome {
    let mut c = Check::new();
    let mut slowest = (0usize, String::new());
    for (label, g) in random_corpus() {
        for alpha in [0.05, 0.25, 0.5, 0.75, 0.85, 0.95] {
            let budget = if alpha == 0.85 { 60 } else { 100 };
            let walk = qpagerank::oqw::evolve(&g, &WalkParams::new(alpha, 1e-4, budget).unwrap(), false).unwrap();
            c.holds(
                &format!("{label} alpha {alpha}: no convergence within {budget} steps"),
                walk.converged,
            );
            if walk.steps > slowest.0 {
                slowest = (walk.steps, format!("{label} at alpha {alpha}"));
            }
        }
    }
    c.finish(format!("slowest {} steps ({})", slowest.0, slowest.1))
}

fn c13_symmetry() -> Outcome {
    let mut c = Check::new();
    let orbit_cases: Vec<(&str, DiGraph, Vec<usize>)> = {
        let star = family("star", &[("n", 61.0)], 0);
        let wheel = family("wheel", &[("n", 61.0)], 0);
        let tree = family("balanced_tree", &[("r", 3.0), ("h", 4.0)], 0);
        let dtree = family("directed_balanced_tree_out", &[("r", 3.0), ("h", 4.0)], 0);
        let cycle = family("cycle", &[("n", 60.0)], 0);
        let complete = family("complete", &[("n", 20.0)], 0);
        let hub_rim = |n: usize| (0..n).map(|v| usize::from(v > 0)).collect::<Vec<_>>();
        vec![
            ("star", star, hub_rim(61)),
            ("wheel", wheel, hub_rim(61)),
            ("balanced_tree", tree.clone(), layers_from_root(&tree, 0).unwrap()),
            ("directed tree", dtree.clone(), layers_from_root(&dtree, 0).unwrap()),
            ("cycle", cycle, vec![0; 60]),
            ("complete", complete, vec![0; 20]),
        ]
    };
    for (name, g, orbit) in &orbit_cases {
        let q = qpr(g, 0.85);
        let mut rep: std::collections::BTreeMap<usize, f64> = Default::default();
        for (v, &o) in orbit.iter().enumerate() {
            let r = *rep.entry(o).or_insert(q[v]);
            c.close(&format!("{name} vertex {v} orbit {o}"), q[v], r, 1e-9);
        }
    }
    let mut rng = GraphRng::new(13);
    for (label, g) in random_corpus().into_iter().take(10) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        let h = g.relabel(&perm).unwrap();
        let q = qpr(&g, 0.85);
        let qh = qpr(&h, 0.85);
        for v in 0..n {
            c.close(&format!("{label} relabelled vertex {v}"), qh[perm[v]], q[v], 1e-12);
        }
    }
    c.finish("orbits equal within 1e-9, relabelling within 1e-12".into())
}

/// `sum_{i != j} sign(a_i - a_j) sign(b_i - b_j) / (n (n - 1))`.
fn tau_by_signs(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let mut s: i64 = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let sa = (a[i] as i64 - a[j] as i64).signum();
                let sb = (b[i] as i64 - b[j] as i64).signum();
                s += sa * sb;
            }
        }
    }
    s as f64 / (n * (n - 1)) as f64
}

fn c14_kendall() -> Outcome {
    let mut rng = GraphRng::new(14);
    let mut c = Check::new();
    let shuffled = |rng: &mut GraphRng, n: usize| {
        let mut p: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.below(i + 1));
        }
        p
    };
    for k in 0..1000 {
        let n = 2 + rng.below(7);
        let a = shuffled(&mut rng, n);
        let b = shuffled(&mut rng, n);
        let tau = kendall_tau(&a, &b).unwrap();
        let oracle = tau_by_signs(&a, &b);
        c.holds(&format!("sample {k}: {a:?} vs {b:?} gave {tau}, oracle {oracle}"), tau == oracle);
    }
    c.finish("1000 permutation pairs with n <= 8, exact".into())
}

fn c15_alpha_sweep() -> Outcome {
    let grid = default_alpha_grid();
    let mut c = Check::new();
    let mut graphs = vec![
        ("complete(8)".to_string(), family("complete", &[("n", 8.0)], 0)),
        ("balanced_tree(3,4)".to_string(), family("balanced_tree", &[("r", 3.0), ("h", 4.0)], 0)),
    ];
    graphs.extend(random_corpus().into_iter().step_by(4));
    let mut records = 0;
    for (label, g) in &graphs {
        for r in alpha_sweep(g, &grid, 1e-4, 10_000).unwrap() {
            records += 1;
            c.holds(&format!("{label} alpha {} did not converge", r.alpha), r.converged);
            if let (Some(f), Some(d)) = (r.fidelity, r.trace_distance) {
                c.holds(&format!("{label} alpha {}: fidelity {f}", r.alpha), (0.0..=1.0 + 1e-9).contains(&f));
                c.holds(&format!("{label} alpha {}: distance {d}", r.alpha), (0.0..=1.0 + 1e-9).contains(&d));
                if label == "complete(8)" {
                    c.close(&format!("complete(8) alpha {} fidelity", r.alpha), f, 1.0, 1e-9);
                    c.close(&format!("complete(8) alpha {} distance", r.alpha), d, 0.0, 1e-9);
                }
            }
        }
    }
    c.finish(format!("{records} records on {} graphs", graphs.len()))
}

fn c16_classical_residual() -> Outcome {
    let eps = 1e-4;
    let mut c = Check::new();
    let mut worst_residual: f64 = 0.0;
    for (label, g) in random_corpus() {
        let (p, _) = pagerank(&g, 0.85, eps, 10_000).unwrap();
        let gm = google_matrix(&g, 0.85).unwrap();
        let next = gm.apply(p.as_slice());
        let residual = p.distance(&RankVector::new(next).unwrap());
        worst_residual = worst_residual.max(residual);
        c.holds(&format!("{label}: residual {residual:e} >= 2 eps"), residual < 2.0 * eps);
        c.close(&format!("{label}: sum"), p.as_slice().iter().sum(), 1.0, 1e-9);
    }
    c.finish(format!("largest residual {worst_residual:.2e}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 16] = [
        ("path(60) golden values", c1_path),
        ("complete(20) and cycle(60) uniform", c2_uniform),
        ("star(61) and wheel(61) golden values", c3_star_wheel),
        ("balanced_tree(3,4) golden values", c4_balanced_tree),
        ("directed trinary tree golden values and tau", c5_directed_tree),
        ("7-vertex toy graph golden values", c6_paparo7),
        ("karate club Kendall tau", c7_karate),
        ("trace preservation", c8_trace),
        ("Hermitian PSD blocks", c9_positivity),
        ("trace-closure oracle", c10_trace_closure),
        ("reduced step equals full-space channel", c11_full_space),
        ("convergence budgets", c12_convergence),
        ("orbit symmetry and relabel equivariance", c13_symmetry),
        ("Kendall tau brute-force equivalence", c14_kendall),
        ("alpha-sweep sanity", c15_alpha_sweep),
        ("classical fixed-point residual", c16_classical_residual),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
