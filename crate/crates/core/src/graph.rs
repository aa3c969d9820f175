//! Directed graph model, edge-list ingestion and graph generators.
//!
//! Undirected graphs are represented as symmetric digraphs: every edge
//! `{u, v}` is stored as the two arcs `u -> v` and `v -> u`.
//!
//! Random families draw from a ChaCha8 stream seeded with the caller's
//! 64-bit seed. Integers are sampled by rejection from raw `u64` words and
//! reals as `(word >> 11) * 2^-53`, so an instance depends only on
//! `(family, params, seed)` and not on platform or `rand` version.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{invalid, Error, Result};

/// Simple digraph on vertices `0..n`: no self-loops, no parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl DiGraph {
    /// Builds a graph from arcs `(u, v)` meaning `u -> v`. Duplicate arcs are
    /// collapsed; self-loops and out-of-range ids are rejected.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("graph must have at least one vertex"));
        }
        let mut out_sets = vec![BTreeSet::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(invalid(format!("arc {u} -> {v} out of range for {n} vertices")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            out_sets[u].insert(v);
        }
        let out_adj: Vec<Vec<usize>> = out_sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut in_adj = vec![Vec::new(); n];
        for (u, outs) in out_adj.iter().enumerate() {
            for &v in outs {
                in_adj[v].push(u);
            }
        }
        Ok(Self { out_adj, in_adj })
    }

    /// Builds a symmetric digraph from undirected edges.
    pub fn from_undirected_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: Vec<(usize, usize)> = edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Self::from_arcs(n, arcs)
    }

    /// Parses the edge-list text format: optional `n <N>` header line, one
    /// `<u> <v>` arc per line, `#` comment lines.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut arcs = Vec::new();
        let mut seen_content = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split([' ', '\t']).filter(|f| !f.is_empty()).collect();
            if fields.len() != 2 {
                return Err(parse_err(line_no, format!("expected two fields, got {}", fields.len())));
            }
            if fields[0] == "n" {
                if seen_content {
                    return Err(parse_err(line_no, "header `n <N>` must precede all arcs"));
                }
                declared = Some(parse_id(fields[1], line_no)?);
                seen_content = true;
                continue;
            }
            seen_content = true;
            let u = parse_id(fields[0], line_no)?;
            let v = parse_id(fields[1], line_no)?;
            if u == v {
                return Err(Error::InvalidInput(format!("line {line_no}: self-loop at vertex {u}")));
            }
            arcs.push((u, v));
        }
        let n = match declared {
            Some(n) => n,
            None => arcs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Self::from_arcs(n, arcs)
    }

    pub fn read_edge_list(mut reader: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        let text = String::from_utf8(bytes).map_err(|e| invalid(format!("edge list is not UTF-8: {e}")))?;
        Self::from_edge_list(&text)
    }

    /// Serializes in the edge-list format, header included.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n());
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Sorted out-neighbours of `v`.
    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Sorted in-neighbours of `v` (the vertices pointing into `v`).
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    #[inline]
    pub fn is_dangling(&self, v: usize) -> bool {
        self.out_adj[v].is_empty()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Adds the reverse of every arc.
    pub fn symmetrize(&self) -> Self {
        let arcs: Vec<_> = self.arcs().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Self::from_arcs(self.n(), arcs).expect("symmetrizing a valid graph")
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid("relabeling is not a permutation"));
            }
        }
        Self::from_arcs(n, self.arcs().map(|(u, v)| (perm[u], perm[v])))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(field: &str, line: usize) -> Result<usize> {
    if field.starts_with('-') {
        return Err(parse_err(line, format!("negative vertex id `{field}`")));
    }
    field
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid vertex id `{field}`")))
}

/// Breadth-first distance from `root`, ignoring arc direction.
pub fn layers_from_root(g: &DiGraph, root: usize) -> Result<Vec<usize>> {
    let n = g.n();
    if root >= n {
        return Err(invalid(format!("root {root} out of range")));
    }
    let mut layer = vec![usize::MAX; n];
    let mut queue = VecDeque::from([root]);
    layer[root] = 0;
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
            if layer[w] == usize::MAX {
                layer[w] = layer[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = layer.iter().position(|&l| l == usize::MAX) {
        return Err(invalid(format!("vertex {v} is not reachable from root {root}")));
    }
    Ok(layer)
}

/// Named graph families accepted by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Wheel,
    BalancedTree,
    DirectedBalancedTreeOut,
    Karate,
    ErdosRenyi,
    WattsStrogatz,
    BarabasiAlbert,
    ScaleFreeDirected,
    Gn,
    Gnc,
    Gnr,
    RandomKOut,
    Paparo7,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::Wheel,
        Family::BalancedTree,
        Family::DirectedBalancedTreeOut,
        Family::Karate,
        Family::ErdosRenyi,
        Family::WattsStrogatz,
        Family::BarabasiAlbert,
        Family::ScaleFreeDirected,
        Family::Gn,
        Family::Gnc,
        Family::Gnr,
        Family::RandomKOut,
        Family::Paparo7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Wheel => "wheel",
            Family::BalancedTree => "balanced_tree",
            Family::DirectedBalancedTreeOut => "directed_balanced_tree_out",
            Family::Karate => "karate",
            Family::ErdosRenyi => "erdos_renyi",
            Family::WattsStrogatz => "watts_strogatz",
            Family::BarabasiAlbert => "barabasi_albert",
            Family::ScaleFreeDirected => "scale_free_directed",
            Family::Gn => "gn",
            Family::Gnc => "gnc",
            Family::Gnr => "gnr",
            Family::RandomKOut => "random_k_out",
            Family::Paparo7 => "paparo7",
        }
    }

    /// Whether the family depends on the seed.
    pub fn is_random(self) -> bool {
        matches!(
            self,
            Family::ErdosRenyi
                | Family::WattsStrogatz
                | Family::BarabasiAlbert
                | Family::ScaleFreeDirected
                | Family::Gn
                | Family::Gnc
                | Family::Gnr
                | Family::RandomKOut
        )
    }

    fn allowed_params(self) -> &'static [&'static str] {
        match self {
            Family::Path | Family::Cycle | Family::Complete | Family::Star | Family::Wheel => &["n"],
            Family::Gn | Family::Gnc => &["n"],
            Family::BalancedTree | Family::DirectedBalancedTreeOut => &["r", "h"],
            Family::Karate | Family::Paparo7 => &[],
            Family::ErdosRenyi => &["n", "p", "directed"],
            Family::WattsStrogatz => &["n", "k", "p"],
            Family::BarabasiAlbert => &["n", "m"],
            Family::ScaleFreeDirected => &["n", "alpha", "beta", "gamma", "delta_in", "delta_out"],
            Family::Gnr => &["n", "p"],
            Family::RandomKOut => &["n", "k"],
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown graph family `{s}`")))
    }
}

/// `key=value` parameters for a generator.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilyParams(BTreeMap<String, String>);

impl FamilyParams {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insert.
    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    /// Parses one `key=value` pair.
    pub fn insert_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| invalid(format!("parameter `{pair}` is not of the form key=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(invalid(format!("parameter `{pair}` is not of the form key=value")));
        }
        self.0.insert(k.to_string(), v.to_string());
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn usize_or(&self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.0.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| invalid(format!("parameter `{key}` must be a non-negative integer, got `{v}`"))),
            None => default.ok_or_else(|| invalid(format!("missing required parameter `{key}`"))),
        }
    }

    fn f64_or(&self, key: &str, default: Option<f64>) -> Result<f64> {
        match self.0.get(key) {
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| invalid(format!("parameter `{key}` must be a real number, got `{v}`"))),
            None => default.ok_or_else(|| invalid(format!("missing required parameter `{key}`"))),
        }
    }

    fn probability(&self, key: &str, default: Option<f64>) -> Result<f64> {
        let p = self.f64_or(key, default)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(format!("parameter `{key}` must lie in [0, 1], got {p}")));
        }
        Ok(p)
    }
}

/// Builds a graph of the named family. Deterministic families ignore `seed`.
pub fn generate(name: &str, params: &FamilyParams, seed: u64) -> Result<DiGraph> {
    let family: Family = name.parse()?;
    generate_family(family, params, seed)
}

pub fn generate_family(family: Family, params: &FamilyParams, seed: u64) -> Result<DiGraph> {
    let allowed = family.allowed_params();
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(invalid(format!("family `{}` does not take parameter `{k}`", family.name())));
    }
    let mut rng = GraphRng::new(seed);
    match family {
        Family::Path => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            DiGraph::from_undirected_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle => {
            let n = at_least(params.usize_or("n", None)?, 3, "n")?;
            DiGraph::from_undirected_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Complete => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            DiGraph::from_arcs(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
        }
        Family::Star => {
            let n = at_least(params.usize_or("n", None)?, 2, "n")?;
            DiGraph::from_undirected_edges(n, (1..n).map(|i| (0, i)))
        }
        Family::Wheel => {
            let n = at_least(params.usize_or("n", None)?, 4, "n")?;
            let rim = n - 1;
            let spokes = (1..n).map(|i| (0, i));
            let ring = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
            DiGraph::from_undirected_edges(n, spokes.chain(ring))
        }
        Family::BalancedTree => {
            let (n, edges) = balanced_tree_edges(params)?;
            DiGraph::from_undirected_edges(n, edges)
        }
        Family::DirectedBalancedTreeOut => {
            let (n, edges) = balanced_tree_edges(params)?;
            DiGraph::from_arcs(n, edges)
        }
        Family::Karate => DiGraph::from_undirected_edges(34, KARATE_EDGES.iter().copied()),
        Family::Paparo7 => DiGraph::from_edge_list(PAPARO7_EDGE_LIST),
        Family::ErdosRenyi => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            let p = params.probability("p", None)?;
            let directed = params.usize_or("directed", Some(1))? != 0;
            erdos_renyi(n, p, directed, &mut rng)
        }
        Family::WattsStrogatz => {
            let n = params.usize_or("n", None)?;
            let k = params.usize_or("k", None)?;
            let p = params.probability("p", None)?;
            watts_strogatz(n, k, p, &mut rng)
        }
        Family::BarabasiAlbert => {
            let n = params.usize_or("n", None)?;
            let m = params.usize_or("m", None)?;
            barabasi_albert(n, m, &mut rng)
        }
        Family::ScaleFreeDirected => {
            let cfg = ScaleFreeConfig {
                n: at_least(params.usize_or("n", None)?, 3, "n")?,
                alpha: params.probability("alpha", Some(0.41))?,
                beta: params.probability("beta", Some(0.54))?,
                gamma: params.probability("gamma", Some(0.05))?,
                delta_in: params.f64_or("delta_in", Some(0.2))?,
                delta_out: params.f64_or("delta_out", Some(0.0))?,
            };
            scale_free_directed(&cfg, &mut rng)
        }
        Family::Gn => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            gn(n, &mut rng)
        }
        Family::Gnc => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            gnc(n, &mut rng)
        }
        Family::Gnr => {
            let n = at_least(params.usize_or("n", None)?, 1, "n")?;
            let p = params.probability("p", Some(0.5))?;
            gnr(n, p, &mut rng)
        }
        Family::RandomKOut => {
            let n = at_least(params.usize_or("n", None)?, 2, "n")?;
            let k = params.usize_or("k", None)?;
            random_k_out(n, k, &mut rng)
        }
    }
}

fn at_least(value: usize, min: usize, key: &str) -> Result<usize> {
    if value < min {
        return Err(invalid(format!("parameter `{key}` must be at least {min}, got {value}")));
    }
    Ok(value)
}

/// Edges of the complete `r`-ary tree of height `h`, parent before child,
/// vertices numbered breadth-first.
fn balanced_tree_edges(params: &FamilyParams) -> Result<(usize, Vec<(usize, usize)>)> {
    let r = at_least(params.usize_or("r", None)?, 1, "r")?;
    let h = params.usize_or("h", None)?;
    let mut n: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=h {
        n = n
            .checked_add(layer)
            .filter(|&n| n <= 1_000_000)
            .ok_or_else(|| invalid("balanced tree is too large"))?;
        layer = layer.saturating_mul(r);
    }
    let edges = (1..n).map(|child| ((child - 1) / r, child)).collect();
    Ok((n, edges))
}

/// Seeded sampler for the random families.
#[derive(Debug, Clone)]
pub struct GraphRng(ChaCha8Rng);

impl GraphRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.0.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }
}

/// `G(n, p)`: one coin flip per ordered pair (directed) or unordered pair,
/// in lexicographic order.
fn erdos_renyi(n: usize, p: f64, directed: bool, rng: &mut GraphRng) -> Result<DiGraph> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.unit() < p {
                arcs.push((u, v));
                if !directed {
                    arcs.push((v, u));
                }
            }
        }
    }
    DiGraph::from_arcs(n, arcs)
}

/// Ring lattice with `k / 2` neighbours on each side, each lattice edge
/// `(u, u + j)` rewired with probability `p` to a uniform non-neighbour.
fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut GraphRng) -> Result<DiGraph> {
    if k < 2 || k >= n {
        return Err(invalid(format!("watts_strogatz needs 2 <= k < n, got k={k}, n={n}")));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let link = |adj: &mut Vec<BTreeSet<usize>>, u: usize, v: usize| {
        adj[u].insert(v);
        adj[v].insert(u);
    };
    for j in 1..=k / 2 {
        for u in 0..n {
            link(&mut adj, u, (u + j) % n);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.unit() >= p || !adj[u].contains(&v) {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let mut w = rng.below(n);
            while w == u || adj[u].contains(&w) {
                w = rng.below(n);
            }
            adj[u].remove(&v);
            adj[v].remove(&u);
            link(&mut adj, u, w);
        }
    }
    let edges: Vec<_> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    DiGraph::from_undirected_edges(n, edges)
}

/// Preferential attachment: `m` seed vertices without edges, then each new
/// vertex links to `m` distinct targets drawn from the repeated-node urn.
fn barabasi_albert(n: usize, m: usize, rng: &mut GraphRng) -> Result<DiGraph> {
    if m < 1 || m >= n {
        return Err(invalid(format!("barabasi_albert needs 1 <= m < n, got m={m}, n={n}")));
    }
    let mut edges = Vec::with_capacity((n - m) * m);
    let mut urn: Vec<usize> = Vec::with_capacity(2 * (n - m) * m);
    let mut targets: Vec<usize> = (0..m).collect();
    for source in m..n {
        for &t in &targets {
            edges.push((source, t));
        }
        urn.extend(targets.iter().copied());
        urn.extend(std::iter::repeat_n(source, m));
        let mut chosen = BTreeSet::new();
        while chosen.len() < m {
            chosen.insert(urn[rng.below(urn.len())]);
        }
        targets = chosen.into_iter().collect();
    }
    DiGraph::from_undirected_edges(n, edges)
}

struct ScaleFreeConfig {
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta_in: f64,
    delta_out: f64,
}

/// Directed scale-free growth (Bollobás–Borgs–Chayes–Riordan) from the
/// 3-cycle. Self-loops and repeated arcs of the multigraph are dropped.
fn scale_free_directed(cfg: &ScaleFreeConfig, rng: &mut GraphRng) -> Result<DiGraph> {
    if (cfg.alpha + cfg.beta + cfg.gamma - 1.0).abs() > 1e-9 {
        return Err(invalid("scale_free_directed needs alpha + beta + gamma = 1"));
    }
    if cfg.delta_in < 0.0 || cfg.delta_out < 0.0 {
        return Err(invalid("scale_free_directed needs non-negative delta_in and delta_out"));
    }
    let mut arcs: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut nodes = 3;

    // Preferential choice: a uniform vertex with probability
    // delta * nodes / (arcs + delta * nodes), else an endpoint of a uniform arc.
    let pick = |rng: &mut GraphRng, arcs: &[(usize, usize)], nodes: usize, delta: f64, by_target: bool| {
        let uniform_mass = delta * nodes as f64;
        let total = arcs.len() as f64 + uniform_mass;
        if rng.unit() * total < uniform_mass {
            rng.below(nodes)
        } else {
            let (u, v) = arcs[rng.below(arcs.len())];
            if by_target {
                v
            } else {
                u
            }
        }
    };

    while nodes < cfg.n {
        let r = rng.unit();
        let (u, v) = if r < cfg.alpha {
            let w = pick(rng, &arcs, nodes, cfg.delta_in, true);
            nodes += 1;
            (nodes - 1, w)
        } else if r < cfg.alpha + cfg.beta {
            let u = pick(rng, &arcs, nodes, cfg.delta_out, false);
            let w = pick(rng, &arcs, nodes, cfg.delta_in, true);
            (u, w)
        } else {
            let u = pick(rng, &arcs, nodes, cfg.delta_out, false);
            nodes += 1;
            (u, nodes - 1)
        };
        arcs.push((u, v));
    }
    DiGraph::from_arcs(cfg.n, arcs.into_iter().filter(|(u, v)| u != v))
}

/// Growing network with linear kernel: each new vertex points to one older
/// vertex chosen with probability proportional to its degree.
fn gn(n: usize, rng: &mut GraphRng) -> Result<DiGraph> {
    if n == 1 {
        return DiGraph::from_arcs(1, []);
    }
    let mut arcs = vec![(1, 0)];
    let mut degree: Vec<usize> = vec![1, 1];
    let mut total: usize = 2;
    for source in 2..n {
        let mut r = rng.below(total);
        let mut target = 0;
        for (t, &d) in degree.iter().enumerate() {
            if r < d {
                target = t;
                break;
            }
            r -= d;
        }
        arcs.push((source, target));
        degree.push(1);
        degree[target] += 1;
        total += 2;
    }
    DiGraph::from_arcs(n, arcs)
}

/// Growing network with copying: each new vertex points to a uniform older
/// vertex and to all of that vertex's successors.
fn gnc(n: usize, rng: &mut GraphRng) -> Result<DiGraph> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
    for source in 1..n {
        let target = rng.below(source);
        let mut outs = succ[target].clone();
        outs.push(target);
        succ.push(outs);
    }
    DiGraph::from_arcs(n, succ.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v))))
}

/// Growing network with redirection: each new vertex picks a uniform older
/// vertex and, with probability `p`, links to its successor instead.
fn gnr(n: usize, p: f64, rng: &mut GraphRng) -> Result<DiGraph> {
    let mut successor: Vec<Option<usize>> = vec![None];
    for source in 1..n {
        let mut target = rng.below(source);
        if rng.unit() < p {
            if let Some(next) = successor[target] {
                target = next;
            }
        }
        successor.push(Some(target));
    }
    DiGraph::from_arcs(n, successor.iter().enumerate().filter_map(|(u, t)| t.map(|t| (u, t))))
}

/// Every vertex points to `k` distinct uniform targets other than itself.
fn random_k_out(n: usize, k: usize, rng: &mut GraphRng) -> Result<DiGraph> {
    if k >= n {
        return Err(invalid(format!("random_k_out needs k < n, got k={k}, n={n}")));
    }
    let mut arcs = Vec::with_capacity(n * k);
    for u in 0..n {
        let mut pool: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        for i in 0..k {
            let j = i + rng.below(pool.len() - i);
            pool.swap(i, j);
            arcs.push((u, pool[i]));
        }
    }
    DiGraph::from_arcs(n, arcs)
}

const PAPARO7_EDGE_LIST: &str = include_str!("../data/paparo7.txt");

/// Zachary's karate club, 0-based, 78 undirected edges.
const KARATE_EDGES: [(usize, usize); 78] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11),
    (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2), (1, 3), (1, 7), (1, 13),
    (1, 17), (1, 19), (1, 21), (1, 30), (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27),
    (2, 28), (2, 32), (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
    (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33), (15, 32), (15, 33),
    (18, 32), (18, 33), (19, 33), (20, 32), (20, 33), (22, 32), (22, 33), (23, 25), (23, 27), (23, 29),
    (23, 32), (23, 33), (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33), (28, 31),
    (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32), (31, 33), (32, 33),
];
