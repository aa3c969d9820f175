//! The `qpr` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 I/O error,
//! 3 non-convergence (outputs are still written and flagged).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::classical::{pagerank, RankVector};
use crate::diagnostics::{alpha_sweep, comparison_of, default_alpha_grid, rank_vertices, top_k, AlphaSweepRecord};
use crate::error::Error;
use crate::graph::{generate, DiGraph, FamilyParams, GraphRng};
use crate::oqw::{evolve, WalkParams, WalkRun};
use crate::svg::{bar_chart, line_chart, Series};
use crate::{DEFAULT_ALPHA, DEFAULT_EPSILON, DEFAULT_MAX_STEPS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qpr", version, about = "Classical PageRank and open-quantum-walk qPageRank")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write both rank vectors (ranks.csv, ranks.json, bar.svg).
    Rank(CommonArgs),
    /// Kendall tau and top-5 lists of both rankings (compare.json).
    Compare(CommonArgs),
    /// Per-step probabilities of sampled vertices (convergence.csv/json/svg).
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of tracked vertices, including the top-ranked one.
        #[arg(long, default_value_t = 10)]
        sample: usize,
    },
    /// Fidelity and trace distance between the averaged and final state over
    /// a grid of damping factors (alpha_sweep.csv/json, two SVG curves).
    AlphaSweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated damping factors; defaults to 0.05, 0.10, ..., 0.95.
        #[arg(long, value_delimiter = ',', value_name = "A,B,...")]
        alphas: Option<Vec<f64>>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["edges", "family"])))]
pub struct CommonArgs {
    /// Edge-list file: optional `n N` header, then one `u v` arc per line.
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
    /// Graph family, e.g. path, star, balanced_tree, erdos_renyi.
    #[arg(long, value_name = "NAME")]
    pub family: Option<String>,
    /// Family parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", requires = "family")]
    pub params: Vec<String>,
    /// Add the reverse of every arc.
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Seed for random families and vertex sampling.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
    pub formats: Vec<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(Status::Converged) => EXIT_OK,
        Ok(Status::NotConverged) => {
            let _ = writeln!(err, "qpr: iteration did not converge within the step budget; results are partial");
            EXIT_NOT_CONVERGED
        }
        Err(e) => {
            let _ = writeln!(err, "qpr: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_USAGE,
    }
}

enum Status {
    Converged,
    NotConverged,
}

impl Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Converged
        } else {
            Status::NotConverged
        }
    }
}

type CliResult<T> = std::result::Result<T, Error>;

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<Status> {
    match &cli.command {
        Command::Rank(c) => cmd_rank(c, out),
        Command::Compare(c) => cmd_compare(c, out),
        Command::Convergence { common, sample } => cmd_convergence(common, *sample, out),
        Command::AlphaSweep { common, alphas } => cmd_alpha_sweep(common, alphas.as_deref(), out),
    }
}

struct Setup {
    graph: DiGraph,
    source: Value,
    params: WalkParams,
}

fn setup(c: &CommonArgs) -> CliResult<Setup> {
    let params = WalkParams::new(c.alpha, c.epsilon, c.max_steps)?;
    let (graph, source) = match (&c.edges, &c.family) {
        (Some(path), _) => {
            let file = fs::File::open(path)?;
            let g = DiGraph::read_edge_list(file)?;
            (g, json!({ "file": path.display().to_string() }))
        }
        (None, Some(name)) => {
            let mut fp = FamilyParams::new();
            for pair in &c.params {
                fp.insert_pair(pair)?;
            }
            let g = generate(name, &fp, c.seed)?;
            let params_json: Map<String, Value> = fp.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            (g, json!({ "family": name, "params": params_json }))
        }
        (None, None) => unreachable!("clap enforces a graph source"),
    };
    let graph = if c.undirected { graph.symmetrize() } else { graph };
    fs::create_dir_all(&c.out)?;
    Ok(Setup { graph, source, params })
}

fn metadata(c: &CommonArgs, s: &Setup) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("alpha".into(), json!(c.alpha));
    m.insert("epsilon".into(), json!(c.epsilon));
    m.insert("max_steps".into(), json!(c.max_steps));
    m.insert("seed".into(), json!(c.seed));
    m.insert("undirected".into(), json!(c.undirected));
    m.insert("graph".into(), s.source.clone());
    m.insert("n".into(), json!(s.graph.n()));
    m.insert("arcs".into(), json!(s.graph.arc_count()));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

/// Rounds to the 6 decimals used in every output file.
fn r6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6 + 0.0
}

fn wants(c: &CommonArgs, f: Format) -> bool {
    c.formats.contains(&f)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

fn write_json(dir: &Path, name: &str, value: &Value) -> CliResult<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    write_file(dir, name, &text)
}

fn report(out: &mut dyn Write, written: &[PathBuf]) -> CliResult<()> {
    for p in written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(())
}

/// Classical PageRank that keeps the last iterate when the budget runs out.
fn classical(s: &Setup) -> CliResult<(RankVector, usize, bool)> {
    match pagerank(&s.graph, s.params.alpha, s.params.epsilon, s.params.max_steps) {
        Ok((v, k)) => Ok((v, k, true)),
        Err(Error::NotConverged { iterations, last }) => Ok((last, iterations, false)),
        Err(e) => Err(e),
    }
}

fn cmd_rank(c: &CommonArgs, out: &mut dyn Write) -> CliResult<Status> {
    let s = setup(c)?;
    let (pr, iterations, pr_ok) = classical(&s)?;
    let walk = evolve(&s.graph, &s.params, false)?;
    let qpr = &walk.qpr;
    let rank_pr = rank_vertices(&pr);
    let rank_qpr = rank_vertices(qpr);
    let n = s.graph.n();
    let mut written = Vec::new();

    if wants(c, Format::Csv) {
        let mut csv = String::from("vertex,pagerank,qpagerank,rank_pr,rank_qpr\n");
        for v in 0..n {
            let _ = writeln!(csv, "{v},{:.6},{:.6},{},{}", pr[v], qpr[v], rank_pr[v], rank_qpr[v]);
        }
        written.push(write_file(&c.out, "ranks.csv", &csv)?);
    }
    if wants(c, Format::Json) {
        let mut meta = metadata(c, &s);
        meta.insert("steps".into(), json!(walk.steps));
        meta.insert("pagerank_iterations".into(), json!(iterations));
        meta.insert("converged".into(), json!({ "pagerank": pr_ok, "qpagerank": walk.converged }));
        let vertices: Vec<Value> = (0..n)
            .map(|v| {
                json!({
                    "vertex": v,
                    "pagerank": r6(pr[v]),
                    "qpagerank": r6(qpr[v]),
                    "rank_pr": rank_pr[v],
                    "rank_qpr": rank_qpr[v],
                })
            })
            .collect();
        written.push(write_json(&c.out, "ranks.json", &json!({ "metadata": meta, "vertices": vertices }))?);
    }
    if wants(c, Format::Svg) {
        let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let svg = bar_chart(
            "PageRank and qPageRank per vertex",
            &labels,
            &[
                Series {
                    name: "PageRank",
                    values: pr.as_slice(),
                },
                Series {
                    name: "qPageRank",
                    values: qpr.as_slice(),
                },
            ],
            "vertex",
            "probability",
        );
        written.push(write_file(&c.out, "bar.svg", &svg)?);
    }
    writeln!(
        out,
        "n={n} pagerank_iterations={iterations} qpagerank_steps={} converged={}",
        walk.steps,
        pr_ok && walk.converged
    )?;
    report(out, &written)?;
    Ok(Status::from(pr_ok && walk.converged))
}

fn cmd_compare(c: &CommonArgs, out: &mut dyn Write) -> CliResult<Status> {
    let s = setup(c)?;
    let (pr, iterations, pr_ok) = classical(&s)?;
    let walk = evolve(&s.graph, &s.params, false)?;
    let cmp = comparison_of(pr, iterations, walk.qpr.clone(), walk.steps);
    let mut written = Vec::new();
    if wants(c, Format::Json) {
        let mut meta = metadata(c, &s);
        meta.insert("steps".into(), json!(walk.steps));
        meta.insert("pagerank_iterations".into(), json!(iterations));
        meta.insert("converged".into(), json!({ "pagerank": pr_ok, "qpagerank": walk.converged }));
        let doc = json!({
            "metadata": meta,
            "tau": r6(cmp.tau),
            "rank_pagerank": cmp.rank_a,
            "rank_qpagerank": cmp.rank_b,
            "top5_pagerank": cmp.top_k_a,
            "top5_qpagerank": cmp.top_k_b,
        });
        written.push(write_json(&c.out, "compare.json", &doc)?);
    }
    writeln!(out, "kendall_tau={:.6}", cmp.tau)?;
    writeln!(out, "top5_pagerank={:?}", cmp.top_k_a)?;
    writeln!(out, "top5_qpagerank={:?}", cmp.top_k_b)?;
    report(out, &written)?;
    Ok(Status::from(pr_ok && walk.converged))
}

/// The top qPageRank vertex, then up to `size - 1` other vertices drawn with
/// the seeded sampler, in ascending order.
fn sample_vertices(qpr: &RankVector, size: usize, seed: u64) -> Vec<usize> {
    let n = qpr.len();
    let top = top_k(qpr, 1)[0];
    let mut pool: Vec<usize> = (0..n).filter(|&v| v != top).collect();
    let take = size.saturating_sub(1).min(pool.len());
    let mut rng = GraphRng::new(seed);
    for i in 0..take {
        let j = i + rng.below(pool.len() - i);
        pool.swap(i, j);
    }
    let mut rest = pool[..take].to_vec();
    rest.sort_unstable();
    let mut sample = vec![top];
    sample.extend(rest);
    sample
}

fn cmd_convergence(c: &CommonArgs, sample_size: usize, out: &mut dyn Write) -> CliResult<Status> {
    if sample_size == 0 {
        return Err(Error::InvalidInput("--sample must be at least 1".into()));
    }
    let s = setup(c)?;
    let walk: WalkRun = evolve(&s.graph, &s.params, false)?;
    let sample = sample_vertices(&walk.qpr, sample_size, c.seed);
    let mut written = Vec::new();

    if wants(c, Format::Csv) {
        let mut csv = String::from("step");
        for v in &sample {
            let _ = write!(csv, ",v{v}");
        }
        csv.push_str(",distance\n");
        for (t, p) in walk.trajectory.iter().enumerate() {
            let _ = write!(csv, "{t}");
            for &v in &sample {
                let _ = write!(csv, ",{:.6}", p[v]);
            }
            match t.checked_sub(1).map(|i| walk.distances[i]) {
                Some(d) => {
                    let _ = writeln!(csv, ",{d:.6e}");
                }
                None => csv.push_str(",\n"),
            }
        }
        written.push(write_file(&c.out, "convergence.csv", &csv)?);
    }
    if wants(c, Format::Json) {
        let mut meta = metadata(c, &s);
        meta.insert("steps".into(), json!(walk.steps));
        meta.insert("converged".into(), json!(walk.converged));
        let series: Vec<Value> = sample
            .iter()
            .map(|&v| json!({ "vertex": v, "probabilities": walk.trajectory.iter().map(|p| r6(p[v])).collect::<Vec<_>>() }))
            .collect();
        let doc = json!({ "metadata": meta, "sample": series, "distances": walk.distances });
        written.push(write_json(&c.out, "convergence.json", &doc)?);
    }
    if wants(c, Format::Svg) {
        let xs: Vec<f64> = (0..walk.trajectory.len()).map(|t| t as f64).collect();
        let values: Vec<Vec<f64>> = sample.iter().map(|&v| walk.trajectory.iter().map(|p| p[v]).collect()).collect();
        let names: Vec<String> = sample.iter().map(|v| format!("vertex {v}")).collect();
        let series: Vec<Series<'_>> = names
            .iter()
            .zip(&values)
            .map(|(name, values)| Series { name, values })
            .collect();
        let svg = line_chart("qPageRank per step", &xs, &series, "step", "probability");
        written.push(write_file(&c.out, "convergence.svg", &svg)?);
    }
    writeln!(
        out,
        "steps={} converged={} final_distance={:.6e}",
        walk.steps,
        walk.converged,
        walk.distances.last().copied().unwrap_or(0.0)
    )?;
    report(out, &written)?;
    Ok(Status::from(walk.converged))
}

fn opt6(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

fn cmd_alpha_sweep(c: &CommonArgs, alphas: Option<&[f64]>, out: &mut dyn Write) -> CliResult<Status> {
    let s = setup(c)?;
    let grid = alphas.map(<[f64]>::to_vec).unwrap_or_else(default_alpha_grid);
    let records: Vec<AlphaSweepRecord> = alpha_sweep(&s.graph, &grid, c.epsilon, c.max_steps)?;
    let all_converged = records.iter().all(|r| r.converged);
    let status = |r: &AlphaSweepRecord| if r.converged { "converged" } else { "not_converged" };
    let mut written = Vec::new();

    if wants(c, Format::Csv) {
        let mut csv = String::from("alpha,steps,fidelity,trace_distance,status\n");
        for r in &records {
            let _ = writeln!(
                csv,
                "{:.6},{},{},{},{}",
                r.alpha,
                r.steps,
                opt6(r.fidelity),
                opt6(r.trace_distance),
                status(r)
            );
        }
        written.push(write_file(&c.out, "alpha_sweep.csv", &csv)?);
    }
    if wants(c, Format::Json) {
        let mut meta = metadata(c, &s);
        meta.remove("alpha");
        let rows: Vec<Value> = records
            .iter()
            .map(|r| {
                json!({
                    "alpha": r6(r.alpha),
                    "steps": r.steps,
                    "fidelity": r.fidelity.map(r6),
                    "trace_distance": r.trace_distance.map(r6),
                    "status": status(r),
                })
            })
            .collect();
        written.push(write_json(&c.out, "alpha_sweep.json", &json!({ "metadata": meta, "records": rows }))?);
    }
    if wants(c, Format::Svg) {
        let xs: Vec<f64> = records.iter().map(|r| r.alpha).collect();
        let d: Vec<f64> = records.iter().map(|r| r.trace_distance.unwrap_or(f64::NAN)).collect();
        let f: Vec<f64> = records.iter().map(|r| r.fidelity.unwrap_or(f64::NAN)).collect();
        let d_svg = line_chart(
            "Trace distance between average and final state",
            &xs,
            &[Series {
                name: "D",
                values: &d,
            }],
            "alpha",
            "trace distance",
        );
        let f_svg = line_chart(
            "Fidelity between average and final state",
            &xs,
            &[Series {
                name: "F",
                values: &f,
            }],
            "alpha",
            "fidelity",
        );
        written.push(write_file(&c.out, "trace_distance.svg", &d_svg)?);
        written.push(write_file(&c.out, "fidelity.svg", &f_svg)?);
    }
    for r in &records {
        writeln!(
            out,
            "alpha={:.2} steps={} fidelity={} trace_distance={} {}",
            r.alpha,
            r.steps,
            opt6(r.fidelity),
            opt6(r.trace_distance),
            status(r)
        )?;
    }
    report(out, &written)?;
    Ok(Status::from(all_converged))
}
