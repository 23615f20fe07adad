//! Command-line front end: parse inputs, dispatch to the library, emit
//! JSON reports (schema 1) and graph6 artifacts.
//!
//! Exit codes: 0 on success, 1 on domain errors (e.g. a family whose
//! gamma is below 1), 2 on I/O, flag, and parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use spexlab::graph::{Graph, VertexSet};
use spexlab::invariants::family_profile;
use spexlab::search::{
    contains_spanning_book, enumerate_graphs, spex_search, SpexOptions, SpexReport,
};
use spexlab::spectral::{spectral_radius, DEFAULT_TOL};
use spexlab::subdivision::{
    gamma_family_subgraphs, is_family_subdivision_free, is_subdivision_saturated,
};
use spexlab::transforms::{partition_by_dominators, transform_g0, transform_g1, transform_g2};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
enum CliError {
    /// Semantically invalid request (exit 1).
    Domain(String),
    /// I/O, flag, or input-format trouble (exit 2).
    Input(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Input(m) => m,
        }
    }
}

macro_rules! domain_from {
    ($($ty:ty),+) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )+}
}
domain_from!(
    spexlab::graph::GraphError,
    spexlab::spectral::SpectralError,
    spexlab::invariants::InvariantError,
    spexlab::subdivision::SubdivisionError,
    spexlab::transforms::TransformError,
    spexlab::search::SearchError
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "spexlab", version, about = "Extremal spectral search over subdivision-free graph families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Eigensolver residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads for the scan (defaults to $SPEXLAB_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family members: shorthand (K4, C5, P8, K3,4) or graph6, comma separated.
    #[arg(long, conflicts_with = "family_file")]
    family: Option<String>,
    /// File with one family member per line (shorthand or graph6).
    #[arg(long)]
    family_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive extremal scan for one order or a range of orders.
    Spex {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "n_range")]
        n: Option<usize>,
        /// Inclusive range "A..B".
        #[arg(long, value_parser = parse_range)]
        n_range: Option<(usize, usize)>,
        /// graph6 corpus replacing the built-in enumeration.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Scan connected graphs only.
        #[arg(long)]
        connected_only: bool,
    },
    /// Family invariants: alpha, gamma, minimal members, constants.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Is the graph free of subdivisions of every family member?
    CheckFree {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        family: FamilyArgs,
        /// Attach the first containment witness when the graph is not free.
        #[arg(long)]
        witness: bool,
    },
    /// Is the graph family-subdivision-saturated?
    Saturated {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The reduced family of irreducible induced subgraphs at the family gamma.
    GammaFamily {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Search for a spanning generalized book with the given clique size.
    SpanningBook {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        gamma: usize,
    },
    /// Apply one of the dominator-partition rewrites.
    Transform {
        #[arg(value_enum)]
        which: TransformKind,
        #[arg(long)]
        graph: String,
        /// Dominating candidate set, e.g. "0,1".
        #[arg(long)]
        l: String,
        /// The S' vertex losing/regaining the designated edge (g1/g2).
        #[arg(long)]
        uk: Option<usize>,
        /// The L vertex of the designated missing edge (g1/g2).
        #[arg(long)]
        vjk: Option<usize>,
        /// Path inside S'' to linearize (g2), e.g. "2,3,4".
        #[arg(long)]
        p0: Option<String>,
    },
    /// Spectral radius and Perron vector of one graph.
    Spectrum {
        #[arg(long)]
        graph: String,
    },
    /// Isomorph-free enumeration of all graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected_only: bool,
        /// Emit bare graph6 lines (a corpus file) instead of JSON.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum TransformKind {
    G0,
    G1,
    G2,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a = a.trim().parse().map_err(|_| "bad range start")?;
    let b = b.trim().parse().map_err(|_| "bad range end")?;
    if a > b {
        return Err("range start exceeds end".into());
    }
    Ok((a, b))
}

/// Entry point returning the process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints usage and help itself; its exit code for usage
            // errors matches the parse-error convention.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spexlab: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    configure_rayon(cli.jobs)?;
    match &cli.command {
        Command::Spex { family, n, n_range, corpus, connected_only } => {
            let family = load_family(family)?;
            let corpus = corpus.as_deref().map(read_corpus).transpose()?;
            let orders: Vec<usize> = match (n, n_range) {
                (Some(n), None) => vec![*n],
                (None, Some((a, b))) => (*a..=*b).collect(),
                (None, None) => {
                    return Err(CliError::Input("one of --n or --n-range is required".into()))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the conflict"),
            };
            let opts = SpexOptions {
                tol: cli.tol,
                corpus: corpus.clone(),
                connected_only: *connected_only,
                ..SpexOptions::default()
            };
            let reports: Vec<SpexReport> = orders
                .iter()
                .map(|&n| spex_search(n, &family, &opts))
                .collect::<Result<_, _>>()?;
            write_sidecar(&cli, &reports)?;
            if reports.len() == 1 {
                emit(&cli, &envelope(&reports[0])?)
            } else {
                emit(&cli, &json!({ "schema": SCHEMA_VERSION, "reports": reports }))
            }
        }
        Command::Profile { family } => {
            let family = load_family(family)?;
            let profile = family_profile(&family)?;
            emit(&cli, &envelope(&profile)?)
        }
        Command::CheckFree { graph, family, witness } => {
            let g = parse_graph(graph)?;
            let family = load_family(family)?;
            let model = family
                .iter()
                .find_map(|h| spexlab::subdivision::contains_subdivision(&g, h));
            let mut value = json!({
                "schema": SCHEMA_VERSION,
                "graph": g.to_graph6(),
                "family": family_g6(&family),
                "free": model.is_none(),
            });
            if *witness {
                value["witness"] = serde_json::to_value(&model)
                    .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
            }
            emit(&cli, &value)
        }
        Command::Saturated { graph, family } => {
            let g = parse_graph(graph)?;
            let family = load_family(family)?;
            let saturated = is_subdivision_saturated(&g, &family);
            emit(
                &cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "graph": g.to_graph6(),
                    "family": family_g6(&family),
                    "saturated": saturated,
                }),
            )
        }
        Command::GammaFamily { family } => {
            let family = load_family(family)?;
            let profile = family_profile(&family)?;
            let reduced = gamma_family_subgraphs(&family, profile.gamma_family)?;
            emit(
                &cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "family": family_g6(&family),
                    "gamma_family": profile.gamma_family,
                    "graphs": family_g6(&reduced),
                }),
            )
        }
        Command::SpanningBook { graph, gamma } => {
            let g = parse_graph(graph)?;
            let witness = contains_spanning_book(&g, *gamma);
            emit(
                &cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "graph": g.to_graph6(),
                    "gamma": gamma,
                    "found": witness.is_some(),
                    "clique": witness.map(VertexSet::to_vec),
                }),
            )
        }
        Command::Transform { which, graph, l, uk, vjk, p0 } => {
            let g = parse_graph(graph)?;
            let l = parse_vertex_list(l)?.into_iter().collect();
            let partition = partition_by_dominators(&g, l)?;
            let result = match which {
                TransformKind::G0 => transform_g0(&g, &partition)?,
                TransformKind::G1 => {
                    let (uk, vjk) = require_edge_choice(uk, vjk)?;
                    transform_g1(&g, &partition, uk, vjk)?
                }
                TransformKind::G2 => {
                    let (uk, vjk) = require_edge_choice(uk, vjk)?;
                    let p0 = p0
                        .as_deref()
                        .ok_or_else(|| CliError::Input("g2 needs --p0".into()))?;
                    transform_g2(&g, &partition, uk, vjk, &parse_vertex_list(p0)?)?
                }
            };
            emit(
                &cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "graph": g.to_graph6(),
                    "l": partition.l.to_vec(),
                    "s_prime": partition.s_prime.to_vec(),
                    "s_double_prime": partition.s_double_prime.to_vec(),
                    "result": result.to_graph6(),
                }),
            )
        }
        Command::Spectrum { graph } => {
            let g = parse_graph(graph)?;
            let spectrum = spectral_radius(&g, cli.tol)?;
            let mut value = envelope(&spectrum)?;
            value["graph"] = json!(g.to_graph6());
            emit(&cli, &value)
        }
        Command::Enumerate { n, connected_only, raw } => {
            let graphs = enumerate_graphs(*n, *connected_only)?;
            if *raw {
                let lines: String =
                    graphs.iter().map(|g| g.to_graph6() + "\n").collect();
                return write_output(&cli, lines.as_bytes());
            }
            emit(
                &cli,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "n": n,
                    "connected_only": connected_only,
                    "count": graphs.len(),
                    "graphs": family_g6(&graphs),
                }),
            )
        }
    }
}

fn configure_rayon(jobs: Option<usize>) -> Result<(), CliError> {
    let jobs = match jobs {
        Some(j) => Some(j),
        None => match std::env::var("SPEXLAB_JOBS") {
            Ok(v) => Some(
                v.parse()
                    .map_err(|_| CliError::Input(format!("bad SPEXLAB_JOBS value {v:?}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(jobs) = jobs {
        // Ignore double initialization (tests call run() repeatedly).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    Ok(())
}

fn envelope<T: Serialize>(payload: &T) -> Result<serde_json::Value, CliError> {
    let mut value = serde_json::to_value(payload)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    value["schema"] = json!(SCHEMA_VERSION);
    Ok(value)
}

fn family_g6(family: &[Graph]) -> Vec<String> {
    family.iter().map(Graph::to_graph6).collect()
}

fn require_edge_choice(
    uk: &Option<usize>,
    vjk: &Option<usize>,
) -> Result<(usize, usize), CliError> {
    match (uk, vjk) {
        (Some(u), Some(v)) => Ok((*u, *v)),
        _ => Err(CliError::Input("this transform needs --uk and --vjk".into())),
    }
}

fn parse_graph(text: &str) -> Result<Graph, CliError> {
    parse_token(text.trim())
}

/// One token: named shorthand first, then graph6/sparse6.
fn parse_token(token: &str) -> Result<Graph, CliError> {
    if let Some(g) = parse_shorthand(token)? {
        return Ok(g);
    }
    Graph::from_graph_line(token)
        .map_err(|e| CliError::Input(format!("cannot parse {token:?}: {e}")))
}

fn parse_shorthand(token: &str) -> Result<Option<Graph>, CliError> {
    let (head, rest) = match token.split_at_checked(1) {
        Some(parts) => parts,
        None => return Ok(None),
    };
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = rest
        .parse()
        .map_err(|_| CliError::Input(format!("bad order in {token:?}")))?;
    let g = match head {
        "K" => Graph::complete(n)?,
        "C" => {
            if n < 3 {
                return Err(CliError::Input(format!("cycle {token:?} needs at least 3 vertices")));
            }
            Graph::cycle(n)?
        }
        "P" => Graph::path(n)?,
        _ => return Ok(None),
    };
    Ok(Some(g))
}

/// Comma-separated family: `K5,C7,P8`, `K3,4` (a bare number merges with
/// the preceding K token into a complete bipartite graph), graph6 tokens.
fn parse_family_spec(spec: &str) -> Result<Vec<Graph>, CliError> {
    let tokens: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let mut graphs = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let token = tokens[i];
        let next_is_count = i + 1 < tokens.len()
            && !tokens[i + 1].is_empty()
            && tokens[i + 1].bytes().all(|b| b.is_ascii_digit());
        let k_sides = token
            .strip_prefix('K')
            .filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()));
        if let (Some(s), true) = (k_sides, next_is_count) {
            let s: usize = s.parse().map_err(|_| CliError::Input(format!("bad order in {token:?}")))?;
            let t: usize = tokens[i + 1]
                .parse()
                .map_err(|_| CliError::Input(format!("bad order in {:?}", tokens[i + 1])))?;
            graphs.push(Graph::complete_bipartite(s, t)?);
            i += 2;
            continue;
        }
        graphs.push(parse_token(token)?);
        i += 1;
    }
    Ok(graphs)
}

fn load_family(args: &FamilyArgs) -> Result<Vec<Graph>, CliError> {
    let mut graphs = Vec::new();
    match (&args.family, &args.family_file) {
        (Some(spec), None) => graphs = parse_family_spec(spec)?,
        (None, Some(path)) => {
            for line in fs::read_to_string(path)?.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                graphs.extend(parse_family_spec(line)?);
            }
        }
        _ => {
            return Err(CliError::Input(
                "exactly one of --family or --family-file is required".into(),
            ))
        }
    }
    if graphs.is_empty() {
        return Err(CliError::Input("the family is empty".into()));
    }
    Ok(graphs)
}

fn read_corpus(path: &Path) -> Result<Vec<Graph>, CliError> {
    let mut graphs = Vec::new();
    for line in fs::read_to_string(path)?.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        graphs.push(
            Graph::from_graph_line(line)
                .map_err(|e| CliError::Input(format!("corpus line {line:?}: {e}")))?,
        );
    }
    Ok(graphs)
}

fn parse_vertex_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("bad vertex index {t:?}")))
        })
        .collect()
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    text.push('\n');
    write_output(cli, text.as_bytes())
}

fn write_output(cli: &Cli, bytes: &[u8]) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// Writes every extremal graph (one graph6 line each) next to --out.
fn write_sidecar(cli: &Cli, reports: &[SpexReport]) -> Result<(), CliError> {
    let Some(out) = &cli.out else { return Ok(()) };
    let lines: String = reports
        .iter()
        .flat_map(|r| r.extremal.iter())
        .map(|g6| g6.clone() + "\n")
        .collect();
    fs::write(out.with_extension("g6"), lines)?;
    Ok(())
}
