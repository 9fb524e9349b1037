//! Command-line front end.
//!
//! [`execute`] does all the work and returns the text to print plus the exit
//! code, so the binary is a thin wrapper and the commands can be driven from
//! tests without spawning processes.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or validation, 3 search budget
//! exceeded, 4 verify mismatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::distance::{self, DistanceError, SearchConfig, SymplecticVector};
use crate::field::{kernel_basis, PrimeField};
use crate::graph::{self, Family, GraphLabelling, Multigraph};
use crate::oracle::{self, OracleError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "diagdist",
    version,
    about = "Diagonal distance of graph codes over Z/pZ"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Prime modulus; overrides the graph file's `p` header (default 2).
    #[arg(long = "p", global = true, value_parser = parse_prime)]
    pub p: Option<PrimeField>,
    /// Emit a JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Refuse exhaustive search above this many vertices.
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<usize>,
    /// Search even when the instance exceeds the budget.
    #[arg(long, global = true)]
    pub force: bool,
    /// Print only the headline result and suppress warnings.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Diagonal distance of a graph.
    Distance { graph: PathBuf },
    /// Distance of the code given by a codeword file.
    CodeDistance { graph: PathBuf, codes: PathBuf },
    /// Print Λ = [I | Γ] and a basis of its kernel.
    Kernel { graph: PathBuf },
    /// Compare the kernel search with the brute-force oracle.
    Verify {
        graph: PathBuf,
        /// Also compare all codeword pairs from this file.
        #[arg(long)]
        codes: Option<PathBuf>,
    },
    /// Write a generated graph file to standard output.
    Gen { family: String, n: usize },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Distance { .. } => "distance",
            Command::CodeDistance { .. } => "code-distance",
            Command::Kernel { .. } => "kernel",
            Command::Verify { .. } => "verify",
            Command::Gen { .. } => "gen",
        }
    }
}

fn parse_prime(s: &str) -> Result<PrimeField, String> {
    let p: u64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    PrimeField::new(p).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRow {
    /// 1-based codeword indices.
    pub r: usize,
    pub s: usize,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelRow {
    pub z: Vec<u32>,
    pub x: Vec<u32>,
}

/// Command-specific result. Witness arrays are indexed by vertex, so entry
/// `i` belongs to vertex `i + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResultPayload {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_z: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_x: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors_examined: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<KernelRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_distance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_witness_z: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_witness_x: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub p_flag: Option<u32>,
    pub max_n: Option<usize>,
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliReport {
    pub command: String,
    pub inputs: Inputs,
    pub p: Option<u32>,
    pub n: Option<usize>,
    /// Present exactly when the exit code is 0.
    #[serde(flatten)]
    pub result: Option<ResultPayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: u8,
    pub warnings: Vec<String>,
    pub elapsed_ms: f64,
}

impl CliReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything a run produces: the report plus the text destined for the two
/// output streams.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: CliReport,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.report.exit_code
    }
}

struct Failure {
    code: u8,
    message: String,
    /// Extra stdout text, used for verify mismatches.
    detail: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            detail: String::new(),
        }
    }
}

impl From<DistanceError> for Failure {
    fn from(e: DistanceError) -> Self {
        let code = match e {
            DistanceError::SearchTooLarge { .. } | DistanceError::Unenumerable { .. } => {
                EXIT_BUDGET
            }
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::SearchTooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

struct Context {
    p: Option<PrimeField>,
    n: Option<usize>,
    warnings: Vec<String>,
    text: String,
}

struct Loaded {
    graph: Multigraph,
    field: PrimeField,
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Warnings for vertices whose X operation is the identity mod p, and for
/// edges whose multiplicity vanishes mod p.
pub fn graph_warnings(g: &Multigraph, f: &PrimeField) -> Vec<String> {
    let p = f.modulus();
    let mut out: Vec<String> = g
        .vanishing_edges(f)
        .into_iter()
        .map(|(u, v, m)| {
            format!(
                "edge {}-{} has multiplicity {m} which is 0 mod {p}; it vanishes from the adjacency matrix",
                u + 1,
                v + 1
            )
        })
        .collect();
    out.extend(g.isolated_vertices(f).into_iter().map(|v| {
        format!(
            "vertex {} is isolated mod {p}: X_{} acts as the identity but its exponent still counts toward the weight",
            v + 1,
            v + 1
        )
    }));
    out
}

fn load_graph(path: &Path, common: &CommonArgs, ctx: &mut Context) -> Result<Loaded, Failure> {
    let text = read_file(path)?;
    let parsed = graph::parse_graph(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let field = common.p.or(parsed.prime).unwrap_or_else(PrimeField::binary);
    ctx.p = Some(field);
    ctx.n = Some(parsed.graph.vertex_count());
    ctx.warnings.extend(graph_warnings(&parsed.graph, &field));
    Ok(Loaded {
        graph: parsed.graph,
        field,
    })
}

fn load_codewords(path: &Path, loaded: &Loaded) -> Result<Vec<GraphLabelling>, Failure> {
    let text = read_file(path)?;
    let codes = graph::parse_codewords(&text, loaded.graph.vertex_count(), &loaded.field)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    if codes.is_empty() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("{}: no codewords", path.display()),
        ));
    }
    Ok(codes)
}

fn search_config(common: &CommonArgs, f: &PrimeField) -> SearchConfig {
    let mut cfg = SearchConfig::for_field(f).forced(common.force);
    if let Some(m) = common.max_n {
        cfg = cfg.with_max_vertices(m);
    }
    cfg
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_witness(k: &SymplecticVector) -> String {
    format!("{} | {}", join(k.z()), join(k.x()))
}

/// Non-identity factors as 1-based `v<i>=(z,x)` pairs.
fn format_support(k: &SymplecticVector) -> String {
    k.support()
        .into_iter()
        .map(|i| format!("v{}=({},{})", i + 1, k.z()[i], k.x()[i]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_distance(
    graph_path: &Path,
    common: &CommonArgs,
    ctx: &mut Context,
) -> Result<ResultPayload, Failure> {
    let loaded = load_graph(graph_path, common, ctx)?;
    let cfg = search_config(common, &loaded.field);
    let report = distance::diagonal_distance(&loaded.graph, &loaded.field, &cfg)?;

    let t = &mut ctx.text;
    let _ = writeln!(t, "distance = {}", report.distance);
    if !common.quiet {
        let _ = writeln!(t, "witness (z | x) = {}", format_witness(&report.witness));
        let _ = writeln!(t, "support: {}", format_support(&report.witness));
        let _ = writeln!(t, "vectors examined = {}", report.vectors_examined);
    }
    Ok(ResultPayload {
        distance: Some(report.distance),
        witness_z: Some(report.witness.z().to_vec()),
        witness_x: Some(report.witness.x().to_vec()),
        vectors_examined: Some(report.vectors_examined),
        ..Default::default()
    })
}

fn cmd_code_distance(
    graph_path: &Path,
    codes_path: &Path,
    common: &CommonArgs,
    ctx: &mut Context,
) -> Result<ResultPayload, Failure> {
    let loaded = load_graph(graph_path, common, ctx)?;
    let codes = load_codewords(codes_path, &loaded)?;
    let cfg = search_config(common, &loaded.field);
    let result = distance::code_distance(&loaded.graph, &loaded.field, &codes, &cfg)?;

    let (r, s) = result.pair;
    let witness = if r == s {
        &result.diagonal.witness
    } else {
        &result
            .pairs
            .iter()
            .find(|(e, _)| (e.r, e.s) == (r, s))
            .expect("achieving pair is in the table")
            .1
            .witness
    };
    let table = result.table();
    let k = result.codeword_count();

    let t = &mut ctx.text;
    let _ = writeln!(t, "delta = {} at pair ({},{})", result.delta, r + 1, s + 1);
    if !common.quiet {
        let _ = writeln!(t, "witness (z | x) = {}", format_witness(witness));
        let _ = writeln!(t, "pairwise distances (1-based):");
        let width = k
            .to_string()
            .len()
            .max(table.iter().flatten().max().unwrap_or(&0).to_string().len())
            + 1;
        let mut header = " ".repeat(width);
        for s in 1..=k {
            let _ = write!(header, "{s:>width$}");
        }
        let _ = writeln!(t, "{header}");
        for (r, row) in table.iter().enumerate() {
            let mut line = format!("{:>width$}", r + 1);
            for v in row {
                let _ = write!(line, "{v:>width$}");
            }
            let _ = writeln!(t, "{line}");
        }
    }

    let pairs = table
        .iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(s, &d)| PairRow {
                r: r + 1,
                s: s + 1,
                distance: d,
            })
        })
        .collect();
    Ok(ResultPayload {
        distance: Some(result.delta),
        witness_z: Some(witness.z().to_vec()),
        witness_x: Some(witness.x().to_vec()),
        pair: Some([r + 1, s + 1]),
        pairs: Some(pairs),
        ..Default::default()
    })
}

fn cmd_kernel(
    graph_path: &Path,
    common: &CommonArgs,
    ctx: &mut Context,
) -> Result<ResultPayload, Failure> {
    let loaded = load_graph(graph_path, common, ctx)?;
    let f = loaded.field;
    let n = loaded.graph.vertex_count();
    let lambda = distance::build_lambda(&loaded.graph.adjacency_matrix(&f))?;
    let basis: Vec<SymplecticVector> = kernel_basis(&lambda, &f)
        .into_iter()
        .map(|v| SymplecticVector::from_vector(v).expect("kernel vectors have length 2n"))
        .collect();

    let rows: Vec<Vec<u32>> = (0..n).map(|i| lambda.row(i).to_vec()).collect();
    let t = &mut ctx.text;
    if !common.quiet {
        let _ = writeln!(t, "Lambda = [I | Gamma] over Z/{}Z:", f.modulus());
        for row in &rows {
            let _ = writeln!(t, "{} | {}", join(&row[..n]), join(&row[n..]));
        }
    }
    let _ = writeln!(t, "kernel basis ({} vectors):", basis.len());
    for k in &basis {
        let _ = writeln!(t, "{}", format_witness(k));
    }

    Ok(ResultPayload {
        lambda: Some(rows),
        kernel: Some(
            basis
                .iter()
                .map(|k| KernelRow {
                    z: k.z().to_vec(),
                    x: k.x().to_vec(),
                })
                .collect(),
        ),
        ..Default::default()
    })
}

fn cmd_verify(
    graph_path: &Path,
    codes_path: Option<&Path>,
    common: &CommonArgs,
    ctx: &mut Context,
) -> Result<ResultPayload, Failure> {
    let loaded = load_graph(graph_path, common, ctx)?;
    let codes = codes_path.map(|p| load_codewords(p, &loaded)).transpose()?;
    let (g, f) = (&loaded.graph, &loaded.field);
    let cfg = search_config(common, f);

    let core = distance::diagonal_distance(g, f, &cfg)?;
    let brute = oracle::brute_force_distance(g, f, oracle::DEFAULT_HARD_CAP)?;

    let mut lines = vec![format!(
        "diagonal: kernel search = {}, oracle = {}",
        core.distance, brute.distance
    )];
    let mut matched = core.distance == brute.distance;
    if core.distance != brute.distance {
        lines.push(format!(
            "  kernel witness (z | x) = {}",
            format_witness(&core.witness)
        ));
        lines.push(format!(
            "  oracle witness (z | x) = {}",
            format_witness(&brute.witness)
        ));
    }

    if let Some(codes) = &codes {
        for r in 0..codes.len() {
            for s in r + 1..codes.len() {
                let a = distance::pairwise_distance(g, f, &codes[r], &codes[s], &cfg)?;
                let b = oracle::brute_force_pairwise(
                    g,
                    f,
                    &codes[r],
                    &codes[s],
                    oracle::DEFAULT_HARD_CAP,
                )?;
                lines.push(format!(
                    "pair ({},{}): kernel search = {}, oracle = {}",
                    r + 1,
                    s + 1,
                    a.distance,
                    b.distance
                ));
                if a.distance != b.distance {
                    matched = false;
                    lines.push(format!(
                        "  kernel witness (z | x) = {}",
                        format_witness(&a.witness)
                    ));
                    lines.push(format!(
                        "  oracle witness (z | x) = {}",
                        format_witness(&b.witness)
                    ));
                }
            }
        }
    }

    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    let body = lines.join("\n") + "\n";
    if !matched {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: "kernel search and oracle disagree".into(),
            detail: format!("{body}{verdict}\n"),
        });
    }

    let t = &mut ctx.text;
    if !common.quiet {
        t.push_str(&body);
    }
    let _ = writeln!(t, "{verdict} ({} = {})", core.distance, brute.distance);
    Ok(ResultPayload {
        distance: Some(core.distance),
        witness_z: Some(core.witness.z().to_vec()),
        witness_x: Some(core.witness.x().to_vec()),
        oracle_distance: Some(brute.distance),
        oracle_witness_z: Some(brute.witness.z().to_vec()),
        oracle_witness_x: Some(brute.witness.x().to_vec()),
        verdict: Some(verdict.to_string()),
        ..Default::default()
    })
}

fn cmd_gen(
    family: &str,
    n: usize,
    common: &CommonArgs,
    ctx: &mut Context,
) -> Result<ResultPayload, Failure> {
    let family: Family = family
        .parse()
        .map_err(|e: graph::GraphError| Failure::new(EXIT_USAGE, e.to_string()))?;
    let g = graph::generate(family, n).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    ctx.p = common.p;
    ctx.n = Some(n);
    let text = g.serialize(common.p.as_ref());
    ctx.text.push_str(&text);
    Ok(ResultPayload {
        graph: Some(text),
        ..Default::default()
    })
}

fn display(path: &Path) -> Option<String> {
    Some(path.display().to_string())
}

/// Runs one command and renders its output.
pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let common = &cli.common;
    let mut ctx = Context {
        p: None,
        n: None,
        warnings: Vec::new(),
        text: String::new(),
    };

    let mut inputs = Inputs {
        graph: None,
        codes: None,
        family: None,
        p_flag: common.p.map(|f| f.modulus()),
        max_n: common.max_n,
        force: common.force,
    };

    let result = match &cli.command {
        Command::Distance { graph } => {
            inputs.graph = display(graph);
            cmd_distance(graph, common, &mut ctx)
        }
        Command::CodeDistance { graph, codes } => {
            inputs.graph = display(graph);
            inputs.codes = display(codes);
            cmd_code_distance(graph, codes, common, &mut ctx)
        }
        Command::Kernel { graph } => {
            inputs.graph = display(graph);
            cmd_kernel(graph, common, &mut ctx)
        }
        Command::Verify { graph, codes } => {
            inputs.graph = display(graph);
            inputs.codes = codes.as_deref().and_then(display);
            cmd_verify(graph, codes.as_deref(), common, &mut ctx)
        }
        Command::Gen { family, n } => {
            inputs.family = Some(family.clone());
            cmd_gen(family, *n, common, &mut ctx)
        }
    };

    let (result, error, exit_code, detail) = match result {
        Ok(payload) => (Some(payload), None, EXIT_OK, String::new()),
        Err(f) => (None, Some(f.message), f.code, f.detail),
    };

    let report = CliReport {
        command: cli.command.name().to_string(),
        inputs,
        p: ctx.p.map(|f| f.modulus()),
        n: ctx.n,
        result,
        error,
        exit_code,
        warnings: ctx.warnings,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };

    let mut stderr = String::new();
    if !common.quiet {
        for w in &report.warnings {
            let _ = writeln!(stderr, "warning: {w}");
        }
    }
    if let Some(e) = &report.error {
        let _ = writeln!(stderr, "error: {e}");
    }

    let is_gen = matches!(cli.command, Command::Gen { .. });
    let stdout = if common.json && !is_gen {
        report.to_json() + "\n"
    } else if exit_code == EXIT_OK {
        ctx.text
    } else {
        detail
    };

    Outcome {
        report,
        stdout,
        stderr,
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors come back as exit code 1 with clap's message on stderr.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let (code, stdout, stderr) = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (EXIT_OK, e.to_string(), String::new())
                }
                _ => (EXIT_USAGE, String::new(), e.to_string()),
            };
            Outcome {
                report: CliReport {
                    command: String::new(),
                    inputs: Inputs {
                        graph: None,
                        codes: None,
                        family: None,
                        p_flag: None,
                        max_n: None,
                        force: false,
                    },
                    p: None,
                    n: None,
                    result: None,
                    error: (code != EXIT_OK).then(|| e.to_string()),
                    exit_code: code,
                    warnings: Vec::new(),
                    elapsed_ms: 0.0,
                },
                stdout,
                stderr,
            }
        }
    }
}
