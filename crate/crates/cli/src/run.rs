//! Argument surface and command implementations.
//!
//! Primary output (reports, datasets, indexes) goes to stdout or `--out`
//! files and is byte-identical for equal flags and seeds, independent of
//! thread count. Diagnostics (the effective seed, timings) go to stderr.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ips_core::{
    embed_vectors, gap_audit, profile, reduce_and_join, rho_datadep, rho_simple, seq_case1_1d,
    seq_case1_blocked, seq_case2, seq_case3, verify_sequence, verify_sequence_as,
    BruteForceJoiner, ChebyshevOrder,
    ChunkCount, Dataset, Domain, Family, GapAudit, HyperplaneFamily, HyperplaneJoiner, JoinMode,
    JoinThresholds, Joiner, MipsIndex, NodeId, OvpInstance, Seed, Side, SketchJoiner,
    SketchParams, VerificationReport, DEFAULT_MEMORY_BUDGET,
};

use crate::generate::{generate, Plant};
use crate::grid::Grid;
use crate::output;

/// Inner-product similarity join toolkit.
#[derive(Parser)]
#[command(name = "ips", version, about)]
pub struct Cli {
    /// Seed for every random choice; equal seeds reproduce output byte
    /// for byte.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker thread count (omitted: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Report format; csv is reserved for curve and grid outputs.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

/// How a run ended; drives the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Requested work completed (exit 0).
    Pass,
    /// Work completed but a verification did not hold (exit 1).
    VerificationFailed,
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Pretty-printed JSON object or array.
    Json,
    /// RFC-4180 CSV with a header row.
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Embed a binary dataset with one side of a gap family.
    Embed(EmbedArgs),
    /// Print a family's gap profile for an input dimension.
    Profile(ProfileArgs),
    /// Reduce a random orthogonal-vectors instance to a join and compare
    /// against the exact oracle.
    OvpReduce(OvpReduceArgs),
    /// Threshold join between two dataset files.
    Join(JoinArgs),
    /// Tabulate data-dependent and hyperplane query exponents on a grid.
    RhoCurve(RhoCurveArgs),
    /// Monte-Carlo check of the hyperplane collision law over angles.
    LshBench(LshBenchArgs),
    /// Build and query the sketch-based MIPS index.
    SketchMips(SketchMipsArgs),
    /// Generate, verify, and audit hard staircase sequences.
    Lowerbound(LowerboundArgs),
    /// Generate a random dataset file.
    Gen(GenArgs),
}

/// Runs the parsed command line to an outcome.
pub fn dispatch(cli: Cli) -> Result<Outcome> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    eprintln!("seed = {}", cli.seed);
    let seed = Seed(cli.seed);
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Embed(args) => run_embed(args, cli.format),
        Command::Profile(args) => run_profile(args, cli.format),
        Command::OvpReduce(args) => run_ovp_reduce(args, seed, cli.format),
        Command::Join(args) => run_join(args, seed, cli.format),
        Command::RhoCurve(args) => run_rho_curve(args, cli.format),
        Command::LshBench(args) => run_lsh_bench(args, seed, cli.format),
        Command::SketchMips(args) => run_sketch_mips(args, seed, cli.format),
        Command::Lowerbound(args) => run_lowerbound(args, seed, cli.format),
        Command::Gen(args) => run_gen(args, seed, cli.format),
    };
    eprintln!("elapsed = {:.1?}", started.elapsed());
    outcome
}

/// Rejects an explicit csv request on a command that reports json.
fn json_only(format: Option<Format>) -> Result<()> {
    if format == Some(Format::Csv) {
        bail!("this command reports json; csv is reserved for curve and grid outputs");
    }
    Ok(())
}

// ---------------------------------------------------------------- embed

/// `--family`/`--param` pair shared by the embedding commands.
#[derive(Args)]
pub struct FamilySpec {
    /// Embedding family: 1 (signed substitution), 2 (Chebyshev
    /// amplification), 3 (chunked tensor).
    #[arg(long)]
    family: u8,

    /// Family parameter: order q for family 2, chunk count k for
    /// family 3. Family 1 takes none.
    #[arg(long, value_name = "q|k")]
    param: Option<u64>,
}

impl FamilySpec {
    fn family(&self) -> Result<Family> {
        match (self.family, self.param) {
            (1, None) => Ok(Family::One),
            (1, Some(_)) => bail!("family 1 takes no --param"),
            (2, Some(q)) => Ok(Family::Two(ChebyshevOrder::new(u32::try_from(q)?)?)),
            (3, Some(k)) => Ok(Family::Three(ChunkCount::new(usize::try_from(k)?)?)),
            (2 | 3, None) => bail!("family {} needs --param", self.family),
            (other, _) => bail!("unknown family {other}, expected 1, 2, or 3"),
        }
    }
}

/// Data or query side of an asymmetric embedding pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    /// The data map `f`.
    Data,
    /// The query map `g`.
    Query,
}

impl From<SideArg> for Side {
    fn from(side: SideArg) -> Self {
        match side {
            SideArg::Data => Side::Data,
            SideArg::Query => Side::Query,
        }
    }
}

#[derive(Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    family: FamilySpec,

    /// Input dataset file (binary domain).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,

    /// Which map of the pair to apply.
    #[arg(long, value_enum)]
    side: SideArg,

    /// Embedded dataset output file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Serialize)]
struct EmbedReport {
    family: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    param: Option<u64>,
    side: SideArg,
    count: usize,
    input_dim: usize,
    output_dim: usize,
    domain: Domain,
}

fn run_embed(args: &EmbedArgs, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    let family = args.family.family()?;
    let dataset = Dataset::read_path(&args.input)?;
    let Dataset::Binary(rows) = dataset else {
        bail!("embeddings take binary input, got the {} domain", dataset.domain());
    };
    let embedded = embed_vectors(&rows, family, args.side.into(), DEFAULT_MEMORY_BUDGET)?;
    embedded.write_path(&args.out)?;
    let report = EmbedReport {
        family: family.id(),
        param: args.family.param,
        side: args.side,
        count: embedded.len(),
        input_dim: rows[0].dim(),
        output_dim: embedded.dim(),
        domain: embedded.domain(),
    };
    output::emit(&output::to_json(&report)?, None)?;
    Ok(Outcome::Pass)
}

// -------------------------------------------------------------- profile

#[derive(Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    family: FamilySpec,

    /// Input dimension.
    #[arg(long)]
    d: usize,
}

fn run_profile(args: &ProfileArgs, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    let report = profile(args.d, args.family.family()?)?;
    output::emit(&output::to_json(&report)?, None)?;
    Ok(Outcome::Pass)
}

// ----------------------------------------------------------- ovp-reduce

#[derive(Args)]
pub struct OvpReduceArgs {
    #[command(flatten)]
    family: FamilySpec,

    /// Vectors per side.
    #[arg(long)]
    n: usize,

    /// Input dimension.
    #[arg(long)]
    d: usize,

    /// Plant one orthogonal pair.
    #[arg(long)]
    planted: bool,
}

fn run_ovp_reduce(args: &OvpReduceArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    let family = args.family.family()?;
    let instance = OvpInstance::random(args.n, args.d, seed, args.planted)?;
    let report = reduce_and_join(&instance, family, &BruteForceJoiner, DEFAULT_MEMORY_BUDGET)?;
    output::emit(&output::to_json(&report)?, None)?;
    if report.join_found == report.oracle_found {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

// ----------------------------------------------------------------- join

/// Signed or unsigned score comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Compare raw inner products.
    Signed,
    /// Compare absolute inner products.
    Unsigned,
}

impl From<ModeArg> for JoinMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Signed => JoinMode::Signed,
            ModeArg::Unsigned => JoinMode::Unsigned,
        }
    }
}

/// Join strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JoinerArg {
    /// Exact threshold scan.
    Brute,
    /// Sketch MIPS index (unsigned joins).
    Sketch,
    /// Bucketed hyperplane tables.
    Lsh,
}

#[derive(Args)]
pub struct JoinArgs {
    /// Data-side dataset file.
    #[arg(long, value_name = "FILE")]
    data: PathBuf,

    /// Query-side dataset file.
    #[arg(long, value_name = "FILE")]
    queries: PathBuf,

    /// Guarantee threshold s.
    #[arg(long)]
    s: f64,

    /// Approximation factor c in (0,1); pairs scoring at least c·s are
    /// reported.
    #[arg(long)]
    c: f64,

    /// Score comparison mode.
    #[arg(long, value_enum)]
    mode: ModeArg,

    /// Join strategy.
    #[arg(long, value_enum, default_value = "brute")]
    joiner: JoinerArg,

    /// Norm order for the sketch joiner.
    #[arg(long, default_value_t = 4.0)]
    kappa: f64,

    /// Hash bits per table for the lsh joiner.
    #[arg(long, default_value_t = 8)]
    k: u32,

    /// Hash table count for the lsh joiner.
    #[arg(long, default_value_t = 16)]
    tables: u64,
}

#[derive(Serialize)]
struct JoinReport {
    s: f64,
    cs: f64,
    mode: JoinMode,
    joiner: JoinerArg,
    count: usize,
    pairs: Vec<(usize, usize)>,
}

fn run_join(args: &JoinArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    if !args.s.is_finite() {
        bail!("threshold s must be finite, got {}", args.s);
    }
    if !(args.c > 0.0 && args.c < 1.0) {
        bail!("approximation factor c must lie in (0, 1), got {}", args.c);
    }
    let data = Dataset::read_path(&args.data)?;
    let queries = Dataset::read_path(&args.queries)?;
    let thresholds =
        JoinThresholds { s: args.s, cs: args.c * args.s, mode: args.mode.into() };
    let joiner: Box<dyn Joiner> = match args.joiner {
        JoinerArg::Brute => Box::new(BruteForceJoiner),
        JoinerArg::Sketch => Box::new(SketchJoiner { kappa: args.kappa, seed }),
        JoinerArg::Lsh => Box::new(HyperplaneJoiner { k: args.k, tables: args.tables, seed }),
    };
    let pairs = joiner.join(&data, &queries, &thresholds)?;
    let report = JoinReport {
        s: thresholds.s,
        cs: thresholds.cs,
        mode: thresholds.mode,
        joiner: args.joiner,
        count: pairs.len(),
        pairs,
    };
    output::emit(&output::to_json(&report)?, None)?;
    Ok(Outcome::Pass)
}

// ------------------------------------------------------------ rho-curve

#[derive(Args)]
pub struct RhoCurveArgs {
    /// Similarity thresholds s/U as start:stop:step.
    #[arg(long, value_name = "A:B:STEP")]
    s_grid: String,

    /// Approximation factors c as start:stop:step.
    #[arg(long, value_name = "A:B:STEP")]
    c_grid: String,

    /// Output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RhoRow {
    s: f64,
    c: f64,
    rho_datadep: f64,
    rho_simple: f64,
}

fn run_rho_curve(args: &RhoCurveArgs, format: Option<Format>) -> Result<Outcome> {
    let s_grid = Grid::parse(&args.s_grid)?;
    let c_grid = Grid::parse(&args.c_grid)?;
    let mut rows = Vec::with_capacity(s_grid.len() * c_grid.len());
    for s in s_grid.points() {
        for c in c_grid.points() {
            rows.push(RhoRow {
                s,
                c,
                rho_datadep: rho_datadep(s, c)?.rho,
                rho_simple: rho_simple(s, c)?,
            });
        }
    }
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.s.to_string(),
                        r.c.to_string(),
                        r.rho_datadep.to_string(),
                        r.rho_simple.to_string(),
                    ]
                })
                .collect();
            output::to_csv(&["s", "c", "rho_datadep", "rho_simple"], &cells)
        }
        Format::Json => output::to_json(&rows)?,
    };
    output::emit(&text, args.out.as_deref())?;
    Ok(Outcome::Pass)
}

// ------------------------------------------------------------ lsh-bench

#[derive(Args)]
pub struct LshBenchArgs {
    /// Concatenated hash bits per code.
    #[arg(long, default_value_t = 1)]
    k: u32,

    /// Hash draws per angle.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    /// Pair angles in radians (at most pi) as start:stop:step.
    #[arg(long, value_name = "A:B:STEP", default_value = "0.2:3.0:0.2")]
    theta_grid: String,

    /// Output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CollisionRow {
    theta: f64,
    expected: f64,
    p_hat: f64,
    stderr: f64,
}

fn run_lsh_bench(args: &LshBenchArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    use ips_core::{estimate_collision, RealVector};
    let grid = Grid::parse(&args.theta_grid)?;
    let family = HyperplaneFamily::new(args.k, seed)?;
    let x = RealVector::new(vec![1.0, 0.0])?;
    let mut rows = Vec::with_capacity(grid.len());
    for theta in grid.points() {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            bail!("angle {theta} lies outside [0, pi]");
        }
        let y = RealVector::new(vec![theta.cos(), theta.sin()])?;
        let estimate = estimate_collision(&family, &x, &y, args.trials, seed)?;
        rows.push(CollisionRow {
            theta,
            expected: (1.0 - theta / std::f64::consts::PI).powi(args.k as i32),
            p_hat: estimate.p_hat,
            stderr: estimate.stderr,
        });
    }
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.theta.to_string(),
                        r.expected.to_string(),
                        r.p_hat.to_string(),
                        r.stderr.to_string(),
                    ]
                })
                .collect();
            output::to_csv(&["theta", "expected", "p_hat", "stderr"], &cells)
        }
        Format::Json => output::to_json(&rows)?,
    };
    output::emit(&text, args.out.as_deref())?;
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------- sketch-mips

#[derive(Args)]
pub struct SketchMipsArgs {
    #[command(subcommand)]
    action: SketchAction,
}

#[derive(Subcommand)]
enum SketchAction {
    /// Build an index file from a dataset.
    Build(SketchBuildArgs),
    /// Recover the best match for each query in a dataset.
    Query(SketchQueryArgs),
}

#[derive(Args)]
struct SketchBuildArgs {
    /// Input dataset; rows are read as real vectors.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,

    /// Norm order kappa; recovery targets an n^(-1/kappa) factor.
    #[arg(long, default_value_t = 4.0)]
    kappa: f64,

    /// Index output file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct SketchQueryArgs {
    /// Index file produced by `sketch-mips build`.
    #[arg(long, value_name = "FILE")]
    index: PathBuf,

    /// Query dataset file.
    #[arg(long, value_name = "FILE")]
    queries: PathBuf,

    /// Report format (default csv).
    #[arg(long, value_enum)]
    report: Option<Format>,

    /// Output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SketchBuildReport {
    n: usize,
    dim: usize,
    kappa: f64,
    copies: usize,
    levels: u32,
    nodes: usize,
    bytes: u64,
}

#[derive(Serialize)]
struct SketchQueryRow {
    query: usize,
    data: usize,
    estimate: f64,
}

fn run_sketch_mips(args: &SketchMipsArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    match &args.action {
        SketchAction::Build(build) => {
            json_only(format)?;
            let rows = Dataset::read_path(&build.input)?.to_real_rows();
            let index = MipsIndex::build(&rows, build.kappa, seed, &SketchParams::default())?;
            index.write_path(&build.out)?;
            let report = SketchBuildReport {
                n: index.len(),
                dim: index.dim(),
                kappa: index.kappa(),
                copies: index.copies(),
                levels: index.levels(),
                nodes: index.nodes().count(),
                bytes: std::fs::metadata(&build.out)?.len(),
            };
            output::emit(&output::to_json(&report)?, None)?;
            Ok(Outcome::Pass)
        }
        SketchAction::Query(query) => {
            let index = MipsIndex::read_path(&query.index)?;
            let queries = Dataset::read_path(&query.queries)?.to_real_rows();
            let mut rows = Vec::with_capacity(queries.len());
            for (j, q) in queries.iter().enumerate() {
                let data = index.recover(q)?;
                let leaf = NodeId { depth: index.levels(), bits: data as u64 };
                rows.push(SketchQueryRow {
                    query: j,
                    data,
                    estimate: index.estimate_max(leaf, q)?,
                });
            }
            let text = match query.report.or(format).unwrap_or(Format::Csv) {
                Format::Csv => {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.query.to_string(),
                                r.data.to_string(),
                                r.estimate.to_string(),
                            ]
                        })
                        .collect();
                    output::to_csv(&["query", "data", "estimate"], &cells)
                }
                Format::Json => output::to_json(&rows)?,
            };
            output::emit(&text, query.out.as_deref())?;
            Ok(Outcome::Pass)
        }
    }
}

// ----------------------------------------------------------- lowerbound

/// Staircase sequence construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    /// One-dimensional geometric staircase.
    #[value(name = "1a")]
    OneA,
    /// Dimension-recycling blocked staircase.
    #[value(name = "1b")]
    OneB,
    /// Signed staircase with arbitrarily long blocks.
    #[value(name = "2")]
    Two,
    /// Incoherent construction with length 2^l.
    #[value(name = "3")]
    Three,
}

impl CaseArg {
    fn name(self) -> &'static str {
        match self {
            CaseArg::OneA => "1a",
            CaseArg::OneB => "1b",
            CaseArg::Two => "2",
            CaseArg::Three => "3",
        }
    }
}

#[derive(Args)]
pub struct LowerboundArgs {
    /// Sequence case.
    #[arg(long, value_enum)]
    case: CaseArg,

    /// Upper staircase threshold s.
    #[arg(long)]
    s: f64,

    /// Approximation factor c in (0,1).
    #[arg(long)]
    c: f64,

    /// Query norm budget U (data norms stay at most 1).
    #[arg(long = "U")]
    u: f64,

    /// Ambient dimension (cases 1b and 2).
    #[arg(long)]
    d: Option<usize>,

    /// Check the staircase inequalities and norm budgets.
    #[arg(long)]
    verify: bool,

    /// Force the verification mode instead of the case's native one
    /// (case 2 is signed-only and fails under unsigned verification).
    #[arg(long, value_enum, requires = "verify")]
    mode: Option<ModeArg>,

    /// Audit the collision gap of a hash family on the lifted sequence:
    /// key=value pairs among `family=hyperplane[:K]` and `trials=N`.
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
    audit: Option<Vec<String>>,
}

struct AuditSpec {
    k: u32,
    trials: u64,
}

impl AuditSpec {
    fn parse(pairs: &[String]) -> Result<Self> {
        let mut spec = Self { k: 1, trials: 100_000 };
        for pair in pairs {
            let (key, value) = pair
                .split_once('=')
                .with_context(|| format!("audit option {pair:?} is not key=value"))?;
            match key {
                "family" => {
                    spec.k = match value.strip_prefix("hyperplane") {
                        Some("") => 1,
                        Some(rest) => match rest.strip_prefix(':') {
                            Some(k) => {
                                k.parse().context("hash width in family=hyperplane:K")?
                            }
                            None => bail!("unknown audit family {value:?}"),
                        },
                        None => bail!("unknown audit family {value:?}"),
                    };
                }
                "trials" => spec.trials = value.parse().context("audit trials")?,
                other => bail!("unknown audit key {other:?}"),
            }
        }
        Ok(spec)
    }
}

#[derive(Serialize)]
struct LowerboundReport {
    case: &'static str,
    s: f64,
    c: f64,
    u: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    n: usize,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<GapAudit>,
}

fn run_lowerbound(args: &LowerboundArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    let need_d = || args.d.with_context(|| format!("case {} needs --d", args.case.name()));
    let seq = match args.case {
        CaseArg::OneA => seq_case1_1d(args.s, args.c, args.u)?,
        CaseArg::OneB => seq_case1_blocked(args.s, args.c, args.u, need_d()?)?,
        CaseArg::Two => seq_case2(args.s, args.c, args.u, need_d()?)?,
        CaseArg::Three => seq_case3(args.s, args.c, args.u)?,
    };
    let verification = args
        .verify
        .then(|| match args.mode {
            Some(mode) => verify_sequence_as(&seq, mode.into()),
            None => verify_sequence(&seq),
        })
        .transpose()?;
    let audit = match &args.audit {
        Some(pairs) => {
            let spec = AuditSpec::parse(pairs)?;
            let family = HyperplaneFamily::new(spec.k, seed)?;
            Some(gap_audit(&seq, &family, spec.trials, seed)?)
        }
        None => None,
    };
    let report = LowerboundReport {
        case: args.case.name(),
        s: seq.s(),
        c: seq.c(),
        u: seq.u(),
        d: args.d,
        n: seq.len(),
        dim: seq.dim(),
        block_length: (args.case == CaseArg::Two)
            .then(|| ips_core::case2_block_length(&seq)),
        verification,
        audit,
    };
    output::emit(&output::to_json(&report)?, None)?;
    let verified = verification.map_or(true, |v| v.pass);
    let audited = audit.map_or(true, |a| a.pass);
    if verified && audited {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

// ------------------------------------------------------------------ gen

/// Entry domain of a generated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainArg {
    /// Uniform bits.
    Binary,
    /// Uniform signs.
    Sign,
    /// Uniform in the unit ball.
    Real,
}

impl From<DomainArg> for Domain {
    fn from(domain: DomainArg) -> Self {
        match domain {
            DomainArg::Binary => Domain::Binary,
            DomainArg::Sign => Domain::Sign,
            DomainArg::Real => Domain::Real,
        }
    }
}

/// Entry distribution of a generated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistArg {
    /// Uniform over the domain.
    Uniform,
}

#[derive(Args)]
pub struct GenArgs {
    /// Number of vectors.
    #[arg(long)]
    n: usize,

    /// Dimension.
    #[arg(long)]
    d: usize,

    /// Entry domain.
    #[arg(long, value_enum)]
    domain: DomainArg,

    /// Entry distribution.
    #[arg(long, value_enum, default_value = "uniform")]
    dist: DistArg,

    /// Structure planted into the dataset.
    #[arg(long, value_enum, default_value = "none")]
    plant: Plant,

    /// Output dataset file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Serialize)]
struct GenReport {
    n: usize,
    d: usize,
    domain: DomainArg,
    dist: DistArg,
    #[serde(skip_serializing_if = "Option::is_none")]
    planted: Option<(usize, usize)>,
}

fn run_gen(args: &GenArgs, seed: Seed, format: Option<Format>) -> Result<Outcome> {
    json_only(format)?;
    let generated = generate(args.n, args.d, args.domain.into(), seed, args.plant)?;
    generated.dataset.write_path(&args.out)?;
    let report = GenReport {
        n: args.n,
        d: args.d,
        domain: args.domain,
        dist: args.dist,
        planted: generated.planted,
    };
    output::emit(&output::to_json(&report)?, None)?;
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_surface_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn family_spec_validation() {
        let spec = |family, param| FamilySpec { family, param };
        assert_eq!(spec(1, None).family().unwrap(), Family::One);
        assert!(spec(1, Some(2)).family().is_err());
        assert!(spec(2, None).family().is_err());
        assert!(spec(4, Some(1)).family().is_err());
        assert!(matches!(spec(2, Some(3)).family().unwrap(), Family::Two(_)));
        assert!(matches!(spec(3, Some(2)).family().unwrap(), Family::Three(_)));
    }

    #[test]
    fn audit_spec_parsing() {
        let parse = |tokens: &[&str]| {
            AuditSpec::parse(&tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>())
        };
        let spec = parse(&["family=hyperplane:4", "trials=5000"]).unwrap();
        assert_eq!((spec.k, spec.trials), (4, 5000));
        let spec = parse(&["family=hyperplane"]).unwrap();
        assert_eq!((spec.k, spec.trials), (1, 100_000));
        assert!(parse(&["family=minhash"]).is_err());
        assert!(parse(&["trials"]).is_err());
        assert!(parse(&["depth=3"]).is_err());
    }
}
