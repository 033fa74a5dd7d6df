//! The `regmatch` binary: argument surface and command dispatch.
//!
//! Exit codes: 0 on success, 2 when a Monte Carlo pipeline run aborts after
//! a sampling failure, 3 for invalid input, bad usage, or I/O failures.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use regmatch_core::bvn::{
    bvn_decompose, bvn_match_bits, bvn_match_sampled, parse_matrix, DoublyStochasticMatrix,
};
use regmatch_core::decomposition::{
    decompose, relevant_pairs, validate_decomposition, witness_cut_sizes, Decomposition,
    DecompositionReport,
};
use regmatch_core::graph::{
    format_edge_list, gen_adversarial, gen_regular, parse_edge_list, AdversarialParams,
    BipartiteGraph, VertexPair,
};
use regmatch_core::matching::{hopcroft_karp, Matching, PhaseStats};
use regmatch_core::pipeline::{run_pipeline_observed, Mode, PipelineConfig, Variant};
use regmatch_core::sampling::SamplerConfig;
use regmatch_core::strength::{exact_strengths, weighted_strengths};
use regmatch_core::uncrossing::{
    crossed_pairs_demo, uncross, uncrossable_pairs_demo, venn_uncross_single_cut,
    verify_uncrossing, PairCollection, ThicknessContext, UncrossingReport,
};
use regmatch_core::{ratio, Error, Rational};

use crate::experiment::{run_experiment, to_csv, ExperimentSpec};
use crate::io::{read_input, write_output, TimedReport, TimingObserver};
use crate::{CliError, Result};

#[derive(Parser, Debug)]
#[command(
    name = "regmatch",
    version,
    about = "Perfect matchings in d-regular bipartite graphs via two-stage edge sampling, \
             with generators, exact edge strengths, decomposition, uncrossing demos, \
             doubly stochastic matrix matching, and an experiment harness"
)]
pub struct Cli {
    /// Base RNG seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format, where the command offers a choice.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph file (edge-list format)
    Gen(GenArgs),
    /// Maximum matching with per-phase statistics
    Match(InputArgs),
    /// Exact edge strengths
    Strength(InputArgs),
    /// Min-cut-driven decomposition with its validation report
    Decompose(InputArgs),
    /// Find a perfect matching in a doubly stochastic matrix's support
    Bvn(BvnArgs),
    /// Run the full matching pipeline on a graph
    Pipeline(PipelineArgs),
    /// Run the pipeline over an (n, d) grid and aggregate statistics
    Experiment(ExperimentArgs),
    /// Built-in uncrossing demonstrations on two tiny instances
    UncrossDemo,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Graph family to generate.
    #[arg(long, value_enum, default_value_t = Family::Regular)]
    pub family: Family,
    /// Vertices per side (regular family).
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree.
    #[arg(long)]
    pub d: usize,
    /// Number of stacked blocks (adversarial family).
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Regular,
    Adversarial,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Graph file in edge-list format; `-` reads stdin.
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct BvnArgs {
    /// Matrix file; `-` reads stdin.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = BvnMethod::Bits)]
    pub method: BvnMethod,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BvnMethod {
    /// Euler-circuit bit elimination (dyadic entries only).
    Bits,
    /// Strength-based sampling with full-support fallback.
    Sampled,
    /// Full convex decomposition into permutations.
    Decompose,
}

/// Sampling constants shared by `pipeline` and `experiment`.
#[derive(Args, Debug, Clone)]
pub struct SamplerFlags {
    /// Uniform-stage rate constant.
    #[arg(long, default_value_t = SamplerConfig::default().c1)]
    pub c1: f64,
    /// Strength-stage rate constant.
    #[arg(long = "c-bk", default_value_t = SamplerConfig::default().c_bk)]
    pub c_bk: f64,
    /// Thickness threshold in the strength-stage rate.
    #[arg(long, default_value_t = SamplerConfig::default().gamma)]
    pub gamma: f64,
    /// Analysis slack, echoed into reports.
    #[arg(long, default_value_t = SamplerConfig::default().epsilon)]
    pub epsilon: f64,
    /// Success amplification factor (>= 1) applied to both rate constants.
    #[arg(long, default_value_t = SamplerConfig::default().amplify)]
    pub amplify: u32,
}

impl SamplerFlags {
    fn to_config(&self, seed: u64) -> SamplerConfig {
        SamplerConfig {
            c1: self.c1,
            c_bk: self.c_bk,
            gamma: self.gamma,
            epsilon: self.epsilon,
            seed,
            amplify: self.amplify,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Sampled,
    Direct,
    Euler,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Sampled => Mode::Sampled,
            ModeArg::Direct => Mode::Direct,
            ModeArg::Euler => Mode::Euler,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    LasVegas,
    MonteCarlo,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::LasVegas => Variant::LasVegas,
            VariantArg::MonteCarlo => Variant::MonteCarlo,
        }
    }
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// Graph file in edge-list format; `-` reads stdin.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = VariantArg::LasVegas)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub sampler: SamplerFlags,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// Comma-separated side sizes (empty grid allowed).
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Comma-separated degrees; cells with d > n are skipped.
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<usize>,
    /// Trials per cell, with seeds derived from the base seed.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Also write the per-cell CSV rows to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = VariantArg::LasVegas)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub sampler: SamplerFlags,
}

/// Parses the process arguments and runs the selected command; returns the
/// process exit code. `--help`/`--version` exit 0, usage errors exit 3.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

/// Runs one parsed command and returns the exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, cli.seed, out),
        Command::Match(args) => cmd_match(&args, out),
        Command::Strength(args) => cmd_strength(&args, cli.format, out),
        Command::Decompose(args) => cmd_decompose(&args, out),
        Command::Bvn(args) => cmd_bvn(&args, cli.seed, out),
        Command::Pipeline(args) => cmd_pipeline(&args, cli.seed, out),
        Command::Experiment(args) => cmd_experiment(&args, cli.seed, cli.format, out),
        Command::UncrossDemo => cmd_uncross_demo(out),
    }
}

fn load_graph(path: &Path) -> Result<BipartiteGraph> {
    Ok(parse_edge_list(&read_input(path)?)?)
}

fn load_matrix(path: &Path) -> Result<DoublyStochasticMatrix> {
    Ok(parse_matrix(&read_input(path)?)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Io(std::io::Error::other(e)))
}

fn cmd_gen(args: &GenArgs, seed: u64, out: Option<&Path>) -> Result<i32> {
    let g = match args.family {
        Family::Regular => {
            let n = args.n.ok_or_else(|| {
                Error::InvalidParameters("--n is required for the regular family".into())
            })?;
            gen_regular(n, args.d, seed)?
        }
        Family::Adversarial => {
            let t = args.t.ok_or_else(|| {
                Error::InvalidParameters("--t is required for the adversarial family".into())
            })?;
            gen_adversarial(AdversarialParams { d: args.d, t }, seed)?
        }
    };
    write_output(out, &format_edge_list(&g)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct MatchOutput {
    n_left: usize,
    n_right: usize,
    size: usize,
    perfect: bool,
    phases: Vec<PhaseStats>,
    path_lengths: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    time_ms: f64,
}

fn cmd_match(args: &InputArgs, out: Option<&Path>) -> Result<i32> {
    let g = load_graph(&args.input)?;
    let start = Instant::now();
    let (m, phases) = hopcroft_karp(&g);
    let time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let output = MatchOutput {
        n_left: g.n_left(),
        n_right: g.n_right(),
        size: m.size(),
        perfect: m.is_perfect(&g),
        path_lengths: phases.iter().map(|s| s.path_length).collect(),
        phases,
        pairs: m.pairs(),
        time_ms,
    };
    write_output(out, &to_json(&output)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct EdgeStrength {
    p: usize,
    q: usize,
    /// Exact value; integral for unweighted graphs, `num/den` otherwise.
    strength: String,
}

#[derive(Serialize)]
struct StrengthOutput {
    n_left: usize,
    n_right: usize,
    weighted: bool,
    edges: Vec<EdgeStrength>,
}

fn rational_label(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_strength(args: &InputArgs, format: Format, out: Option<&Path>) -> Result<i32> {
    let g = load_graph(&args.input)?;
    let weighted = !g.is_unweighted();
    let labels: Vec<String> = if weighted {
        weighted_strengths(&g)?.iter().map(rational_label).collect()
    } else {
        exact_strengths(&g)?.iter().map(u64::to_string).collect()
    };
    let edges: Vec<EdgeStrength> = labels
        .into_iter()
        .enumerate()
        .map(|(i, strength)| {
            let e = g.edge(i);
            EdgeStrength {
                p: e.p,
                q: e.q,
                strength,
            }
        })
        .collect();
    let content = match format {
        Format::Json => to_json(&StrengthOutput {
            n_left: g.n_left(),
            n_right: g.n_right(),
            weighted,
            edges,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "q", "strength"])
                .map_err(std::io::Error::other)?;
            for e in &edges {
                w.write_record([e.p.to_string(), e.q.to_string(), e.strength.clone()])
                    .map_err(std::io::Error::other)?;
            }
            let bytes = w.into_inner().map_err(std::io::Error::other)?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
    };
    write_output(out, &content)?;
    Ok(0)
}

#[derive(Serialize)]
struct RelevantPairStats {
    count: usize,
    /// Smallest witness-to-cut size ratio over pairs with nonempty cuts.
    min_witness_cut_ratio: Option<f64>,
}

#[derive(Serialize)]
struct DecomposeOutput {
    decomposition: Decomposition,
    report: DecompositionReport,
    all_bounds_hold: bool,
    /// Present when every piece is small enough for pair enumeration.
    relevant_pairs: Option<RelevantPairStats>,
}

fn cmd_decompose(args: &InputArgs, out: Option<&Path>) -> Result<i32> {
    let g = load_graph(&args.input)?;
    let dec = decompose(&g)?;
    let report = validate_decomposition(&g, &dec)?;
    let all_bounds_hold = report.all_ok();
    let relevant = match relevant_pairs(&g, &dec) {
        Ok(rel) => {
            let sizes = witness_cut_sizes(&g, &rel)?;
            let min_ratio = sizes
                .iter()
                .filter(|&&(_, c)| c > 0)
                .map(|&(w, c)| w as f64 / c as f64)
                .fold(None, |acc: Option<f64>, r| {
                    Some(acc.map_or(r, |a| a.min(r)))
                });
            Some(RelevantPairStats {
                count: rel.pairs.len(),
                min_witness_cut_ratio: min_ratio,
            })
        }
        Err(Error::InstanceTooLarge(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let output = DecomposeOutput {
        decomposition: dec,
        report,
        all_bounds_hold,
        relevant_pairs: relevant,
    };
    write_output(out, &to_json(&output)?)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
enum BvnOutput {
    Bits {
        n: usize,
        bits: u64,
        rounds: usize,
        pairs: Vec<(usize, usize)>,
        verified: bool,
    },
    Sampled {
        n: usize,
        fallback_used: bool,
        pairs: Vec<(usize, usize)>,
        verified: bool,
    },
    Decompose {
        n: usize,
        terms: Vec<BvnTerm>,
        coefficient_sum: String,
    },
}

#[derive(Serialize)]
struct BvnTerm {
    coefficient: String,
    pairs: Vec<(usize, usize)>,
}

fn verified_in_support(m: &DoublyStochasticMatrix, matching: &Matching) -> bool {
    let g = m.support_graph();
    matching.check_against(&g).is_ok() && matching.is_perfect(&g)
}

fn cmd_bvn(args: &BvnArgs, seed: u64, out: Option<&Path>) -> Result<i32> {
    let m = load_matrix(&args.input)?;
    let output = match args.method {
        BvnMethod::Bits => {
            let (matching, rounds) = bvn_match_bits(&m)?;
            BvnOutput::Bits {
                n: m.n(),
                bits: m.bits().expect("bit elimination implies dyadic"),
                rounds,
                verified: verified_in_support(&m, &matching),
                pairs: matching.pairs(),
            }
        }
        BvnMethod::Sampled => {
            let cfg = SamplerConfig {
                seed,
                ..SamplerConfig::default()
            };
            let (matching, fallback_used) = bvn_match_sampled(&m, &cfg)?;
            BvnOutput::Sampled {
                n: m.n(),
                fallback_used,
                verified: verified_in_support(&m, &matching),
                pairs: matching.pairs(),
            }
        }
        BvnMethod::Decompose => {
            let terms = bvn_decompose(&m)?;
            let total = terms
                .iter()
                .fold(ratio(0, 1), |acc, (c, _)| acc + c.clone());
            BvnOutput::Decompose {
                n: m.n(),
                terms: terms
                    .into_iter()
                    .map(|(c, matching)| BvnTerm {
                        coefficient: rational_label(&c),
                        pairs: matching.pairs(),
                    })
                    .collect(),
                coefficient_sum: rational_label(&total),
            }
        }
    };
    write_output(out, &to_json(&output)?)?;
    Ok(0)
}

fn cmd_pipeline(args: &PipelineArgs, seed: u64, out: Option<&Path>) -> Result<i32> {
    let g = load_graph(&args.input)?;
    let cfg = PipelineConfig {
        sampler: args.sampler.to_config(seed),
        mode: args.mode.into(),
        variant: args.variant.into(),
    };
    let mut timer = TimingObserver::new();
    let outcome = run_pipeline_observed(&g, &cfg, &mut timer)?;
    let aborted = outcome.report.aborted;
    let timed = TimedReport::new(outcome.report, timer);
    write_output(out, &to_json(&timed)?)?;
    Ok(if aborted { 2 } else { 0 })
}

fn cmd_experiment(
    args: &ExperimentArgs,
    seed: u64,
    format: Format,
    out: Option<&Path>,
) -> Result<i32> {
    let spec = ExperimentSpec {
        n_values: args.n.clone(),
        d_values: args.d.clone(),
        trials: args.trials,
        base_seed: seed,
        template: PipelineConfig {
            sampler: args.sampler.to_config(seed),
            mode: args.mode.into(),
            variant: args.variant.into(),
        },
    };
    let summary = run_experiment(&spec)?;
    if let Some(csv_path) = &args.csv {
        write_output(Some(csv_path), &to_csv(&summary.cells)?)?;
    }
    let content = match format {
        Format::Json => to_json(&summary)?,
        Format::Csv => to_csv(&summary.cells)?,
    };
    write_output(out, &content)?;
    Ok(0)
}

#[derive(Serialize)]
struct DemoOutput {
    name: &'static str,
    gamma: String,
    input_pairs: Vec<VertexPair>,
    output_pairs: Vec<VertexPair>,
    report: UncrossingReport,
    all_ok: bool,
}

fn run_demo(
    name: &'static str,
    g: &BipartiteGraph,
    pairs: Vec<VertexPair>,
    gamma: Rational,
    single_cut: bool,
) -> Result<DemoOutput> {
    let ctx = ThicknessContext::uniform(g);
    let coll = PairCollection::new(pairs.clone(), gamma.clone());
    let result = if single_cut {
        venn_uncross_single_cut(&ctx, &coll)?
    } else {
        uncross(&ctx, &coll)?
    };
    let report = verify_uncrossing(&ctx, &coll, &result)?;
    Ok(DemoOutput {
        name,
        gamma: rational_label(&gamma),
        input_pairs: pairs,
        output_pairs: result.pairs,
        all_ok: report.all_ok(),
        report,
    })
}

fn cmd_uncross_demo(out: Option<&Path>) -> Result<i32> {
    let (g1, pairs1) = crossed_pairs_demo();
    let (g2, pairs2) = uncrossable_pairs_demo();
    let demos = vec![
        // Two pairs sharing one cut collapse to their overlap-region pair.
        run_demo("crossing-collapses", &g1, pairs1, ratio(1, 2), true)?,
        // Two pairs sharing a cut that no smaller collection represents.
        run_demo("already-minimal", &g2, pairs2, ratio(49, 100), false)?,
    ];
    write_output(out, &to_json(&demos)?)?;
    Ok(0)
}
