//! End-to-end perfect-matching pipeline: mode routing, the two-stage sampled
//! run with oversize guards, abort-vs-fallback failure handling, and
//! structured run reports.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::bvn::euler_halve;
use crate::graph::BipartiteGraph;
use crate::matching::{complete_matching, hopcroft_karp, Matching, PhaseStats};
use crate::sampling::{
    bk_sample, s1_probability, uniform_sample, SamplerConfig, EDGE_BOUND_C_PRIME,
};
use crate::strength::exact_strengths;
use crate::{ln, Error, Result};

/// How the pipeline finds the matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Route by degree: sampled when `d > sqrt(n) * ln n`, degree halving
    /// when `1 < d <= sqrt(n) * ln n` is a power of two, direct otherwise.
    Auto,
    /// Two-stage sampling, then matching on the thinned graph.
    Sampled,
    /// Plain maximum matching on the input graph.
    Direct,
    /// Euler-circuit degree halving (regular power-of-two degree only).
    Euler,
}

/// What a failed or oversized sampling attempt does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Always produce a matching: failures fall back to matching the full
    /// graph, warm-started from whatever the sampled attempt found.
    LasVegas,
    /// Bounded work: failures abort and report instead of falling back.
    MonteCarlo,
}

/// Full pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub sampler: SamplerConfig,
    pub mode: Mode,
    pub variant: Variant,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            sampler: SamplerConfig::default(),
            mode: Mode::Auto,
            variant: Variant::LasVegas,
        }
    }
}

/// Pipeline stages in execution order, for observers that attach timing or
/// progress reporting. The core library never reads a clock itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Independent uniform edge thinning.
    UniformSampling,
    /// Exact strength computation plus strength-based thinning.
    StrengthSampling,
    /// The matching computation on whichever graph the mode prepared.
    Matching,
    /// Full-graph completion after a failed sampling attempt.
    Fallback,
}

/// Receives begin/end callbacks around each executed [`Stage`].
pub trait StageObserver {
    fn begin(&mut self, stage: Stage);
    fn end(&mut self, stage: Stage);
}

/// Observer that ignores all callbacks.
pub struct NoOpObserver;

impl StageObserver for NoOpObserver {
    fn begin(&mut self, _stage: Stage) {}
    fn end(&mut self, _stage: Stage) {}
}

/// Everything one pipeline run reports. Deterministic in the input graph and
/// configuration: two runs with equal inputs produce equal reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub n_left: usize,
    pub n_right: usize,
    /// Common degree when the input is regular.
    pub degree: Option<usize>,
    pub edges: usize,
    /// The mode that actually ran (never `Auto`).
    pub mode: Mode,
    pub variant: Variant,
    pub sampler: SamplerConfig,
    /// Stage-1 retention probability, in sampled mode.
    pub uniform_probability: Option<f64>,
    /// Surviving edges after uniform thinning, in sampled mode.
    pub edges_after_uniform: Option<usize>,
    /// Surviving edges after strength-based thinning, in sampled mode.
    pub edges_after_strength: Option<usize>,
    /// Matching phases on the prepared graph (empty in euler mode).
    pub phases: Vec<PhaseStats>,
    /// Matching phases of the full-graph completion, when it ran.
    pub fallback_phases: Vec<PhaseStats>,
    /// Halving rounds, in euler mode.
    pub euler_depth: Option<usize>,
    /// Total edges traversed while halving, in euler mode.
    pub euler_edge_touches: Option<usize>,
    /// Why the sampled attempt did not finish, when it did not.
    pub sampling_failure: Option<String>,
    /// Matching size when the fallback took over.
    pub matching_size_before_fallback: Option<usize>,
    pub fallback_used: bool,
    /// True when a Monte Carlo run stopped after a sampling failure.
    pub aborted: bool,
    /// Final matching size (0 after an abort).
    pub matching_size: usize,
    /// True when the run produced a matching and it independently verified
    /// as a perfect matching of the input graph.
    pub success: bool,
}

impl RunReport {
    fn new(g: &BipartiteGraph, mode: Mode, cfg: &PipelineConfig) -> Self {
        Self {
            n_left: g.n_left(),
            n_right: g.n_right(),
            degree: g.regular_degree(),
            edges: g.num_edges(),
            mode,
            variant: cfg.variant,
            sampler: cfg.sampler.clone(),
            uniform_probability: None,
            edges_after_uniform: None,
            edges_after_strength: None,
            phases: Vec::new(),
            fallback_phases: Vec::new(),
            euler_depth: None,
            euler_edge_touches: None,
            sampling_failure: None,
            matching_size_before_fallback: None,
            fallback_used: false,
            aborted: false,
            matching_size: 0,
            success: false,
        }
    }
}

/// A finished run: the report always, the matching unless the run aborted.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub matching: Option<Matching>,
    pub report: RunReport,
}

/// True iff `m` is a perfect matching of `g` that uses only edges of `g`.
/// Success reports are gated on this check, independent of the matcher's own
/// bookkeeping.
pub fn verify_matching(g: &BipartiteGraph, m: &Matching) -> bool {
    m.check_against(g).is_ok() && m.is_perfect(g)
}

/// The degree threshold above which sampling pays off: `sqrt(n) * ln n`.
pub fn sampling_threshold(n: usize) -> f64 {
    libm::sqrt(n as f64) * ln(n)
}

/// Resolves `Auto` to a concrete mode and validates mode/graph fit.
pub fn resolve_mode(g: &BipartiteGraph, mode: Mode) -> Result<Mode> {
    let degree_for = |label: &str| {
        g.regular_degree().ok_or_else(|| {
            Error::InvalidConfiguration(format!("{label} mode requires a regular graph"))
        })
    };
    match mode {
        Mode::Direct => Ok(Mode::Direct),
        Mode::Sampled => {
            let d = degree_for("sampled")?;
            if d == 0 {
                return Err(Error::InvalidConfiguration(
                    "sampled mode requires at least one edge".to_string(),
                ));
            }
            Ok(Mode::Sampled)
        }
        Mode::Euler => {
            let d = degree_for("euler")?;
            if d == 0 || !d.is_power_of_two() {
                return Err(Error::InvalidConfiguration(format!(
                    "euler mode requires a positive power-of-two degree, got {d}"
                )));
            }
            Ok(Mode::Euler)
        }
        Mode::Auto => {
            let d = degree_for("auto")?;
            if d == 0 {
                return Err(Error::InvalidConfiguration(
                    "auto mode requires at least one edge".to_string(),
                ));
            }
            if d == 1 {
                // Already a perfect matching; one direct phase reads it off.
                Ok(Mode::Direct)
            } else if d as f64 > sampling_threshold(g.n_left()) {
                Ok(Mode::Sampled)
            } else if d.is_power_of_two() {
                Ok(Mode::Euler)
            } else {
                Ok(Mode::Direct)
            }
        }
    }
}

/// Runs the pipeline without instrumentation.
pub fn run_pipeline(g: &BipartiteGraph, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    run_pipeline_observed(g, cfg, &mut NoOpObserver)
}

/// Runs the pipeline, reporting stage boundaries to `obs`.
///
/// Sampled mode thins the graph twice (uniformly, then inversely to exact
/// edge strengths) and matches the residue. A sampling attempt fails when
/// either sample exceeds its size guard or the residue lacks a perfect
/// matching; the Las Vegas variant then completes the matching on the full
/// graph (always possible on regular inputs), while the Monte Carlo variant
/// stops and reports the failure with `aborted` set and no matching.
///
/// Errors are reserved for invalid inputs and configurations: an irregular
/// graph in a mode that needs regularity, or a graph with no perfect
/// matching in direct mode.
pub fn run_pipeline_observed(
    g: &BipartiteGraph,
    cfg: &PipelineConfig,
    obs: &mut dyn StageObserver,
) -> Result<PipelineOutcome> {
    cfg.sampler.validate()?;
    let mode = resolve_mode(g, cfg.mode)?;
    let mut report = RunReport::new(g, mode, cfg);
    match mode {
        Mode::Auto => unreachable!("resolve_mode returns concrete modes"),
        Mode::Direct => {
            obs.begin(Stage::Matching);
            let (m, stats) = hopcroft_karp(g);
            obs.end(Stage::Matching);
            report.phases = stats;
            if !m.is_perfect(g) {
                return Err(Error::InvalidInput(format!(
                    "graph has no perfect matching (maximum size {} of {})",
                    m.size(),
                    g.n_left()
                )));
            }
            finish(g, m, report)
        }
        Mode::Euler => {
            obs.begin(Stage::Matching);
            let out = euler_halve(g)?;
            obs.end(Stage::Matching);
            report.euler_depth = Some(out.depth);
            report.euler_edge_touches = Some(out.edge_touches);
            finish(g, out.matching, report)
        }
        Mode::Sampled => run_sampled(g, cfg, obs, report),
    }
}

fn run_sampled(
    g: &BipartiteGraph,
    cfg: &PipelineConfig,
    obs: &mut dyn StageObserver,
    mut report: RunReport,
) -> Result<PipelineOutcome> {
    let n = g.n_left();
    let d = report.degree.expect("resolve_mode checked regularity");
    let p = s1_probability(n, d, &cfg.sampler)?;
    report.uniform_probability = Some(p);

    obs.begin(Stage::UniformSampling);
    let g1 = uniform_sample(g, p, cfg.sampler.stage_seed(1))?;
    obs.end(Stage::UniformSampling);
    report.edges_after_uniform = Some(g1.num_edges());

    // Oversize guards keep a Monte Carlo run's work bounded; both limits sit
    // far above the concentrated typical sizes.
    let uniform_cap = 4.0 * p * (n * d) as f64;
    if g1.num_edges() as f64 > uniform_cap {
        let reason = format!(
            "uniform sample kept {} edges, over the size guard {uniform_cap:.1}",
            g1.num_edges()
        );
        return sampled_failure(g, cfg, obs, report, Matching::empty(g), reason);
    }

    obs.begin(Stage::StrengthSampling);
    let strengths = exact_strengths(&g1)?;
    let g2 = bk_sample(&g1, &strengths, &cfg.sampler)?;
    obs.end(Stage::StrengthSampling);
    report.edges_after_strength = Some(g2.num_edges());

    let strength_cap = 4.0 * EDGE_BOUND_C_PRIME * n as f64 * ln(n);
    if g2.num_edges() as f64 > strength_cap {
        let reason = format!(
            "strength-based sample kept {} edges, over the size guard {strength_cap:.1}",
            g2.num_edges()
        );
        return sampled_failure(g, cfg, obs, report, Matching::empty(g), reason);
    }

    obs.begin(Stage::Matching);
    let (m2, stats) = hopcroft_karp(&g2);
    obs.end(Stage::Matching);
    report.phases = stats;

    // Matchings of the thinned graph transfer verbatim: its edges are edges
    // of `g` under the same vertex numbering.
    let lifted = Matching::from_pairs(g, &m2.pairs())?;
    if m2.is_perfect(&g2) {
        finish(g, lifted, report)
    } else {
        let reason = format!(
            "sampled graph's maximum matching covers {} of {} left vertices",
            m2.size(),
            n
        );
        sampled_failure(g, cfg, obs, report, lifted, reason)
    }
}

fn sampled_failure(
    g: &BipartiteGraph,
    cfg: &PipelineConfig,
    obs: &mut dyn StageObserver,
    mut report: RunReport,
    partial: Matching,
    reason: String,
) -> Result<PipelineOutcome> {
    report.sampling_failure = Some(reason);
    match cfg.variant {
        Variant::MonteCarlo => {
            report.aborted = true;
            Ok(PipelineOutcome {
                matching: None,
                report,
            })
        }
        Variant::LasVegas => {
            report.fallback_used = true;
            report.matching_size_before_fallback = Some(partial.size());
            obs.begin(Stage::Fallback);
            let (m, stats) = complete_matching(g, partial)?;
            obs.end(Stage::Fallback);
            report.fallback_phases = stats;
            if !m.is_perfect(g) {
                return Err(Error::InvalidInput(format!(
                    "graph has no perfect matching (maximum size {} of {})",
                    m.size(),
                    g.n_left()
                )));
            }
            finish(g, m, report)
        }
    }
}

/// Final gate for every successful path: independent verification, then the
/// success flags.
fn finish(g: &BipartiteGraph, m: Matching, mut report: RunReport) -> Result<PipelineOutcome> {
    if !verify_matching(g, &m) {
        return Err(Error::InvalidInput(
            "matcher output failed independent verification".to_string(),
        ));
    }
    report.matching_size = m.size();
    report.success = true;
    Ok(PipelineOutcome {
        matching: Some(m),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_regular;
    use crate::matching::phases_within_early_path_bound;
    use alloc::vec;

    fn cfg(mode: Mode, variant: Variant, seed: u64) -> PipelineConfig {
        PipelineConfig {
            sampler: SamplerConfig {
                seed,
                ..SamplerConfig::default()
            },
            mode,
            variant,
        }
    }

    #[test]
    fn degree_one_routes_direct_and_reads_off_the_matching() {
        let g = gen_regular(8, 1, 4).unwrap();
        let out = run_pipeline(&g, &cfg(Mode::Auto, Variant::LasVegas, 0)).unwrap();
        assert_eq!(out.report.mode, Mode::Direct);
        assert!(out.report.success);
        assert_eq!(out.report.matching_size, 8);
        assert!(out.report.uniform_probability.is_none());
        assert!(verify_matching(&g, out.matching.as_ref().unwrap()));
    }

    #[test]
    fn auto_routing_follows_the_degree_thresholds() {
        // d = n = 16 exceeds sqrt(16) * ln 16 ~ 11.09: sampled.
        let dense = gen_regular(16, 16, 0).unwrap();
        assert_eq!(resolve_mode(&dense, Mode::Auto).unwrap(), Mode::Sampled);
        // d = 16 <= sqrt(64) * ln 64 ~ 33.3 and is a power of two: euler.
        let mid = gen_regular(64, 16, 0).unwrap();
        assert_eq!(resolve_mode(&mid, Mode::Auto).unwrap(), Mode::Euler);
        // d = 6 is small and not a power of two: direct.
        let odd = gen_regular(64, 6, 0).unwrap();
        assert_eq!(resolve_mode(&odd, Mode::Auto).unwrap(), Mode::Direct);
        // Explicit modes pass through.
        assert_eq!(resolve_mode(&odd, Mode::Sampled).unwrap(), Mode::Sampled);
    }

    #[test]
    fn auto_euler_run_matches_mid_density_graphs() {
        let g = gen_regular(64, 16, 9).unwrap();
        let out = run_pipeline(&g, &cfg(Mode::Auto, Variant::LasVegas, 9)).unwrap();
        assert_eq!(out.report.mode, Mode::Euler);
        assert_eq!(out.report.euler_depth, Some(4));
        assert!(out.report.success);
        assert!(verify_matching(&g, out.matching.as_ref().unwrap()));
    }

    #[test]
    fn sampled_mode_records_both_thinning_stages() {
        let g = gen_regular(128, 32, 2).unwrap();
        let out = run_pipeline(&g, &cfg(Mode::Sampled, Variant::LasVegas, 2)).unwrap();
        let r = &out.report;
        assert_eq!(r.mode, Mode::Sampled);
        assert!(r.success);
        assert_eq!(r.matching_size, 128);
        let e1 = r.edges_after_uniform.unwrap();
        let e2 = r.edges_after_strength.unwrap();
        assert!(e1 <= g.num_edges());
        assert!(e2 <= e1);
        assert!(r.uniform_probability.unwrap() > 0.0);
        assert!(verify_matching(&g, out.matching.as_ref().unwrap()));
    }

    #[test]
    fn las_vegas_always_delivers_a_verified_matching() {
        for seed in 0..30 {
            let g = gen_regular(64, 16, seed).unwrap();
            let out = run_pipeline(&g, &cfg(Mode::Sampled, Variant::LasVegas, seed)).unwrap();
            assert!(out.report.success, "seed {seed}");
            assert!(verify_matching(&g, out.matching.as_ref().unwrap()));
            if out.report.fallback_used {
                assert!(out.report.sampling_failure.is_some());
            }
        }
    }

    #[test]
    fn starved_sampler_aborts_monte_carlo_and_falls_back_las_vegas() {
        // Constants this small leave the sampled graph far from matchable.
        let starved = |variant| PipelineConfig {
            sampler: SamplerConfig {
                c1: 0.05,
                c_bk: 0.05,
                seed: 7,
                ..SamplerConfig::default()
            },
            mode: Mode::Sampled,
            variant,
        };
        let g = gen_regular(64, 32, 1).unwrap();

        let mc = run_pipeline(&g, &starved(Variant::MonteCarlo)).unwrap();
        assert!(mc.report.aborted);
        assert!(!mc.report.success);
        assert!(mc.matching.is_none());
        assert!(mc.report.sampling_failure.is_some());
        assert!(!mc.report.fallback_used);

        let lv = run_pipeline(&g, &starved(Variant::LasVegas)).unwrap();
        assert!(lv.report.success);
        assert!(lv.report.fallback_used);
        assert!(!lv.report.aborted);
        assert_eq!(lv.report.sampling_failure, mc.report.sampling_failure);
        assert!(!lv.report.fallback_phases.is_empty());
        assert!(verify_matching(&g, lv.matching.as_ref().unwrap()));
        // The fallback warm-starts from the partial matching instead of
        // restarting, so the counting identity bounds its augmentations.
        let before = lv.report.matching_size_before_fallback.unwrap();
        let fallback_augs: usize = lv.report.fallback_phases.iter().map(|s| s.augmentations).sum();
        assert_eq!(before + fallback_augs, 64);
    }

    #[test]
    fn reports_are_reproducible() {
        let g = gen_regular(64, 16, 3).unwrap();
        let c = cfg(Mode::Sampled, Variant::LasVegas, 11);
        let a = run_pipeline(&g, &c).unwrap();
        let b = run_pipeline(&g, &c).unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(a.matching, b.matching);
    }

    #[test]
    fn observer_sees_balanced_stages_in_order() {
        #[derive(Default)]
        struct Log(Vec<(Stage, bool)>);
        impl StageObserver for Log {
            fn begin(&mut self, stage: Stage) {
                self.0.push((stage, true));
            }
            fn end(&mut self, stage: Stage) {
                self.0.push((stage, false));
            }
        }
        let g = gen_regular(64, 16, 5).unwrap();
        let mut log = Log::default();
        let out =
            run_pipeline_observed(&g, &cfg(Mode::Sampled, Variant::LasVegas, 5), &mut log).unwrap();
        // Begin/end pairs nest trivially (stages are sequential) and follow
        // execution order.
        let stages: Vec<Stage> = log.0.iter().filter(|(_, b)| *b).map(|(s, _)| *s).collect();
        let mut expected = vec![
            Stage::UniformSampling,
            Stage::StrengthSampling,
            Stage::Matching,
        ];
        if out.report.fallback_used {
            expected.push(Stage::Fallback);
        }
        assert_eq!(stages, expected);
        for pair in log.0.chunks(2) {
            assert_eq!(pair[0].0, pair[1].0);
            assert!(pair[0].1 && !pair[1].1);
        }
    }

    #[test]
    fn mode_graph_mismatches_are_configuration_errors() {
        let irregular = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        for mode in [Mode::Auto, Mode::Sampled, Mode::Euler] {
            assert!(matches!(
                run_pipeline(&irregular, &cfg(mode, Variant::LasVegas, 0)),
                Err(Error::InvalidConfiguration(_))
            ));
        }
        let odd_degree = gen_regular(8, 3, 0).unwrap();
        assert!(matches!(
            run_pipeline(&odd_degree, &cfg(Mode::Euler, Variant::LasVegas, 0)),
            Err(Error::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn direct_mode_rejects_unmatchable_graphs() {
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert!(matches!(
            run_pipeline(&g, &cfg(Mode::Direct, Variant::LasVegas, 0)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn verification_is_independent_of_bookkeeping() {
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let ok = Matching::from_pairs(&g, &[(0, 0), (1, 1)]).unwrap();
        assert!(verify_matching(&g, &ok));
        let undersized = Matching::from_pairs(&g, &[(0, 0)]).unwrap();
        assert!(!verify_matching(&g, &undersized));
        // Pairs that are not edges of `g` fail even at full size.
        let k22 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let crossed = Matching::from_pairs(&k22, &[(0, 1), (1, 0)]).unwrap();
        assert!(!verify_matching(&g, &crossed));
    }

    #[test]
    fn sampled_phases_respect_the_early_path_monitor() {
        for seed in 0..10 {
            let g = gen_regular(128, 16, seed).unwrap();
            let out = run_pipeline(&g, &cfg(Mode::Sampled, Variant::LasVegas, seed)).unwrap();
            assert!(
                phases_within_early_path_bound(128, 16, &out.report.phases),
                "seed {seed}"
            );
        }
    }
}
