//! Grid experiment harness: runs the pipeline over an (n, d) grid with
//! derived per-trial seeds and aggregates per-cell statistics as CSV rows
//! plus a JSON summary. Everything except wall-clock columns is
//! deterministic in the base seed.

use std::collections::BTreeMap;

use serde::Serialize;

use regmatch_core::graph::gen_regular;
use regmatch_core::ln;
use regmatch_core::pipeline::{resolve_mode, run_pipeline_observed, PipelineConfig, RunReport};
use regmatch_core::sampling::EDGE_BOUND_C_PRIME;

use crate::io::TimingObserver;
use crate::Result;

/// What to run: the (n, d) grid, how many trials per cell, and the pipeline
/// configuration template (whose seed is replaced per trial).
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub n_values: Vec<usize>,
    pub d_values: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub template: PipelineConfig,
}

/// Aggregated results of one (n, d) cell.
#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub d: usize,
    /// Mode the cell resolved to (auto templates resolve per cell).
    pub mode: String,
    pub trials: usize,
    pub success_rate: f64,
    pub fallback_rate: f64,
    pub abort_rate: f64,
    /// Mean surviving edges after uniform thinning (sampled cells only).
    pub mean_edges_after_uniform: Option<f64>,
    /// Its expectation `p * n * d`.
    pub expected_edges_after_uniform: Option<f64>,
    /// Mean surviving edges after strength-based thinning.
    pub mean_edges_after_strength: Option<f64>,
    /// The frozen bound those survivors must stay under.
    pub strength_edge_bound: f64,
    pub mean_phase_count: f64,
    /// Longest shortest-augmenting-path length seen in any phase.
    pub max_path_length: usize,
    /// Most augmentations any trial applied at or past matching size
    /// `n - ceil(2n/d)`.
    pub max_late_augmentations: usize,
    /// The counting-identity budget for those: `ceil(2n/d)`.
    pub late_augmentation_budget: usize,
    pub mean_total_ms: f64,
    pub mean_stage_ms: BTreeMap<&'static str, f64>,
}

/// The JSON artifact: the grid definition echoed back plus every cell.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSummary {
    pub spec: ExperimentSpec,
    pub cells: Vec<CellSummary>,
}

/// Augmentations applied at or after matching size `cutoff`, over the
/// sampled-graph phases followed by any fallback phases.
pub fn augmentations_from(report: &RunReport, cutoff: usize) -> usize {
    report
        .phases
        .iter()
        .chain(&report.fallback_phases)
        .map(|s| {
            let start = s.matching_size - s.augmentations;
            s.matching_size.saturating_sub(start.max(cutoff))
        })
        .sum()
}

fn mean_of(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Runs every valid cell of the grid (cells with `d > n` are skipped).
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentSummary> {
    let mut cells = Vec::new();
    for &n in &spec.n_values {
        for &d in &spec.d_values {
            if d > n {
                continue;
            }
            cells.push(run_cell(spec, n, d)?);
        }
    }
    Ok(ExperimentSummary {
        spec: spec.clone(),
        cells,
    })
}

fn run_cell(spec: &ExperimentSpec, n: usize, d: usize) -> Result<CellSummary> {
    let budget = (2 * n + d - 1) / d;
    let cutoff = n.saturating_sub(budget);

    let mut successes = 0usize;
    let mut fallbacks = 0usize;
    let mut aborts = 0usize;
    let mut e_uniform = Vec::new();
    let mut e_strength = Vec::new();
    let mut expected_uniform = None;
    let mut phase_counts = Vec::new();
    let mut max_path_length = 0usize;
    let mut max_late = 0usize;
    let mut total_ms = Vec::new();
    let mut stage_ms_sums: BTreeMap<&'static str, f64> = BTreeMap::new();
    let mut mode_label = String::new();

    for trial in 0..spec.trials {
        let seed = spec.base_seed + trial as u64;
        let g = gen_regular(n, d, seed)?;
        let mut cfg = spec.template.clone();
        cfg.sampler.seed = seed;
        if trial == 0 {
            let resolved = resolve_mode(&g, cfg.mode)?;
            mode_label = serde_json::to_value(resolved)
                .expect("mode serializes")
                .as_str()
                .expect("mode is a string")
                .to_string();
        }
        let mut timer = TimingObserver::new();
        let outcome = run_pipeline_observed(&g, &cfg, &mut timer)?;
        let r = &outcome.report;

        successes += usize::from(r.success);
        fallbacks += usize::from(r.fallback_used);
        aborts += usize::from(r.aborted);
        if let Some(e) = r.edges_after_uniform {
            e_uniform.push(e as f64);
        }
        if let Some(e) = r.edges_after_strength {
            e_strength.push(e as f64);
        }
        if let Some(p) = r.uniform_probability {
            expected_uniform = Some(p * (n * d) as f64);
        }
        phase_counts.push((r.phases.len() + r.fallback_phases.len()) as f64);
        max_path_length = r
            .phases
            .iter()
            .chain(&r.fallback_phases)
            .map(|s| s.path_length)
            .fold(max_path_length, usize::max);
        max_late = max_late.max(augmentations_from(r, cutoff));
        total_ms.push(timer.total_ms());
        for (label, ms) in &timer.stage_ms {
            *stage_ms_sums.entry(label).or_insert(0.0) += ms;
        }
    }

    let trials = spec.trials;
    let rate = |count: usize| {
        if trials == 0 {
            0.0
        } else {
            count as f64 / trials as f64
        }
    };
    let mean_stage_ms = stage_ms_sums
        .into_iter()
        .map(|(label, sum)| (label, sum / trials.max(1) as f64))
        .collect();

    Ok(CellSummary {
        n,
        d,
        mode: mode_label,
        trials,
        success_rate: rate(successes),
        fallback_rate: rate(fallbacks),
        abort_rate: rate(aborts),
        mean_edges_after_uniform: mean_of(&e_uniform),
        expected_edges_after_uniform: expected_uniform,
        mean_edges_after_strength: mean_of(&e_strength),
        strength_edge_bound: EDGE_BOUND_C_PRIME * n as f64 * ln(n),
        mean_phase_count: mean_of(&phase_counts).unwrap_or(0.0),
        max_path_length,
        max_late_augmentations: max_late,
        late_augmentation_budget: budget,
        mean_total_ms: mean_of(&total_ms).unwrap_or(0.0),
        mean_stage_ms,
    })
}

/// CSV column order; one row per cell.
pub const CSV_HEADERS: [&str; 20] = [
    "n",
    "d",
    "mode",
    "trials",
    "success_rate",
    "fallback_rate",
    "abort_rate",
    "mean_edges_after_uniform",
    "expected_edges_after_uniform",
    "mean_edges_after_strength",
    "strength_edge_bound",
    "mean_phase_count",
    "max_path_length",
    "max_late_augmentations",
    "late_augmentation_budget",
    "mean_total_ms",
    "uniform_sampling_ms",
    "strength_sampling_ms",
    "matching_ms",
    "fallback_ms",
];

/// Renders the cells as CSV (header always present, even for empty grids).
pub fn to_csv(cells: &[CellSummary]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADERS)
        .map_err(|e| std::io::Error::other(e))?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.3}")).unwrap_or_default();
    for c in cells {
        let stage = |label: &str| {
            c.mean_stage_ms
                .get(label)
                .map(|ms| format!("{ms:.3}"))
                .unwrap_or_default()
        };
        w.write_record([
            c.n.to_string(),
            c.d.to_string(),
            c.mode.clone(),
            c.trials.to_string(),
            format!("{:.4}", c.success_rate),
            format!("{:.4}", c.fallback_rate),
            format!("{:.4}", c.abort_rate),
            opt(c.mean_edges_after_uniform),
            opt(c.expected_edges_after_uniform),
            opt(c.mean_edges_after_strength),
            format!("{:.3}", c.strength_edge_bound),
            format!("{:.3}", c.mean_phase_count),
            c.max_path_length.to_string(),
            c.max_late_augmentations.to_string(),
            c.late_augmentation_budget.to_string(),
            format!("{:.3}", c.mean_total_ms),
            stage("uniform_sampling"),
            stage("strength_sampling"),
            stage("matching"),
            stage("fallback"),
        ])
        .map_err(|e| std::io::Error::other(e))?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
