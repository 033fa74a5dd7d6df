//! File plumbing and wall-clock instrumentation: reading graph/matrix files
//! (or stdin), writing command output, and an observer that times pipeline
//! stages.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use regmatch_core::pipeline::{RunReport, Stage, StageObserver};

use crate::Result;

/// Reads a whole input file; the path `-` reads stdin instead.
pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

/// Writes command output to `out`, or stdout when absent. A trailing newline
/// is added if missing.
pub fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    let terminated: std::borrow::Cow<'_, str> = if content.ends_with('\n') {
        content.into()
    } else {
        format!("{content}\n").into()
    };
    match out {
        Some(path) => fs::write(path, terminated.as_bytes())?,
        None => std::io::stdout().write_all(terminated.as_bytes())?,
    }
    Ok(())
}

/// Stable label for a pipeline stage, used as a key in timing maps.
pub fn stage_label(stage: Stage) -> &'static str {
    match stage {
        Stage::UniformSampling => "uniform_sampling",
        Stage::StrengthSampling => "strength_sampling",
        Stage::Matching => "matching",
        Stage::Fallback => "fallback",
    }
}

/// Observer that records wall-clock milliseconds per pipeline stage.
#[derive(Default)]
pub struct TimingObserver {
    open: Option<(Stage, Instant)>,
    /// Accumulated milliseconds per stage label.
    pub stage_ms: BTreeMap<&'static str, f64>,
}

impl TimingObserver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sum over all recorded stages.
    pub fn total_ms(&self) -> f64 {
        self.stage_ms.values().sum()
    }
}

impl StageObserver for TimingObserver {
    fn begin(&mut self, stage: Stage) {
        self.open = Some((stage, Instant::now()));
    }

    fn end(&mut self, stage: Stage) {
        if let Some((open_stage, start)) = self.open.take() {
            debug_assert_eq!(open_stage, stage);
            *self.stage_ms.entry(stage_label(stage)).or_insert(0.0) +=
                start.elapsed().as_secs_f64() * 1000.0;
        }
    }
}

/// A run report with the wall-clock times the core crate cannot measure
/// itself. The deterministic part stays bit-identical across repeated runs;
/// only `stage_ms` varies.
#[derive(Debug, Serialize)]
pub struct TimedReport {
    #[serde(flatten)]
    pub report: RunReport,
    pub stage_ms: BTreeMap<&'static str, f64>,
    pub total_ms: f64,
}

impl TimedReport {
    pub fn new(report: RunReport, timer: TimingObserver) -> Self {
        let total_ms = timer.total_ms();
        Self {
            report,
            stage_ms: timer.stage_ms,
            total_ms,
        }
    }
}
