//! Comparison reports: one entry per checked statistic.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// The standard error exceeded the declared maximum, or a prerequisite
    /// check failed.
    Inconclusive,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    /// Monte Carlo mean against a target, judged by `|z|`.
    ZScore,
    /// Deterministic residual against a threshold.
    Exact,
    /// Ordering of estimates across a parameter ladder.
    Trend,
    /// Particle-count telemetry.
    Conservation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub kind: EntryKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<i64>,
    pub estimate: f64,
    pub target: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<f64>,
    /// `|z|` bound, residual bound, or zero for trends and telemetry.
    pub tolerance: f64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Entry {
    fn base(name: &str, kind: EntryKind, estimate: f64, target: f64, tolerance: f64, outcome: Outcome) -> Self {
        Self {
            name: name.to_string(),
            kind,
            n: None,
            t: None,
            k: None,
            estimate,
            target,
            std_error: None,
            z: None,
            tolerance,
            outcome,
            note: None,
        }
    }

    /// `|estimate - target| <= z_max * se`, inconclusive if `se > max_se`.
    pub fn z_score(name: &str, estimate: f64, target: f64, se: f64, z_max: f64, max_se: Option<f64>) -> Self {
        let diff = estimate - target;
        // agreement to rounding counts as exact even when every replica is identical
        let z = if diff.abs() <= 1e-12 * target.abs().max(1.0) { 0.0 } else { diff / se };
        let outcome = if max_se.is_some_and(|m| se > m) {
            Outcome::Inconclusive
        } else if z.abs() <= z_max {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        Self { std_error: Some(se), z: Some(z), ..Self::base(name, EntryKind::ZScore, estimate, target, z_max, outcome) }
    }

    pub fn exact(name: &str, residual: f64, threshold: f64) -> Self {
        let outcome = if residual <= threshold { Outcome::Pass } else { Outcome::Fail };
        Self::base(name, EntryKind::Exact, residual, 0.0, threshold, outcome)
    }

    pub fn trend(name: &str, estimate: f64, se: f64, holds: bool) -> Self {
        let outcome = if holds { Outcome::Pass } else { Outcome::Fail };
        Self {
            std_error: Some(se),
            z: Some(if se > 0.0 { estimate / se } else { 0.0 }),
            ..Self::base(name, EntryKind::Trend, estimate, 0.0, 0.0, outcome)
        }
    }

    pub fn conservation(violations: usize, trajectories: usize) -> Self {
        let outcome = if violations == 0 { Outcome::Pass } else { Outcome::Fail };
        let mut e = Self::base("particle-conservation", EntryKind::Conservation, violations as f64, 0.0, 0.0, outcome);
        e.note = Some(format!("{trajectories} trajectories"));
        e
    }

    pub fn at(mut self, n: Option<usize>, t: Option<f64>, k: Option<i64>) -> Self {
        self.n = n;
        self.t = t;
        self.k = k;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn inconclusive(mut self, note: impl Into<String>) -> Self {
        self.outcome = Outcome::Inconclusive;
        self.note = Some(note.into());
        self
    }

    /// One-line human-readable summary.
    pub fn summary_line(&self) -> String {
        let mut line = format!("{:<12} {}", self.outcome.label(), self.name);
        for (label, v) in [("n", self.n.map(|v| v as f64)), ("t", self.t), ("k", self.k.map(|v| v as f64))] {
            if let Some(v) = v {
                line.push_str(&format!(" {label}={v}"));
            }
        }
        line.push_str(&format!(" estimate={:.6e} target={:.6e}", self.estimate, self.target));
        if let (Some(se), Some(z)) = (self.std_error, self.z) {
            line.push_str(&format!(" se={se:.3e} z={z:.2}"));
        }
        if let Some(note) = &self.note {
            line.push_str(&format!(" ({note})"));
        }
        line
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub replicas: usize,
    pub tally: Tally,
    /// `fail` if any entry failed, else `inconclusive` if any entry was,
    /// else `pass`.
    pub outcome: Outcome,
    pub entries: Vec<Entry>,
}

impl ComparisonReport {
    pub fn new(experiment: &str, seed: u64, replicas: usize, entries: Vec<Entry>) -> Self {
        let mut tally = Tally::default();
        for e in &entries {
            match e.outcome {
                Outcome::Pass => tally.pass += 1,
                Outcome::Fail => tally.fail += 1,
                Outcome::Inconclusive => tally.inconclusive += 1,
            }
        }
        let outcome = if tally.fail > 0 {
            Outcome::Fail
        } else if tally.inconclusive > 0 {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        };
        Self { schema_version: REPORT_SCHEMA_VERSION, experiment: experiment.to_string(), seed, replicas, tally, outcome, entries }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn entries_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.name.starts_with(prefix))
    }
}
