//! Report emission: JSON artifacts with embedded run configuration and CSV
//! tables with a schema-version header line.
//!
//! Every file starts with (or embeds) `stylometer/v1` plus the exact
//! configuration that produced it, so a run can be replayed byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use stylometer_core::analysis::CategoryDifference;
use stylometer_core::eval::{CurvePoint, DomainReport, EvalReport};
use stylometer_core::features::pipeline::FeatureConfig;
use stylometer_core::{Corpus, SCHEMA_VERSION};

use crate::{CliError, ModelArgs};

/// The run configuration echoed into every artifact.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub train: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotator_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotator_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_df: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body_only: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_global: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fractions: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn new(command: &str) -> RunConfig {
        RunConfig { command: command.to_string(), ..Default::default() }
    }

    pub fn corpus(mut self, path: &Path) -> Self {
        self.corpus = Some(path.display().to_string());
        self
    }

    pub fn train_test(mut self, train: &Path, test: &Path) -> Self {
        self.train = Some(train.display().to_string());
        self.test = Some(test.display().to_string());
        self
    }

    pub fn annotators(mut self, a: &Path, b: &Path) -> Self {
        self.annotator_a = Some(a.display().to_string());
        self.annotator_b = Some(b.display().to_string());
        self
    }

    pub fn lexicon(mut self, path: Option<&Path>) -> Self {
        self.lexicon = path.map(|p| p.display().to_string());
        self
    }

    pub fn features(mut self, config: &FeatureConfig) -> Self {
        self.features = Some(config.sets.iter().map(|s| s.to_string()).collect());
        self.min_df = Some(config.min_df);
        self.body_only = Some(config.body_only);
        self
    }

    pub fn model(mut self, model: &ModelArgs) -> Self {
        self.c = Some(model.c);
        self.seed = Some(model.seed);
        self.k = Some(model.k);
        self.jobs = Some(model.jobs);
        self.fit_global = Some(model.fit_global);
        self.tol = Some(model.tol);
        self.max_iter = Some(model.max_iter);
        self
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn fractions(mut self, fractions: &[f64]) -> Self {
        self.fractions = Some(fractions.to_vec());
        self
    }
}

/// Wraps an artifact with schema and configuration for JSON emission.
#[derive(Serialize)]
struct JsonArtifact<'a, T: Serialize> {
    schema: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    payload: Payload<'a, T>,
}

#[derive(Serialize)]
struct Payload<'a, T: Serialize> {
    result: &'a T,
}

/// Writes artifacts into an output directory, or the primary artifact to
/// stdout when no directory was given.
pub struct Emitter {
    out: Option<PathBuf>,
}

impl Emitter {
    pub fn new(out: Option<PathBuf>) -> Emitter {
        Emitter { out }
    }

    fn write_file(&self, dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Runtime(anyhow::anyhow!("creating {}: {e}", dir.display())))?;
        let path = dir.join(name);
        fs::write(&path, bytes)
            .map_err(|e| CliError::Runtime(anyhow::anyhow!("writing {}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }

    pub fn emit_bytes(&self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        match &self.out {
            Some(dir) => self.write_file(dir, name, bytes),
            None => {
                print!("{}", String::from_utf8_lossy(bytes));
                Ok(())
            }
        }
    }

    /// JSON artifact with schema + config; stdout fallback.
    pub fn emit_json<T: Serialize>(
        &self,
        name: &str,
        config: &RunConfig,
        payload: &T,
    ) -> Result<(), CliError> {
        let artifact = JsonArtifact {
            schema: SCHEMA_VERSION,
            config,
            payload: Payload { result: payload },
        };
        let mut text = serde_json::to_string_pretty(&artifact)
            .map_err(|e| CliError::Runtime(anyhow::anyhow!("serializing {name}: {e}")))?;
        text.push('\n');
        self.emit_bytes(name, text.as_bytes())
    }

    /// JSON artifact written only when an output directory exists.
    pub fn emit_json_if_out<T: Serialize>(
        &self,
        name: &str,
        config: &RunConfig,
        payload: &T,
    ) -> Result<(), CliError> {
        if self.out.is_some() {
            self.emit_json(name, config, payload)
        } else {
            Ok(())
        }
    }

    /// CSV with schema and config comment lines; stdout fallback.
    pub fn emit_csv(&self, name: &str, config: &RunConfig, table: &Table) -> Result<(), CliError> {
        let text = render_csv(config, table)
            .map_err(|e| CliError::Runtime(anyhow::anyhow!("serializing {name}: {e}")))?;
        self.emit_bytes(name, text.as_bytes())
    }

    pub fn emit_csv_if_out(
        &self,
        name: &str,
        config: &RunConfig,
        table: &Table,
    ) -> Result<(), CliError> {
        if self.out.is_some() {
            self.emit_csv(name, config, table)
        } else {
            Ok(())
        }
    }
}

/// A simple header + rows table.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn csv_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn render_csv(config: &RunConfig, table: &Table) -> serde_json::Result<String> {
    let mut out = String::new();
    out.push_str(&format!("# {SCHEMA_VERSION}\n"));
    out.push_str(&format!("# config: {}\n", serde_json::to_string(config)?));
    out.push_str(&table.header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    Ok(out)
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

/// Per-fold and averaged metrics table (one row per fold plus the mean).
pub fn cv_table(report: &EvalReport) -> Table {
    let header = vec![
        "split".into(),
        "dimension".into(),
        "accuracy".into(),
        "precision_legitimate".into(),
        "recall_legitimate".into(),
        "f1_legitimate".into(),
        "precision_fake".into(),
        "recall_fake".into(),
        "f1_fake".into(),
    ];
    let mut rows = Vec::new();
    for (i, fold) in report.folds.iter().enumerate() {
        rows.push(vec![
            format!("fold{}", i + 1),
            report.dimensions.get(i).map(|d| d.to_string()).unwrap_or_default(),
            fmt(fold.accuracy),
            fmt(fold.legitimate.precision),
            fmt(fold.legitimate.recall),
            fmt(fold.legitimate.f1),
            fmt(fold.fake.precision),
            fmt(fold.fake.recall),
            fmt(fold.fake.f1),
        ]);
    }
    let avg = &report.average;
    rows.push(vec![
        "average".into(),
        String::new(),
        fmt(avg.accuracy),
        fmt(avg.legitimate.precision),
        fmt(avg.legitimate.recall),
        fmt(avg.legitimate.f1),
        fmt(avg.fake.precision),
        fmt(avg.fake.recall),
        fmt(avg.fake.f1),
    ]);
    Table { header, rows }
}

pub fn curve_table(points: &[CurvePoint]) -> Table {
    Table {
        header: vec!["fraction".into(), "accuracy".into()],
        rows: points
            .iter()
            .map(|p| vec![format!("{}", p.fraction), fmt(p.accuracy)])
            .collect(),
    }
}

pub fn transfer_table(
    train: &Corpus,
    test: &Corpus,
    features: &FeatureConfig,
    report: &EvalReport,
) -> Table {
    let feat = features
        .sets
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("+");
    Table {
        header: vec![
            "train".into(),
            "test".into(),
            "features".into(),
            "accuracy".into(),
            "f1_legitimate".into(),
            "f1_fake".into(),
        ],
        rows: vec![vec![
            train.name.clone(),
            test.name.clone(),
            feat,
            fmt(report.average.accuracy),
            fmt(report.average.legitimate.f1),
            fmt(report.average.fake.f1),
        ]],
    }
}

pub fn lodo_table(reports: &[DomainReport]) -> Table {
    Table {
        header: vec![
            "domain".into(),
            "accuracy".into(),
            "f1_legitimate".into(),
            "f1_fake".into(),
        ],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    r.domain.to_string(),
                    fmt(r.report.average.accuracy),
                    fmt(r.report.average.legitimate.f1),
                    fmt(r.report.average.fake.f1),
                ]
            })
            .collect(),
    }
}

pub fn diff_table(diffs: &[CategoryDifference]) -> Table {
    Table {
        header: vec![
            "category".into(),
            "mean_legit".into(),
            "mean_fake".into(),
            "diff".into(),
            "t".into(),
            "p".into(),
            "significant".into(),
        ],
        rows: diffs
            .iter()
            .map(|d| {
                vec![
                    d.category.clone(),
                    fmt(d.mean_legitimate),
                    fmt(d.mean_fake),
                    fmt(d.difference),
                    format!("{:.6}", d.t),
                    fmt(d.p),
                    d.significant.to_string(),
                ]
            })
            .collect(),
    }
}
