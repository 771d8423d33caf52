//! Evaluation: stratified cross-validation, learning curves, cross-domain
//! transfer, leave-one-domain-out grids, and inter-annotator agreement.
//!
//! Every fold fits its own feature spaces on the training split only, so no
//! test document influences vocabularies, idf weights, or the scaler. The
//! `global` fit protocol relaxes that deliberately for comparison runs.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Document, Domain, Label};
use crate::error::{Error, Result};
use crate::features::pipeline::{fit_pipeline, FeatureConfig, FittedPipeline};
use crate::lexicon::Lexicon;
use crate::model::{train_svm, SvmParams};
use crate::SCHEMA_VERSION;

/// How feature statistics relate to the folds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitProtocol {
    /// Vocabularies, idf, and scaler fitted per training fold (default).
    PerFold,
    /// Everything fitted once on the whole corpus (laxer comparison mode).
    Global,
}

/// Cross-validation options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    /// Maximum folds trained concurrently.
    pub jobs: usize,
    pub protocol: FitProtocol,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions { k: 5, seed: 0, jobs: 1, protocol: FitProtocol::PerFold }
    }
}

/// Stratified k-fold assignment: per-class counts differ by at most one
/// across folds, folds partition all indices, deterministic given the seed.
pub fn stratified_kfold(labels: &[Label], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for class in [Label::Legitimate, Label::Fake] {
        let mut members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == class)
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() {
            continue;
        }
        if members.len() < k {
            return Err(Error::ClassTooSmall {
                label: class.to_string(),
                count: members.len(),
                k,
            });
        }
        members.shuffle(&mut rng);
        for (pos, idx) in members.into_iter().enumerate() {
            folds[pos % k].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Per-class precision/recall/F1. Undefined ratios (zero denominator) are
/// reported as 0.0 with the matching `*_defined` flag cleared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub precision_defined: bool,
    pub recall_defined: bool,
}

/// Confusion counts with fake as the positive class.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Confusion {
    pub true_fake: usize,
    pub false_fake: usize,
    pub false_legitimate: usize,
    pub true_legitimate: usize,
}

impl Confusion {
    pub fn total(&self) -> usize {
        self.true_fake + self.false_fake + self.false_legitimate + self.true_legitimate
    }
}

/// Metrics for one evaluation run (one fold, or one train/test split).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub accuracy: f64,
    pub legitimate: ClassMetrics,
    pub fake: ClassMetrics,
    pub confusion: Confusion,
}

fn ratio(num: usize, den: usize) -> (f64, bool) {
    if den == 0 {
        (0.0, false)
    } else {
        (num as f64 / den as f64, true)
    }
}

fn class_metrics(tp: usize, fp: usize, fn_: usize) -> ClassMetrics {
    let (precision, precision_defined) = ratio(tp, tp + fp);
    let (recall, recall_defined) = ratio(tp, tp + fn_);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    ClassMetrics { precision, recall, f1, precision_defined, recall_defined }
}

/// Accuracy and per-class precision/recall/F1 with each class treated as
/// positive in turn.
pub fn compute_metrics(pred: &[Label], gold: &[Label]) -> Result<FoldMetrics> {
    if pred.len() != gold.len() {
        return Err(Error::DimensionMismatch { expected: gold.len(), got: pred.len() });
    }
    if pred.is_empty() {
        return Err(Error::degenerate("compute_metrics on empty labels"));
    }
    let mut confusion = Confusion::default();
    for (&p, &g) in pred.iter().zip(gold.iter()) {
        match (p, g) {
            (Label::Fake, Label::Fake) => confusion.true_fake += 1,
            (Label::Fake, Label::Legitimate) => confusion.false_fake += 1,
            (Label::Legitimate, Label::Fake) => confusion.false_legitimate += 1,
            (Label::Legitimate, Label::Legitimate) => confusion.true_legitimate += 1,
        }
    }
    let accuracy =
        (confusion.true_fake + confusion.true_legitimate) as f64 / confusion.total() as f64;
    let fake = class_metrics(confusion.true_fake, confusion.false_fake, confusion.false_legitimate);
    let legitimate = class_metrics(
        confusion.true_legitimate,
        confusion.false_legitimate,
        confusion.false_fake,
    );
    Ok(FoldMetrics { accuracy, legitimate, fake, confusion })
}

/// Arithmetic mean of fold metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedClass {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedMetrics {
    pub accuracy: f64,
    pub legitimate: AveragedClass,
    pub fake: AveragedClass,
}

fn average_metrics(folds: &[FoldMetrics]) -> AveragedMetrics {
    let n = folds.len().max(1) as f64;
    let mean = |f: &dyn Fn(&FoldMetrics) -> f64| folds.iter().map(|m| f(m)).sum::<f64>() / n;
    AveragedMetrics {
        accuracy: mean(&|m| m.accuracy),
        legitimate: AveragedClass {
            precision: mean(&|m| m.legitimate.precision),
            recall: mean(&|m| m.legitimate.recall),
            f1: mean(&|m| m.legitimate.f1),
        },
        fake: AveragedClass {
            precision: mean(&|m| m.fake.precision),
            recall: mean(&|m| m.fake.recall),
            f1: mean(&|m| m.fake.f1),
        },
    }
}

/// Configuration echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfigEcho {
    pub corpus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test_corpus: Option<String>,
    pub features: Vec<String>,
    pub c: f64,
    pub seed: u64,
    pub k: usize,
    pub min_df: f64,
    pub body_only: bool,
    pub protocol: FitProtocol,
}

/// A full evaluation report: per-fold metrics plus their arithmetic mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema: String,
    pub config: EvalConfigEcho,
    /// Fitted combined-space dimension per fold.
    pub dimensions: Vec<usize>,
    pub folds: Vec<FoldMetrics>,
    pub average: AveragedMetrics,
}

/// One prediction on a held-out document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub doc_id: String,
    pub gold: Label,
    pub predicted: Label,
    pub score: f64,
}

/// Everything produced by a single fold, exposed so tests can inspect the
/// fitted spaces for train/test leakage.
#[derive(Debug)]
pub struct FoldOutcome {
    pub metrics: FoldMetrics,
    pub pipeline: FittedPipeline,
    pub predictions: Vec<Prediction>,
}

/// Fit on the training indices, predict the test indices.
pub fn run_fold(
    corpus: &Corpus,
    train_idx: &[usize],
    test_idx: &[usize],
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
) -> Result<FoldOutcome> {
    let train_docs: Vec<&Document> = train_idx.iter().map(|&i| &corpus.documents[i]).collect();
    let test_docs: Vec<&Document> = test_idx.iter().map(|&i| &corpus.documents[i]).collect();
    let (pipeline, train_matrix) = fit_pipeline(&train_docs, features, lexicon)?;
    let train_labels: Vec<Label> = train_docs.iter().map(|d| d.label).collect();
    let scaler = pipeline.combined.scaler.clone();
    let model = train_svm(&train_matrix, &train_labels, svm, scaler.as_ref())?;

    let test_matrix = pipeline.transform(&test_docs, lexicon)?;
    let mut predictions = Vec::with_capacity(test_docs.len());
    for (doc, row) in test_docs.iter().zip(&test_matrix.rows) {
        let (predicted, score) = model.predict(row)?;
        predictions.push(Prediction { doc_id: doc.id.clone(), gold: doc.label, predicted, score });
    }
    let pred: Vec<Label> = predictions.iter().map(|p| p.predicted).collect();
    let gold: Vec<Label> = predictions.iter().map(|p| p.gold).collect();
    let metrics = compute_metrics(&pred, &gold)?;
    Ok(FoldOutcome { metrics, pipeline, predictions })
}

fn echo(
    corpus: &Corpus,
    test_corpus: Option<&Corpus>,
    features: &FeatureConfig,
    svm: &SvmParams,
    k: usize,
    seed: u64,
    protocol: FitProtocol,
) -> EvalConfigEcho {
    EvalConfigEcho {
        corpus: corpus.name.clone(),
        test_corpus: test_corpus.map(|c| c.name.clone()),
        features: features.sets.iter().map(|s| s.to_string()).collect(),
        c: svm.c,
        seed,
        k,
        min_df: features.min_df,
        body_only: features.body_only,
        protocol,
    }
}

/// Stratified k-fold cross-validation.
pub fn cross_validate(
    corpus: &Corpus,
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
    options: &CvOptions,
) -> Result<EvalReport> {
    let folds = stratified_kfold(&corpus.labels(), options.k, options.seed)?;
    let all: Vec<usize> = (0..corpus.len()).collect();
    let splits: Vec<(Vec<usize>, Vec<usize>)> = folds
        .iter()
        .map(|test_idx| {
            let train_idx: Vec<usize> =
                all.iter().copied().filter(|i| !test_idx.contains(i)).collect();
            (train_idx, test_idx.clone())
        })
        .collect();

    let fold_results: Vec<(usize, FoldMetrics)> = match options.protocol {
        FitProtocol::PerFold => run_splits(corpus, &splits, features, lexicon, svm, options.jobs)?,
        FitProtocol::Global => {
            let docs: Vec<&Document> = corpus.documents.iter().collect();
            let (pipeline, matrix) = fit_pipeline(&docs, features, lexicon)?;
            let scaler = pipeline.combined.scaler.clone();
            let mut results = Vec::new();
            for (train_idx, test_idx) in &splits {
                let train = matrix.select(train_idx);
                let labels: Vec<Label> =
                    train_idx.iter().map(|&i| corpus.documents[i].label).collect();
                let model = train_svm(&train, &labels, svm, scaler.as_ref())?;
                let mut pred = Vec::new();
                let mut gold = Vec::new();
                for &i in test_idx {
                    let (p, _) = model.predict(&matrix.rows[i])?;
                    pred.push(p);
                    gold.push(corpus.documents[i].label);
                }
                results.push((pipeline.dimension(), compute_metrics(&pred, &gold)?));
            }
            results
        }
    };

    let dimensions: Vec<usize> = fold_results.iter().map(|(d, _)| *d).collect();
    let fold_metrics: Vec<FoldMetrics> = fold_results.into_iter().map(|(_, m)| m).collect();
    let average = average_metrics(&fold_metrics);
    Ok(EvalReport {
        schema: SCHEMA_VERSION.to_string(),
        config: echo(corpus, None, features, svm, options.k, options.seed, options.protocol),
        dimensions,
        folds: fold_metrics,
        average,
    })
}

/// Run fold jobs, optionally on several threads; results come back in fold
/// order regardless of completion order.
fn run_splits(
    corpus: &Corpus,
    splits: &[(Vec<usize>, Vec<usize>)],
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
    jobs: usize,
) -> Result<Vec<(usize, FoldMetrics)>> {
    let workers = jobs.max(1).min(splits.len());
    if workers <= 1 {
        let mut out = Vec::with_capacity(splits.len());
        for (train_idx, test_idx) in splits {
            let outcome = run_fold(corpus, train_idx, test_idx, features, lexicon, svm)?;
            out.push((outcome.pipeline.dimension(), outcome.metrics));
        }
        return Ok(out);
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<(usize, FoldMetrics)>>>> =
        Mutex::new((0..splits.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= splits.len() {
                    break;
                }
                let (train_idx, test_idx) = &splits[i];
                let result = run_fold(corpus, train_idx, test_idx, features, lexicon, svm)
                    .map(|o| (o.pipeline.dimension(), o.metrics));
                results.lock().unwrap()[i] = Some(result);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every fold index was claimed"))
        .collect()
}

/// One learning-curve point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub fraction: f64,
    pub accuracy: f64,
}

/// Stratified subsample of a corpus: a fresh seeded draw per fraction,
/// preserving document order. Fraction 1.0 returns the corpus unchanged.
pub fn stratified_subsample(corpus: &Corpus, fraction: f64, seed: u64) -> Result<Corpus> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::invalid(format!("fraction must be in (0, 1]: {fraction}")));
    }
    if (fraction - 1.0).abs() < f64::EPSILON {
        return Ok(corpus.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep: Vec<usize> = Vec::new();
    for class in [Label::Legitimate, Label::Fake] {
        let mut members: Vec<usize> = corpus
            .documents
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label == class)
            .map(|(i, _)| i)
            .collect();
        let take = ((members.len() as f64) * fraction).round() as usize;
        members.shuffle(&mut rng);
        keep.extend(members.into_iter().take(take));
    }
    keep.sort_unstable();
    Ok(Corpus {
        name: corpus.name.clone(),
        documents: keep.iter().map(|&i| corpus.documents[i].clone()).collect(),
    })
}

/// Cross-validated accuracy at increasing training fractions, sorted by
/// fraction.
pub fn learning_curve(
    corpus: &Corpus,
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
    options: &CvOptions,
    fractions: &[f64],
) -> Result<Vec<CurvePoint>> {
    let mut points = Vec::with_capacity(fractions.len());
    for &fraction in fractions {
        let sample = stratified_subsample(corpus, fraction, options.seed)?;
        let report = cross_validate(&sample, features, lexicon, svm, options)?;
        points.push(CurvePoint { fraction, accuracy: report.average.accuracy });
    }
    points.sort_by(|a, b| a.fraction.total_cmp(&b.fraction));
    Ok(points)
}

/// Train on one corpus, evaluate on another. Feature spaces are fitted on
/// the training corpus only.
pub fn cross_domain_eval(
    train: &Corpus,
    test: &Corpus,
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
) -> Result<EvalReport> {
    if train.is_empty() || test.is_empty() {
        return Err(Error::degenerate("cross_domain_eval needs non-empty corpora"));
    }
    let train_docs: Vec<&Document> = train.documents.iter().collect();
    let (pipeline, train_matrix) = fit_pipeline(&train_docs, features, lexicon)?;
    let train_labels: Vec<Label> = train.labels();
    let scaler = pipeline.combined.scaler.clone();
    let model = train_svm(&train_matrix, &train_labels, svm, scaler.as_ref())?;

    let test_docs: Vec<&Document> = test.documents.iter().collect();
    let test_matrix = pipeline.transform(&test_docs, lexicon)?;
    let mut pred = Vec::new();
    for row in &test_matrix.rows {
        pred.push(model.predict(row)?.0);
    }
    let metrics = compute_metrics(&pred, &test.labels())?;
    Ok(EvalReport {
        schema: SCHEMA_VERSION.to_string(),
        config: echo(train, Some(test), features, svm, 1, svm.seed, FitProtocol::PerFold),
        dimensions: vec![pipeline.dimension()],
        average: average_metrics(std::slice::from_ref(&metrics)),
        folds: vec![metrics],
    })
}

/// Report for one held-out domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainReport {
    pub domain: Domain,
    pub report: EvalReport,
}

/// Train on all domains but one, test on the held-out domain, for every
/// domain present in the corpus.
pub fn leave_one_domain_out(
    corpus: &Corpus,
    features: &FeatureConfig,
    lexicon: Option<&Lexicon>,
    svm: &SvmParams,
) -> Result<Vec<DomainReport>> {
    let domains = corpus.domains();
    if domains.len() < 2 {
        return Err(Error::invalid("leave_one_domain_out needs at least 2 domains"));
    }
    let mut reports = Vec::new();
    for domain in domains {
        let test_idx: Vec<usize> = corpus
            .documents
            .iter()
            .enumerate()
            .filter(|(_, d)| d.domain == domain)
            .map(|(i, _)| i)
            .collect();
        let train_idx: Vec<usize> = (0..corpus.len()).filter(|i| !test_idx.contains(i)).collect();
        let test_labels: Vec<Label> =
            test_idx.iter().map(|&i| corpus.documents[i].label).collect();
        if !test_labels.contains(&Label::Fake) || !test_labels.contains(&Label::Legitimate) {
            return Err(Error::invalid(format!(
                "domain {domain} has a single class; leave-one-domain-out is undefined"
            )));
        }
        let outcome = run_fold(corpus, &train_idx, &test_idx, features, lexicon, svm)?;
        reports.push(DomainReport {
            domain,
            report: EvalReport {
                schema: SCHEMA_VERSION.to_string(),
                config: echo(corpus, None, features, svm, 1, svm.seed, FitProtocol::PerFold),
                dimensions: vec![outcome.pipeline.dimension()],
                average: average_metrics(std::slice::from_ref(&outcome.metrics)),
                folds: vec![outcome.metrics],
            },
        });
    }
    Ok(reports)
}

/// Inter-annotator agreement statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub schema: String,
    pub items: usize,
    /// Fraction of items both annotators labeled identically.
    pub observed_agreement: f64,
    /// Cohen's kappa; `None` when chance agreement is 1 (both annotators
    /// constant and identical), where kappa is undefined.
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotator_a_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotator_b_accuracy: Option<f64>,
}

/// Observed agreement and Cohen's kappa between two annotators, plus
/// per-annotator accuracy when gold labels are supplied.
pub fn agreement(a: &[Label], b: &[Label], gold: Option<&[Label]>) -> Result<AgreementReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    if a.is_empty() {
        return Err(Error::degenerate("agreement on empty annotations"));
    }
    if let Some(g) = gold {
        if g.len() != a.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: g.len() });
        }
    }
    let n = a.len() as f64;
    let observed = a.iter().zip(b.iter()).filter(|(x, y)| x == y).count() as f64 / n;
    let marginal = |labels: &[Label], class: Label| {
        labels.iter().filter(|l| **l == class).count() as f64 / n
    };
    let expected = marginal(a, Label::Fake) * marginal(b, Label::Fake)
        + marginal(a, Label::Legitimate) * marginal(b, Label::Legitimate);
    let kappa = if (1.0 - expected).abs() < 1e-12 {
        None
    } else {
        Some((observed - expected) / (1.0 - expected))
    };
    let accuracy_vs = |labels: &[Label], gold: &[Label]| {
        labels.iter().zip(gold.iter()).filter(|(x, y)| x == y).count() as f64 / n
    };
    Ok(AgreementReport {
        schema: SCHEMA_VERSION.to_string(),
        items: a.len(),
        observed_agreement: observed,
        kappa,
        annotator_a_accuracy: gold.map(|g| accuracy_vs(a, g)),
        annotator_b_accuracy: gold.map(|g| accuracy_vs(b, g)),
    })
}

/// Read an annotation file: CSV rows of `doc_id,label`, optional header.
pub fn read_annotation_csv(path: &Path) -> Result<Vec<(String, Label)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::invalid(format!(
                "{}:{}: annotation rows need doc_id,label",
                path.display(),
                idx + 1
            )));
        }
        let id = record[0].trim().to_string();
        let label_str = record[1].trim();
        match label_str.parse::<Label>() {
            Ok(label) => out.push((id, label)),
            Err(_) if idx == 0 && label_str.eq_ignore_ascii_case("label") => continue,
            Err(e) => {
                return Err(Error::invalid(format!(
                    "{}:{}: {e}",
                    path.display(),
                    idx + 1
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::degenerate(format!("{}: no annotations", path.display())));
    }
    Ok(out)
}

/// Align two annotation files on their shared document ids (order follows
/// the first annotator). Mismatched id sets are an error.
pub fn align_annotations(
    a: &[(String, Label)],
    b: &[(String, Label)],
) -> Result<(Vec<Label>, Vec<Label>)> {
    let b_map: HashMap<&str, Label> = b.iter().map(|(id, l)| (id.as_str(), *l)).collect();
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "annotators cover different item counts: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let mut left = Vec::with_capacity(a.len());
    let mut right = Vec::with_capacity(a.len());
    for (id, label) in a {
        match b_map.get(id.as_str()) {
            Some(other) => {
                left.push(*label);
                right.push(*other);
            }
            None => {
                return Err(Error::invalid(format!(
                    "annotator B has no label for document {id:?}"
                )))
            }
        }
    }
    Ok((left, right))
}

/// Gold labels for annotated ids, in the same order as the annotations.
pub fn gold_for(annotations: &[(String, Label)], corpus: &Corpus) -> Result<Vec<Label>> {
    let by_id: BTreeMap<&str, Label> =
        corpus.documents.iter().map(|d| (d.id.as_str(), d.label)).collect();
    annotations
        .iter()
        .map(|(id, _)| {
            by_id
                .get(id.as_str())
                .copied()
                .ok_or_else(|| Error::invalid(format!("corpus has no document {id:?}")))
        })
        .collect()
}
