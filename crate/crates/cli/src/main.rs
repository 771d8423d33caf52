//! `stylometer` — reproducible fake-news detection experiments.
//!
//! One experiment per subcommand; every report embeds the exact run
//! configuration that produced it, so replaying a config reproduces the
//! output byte for byte. Exit codes: 0 success, 1 validation error,
//! 2 runtime failure.

mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use stylometer_core::eval::{self, CvOptions, FitProtocol};
use stylometer_core::features::pipeline::{fit_pipeline, FeatureConfig, FeatureSet};
use stylometer_core::features::write_sparse_text;
use stylometer_core::{
    agreement, category_differences, corpus, cross_domain_eval, cross_validate,
    learning_curve, leave_one_domain_out, lexicon, Corpus, CorpusFormat, Domain, SvmParams,
};

use output::{Emitter, RunConfig};

#[derive(Parser)]
#[command(
    name = "stylometer",
    version,
    about = "Linguistic-feature experiments on labeled news corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-label word and sentence statistics for a corpus
    Stats(StatsCmd),
    /// Fit feature spaces and write the feature matrix and space files
    Featurize(FeaturizeCmd),
    /// Stratified k-fold cross-validation
    Cv(CvCmd),
    /// Learning curve over stratified training fractions
    Curve(CurveCmd),
    /// Train on one corpus, evaluate on another
    Transfer(TransferCmd),
    /// Leave-one-domain-out evaluation grid
    Lodo(LodoCmd),
    /// Observed agreement and Cohen's kappa between two annotators
    Kappa(KappaCmd),
    /// Legitimate-minus-fake lexicon category differences
    Diff(DiffCmd),
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus path: a .jsonl file or a paired-dirs root
    #[arg(long)]
    corpus: PathBuf,
    /// Corpus format
    #[arg(long, default_value = "jsonl", value_parser = ["jsonl", "paired-dirs"])]
    format: String,
    /// Domain override for paired-dirs corpora
    #[arg(long)]
    domain: Option<String>,
}

#[derive(Args)]
struct FeatureArgs {
    /// Comma-separated feature sets (ngrams, punctuation, liwc-summary,
    /// liwc-linguistic, liwc-psych, liwc-complete, readability, syntax, all)
    #[arg(long, value_delimiter = ',')]
    features: Vec<String>,
    /// LIWC-format .dic dictionary (falls back to $STYLOMETER_LEXICON)
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Minimum document frequency (fraction) for vocabulary pruning
    #[arg(long, default_value_t = 0.02)]
    min_df: f64,
    /// Exclude headlines from feature extraction
    #[arg(long)]
    body_only: bool,
}

#[derive(Args)]
struct ModelArgs {
    /// SVM regularization strength
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Seed for fold assignment, subsampling, and the SVM solver
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of cross-validation folds
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Maximum folds trained concurrently
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Fit vocabularies, idf, and scaler on the whole corpus instead of per
    /// training fold (laxer comparison protocol)
    #[arg(long)]
    fit_global: bool,
    /// Solver convergence tolerance
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Maximum solver sweeps
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
}

#[derive(Args)]
struct OutArgs {
    /// Output directory; without it the primary artifact goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct FeaturizeCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    features: FeatureArgs,
    /// Output directory for matrix.txt and space.json
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CvCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    features: FeatureArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CurveCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    features: FeatureArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated training fractions in (0, 1]
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.4, 0.6, 0.8, 1.0])]
    fractions: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct TransferCmd {
    /// Training corpus (.jsonl)
    #[arg(long)]
    train: PathBuf,
    /// Test corpus (.jsonl)
    #[arg(long)]
    test: PathBuf,
    #[command(flatten)]
    features: FeatureArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct LodoCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    features: FeatureArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct KappaCmd {
    /// First annotator file (CSV doc_id,label)
    #[arg(long)]
    a: PathBuf,
    /// Second annotator file (CSV doc_id,label)
    #[arg(long)]
    b: PathBuf,
    /// Gold labels as an annotation CSV
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Gold labels from a corpus instead of a CSV
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Corpus format when --corpus is used
    #[arg(long, default_value = "jsonl", value_parser = ["jsonl", "paired-dirs"])]
    format: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct DiffCmd {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// LIWC-format .dic dictionary (falls back to $STYLOMETER_LEXICON)
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Significance threshold for the one-tailed test
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Exclude headlines
    #[arg(long)]
    body_only: bool,
    #[command(flatten)]
    out: OutArgs,
}

enum CliError {
    Validation(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = match Cli::try_parse() {
        Ok(cli) => match run(cli) {
            Ok(()) => 0,
            Err(CliError::Validation(msg)) => {
                eprintln!("error: {msg}");
                1
            }
            Err(CliError::Runtime(e)) => {
                eprintln!("error: {e:#}");
                2
            }
        },
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats(cmd) => cmd_stats(cmd),
        Command::Featurize(cmd) => cmd_featurize(cmd),
        Command::Cv(cmd) => cmd_cv(cmd),
        Command::Curve(cmd) => cmd_curve(cmd),
        Command::Transfer(cmd) => cmd_transfer(cmd),
        Command::Lodo(cmd) => cmd_lodo(cmd),
        Command::Kappa(cmd) => cmd_kappa(cmd),
        Command::Diff(cmd) => cmd_diff(cmd),
    }
}

fn parse_format(args: &CorpusArgs) -> Result<CorpusFormat, CliError> {
    match args.format.as_str() {
        "jsonl" => Ok(CorpusFormat::Jsonl),
        "paired-dirs" => {
            let domain_override = match &args.domain {
                Some(d) => Some(
                    Domain::from_str(d)
                        .map_err(|e| validation(format!("--domain: {e}")))?,
                ),
                None => None,
            };
            Ok(CorpusFormat::PairedDirs { domain_override })
        }
        other => Err(validation(format!("unknown corpus format {other:?}"))),
    }
}

fn load_corpus_checked(args: &CorpusArgs) -> Result<Corpus, CliError> {
    let format = parse_format(args)?;
    if !args.corpus.exists() {
        return Err(validation(format!(
            "corpus path {} does not exist",
            args.corpus.display()
        )));
    }
    corpus::load_corpus(&args.corpus, format)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e).context("loading corpus failed")))
}

fn load_corpus_at(path: &Path, format: CorpusFormat) -> Result<Corpus, CliError> {
    if !path.exists() {
        return Err(validation(format!("corpus path {} does not exist", path.display())));
    }
    corpus::load_corpus(path, format)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e).context("loading corpus failed")))
}

fn parse_features(args: &FeatureArgs) -> Result<FeatureConfig, CliError> {
    if args.features.is_empty() {
        return Err(validation(
            "--features is required (comma-separated; see --help for the set names)",
        ));
    }
    let mut sets = Vec::new();
    for name in &args.features {
        let set = FeatureSet::from_str(name.trim())
            .map_err(|e| validation(format!("--features: {e}")))?;
        sets.push(set);
    }
    if !(0.0..1.0).contains(&args.min_df) {
        return Err(validation(format!("--min-df must be in [0, 1): {}", args.min_df)));
    }
    let mut config = FeatureConfig::new(sets);
    config.min_df = args.min_df;
    config.body_only = args.body_only;
    Ok(config)
}

/// Resolve the lexicon path from the flag or `STYLOMETER_LEXICON`, loading
/// it only when the feature configuration needs one.
fn load_lexicon(
    flag: &Option<PathBuf>,
    config: &FeatureConfig,
) -> Result<Option<lexicon::Lexicon>, CliError> {
    let needed = config.sets.iter().any(|s| {
        matches!(
            s,
            FeatureSet::LiwcSummary
                | FeatureSet::LiwcLinguistic
                | FeatureSet::LiwcPsych
                | FeatureSet::LiwcComplete
                | FeatureSet::All
        )
    });
    if !needed {
        return Ok(None);
    }
    load_lexicon_required(flag).map(Some)
}

fn load_lexicon_required(flag: &Option<PathBuf>) -> Result<lexicon::Lexicon, CliError> {
    let path = match flag {
        Some(p) => p.clone(),
        None => match std::env::var_os("STYLOMETER_LEXICON") {
            Some(p) => PathBuf::from(p),
            None => {
                return Err(validation(
                    "a lexicon is required: pass --lexicon or set STYLOMETER_LEXICON",
                ))
            }
        },
    };
    if !path.is_file() {
        return Err(validation(format!("lexicon {} does not exist", path.display())));
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!("reading {}: {e}", path.display())))?;
    lexicon::parse_dictionary(&text)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e).context("parsing lexicon failed")))
}

fn svm_params(model: &ModelArgs) -> Result<SvmParams, CliError> {
    if model.c <= 0.0 {
        return Err(validation(format!("--c must be positive: {}", model.c)));
    }
    if model.k < 2 {
        return Err(validation(format!("--k must be at least 2: {}", model.k)));
    }
    Ok(SvmParams { c: model.c, tol: model.tol, max_iter: model.max_iter, seed: model.seed })
}

fn cv_options(model: &ModelArgs) -> CvOptions {
    CvOptions {
        k: model.k,
        seed: model.seed,
        jobs: model.jobs,
        protocol: if model.fit_global { FitProtocol::Global } else { FitProtocol::PerFold },
    }
}

fn cmd_stats(cmd: StatsCmd) -> Result<(), CliError> {
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let stats = corpus
        .stats()
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("stats").corpus(&cmd.corpus.corpus);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_json("stats.json", &config, &stats)?;
    Ok(())
}

fn cmd_featurize(cmd: FeaturizeCmd) -> Result<(), CliError> {
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let features = parse_features(&cmd.features)?;
    let lexicon = load_lexicon(&cmd.features.lexicon, &features)?;
    let docs: Vec<&corpus::Document> = corpus.documents.iter().collect();
    let (pipeline, matrix) = fit_pipeline(&docs, &features, lexicon.as_ref())
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("featurize")
        .corpus(&cmd.corpus.corpus)
        .features(&features)
        .lexicon(cmd.features.lexicon.as_deref());
    let emitter = Emitter::new(Some(cmd.out));
    let mut matrix_text = Vec::new();
    write_sparse_text(&matrix, &mut matrix_text)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    emitter.emit_bytes("matrix.txt", &matrix_text)?;
    emitter.emit_json("space.json", &config, &pipeline.combined)?;
    eprintln!(
        "featurized {} documents into {} columns",
        matrix.n_rows(),
        matrix.dim
    );
    Ok(())
}

fn cmd_cv(cmd: CvCmd) -> Result<(), CliError> {
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let features = parse_features(&cmd.features)?;
    let lexicon = load_lexicon(&cmd.features.lexicon, &features)?;
    let svm = svm_params(&cmd.model)?;
    let options = cv_options(&cmd.model);
    let report = cross_validate(&corpus, &features, lexicon.as_ref(), &svm, &options)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("cv")
        .corpus(&cmd.corpus.corpus)
        .features(&features)
        .lexicon(cmd.features.lexicon.as_deref())
        .model(&cmd.model);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_json("report.json", &config, &report)?;
    emitter.emit_csv_if_out("table.csv", &config, &output::cv_table(&report))?;
    Ok(())
}

fn cmd_curve(cmd: CurveCmd) -> Result<(), CliError> {
    for f in &cmd.fractions {
        if !(*f > 0.0 && *f <= 1.0) {
            return Err(validation(format!("--fractions entries must be in (0, 1]: {f}")));
        }
    }
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let features = parse_features(&cmd.features)?;
    let lexicon = load_lexicon(&cmd.features.lexicon, &features)?;
    let svm = svm_params(&cmd.model)?;
    let options = cv_options(&cmd.model);
    let points = learning_curve(
        &corpus,
        &features,
        lexicon.as_ref(),
        &svm,
        &options,
        &cmd.fractions,
    )
    .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("curve")
        .corpus(&cmd.corpus.corpus)
        .features(&features)
        .lexicon(cmd.features.lexicon.as_deref())
        .model(&cmd.model)
        .fractions(&cmd.fractions);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_csv("curve.csv", &config, &output::curve_table(&points))?;
    Ok(())
}

fn cmd_transfer(cmd: TransferCmd) -> Result<(), CliError> {
    let train = load_corpus_at(&cmd.train, CorpusFormat::Jsonl)?;
    let test = load_corpus_at(&cmd.test, CorpusFormat::Jsonl)?;
    let features = parse_features(&cmd.features)?;
    let lexicon = load_lexicon(&cmd.features.lexicon, &features)?;
    let svm = svm_params(&cmd.model)?;
    let report = cross_domain_eval(&train, &test, &features, lexicon.as_ref(), &svm)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("transfer")
        .train_test(&cmd.train, &cmd.test)
        .features(&features)
        .lexicon(cmd.features.lexicon.as_deref())
        .model(&cmd.model);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_csv("transfer.csv", &config, &output::transfer_table(&train, &test, &features, &report))?;
    emitter.emit_json_if_out("report.json", &config, &report)?;
    Ok(())
}

fn cmd_lodo(cmd: LodoCmd) -> Result<(), CliError> {
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let features = parse_features(&cmd.features)?;
    let lexicon = load_lexicon(&cmd.features.lexicon, &features)?;
    let svm = svm_params(&cmd.model)?;
    let reports = leave_one_domain_out(&corpus, &features, lexicon.as_ref(), &svm)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("lodo")
        .corpus(&cmd.corpus.corpus)
        .features(&features)
        .lexicon(cmd.features.lexicon.as_deref())
        .model(&cmd.model);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_csv("lodo.csv", &config, &output::lodo_table(&reports))?;
    emitter.emit_json_if_out("reports.json", &config, &reports)?;
    Ok(())
}

fn cmd_kappa(cmd: KappaCmd) -> Result<(), CliError> {
    for (name, path) in [("--a", &cmd.a), ("--b", &cmd.b)] {
        if !path.is_file() {
            return Err(validation(format!("{name}: {} does not exist", path.display())));
        }
    }
    let ann_a = eval::read_annotation_csv(&cmd.a)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let ann_b = eval::read_annotation_csv(&cmd.b)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let (labels_a, labels_b) = eval::align_annotations(&ann_a, &ann_b)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let gold: Option<Vec<corpus::Label>> = match (&cmd.gold, &cmd.corpus) {
        (Some(_), Some(_)) => {
            return Err(validation("pass either --gold or --corpus, not both"));
        }
        (Some(gold_path), None) => {
            if !gold_path.is_file() {
                return Err(validation(format!("--gold: {} does not exist", gold_path.display())));
            }
            let gold_ann = eval::read_annotation_csv(gold_path)
                .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
            let gold_map: std::collections::HashMap<&str, corpus::Label> =
                gold_ann.iter().map(|(id, l)| (id.as_str(), *l)).collect();
            let mut labels = Vec::with_capacity(ann_a.len());
            for (id, _) in &ann_a {
                match gold_map.get(id.as_str()) {
                    Some(l) => labels.push(*l),
                    None => {
                        return Err(CliError::Runtime(anyhow::anyhow!(
                            "gold file has no label for document {id:?}"
                        )))
                    }
                }
            }
            Some(labels)
        }
        (None, Some(corpus_path)) => {
            let args = CorpusArgs {
                corpus: corpus_path.clone(),
                format: cmd.format.clone(),
                domain: None,
            };
            let corpus = load_corpus_checked(&args)?;
            Some(
                eval::gold_for(&ann_a, &corpus)
                    .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?,
            )
        }
        (None, None) => None,
    };
    let report = agreement(&labels_a, &labels_b, gold.as_deref())
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("kappa").annotators(&cmd.a, &cmd.b);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_json("agreement.json", &config, &report)?;
    Ok(())
}

fn cmd_diff(cmd: DiffCmd) -> Result<(), CliError> {
    if !(cmd.alpha > 0.0 && cmd.alpha < 1.0) {
        return Err(validation(format!("--alpha must be in (0, 1): {}", cmd.alpha)));
    }
    let corpus = load_corpus_checked(&cmd.corpus)?;
    let lexicon = load_lexicon_required(&cmd.lexicon)?;
    let diffs = category_differences(&corpus, &lexicon, cmd.alpha, cmd.body_only)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!(e)))?;
    let config = RunConfig::new("diff")
        .corpus(&cmd.corpus.corpus)
        .lexicon(cmd.lexicon.as_deref())
        .alpha(cmd.alpha);
    let emitter = Emitter::new(cmd.out.out.clone());
    emitter.emit_csv("differences.csv", &config, &output::diff_table(&diffs))?;
    Ok(())
}
