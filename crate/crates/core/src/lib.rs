//! Stylometric fake-news detection toolkit.
//!
//! The crate turns labeled news corpora into linguistic feature vectors
//! (n-grams, punctuation, lexicon categories, readability, constituency
//! production rules), trains a linear SVM on them, and evaluates the
//! result with stratified cross-validation, learning curves, cross-domain
//! transfer, leave-one-domain-out grids, inter-annotator agreement, and
//! per-category difference statistics.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod parsetree;
pub mod textproc;

pub use analysis::{category_differences, welch_t_one_tailed, CategoryDifference, TailDirection};
pub use corpus::{load_corpus, Corpus, CorpusFormat, CorpusStats, Document, Domain, Label};
pub use error::{Error, Result};
pub use eval::{
    agreement, compute_metrics, cross_domain_eval, cross_validate, leave_one_domain_out,
    learning_curve, stratified_kfold, AgreementReport, EvalReport, FoldMetrics,
};
pub use features::{
    concat_features, fit_vocabulary, vectorize, FeatureMatrix, FeatureSpace, Scaler, SparseVector,
    VocabKind,
};
pub use features::pipeline::{FeatureConfig, FeatureSet, FittedPipeline};
pub use lexicon::{
    category_proportions, parse_dictionary, punctuation_profile, CategorySet, Lexicon,
    PunctuationProfile,
};
pub use model::{train_svm, LinearModel, SvmParams};
pub use parsetree::{parse_ptb, production_rule_features, ParseTree, RuleFeature};

/// Schema tag written into every file the toolkit emits.
pub const SCHEMA_VERSION: &str = "stylometer/v1";
