//! Assembles feature families into one model-ready matrix.
//!
//! Each selected family contributes a block of columns (prefixed with the
//! family name so combined column names stay unique). Vocabulary-based
//! blocks are fitted on training documents only; the per-column scaler for
//! the combined space is also fitted on the training matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::features::readability;
use crate::features::{
    concat_features, fit_vocabulary, vectorize, FeatureMatrix, FeatureSpace, Scaler, SpaceKind,
    SparseVector, VocabKind,
};
use crate::lexicon::{
    category_proportions, proportions_for_ids, punctuation_profile, select_categories,
    CategorySelection, CategorySet, Lexicon, SummaryFeature, ANALYTIC_INPUTS, PUNCTUATION_NAMES,
};
use crate::textproc::{split_sentences, tokenize};

/// Selectable feature families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureSet {
    Ngrams,
    Punctuation,
    LiwcSummary,
    LiwcLinguistic,
    LiwcPsych,
    LiwcComplete,
    Readability,
    Syntax,
    /// Ngrams + complete LIWC (with punctuation) + readability + syntax.
    All,
}

impl FeatureSet {
    pub const NAMES: [&'static str; 9] = [
        "ngrams",
        "punctuation",
        "liwc-summary",
        "liwc-linguistic",
        "liwc-psych",
        "liwc-complete",
        "readability",
        "syntax",
        "all",
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureSet::Ngrams => "ngrams",
            FeatureSet::Punctuation => "punctuation",
            FeatureSet::LiwcSummary => "liwc-summary",
            FeatureSet::LiwcLinguistic => "liwc-linguistic",
            FeatureSet::LiwcPsych => "liwc-psych",
            FeatureSet::LiwcComplete => "liwc-complete",
            FeatureSet::Readability => "readability",
            FeatureSet::Syntax => "syntax",
            FeatureSet::All => "all",
        }
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ngrams" => Ok(FeatureSet::Ngrams),
            "punctuation" => Ok(FeatureSet::Punctuation),
            "liwc-summary" => Ok(FeatureSet::LiwcSummary),
            "liwc-linguistic" => Ok(FeatureSet::LiwcLinguistic),
            "liwc-psych" => Ok(FeatureSet::LiwcPsych),
            "liwc-complete" => Ok(FeatureSet::LiwcComplete),
            "readability" => Ok(FeatureSet::Readability),
            "syntax" => Ok(FeatureSet::Syntax),
            "all" => Ok(FeatureSet::All),
            other => Err(Error::invalid(format!(
                "unknown feature set {other:?} (expected one of {})",
                FeatureSet::NAMES.join(", ")
            ))),
        }
    }
}

/// Which families to extract and how.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub sets: Vec<FeatureSet>,
    /// Minimum document frequency for vocabulary pruning.
    pub min_df: f64,
    /// Exclude headlines from feature extraction.
    pub body_only: bool,
}

impl FeatureConfig {
    pub fn new(sets: Vec<FeatureSet>) -> FeatureConfig {
        FeatureConfig { sets, min_df: 0.02, body_only: false }
    }

    /// Concrete families in canonical order, with `all` expanded and
    /// duplicates removed.
    fn families(&self) -> Vec<Family> {
        let mut wanted = Vec::new();
        let push = |f: Family, wanted: &mut Vec<Family>| {
            if !wanted.contains(&f) {
                wanted.push(f);
            }
        };
        for set in &self.sets {
            match set {
                FeatureSet::Ngrams => push(Family::Ngram, &mut wanted),
                FeatureSet::Punctuation => push(Family::Punctuation, &mut wanted),
                FeatureSet::LiwcSummary => push(Family::Liwc(CategorySet::Summary), &mut wanted),
                FeatureSet::LiwcLinguistic => {
                    push(Family::Liwc(CategorySet::Linguistic), &mut wanted)
                }
                FeatureSet::LiwcPsych => {
                    push(Family::Liwc(CategorySet::Psychological), &mut wanted)
                }
                FeatureSet::LiwcComplete => push(Family::Liwc(CategorySet::Complete), &mut wanted),
                FeatureSet::Readability => push(Family::Readability, &mut wanted),
                FeatureSet::Syntax => push(Family::Syntax, &mut wanted),
                FeatureSet::All => {
                    push(Family::Ngram, &mut wanted);
                    push(Family::Liwc(CategorySet::Complete), &mut wanted);
                    push(Family::Readability, &mut wanted);
                    push(Family::Syntax, &mut wanted);
                }
            }
        }
        let canonical = [
            Family::Ngram,
            Family::Punctuation,
            Family::Liwc(CategorySet::Summary),
            Family::Liwc(CategorySet::Linguistic),
            Family::Liwc(CategorySet::Psychological),
            Family::Liwc(CategorySet::Complete),
            Family::Readability,
            Family::Syntax,
        ];
        canonical.into_iter().filter(|f| wanted.contains(f)).collect()
    }

    fn needs_lexicon(&self) -> bool {
        self.families().iter().any(|f| matches!(f, Family::Liwc(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Ngram,
    Punctuation,
    Liwc(CategorySet),
    Readability,
    Syntax,
}

/// One fitted family block.
#[derive(Debug, Clone)]
enum FittedFamily {
    Ngram(FeatureSpace),
    /// `None` when no training document carried a parse tree.
    Syntax(Option<FeatureSpace>),
    Punctuation,
    Liwc(CategorySelection),
    Readability,
}

impl FittedFamily {
    fn prefix(&self) -> &'static str {
        match self {
            FittedFamily::Ngram(_) => "ngram",
            FittedFamily::Syntax(_) => "syntax",
            FittedFamily::Punctuation => "punct",
            FittedFamily::Liwc(_) => "liwc",
            FittedFamily::Readability => "read",
        }
    }

    fn columns(&self) -> Vec<String> {
        let prefix = self.prefix();
        match self {
            FittedFamily::Ngram(space) => {
                space.columns.iter().map(|c| format!("{prefix}:{c}")).collect()
            }
            FittedFamily::Syntax(Some(space)) => {
                space.columns.iter().map(|c| format!("{prefix}:{c}")).collect()
            }
            FittedFamily::Syntax(None) => Vec::new(),
            FittedFamily::Punctuation => PUNCTUATION_NAMES
                .iter()
                .map(|n| format!("{prefix}:{n}"))
                .collect(),
            FittedFamily::Liwc(selection) => {
                let mut cols: Vec<String> = selection
                    .word_categories
                    .iter()
                    .map(|(name, _)| format!("{prefix}:{name}"))
                    .collect();
                for s in &selection.summary {
                    cols.push(format!("{prefix}:{}", s.name()));
                }
                if selection.include_punctuation {
                    for n in PUNCTUATION_NAMES {
                        cols.push(format!("{prefix}:punct:{n}"));
                    }
                }
                cols
            }
            FittedFamily::Readability => readability::COLUMN_NAMES
                .iter()
                .map(|n| format!("{prefix}:{n}"))
                .collect(),
        }
    }

    fn dimension(&self) -> usize {
        match self {
            FittedFamily::Ngram(space) => space.dimension(),
            FittedFamily::Syntax(Some(space)) => space.dimension(),
            FittedFamily::Syntax(None) => 0,
            FittedFamily::Punctuation => PUNCTUATION_NAMES.len(),
            FittedFamily::Liwc(selection) => selection.effective_dimension(),
            FittedFamily::Readability => readability::DIMENSION,
        }
    }
}

/// A feature pipeline fitted on training documents.
#[derive(Debug, Clone)]
pub struct FittedPipeline {
    pub config: FeatureConfig,
    families: Vec<FittedFamily>,
    /// Combined space over all family blocks; holds the training scaler.
    pub combined: FeatureSpace,
}

/// Fit all configured families on `train` and return the pipeline together
/// with the (unstandardized) training matrix.
pub fn fit_pipeline(
    train: &[&Document],
    config: &FeatureConfig,
    lexicon: Option<&Lexicon>,
) -> Result<(FittedPipeline, FeatureMatrix)> {
    if train.is_empty() {
        return Err(Error::invalid("fit_pipeline on no documents"));
    }
    if config.sets.is_empty() {
        return Err(Error::invalid("no feature sets selected"));
    }
    if config.needs_lexicon() && lexicon.is_none() {
        return Err(Error::invalid(
            "selected LIWC feature sets but no lexicon was provided",
        ));
    }
    let mut families = Vec::new();
    for family in config.families() {
        let fitted = match family {
            Family::Ngram => FittedFamily::Ngram(fit_vocabulary(
                train,
                VocabKind::Ngram,
                config.min_df,
                config.body_only,
            )?),
            Family::Syntax => {
                let has_trees = train
                    .iter()
                    .any(|d| d.parse_trees.as_ref().map(|t| !t.is_empty()).unwrap_or(false));
                if has_trees {
                    FittedFamily::Syntax(Some(fit_vocabulary(
                        train,
                        VocabKind::Syntax,
                        config.min_df,
                        config.body_only,
                    )?))
                } else {
                    log::warn!(
                        "syntax features requested but no training document has parse trees; \
                         emitting an empty syntax block"
                    );
                    FittedFamily::Syntax(None)
                }
            }
            Family::Punctuation => FittedFamily::Punctuation,
            Family::Liwc(set) => {
                let lexicon = lexicon.expect("checked above");
                FittedFamily::Liwc(select_categories(lexicon, set)?)
            }
            Family::Readability => FittedFamily::Readability,
        };
        families.push(fitted);
    }

    let columns: Vec<String> = families.iter().flat_map(|f| f.columns()).collect();
    let combined = FeatureSpace::assemble(
        SpaceKind::Combined,
        columns,
        None,
        None,
        config.min_df,
        config.body_only,
    );
    let mut pipeline = FittedPipeline { config: config.clone(), families, combined };

    let train_matrix = pipeline.transform_with(train, lexicon)?;
    let scaler = Scaler::fit(&train_matrix);
    pipeline.combined.scaler = Some(scaler);
    Ok((pipeline, train_matrix))
}

impl FittedPipeline {
    pub fn dimension(&self) -> usize {
        self.combined.dimension()
    }

    /// Feature rows for `docs` in this fitted space. The lexicon must be the
    /// one the pipeline was fitted with (only LIWC families read it).
    pub fn transform(&self, docs: &[&Document], lexicon: Option<&Lexicon>) -> Result<FeatureMatrix> {
        self.transform_with(docs, lexicon)
    }

    fn transform_with(
        &self,
        docs: &[&Document],
        lexicon: Option<&Lexicon>,
    ) -> Result<FeatureMatrix> {
        if self.config.needs_lexicon() && lexicon.is_none() {
            return Err(Error::invalid("pipeline needs the lexicon it was fitted with"));
        }
        let mut parts: Vec<FeatureMatrix> = Vec::new();
        let doc_ids: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
        for family in &self.families {
            let dim = family.dimension();
            let mut rows = Vec::with_capacity(docs.len());
            for doc in docs {
                rows.push(self.family_row(family, doc, lexicon, dim)?);
            }
            parts.push(FeatureMatrix::new(
                doc_ids.clone(),
                dim,
                rows,
                family.prefix().to_string(),
            )?);
        }
        let part_refs: Vec<&FeatureMatrix> = parts.iter().collect();
        let mut combined = concat_features(&part_refs)?;
        combined.space_id = self.combined.id.clone();
        Ok(combined)
    }

    fn family_row(
        &self,
        family: &FittedFamily,
        doc: &Document,
        lexicon: Option<&Lexicon>,
        dim: usize,
    ) -> Result<SparseVector> {
        let body_only = self.config.body_only;
        match family {
            FittedFamily::Ngram(space) => vectorize(doc, space),
            FittedFamily::Syntax(Some(space)) => {
                if doc.parse_trees.as_ref().map(|t| t.is_empty()).unwrap_or(true) {
                    log::warn!("document {}: no parse trees, zero syntax vector", doc.id);
                }
                vectorize(doc, space)
            }
            FittedFamily::Syntax(None) => Ok(SparseVector::zero(0)),
            FittedFamily::Punctuation => {
                dense_row(&punctuation_profile(&doc.text(body_only)).as_array())
            }
            FittedFamily::Liwc(selection) => {
                let lexicon = lexicon.expect("checked above");
                liwc_row(doc, lexicon, selection, body_only, dim)
            }
            FittedFamily::Readability => {
                dense_row(&readability::readability_features(&doc.text(body_only))?)
            }
        }
    }
}

fn dense_row(values: &[f64]) -> Result<SparseVector> {
    let entries: Vec<(u32, f64)> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| (i as u32, *v))
        .collect();
    SparseVector::new(values.len(), entries)
}

/// One LIWC block row: word-category percentages, computable summary
/// measures, and (for the complete set) the punctuation profile.
fn liwc_row(
    doc: &Document,
    lexicon: &Lexicon,
    selection: &CategorySelection,
    body_only: bool,
    dim: usize,
) -> Result<SparseVector> {
    let text = doc.text(body_only);
    let tokens = tokenize(&text);
    let mut values = Vec::with_capacity(dim);
    for p in category_proportions(&tokens, lexicon, selection) {
        values.push(p * 100.0);
    }
    for summary in &selection.summary {
        values.push(summary_value(*summary, &text, lexicon));
    }
    if selection.include_punctuation {
        values.extend(punctuation_profile(&text).as_array());
    }
    debug_assert_eq!(values.len(), dim);
    dense_row(&values)
}

fn summary_value(feature: SummaryFeature, text: &str, lexicon: &Lexicon) -> f64 {
    let tokens = tokenize(text);
    match feature {
        SummaryFeature::Analytic => {
            let ids: Vec<u32> = ANALYTIC_INPUTS
                .iter()
                .map(|n| lexicon.id_of(n).expect("selector verified analytic inputs"))
                .collect();
            let p = proportions_for_ids(&tokens, lexicon, &ids);
            30.0 + 100.0 * (p[0] + p[1] - p[2] - p[3] - p[4] - p[5] - p[6] - p[7])
        }
        SummaryFeature::WordsPerSentence => {
            let sentences = split_sentences(text).len();
            if sentences == 0 {
                0.0
            } else {
                tokens.len() as f64 / sentences as f64
            }
        }
        SummaryFeature::SixLetterRate => {
            if tokens.is_empty() {
                return 0.0;
            }
            let long = tokens
                .iter()
                .filter(|t| t.surface.chars().filter(|c| c.is_alphanumeric()).count() > 6)
                .count();
            100.0 * long as f64 / tokens.len() as f64
        }
        SummaryFeature::DictionaryRate => {
            let total = tokens.alphabetic_count();
            if total == 0 {
                return 0.0;
            }
            let matched = tokens
                .iter()
                .filter(|t| t.alphabetic && lexicon.matches_any(&t.lower))
                .count();
            100.0 * matched as f64 / total as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Domain, Label};

    fn doc(id: &str, label: Label, body: &str) -> Document {
        Document {
            id: id.to_string(),
            domain: Domain::Technology,
            label,
            headline: String::new(),
            body: body.to_string(),
            parse_trees: None,
        }
    }

    const DIC: &str = "%\n1\tposemo\n2\tnegemo\n%\nhapp*\t1\ngood\t1\nsad\t2\n";

    #[test]
    fn punctuation_and_readability_dimensions_add() {
        let docs = vec![
            doc("a", Label::Legitimate, "Good news today. Markets rose."),
            doc("b", Label::Fake, "Sad news! Everything fell apart."),
        ];
        let refs: Vec<&Document> = docs.iter().collect();
        let config = FeatureConfig::new(vec![FeatureSet::Punctuation, FeatureSet::Readability]);
        let (pipeline, matrix) = fit_pipeline(&refs, &config, None).unwrap();
        assert_eq!(pipeline.dimension(), 11 + 26);
        assert_eq!(matrix.dim, 37);
        assert_eq!(matrix.n_rows(), 2);
        assert!(pipeline.combined.scaler.is_some());
    }

    #[test]
    fn liwc_requires_lexicon() {
        let docs = vec![doc("a", Label::Legitimate, "Good.")];
        let refs: Vec<&Document> = docs.iter().collect();
        let config = FeatureConfig::new(vec![FeatureSet::LiwcComplete]);
        assert!(fit_pipeline(&refs, &config, None).is_err());
    }

    #[test]
    fn syntax_without_trees_warns_and_is_empty() {
        let docs = vec![
            doc("a", Label::Legitimate, "Plain text one."),
            doc("b", Label::Fake, "Plain text two."),
        ];
        let refs: Vec<&Document> = docs.iter().collect();
        let mut config = FeatureConfig::new(vec![FeatureSet::Syntax, FeatureSet::Punctuation]);
        config.min_df = 0.0;
        let (pipeline, matrix) = fit_pipeline(&refs, &config, None).unwrap();
        assert_eq!(pipeline.dimension(), 11);
        assert_eq!(matrix.dim, 11);
    }

    #[test]
    fn combined_columns_are_prefixed_and_unique() {
        let lexicon = crate::lexicon::parse_dictionary(DIC).unwrap();
        let docs = vec![
            doc("a", Label::Legitimate, "Good and happy days ahead for everyone."),
            doc("b", Label::Fake, "Sad days behind us, happier days ahead."),
        ];
        let refs: Vec<&Document> = docs.iter().collect();
        let mut config = FeatureConfig::new(vec![FeatureSet::Ngrams, FeatureSet::Readability]);
        config.min_df = 0.0;
        let (pipeline, _) = fit_pipeline(&refs, &config, Some(&lexicon)).unwrap();
        let mut columns = pipeline.combined.columns.clone();
        assert!(columns.iter().all(|c| c.starts_with("ngram:") || c.starts_with("read:")));
        let before = columns.len();
        columns.sort();
        columns.dedup();
        assert_eq!(columns.len(), before);
    }

    #[test]
    fn transform_matches_training_matrix() {
        let docs = vec![
            doc("a", Label::Legitimate, "Good news today. Markets rose."),
            doc("b", Label::Fake, "Sad news! Everything fell."),
        ];
        let refs: Vec<&Document> = docs.iter().collect();
        let mut config = FeatureConfig::new(vec![FeatureSet::Ngrams, FeatureSet::Punctuation]);
        config.min_df = 0.0;
        let (pipeline, train_matrix) = fit_pipeline(&refs, &config, None).unwrap();
        let again = pipeline.transform(&refs, None).unwrap();
        assert_eq!(again, train_matrix);
    }

    #[test]
    fn body_only_excludes_headline_terms() {
        let mut a = doc("a", Label::Legitimate, "plain body text here");
        a.headline = "unique headline token".into();
        let b = doc("b", Label::Fake, "other plain body words");
        let docs = vec![a, b];
        let refs: Vec<&Document> = docs.iter().collect();
        let mut config = FeatureConfig::new(vec![FeatureSet::Ngrams]);
        config.min_df = 0.0;
        config.body_only = true;
        let (pipeline, _) = fit_pipeline(&refs, &config, None).unwrap();
        assert!(pipeline.combined.column_index("ngram:headline").is_none());
        config.body_only = false;
        let (pipeline, _) = fit_pipeline(&refs, &config, None).unwrap();
        assert!(pipeline.combined.column_index("ngram:headline").is_some());
    }
}
