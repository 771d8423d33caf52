//! Feature spaces, sparse vectors, and matrices.
//!
//! N-gram and syntax features are tf-idf weighted (raw term frequency,
//! smoothed idf `ln((1+N)/(1+df)) + 1`, L2 normalization). Punctuation,
//! lexicon, and readability features are dense blocks assembled by
//! [`pipeline`]. All spaces order their columns deterministically.

pub mod pipeline;
pub mod readability;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::parsetree;
use crate::textproc::tokenize;
use crate::SCHEMA_VERSION;

/// A sparse vector with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    pub dim: usize,
    /// `(column, value)` pairs sorted by column; values are finite.
    pub entries: Vec<(u32, f64)>,
}

impl SparseVector {
    pub fn new(dim: usize, entries: Vec<(u32, f64)>) -> Result<Self> {
        let mut last: Option<u32> = None;
        for &(idx, val) in &entries {
            if (idx as usize) >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: idx as usize + 1 });
            }
            if let Some(prev) = last {
                if idx <= prev {
                    return Err(Error::invalid("sparse indices must strictly increase"));
                }
            }
            if !val.is_finite() {
                return Err(Error::invalid("sparse values must be finite"));
            }
            last = Some(idx);
        }
        Ok(SparseVector { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    /// Scale to unit L2 norm; the zero vector stays zero.
    pub fn l2_normalized(mut self) -> Self {
        let norm = self.l2_norm();
        if norm > 0.0 {
            for entry in &mut self.entries {
                entry.1 /= norm;
            }
        }
        self
    }

    pub fn get(&self, idx: u32) -> f64 {
        self.entries
            .binary_search_by_key(&idx, |&(i, _)| i)
            .map(|k| self.entries[k].1)
            .unwrap_or(0.0)
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.dim];
        for &(idx, val) in &self.entries {
            dense[idx as usize] = val;
        }
        dense
    }

    /// Dot product against a dense weight vector of the same dimension.
    pub fn dot_dense(&self, weights: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(idx, val)| val * weights[idx as usize])
            .sum()
    }
}

/// What a fitted vocabulary indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VocabKind {
    /// Lowercase unigrams and bigrams of the document text.
    Ngram,
    /// Lexicalized production-rule strings from the document parse trees.
    Syntax,
}

/// Feature-family tag of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Ngram,
    Syntax,
    Punctuation,
    Lexicon,
    Readability,
    Combined,
}

/// Per-column standardization statistics fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    /// Population standard deviation; 1.0 for constant columns.
    pub std: Vec<f64>,
    pub constant: Vec<bool>,
}

impl Scaler {
    pub fn fit(matrix: &FeatureMatrix) -> Scaler {
        let dim = matrix.dim;
        let n = matrix.rows.len().max(1) as f64;
        let mut sum = vec![0.0; dim];
        let mut sumsq = vec![0.0; dim];
        for row in &matrix.rows {
            for &(idx, val) in &row.entries {
                sum[idx as usize] += val;
                sumsq[idx as usize] += val * val;
            }
        }
        let mut mean = vec![0.0; dim];
        let mut std = vec![1.0; dim];
        let mut constant = vec![false; dim];
        for j in 0..dim {
            mean[j] = sum[j] / n;
            let var = (sumsq[j] / n - mean[j] * mean[j]).max(0.0);
            if var.sqrt() > 1e-12 {
                std[j] = var.sqrt();
            } else {
                constant[j] = true;
            }
        }
        Scaler { mean, std, constant }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Z-score a sparse row into a dense vector.
    pub fn transform_dense(&self, row: &SparseVector) -> Vec<f64> {
        let mut out: Vec<f64> = (0..self.dim()).map(|j| -self.mean[j] / self.std[j]).collect();
        for &(idx, val) in &row.entries {
            let j = idx as usize;
            out[j] = (val - self.mean[j]) / self.std[j];
        }
        out
    }
}

/// A fitted vocabulary: feature names, column indices, idf weights, and
/// optionally standardization statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "FeatureSpaceData", into = "FeatureSpaceData")]
pub struct FeatureSpace {
    pub kind: SpaceKind,
    /// Column names; position is the column index.
    pub columns: Vec<String>,
    /// Per-column idf, present for tf-idf kinds only.
    pub idf: Option<Vec<f64>>,
    pub scaler: Option<Scaler>,
    /// Minimum document frequency (fraction) used when fitting.
    pub min_df: f64,
    /// Whether headlines were excluded when fitting.
    pub body_only: bool,
    pub id: String,
    lookup: HashMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
struct FeatureSpaceData {
    schema: String,
    kind: SpaceKind,
    columns: Vec<String>,
    idf: Option<Vec<f64>>,
    scaler: Option<Scaler>,
    min_df: f64,
    #[serde(default)]
    body_only: bool,
    id: String,
}

impl From<FeatureSpaceData> for FeatureSpace {
    fn from(data: FeatureSpaceData) -> Self {
        FeatureSpace::assemble(
            data.kind,
            data.columns,
            data.idf,
            data.scaler,
            data.min_df,
            data.body_only,
        )
    }
}

impl From<FeatureSpace> for FeatureSpaceData {
    fn from(space: FeatureSpace) -> Self {
        FeatureSpaceData {
            schema: SCHEMA_VERSION.to_string(),
            kind: space.kind,
            columns: space.columns,
            idf: space.idf,
            scaler: space.scaler,
            min_df: space.min_df,
            body_only: space.body_only,
            id: space.id,
        }
    }
}

impl FeatureSpace {
    pub(crate) fn assemble(
        kind: SpaceKind,
        columns: Vec<String>,
        idf: Option<Vec<f64>>,
        scaler: Option<Scaler>,
        min_df: f64,
        body_only: bool,
    ) -> FeatureSpace {
        let lookup = columns
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i as u32))
            .collect();
        let id = space_id(&kind, &columns, min_df);
        FeatureSpace { kind, columns, idf, scaler, min_df, body_only, id, lookup }
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    pub fn column_index(&self, name: &str) -> Option<u32> {
        self.lookup.get(name).copied()
    }
}

fn space_id(kind: &SpaceKind, columns: &[String], min_df: f64) -> String {
    // FNV-1a over the column names keeps ids stable across runs.
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for name in columns {
        eat(name.as_bytes());
        eat(&[0]);
    }
    eat(&min_df.to_bits().to_le_bytes());
    let tag = match kind {
        SpaceKind::Ngram => "ngram",
        SpaceKind::Syntax => "syntax",
        SpaceKind::Punctuation => "punct",
        SpaceKind::Lexicon => "liwc",
        SpaceKind::Readability => "read",
        SpaceKind::Combined => "combined",
    };
    format!("{tag}-{}-{hash:016x}", columns.len())
}

/// Terms one document contributes to a vocabulary of `kind`.
fn document_terms(doc: &Document, kind: VocabKind, body_only: bool) -> Vec<String> {
    match kind {
        VocabKind::Ngram => {
            let text = doc.text(body_only);
            let stream = tokenize(&text);
            let lower: Vec<&str> = stream.lower_terms().collect();
            let mut terms: Vec<String> = lower.iter().map(|s| s.to_string()).collect();
            for pair in lower.windows(2) {
                terms.push(format!("{} {}", pair[0], pair[1]));
            }
            terms
        }
        VocabKind::Syntax => {
            let mut terms = Vec::new();
            if let Some(trees) = &doc.parse_trees {
                for tree_str in trees {
                    if let Ok(tree) = parsetree::parse_ptb(tree_str) {
                        for rule in parsetree::production_rule_features(&tree) {
                            terms.push(rule.to_string());
                        }
                    } else {
                        log::warn!("document {}: skipping unparseable tree", doc.id);
                    }
                }
            }
            terms
        }
    }
}

/// Fit a tf-idf vocabulary on training documents.
///
/// Terms present in fewer than `min_df * len(train)` documents are dropped;
/// columns are ordered lexicographically; idf is `ln((1+N)/(1+df)) + 1`.
pub fn fit_vocabulary(
    train: &[&Document],
    kind: VocabKind,
    min_df: f64,
    body_only: bool,
) -> Result<FeatureSpace> {
    if train.is_empty() {
        return Err(Error::invalid("fit_vocabulary on no documents"));
    }
    if !(0.0..1.0).contains(&min_df) {
        return Err(Error::invalid(format!("min_df must be in [0, 1): {min_df}")));
    }
    let mut df: BTreeMap<String, usize> = BTreeMap::new();
    for doc in train {
        let unique: HashSet<String> = document_terms(doc, kind, body_only).into_iter().collect();
        for term in unique {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let n = train.len();
    let threshold = min_df * n as f64;
    let mut columns = Vec::new();
    let mut idf = Vec::new();
    for (term, count) in df {
        if (count as f64) < threshold {
            continue;
        }
        columns.push(term);
        idf.push(((1.0 + n as f64) / (1.0 + count as f64)).ln() + 1.0);
    }
    if columns.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let space_kind = match kind {
        VocabKind::Ngram => SpaceKind::Ngram,
        VocabKind::Syntax => SpaceKind::Syntax,
    };
    Ok(FeatureSpace::assemble(space_kind, columns, Some(idf), None, min_df, body_only))
}

/// Map a document into a fitted tf-idf space: raw term counts, times idf,
/// L2 normalized. Out-of-vocabulary terms are ignored; a document with no
/// in-vocabulary terms becomes the zero vector.
pub fn vectorize(doc: &Document, space: &FeatureSpace) -> Result<SparseVector> {
    let kind = match space.kind {
        SpaceKind::Ngram => VocabKind::Ngram,
        SpaceKind::Syntax => VocabKind::Syntax,
        _ => {
            return Err(Error::invalid(
                "vectorize applies to tf-idf spaces (ngram or syntax) only",
            ))
        }
    };
    let terms = document_terms(doc, kind, space.body_only);
    let idf = space
        .idf
        .as_ref()
        .ok_or_else(|| Error::invalid("space has no idf weights"))?;
    let mut counts: HashMap<u32, f64> = HashMap::new();
    for term in &terms {
        if let Some(idx) = space.column_index(term) {
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(u32, f64)> = counts
        .into_iter()
        .map(|(idx, tf)| (idx, tf * idf[idx as usize]))
        .collect();
    entries.sort_unstable_by_key(|&(idx, _)| idx);
    Ok(SparseVector { dim: space.dimension(), entries }.l2_normalized())
}

/// Rows of sparse vectors aligned with a document-id list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub doc_ids: Vec<String>,
    pub dim: usize,
    pub rows: Vec<SparseVector>,
    /// Id of the space the rows were produced with.
    pub space_id: String,
}

impl FeatureMatrix {
    pub fn new(doc_ids: Vec<String>, dim: usize, rows: Vec<SparseVector>, space_id: String) -> Result<Self> {
        if doc_ids.len() != rows.len() {
            return Err(Error::DimensionMismatch { expected: doc_ids.len(), got: rows.len() });
        }
        for row in &rows {
            if row.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.dim });
            }
        }
        Ok(FeatureMatrix { doc_ids, dim, rows, space_id })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Select a subset of rows by position, preserving order.
    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            doc_ids: indices.iter().map(|&i| self.doc_ids[i].clone()).collect(),
            dim: self.dim,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            space_id: self.space_id.clone(),
        }
    }
}

/// Column-wise concatenation of row-aligned matrices.
pub fn concat_features(parts: &[&FeatureMatrix]) -> Result<FeatureMatrix> {
    let first = parts
        .first()
        .ok_or_else(|| Error::invalid("concat_features on no parts"))?;
    for part in parts.iter().skip(1) {
        if part.doc_ids != first.doc_ids {
            return Err(Error::invalid(
                "concat_features: parts are not aligned on the same documents",
            ));
        }
    }
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let mut rows = Vec::with_capacity(first.n_rows());
    for r in 0..first.n_rows() {
        let mut entries = Vec::new();
        let mut offset = 0u32;
        for part in parts {
            for &(idx, val) in &part.rows[r].entries {
                entries.push((idx + offset, val));
            }
            offset += part.dim as u32;
        }
        rows.push(SparseVector { dim, entries });
    }
    let space_id = parts
        .iter()
        .map(|p| p.space_id.as_str())
        .collect::<Vec<_>>()
        .join("+");
    Ok(FeatureMatrix { doc_ids: first.doc_ids.clone(), dim, rows, space_id })
}

/// Write the sparse text format: a schema comment, a `dims rows cols`
/// header, then one `docid idx:val ...` line per row.
pub fn write_sparse_text<W: Write>(matrix: &FeatureMatrix, mut w: W) -> Result<()> {
    writeln!(w, "# {SCHEMA_VERSION}")?;
    writeln!(w, "dims {} {}", matrix.n_rows(), matrix.dim)?;
    for (doc_id, row) in matrix.doc_ids.iter().zip(&matrix.rows) {
        if doc_id.chars().any(|c| c.is_whitespace()) {
            return Err(Error::invalid(format!(
                "document id {doc_id:?} contains whitespace and cannot be serialized"
            )));
        }
        write!(w, "{doc_id}")?;
        for &(idx, val) in &row.entries {
            write!(w, " {idx}:{val}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Read the sparse text format written by [`write_sparse_text`].
pub fn read_sparse_text<R: Read>(r: R) -> Result<FeatureMatrix> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();
    let mut header = String::new();
    for line in lines.by_ref() {
        let line = line?;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        header = line;
        break;
    }
    let mut parts = header.split_whitespace();
    if parts.next() != Some("dims") {
        return Err(Error::invalid("matrix file must start with a `dims rows cols` header"));
    }
    let rows: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::invalid("bad row count in dims header"))?;
    let dim: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::invalid("bad column count in dims header"))?;
    let mut doc_ids = Vec::with_capacity(rows);
    let mut matrix_rows = Vec::with_capacity(rows);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let doc_id = fields.next().unwrap().to_string();
        let mut entries = Vec::new();
        for field in fields {
            let (idx, val) = field
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("bad matrix entry {field:?}")))?;
            let idx: u32 = idx
                .parse()
                .map_err(|_| Error::invalid(format!("bad column index {idx:?}")))?;
            let val: f64 = val
                .parse()
                .map_err(|_| Error::invalid(format!("bad value {val:?}")))?;
            entries.push((idx, val));
        }
        doc_ids.push(doc_id);
        matrix_rows.push(SparseVector::new(dim, entries)?);
    }
    if matrix_rows.len() != rows {
        return Err(Error::DimensionMismatch { expected: rows, got: matrix_rows.len() });
    }
    FeatureMatrix::new(doc_ids, dim, matrix_rows, String::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Domain, Label};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn doc(id: &str, body: &str) -> Document {
        Document {
            id: id.to_string(),
            domain: Domain::Technology,
            label: Label::Legitimate,
            headline: String::new(),
            body: body.to_string(),
            parse_trees: None,
        }
    }

    #[test]
    fn vocabulary_and_idf_by_hand() {
        let docs = vec![doc("d1", "a b a"), doc("d2", "b c")];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Ngram, 0.0, false).unwrap();
        assert_eq!(space.columns, ["a", "a b", "b", "b a", "b c", "c"]);
        let idf = space.idf.as_ref().unwrap();
        let idx_b = space.column_index("b").unwrap() as usize;
        let idx_a = space.column_index("a").unwrap() as usize;
        assert_relative_eq!(idf[idx_b], 1.0, epsilon = 1e-12);
        assert_relative_eq!(idf[idx_a], (3.0f64 / 2.0).ln() + 1.0, epsilon = 1e-12);
    }

    #[test]
    fn min_df_prunes() {
        let docs = vec![doc("d1", "a b a"), doc("d2", "b c")];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Ngram, 0.6, false).unwrap();
        assert_eq!(space.columns, ["b"]);
        // Disjoint documents: every term has df 1, so a high threshold
        // empties the vocabulary.
        let disjoint = vec![doc("d1", "a"), doc("d2", "c")];
        let drefs: Vec<&Document> = disjoint.iter().collect();
        let err = fit_vocabulary(&drefs, VocabKind::Ngram, 0.9, false);
        assert!(matches!(err, Err(Error::EmptyVocabulary)));
    }

    #[test]
    fn vectorize_by_hand() {
        let docs = vec![doc("d1", "a b a"), doc("d2", "b c")];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Ngram, 0.0, false).unwrap();
        let vector = vectorize(&docs[0], &space).unwrap();
        // Unnormalized weights: a = 2·(ln(3/2)+1), b = 1·1, "a b" = "b a" =
        // 1·(ln(3/2)+1); then L2 normalized.
        let w = (3.0f64 / 2.0).ln() + 1.0;
        let norm = (4.0 * w * w + 1.0 + 2.0 * w * w).sqrt();
        assert_relative_eq!(vector.get(space.column_index("a").unwrap()), 2.0 * w / norm, epsilon = 1e-12);
        assert_relative_eq!(vector.get(space.column_index("b").unwrap()), 1.0 / norm, epsilon = 1e-12);
        assert_relative_eq!(vector.l2_norm(), 1.0, epsilon = 1e-12);
        // The unigram-only restriction normalizes to the classic hand values.
        let restricted = (2.0 * w, 1.0);
        let rnorm = (restricted.0 * restricted.0 + restricted.1 * restricted.1).sqrt();
        assert_relative_eq!(restricted.0 / rnorm, 0.9422, epsilon = 1e-4);
        assert_relative_eq!(restricted.1 / rnorm, 0.3352, epsilon = 1e-4);
    }

    #[test]
    fn oov_documents_become_zero_vectors() {
        let docs = vec![doc("d1", "a b a"), doc("d2", "b c")];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Ngram, 0.0, false).unwrap();
        let empty = doc("e", "!!!");
        assert_eq!(vectorize(&empty, &space).unwrap().nnz(), 0);
        let oov = doc("o", "zzz yyy");
        assert_eq!(vectorize(&oov, &space).unwrap().nnz(), 0);
    }

    #[test]
    fn syntax_vocabulary_from_trees() {
        let mut d = doc("d1", "He ran.");
        d.parse_trees = Some(vec!["(S (NP (PRP He)) (VP (VBD ran)))".into()]);
        let docs = vec![d];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Syntax, 0.0, false).unwrap();
        assert_eq!(space.columns, ["NP^PRP->he", "VP^VBD->ran"]);
    }

    #[test]
    fn concat_dimensions_add_and_project() {
        let m1 = FeatureMatrix::new(
            vec!["a".into(), "b".into()],
            2,
            vec![
                SparseVector::new(2, vec![(0, 1.0)]).unwrap(),
                SparseVector::new(2, vec![(1, 2.0)]).unwrap(),
            ],
            "p1".into(),
        )
        .unwrap();
        let m2 = FeatureMatrix::new(
            vec!["a".into(), "b".into()],
            3,
            vec![
                SparseVector::new(3, vec![(2, 5.0)]).unwrap(),
                SparseVector::zero(3),
            ],
            "p2".into(),
        )
        .unwrap();
        let combined = concat_features(&[&m1, &m2]).unwrap();
        assert_eq!(combined.dim, 5);
        // Projection identity: part-1 columns of row k equal part-1 row k.
        assert_eq!(combined.rows[0].get(0), 1.0);
        assert_eq!(combined.rows[0].get(4), 5.0);
        assert_eq!(combined.rows[1].get(1), 2.0);
        let misaligned = FeatureMatrix::new(
            vec!["x".into(), "b".into()],
            1,
            vec![SparseVector::zero(1), SparseVector::zero(1)],
            "p3".into(),
        )
        .unwrap();
        assert!(concat_features(&[&m1, &misaligned]).is_err());
    }

    #[test]
    fn sparse_text_round_trip() {
        let matrix = FeatureMatrix::new(
            vec!["doc1".into(), "doc2".into()],
            4,
            vec![
                SparseVector::new(4, vec![(0, 0.5), (3, -1.25)]).unwrap(),
                SparseVector::zero(4),
            ],
            "space".into(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_sparse_text(&matrix, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# stylometer/v1\ndims 2 4\n"));
        let reloaded = read_sparse_text(&buf[..]).unwrap();
        assert_eq!(reloaded.doc_ids, matrix.doc_ids);
        assert_eq!(reloaded.rows, matrix.rows);
    }

    #[test]
    fn scaler_standardizes_columns() {
        let matrix = FeatureMatrix::new(
            vec!["a".into(), "b".into()],
            2,
            vec![
                SparseVector::new(2, vec![(0, 2.0), (1, 7.0)]).unwrap(),
                SparseVector::new(2, vec![(0, 4.0), (1, 7.0)]).unwrap(),
            ],
            "s".into(),
        )
        .unwrap();
        let scaler = Scaler::fit(&matrix);
        assert_eq!(scaler.mean, vec![3.0, 7.0]);
        assert!(scaler.constant[1]);
        let z = scaler.transform_dense(&matrix.rows[0]);
        assert_relative_eq!(z[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(z[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn space_json_round_trip() {
        let docs = vec![doc("d1", "a b a"), doc("d2", "b c")];
        let refs: Vec<&Document> = docs.iter().collect();
        let space = fit_vocabulary(&refs, VocabKind::Ngram, 0.0, false).unwrap();
        let json = serde_json::to_string(&space).unwrap();
        assert!(json.contains("stylometer/v1"));
        let back: FeatureSpace = serde_json::from_str(&json).unwrap();
        assert_eq!(back.columns, space.columns);
        assert_eq!(back.id, space.id);
        assert_eq!(back.column_index("b"), space.column_index("b"));
    }

    proptest! {
        /// tf-idf vectors have L2 norm 1 (or 0 for all-OOV documents).
        #[test]
        fn vectorize_norm_is_unit_or_zero(bodies in prop::collection::vec("[a-c ]{0,12}", 1..6)) {
            let docs: Vec<Document> = bodies
                .iter()
                .enumerate()
                .map(|(i, b)| doc(&format!("d{i}"), b))
                .collect();
            let refs: Vec<&Document> = docs.iter().collect();
            if let Ok(space) = fit_vocabulary(&refs, VocabKind::Ngram, 0.0, false) {
                for d in &docs {
                    let norm = vectorize(d, &space).unwrap().l2_norm();
                    prop_assert!((norm - 1.0).abs() < 1e-9 || norm == 0.0);
                }
            }
        }

        /// idf decreases (weakly) as document frequency increases.
        #[test]
        fn idf_monotone_in_df(n in 2usize..40, df1 in 1usize..40, df2 in 1usize..40) {
            let idf = |df: usize| ((1.0 + n as f64) / (1.0 + df as f64)).ln() + 1.0;
            let (lo, hi) = (df1.min(df2), df1.max(df2));
            prop_assert!(idf(lo) >= idf(hi));
        }
    }
}
