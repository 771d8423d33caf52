//! Labeled-document corpus: data model, loaders, and descriptive statistics.
//!
//! The canonical interchange format is JSONL (one document object per line).
//! The `paired_dirs` loader exists for corpora shipped as `legit/` and
//! `fake/` directories of plain-text files.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc;

/// News domain of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Sports,
    Business,
    Entertainment,
    Politics,
    Technology,
    Education,
    Celebrity,
}

impl Domain {
    pub const ALL: [Domain; 7] = [
        Domain::Sports,
        Domain::Business,
        Domain::Entertainment,
        Domain::Politics,
        Domain::Technology,
        Domain::Education,
        Domain::Celebrity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::Sports => "sports",
            Domain::Business => "business",
            Domain::Entertainment => "entertainment",
            Domain::Politics => "politics",
            Domain::Technology => "technology",
            Domain::Education => "education",
            Domain::Celebrity => "celebrity",
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Domain::ALL
            .iter()
            .find(|d| d.as_str() == s)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown domain {s:?}")))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ground-truth class of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Legitimate,
    Fake,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Legitimate => "legitimate",
            Label::Fake => "fake",
        }
    }

    /// The other class.
    pub fn flip(&self) -> Label {
        match self {
            Label::Legitimate => Label::Fake,
            Label::Fake => Label::Legitimate,
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "legitimate" => Ok(Label::Legitimate),
            "fake" => Ok(Label::Fake),
            other => Err(Error::invalid(format!("unknown label {other:?}"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One news item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub domain: Domain,
    pub label: Label,
    pub headline: String,
    pub body: String,
    /// Bracketed constituency trees, one per sentence, produced by an
    /// external parser. Absent documents get a zero syntax block.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse_trees: Option<Vec<String>>,
}

impl Document {
    /// Text used for feature extraction: headline + newline + body, or the
    /// body alone when `body_only` is set.
    pub fn text(&self, body_only: bool) -> String {
        if body_only || self.headline.is_empty() {
            self.body.clone()
        } else {
            format!("{}\n{}", self.headline, self.body)
        }
    }
}

/// An ordered collection of documents. Order is the on-disk order and is
/// never shuffled in place; it anchors every seeded experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub name: String,
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.documents.iter().map(|d| d.label).collect()
    }

    /// Distinct domains present, in enum order.
    pub fn domains(&self) -> Vec<Domain> {
        let present: HashSet<Domain> = self.documents.iter().map(|d| d.domain).collect();
        Domain::ALL.iter().copied().filter(|d| present.contains(d)).collect()
    }

    /// Write the corpus as canonical JSONL, one document per line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for doc in &self.documents {
            serde_json::to_writer(&mut w, doc)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn stats(&self) -> Result<CorpusStats> {
        corpus_stats(self)
    }
}

/// Where a corpus comes from on disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorpusFormat {
    /// One JSON document object per line.
    Jsonl,
    /// `legit/` and `fake/` directories of UTF-8 `.txt` files; first line is
    /// the headline, the rest the body. Domains come from a sibling
    /// `meta.csv` (`file,domain` rows) unless overridden here.
    PairedDirs { domain_override: Option<Domain> },
}

/// Load a corpus from disk, validating ids, labels, domains, and bodies.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    let documents = match format {
        CorpusFormat::Jsonl => load_jsonl(path)?,
        CorpusFormat::PairedDirs { domain_override } => load_paired_dirs(path, domain_override)?,
    };
    let mut seen = HashSet::new();
    for doc in &documents {
        if !seen.insert(doc.id.clone()) {
            return Err(Error::invalid(format!("duplicate document id {:?}", doc.id)));
        }
    }
    Ok(Corpus { name, documents })
}

/// Raw JSONL row, deserialized loosely so enum violations can be reported
/// with the line number and the offending value.
#[derive(Deserialize)]
struct RawDocument {
    id: String,
    domain: String,
    label: String,
    headline: String,
    body: String,
    #[serde(default)]
    parse_trees: Option<Vec<String>>,
}

fn load_jsonl(path: &Path) -> Result<Vec<Document>> {
    let file = fs::File::open(path).map_err(|e| {
        Error::invalid(format!("cannot open corpus {}: {e}", path.display()))
    })?;
    let reader = BufReader::new(file);
    let path_str = path.display().to_string();
    let mut documents = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawDocument = serde_json::from_str(&line).map_err(|e| Error::CorpusFormat {
            path: path_str.clone(),
            line: lineno,
            msg: format!("malformed document: {e}"),
        })?;
        let doc = validate_raw(raw).map_err(|e| Error::CorpusFormat {
            path: path_str.clone(),
            line: lineno,
            msg: e.to_string(),
        })?;
        documents.push(doc);
    }
    Ok(documents)
}

fn validate_raw(raw: RawDocument) -> Result<Document> {
    if raw.id.is_empty() {
        return Err(Error::invalid("document id is empty"));
    }
    if raw.body.trim().is_empty() {
        return Err(Error::invalid(format!("document {:?} has an empty body", raw.id)));
    }
    let domain = Domain::from_str(&raw.domain)?;
    let label = Label::from_str(&raw.label)?;
    Ok(Document {
        id: raw.id,
        domain,
        label,
        headline: raw.headline,
        body: raw.body,
        parse_trees: raw.parse_trees,
    })
}

fn load_paired_dirs(root: &Path, domain_override: Option<Domain>) -> Result<Vec<Document>> {
    let meta = load_meta(root)?;
    let mut documents = Vec::new();
    for (dir, label) in [("legit", Label::Legitimate), ("fake", Label::Fake)] {
        let dir_path = root.join(dir);
        if !dir_path.is_dir() {
            return Err(Error::invalid(format!(
                "paired_dirs corpus {} is missing the {dir}/ directory",
                root.display()
            )));
        }
        let mut files: Vec<_> = fs::read_dir(&dir_path)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map(|x| x == "txt").unwrap_or(false))
            .collect();
        files.sort();
        for file in files {
            let filename = file
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let stem = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = fs::read_to_string(&file)?;
            let mut lines = text.splitn(2, '\n');
            let headline = lines.next().unwrap_or("").trim().to_string();
            let body = lines.next().unwrap_or("").trim().to_string();
            if body.is_empty() {
                return Err(Error::invalid(format!(
                    "{}: empty body (file must be headline line + body)",
                    file.display()
                )));
            }
            let domain = match domain_override.or_else(|| meta.get(&filename).copied()) {
                Some(d) => d,
                None => {
                    return Err(Error::invalid(format!(
                        "{}: no domain (provide meta.csv or a domain override)",
                        file.display()
                    )))
                }
            };
            documents.push(Document {
                id: format!("{dir}/{stem}"),
                domain,
                label,
                headline,
                body,
                parse_trees: None,
            });
        }
    }
    Ok(documents)
}

fn load_meta(root: &Path) -> Result<HashMap<String, Domain>> {
    let meta_path = root.join("meta.csv");
    let mut map = HashMap::new();
    if !meta_path.is_file() {
        return Ok(map);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(&meta_path)?;
    for record in reader.records() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::invalid(format!(
                "{}: meta.csv rows need file,domain columns",
                meta_path.display()
            )));
        }
        let domain = Domain::from_str(record[1].trim())?;
        map.insert(record[0].trim().to_string(), domain);
    }
    Ok(map)
}

/// Per-label descriptive statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelStats {
    pub documents: usize,
    pub total_words: usize,
    /// Arithmetic mean, reported to one decimal.
    pub mean_words: f64,
    pub mean_sentences: f64,
}

/// Descriptive statistics over a corpus, per label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub corpus: String,
    pub legitimate: LabelStats,
    pub fake: LabelStats,
}

fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

/// Word and sentence statistics per label. Word counts use the toolkit
/// tokenizer and count alphabetic tokens only, so they are reproducible.
pub fn corpus_stats(corpus: &Corpus) -> Result<CorpusStats> {
    if corpus.is_empty() {
        return Err(Error::degenerate("corpus_stats on empty corpus"));
    }
    let mut per_label: HashMap<Label, (usize, usize, usize)> = HashMap::new();
    for doc in &corpus.documents {
        let text = doc.text(false);
        let words = textproc::tokenize(&text).alphabetic_count();
        let sentences = textproc::split_sentences(&text).len();
        let entry = per_label.entry(doc.label).or_insert((0, 0, 0));
        entry.0 += 1;
        entry.1 += words;
        entry.2 += sentences;
    }
    let build = |label: Label| -> LabelStats {
        let (docs, words, sentences) = per_label.get(&label).copied().unwrap_or((0, 0, 0));
        LabelStats {
            documents: docs,
            total_words: words,
            mean_words: if docs == 0 { 0.0 } else { round1(words as f64 / docs as f64) },
            mean_sentences: if docs == 0 { 0.0 } else { round1(sentences as f64 / docs as f64) },
        }
    };
    Ok(CorpusStats {
        corpus: corpus.name.clone(),
        legitimate: build(Label::Legitimate),
        fake: build(Label::Fake),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn jsonl_loads_in_file_order() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            file,
            r#"{{"id":"a","domain":"sports","label":"legitimate","headline":"H1","body":"B1."}}"#
        )
        .unwrap();
        writeln!(
            file,
            r#"{{"id":"b","domain":"sports","label":"fake","headline":"H2","body":"B2."}}"#
        )
        .unwrap();
        let corpus = load_corpus(file.path(), CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.documents[0].id, "a");
        assert_eq!(corpus.documents[1].id, "b");
        assert_eq!(corpus.documents[1].label, Label::Fake);
    }

    #[test]
    fn bad_label_names_line_and_value() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            file,
            r#"{{"id":"a","domain":"sports","label":"half-true","headline":"","body":"B."}}"#
        )
        .unwrap();
        let err = load_corpus(file.path(), CorpusFormat::Jsonl).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":1:"), "missing line number: {msg}");
        assert!(msg.contains("half-true"), "missing offending value: {msg}");
    }

    #[test]
    fn duplicate_id_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        for _ in 0..2 {
            writeln!(
                file,
                r#"{{"id":"same","domain":"sports","label":"fake","headline":"","body":"B."}}"#
            )
            .unwrap();
        }
        let err = load_corpus(file.path(), CorpusFormat::Jsonl).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn empty_body_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            file,
            r#"{{"id":"a","domain":"sports","label":"fake","headline":"H","body":"  "}}"#
        )
        .unwrap();
        assert!(load_corpus(file.path(), CorpusFormat::Jsonl).is_err());
    }

    #[test]
    fn jsonl_round_trip() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                Document {
                    id: "x".into(),
                    domain: Domain::Celebrity,
                    label: Label::Fake,
                    headline: "Shock claim".into(),
                    body: "It never happened.".into(),
                    parse_trees: Some(vec!["(S (NP (PRP It)))".into()]),
                },
                doc("y", Label::Legitimate, "All quiet."),
            ],
        };
        let mut buf = Vec::new();
        corpus.write_jsonl(&mut buf).unwrap();
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(&buf).unwrap();
        let reloaded = load_corpus(file.path(), CorpusFormat::Jsonl).unwrap();
        assert_eq!(reloaded.documents, corpus.documents);
    }

    #[test]
    fn paired_dirs_layout() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir(dir.path().join("legit")).unwrap();
        fs::create_dir(dir.path().join("fake")).unwrap();
        fs::write(dir.path().join("legit/b.txt"), "Headline B\nBody B.").unwrap();
        fs::write(dir.path().join("legit/a.txt"), "Headline A\nBody A.").unwrap();
        fs::write(dir.path().join("fake/a.txt"), "Fake A\nFake body A.").unwrap();
        fs::write(
            dir.path().join("meta.csv"),
            "file,domain\na.txt,politics\nb.txt,sports\n",
        )
        .unwrap();
        let corpus = load_corpus(dir.path(), CorpusFormat::PairedDirs { domain_override: None })
            .unwrap();
        let ids: Vec<&str> = corpus.documents.iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["legit/a", "legit/b", "fake/a"]);
        assert_eq!(corpus.documents[0].domain, Domain::Politics);
        assert_eq!(corpus.documents[0].headline, "Headline A");
        assert_eq!(corpus.documents[2].label, Label::Fake);
    }

    #[test]
    fn stats_hand_count() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![doc("a", Label::Legitimate, "One two three. Four.")],
        };
        let stats = corpus.stats().unwrap();
        assert_eq!(stats.legitimate.total_words, 4);
        assert_eq!(stats.legitimate.mean_words, 4.0);
        assert_eq!(stats.legitimate.mean_sentences, 2.0);
        assert_eq!(stats.fake.documents, 0);
    }

    #[test]
    fn stats_totals_equal_sum_of_documents() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                doc("a", Label::Fake, "Alpha beta gamma."),
                doc("b", Label::Fake, "Delta epsilon."),
            ],
        };
        let stats = corpus.stats().unwrap();
        let by_hand: usize = corpus
            .documents
            .iter()
            .map(|d| textproc::tokenize(&d.text(false)).alphabetic_count())
            .sum();
        assert_eq!(stats.fake.total_words, by_hand);
        assert_eq!(stats.fake.total_words, 5);
    }
}
