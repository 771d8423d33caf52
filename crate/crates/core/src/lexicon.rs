//! LIWC-format category dictionaries and punctuation profiling.
//!
//! A `.dic` file has a `%`-delimited header of `id<TAB>name` lines followed
//! by `word<TAB>id[<TAB>id...]` entries. A trailing `*` on a word makes it a
//! prefix pattern. Matching is exact-first, then the longest matching
//! wildcard prefix, which reproduces the usual LIWC semantics.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc::{tokenize, TokenStream};

/// One declared category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub id: u32,
    pub name: String,
}

/// A parsed category dictionary.
#[derive(Debug, Clone)]
pub struct Lexicon {
    categories: Vec<Category>,
    by_name: HashMap<String, u32>,
    exact: HashMap<String, Vec<u32>>,
    wildcard: HashMap<String, Vec<u32>>,
    wildcard_lens: Vec<usize>,
}

impl Lexicon {
    /// Declared categories in header order.
    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    pub fn category_count(&self) -> usize {
        self.categories.len()
    }

    /// Id of a category by (case-insensitive) name.
    pub fn id_of(&self, name: &str) -> Option<u32> {
        self.by_name.get(&name.to_lowercase()).copied()
    }

    pub fn name_of(&self, id: u32) -> Option<&str> {
        self.categories.iter().find(|c| c.id == id).map(|c| c.name.as_str())
    }

    /// Category ids a lowercased token belongs to. Exact entries win; with
    /// no exact entry the longest wildcard prefix applies.
    pub fn match_token(&self, lower: &str) -> &[u32] {
        if let Some(ids) = self.exact.get(lower) {
            return ids;
        }
        let chars: Vec<(usize, char)> = lower.char_indices().collect();
        for &len in self.wildcard_lens.iter().rev() {
            if len > chars.len() {
                continue;
            }
            let end = if len == chars.len() { lower.len() } else { chars[len].0 };
            if let Some(ids) = self.wildcard.get(&lower[..end]) {
                return ids;
            }
        }
        &[]
    }

    /// True when any entry matches the token.
    pub fn matches_any(&self, lower: &str) -> bool {
        !self.match_token(lower).is_empty()
    }
}

/// Parse a `.dic` dictionary.
pub fn parse_dictionary(text: &str) -> Result<Lexicon> {
    let mut categories: Vec<Category> = Vec::new();
    let mut by_name = HashMap::new();
    let mut declared: HashMap<u32, ()> = HashMap::new();
    let mut exact: HashMap<String, Vec<u32>> = HashMap::new();
    let mut wildcard: HashMap<String, Vec<u32>> = HashMap::new();

    let mut delimiters = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "%" {
            delimiters += 1;
            continue;
        }
        match delimiters {
            0 => {
                return Err(Error::Dictionary {
                    line: lineno,
                    msg: "content before the opening % delimiter".into(),
                })
            }
            1 => {
                // Header: id <TAB> name
                let mut parts = line.split_whitespace();
                let id: u32 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Dictionary {
                        line: lineno,
                        msg: format!("header line is not `id name`: {line:?}"),
                    })?;
                let name = parts.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(Error::Dictionary {
                        line: lineno,
                        msg: format!("category {id} has no name"),
                    });
                }
                if declared.insert(id, ()).is_some() {
                    return Err(Error::Dictionary {
                        line: lineno,
                        msg: format!("category id {id} declared twice"),
                    });
                }
                by_name.insert(name.to_lowercase(), id);
                categories.push(Category { id, name });
            }
            _ => {
                let mut parts = line.split_whitespace();
                let word = parts.next().unwrap().to_lowercase();
                let stars = word.matches('*').count();
                let is_wildcard = word.ends_with('*');
                if stars > 1 || (stars == 1 && !is_wildcard) {
                    return Err(Error::Dictionary {
                        line: lineno,
                        msg: format!("`*` is only allowed word-finally: {word:?}"),
                    });
                }
                let mut ids = Vec::new();
                for part in parts {
                    let id: u32 = part.parse().map_err(|_| Error::Dictionary {
                        line: lineno,
                        msg: format!("bad category id {part:?}"),
                    })?;
                    if !declared.contains_key(&id) {
                        return Err(Error::Dictionary {
                            line: lineno,
                            msg: format!("word {word:?} references undeclared category {id}"),
                        });
                    }
                    if !ids.contains(&id) {
                        ids.push(id);
                    }
                }
                if ids.is_empty() {
                    return Err(Error::Dictionary {
                        line: lineno,
                        msg: format!("word {word:?} lists no categories"),
                    });
                }
                let target = if is_wildcard {
                    wildcard.entry(word[..word.len() - 1].to_string()).or_default()
                } else {
                    exact.entry(word).or_default()
                };
                for id in ids {
                    if !target.contains(&id) {
                        target.push(id);
                    }
                }
            }
        }
    }
    if delimiters < 2 {
        return Err(Error::Dictionary {
            line: text.lines().count(),
            msg: "dictionary needs two % delimiters around the header".into(),
        });
    }
    let mut wildcard_lens: Vec<usize> = wildcard.keys().map(|k| k.chars().count()).collect();
    wildcard_lens.sort_unstable();
    wildcard_lens.dedup();
    Ok(Lexicon {
        categories,
        by_name,
        exact,
        wildcard,
        wildcard_lens,
    })
}

/// The LIWC 2015 linguistic-processes category names (21).
pub const LINGUISTIC_CATEGORIES: [&str; 21] = [
    "function", "pronoun", "ppron", "i", "we", "you", "shehe", "they", "ipron", "article", "prep",
    "auxverb", "adverb", "conj", "negate", "verb", "adj", "compare", "interrog", "number", "quant",
];

/// The LIWC 2015 psychological-processes category names (40).
pub const PSYCHOLOGICAL_CATEGORIES: [&str; 40] = [
    "affect", "posemo", "negemo", "anx", "anger", "sad", "social", "family", "friend", "female",
    "male", "cogproc", "insight", "cause", "discrep", "tentat", "certain", "differ", "percept",
    "see", "hear", "feel", "bio", "body", "health", "sexual", "ingest", "drives", "affiliation",
    "achieve", "power", "reward", "risk", "focuspast", "focuspresent", "focusfuture", "relativ",
    "motion", "space", "time",
];

/// Summary measures that can be computed from open formulas. The remaining
/// LIWC summary variables (clout, authentic, tone) have no public formula
/// and are omitted with a warning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummaryFeature {
    /// Categorical-dynamic index: 30 + article + prep − ppron − ipron −
    /// auxverb − conj − adverb − negate, all in percent of words.
    Analytic,
    WordsPerSentence,
    SixLetterRate,
    DictionaryRate,
}

impl SummaryFeature {
    pub fn name(&self) -> &'static str {
        match self {
            SummaryFeature::Analytic => "analytic",
            SummaryFeature::WordsPerSentence => "wps",
            SummaryFeature::SixLetterRate => "sixltr",
            SummaryFeature::DictionaryRate => "dic",
        }
    }
}

/// Categories the Analytic formula consumes, in formula order:
/// the first two add, the rest subtract.
pub const ANALYTIC_INPUTS: [&str; 8] = [
    "article", "prep", "ppron", "ipron", "auxverb", "conj", "adverb", "negate",
];

/// Named category subsets mirroring the LIWC 2015 groupings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategorySet {
    /// Summary measures (7 in full LIWC; the computable subset here).
    Summary,
    /// Linguistic processes (21).
    Linguistic,
    /// Psychological processes (40).
    Psychological,
    /// Summary + linguistic + psychological + 11 punctuation classes (79).
    Complete,
}

/// A category set resolved against a concrete lexicon.
#[derive(Debug, Clone)]
pub struct CategorySelection {
    pub set: CategorySet,
    /// Resolved word categories as (name, id), in canonical order.
    pub word_categories: Vec<(String, u32)>,
    /// Computable summary features, in canonical order.
    pub summary: Vec<SummaryFeature>,
    /// Summary features requested but not computable from open formulas.
    pub omitted_summary: Vec<String>,
    /// Whether the 11 punctuation classes belong to this set.
    pub include_punctuation: bool,
}

impl CategorySelection {
    /// Number of feature columns this selection produces.
    pub fn effective_dimension(&self) -> usize {
        self.word_categories.len()
            + self.summary.len()
            + if self.include_punctuation { PUNCTUATION_CLASSES } else { 0 }
    }
}

/// Resolve a named subset against `lexicon`.
///
/// Word categories missing from the lexicon are an error listing the
/// missing names. Summary variables without an open formula are omitted
/// with a warning and recorded in `omitted_summary`.
pub fn select_categories(lexicon: &Lexicon, set: CategorySet) -> Result<CategorySelection> {
    let wants_summary = matches!(set, CategorySet::Summary | CategorySet::Complete);
    let mut names: Vec<&str> = Vec::new();
    if matches!(set, CategorySet::Linguistic | CategorySet::Complete) {
        names.extend(LINGUISTIC_CATEGORIES);
    }
    if matches!(set, CategorySet::Psychological | CategorySet::Complete) {
        names.extend(PSYCHOLOGICAL_CATEGORIES);
    }

    let mut word_categories = Vec::new();
    let mut missing = Vec::new();
    for name in names {
        match lexicon.id_of(name) {
            Some(id) => word_categories.push((name.to_string(), id)),
            None => missing.push(name.to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCategories(missing));
    }

    let mut summary = Vec::new();
    let mut omitted_summary = Vec::new();
    if wants_summary {
        let analytic_ok = ANALYTIC_INPUTS.iter().all(|n| lexicon.id_of(n).is_some());
        if analytic_ok {
            summary.push(SummaryFeature::Analytic);
        } else {
            omitted_summary.push("analytic".to_string());
        }
        summary.push(SummaryFeature::WordsPerSentence);
        summary.push(SummaryFeature::SixLetterRate);
        summary.push(SummaryFeature::DictionaryRate);
        for closed in ["clout", "authentic", "tone"] {
            omitted_summary.push(closed.to_string());
        }
        log::warn!(
            "summary categories without an open formula are omitted: {}",
            omitted_summary.join(", ")
        );
    }

    Ok(CategorySelection {
        set,
        word_categories,
        summary,
        omitted_summary,
        include_punctuation: matches!(set, CategorySet::Complete),
    })
}

/// Fraction of alphabetic tokens matching each selected word category.
///
/// A token may count toward several categories (one dictionary entry can
/// carry several ids). An empty token stream gives all zeros.
pub fn category_proportions(
    tokens: &TokenStream,
    lexicon: &Lexicon,
    selection: &CategorySelection,
) -> Vec<f64> {
    let ids: Vec<u32> = selection.word_categories.iter().map(|(_, id)| *id).collect();
    proportions_for_ids(tokens, lexicon, &ids)
}

/// Fraction of alphabetic tokens matching each of `ids`.
pub fn proportions_for_ids(tokens: &TokenStream, lexicon: &Lexicon, ids: &[u32]) -> Vec<f64> {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    let mut total = 0usize;
    for token in tokens.iter().filter(|t| t.alphabetic) {
        total += 1;
        for id in lexicon.match_token(&token.lower) {
            *counts.entry(*id).or_insert(0) += 1;
        }
    }
    ids.iter()
        .map(|id| {
            if total == 0 {
                0.0
            } else {
                counts.get(id).copied().unwrap_or(0) as f64 / total as f64
            }
        })
        .collect()
}

/// Number of punctuation classes in a profile.
pub const PUNCTUATION_CLASSES: usize = 11;

/// Column names of the punctuation profile, in order.
pub const PUNCTUATION_NAMES: [&str; PUNCTUATION_CLASSES] = [
    "period",
    "comma",
    "colon",
    "semicolon",
    "question",
    "exclamation",
    "dash",
    "quote",
    "apostrophe",
    "parenthesis",
    "other_punct",
];

/// Punctuation counts normalized per 100 tokens.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PunctuationProfile {
    pub period: f64,
    pub comma: f64,
    pub colon: f64,
    pub semicolon: f64,
    pub question: f64,
    pub exclamation: f64,
    pub dash: f64,
    pub quote: f64,
    pub apostrophe: f64,
    pub parenthesis: f64,
    pub other_punct: f64,
}

impl PunctuationProfile {
    pub fn as_array(&self) -> [f64; PUNCTUATION_CLASSES] {
        [
            self.period,
            self.comma,
            self.colon,
            self.semicolon,
            self.question,
            self.exclamation,
            self.dash,
            self.quote,
            self.apostrophe,
            self.parenthesis,
            self.other_punct,
        ]
    }
}

/// Count the 11 punctuation classes in `text`, normalized per 100 tokens.
/// Text without tokens gets a zero profile.
pub fn punctuation_profile(text: &str) -> PunctuationProfile {
    let token_count = tokenize(text).len();
    let mut raw = [0usize; PUNCTUATION_CLASSES];
    for c in text.chars() {
        if let Some(class) = punctuation_class(c) {
            raw[class] += 1;
        }
    }
    if token_count == 0 {
        return PunctuationProfile::default();
    }
    let scale = 100.0 / token_count as f64;
    let v: Vec<f64> = raw.iter().map(|&n| n as f64 * scale).collect();
    PunctuationProfile {
        period: v[0],
        comma: v[1],
        colon: v[2],
        semicolon: v[3],
        question: v[4],
        exclamation: v[5],
        dash: v[6],
        quote: v[7],
        apostrophe: v[8],
        parenthesis: v[9],
        other_punct: v[10],
    }
}

fn punctuation_class(c: char) -> Option<usize> {
    match c {
        '.' => Some(0),
        ',' => Some(1),
        ':' => Some(2),
        ';' => Some(3),
        '?' => Some(4),
        '!' => Some(5),
        '-' | '\u{2013}' | '\u{2014}' => Some(6),
        '"' | '\u{201c}' | '\u{201d}' | '\u{2018}' => Some(7),
        '\'' | '\u{2019}' => Some(8),
        '(' | ')' => Some(9),
        _ => {
            if c.is_alphanumeric() || c.is_whitespace() {
                None
            } else {
                Some(10)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY_DIC: &str = "%\n1\tposemo\n2\tnegemo\n%\nhapp*\t1\nsad\t2\ngrief\t2\n";

    #[test]
    fn parse_minimal_dictionary() {
        let lex = parse_dictionary(TINY_DIC).unwrap();
        assert_eq!(lex.category_count(), 2);
        assert_eq!(lex.id_of("posemo"), Some(1));
        assert_eq!(lex.match_token("happiness"), &[1]);
        assert_eq!(lex.match_token("sad"), &[2]);
        assert!(lex.match_token("table").is_empty());
    }

    #[test]
    fn undeclared_id_is_an_error() {
        let err = parse_dictionary("%\n1\tposemo\n%\nsad\t1\t2\n").unwrap_err();
        assert!(err.to_string().contains('2'), "{err}");
    }

    #[test]
    fn missing_delimiters_rejected() {
        assert!(parse_dictionary("1\tposemo\nsad\t1\n").is_err());
        assert!(parse_dictionary("%\n1\tposemo\nsad\t1\n").is_err());
    }

    #[test]
    fn interior_star_rejected() {
        let err = parse_dictionary("%\n1\tposemo\n%\nha*py\t1\n").unwrap_err();
        assert!(err.to_string().contains("word-finally"));
    }

    #[test]
    fn exact_beats_wildcard_and_longest_prefix_wins() {
        let dic = "%\n1\ta\n2\tb\n3\tc\n%\nhapp*\t1\nhappy\t2\nhappie*\t3\n";
        let lex = parse_dictionary(dic).unwrap();
        assert_eq!(lex.match_token("happy"), &[2]); // exact
        assert_eq!(lex.match_token("happier"), &[3]); // longest prefix
        assert_eq!(lex.match_token("happen"), &[1]); // shorter prefix
    }

    #[test]
    fn proportions_hand_match() {
        let lex = parse_dictionary(TINY_DIC).unwrap();
        let tokens = tokenize("happy happier sad");
        let props = proportions_for_ids(&tokens, &lex, &[1, 2]);
        assert!((props[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((props[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_and_unmatched_documents_are_zero() {
        let lex = parse_dictionary(TINY_DIC).unwrap();
        let empty = tokenize("");
        assert_eq!(proportions_for_ids(&empty, &lex, &[1, 2]), vec![0.0, 0.0]);
        let unmatched = tokenize("run");
        assert_eq!(proportions_for_ids(&unmatched, &lex, &[1, 2]), vec![0.0, 0.0]);
    }

    #[test]
    fn wildcard_equals_brute_force_prefix_match() {
        let lex = parse_dictionary(TINY_DIC).unwrap();
        let words = ["happy", "happier", "happen", "sad", "sadness", "hap", "grief"];
        for w in words {
            let brute = w.starts_with("happ");
            let matched = lex.match_token(w).contains(&1);
            assert_eq!(matched, brute, "token {w}");
        }
    }

    #[test]
    fn punctuation_hand_count() {
        let profile = punctuation_profile("Hello, world!");
        assert_eq!(profile.comma, 50.0);
        assert_eq!(profile.exclamation, 50.0);
        assert_eq!(profile.period, 0.0);
    }

    #[test]
    fn punctuation_zero_token_text() {
        assert_eq!(punctuation_profile(""), PunctuationProfile::default());
        assert_eq!(punctuation_profile("!!!"), PunctuationProfile::default());
    }

    #[test]
    fn other_punct_excludes_named_classes() {
        let profile = punctuation_profile("a & b");
        assert_eq!(profile.other_punct, 50.0);
        let named = punctuation_profile("a . b");
        assert_eq!(named.other_punct, 0.0);
        assert_eq!(named.period, 50.0);
    }

    #[test]
    fn selector_reports_missing_categories() {
        let lex = parse_dictionary(TINY_DIC).unwrap();
        let err = select_categories(&lex, CategorySet::Psychological).unwrap_err();
        match err {
            Error::MissingCategories(names) => {
                assert!(names.contains(&"cogproc".to_string()));
                assert!(!names.contains(&"posemo".to_string()));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn summary_selection_reports_effective_dimension() {
        // Declare everything Analytic needs plus one extra.
        let mut dic = String::from("%\n");
        for (i, name) in ANALYTIC_INPUTS.iter().enumerate() {
            dic.push_str(&format!("{}\t{}\n", i + 1, name));
        }
        dic.push_str("9\tposemo\n%\nthe\t1\nhappy\t9\n");
        let lex = parse_dictionary(&dic).unwrap();
        let sel = select_categories(&lex, CategorySet::Summary).unwrap();
        assert_eq!(sel.summary.len(), 4); // analytic, wps, sixltr, dic
        assert_eq!(sel.omitted_summary, ["clout", "authentic", "tone"]);
        assert_eq!(sel.effective_dimension(), 4);
        assert!(!sel.include_punctuation);
    }
}
