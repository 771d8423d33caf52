//! Deterministic tokenization, sentence splitting, and syllable counting.
//!
//! Every feature extractor in the crate goes through these routines, so the
//! rules are intentionally simple and documented well enough to recompute by
//! hand:
//!
//! * a token is a maximal run of letters, digits, and apostrophes, with
//!   leading/trailing apostrophes trimmed off (they are quote punctuation);
//! * sentences end at `.`, `!`, or `?` followed by whitespace or end of
//!   text, except after a guarded abbreviation or a single initial;
//! * syllables are vowel groups (`a e i o u y`) with a silent final `e`
//!   subtracted unless the word ends in consonant + `le`, minimum one.

use crate::error::{Error, Result};

/// One token of the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// The token exactly as it appears in the text.
    pub surface: String,
    /// Case-folded form of `surface`.
    pub lower: String,
    /// True when the token is made of letters (apostrophes allowed).
    pub alphabetic: bool,
}

/// Ordered tokens of a text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of alphabetic tokens (the denominator for lexicon stats).
    pub fn alphabetic_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.alphabetic).count()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Token> {
        self.tokens.iter()
    }

    /// Lowercased token strings in order.
    pub fn lower_terms(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.lower.as_str())
    }
}

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || is_apostrophe(c)
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Split `text` into tokens.
///
/// Tokens are maximal runs of letters/digits/apostrophes. Internal
/// apostrophes are kept ("don't" is one token); apostrophes at a run
/// boundary are treated as quote punctuation and trimmed. Everything else
/// separates tokens and is left to the punctuation profiler.
pub fn tokenize(text: &str) -> TokenStream {
    let mut tokens = Vec::new();
    let mut run = String::new();
    for c in text.chars() {
        if is_token_char(c) {
            run.push(c);
        } else {
            flush_run(&mut run, &mut tokens);
        }
    }
    flush_run(&mut run, &mut tokens);
    TokenStream { tokens }
}

fn flush_run(run: &mut String, tokens: &mut Vec<Token>) {
    if run.is_empty() {
        return;
    }
    let trimmed = run.trim_matches(is_apostrophe);
    if !trimmed.is_empty() {
        let lower = trimmed.to_lowercase();
        let alphabetic = trimmed.chars().any(|c| c.is_alphabetic())
            && trimmed.chars().all(|c| c.is_alphabetic() || is_apostrophe(c));
        tokens.push(Token {
            surface: trimmed.to_string(),
            lower,
            alphabetic,
        });
    }
    run.clear();
}

/// Abbreviations that keep a following period from ending the sentence.
/// Stored lowercase with internal periods, compared against the word
/// immediately before the period.
const ABBREVIATIONS: &[&str] = &[
    "a.m", "approx", "capt", "co", "col", "corp", "dept", "dr", "e.g", "est", "etc", "fig", "gen",
    "gov", "hon", "i.e", "inc", "jr", "lt", "ltd", "messrs", "mr", "mrs", "ms", "mt", "p.m",
    "ph.d", "prof", "rep", "rev", "sen", "sgt", "sr", "st", "u.k", "u.n", "u.s", "u.s.a", "univ",
    "vol", "vs",
];

fn is_abbreviation(word: &str) -> bool {
    if word.is_empty() {
        return false;
    }
    // Single initials as in "John F. Kennedy".
    let mut chars = word.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if c.is_uppercase() {
            return true;
        }
    }
    let lower = word.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

fn is_closing_char(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

/// Split `text` into sentences.
///
/// A sentence ends at `.`, `!`, or `?` (plus any closing quotes/brackets)
/// followed by whitespace or end of text. Periods after a guarded
/// abbreviation do not split. End of text always closes the last sentence;
/// empty sentences are never returned.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c == '.' || c == '!' || c == '?' {
            // Swallow closing quotes/brackets after the terminator.
            let mut j = i + 1;
            while j < chars.len() && is_closing_char(chars[j].1) {
                j += 1;
            }
            let at_boundary = j >= chars.len() || chars[j].1.is_whitespace();
            let guarded = c == '.' && is_abbreviation(&preceding_word(text, pos));
            if at_boundary && !guarded {
                let end = if j < chars.len() { chars[j].0 } else { text.len() };
                push_sentence(&mut sentences, &text[start..end]);
                start = end;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    push_sentence(&mut sentences, &text[start..]);
    sentences
}

fn push_sentence(sentences: &mut Vec<String>, raw: &str) {
    let trimmed = raw.trim();
    if !trimmed.is_empty() {
        sentences.push(trimmed.to_string());
    }
}

/// The word immediately before byte position `pos` (which holds a period),
/// including internal periods so "U.S." resolves to "U.S".
fn preceding_word(text: &str, pos: usize) -> String {
    let mut word: Vec<char> = Vec::new();
    for c in text[..pos].chars().rev() {
        if c.is_alphanumeric() || c == '.' || is_apostrophe(c) {
            word.push(c);
        } else {
            break;
        }
    }
    word.reverse();
    let s: String = word.into_iter().collect();
    s.trim_matches('.').to_string()
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Count syllables in an alphabetic token.
///
/// Counts vowel groups (`a e i o u y`), subtracts a silent final `e`
/// unless the word ends in a consonant followed by `le`, and never
/// returns less than one.
pub fn count_syllables(word: &str) -> Result<u32> {
    if word.is_empty() {
        return Err(Error::invalid("count_syllables: empty word"));
    }
    let letters: String = word
        .chars()
        .filter(|c| !is_apostrophe(*c))
        .flat_map(|c| c.to_lowercase())
        .collect();
    if letters.is_empty() || !letters.chars().all(|c| c.is_alphabetic()) {
        return Err(Error::invalid(format!(
            "count_syllables: non-alphabetic input {word:?}"
        )));
    }
    let chars: Vec<char> = letters.chars().collect();
    let mut groups = 0u32;
    let mut in_group = false;
    for &c in &chars {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
                in_group = true;
            }
        } else {
            in_group = false;
        }
    }
    let n = chars.len();
    let silent_e = n >= 2
        && chars[n - 1] == 'e'
        && !(n >= 3 && chars[n - 2] == 'l' && !is_vowel(chars[n - 3]));
    if silent_e && groups > 1 {
        groups -= 1;
    }
    Ok(groups.max(1))
}
