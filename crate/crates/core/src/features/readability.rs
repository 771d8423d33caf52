//! The 26-column readability battery.
//!
//! Counts come from the toolkit tokenizer and sentence splitter so every
//! value can be recomputed by hand:
//!
//! * `letters` counts alphanumeric characters inside tokens (the ARI
//!   character count);
//! * `syllables` sums the heuristic counter over alphabetic tokens;
//! * a complex word has three or more syllables, a long word more than
//!   six letters;
//! * the four indices are Flesch Reading Ease, Flesch-Kincaid grade,
//!   Gunning Fog, and the Automated Readability Index.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::textproc::{count_syllables, split_sentences, tokenize};

/// Number of readability columns.
pub const DIMENSION: usize = 26;

/// Column names, in output order.
pub const COLUMN_NAMES: [&str; DIMENSION] = [
    "chars",
    "letters",
    "tokens",
    "types",
    "type_token_ratio",
    "sentences",
    "paragraphs",
    "syllables",
    "mean_word_length",
    "mean_sentence_length",
    "syllables_per_word",
    "complex_words",
    "complex_word_ratio",
    "long_words",
    "long_word_ratio",
    "chars_per_100_tokens",
    "letters_per_100_tokens",
    "sentences_per_100_tokens",
    "paragraphs_per_100_tokens",
    "syllables_per_100_tokens",
    "complex_words_per_100_tokens",
    "long_words_per_100_tokens",
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "gunning_fog",
    "automated_readability_index",
];

/// Paragraphs are blocks of non-blank lines separated by blank lines.
fn count_paragraphs(text: &str) -> usize {
    let mut count = 0;
    let mut in_block = false;
    for line in text.lines() {
        if line.trim().is_empty() {
            in_block = false;
        } else if !in_block {
            count += 1;
            in_block = true;
        }
    }
    count
}

/// Compute the 26 readability features for a text.
///
/// Errors when the text has no tokens or no sentences (all denominators
/// would be degenerate).
pub fn readability_features(text: &str) -> Result<[f64; DIMENSION]> {
    let stream = tokenize(text);
    let sentences = split_sentences(text);

    let token_count = stream.len();
    let sentence_count = sentences.len();
    if token_count == 0 || sentence_count == 0 {
        return Err(Error::degenerate(
            "readability needs at least one token and one sentence",
        ));
    }

    let chars = text.chars().filter(|c| !c.is_whitespace()).count();
    let mut letters = 0usize;
    let mut syllables = 0u64;
    let mut complex_words = 0usize;
    let mut long_words = 0usize;
    let mut types: HashSet<&str> = HashSet::new();
    for token in stream.iter() {
        let token_letters = token.surface.chars().filter(|c| c.is_alphanumeric()).count();
        letters += token_letters;
        if token_letters > 6 {
            long_words += 1;
        }
        if token.alphabetic {
            let s = count_syllables(&token.lower)?;
            syllables += u64::from(s);
            if s >= 3 {
                complex_words += 1;
            }
        }
        types.insert(token.lower.as_str());
    }
    let paragraphs = count_paragraphs(text);

    let w = token_count as f64;
    let s = sentence_count as f64;
    let syl = syllables as f64;
    let per100 = 100.0 / w;

    let words_per_sentence = w / s;
    let syllables_per_word = syl / w;
    let complex_ratio = complex_words as f64 / w;

    let fre = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
    let fkgl = 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59;
    let fog = 0.4 * (words_per_sentence + 100.0 * complex_ratio);
    let ari = 4.71 * (letters as f64 / w) + 0.5 * words_per_sentence - 21.43;

    Ok([
        chars as f64,
        letters as f64,
        w,
        types.len() as f64,
        types.len() as f64 / w,
        s,
        paragraphs as f64,
        syl,
        letters as f64 / w,
        words_per_sentence,
        syllables_per_word,
        complex_words as f64,
        complex_ratio,
        long_words as f64,
        long_words as f64 / w,
        chars as f64 * per100,
        letters as f64 * per100,
        s * per100,
        paragraphs as f64 * per100,
        syl * per100,
        complex_words as f64 * per100,
        long_words as f64 * per100,
        fre,
        fkgl,
        fog,
        ari,
    ])
}

/// Index of a named column.
pub fn column(name: &str) -> Option<usize> {
    COLUMN_NAMES.iter().position(|&n| n == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn feature(text: &str, name: &str) -> f64 {
        readability_features(text).unwrap()[column(name).unwrap()]
    }

    #[test]
    fn cat_mat_hand_values() {
        // "The cat sat on the mat." by hand: 6 tokens, 1 sentence,
        // 17 letters, 6 syllables, no complex words.
        let text = "The cat sat on the mat.";
        assert_eq!(feature(text, "tokens"), 6.0);
        assert_eq!(feature(text, "letters"), 17.0);
        assert_eq!(feature(text, "sentences"), 1.0);
        assert_eq!(feature(text, "syllables"), 6.0);
        assert_relative_eq!(feature(text, "flesch_reading_ease"), 116.145, epsilon = 1e-9);
        assert_relative_eq!(feature(text, "flesch_kincaid_grade"), -1.45, epsilon = 1e-9);
        assert_relative_eq!(feature(text, "gunning_fog"), 2.4, epsilon = 1e-9);
        assert_relative_eq!(
            feature(text, "automated_readability_index"),
            4.71 * (17.0 / 6.0) + 0.5 * 6.0 - 21.43,
            epsilon = 1e-9
        );
    }

    #[test]
    fn type_token_ratio_counts_distinct_lowercase() {
        let text = "The cat saw the Cat.";
        assert_eq!(feature(text, "tokens"), 5.0);
        assert_eq!(feature(text, "types"), 3.0);
        assert_relative_eq!(feature(text, "type_token_ratio"), 0.6, epsilon = 1e-12);
    }

    #[test]
    fn paragraph_counting() {
        assert_eq!(feature("One block here.", "paragraphs"), 1.0);
        assert_eq!(feature("Block one.\n\nBlock two.", "paragraphs"), 2.0);
        assert_eq!(feature("Headline\nStill same block.", "paragraphs"), 1.0);
    }

    #[test]
    fn complex_and_long_words() {
        let text = "Determination requires unusual effort.";
        // determination (5 syl), requires (3), unusual (3) are complex.
        assert_eq!(feature(text, "complex_words"), 3.0);
        // determination (13 letters), requires (8), unusual (7) are long.
        assert_eq!(feature(text, "long_words"), 3.0);
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(readability_features("").is_err());
        assert!(readability_features("!!! ???").is_err());
    }

    proptest! {
        /// Duplicating spaces/tabs never changes any readability value.
        #[test]
        fn invariant_under_whitespace_duplication(
            words in prop::collection::vec("[a-zA-Z]{1,8}", 1..12),
            pad in 1usize..4,
        ) {
            let text = words.join(" ") + ".";
            let padded = words.join(&" ".repeat(pad + 1)) + ".";
            let a = readability_features(&text).unwrap();
            let b = readability_features(&padded).unwrap();
            for (x, y) in a.iter().zip(b.iter()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
