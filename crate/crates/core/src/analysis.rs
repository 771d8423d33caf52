//! Legitimate-vs-fake category differences with one-tailed Welch t-tests.
//!
//! For every lexicon category the per-document percentage of matching words
//! is compared between the two classes. The difference is the legitimate
//! mean minus the fake mean, so positive values are legitimate-associated.
//! Significance uses Welch's unequal-variance t statistic with
//! Welch-Satterthwaite degrees of freedom; the t CDF is evaluated through
//! the regularized incomplete beta function (continued fraction), which a
//! numeric-integration oracle can verify independently.

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};
use crate::lexicon::{proportions_for_ids, Lexicon};
use crate::textproc::tokenize;

/// Which tail of the t distribution the p-value covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailDirection {
    /// P(T <= t): evidence that the first sample mean is smaller.
    Less,
    /// P(T >= t): evidence that the first sample mean is larger.
    Greater,
}

/// One category's class difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryDifference {
    pub category: String,
    pub mean_legitimate: f64,
    pub mean_fake: f64,
    /// `mean_legitimate - mean_fake`; positive means legitimate-associated.
    pub difference: f64,
    pub t: f64,
    /// One-tailed p in the direction of the observed difference.
    pub p: f64,
    pub significant: bool,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_variance(xs: &[f64], m: f64) -> f64 {
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Welch's two-sample t statistic and one-tailed p-value.
///
/// Requires at least two observations per sample. When both variances are
/// zero: equal means make the statistic undefined (an error); unequal means
/// give an infinite statistic with p = 0.
pub fn welch_t_one_tailed(a: &[f64], b: &[f64], direction: TailDirection) -> Result<(f64, f64)> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::invalid("welch_t_one_tailed needs >= 2 samples per side"));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a, ma), sample_variance(b, mb));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let sea = va / na;
    let seb = vb / nb;
    let se2 = sea + seb;
    if se2 <= 0.0 {
        if ma == mb {
            return Err(Error::degenerate(
                "both variances zero and means equal: t undefined",
            ));
        }
        let t = if ma > mb { f64::INFINITY } else { f64::NEG_INFINITY };
        let p = match (direction, ma > mb) {
            (TailDirection::Greater, true) | (TailDirection::Less, false) => 0.0,
            _ => 1.0,
        };
        return Ok((t, p));
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    let cdf = student_t_cdf(t, df);
    let p = match direction {
        TailDirection::Less => cdf,
        TailDirection::Greater => 1.0 - cdf,
    };
    Ok((t, p))
}

/// Per-category legitimate-minus-fake differences over a corpus.
///
/// Per-document percentages are 100 x the category proportions; categories
/// with a zero difference are dropped; output is sorted by difference,
/// descending. Each class needs at least two documents.
pub fn category_differences(
    corpus: &Corpus,
    lexicon: &Lexicon,
    alpha: f64,
    body_only: bool,
) -> Result<Vec<CategoryDifference>> {
    let ids: Vec<u32> = lexicon.categories().iter().map(|c| c.id).collect();
    let mut legit_rows: Vec<Vec<f64>> = Vec::new();
    let mut fake_rows: Vec<Vec<f64>> = Vec::new();
    for doc in &corpus.documents {
        let tokens = tokenize(&doc.text(body_only));
        let percents: Vec<f64> = proportions_for_ids(&tokens, lexicon, &ids)
            .into_iter()
            .map(|p| p * 100.0)
            .collect();
        match doc.label {
            Label::Legitimate => legit_rows.push(percents),
            Label::Fake => fake_rows.push(percents),
        }
    }
    if legit_rows.len() < 2 || fake_rows.len() < 2 {
        return Err(Error::invalid(
            "category_differences needs >= 2 documents per class (variance undefined)",
        ));
    }
    let mut out = Vec::new();
    for (col, category) in lexicon.categories().iter().enumerate() {
        let legit: Vec<f64> = legit_rows.iter().map(|r| r[col]).collect();
        let fake: Vec<f64> = fake_rows.iter().map(|r| r[col]).collect();
        let mean_legitimate = mean(&legit);
        let mean_fake = mean(&fake);
        let difference = mean_legitimate - mean_fake;
        if difference == 0.0 {
            continue;
        }
        let direction = if difference > 0.0 { TailDirection::Greater } else { TailDirection::Less };
        let (t, p) = welch_t_one_tailed(&legit, &fake, direction)?;
        out.push(CategoryDifference {
            category: category.name.clone(),
            mean_legitimate,
            mean_fake,
            difference,
            t,
            p,
            significant: p < alpha,
        });
    }
    out.sort_by(|a, b| b.difference.total_cmp(&a.difference));
    Ok(out)
}

/// CDF of Student's t distribution with `df` degrees of freedom.
///
/// Evaluated as a regularized incomplete beta tail:
/// `P(T <= t) = 1/2 I_x(df/2, 1/2)` for `t <= 0` with `x = df/(df + t^2)`.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    let x = df / (df + t * t);
    let tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
    if t <= 0.0 {
        tail
    } else {
        1.0 - tail
    }
}

/// Natural log of the gamma function (Lanczos approximation).
pub fn ln_gamma(x: f64) -> f64 {
    // g = 7, n = 9 coefficients.
    const COEF: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection formula: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.999_999_999_999_809_93;
    for (i, c) in COEF.iter().enumerate() {
        acc += c / (x + (i + 1) as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta function I_x(a, b) by continued fraction.
pub fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 3e-16;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, Domain};
    use crate::lexicon::parse_dictionary;
    use approx::assert_relative_eq;

    #[test]
    fn ln_gamma_matches_closed_forms() {
        // Gamma(n) = (n-1)!, Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2.
        assert_relative_eq!(ln_gamma(1.0), 0.0, epsilon = 1e-12);
        assert_relative_eq!(ln_gamma(5.0), 24.0f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(ln_gamma(10.0), 362880.0f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(
            ln_gamma(0.5),
            std::f64::consts::PI.sqrt().ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            ln_gamma(1.5),
            (std::f64::consts::PI.sqrt() / 2.0).ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn t_cdf_matches_closed_forms() {
        // df = 1 is Cauchy: F(t) = 1/2 + atan(t)/pi.
        for t in [-4.0f64, -1.0, -0.3, 0.0, 0.7, 2.5] {
            let exact = 0.5 + t.atan() / std::f64::consts::PI;
            assert_relative_eq!(student_t_cdf(t, 1.0), exact, epsilon = 1e-12);
        }
        // df = 2: F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
        for t in [-3.0f64, -0.5, 0.0, 1.25, 4.0] {
            let exact = 0.5 + t / (2.0 * (2.0 + t * t).sqrt());
            assert_relative_eq!(student_t_cdf(t, 2.0), exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn welch_hand_case() {
        let (t, p) = welch_t_one_tailed(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], TailDirection::Less)
            .unwrap();
        assert_relative_eq!(t, -3.0 / (2.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        assert_relative_eq!(t, -3.6742, epsilon = 1e-4);
        // df = 4 by Welch-Satterthwaite.
        assert_relative_eq!(p, 0.0106558, epsilon = 1e-6);
    }

    #[test]
    fn copied_samples_give_null_p() {
        let xs = [0.2, 0.5, 0.9, 1.4];
        let (t, p) = welch_t_one_tailed(&xs, &xs, TailDirection::Less).unwrap();
        assert_eq!(t, 0.0);
        assert_relative_eq!(p, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_variances() {
        let same = [2.0, 2.0, 2.0];
        assert!(welch_t_one_tailed(&same, &same, TailDirection::Less).is_err());
        let other = [3.0, 3.0, 3.0];
        let (t, p) = welch_t_one_tailed(&same, &other, TailDirection::Less).unwrap();
        assert!(t.is_infinite() && t < 0.0);
        assert_eq!(p, 0.0);
    }

    fn doc(id: &str, label: Label, body: &str) -> Document {
        Document {
            id: id.to_string(),
            domain: Domain::Celebrity,
            label,
            headline: String::new(),
            body: body.to_string(),
            parse_trees: None,
        }
    }

    const DIC: &str = "%\n1\tposemo\n2\tnegemo\n%\nhappy\t1\ngreat\t1\nsad\t2\nawful\t2\n";

    #[test]
    fn differences_sign_and_sort() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                doc("l1", Label::Legitimate, "sad sad awful news today"),
                doc("l2", Label::Legitimate, "awful and sad outcomes persist"),
                doc("f1", Label::Fake, "happy great wonderful amazing story"),
                doc("f2", Label::Fake, "great happy days ahead for all"),
            ],
        };
        let lexicon = parse_dictionary(DIC).unwrap();
        let diffs = category_differences(&corpus, &lexicon, 0.05, false).unwrap();
        assert_eq!(diffs.len(), 2);
        // Sorted descending: negemo (legit-associated) first.
        assert_eq!(diffs[0].category, "negemo");
        assert!(diffs[0].difference > 0.0);
        assert!(diffs[0].t > 0.0);
        assert_eq!(diffs[1].category, "posemo");
        assert!(diffs[1].difference < 0.0);
        assert!(diffs[1].t < 0.0);
        for d in &diffs {
            assert_relative_eq!(d.difference, d.mean_legitimate - d.mean_fake, epsilon = 1e-12);
        }
    }

    #[test]
    fn identical_classes_yield_nothing() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                doc("l1", Label::Legitimate, "happy sad words"),
                doc("l2", Label::Legitimate, "more happy sad words"),
                doc("f1", Label::Fake, "happy sad words"),
                doc("f2", Label::Fake, "more happy sad words"),
            ],
        };
        let lexicon = parse_dictionary(DIC).unwrap();
        let diffs = category_differences(&corpus, &lexicon, 0.05, false).unwrap();
        assert!(diffs.is_empty());
    }

    #[test]
    fn class_with_one_document_errors() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                doc("l1", Label::Legitimate, "sad news"),
                doc("f1", Label::Fake, "happy story"),
                doc("f2", Label::Fake, "great story"),
            ],
        };
        let lexicon = parse_dictionary(DIC).unwrap();
        assert!(category_differences(&corpus, &lexicon, 0.05, false).is_err());
    }

    #[test]
    fn label_swap_negates_differences() {
        let corpus = Corpus {
            name: "t".into(),
            documents: vec![
                doc("l1", Label::Legitimate, "sad awful news"),
                doc("l2", Label::Legitimate, "sad stories linger"),
                doc("f1", Label::Fake, "happy great tales"),
                doc("f2", Label::Fake, "happy endings everywhere"),
            ],
        };
        let lexicon = parse_dictionary(DIC).unwrap();
        let diffs = category_differences(&corpus, &lexicon, 0.05, false).unwrap();
        let swapped = Corpus {
            name: "t".into(),
            documents: corpus
                .documents
                .iter()
                .map(|d| Document { label: d.label.flip(), ..d.clone() })
                .collect(),
        };
        let sdiffs = category_differences(&swapped, &lexicon, 0.05, false).unwrap();
        for d in &diffs {
            let s = sdiffs.iter().find(|s| s.category == d.category).unwrap();
            assert_relative_eq!(s.difference, -d.difference, epsilon = 1e-12);
            assert_relative_eq!(s.t, -d.t, epsilon = 1e-12);
            assert_relative_eq!(s.p, d.p, epsilon = 1e-12);
        }
    }
}
