//! Per-word statistics and the per-position value series that drives graph
//! construction.
//!
//! The central quantity is the occurrence-fluctuation estimator `sigma`: the
//! coefficient of variation of the gaps between consecutive occurrences of a
//! word. Words that recur at even intervals (function words, mostly) score
//! near zero; words that cluster score high. Words seen at most once have no
//! gaps at all and are assigned `sigma = 0` so they sort with the most
//! regular words rather than being dropped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, WordId};
use crate::error::{Error, Result};

/// Positions of every occurrence of every word, indexed by [`WordId`].
/// Position lists are strictly increasing by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    positions: Vec<Vec<u32>>,
}

impl OccurrenceIndex {
    /// Number of distinct words indexed.
    pub fn word_count(&self) -> usize {
        self.positions.len()
    }

    /// Token positions at which `word` occurs, ascending.
    ///
    /// # Panics
    ///
    /// Panics if `word` did not come from the indexed document.
    pub fn positions(&self, word: WordId) -> &[u32] {
        &self.positions[word.0 as usize]
    }

    /// How many times `word` occurs.
    pub fn occurrence_count(&self, word: WordId) -> usize {
        self.positions(word).len()
    }

    /// Iterate `(word, positions)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (WordId, &[u32])> {
        self.positions
            .iter()
            .enumerate()
            .map(|(i, p)| (WordId(i as u32), p.as_slice()))
    }
}

/// Build the occurrence index of a document in one pass.
pub fn occurrence_index(doc: &Document) -> OccurrenceIndex {
    let mut positions = vec![Vec::new(); doc.word_count()];
    for (pos, &word) in doc.tokens().iter().enumerate() {
        positions[word.0 as usize].push(pos as u32);
    }
    OccurrenceIndex { positions }
}

/// Differences between consecutive positions. Errors if the positions are
/// not strictly increasing, since a gap of zero or less is meaningless.
pub fn gap_series(positions: &[u32]) -> Result<Vec<u64>> {
    for pair in positions.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::NonIncreasingPositions {
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    Ok(positions
        .windows(2)
        .map(|pair| u64::from(pair[1] - pair[0]))
        .collect())
}

/// Occurrence-fluctuation estimator over a word's occurrence positions:
///
/// ```text
/// sigma = sqrt(<gap^2> - <gap>^2) / <gap>
/// ```
///
/// with population moments over the `K - 1` gaps of a word occurring `K`
/// times. Words with fewer than two occurrences get `sigma = 0`.
pub fn sigma(positions: &[u32]) -> Result<f64> {
    Ok(sigma_of_gaps(&gap_series(positions)?))
}

fn sigma_of_gaps(gaps: &[u64]) -> f64 {
    if gaps.is_empty() {
        return 0.0;
    }
    let n = gaps.len() as f64;
    let mean = gaps.iter().map(|&g| g as f64).sum::<f64>() / n;
    let mean_sq = gaps.iter().map(|&g| (g as f64) * (g as f64)).sum::<f64>() / n;
    // Rounding can push the variance a hair below zero when all gaps are
    // equal; clamp so sqrt stays real.
    let variance = (mean_sq - mean * mean).max(0.0);
    variance.sqrt() / mean
}

/// Gap statistics of one word, ready for export.
#[derive(Debug, Clone, PartialEq)]
pub struct GapStats {
    pub word: WordId,
    /// Occurrence count `K`; the word has `K - 1` gaps.
    pub occurrences: usize,
    pub gaps: Vec<u64>,
    /// Mean gap, `0.0` when there are no gaps.
    pub mean_gap: f64,
    pub sigma: f64,
}

impl GapStats {
    pub fn from_positions(word: WordId, positions: &[u32]) -> Result<Self> {
        let gaps = gap_series(positions)?;
        let mean_gap = if gaps.is_empty() {
            0.0
        } else {
            gaps.iter().map(|&g| g as f64).sum::<f64>() / gaps.len() as f64
        };
        let sigma = sigma_of_gaps(&gaps);
        Ok(GapStats {
            word,
            occurrences: positions.len(),
            gaps,
            mean_gap,
            sigma,
        })
    }
}

/// How each token position is mapped to a number before graph construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    /// The occurrence-fluctuation estimator of the word at that position.
    Sigma,
    /// The word's total occurrence count.
    Frequency,
    /// The word's length in characters.
    WordLength,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [
        WeightScheme::Sigma,
        WeightScheme::Frequency,
        WeightScheme::WordLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Sigma => "sigma",
            WeightScheme::Frequency => "frequency",
            WeightScheme::WordLength => "word_length",
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightScheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown weighting scheme \"{s}\": valid schemes are sigma, frequency, \
                     word_length"
                ))
            })
    }
}

/// One value per token position, all non-negative and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSeries {
    values: Vec<f64>,
    scheme: WeightScheme,
}

impl ValueSeries {
    /// Wrap raw values, rejecting anything negative, infinite, or NaN.
    pub fn new(values: Vec<f64>, scheme: WeightScheme) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidSeriesValue { index, value });
            }
        }
        Ok(ValueSeries { values, scheme })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
    }
}

/// Map every token position of a document to the value of its word under
/// the chosen scheme. All occurrences of a word get the same value.
pub fn value_series(doc: &Document, scheme: WeightScheme) -> ValueSeries {
    let index = occurrence_index(doc);
    let per_word: Vec<f64> = match scheme {
        WeightScheme::Sigma => index
            .iter()
            // Positions come straight from the index, so they are strictly
            // increasing and sigma cannot fail.
            .map(|(_, positions)| sigma(positions).expect("index positions are increasing"))
            .collect(),
        WeightScheme::Frequency => index
            .iter()
            .map(|(_, positions)| positions.len() as f64)
            .collect(),
        WeightScheme::WordLength => doc
            .words()
            .iter()
            .map(|w| w.chars().count() as f64)
            .collect(),
    };
    let values = doc
        .tokens()
        .iter()
        .map(|&t| per_word[t.0 as usize])
        .collect();
    ValueSeries { values, scheme }
}
