//! Distribution statistics, power-law and Zipf diagnostics, and the
//! keyword report.
//!
//! The report machinery compares two rankings of the same vocabulary: Λ,
//! the top words of the compactified visibility graph, and Ψ, the top
//! words of the simple adjacency baseline. Function words dominate both
//! lists; the difference Ω = Λ \ Ψ strips them away and keeps the
//! content words, with no stopword list involved.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::corpus::{Document, WordId};
use crate::error::{Error, Result};
use crate::graph::{GraphKind, WeightKind, WordGraph};
use crate::weighting::occurrence_index;

/// Minimum number of distinct positive-CCDF points a power-law fit needs.
pub const MIN_FIT_POINTS: usize = 5;

/// Empirical distribution of a per-node measure: histogram plus the
/// complementary CDF `1 - F(k)`, where `F(k)` is the fraction of nodes
/// with measure at most `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    histogram: BTreeMap<u64, usize>,
    ccdf: Vec<(u64, f64)>,
    n_nodes: usize,
    weight_kind: WeightKind,
}

impl DegreeDistribution {
    /// Build from raw per-node measures. Errors on an empty collection.
    pub fn from_measures<I>(measures: I, weight_kind: WeightKind) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
        for m in measures {
            *histogram.entry(m).or_insert(0) += 1;
        }
        Self::from_histogram(histogram, weight_kind)
    }

    /// Build from an already-counted histogram. Errors if it is empty.
    pub fn from_histogram(
        histogram: BTreeMap<u64, usize>,
        weight_kind: WeightKind,
    ) -> Result<Self> {
        let n_nodes: usize = histogram.values().sum();
        if n_nodes == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut ccdf = Vec::with_capacity(histogram.len());
        let mut at_or_below = 0usize;
        for (&k, &count) in &histogram {
            at_or_below += count;
            ccdf.push((k, (n_nodes - at_or_below) as f64 / n_nodes as f64));
        }
        Ok(DegreeDistribution {
            histogram,
            ccdf,
            n_nodes,
            weight_kind,
        })
    }

    pub fn histogram(&self) -> &BTreeMap<u64, usize> {
        &self.histogram
    }

    /// `(k, 1 - F(k))` points at every observed measure, ascending in `k`.
    /// The last point is always zero.
    pub fn ccdf(&self) -> &[(u64, f64)] {
        &self.ccdf
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weight_kind
    }
}

/// Distribution of a graph's per-node measure. Only the two structural
/// measures make sense here; frequency distributions belong to Zipf.
pub fn degree_distribution(g: &WordGraph, weight_kind: WeightKind) -> Result<DegreeDistribution> {
    if weight_kind == WeightKind::Frequency {
        return Err(Error::InvalidArgument(
            "degree distributions are defined for weight kinds degree and strength".into(),
        ));
    }
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let measures = (0..g.node_count() as u32).map(|id| {
        g.node_weight(WordId(id), weight_kind)
            .expect("node ids below node_count are valid")
    });
    DegreeDistribution::from_measures(measures, weight_kind)
}

/// Result of fitting a power law to a distribution tail. Two estimators
/// are reported side by side, neither privileged: the least-squares slope
/// of the log-log CCDF, and the continuous maximum-likelihood exponent
/// `1 + n / sum(ln(k_i / k_min))` over the raw tail measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Slope of the log-log CCDF line; about `-(gamma - 1)` for an ideal
    /// power law with density exponent `gamma`.
    pub exponent_ls: f64,
    /// Continuous MLE of the density exponent `gamma`.
    pub exponent_mle: f64,
    pub k_min: u64,
    /// Coefficient of determination of the log-log line.
    pub r_squared: f64,
    /// Distinct CCDF points entering the least-squares fit.
    pub points_used: usize,
    /// Nodes with measure at least `k_min` (the MLE sample size).
    pub tail_nodes: usize,
}

/// Fit a power law to the tail `k >= k_min` of a distribution.
///
/// Points with zero CCDF carry no information on a log scale and are
/// excluded. Needs at least [`MIN_FIT_POINTS`] usable points.
pub fn fit_power_law(dist: &DegreeDistribution, k_min: u64) -> Result<PowerLawFit> {
    if k_min == 0 {
        return Err(Error::InvalidArgument("k_min must be at least 1".into()));
    }
    let points: Vec<(f64, f64)> = dist
        .ccdf()
        .iter()
        .filter(|&&(k, p)| k >= k_min && p > 0.0)
        .map(|&(k, p)| ((k as f64).ln(), p.ln()))
        .collect();
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientFitPoints {
            have: points.len(),
            need: MIN_FIT_POINTS,
            k_min,
        });
    }
    let (slope, _, r_squared) = linear_fit(&points);

    let mut tail_nodes = 0usize;
    let mut sum_log = 0.0f64;
    for (&k, &count) in dist.histogram().range(k_min..) {
        tail_nodes += count;
        sum_log += count as f64 * ((k as f64) / (k_min as f64)).ln();
    }
    // With MIN_FIT_POINTS distinct positive-CCDF points there is always
    // mass strictly above k_min, so the MLE denominator cannot vanish.
    debug_assert!(sum_log > 0.0);
    let exponent_mle = 1.0 + tail_nodes as f64 / sum_log;

    Ok(PowerLawFit {
        exponent_ls: slope,
        exponent_mle,
        k_min,
        r_squared,
        points_used: points.len(),
        tail_nodes,
    })
}

/// Ordinary least squares over `(x, y)` points: `(slope, intercept, r²)`.
/// `r²` is defined as 1 when the points have no vertical spread.
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let sum_x: f64 = points.iter().map(|p| p.0).sum();
    let sum_y: f64 = points.iter().map(|p| p.1).sum();
    let mean_x = sum_x / n;
    let mean_y = sum_y / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, intercept, r_squared)
}

/// One row of the rank-frequency table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZipfEntry {
    /// 1-based rank.
    pub rank: usize,
    pub word: String,
    pub frequency: u32,
}

/// Rank every distinct word by occurrence count, descending, ties broken
/// lexicographically. Errors on an empty document.
pub fn zipf_rank_frequency(doc: &Document) -> Result<Vec<ZipfEntry>> {
    if doc.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let index = occurrence_index(doc);
    let mut rows: Vec<(u32, &str)> = index
        .iter()
        .map(|(w, positions)| (positions.len() as u32, doc.word(w)))
        .collect();
    rows.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(i, (frequency, word))| ZipfEntry {
            rank: i + 1,
            word: word.to_string(),
            frequency,
        })
        .collect())
}

/// Log-log least-squares slope of the rank-frequency table over ranks in
/// `[rank_lo, rank_hi]`. Ranks beyond the table are ignored; at least two
/// entries must remain.
pub fn zipf_slope(entries: &[ZipfEntry], rank_lo: usize, rank_hi: usize) -> Result<f64> {
    if rank_lo == 0 || rank_lo > rank_hi {
        return Err(Error::InvalidArgument(format!(
            "invalid rank window {rank_lo}..{rank_hi}: ranks are 1-based and the window must \
             not be empty"
        )));
    }
    let points: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.rank >= rank_lo && e.rank <= rank_hi)
        .map(|e| ((e.rank as f64).ln(), f64::from(e.frequency).ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::InsufficientFitPoints {
            have: points.len(),
            need: 2,
            k_min: rank_lo as u64,
        });
    }
    Ok(linear_fit(&points).0)
}

/// One ranked word with the weight that ranked it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedWord {
    pub word: String,
    pub weight: u64,
}

/// First `min(n, node count)` words by the chosen measure, descending,
/// ties broken lexicographically by normalized form.
pub fn top_n(g: &WordGraph, n: usize, weight_kind: WeightKind) -> Result<Vec<RankedWord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rows: Vec<(u64, &str)> = (0..g.node_count() as u32)
        .map(|id| {
            let w = WordId(id);
            let weight = g
                .node_weight(w, weight_kind)
                .expect("node ids below node_count are valid");
            (weight, g.word(w))
        })
        .collect();
    rows.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    rows.truncate(n);
    Ok(rows
        .into_iter()
        .map(|(weight, word)| RankedWord {
            word: word.to_string(),
            weight,
        })
        .collect())
}

/// The Λ / Ψ / Ω keyword report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeywordReport {
    /// Requested list length (actual lists hold `min(n, node count)`).
    pub n: usize,
    /// Measure ranking the visibility-graph side Λ.
    pub lambda_weight: WeightKind,
    /// Measure ranking the adjacency side Ψ.
    pub psi_weight: WeightKind,
    /// Top words of the compactified visibility graph.
    pub lambda: Vec<RankedWord>,
    /// Top words of the simple adjacency network.
    pub psi: Vec<RankedWord>,
    /// Λ \ Ψ in Λ order: the extracted keywords.
    pub omega: Vec<RankedWord>,
    pub source_name: String,
    pub n_source_tokens: usize,
    pub tokenizer: crate::corpus::TokenizerConfig,
}

/// Compare the two graph rankings and keep what the visibility graph
/// promotes but plain adjacency does not.
pub fn keyword_report(
    chvg: &WordGraph,
    adjacency: &WordGraph,
    n: usize,
    weights: (WeightKind, WeightKind),
) -> Result<KeywordReport> {
    if chvg.kind() != GraphKind::Chvg {
        return Err(Error::WrongGraphKind {
            expected: GraphKind::Chvg.name().into(),
            got: chvg.kind().name().into(),
        });
    }
    if adjacency.kind() != GraphKind::Adjacency {
        return Err(Error::WrongGraphKind {
            expected: GraphKind::Adjacency.name().into(),
            got: adjacency.kind().name().into(),
        });
    }
    if !chvg.same_source(adjacency) {
        return Err(Error::SourceMismatch);
    }
    let (lambda_weight, psi_weight) = weights;
    let lambda = top_n(chvg, n, lambda_weight)?;
    let psi = top_n(adjacency, n, psi_weight)?;
    let psi_words: BTreeSet<&str> = psi.iter().map(|r| r.word.as_str()).collect();
    let omega = lambda
        .iter()
        .filter(|r| !psi_words.contains(r.word.as_str()))
        .cloned()
        .collect();
    Ok(KeywordReport {
        n,
        lambda_weight,
        psi_weight,
        lambda,
        psi,
        omega,
        source_name: chvg.source_name().to_string(),
        n_source_tokens: chvg.n_source_tokens(),
        tokenizer: chvg.tokenizer().clone(),
    })
}
