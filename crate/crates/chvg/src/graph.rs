//! Compactification: collapse a graph over token positions into a graph
//! over distinct words.
//!
//! All occurrences of a word merge into one node. Edges between two
//! occurrences of the same word vanish, and parallel edges between two
//! words collapse into one. Each word node keeps two measures from stage
//! one: its *degree* (distinct neighbor words after collapsing) and its
//! *strength* (the sum of the stage-one degrees of all its occurrences,
//! counted before any edge is dropped). Strength therefore satisfies the
//! handshake identity `sum(strength) = 2 * stage_one_edge_count` and always
//! bounds the degree from above.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, TokenizerConfig, WordId};
use crate::error::{Error, Result};
use crate::hvg::{path_graph, OccurrenceGraph};

/// Which stage-one graph a word graph was compacted from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// Compactified horizontal visibility graph.
    Chvg,
    /// Compactified simple adjacency (path) graph.
    Adjacency,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Chvg => "chvg",
            GraphKind::Adjacency => "adjacency",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Node measure used for ranking and distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Degree,
    Strength,
    Frequency,
}

impl WeightKind {
    pub const ALL: [WeightKind; 3] = [
        WeightKind::Degree,
        WeightKind::Strength,
        WeightKind::Frequency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Degree => "degree",
            WeightKind::Strength => "strength",
            WeightKind::Frequency => "frequency",
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown weight kind \"{s}\": valid kinds are degree, strength, frequency"
                ))
            })
    }
}

/// Word-level graph produced by compactification. Nodes are [`WordId`]s of
/// the source document; edges are unordered word pairs stored with the
/// smaller id first, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct WordGraph {
    kind: GraphKind,
    words: Vec<String>,
    degree: Vec<u32>,
    strength: Vec<u64>,
    frequency: Vec<u32>,
    edges: Vec<(WordId, WordId)>,
    stage_one_edge_count: usize,
    n_source_tokens: usize,
    source_name: String,
    source_fingerprint: u64,
    tokenizer: TokenizerConfig,
}

impl WordGraph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Number of word nodes (equals the document's distinct word count).
    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    /// Number of distinct word-word edges after compactification.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Stage-one edge count before self-pairs and duplicates were dropped.
    pub fn stage_one_edge_count(&self) -> usize {
        self.stage_one_edge_count
    }

    pub fn edges(&self) -> &[(WordId, WordId)] {
        &self.edges
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// The normalized form behind an id.
    ///
    /// # Panics
    ///
    /// Panics if `id` did not come from the source document.
    pub fn word(&self, id: WordId) -> &str {
        &self.words[id.0 as usize]
    }

    /// Look up a word id by its normalized form.
    pub fn word_id(&self, form: &str) -> Option<WordId> {
        self.words
            .iter()
            .position(|w| w == form)
            .map(|i| WordId(i as u32))
    }

    /// All word ids, sorted by normalized form. The deterministic node
    /// order used by exports.
    pub fn word_ids_by_form(&self) -> Vec<WordId> {
        let mut ids: Vec<WordId> = (0..self.words.len() as u32).map(WordId).collect();
        ids.sort_by(|a, b| self.word(*a).cmp(self.word(*b)));
        ids
    }

    /// The requested measure of one word node.
    pub fn node_weight(&self, word: WordId, kind: WeightKind) -> Result<u64> {
        let i = word.0 as usize;
        if i >= self.words.len() {
            return Err(Error::UnknownWord(word.0));
        }
        Ok(match kind {
            WeightKind::Degree => u64::from(self.degree[i]),
            WeightKind::Strength => self.strength[i],
            WeightKind::Frequency => u64::from(self.frequency[i]),
        })
    }

    /// Tokens in the source document.
    pub fn n_source_tokens(&self) -> usize {
        self.n_source_tokens
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn tokenizer(&self) -> &TokenizerConfig {
        &self.tokenizer
    }

    /// Whether `other` was built from the same document: same token stream,
    /// same word table, same tokenizer settings.
    pub fn same_source(&self, other: &WordGraph) -> bool {
        self.n_source_tokens == other.n_source_tokens
            && self.source_fingerprint == other.source_fingerprint
            && self.tokenizer == other.tokenizer
            && self.words == other.words
    }
}

/// Merge the occurrence nodes of `graph` by word. Fails if the graph was
/// not built over the document's token positions.
pub fn compactify(graph: &OccurrenceGraph, doc: &Document) -> Result<WordGraph> {
    if graph.node_count() != doc.len() {
        return Err(Error::NodeCountMismatch {
            graph_nodes: graph.node_count(),
            doc_tokens: doc.len(),
        });
    }
    Ok(compactify_core(GraphKind::Chvg, graph, doc))
}

/// Baseline network: link consecutive tokens, then compactify exactly like
/// the visibility graph.
pub fn simple_adjacency_network(doc: &Document) -> WordGraph {
    let path = path_graph(doc.len());
    compactify_core(GraphKind::Adjacency, &path, doc)
}

fn compactify_core(kind: GraphKind, graph: &OccurrenceGraph, doc: &Document) -> WordGraph {
    let n_words = doc.word_count();
    let mut strength = vec![0u64; n_words];
    let mut frequency = vec![0u32; n_words];
    for (pos, &word) in doc.tokens().iter().enumerate() {
        strength[word.0 as usize] += graph.degree(pos) as u64;
        frequency[word.0 as usize] += 1;
    }

    let tokens = doc.tokens();
    let mut edge_set: BTreeSet<(WordId, WordId)> = BTreeSet::new();
    for (i, j) in graph.edges() {
        let a = tokens[i as usize];
        let b = tokens[j as usize];
        if a != b {
            edge_set.insert((a.min(b), a.max(b)));
        }
    }

    let mut degree = vec![0u32; n_words];
    for &(a, b) in &edge_set {
        degree[a.0 as usize] += 1;
        degree[b.0 as usize] += 1;
    }

    WordGraph {
        kind,
        words: doc.words().to_vec(),
        degree,
        strength,
        frequency,
        edges: edge_set.into_iter().collect(),
        stage_one_edge_count: graph.edge_count(),
        n_source_tokens: doc.len(),
        source_name: doc.source_name().to_string(),
        source_fingerprint: doc.fingerprint(),
        tokenizer: doc.config().clone(),
    }
}
