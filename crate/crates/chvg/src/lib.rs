//! Keyword extraction for natural-language texts via compactified
//! horizontal visibility graphs.
//!
//! The pipeline turns a text into a word network in two stages. First,
//! every token position is mapped to a number — by default the
//! occurrence-fluctuation estimator σ of its word — and the horizontal
//! visibility graph of that series is built: positions are linked exactly
//! when everything between them is strictly lower. Second, the graph is
//! compactified: all occurrences of a word merge into one node, self-pairs
//! vanish, and parallel edges collapse, leaving a word graph whose hubs
//! mix function words with the text's protagonists. Ranking its nodes
//! against the same ranking of a trivial adjacency network — which sees
//! only the function words — and subtracting (Ω = Λ \ Ψ) yields keywords
//! with no stopword list at all.
//!
//! ```
//! use chvg::analysis::keyword_report;
//! use chvg::corpus::{tokenize, TokenizerConfig};
//! use chvg::graph::{compactify, simple_adjacency_network, WeightKind};
//! use chvg::hvg::build_hvg;
//! use chvg::weighting::{value_series, WeightScheme};
//!
//! let doc = tokenize("call me ishmael some years ago", &TokenizerConfig::default())?;
//! let series = value_series(&doc, WeightScheme::Sigma);
//! let chvg = compactify(&build_hvg(&series), &doc)?;
//! let adjacency = simple_adjacency_network(&doc);
//! let report = keyword_report(
//!     &chvg,
//!     &adjacency,
//!     3,
//!     (WeightKind::Strength, WeightKind::Degree),
//! )?;
//! assert_eq!(report.lambda.len(), 3);
//! # Ok::<(), chvg::error::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod analysis;
pub mod baseline;
pub mod corpus;
pub mod error;
pub mod export;
pub mod graph;
pub mod hvg;
pub mod weighting;

pub use error::{Error, Result};

/// Crate version, embedded in every output file's config echo.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
