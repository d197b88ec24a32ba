//! Text ingestion: tokenization, word interning, and corpus loading.
//!
//! A token is a maximal run of letter characters, optionally spanning inner
//! apostrophes or hyphens when the configuration keeps them. Tokens are
//! normalized to uppercase by default so that "The", "the", and "THE" are the
//! same word. Every distinct normalized form is interned once and referenced
//! by a dense [`WordId`] everywhere else in the pipeline.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense identifier of an interned word, assigned in order of first
/// appearance in the token stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordId(pub u32);

impl fmt::Display for WordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Tokenizer settings. The defaults reproduce the conventional setup for
/// English prose: case-folded words, contractions kept whole, hyphenated
/// compounds split, digit runs dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TokenizerConfig {
    /// Normalize every token to uppercase.
    pub case_fold: bool,
    /// Keep an apostrophe that sits between two token characters, so that
    /// "don't" stays one token. A typographic apostrophe (U+2019) is
    /// normalized to `'`.
    pub keep_inner_apostrophe: bool,
    /// Keep a hyphen that sits between two token characters, so that
    /// "sperm-whale" stays one token instead of splitting in two.
    pub keep_inner_hyphen: bool,
    /// Drop tokens shorter than this many characters. Must be at least 1.
    pub min_token_length: usize,
    /// Treat digits as separators. When false, digit runs form tokens and
    /// digits may mix with letters inside one token.
    pub drop_numeric_tokens: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            case_fold: true,
            keep_inner_apostrophe: true,
            keep_inner_hyphen: false,
            min_token_length: 1,
            drop_numeric_tokens: true,
        }
    }
}

impl TokenizerConfig {
    /// Check internal consistency. `min_token_length == 0` would admit empty
    /// tokens, which nothing downstream can represent.
    pub fn validate(&self) -> Result<()> {
        if self.min_token_length == 0 {
            return Err(Error::InvalidConfig(
                "min_token_length must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// A tokenized corpus: the token stream as word ids plus the interning table
/// mapping ids to normalized forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    tokens: Vec<WordId>,
    words: Vec<String>,
    index: HashMap<String, WordId>,
    source_name: String,
    config: TokenizerConfig,
}

impl Document {
    /// Number of tokens (with repetition).
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of distinct words.
    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// The token stream, one [`WordId`] per token position.
    pub fn tokens(&self) -> &[WordId] {
        &self.tokens
    }

    /// All distinct normalized forms, indexed by [`WordId`].
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// The normalized form behind an id.
    ///
    /// # Panics
    ///
    /// Panics if `id` did not come from this document.
    pub fn word(&self, id: WordId) -> &str {
        &self.words[id.0 as usize]
    }

    /// Look up the id of a normalized form, if the word occurs at all.
    pub fn word_id(&self, form: &str) -> Option<WordId> {
        self.index.get(form).copied()
    }

    /// Label describing where the text came from (file names or a caller
    /// supplied tag). Purely informational.
    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn config(&self) -> &TokenizerConfig {
        &self.config
    }

    /// Order-sensitive fingerprint of the token stream (FNV-1a over the id
    /// sequence). Two documents with equal fingerprints, word tables, and
    /// configs are the same corpus for all practical purposes.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for t in &self.tokens {
            for b in t.0.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

/// Tokenize a text under the given configuration.
///
/// Deterministic: the same `(text, config)` pair always yields the same
/// token stream and the same id assignment.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Result<Document> {
    tokenize_named(text, config, "<text>")
}

/// [`tokenize`] with an explicit source label for diagnostics and exports.
pub fn tokenize_named(text: &str, config: &TokenizerConfig, source_name: &str) -> Result<Document> {
    config.validate()?;
    let mut words: Vec<String> = Vec::new();
    let mut index: HashMap<String, WordId> = HashMap::new();
    let mut tokens: Vec<WordId> = Vec::new();

    scan_tokens(text, config, |form| {
        let id = *index.entry(form).or_insert_with_key(|key| {
            let id = WordId(words.len() as u32);
            words.push(key.clone());
            id
        });
        tokens.push(id);
    });

    Ok(Document {
        tokens,
        words,
        index,
        source_name: source_name.to_string(),
        config: config.clone(),
    })
}

/// Read one or more UTF-8 text files and tokenize their concatenation, in
/// argument order, as a single document. A newline is inserted between
/// files so a token can never span a file boundary.
pub fn load_corpus(paths: &[PathBuf], config: &TokenizerConfig) -> Result<Document> {
    config.validate()?;
    let mut text = String::new();
    for (i, path) in paths.iter().enumerate() {
        let bytes = fs::read(path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        let content = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
            path: path.clone(),
            offset: e.utf8_error().valid_up_to(),
        })?;
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&content);
    }
    let name = paths
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(",");
    tokenize_named(&text, config, &name)
}

/// True for characters that can start or continue a token on their own.
fn is_token_char(c: char, config: &TokenizerConfig) -> bool {
    c.is_alphabetic() || (!config.drop_numeric_tokens && c.is_numeric())
}

/// If `c` may join two token characters into one token, the normalized
/// character it contributes; otherwise `None`.
fn joiner(c: char, config: &TokenizerConfig) -> Option<char> {
    match c {
        '\'' | '\u{2019}' if config.keep_inner_apostrophe => Some('\''),
        '-' if config.keep_inner_hyphen => Some('-'),
        _ => None,
    }
}

/// Core scanner: walk the text once, emitting each finished token through
/// `emit`. A joiner is kept only when flanked by token characters on both
/// sides; everything else that is not a token character separates.
fn scan_tokens(text: &str, config: &TokenizerConfig, mut emit: impl FnMut(String)) {
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if is_token_char(c, config) {
            current.push(c);
        } else if let Some(j) = joiner(c, config) {
            if !current.is_empty()
                && chars.peek().is_some_and(|&next| is_token_char(next, config))
            {
                current.push(j);
            } else {
                flush(&mut current, config, &mut emit);
            }
        } else {
            flush(&mut current, config, &mut emit);
        }
    }
    flush(&mut current, config, &mut emit);
}

/// Normalize and emit the pending token, if it survives the length filter.
fn flush(current: &mut String, config: &TokenizerConfig, emit: &mut impl FnMut(String)) {
    if current.is_empty() {
        return;
    }
    let raw = std::mem::take(current);
    let form = if config.case_fold {
        raw.to_uppercase()
    } else {
        raw
    };
    if form.chars().count() >= config.min_token_length {
        emit(form);
    }
}
