//! File writers for every artifact the pipeline produces.
//!
//! Every output embeds the run configuration: line-oriented formats start
//! with one `#` comment (`//` for DOT) holding the echo as a single JSON
//! line, JSON documents carry it as an `echo` field, and GraphML stores it
//! in a graph-level attribute. Nothing here writes timestamps, hostnames,
//! or other run-local noise — two runs with the same configuration produce
//! byte-identical files.

use std::collections::BTreeSet;
use std::io::{self, Write};

use serde::Serialize;

use crate::analysis::{DegreeDistribution, KeywordReport, PowerLawFit, ZipfEntry};
use crate::baseline::BaselineSummary;
use crate::corpus::{Document, TokenizerConfig, WordId};
use crate::graph::{WeightKind, WordGraph};
use crate::hvg::OccurrenceGraph;
use crate::weighting::{GapStats, OccurrenceIndex, WeightScheme};

/// Convention note echoed into every output, so a reader of any single
/// file knows how single-occurrence words were treated.
pub const SIGMA_CONVENTION: &str =
    "words with fewer than two occurrences have sigma = 0 and stay in the series";

/// The configuration echo embedded in every output file. Optional fields
/// appear only when the producing command uses them; in particular the
/// seed is echoed only by the random baseline, which is the one command
/// whose output depends on it.
#[derive(Debug, Clone, Serialize)]
pub struct RunEcho {
    pub artifact: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tokenizer: Option<TokenizerConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<WeightScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_weight: Option<WeightKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_weight: Option<WeightKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_min: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formats: Option<Vec<String>>,
    pub sigma_convention: String,
}

impl RunEcho {
    pub fn new(command: &str) -> Self {
        RunEcho {
            artifact: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs: Vec::new(),
            tokenizer: None,
            scheme: None,
            n: None,
            lambda_weight: None,
            psi_weight: None,
            k_min: None,
            seed: None,
            length: None,
            out_dir: None,
            formats: None,
            sigma_convention: SIGMA_CONVENTION.to_string(),
        }
    }

    /// The echo as one JSON line, for comment headers.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("echo contains nothing unserializable")
    }
}

/// Gap statistics per word: `word,k,mean_gap,sigma`, rows sorted by word.
pub fn write_gap_stats_csv<W: Write>(
    w: &mut W,
    doc: &Document,
    index: &OccurrenceIndex,
    echo: &RunEcho,
) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    writeln!(w, "word,k,mean_gap,sigma")?;
    let mut ids: Vec<WordId> = (0..doc.word_count() as u32).map(WordId).collect();
    ids.sort_by(|a, b| doc.word(*a).cmp(doc.word(*b)));
    for id in ids {
        let stats = GapStats::from_positions(id, index.positions(id))
            .expect("index positions are strictly increasing");
        writeln!(
            w,
            "{},{},{:.6},{:.6}",
            doc.word(id),
            stats.occurrences,
            stats.mean_gap,
            stats.sigma
        )?;
    }
    Ok(())
}

/// Stage-one edge list over token positions: `i j` per line, `i < j`,
/// sorted.
pub fn write_position_edges<W: Write>(
    w: &mut W,
    graph: &OccurrenceGraph,
    echo: &RunEcho,
) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    for (i, j) in graph.edges() {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

/// Each edge as a word pair with the lexicographically smaller form first,
/// lines sorted. Tokens contain no tabs, so the format needs no quoting.
fn sorted_edge_forms(g: &WordGraph) -> Vec<(&str, &str)> {
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.word(u), g.word(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Word-level edge list: `word<TAB>word` per line, sorted.
pub fn write_word_edges<W: Write>(w: &mut W, g: &WordGraph, echo: &RunEcho) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    for (a, b) in sorted_edge_forms(g) {
        writeln!(w, "{a}\t{b}")?;
    }
    Ok(())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz DOT with per-node degree, strength, and frequency attributes.
pub fn write_dot<W: Write>(w: &mut W, g: &WordGraph, echo: &RunEcho) -> io::Result<()> {
    writeln!(w, "// {}", echo.to_json_line())?;
    writeln!(w, "graph {} {{", g.kind())?;
    for id in g.word_ids_by_form() {
        writeln!(
            w,
            "  \"{}\" [degree={}, strength={}, frequency={}];",
            dot_escape(g.word(id)),
            g.node_weight(id, WeightKind::Degree).expect("valid id"),
            g.node_weight(id, WeightKind::Strength).expect("valid id"),
            g.node_weight(id, WeightKind::Frequency).expect("valid id"),
        )?;
    }
    for (a, b) in sorted_edge_forms(g) {
        writeln!(w, "  \"{}\" -- \"{}\";", dot_escape(a), dot_escape(b))?;
    }
    writeln!(w, "}}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// GraphML with the same node attributes as the DOT export. The config
/// echo rides along as a graph-level attribute.
pub fn write_graphml<W: Write>(w: &mut W, g: &WordGraph, echo: &RunEcho) -> io::Result<()> {
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    writeln!(
        w,
        r#"  <key id="word" for="node" attr.name="word" attr.type="string"/>"#
    )?;
    for attr in ["degree", "strength", "frequency"] {
        writeln!(
            w,
            r#"  <key id="{attr}" for="node" attr.name="{attr}" attr.type="long"/>"#
        )?;
    }
    writeln!(
        w,
        r#"  <key id="config_echo" for="graph" attr.name="config_echo" attr.type="string"/>"#
    )?;
    writeln!(w, r#"  <graph id="{}" edgedefault="undirected">"#, g.kind())?;
    writeln!(
        w,
        r#"    <data key="config_echo">{}</data>"#,
        xml_escape(&echo.to_json_line())
    )?;
    for id in g.word_ids_by_form() {
        writeln!(
            w,
            "    <node id=\"n{}\"><data key=\"word\">{}</data>\
             <data key=\"degree\">{}</data>\
             <data key=\"strength\">{}</data>\
             <data key=\"frequency\">{}</data></node>",
            id.0,
            xml_escape(g.word(id)),
            g.node_weight(id, WeightKind::Degree).expect("valid id"),
            g.node_weight(id, WeightKind::Strength).expect("valid id"),
            g.node_weight(id, WeightKind::Frequency).expect("valid id"),
        )?;
    }
    let mut edges: Vec<(&str, &str, u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.word(u), g.word(v));
            if a <= b {
                (a, b, u.0, v.0)
            } else {
                (b, a, v.0, u.0)
            }
        })
        .collect();
    edges.sort_unstable();
    for (_, _, source, target) in edges {
        writeln!(w, r#"    <edge source="n{source}" target="n{target}"/>"#)?;
    }
    writeln!(w, "  </graph>")?;
    writeln!(w, "</graphml>")
}

/// CCDF points as plot-ready two-column TSV (raw values; take logs in the
/// plotting tool).
pub fn write_ccdf_tsv<W: Write>(
    w: &mut W,
    dist: &DegreeDistribution,
    echo: &RunEcho,
) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    writeln!(
        w,
        "# weight_kind={} n_nodes={}",
        dist.weight_kind(),
        dist.n_nodes()
    )?;
    writeln!(w, "# k\tccdf")?;
    for &(k, p) in dist.ccdf() {
        writeln!(w, "{k}\t{p}")?;
    }
    Ok(())
}

/// Rank-frequency table: `rank,word,frequency`.
pub fn write_zipf_csv<W: Write>(
    w: &mut W,
    entries: &[ZipfEntry],
    echo: &RunEcho,
) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    writeln!(w, "rank,word,frequency")?;
    for e in entries {
        writeln!(w, "{},{},{}", e.rank, e.word, e.frequency)?;
    }
    Ok(())
}

/// Keyword sets as CSV: one row per list entry with membership flags, Λ
/// first, then Ψ, then Ω.
pub fn write_keywords_csv<W: Write>(
    w: &mut W,
    report: &KeywordReport,
    echo: &RunEcho,
) -> io::Result<()> {
    writeln!(w, "# {}", echo.to_json_line())?;
    writeln!(w, "set,rank,word,weight,in_lambda,in_psi,in_omega")?;
    let lambda: BTreeSet<&str> = report.lambda.iter().map(|r| r.word.as_str()).collect();
    let psi: BTreeSet<&str> = report.psi.iter().map(|r| r.word.as_str()).collect();
    let omega: BTreeSet<&str> = report.omega.iter().map(|r| r.word.as_str()).collect();
    for (name, list) in [
        ("lambda", &report.lambda),
        ("psi", &report.psi),
        ("omega", &report.omega),
    ] {
        for (i, r) in list.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                name,
                i + 1,
                r.word,
                r.weight,
                lambda.contains(r.word.as_str()),
                psi.contains(r.word.as_str()),
                omega.contains(r.word.as_str()),
            )?;
        }
    }
    Ok(())
}

/// Full keyword report as JSON.
#[derive(Debug, Serialize)]
pub struct KeywordsJson<'a> {
    pub echo: &'a RunEcho,
    pub report: &'a KeywordReport,
}

/// One fitted distribution inside the fit summary.
#[derive(Debug, Serialize)]
pub struct FitRecord {
    pub weight_kind: WeightKind,
    pub n_nodes: usize,
    pub fit: PowerLawFit,
}

/// Zipf part of the fit summary. The slope is absent (with a note) when
/// the rank window holds fewer than two points.
#[derive(Debug, Serialize)]
pub struct ZipfSummary {
    pub rank_lo: usize,
    pub rank_hi: usize,
    pub distinct_words: usize,
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Everything `analyze` learned, as JSON.
#[derive(Debug, Serialize)]
pub struct FitSummaryJson<'a> {
    pub echo: &'a RunEcho,
    pub fits: Vec<FitRecord>,
    pub zipf: ZipfSummary,
}

/// Random-baseline result as JSON.
#[derive(Debug, Serialize)]
pub struct BaselineJson<'a> {
    pub echo: &'a RunEcho,
    pub summary: &'a BaselineSummary,
}

/// Pretty-print any serializable document, newline-terminated.
pub fn write_json_pretty<W: Write, T: Serialize>(w: &mut W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io::Error::from)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::keyword_report;
    use crate::corpus::tokenize;
    use crate::graph::{compactify, simple_adjacency_network};
    use crate::hvg::build_hvg;
    use crate::weighting::{occurrence_index, value_series};

    fn echo() -> RunEcho {
        let mut e = RunEcho::new("test");
        e.tokenizer = Some(TokenizerConfig::default());
        e
    }

    fn render<F: Fn(&mut Vec<u8>)>(f: F) -> String {
        let mut buf = Vec::new();
        f(&mut buf);
        String::from_utf8(buf).unwrap()
    }

    fn small_doc() -> Document {
        tokenize("the whale the sea the whale", &TokenizerConfig::default()).unwrap()
    }

    #[test]
    fn echo_line_is_valid_json_and_carries_the_version() {
        let line = echo().to_json_line();
        let value: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["artifact"], env!("CARGO_PKG_NAME"));
        assert_eq!(value["version"], env!("CARGO_PKG_VERSION"));
        assert!(value["sigma_convention"].is_string());
        // Unused options stay out of the echo entirely.
        assert!(value.get("seed").is_none());
    }

    #[test]
    fn gap_stats_rows_are_sorted_and_formatted() {
        let doc = small_doc();
        let index = occurrence_index(&doc);
        let out = render(|w| write_gap_stats_csv(w, &doc, &index, &echo()).unwrap());
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[0].starts_with("# {"));
        assert_eq!(lines[1], "word,k,mean_gap,sigma");
        // SEA < THE < WHALE; THE occurs at 0, 2, 4: gaps [2, 2].
        assert_eq!(lines[2], "SEA,1,0.000000,0.000000");
        assert_eq!(lines[3], "THE,3,2.000000,0.000000");
        assert_eq!(lines[4], "WHALE,2,4.000000,0.000000");
    }

    #[test]
    fn word_edges_are_tab_separated_and_sorted() {
        let g = simple_adjacency_network(&small_doc());
        let out = render(|w| write_word_edges(w, &g, &echo()).unwrap());
        let body: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(body, ["SEA\tTHE", "THE\tWHALE"]);
    }

    #[test]
    fn position_edges_are_space_separated_pairs() {
        let doc = small_doc();
        let g = build_hvg(&value_series(&doc, WeightScheme::Frequency));
        let out = render(|w| write_position_edges(w, &g, &echo()).unwrap());
        for line in out.lines().skip(1) {
            let parts: Vec<&str> = line.split(' ').collect();
            assert_eq!(parts.len(), 2);
            let i: u32 = parts[0].parse().unwrap();
            let j: u32 = parts[1].parse().unwrap();
            assert!(i < j);
        }
    }

    #[test]
    fn dot_output_is_structurally_sound() {
        let g = simple_adjacency_network(&small_doc());
        let out = render(|w| write_dot(w, &g, &echo()).unwrap());
        assert!(out.starts_with("// {"));
        assert!(out.contains("graph adjacency {"));
        assert!(out.contains("\"THE\" [degree=2, strength="));
        assert!(out.contains("\"SEA\" -- \"THE\";"));
        assert!(out.trim_end().ends_with('}'));
    }

    #[test]
    fn graphml_output_escapes_the_echo_and_lists_all_nodes() {
        let g = simple_adjacency_network(&small_doc());
        let out = render(|w| write_graphml(w, &g, &echo()).unwrap());
        assert!(out.starts_with("<?xml"));
        assert_eq!(out.matches("<node ").count(), 3);
        assert_eq!(out.matches("<edge ").count(), 2);
        assert!(out.contains("&quot;artifact&quot;"));
        assert!(!out.contains("<data key=\"config_echo\">{\""));
    }

    #[test]
    fn ccdf_tsv_has_two_numeric_columns() {
        let doc = small_doc();
        let g = simple_adjacency_network(&doc);
        let dist = crate::analysis::degree_distribution(&g, WeightKind::Degree).unwrap();
        let out = render(|w| write_ccdf_tsv(w, &dist, &echo()).unwrap());
        let data: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data.len(), dist.ccdf().len());
        for line in data {
            let (k, p) = line.split_once('\t').unwrap();
            k.parse::<u64>().unwrap();
            p.parse::<f64>().unwrap();
        }
    }

    #[test]
    fn keyword_outputs_agree_between_csv_and_json() {
        let doc = tokenize(
            "ahab hunts the whale and the whale evades ahab while the sea watches",
            &TokenizerConfig::default(),
        )
        .unwrap();
        let chvg = compactify(&build_hvg(&value_series(&doc, WeightScheme::Sigma)), &doc).unwrap();
        let adjacency = simple_adjacency_network(&doc);
        let report = keyword_report(
            &chvg,
            &adjacency,
            3,
            (WeightKind::Strength, WeightKind::Degree),
        )
        .unwrap();
        let e = echo();

        let csv = render(|w| write_keywords_csv(w, &report, &e).unwrap());
        assert!(csv.lines().nth(1).unwrap().starts_with("set,rank,word"));
        let lambda_rows = csv.lines().filter(|l| l.starts_with("lambda,")).count();
        assert_eq!(lambda_rows, report.lambda.len());

        let json = render(|w| {
            write_json_pretty(w, &KeywordsJson { echo: &e, report: &report }).unwrap()
        });
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            value["report"]["lambda"].as_array().unwrap().len(),
            report.lambda.len()
        );
        assert_eq!(value["echo"]["command"], "test");
        assert_eq!(value["report"]["n"], 3);
    }

    #[test]
    fn writers_are_deterministic() {
        let doc = small_doc();
        let g = simple_adjacency_network(&doc);
        let e = echo();
        let a = render(|w| write_dot(w, &g, &e).unwrap());
        let b = render(|w| write_dot(w, &g, &e).unwrap());
        assert_eq!(a, b);
        let c = render(|w| write_graphml(w, &g, &e).unwrap());
        let d = render(|w| write_graphml(w, &g, &e).unwrap());
        assert_eq!(c, d);
    }
}
