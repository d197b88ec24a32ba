//! End-to-end checks of the `chvg` binary: exit codes, stderr shape,
//! output files, and the configuration echo. Everything runs against
//! temporary directories through the same entry point a user has.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chvg"))
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("terminated by signal")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn write_corpus(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

/// Lines that carry data, with comment headers stripped.
fn data_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// The JSON configuration echo from a `#`-commented export.
fn echo_of(path: &Path) -> Value {
    let text = fs::read_to_string(path).unwrap();
    let first = text.lines().next().expect("file has a header");
    let json = first.strip_prefix("# ").expect("echo comment first");
    serde_json::from_str(json).expect("echo line is valid JSON")
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"], &["build", "--help"]] {
        let out = bin().args(args).output().unwrap();
        assert_eq!(code(&out), 0, "{args:?} should exit 0");
    }
    let version = bin().arg("--version").output().unwrap();
    assert!(stdout_text(&version).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a b c");
    let cases: Vec<Vec<String>> = vec![
        vec![],
        vec!["frobnicate".into()],
        vec!["build".into()],
        vec![
            "build".into(),
            corpus.display().to_string(),
            "--bogus".into(),
        ],
        vec![
            "build".into(),
            corpus.display().to_string(),
            "--scheme".into(),
            "entropy".into(),
        ],
    ];
    for args in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(code(&out), 1, "{args:?} should be a usage error");
    }

    let out = bin()
        .args(["build", corpus.to_str().unwrap(), "--scheme", "entropy"])
        .output()
        .unwrap();
    assert!(
        stderr_text(&out).contains("sigma"),
        "scheme error should list the valid schemes: {}",
        stderr_text(&out)
    );
}

#[test]
fn missing_input_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["build", "/no/such/corpus.txt", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("chvg: corpus:"), "stderr: {err}");
    assert!(err.contains("/no/such/corpus.txt"), "stderr: {err}");
}

#[test]
fn invalid_utf8_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    fs::write(&path, b"abc \xff def").unwrap();
    let out = bin()
        .args(["build", path.to_str().unwrap(), "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("not valid UTF-8"), "stderr: {err}");
    assert!(err.contains("offset 4"), "stderr: {err}");
}

#[test]
fn tokenizer_config_problems_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a b c");

    let missing = dir.path().join("absent.toml");
    let malformed = write_corpus(dir.path(), "malformed.toml", "case_fold = = true");
    let unknown = write_corpus(dir.path(), "unknown.toml", "banana = true");
    let invalid = write_corpus(dir.path(), "invalid.toml", "min_token_length = 0");

    for config in [&missing, &malformed, &unknown, &invalid] {
        let out = bin()
            .args(["build", corpus.to_str().unwrap(), "--tokenizer-config"])
            .arg(config)
            .args(["--out-dir"])
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(code(&out), 1, "config {config:?} should exit 1");
        assert!(
            stderr_text(&out).contains("chvg: config:"),
            "stderr for {config:?}: {}",
            stderr_text(&out)
        );
    }
}

#[test]
fn tokenizer_flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a bb ccc a bb ccc");
    let config = write_corpus(dir.path(), "tok.toml", "min_token_length = 3\n");

    let from_file = dir.path().join("from_file");
    let out = bin()
        .args(["build", corpus.to_str().unwrap(), "--tokenizer-config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&from_file)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let words: Vec<String> = data_lines(&from_file.join("gap_stats.csv"))
        .into_iter()
        .skip(1) // column header
        .map(|row| row.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(words, ["CCC"], "three-letter floor keeps only CCC");

    let overridden = dir.path().join("overridden");
    let out = bin()
        .args(["build", corpus.to_str().unwrap(), "--tokenizer-config"])
        .arg(&config)
        .args(["--min-token-length", "1", "--out-dir"])
        .arg(&overridden)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let words: Vec<String> = data_lines(&overridden.join("gap_stats.csv"))
        .into_iter()
        .skip(1)
        .map(|row| row.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(words, ["A", "BB", "CCC"], "flag overrides the file");

    let echo = echo_of(&overridden.join("gap_stats.csv"));
    assert_eq!(echo["tokenizer"]["min_token_length"], 1);
}

#[test]
fn build_writes_the_requested_formats() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "to be or not to be");
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["build", corpus.to_str().unwrap()])
        .args(["--formats", "edgelist,dot,graphml", "--export-hvg"])
        .arg("--out-dir")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));

    let stdout = stdout_text(&out);
    assert!(stdout.contains("tokens: 6  distinct words: 4"), "{stdout}");
    let expected_files = [
        "gap_stats.csv",
        "chvg_edges.tsv",
        "adjacency_edges.tsv",
        "chvg.dot",
        "adjacency.dot",
        "chvg.graphml",
        "adjacency.graphml",
        "hvg_positions.edges",
    ];
    for name in expected_files {
        assert!(out_dir.join(name).exists(), "{name} missing");
        assert!(stdout.contains(name), "stdout should report {name}");
    }

    // Every gap equals four, so the sigma series is flat and the
    // stage-one graph is the six-token path.
    assert_eq!(
        data_lines(&out_dir.join("hvg_positions.edges")),
        ["0 1", "1 2", "2 3", "3 4", "4 5"]
    );
    assert_eq!(
        data_lines(&out_dir.join("adjacency_edges.tsv")),
        ["BE\tOR", "BE\tTO", "NOT\tOR", "NOT\tTO"]
    );
    assert!(fs::read_to_string(out_dir.join("chvg.dot"))
        .unwrap()
        .contains("graph chvg {"));
    assert!(fs::read_to_string(out_dir.join("chvg.graphml"))
        .unwrap()
        .contains("<graphml"));
    let echo = echo_of(&out_dir.join("chvg_edges.tsv"));
    assert_eq!(echo["formats"], serde_json::json!(["edgelist", "dot", "graphml"]));

    // Repeating a format is harmless.
    let again = dir.path().join("again");
    let out = bin()
        .args(["build", corpus.to_str().unwrap()])
        .args(["--formats", "edgelist,edgelist"])
        .arg("--out-dir")
        .arg(&again)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(again.join("chvg_edges.tsv").exists());
}

#[test]
fn build_accepts_an_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "empty.txt", "");
    let out = bin()
        .args(["build", corpus.to_str().unwrap(), "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    assert_eq!(
        data_lines(&dir.path().join("gap_stats.csv")),
        ["word,k,mean_gap,sigma"],
        "header only, no rows"
    );
    assert!(data_lines(&dir.path().join("chvg_edges.tsv")).is_empty());
}

#[test]
fn build_output_is_identical_across_runs_and_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "c.txt",
        "the whale the sea the whale and the captain",
    );
    let out_dir = dir.path().join("out");
    let mut snapshots = Vec::new();
    for seed in ["3", "99"] {
        let out = bin()
            .args(["build", corpus.to_str().unwrap(), "--seed", seed])
            .arg("--out-dir")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
        snapshots.push((
            fs::read(out_dir.join("gap_stats.csv")).unwrap(),
            fs::read(out_dir.join("chvg_edges.tsv")).unwrap(),
            fs::read(out_dir.join("adjacency_edges.tsv")).unwrap(),
        ));
    }
    assert_eq!(snapshots[0], snapshots[1], "the text pipeline ignores the seed");
}

#[test]
fn out_dir_comes_from_the_environment_unless_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a b a");

    let from_env = dir.path().join("from_env");
    let out = bin()
        .args(["build", corpus.to_str().unwrap()])
        .env("CHVG_OUT_DIR", &from_env)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    assert!(from_env.join("gap_stats.csv").exists());

    let ignored_env = dir.path().join("ignored_env");
    let from_flag = dir.path().join("from_flag");
    let out = bin()
        .args(["build", corpus.to_str().unwrap()])
        .env("CHVG_OUT_DIR", &ignored_env)
        .arg("--out-dir")
        .arg(&from_flag)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    assert!(from_flag.join("gap_stats.csv").exists());
    assert!(!ignored_env.join("gap_stats.csv").exists());
}

#[test]
fn analyze_needs_enough_distinct_degrees() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["hello", "one two three"] {
        let corpus = write_corpus(dir.path(), "c.txt", text);
        let out = bin()
            .args(["analyze", corpus.to_str().unwrap(), "--out-dir"])
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(code(&out), 2, "{text:?} cannot support a fit");
        let err = stderr_text(&out);
        assert!(err.contains("chvg: analysis:"), "stderr: {err}");
        assert!(err.contains("insufficient points"), "stderr: {err}");
    }
}

fn novel_excerpt(dir: &Path) -> PathBuf {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/moby_dick.txt"
    );
    let excerpt: String = fs::read_to_string(fixture)
        .unwrap()
        .chars()
        .take(80_000)
        .collect();
    write_corpus(dir, "excerpt.txt", &excerpt)
}

#[test]
fn analyze_reports_fits_on_a_real_excerpt() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = novel_excerpt(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["analyze", corpus.to_str().unwrap(), "--out-dir"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));

    for name in [
        "ccdf_chvg_degree.tsv",
        "ccdf_chvg_strength.tsv",
        "zipf.csv",
        "fit_summary.json",
    ] {
        assert!(out_dir.join(name).exists(), "{name} missing");
    }

    // The CCDF must fall monotonically to zero.
    let rows = data_lines(&out_dir.join("ccdf_chvg_degree.tsv"));
    let ccdf: Vec<f64> = rows
        .iter()
        .map(|r| r.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(ccdf.windows(2).all(|w| w[1] <= w[0]), "ccdf not monotone");
    assert_eq!(*ccdf.last().unwrap(), 0.0);

    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("fit_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["echo"]["k_min"], 2);
    let fits = summary["fits"].as_array().unwrap();
    assert_eq!(fits.len(), 2);
    for fit in fits {
        let r_squared = fit["fit"]["r_squared"].as_f64().unwrap();
        assert!(r_squared > 0.0 && r_squared <= 1.0);
        assert!(fit["fit"]["exponent_ls"].as_f64().unwrap() < 0.0);
    }
    assert!(summary["zipf"]["slope"].as_f64().unwrap() < 0.0);

    // An impossible tail threshold is a data error, not a crash.
    let out = bin()
        .args(["analyze", corpus.to_str().unwrap(), "--k-min", "1000000"])
        .arg("--out-dir")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("insufficient points"));
}

#[test]
fn keywords_rejects_n_zero() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a b a");
    let out = bin()
        .args(["keywords", corpus.to_str().unwrap(), "--n", "0", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("chvg: config:"));
}

#[test]
fn keywords_report_is_structurally_sound() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "c.txt",
        "to be or not to be that is the question to be or not",
    );
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["keywords", corpus.to_str().unwrap(), "--n", "3", "--out-dir"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));

    let report: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("keywords.json")).unwrap()).unwrap();
    assert_eq!(report["echo"]["n"], 3);
    assert!(
        report["echo"].get("seed").is_none(),
        "keyword echo must not mention a seed"
    );
    let lambda = report["report"]["lambda"].as_array().unwrap();
    let psi = report["report"]["psi"].as_array().unwrap();
    let omega = report["report"]["omega"].as_array().unwrap();
    assert_eq!(lambda.len(), 3);
    assert_eq!(psi.len(), 3);
    let psi_words: Vec<&str> = psi.iter().map(|r| r["word"].as_str().unwrap()).collect();
    for entry in omega {
        let word = entry["word"].as_str().unwrap();
        assert!(
            lambda.iter().any(|r| r["word"] == word) && !psi_words.contains(&word),
            "{word} must come from lambda and avoid psi"
        );
    }

    let rows = data_lines(&out_dir.join("keywords.csv"));
    assert_eq!(rows.len(), 1 + lambda.len() + psi.len() + omega.len());
}

#[test]
fn random_baseline_writes_a_reproducible_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let run = |seed: &str, length: &str| {
        let out = bin()
            .args(["random-baseline", "--length", length, "--seed", seed])
            .arg("--out-dir")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
        (
            stdout_text(&out),
            fs::read(out_dir.join("random_baseline.json")).unwrap(),
        )
    };

    let (_, first) = run("9", "2000");
    let summary: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(summary["echo"]["seed"], 9);
    assert_eq!(summary["echo"]["length"], 2000);
    assert_eq!(summary["summary"]["length"], 2000);
    let mean = summary["summary"]["mean_degree"].as_f64().unwrap();
    assert!((3.0..5.0).contains(&mean), "mean degree {mean} implausible");

    let (_, same_seed) = run("9", "2000");
    assert_eq!(first, same_seed, "same seed must reproduce the run");
    let (_, other_seed) = run("10", "2000");
    assert_ne!(first, other_seed, "the seed must actually steer the series");

    let (stdout, short) = run("9", "10");
    assert!(stdout.contains("too short"), "stdout: {stdout}");
    let summary: Value = serde_json::from_slice(&short).unwrap();
    assert!(summary["summary"]["all_pass"].is_null());
}

#[test]
fn scheme_is_plumbed_into_the_echo() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.txt", "a b a b c a");
    for scheme in ["sigma", "frequency", "word_length"] {
        let out_dir = dir.path().join(scheme);
        let out = bin()
            .args(["build", corpus.to_str().unwrap(), "--scheme", scheme])
            .arg("--out-dir")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
        let echo = echo_of(&out_dir.join("chvg_edges.tsv"));
        assert_eq!(echo["scheme"], scheme);
    }
}

#[test]
fn multiple_inputs_concatenate_in_argument_order() {
    let dir = tempfile::tempdir().unwrap();
    let first = write_corpus(dir.path(), "first.txt", "a b");
    let second = write_corpus(dir.path(), "second.txt", "b a");
    let out_dir = dir.path().join("out");
    let out = bin()
        .args([
            "build",
            first.to_str().unwrap(),
            second.to_str().unwrap(),
            "--out-dir",
        ])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    assert!(stdout_text(&out).contains("tokens: 4  distinct words: 2"));

    // A sits at positions 0 and 3, B at 1 and 2: the B-B visibility pair
    // collapses into the merged node, leaving the single A-B edge.
    assert_eq!(data_lines(&out_dir.join("chvg_edges.tsv")), ["A\tB"]);

    let echo = echo_of(&out_dir.join("gap_stats.csv"));
    let inputs = echo["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    assert!(inputs[0].as_str().unwrap().ends_with("first.txt"));
    assert!(inputs[1].as_str().unwrap().ends_with("second.txt"));
}
