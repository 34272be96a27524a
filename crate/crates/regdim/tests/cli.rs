//! End-to-end tests of the command-line binary: output formats, exit codes,
//! and determinism of the file-producing commands.

use std::path::Path;
use std::process::{Command, Output};

use regdim::csvio;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_regdim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn help_is_the_default_and_shows_usage() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("USAGE"));
    for cmd in ["spectrum", "norms", "oracle", "verify", "plot", "presets"] {
        assert!(text.contains(cmd), "help must mention {cmd}");
    }
    let explicit = run(&["help"]);
    assert_eq!(stdout(&explicit), text);
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown command"));

    let out = run(&["spectrum", "--no-such-flag=1", "--preset=uniform"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown flag"));

    let out = run(&["spectrum", "--preset=no-such-measure"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["oracle", "--p1=0.5"]);
    assert_eq!(out.status.code(), Some(1), "exponents must exceed 1");
}

#[test]
fn unwritable_output_exits_3() {
    let out = run(&[
        "spectrum",
        "--preset=uniform",
        "--out=/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cannot write"));
}

#[test]
fn oracle_prints_exact_rational_table() {
    let out = run(&["oracle", "--p1=2", "--p2=3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // the midpoint value and the zero crossing of the (2,3) profile
    assert!(text.contains("13/6 ≈ 2.166667"), "missing 13/6 row:\n{text}");
    assert!(text.contains("2/9 ≈ 0.222222"), "missing 2/9 row:\n{text}");
    assert!(
        text.contains("θ = 3/8 ≈ 0.375000"),
        "missing phase transition:\n{text}"
    );
    // the doubly-infinite profile pins both bounds at the constant 1
    let flat = run(&["oracle", "--p1=inf", "--p2=inf", "--theta-list=0.25,0.5,0.75"]);
    let flat_text = stdout(&flat);
    assert!(
        !flat_text.contains("1/1"),
        "integer bounds should print without a denominator:\n{flat_text}"
    );
    for line in flat_text.lines().skip(2).take(3) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cols[1], "1", "upper bound should be 1: {line}");
        assert_eq!(cols[2], "1", "lower bound should be 1: {line}");
    }
}

#[test]
fn presets_lists_every_builtin() {
    let out = run(&["presets"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "uniform",
        "linear-2x",
        "assouad-sharp",
        "mono-sharp",
        "lower-sharp",
        "staircase",
        "mu-p",
        "composite",
    ] {
        assert!(text.contains(name), "presets listing must contain {name}");
    }
}

#[test]
fn spectrum_csv_shape_roundtrip_and_determinism() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    for path in [&path_a, &path_b] {
        let out = run(&[
            "spectrum",
            "--preset=linear-2x",
            &format!("--out={}", path.display()),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        // status lines go to stderr so the CSV stream stays clean
        assert!(stderr(&out).contains("wrote 19 rows for linear-2x"));
        assert!(stderr(&out).contains("quasi-limits at θ = 0.95"));
    }
    let text_a = std::fs::read_to_string(&path_a).expect("csv written");
    let text_b = std::fs::read_to_string(&path_b).expect("csv written");
    assert_eq!(text_a, text_b, "identical runs must produce identical bytes");

    let mut lines = text_a.lines();
    assert_eq!(
        lines.next(),
        Some("theta,assouad_est,lower_est,assouad_oracle,lower_oracle,residual,dropped_pairs")
    );
    assert_eq!(lines.count(), 19, "19 θ rows");

    // parse → re-serialize must reproduce the bytes exactly
    let rows = csvio::parse_csv(&text_a).expect("csv parses");
    assert_eq!(rows.len(), 19);
    assert_eq!(csvio::to_csv(&rows), text_a);

    // the estimates themselves: density 2x has Assouad spectrum 2, lower 1
    for row in &rows {
        assert!((row.assouad_est - 2.0).abs() < 1e-9, "row {:?}", row.theta);
        assert!((row.lower_est - 1.0).abs() < 1e-9, "row {:?}", row.theta);
    }
    // small θ pushes the inner scale R^{1/θ} below the resolution floor
    // more often, so the dropped-pair count falls as θ grows
    for pair in rows.windows(2) {
        assert!(pair[0].dropped_pairs >= pair[1].dropped_pairs);
    }
    assert!(rows[0].dropped_pairs > rows[18].dropped_pairs);
}

#[test]
fn spectrum_text_format_prints_table() {
    let out = run(&["spectrum", "--preset=uniform", "--format=text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("theta"));
    assert!(text.lines().count() >= 20, "table plus header:\n{text}");
}

#[test]
fn norms_reports_divergence_and_profile() {
    let out = run(&["norms", "--preset=linear-2x", "--qs=0.5,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("total mass 1.000000000000"));
    assert!(text.contains("divergent"), "inverse L^1 of 2x diverges:\n{text}");
    assert!(text.contains("smoothness profile"));
}

#[test]
fn verify_single_check_passes_exit_0() {
    let out = run(&["verify", "--check=mass-decay", "--preset=uniform"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[PASS] mass-decay"));
}

#[test]
fn verify_precondition_violation_exits_3() {
    // the mass-decay check only applies to nonincreasing densities; on an
    // increasing one it must refuse to assert rather than pass or fail
    let out = run(&["verify", "--check=mass-decay", "--preset=linear-2x"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "stdout: {} stderr: {}",
        stdout(&out),
        stderr(&out)
    );
    assert!(stderr(&out).contains("nonincreasing"));
}

#[test]
fn plot_figures_are_wellformed_and_deterministic() {
    let dir_a = tempfile::tempdir().expect("tempdir");
    let dir_b = tempfile::tempdir().expect("tempdir");
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "plot",
            "--figure=all",
            &format!("--out-dir={}", dir.path().display()),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let names = [
        "fig-sharp-assouad.svg",
        "fig-lower-construction.svg",
        "fig-monotone-claims.svg",
        "fig-borderline.svg",
    ];
    for name in names {
        let a = std::fs::read_to_string(dir_a.path().join(name)).expect("figure written");
        let b = std::fs::read_to_string(dir_b.path().join(name)).expect("figure written");
        assert_eq!(a, b, "{name} must be deterministic");
        assert!(a.starts_with("<?xml") || a.starts_with("<svg"), "{name}");
        assert!(a.trim_end().ends_with("</svg>"), "{name}");
        assert!(a.contains("<polyline") || a.contains("<path"), "{name} has curves");
        assert!(a.contains("<text"), "{name} has labels");
        // every drawn coordinate is a finite number: NaNs would appear verbatim
        assert!(!a.contains("NaN") && !a.contains("inf"), "{name} has only finite coords");
    }
    // a single named figure to an explicit path
    let single = dir_a.path().join("one.svg");
    let out = run(&[
        "plot",
        "--figure=sharp-assouad",
        &format!("--out={}", single.display()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&single).expect("figure written");
    let listed = std::fs::read_to_string(dir_a.path().join("fig-sharp-assouad.svg")).unwrap();
    assert_eq!(text, listed, "named figure matches the batch output");
}

#[test]
fn plot_list_names_every_figure() {
    let out = run(&["plot", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["sharp-assouad", "lower-construction", "monotone-claims", "borderline"] {
        assert!(text.contains(name), "catalog must contain {name}");
    }
}

#[test]
fn config_file_drives_a_run() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg_path = dir.path().join("run.toml");
    let csv_path = dir.path().join("out.csv");
    std::fs::write(
        &cfg_path,
        r#"
[measure]
preset = "uniform"

[sweep]
theta_min = 0.2
theta_max = 0.8
theta_steps = 4

[output]
format = "csv"
"#,
    )
    .expect("config written");
    let out = run(&[
        "spectrum",
        &format!("--config={}", cfg_path.display()),
        &format!("--out={}", csv_path.display()),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let rows = csvio::parse_csv(&std::fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!((rows[0].theta - 0.2).abs() < 1e-12);
    assert!((rows[3].theta - 0.8).abs() < 1e-12);
    for row in &rows {
        assert!((row.assouad_est - 1.0).abs() < 1e-6, "uniform is exactly flat");
        assert!((row.lower_est - 1.0).abs() < 1e-6);
    }
    // flags override the file: shrink the grid on the same config
    let out = run(&[
        "spectrum",
        &format!("--config={}", cfg_path.display()),
        "--theta-steps=2",
        &format!("--out={}", csv_path.display()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csvio::parse_csv(&std::fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn atomic_write_leaves_no_partial_file_on_success() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("w.csv");
    let out = run(&[
        "spectrum",
        "--preset=uniform",
        &format!("--out={}", path.display()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n != Path::new("w.csv").as_os_str())
        .collect();
    assert!(leftovers.is_empty(), "temp files left behind: {leftovers:?}");
}
