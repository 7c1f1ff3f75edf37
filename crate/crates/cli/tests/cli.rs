use std::path::Path;
use std::process::{Command, Output};

fn robin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Value of `column` in the first data row of a CSV document.
fn field(csv: &str, column: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = header.iter().position(|h| *h == column).unwrap_or_else(|| panic!("no column {column}"));
    row[j].to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn ball_in_the_plane() {
    let out = robin(&["ball", "--dim", "2", "--radius", "1", "--alpha", "-1"]);
    assert_eq!(code(&out), 0);
    let lambda: f64 = field(&stdout(&out), "lambda").parse().unwrap();
    assert!((lambda + 2.587).abs() < 0.03);
}

#[test]
fn ball_in_space_lies_below_the_bound() {
    let out = robin(&["ball", "--dim", "3", "--radius", "1", "--alpha", "-1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["lambda"].as_f64().unwrap() < -3.0);
    assert_eq!(v["bound"].as_f64().unwrap(), -3.0);
}

#[test]
fn positive_alpha_is_a_usage_error() {
    let out = robin(&["ball", "--dim", "2", "--radius", "1", "--alpha", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
    assert_eq!(code(&robin(&["ball", "--alpha", "-1", "--bogus"])), 2);
    assert_eq!(code(&robin(&["ball"])), 2);
}

#[test]
fn annulus_reports_both_comparison_discs() {
    let out = robin(&["annulus", "--radius", "1", "--inner-radius", "0.9", "--alpha", "-10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lambda: f64 = field(&text, "lambda").parse().unwrap();
    let equal_volume: f64 = field(&text, "lambda_equal_volume").parse().unwrap();
    let equal_perimeter: f64 = field(&text, "lambda_equal_perimeter").parse().unwrap();
    assert!(lambda < equal_volume);
    assert!(lambda <= equal_perimeter);
    assert_eq!(field(&text, "equal_perimeter_radius"), "1.9");
}

#[test]
fn tiny_hole_matches_the_disc() {
    let out = robin(&["annulus", "--radius", "1", "--inner-radius", "0.001", "--alpha", "-1"]);
    assert_eq!(code(&out), 0);
    let ann: f64 = field(&stdout(&out), "lambda").parse().unwrap();
    let ball = robin(&["ball", "--radius", "1", "--alpha", "-1"]);
    let disc: f64 = field(&stdout(&ball), "lambda").parse().unwrap();
    assert!((ann - disc).abs() < 1e-2);
}

#[test]
fn annulus_rejects_inverted_radii() {
    assert_eq!(code(&robin(&["annulus", "--radius", "1", "--inner-radius", "1", "--alpha", "-1"])), 2);
    assert_eq!(code(&robin(&["annulus", "--radius", "1", "--inner-radius", "2", "--alpha", "-1"])), 2);
}

#[test]
fn verify_regular_octagon() {
    let out = robin(&["verify", "--shape", "regular:8", "--perimeter", "6.2832", "--alpha", "-1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(field(&text, "margin_star").parse::<f64>().unwrap() > 0.0);
    assert!(field(&text, "margin_fw").parse::<f64>().unwrap() > 0.0);
    assert_eq!(field(&text, "chain_ok"), "true");
}

#[test]
fn verify_files() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", "[[0,0],[1,0],[1,1],[0,1]]");
    let out = robin(&["verify", "--shape", &format!("file:{square}"), "--alpha", "-0.5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "m_or_file"), square);

    let dent = write(dir.path(), "dent.json", "[[0,0],[2,0],[1,0.5],[2,2],[0,2]]");
    let out = robin(&["verify", "--shape", &format!("file:{dent}"), "--alpha", "-0.5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("convex"));

    let out = robin(&["verify", "--shape", &format!("file:{dent}"), "--alpha", "-0.5", "--hull-repair"]);
    assert_eq!(code(&out), 0);
    let area: f64 = field(&stdout(&out), "area").parse().unwrap();
    assert!((area - 4.0).abs() < 1e-12);

    let missing = dir.path().join("missing.json");
    let out = robin(&["verify", "--shape", &format!("file:{}", missing.display()), "--alpha", "-1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path| {
        vec![
            "sweep".to_string(),
            "--shape".into(),
            "random:12".into(),
            "--count".into(),
            "4".into(),
            "--seed".into(),
            "7".into(),
            "--alpha".into(),
            "-0.5,-1,-5".into(),
            "--levels".into(),
            "3".into(),
            "--out".into(),
            out.to_str().unwrap().into(),
        ]
    };
    let run = |out: &Path| {
        let args = args(out);
        robin(&args.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(code(&run(&a)), 0);
    assert_eq!(code(&run(&b)), 0);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 12 + 1);
    assert!(lines[1].starts_with("random-7,12@7,-0.5,"));
    assert!(lines[13].starts_with("summary,12,"));
    assert!(lines[13].ends_with("true,true,true,true,true"));
}

#[test]
fn sweep_json_mirrors_csv_names() {
    let out = robin(&["sweep", "--shape", "regular:6", "--alpha", "-1", "--levels", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["shape_id", "m_or_file", "R_star", "normeL2_ok", "margin_star"] {
        assert!(v["rows"][0].get(key).is_some(), "{key}");
    }
}

#[test]
fn regular_polygons_approach_the_disc() {
    let out = robin(&["sweep", "--shape", "regular:8,16,32,64", "--alpha", "-1", "--levels", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let margins: Vec<f64> = text
        .lines()
        .skip(1)
        .take(4)
        .map(|l| l.split(',').nth(11).unwrap().parse().unwrap())
        .collect();
    assert!(margins.iter().all(|&m| m > 0.0));
    assert!(margins.windows(2).all(|w| w[1] < w[0]), "{margins:?}");
}

#[test]
fn empty_corpus_is_a_usage_error() {
    let out = robin(&["sweep", "--shape", "random:12", "--count", "0"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&robin(&["sweep", "--shape", "hexagon:6"])), 2);
    assert_eq!(code(&robin(&["sweep", "--shape", "regular:6", "--levels", "1"])), 2);
}

fn profile_rows(shape: &str, extra: &[&str]) -> Vec<Vec<f64>> {
    let mut args = vec!["profile", "--shape", shape];
    args.extend_from_slice(extra);
    let out = robin(&args);
    assert_eq!(code(&out), 0);
    stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).take(4).map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn profile_of_the_unit_square() {
    let rows = profile_rows("rectangle:1x1", &[]);
    assert!(rows.iter().all(|r| r[3] == -8.0));
    let last = rows.last().unwrap();
    assert_eq!(last[0], 0.5);
    assert!(last[2].abs() < 1e-15);
}

#[test]
fn profile_of_the_hexagon() {
    let rows = profile_rows("regular:6", &["--perimeter", "6"]);
    let expected = -12.0 * (std::f64::consts::PI / 6.0).tan();
    assert!(rows.iter().all(|r| (r[3] - expected).abs() < 1e-9));
}

#[test]
fn profile_of_a_triangle_is_a_single_segment() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", "[[0,0],[3,0],[0,4]]");
    let rows = profile_rows(&format!("file:{tri}"), &[]);
    // inradius of the 3-4-5 triangle is 1
    assert!(rows.iter().all(|r| r[3] == rows[0][3]));
    let last = rows.last().unwrap();
    assert!((last[0] - 1.0).abs() < 1e-12);
    assert!(last[2].abs() < 1e-12);
    assert!(last[1].abs() < 1e-12);
}

#[test]
fn help_documents_columns_and_exit_codes() {
    let out = robin(&["--help"]);
    let text = stdout(&out);
    assert!(text.contains("shape_id, m_or_file, alpha"));
    assert!(text.contains("Exit codes"));
    for flag in ["--alpha", "--dim", "--radius", "--inner-radius"] {
        let sub = if flag == "--inner-radius" { "annulus" } else { "ball" };
        assert!(stdout(&robin(&[sub, "--help"])).contains(flag));
    }
    let sweep = stdout(&robin(&["sweep", "--help"]));
    for flag in ["--shape", "--perimeter", "--count", "--seed", "--levels", "--tol", "--quad-tol", "--format", "--out", "--hull-repair"] {
        assert!(sweep.contains(flag), "{flag}");
    }
}

#[test]
fn suite_filter_and_fault_replay() {
    let out = robin(&["suite", "--filter", "perimetri", "--count", "2", "--levels", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS perimetri"));

    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("witness.json");
    let out = robin(&[
        "suite",
        "--filter",
        "energie",
        "--inject-fault",
        "energie",
        "--count",
        "2",
        "--levels",
        "2",
        "--out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("FAIL energie"));
    let out = robin(&["suite", "--replay", witness.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("FAIL energie"));

    assert_eq!(code(&robin(&["suite", "--filter", "no-such-case"])), 2);
    assert_eq!(code(&robin(&["suite", "--inject-fault", "no-such-case"])), 2);
}
