use std::io::Write;
use std::process::{Command, Output};

const SAMPLE_P: &str = "Z^5+X^4*Z+Z^3*X^2";
const SAMPLE_Q: &str = "Y^7+Y^5*Z*X+Y^2*X*Z^4+Z^4*X^3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dancount"))
        .args(args)
        .env_remove("DANCOUNT_MAX_Q")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(out.stdout.as_slice())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<String> {
    let i = rows[0]
        .iter()
        .position(|h| h == name)
        .expect("column present");
    rows[1..].iter().map(|r| r[i].clone()).collect()
}

#[test]
fn sample_surface_over_f4() {
    let out = run(&[
        "count", "--q", "4", "--d1", "2", "--d2", "3", "--P", SAMPLE_P, "--Q", SAMPLE_Q,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["total"], 16);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["field"]["p"], 2);
    assert_eq!(v["field"]["r"], 2);
    assert_eq!(v["s1"], 4);
    assert_eq!(v["s2"], 12);
    for (_, value) in v["methods"].as_object().unwrap() {
        assert!(value == 1 || value == "n/a", "{value}");
    }
    assert!(v["closed_form"]["family"].is_string());
    assert!(v["bounds"].is_object());
}

#[test]
fn single_surfaces() {
    let out = run(&["count", "--q", "17", "--single", "--d", "1", "--P", "Z^8-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        (v["n0"].as_u64(), v["total"].as_u64()),
        (Some(8), Some(408))
    );
    assert_eq!(v["methods"]["resultant"], "n/a");
    assert!(v["closed_form"].is_null() || v["closed_form"]["value"] == 8);

    let out = run(&["count", "--q", "3", "--single", "--P", "Z^2+1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["total"], 6);
}

#[test]
fn method_selection() {
    let out = run(&[
        "count",
        "--q",
        "7",
        "--P",
        "Z^2-1",
        "--Q",
        "Y^2-Z",
        "--methods",
        "gcd,resultant",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&String> = v["methods"].as_object().unwrap().keys().collect();
    assert_eq!(names, ["gcd", "resultant"]);
    // Z = 1 gives Y = 1 or -1; -1 is not a square mod 7.
    assert_eq!(v["n0"], 2);
    assert_eq!(v["total"], 7 * 8);
}

#[test]
fn output_is_byte_identical() {
    let args = [
        "count", "--q", "9", "--d1", "2", "--d2", "3", "--P", SAMPLE_P, "--Q", SAMPLE_Q,
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let sweep = ["sweep", "--qs", "2..16", "--row", "3"];
    assert_eq!(run(&sweep).stdout, run(&sweep).stdout);
}

#[test]
fn sweep_sample_surface() {
    let out = run(&[
        "sweep",
        "--qs",
        "2,3,4,5,7,9",
        "--d1",
        "2",
        "--d2",
        "3",
        "--P",
        SAMPLE_P,
        "--Q",
        SAMPLE_Q,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(column(&rows, "q"), ["2", "3", "4", "5", "7", "9"]);
    assert_eq!(column(&rows, "total"), ["4", "9", "16", "25", "49", "81"]);
    assert!(column(&rows, "agreement").iter().all(|a| a == "true"));
}

#[test]
fn sweep_polygonal_row_two() {
    let out = run(&["sweep", "--row", "2", "--qs", "2..13"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    for (q, total) in column(&rows, "q").iter().zip(column(&rows, "total")) {
        let q: u64 = q.parse().unwrap();
        assert_eq!(total, (2 * q * q - q).to_string());
    }
    assert_eq!(rows.len(), 10);
}

#[test]
fn empty_sweep_is_header_only() {
    let out = run(&["sweep", "--qs", "", "--P", "Z", "--Q", "Y"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("q,"));
}

#[test]
fn sweep_reports_row_errors() {
    let out = run(&["sweep", "--qs", "3,6", "--P", "Z^2", "--Q", "Y^2"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = csv_rows(&out);
    let errors = column(&rows, "error");
    assert_eq!(errors[0], "");
    assert!(errors[1].contains("prime power"));
}

#[test]
fn polygonal_table() {
    let out = run(&["polygonal", "--row", "1", "--qs", "2,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(column(&rows, "total"), ["4", "9", "25"]);
    assert!(column(&rows, "match").iter().all(|m| m == "true"));

    let rows = csv_rows(&run(&["polygonal", "--row", "2", "--qs", "7"]));
    assert_eq!(column(&rows, "total"), ["91"]);
    let rows = csv_rows(&run(&["polygonal", "--row", "4", "--qs", "2"]));
    assert_eq!(
        (column(&rows, "total"), column(&rows, "expected")),
        (vec!["10".into()], vec!["10".into()])
    );

    assert_eq!(
        run(&["polygonal", "--row", "5", "--qs", "3"]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["count", "--q", "4", "--P", "Z^2 +", "--Q", "Y^2"][..],
        &["count", "--q", "6", "--P", "Z", "--Q", "Y"],
        &["count", "--q", "9", "--r", "1", "--P", "Z", "--Q", "Y"],
        &["count", "--q", "5", "--P", "2*Z", "--Q", "Y^2"],
        &[
            "count",
            "--q",
            "5",
            "--P",
            "Z",
            "--Q",
            "Y^2",
            "--methods",
            "magic",
        ],
        &["count", "--nonsense"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn env_cap_limits_field_size() {
    let out = Command::new(env!("CARGO_BIN_EXE_dancount"))
        .args(["count", "--q", "9", "--P", "Z", "--Q", "Y"])
        .env("DANCOUNT_MAX_Q", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn config_file_with_flag_override() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "q = 3\nd1 = 2\nd2 = 3\nP = \"{SAMPLE_P}\"\nQ = \"{SAMPLE_Q}\"\nmethods = \"oracle,gcd\"\n\n[caps]\nenumeration = 2"
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let v = json(&run(&["count", "--config", path]));
    assert_eq!(v["total"], 9);
    assert!(v["enumerated_total"].is_null());
    assert_eq!(v["methods"].as_object().unwrap().len(), 2);

    let v = json(&run(&["count", "--config", path, "--q", "5"]));
    assert_eq!(v["total"], 25);
    assert_eq!(v["field"]["q"], 5);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = \"blue\"").unwrap();
    let out = run(&["count", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
