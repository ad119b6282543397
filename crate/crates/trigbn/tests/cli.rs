use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use trigbn::report::{
    CertificateRecord, ClassificationRecord, DeltaParityRecord, H0Record, RegionRecord,
    SignatureRecord, ValidationRecord,
};
use trigbn::sweep::SweepRow;

fn trigbn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigbn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn classify_genus_five_json() {
    let o = trigbn(&["classify", "5", "2", "1", "1", "4", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: ClassificationRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec.kind, "bounds");
    assert_eq!((rec.lower, rec.upper), (Some(2), Some(4)));
    assert!(
        stdout(&o).starts_with(r#"{"d":4,"r":1,"kind":"bounds","lower":2,"upper":4,"provenance":"#)
    );
}

#[test]
fn genus_five_table_mentions_both_outcomes() {
    let o = trigbn(&["classify", "5", "3", "1", "1", "4", "1"]);
    let text = stdout(&o);
    assert!(text.contains("2n-1 = 5"), "{text}");
    assert!(text.contains("2n = 6"), "{text}");
}

#[test]
fn snk_prints_the_count() {
    let o = trigbn(&["snk", "3", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn inconsistent_parameters_exit_one() {
    let o = trigbn(&["classify", "6", "3", "3", "1", "5", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(
        stderr(&o).contains("inconsistent parameters"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        trigbn(&["validate", "5", "7", "1", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        trigbn(&["validate", "5", "2", "1", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(
        trigbn(&["classify", "5", "2", "1", "1", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        trigbn(&["classify", "5", "2", "1", "1", "5", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(trigbn(&["snk", "65", "2"]).status.code(), Some(2));
    assert_eq!(trigbn(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        trigbn(&["signature", "5", "2", "1", "1", "K +"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trigbn(&["harness", "case3", "6", "3", "3", "1", "5", "1", "1,2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn validate_names_violations() {
    let o = trigbn(&["validate", "6", "2", "3", "1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["violations"], serde_json::json!(["deltaT3-constraint"]));
}

#[test]
fn negative_twists_are_accepted() {
    let o = trigbn(&["h0", "5", "1", "-2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["h0"].as_i64(), v["degree"].as_i64()), (Some(1), Some(2)));
}

#[test]
fn signature_of_k_minus_two_t() {
    let o = trigbn(&["signature", "5", "2", "1", "1", "K - 2*T", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["parity"], serde_json::json!([0, 0]));
}

#[test]
fn harness_commands() {
    let o = trigbn(&[
        "harness", "case2", "12", "4", "1", "3", "9", "1", "2,3", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["target"], "V(2,3)@4");

    let o = trigbn(&[
        "harness",
        "obstruction",
        "6",
        "3",
        "1",
        "1",
        "5",
        "1",
        "V(2,3)",
        "--json",
    ]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["search"]["witnesses"], 0);

    let o = trigbn(&["harness", "delta-parity", "12", "3", "9", "1"]);
    assert!(stdout(&o).ends_with("deltaT=1 forced\n"));
    assert_eq!(
        trigbn(&["harness", "delta-parity", "5", "1", "4", "1"])
            .status
            .code(),
        Some(1)
    );

    let o = trigbn(&["harness", "disjoint", "6", "2", "1", "2", "4", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned>(args: &[&str]) {
    let o = trigbn(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    let text = stdout(&o);
    let rec: T = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(
        serde_json::to_string(&rec).unwrap(),
        text.trim(),
        "{args:?}"
    );
}

#[test]
fn json_round_trips() {
    round_trip::<ClassificationRecord>(&["classify", "12", "4", "1", "3", "9", "1", "--json"]);
    round_trip::<ClassificationRecord>(&["classify", "10", "1", "1", "2", "4", "1", "--json"]);
    round_trip::<ClassificationRecord>(&["classify", "5", "2", "1", "1", "4", "1", "--json"]);
    round_trip::<RegionRecord>(&["region", "12", "3", "--json"]);
    round_trip::<ValidationRecord>(&["validate", "6", "3", "3", "1", "--json"]);
    round_trip::<H0Record>(&["h0", "9", "3", "-1", "--json"]);
    round_trip::<SignatureRecord>(&[
        "signature",
        "6",
        "3",
        "3",
        "1",
        "K - T + 1*R(2,a)",
        "--json",
    ]);
    round_trip::<CertificateRecord>(&[
        "harness", "case3", "8", "3", "3", "2", "6", "1", "0", "--json",
    ]);
    round_trip::<CertificateRecord>(&[
        "harness", "disjoint", "6", "2", "1", "2", "4", "1", "--json",
    ]);
    round_trip::<DeltaParityRecord>(&["harness", "delta-parity", "6", "1", "5", "1", "--json"]);
}

/// Valid `(g, n, δ(T), m)` from the raw inequalities, counted without the
/// library.
fn independent_tuple_count(g_max: i64) -> usize {
    let mut count = 0;
    for g in 5..=g_max {
        for n in 1..=g + 1 {
            for dt in [1, 3] {
                if dt == 3 && !(n == 3 && g % 2 == 0) {
                    continue;
                }
                for m in 1..g {
                    if 3 * m >= g - 4 && 2 * m <= g - 2 {
                        // 1 <= d < g, 0 <= r <= d
                        count += (1..g).map(|d| d as usize + 1).sum::<usize>();
                    }
                }
            }
        }
    }
    count
}

#[test]
fn sweep_rows_match_independent_count_and_round_trip() {
    let o = trigbn(&["sweep", "--g-max", "9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), independent_tuple_count(9));
    let mut prev: Option<(i64, i64, i64, i64, i64, i64)> = None;
    for line in lines {
        let row: SweepRow = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&row).unwrap(), line);
        let key = (row.g, row.n, row.delta_t, row.m, row.d, row.r);
        assert!(prev < Some(key), "rows out of order at {line}");
        prev = Some(key);
    }
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    for format in ["json", "csv", "table"] {
        let a = trigbn(&["sweep", "--g-max", "8", "--format", format]);
        let b = trigbn(&["sweep", "--g-max", "8", "--format", format]);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn sweep_csv_layout() {
    let o = trigbn(&["sweep", "--g-max", "8", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("g,n,deltaT,m,d,r,kind,lower,upper,provenance")
    );
    assert_eq!(text.lines().count(), independent_tuple_count(8) + 1);
    assert!(
        text.contains("6,3,3,1,5,1,inconsistent,,,\n"),
        "missing inconsistent row"
    );
    for line in lines {
        assert_eq!(line.split(',').count(), 10, "{line}");
    }
}

#[test]
fn region_svg() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("region-12-3.svg");
    let o = trigbn(&[
        "region",
        "12",
        "3",
        "--svg",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let points = v["points"].as_array().unwrap().len();
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"<circle class=""#).count(), points);
    assert!(svg.contains(r#"id="segment""#) && svg.contains(r#"id="legend""#));

    let again = dir.join("region-12-3-again.svg");
    trigbn(&["region", "12", "3", "--svg", again.to_str().unwrap()]);
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}
