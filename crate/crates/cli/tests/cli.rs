use std::process::Command;

use serde_json::Value;

fn fano14(args: &[&str]) -> (bool, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fano14"))
        .args(args)
        .output()
        .unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.success(), v)
}

#[test]
fn invalid_field_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_fano14"))
        .args(["verify", "--suite", "pencil", "--field", "fp:4"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid field"));
}

#[test]
fn projection_suite_passes_over_f11() {
    let (ok, v) = fano14(&[
        "verify",
        "--suite",
        "projection",
        "--seed",
        "1",
        "--field",
        "fp:11",
    ]);
    assert!(ok && v["passed"] == true, "{v}");
}

#[test]
fn scan_suite_passes_at_p7() {
    let (ok, v) = fano14(&["verify", "--suite", "scan", "--p", "7"]);
    assert!(ok, "{v}");
    assert_eq!(v["checks"][0]["name"], "W = V cross-check");
}

#[test]
fn build_output_feeds_scan_and_projection() {
    let dir = std::env::temp_dir().join(format!("fano14-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pair = dir.join("pair.json");
    let (ok, built) = fano14(&[
        "build",
        "--seed",
        "1",
        "--p",
        "7",
        "--out",
        pair.to_str().unwrap(),
    ]);
    assert!(ok && built.is_null());
    let (ok, y) = fano14(&["scan", "--what", "y", "--pair", pair.to_str().unwrap()]);
    assert!(ok);
    assert_eq!(y["target"], "y");
    assert_eq!(y["p"], 7);

    let line = dir.join("line.json");
    let std_line = serde_json::json!({
        "generators": [
            {"side": "V*", "coords": [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]},
            {"side": "V*", "coords": [0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0]}
        ]
    });
    std::fs::write(&line, std_line.to_string()).unwrap();
    let point = dir.join("point.json");
    std::fs::write(
        &point,
        r#"{"side": "V", "coords": [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]}"#,
    )
    .unwrap();
    let (ok, pt) = fano14(&[
        "project",
        "--line",
        line.to_str().unwrap(),
        "--point",
        point.to_str().unwrap(),
        "--p",
        "7",
    ]);
    assert!(ok, "{pt}");
    assert_eq!(
        pt["coords"],
        serde_json::json!([1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    );
    assert_eq!(pt["residuals"], serde_json::json!([0, 0, 0, 0, 0]));
    std::fs::remove_dir_all(&dir).ok();
}
