use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn regpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regpow"))
        .args(args)
        .env("REGPOW_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn analyze_prints_the_power_table() {
    let o = regpow(&[
        "analyze",
        &fixture("figure2.txt"),
        "--max-power",
        "3",
        "--json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["reg"], 4);
    assert_eq!(v["nu"], 3);
    assert_eq!(
        v["power_table"],
        serde_json::json!({"1": 4, "2": 6, "3": 8})
    );

    let text = stdout(&regpow(&["analyze", &fixture("figure2.txt")]));
    assert!(text.contains("gamma        {y1, y2, y3, y6, y7}"), "{text}");
}

#[test]
fn analyze_forest_and_whiskered_cycle() {
    let v = json(&regpow(&[
        "analyze",
        &fixture("edge.txt"),
        "--max-power",
        "2",
        "--json",
    ]));
    assert_eq!(v["power_table"], serde_json::json!({"1": 2, "2": 4}));
    let v = json(&regpow(&[
        "analyze",
        &fixture("whiskered_c5.txt"),
        "--max-power",
        "2",
        "--json",
    ]));
    assert_eq!(v["reg"], 3);
    assert_eq!(v["power_table"], serde_json::json!({"1": 3, "2": 5}));
}

#[test]
fn analyze_exit_codes() {
    let o = regpow(&["analyze", &fixture("bicyclic.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle"));
    assert_eq!(
        regpow(&["analyze", &fixture("malformed.txt")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        regpow(&["analyze", "/nonexistent/graph.txt"]).status.code(),
        Some(1)
    );
}

#[test]
fn oracle_values() {
    let o = regpow(&["oracle", &fixture("bicyclic.txt"), "--emit-witness"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("reg          5\n"), "{text}");
    assert!(text.contains("characteristic 0"));
    assert!(text.contains("witness      W = {"));

    let v = json(&regpow(&[
        "oracle",
        &fixture("c5.txt"),
        "--power",
        "2",
        "--json",
    ]));
    assert_eq!(v["regularity"], 4);
    let v = json(&regpow(&[
        "oracle",
        &fixture("c5_tail.txt"),
        "--json",
        "--engine",
        "hochster",
    ]));
    assert_eq!(v["regularity"], 4);
}

#[test]
fn oracle_on_ideal_text() {
    let dir = std::env::temp_dir().join(format!("regpow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.txt");
    std::fs::write(&path, "(a^2, a*b, b^3)\n").unwrap();
    let v = json(&regpow(&[
        "oracle",
        path.to_str().unwrap(),
        "--ideal",
        "--json",
    ]));
    // reg (a^2, ab, b^3) = 3
    assert_eq!(v["regularity"], 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn oracle_resource_limit() {
    let o = regpow(&[
        "oracle",
        &fixture("c5.txt"),
        "--power",
        "2",
        "--max-vars",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = regpow(&[
        "oracle",
        &fixture("c5.txt"),
        "--power",
        "2",
        "--max-vars",
        "4",
        "--heavy",
    ]);
    assert!(o.status.success());
}

#[test]
fn colon_listing_flags_even_connections() {
    let o = regpow(&["colon", &fixture("figure2.txt"), "--product", "x1,x5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.contains("y2*y7") && l.contains("even-connected")),
        "{text}"
    );

    let v = json(&regpow(&[
        "colon",
        &fixture("figure3.txt"),
        "--product",
        "x3,x4",
        "--json",
    ]));
    let gens = v["generators"].as_array().unwrap();
    let x2x5 = gens
        .iter()
        .find(|g| g["generator"] == "x2*x5")
        .expect("x2*x5 listed");
    assert_eq!(x2x5["origin"], "even-connection");
    assert_eq!(v["matches_direct_colon"], true);
}

#[test]
fn colon_on_c6_adds_one_chord() {
    // x6-x1-x2-x3 is the only even-connection through x1x2
    let v = json(&regpow(&[
        "colon",
        &fixture("c6.txt"),
        "--product",
        "x1,x2",
        "--json",
    ]));
    assert_eq!(v["matches_direct_colon"], true);
    let extra: Vec<_> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["origin"] != "edge")
        .map(|g| g["generator"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(extra, ["x3*x6"]);
}

#[test]
fn colon_rejects_bad_products() {
    assert_eq!(
        regpow(&["colon", &fixture("c6.txt"), "--product", "x1,x3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        regpow(&["colon", &fixture("c6.txt"), "--product", "x1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_small_families() {
    let o = regpow(&[
        "verify",
        "--family",
        "unicyclic",
        "--max-vertices",
        "6",
        "--powers",
        "1..2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let summary = text.lines().last().unwrap();
    assert!(
        summary.starts_with("checked=") && summary.contains(" failed=0 "),
        "{summary}"
    );

    let o = regpow(&["verify", "--family", "unicyclic", "--max-vertices", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("checked=0 failed=0"));

    let o = regpow(&[
        "verify",
        "--family",
        "forest",
        "--max-vertices",
        "5",
        "--dedup",
        "--json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["summary"]["failed"], 0);
}

#[test]
fn verify_rejects_bad_flags() {
    assert!(
        !regpow(&["verify", "--family", "tree", "--max-vertices", "4"])
            .status
            .success()
    );
    assert!(!regpow(&[
        "verify",
        "--family",
        "forest",
        "--max-vertices",
        "4",
        "--powers",
        "3..1"
    ])
    .status
    .success());
    assert!(!regpow(&[
        "verify",
        "--family",
        "forest",
        "--max-vertices",
        "4",
        "--claims",
        "nope"
    ])
    .status
    .success());
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--family",
        "cycle-with-forest",
        "--max-vertices",
        "5",
        "--max-forest-edges",
        "1",
        "--dedup",
        "--json",
    ];
    let a = regpow(&args);
    let b = regpow(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
