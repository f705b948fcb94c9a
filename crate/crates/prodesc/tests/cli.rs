use std::process::{Command, Output};

use prodesc::report::{Body, Report};

fn prodesc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodesc")).args(args).output().expect("prodesc runs")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn json(args: &[&str]) -> (Report, String, Option<i32>) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = prodesc(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (Report::from_json(&text).unwrap(), text, out.status.code())
}

#[test]
fn cyclic_cohomology_values() {
    let path = fixture("cyclic.json");
    let (report, _, code) = json(&["cohomology", "--input", &path]);
    assert_eq!(code, Some(0));
    let sign: Vec<String> = report
        .results
        .iter()
        .filter(|r| r.name == "Z/4 on Z by sign")
        .map(|r| match &r.body {
            Body::Finite { group, .. } => group.text.clone(),
            other => panic!("unexpected {:?}", other),
        })
        .collect();
    assert_eq!(sign, ["0", "Z/2", "0", "Z/2"]);
}

#[test]
fn reports_round_trip_and_repeat() {
    let path = fixture("ml_towers.json");
    let (report, text, code) = json(&["compare-cohomology", "--input", &path]);
    assert_eq!(code, Some(0));
    assert_eq!(report.to_json(), text);
    let (_, again, _) = json(&["compare-cohomology", "--input", &path]);
    assert_eq!(text, again);
}

#[test]
fn two_adic_coefficients_are_a_pro_object() {
    let path = fixture("two_adic_coefficients.json");
    let out = prodesc(&["hcts", "--input", &path]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("pro-{Z/2 ← Z/4 ← Z/8}"), "{}", table);
}

#[test]
fn times_two_page_has_lim1_cells() {
    let path = fixture("point_times_two.json");
    let (report, _, code) = json(&["compare-e2", "--input", &path]);
    assert_eq!(code, Some(0));
    let Some(Body::E2Comparison { all_ml, cells, .. }) = report.results.first().map(|r| &r.body) else {
        panic!("no comparison");
    };
    assert!(!all_ml);
    assert!(cells.iter().any(|c| (c.s, c.t) == (0, -1) && c.verdict == "differs"));
}

#[test]
fn malformed_input_exits_with_one() {
    let out = prodesc(&["hcts", "--input", &fixture("malformed_tower.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("towers.bad") && err.contains("not surjective"), "{}", err);
}

#[test]
fn missing_input_exits_with_one() {
    assert_eq!(prodesc(&["hcts"]).status.code(), Some(1));
    assert_eq!(prodesc(&["hcts", "--input", "/nonexistent/problem.json"]).status.code(), Some(1));
}

#[test]
fn command_without_requests_is_an_input_error() {
    let out = prodesc(&["compare-e2", "--input", &fixture("cyclic.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exported_complexes_compose_to_zero() {
    let dest = std::env::temp_dir().join(format!("prodesc-export-{}.json", std::process::id()));
    let out = prodesc(&[
        "cohomology",
        "--input",
        &fixture("cyclic.json"),
        "--s-max",
        "1",
        "--export-complexes",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    std::fs::remove_file(&dest).ok();
    let rows = |d: &serde_json::Value| -> Vec<Vec<i64>> {
        d["differential"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
            .collect()
    };
    for cx in v.as_array().unwrap() {
        let degrees = cx["degrees"].as_array().unwrap();
        let orders: Vec<i64> = degrees[2]["orders"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        let (d0, d1) = (rows(&degrees[0]), rows(&degrees[1]));
        for (i, r) in d1.iter().enumerate() {
            for j in 0..d0[0].len() {
                let v: i64 = r.iter().zip(&d0).map(|(a, row)| a * row[j]).sum();
                assert!(if orders[i] == 0 { v == 0 } else { v % orders[i] == 0 }, "{}", cx["module"]);
            }
        }
    }
}
