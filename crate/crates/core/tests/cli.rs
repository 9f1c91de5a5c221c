use serde_json::Value;

use sixcycle::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sixcycle").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn elliptic_example() {
    let v = json(&["map-from-elliptic", "--n", "2"]);
    assert_eq!(strs(&v["cycle"]), ["[0:1]", "[1:0]", "[1:1]", "[91:19]", "[49:13]", "[98:-19]"]);
    assert_eq!(strs(&v["map"]["coeffs"]), ["2527", "4655", "-43218", "2527", "-10051", "0"]);
    assert_eq!(strs(&v["model_point"]["coords"]), ["91/19", "49/13", "-98/19"]);
    assert_eq!(v["surface_point"], "[56:-52:91:0]");
}

#[test]
fn surface_example_and_boundary_rejection() {
    let v = json(&["map-from-surface", "--point", "[8/13:-4/7:1:0]"]);
    assert_eq!(strs(&v["model_point"]["coords"]), ["91/19", "49/13", "-98/19"]);
    let (code, out, _) = call(&["map-from-surface", "--point", "[1:0:0:0]"]);
    assert_eq!(code, 1);
    let e: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(e["error"], "boundary-point");
    let (code, out, _) = call(&["map-from-surface", "--point", "[1:2:3:4]"]);
    assert_eq!(code, 1);
    assert!(out.contains("not-on-surface"));
}

#[test]
fn verify_passes() {
    let v = json(&["verify"]);
    assert_eq!(v["ok"], true);
    assert!(v["identities"].as_array().unwrap().iter().all(|r| r["status"] == "verified"));
}

#[test]
fn orbit_of_example_map() {
    let v = json(&["orbit", "--map", "[2527:4655:-43218:2527:-10051:0]", "--start", "[0:1]", "--steps", "12"]);
    assert_eq!(v["tail"]["kind"], "cycle");
    assert_eq!(v["tail"]["period"], 6);
    assert_eq!(v["tail"]["preperiod"], 0);
}

#[test]
fn family_and_exclusions() {
    let v = json(&["map-from-family", "--p", "1/2"]);
    assert_eq!(v["fixed_point"], "[2:3]");
    let (code, out, _) = call(&["map-from-family", "--p", "0"]);
    assert_eq!(code, 1);
    let e: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(e["error"], "excluded-parameter");
}

#[test]
fn sigma_and_membership() {
    let v = json(&["sigma", "--n", "6", "--coords", "91/19,49/13,-98/19", "--times", "6"]);
    let images = strs(&v["images"]);
    assert_eq!(images.len(), 6);
    assert_eq!(images[5], "(91/19, 49/13, -98/19)");
    let v = json(&["sigma", "--point", "[56:-52:91:0]"]);
    assert_eq!(strs(&v["images"]), ["[56:-91:0:52]"]);
    let v = json(&["membership", "--n", "6", "--coords", "91/19,49/13,-98/19"]);
    assert_eq!(v["status"], "inside");
    let v = json(&["membership", "--n", "5", "--coords", "2,2"]);
    assert_eq!(v["status"], "outside");
    let v = json(&["membership", "--point", "[1:1:1:-1]"]);
    assert_eq!(v["status"], "boundary");
}

#[test]
fn classify_points() {
    let (code, out, _) = call(&["classify", "--point", "[-75523:54607:72443:62257]"]);
    assert_eq!(code, 1);
    assert!(out.contains("not-on-surface"));
    let v = json(&["classify", "--point", "[62257:-75523:54607:72443]"]);
    assert_eq!(v["classification"], "sporadic");
    let v = json(&["classify", "--point", "[8/13:-4/7:1:0]"]);
    assert_eq!(v["classification"], "slice-Z0");
    let v = json(&["fermat-points", "--height", "50"]);
    assert_eq!(strs(&v["points"]), ["[0:1:-1]", "[0:1:0]", "[0:1:1]"]);
}

#[test]
fn search_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let (code, _, err) = call(&["search", "--height", "4", "--format", "csv", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("orbits"));
    let (code, _, _) = call(&[
        "search", "--height", "4", "--shards", "4", "--sieve-mods", "7,11", "--format", "csv", "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let mut rd = csv::Reader::from_path(&a).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["height", "orbit_rep", "classification", "W", "X", "Y", "Z"]);
    assert!(rd.records().all(|r| r.unwrap().len() == 7));

    let (_, j1, _) = call(&["search", "--height", "3"]);
    let (_, j2, _) = call(&["search", "--height", "3", "--shards", "8"]);
    assert_eq!(j1, j2);
    for line in j1.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        for key in ["point", "classification", "orbit_rep", "height"] {
            assert!(r.get(key).is_some(), "{key} missing");
        }
    }
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["search"]).0, 2);
    assert_eq!(call(&["map-from-elliptic", "--n", "two"]).0, 2);
    assert_eq!(call(&["sigma", "--n", "6"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
    let (code, _, err) = call(&["search", "--height", "2", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("i/o error"));
    let (code, out, _) = call(&["search", "--height", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("height-out-of-range"));
}

#[test]
fn repeated_runs_are_identical() {
    let a = call(&["verify", "--seed", "7"]);
    let b = call(&["verify", "--seed", "7"]);
    assert_eq!(a, b);
}
