use std::process::{Command, Output};

use serde_json::Value;

fn dtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtl")).args(args).env_remove("DTL_OUTPUT_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn basis_count() {
    let o = dtl(&["basis", "--n", "3", "--count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "51");
    let listed = dtl(&["basis", "--n", "2"]);
    assert_eq!(stdout(&listed).lines().count(), 9);
}

#[test]
fn multiply_cup_cap_squares_to_delta() {
    let o = dtl(&["multiply", "--n", "2", "D2:(L1,L2)(R1,R2)", "D2:(L1,L2)(R1,R2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "delta^1 * D2:(L1,L2)(R1,R2)");
    let zero = dtl(&["multiply", "--n", "2", "D2:(L1,R1)(L2,R2)", "D2:(L1,R1)"]);
    assert_eq!(stdout(&zero).trim(), "0");
}

#[test]
fn idempotent_certificate() {
    let o = dtl(&["idempotent", "--n", "2", "--link-state", "DO"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["p"]["state"], "DO");
    assert_eq!(v["conditions"], serde_json::json!([true, true, true, true]));
    assert_eq!(v["unit_verified"], true);
}

#[test]
fn link_state_and_ideals() {
    let o = dtl(&["link-state", "--n", "3", "()D"]);
    let v = json(&o);
    assert_eq!(v["link_state"]["cups"], serde_json::json!([[1, 2]]));
    let cup = json(&dtl(&["ideal", "--n", "4", "Cup"]));
    assert!(cup["witness"]["CupTransport"].is_object());
    let k = json(&dtl(&["ideal", "--n", "3", "K:1,3", "--list"]));
    assert_eq!(k["label"], "K_{R1,R3}");
    assert_eq!(k["members"].as_array().unwrap().len(), k["size"].as_u64().unwrap() as usize);
    let empty = json(&dtl(&["ideal", "--n", "3", "L:1,2"]));
    assert_eq!(empty["size"], 0);
}

#[test]
fn mv_dump_feeds_homology() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let o = dtl(&["mv", "--n", "3", "--ring", "Z", "--delta", "-1", "--emit-matrices", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["acyclic"], true);
    assert_eq!(v["tor"][0]["betti"], 1);
    let h = json(&dtl(&["homology", "--in", path.to_str().unwrap()]));
    assert!(h.as_array().unwrap().iter().all(|d| d["betti"] == 0 && d["torsion"].as_array().unwrap().is_empty()));
    let dump: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(dump["schema_version"], 1);
    assert!(dump["boundaries"]["0"]["entries"][0][2].is_string());

    let poly = dtl(&["mv", "--n", "2", "--ring", "Z[delta]", "--delta", "generic"]);
    assert!(poly.status.success());
    assert_eq!(json(&poly)["d_squared_zero"], true);
}

#[test]
fn snf_with_transforms() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"{"rows":2,"cols":2,"entries":[[0,0,"2"],[0,1,"4"],[1,0,"6"],[1,1,"8"]]}"#).unwrap();
    let o = dtl(&["snf", "--in", path.to_str().unwrap(), "--transforms"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn bar_tor_and_tl_compare() {
    let v = json(&dtl(&["bar-tor", "--n", "2", "--ring", "Fp:2", "--delta", "0", "--max-degree", "3"]));
    let bettis: Vec<u64> = v.as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(bettis, vec![1, 0, 0, 0]);
    let t = json(&dtl(&["tl-compare", "--n", "2", "--ring", "Fp:2", "--delta", "0", "--max-degree", "4", "--json"]));
    let tl: Vec<u64> = t["tl"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(tl, vec![1, 1, 1, 1, 1]);
    let table = stdout(&dtl(&["tl-compare", "--n", "2", "--ring", "Fp:2", "--delta", "0"]));
    assert!(table.lines().next().unwrap().contains("dTL_2"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(dtl(&["basis"]).status.code(), Some(2));
    assert_eq!(dtl(&["multiply", "--n", "2", "nonsense", "D2:"]).status.code(), Some(2));
    assert_eq!(dtl(&["mv", "--n", "2", "--ring", "Fp:4", "--delta", "0"]).status.code(), Some(2));
    assert_eq!(dtl(&["verify", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn verify_with_config_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let from_file = dir.path().join("from_file");
    let from_env = dir.path().join("from_env");
    std::fs::write(
        &cfg,
        format!("n_values = [1, 2]\nrings = [\"Q\"]\ndeltas = [-1]\nseed = 7\noutput_dir = {:?}\n", from_file),
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dtl"))
        .args(["verify", "--config", cfg.to_str().unwrap(), "--max-bar-degree", "2"])
        .env("DTL_OUTPUT_DIR", &from_env)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!from_file.exists());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(from_env.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["config"]["seed"], 7);
    assert_eq!(report["config"]["max_bar_degree"], 2);
    assert_eq!(report["config"]["rings"], serde_json::json!(["Q"]));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "n_values = [9]\n").unwrap();
    assert_eq!(dtl(&["verify", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_up_to_timings() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let o = dtl(&["verify", "--n", "1,2", "--output-dir", dir.path().to_str().unwrap()]);
        assert!(o.status.success());
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        for r in v["records"].as_array_mut().unwrap() {
            r["wall_time_us"] = Value::Null;
        }
        v["config"]["output_dir"] = Value::Null;
        v
    };
    assert_eq!(run(), run());
}
