use std::path::PathBuf;
use std::process::{Command, Output};

fn lieverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieverify")).args(args).output().expect("binary runs")
}

fn write_tmp(name: &str, content: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn jacobi_on_catalog_algebras() {
    for alg in ["sl2", "so32", "sp4", "so42", "sl4"] {
        let o = lieverify(&["check-jacobi", "--algebra", alg]);
        assert_eq!(o.status.code(), Some(0), "{alg}: {}", stdout(&o));
    }
}

#[test]
fn jacobi_on_a_definition_file() {
    let good = write_tmp("heis.alg", "algebra heis\nbasis: x, y, z\n[x,y] = z\n");
    assert_eq!(lieverify(&["check-jacobi", "--algebra", good.to_str().unwrap()]).status.code(), Some(0));

    // [x,y] = x, [y,z] = y, [x,z] = 0 violates Jacobi
    let bad = write_tmp("bad.alg", "algebra bad\nbasis: x, y, z\n[x,y] = x\n[y,z] = y\n");
    let o = lieverify(&["check-jacobi", "--algebra", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("residual"));
}

#[test]
fn cybe_from_rmatrix_files() {
    let nonstandard = write_tmp("jordanian.r", "# Jordanian r-matrix\nr = 1 * h ^ e_plus\n");
    let o = lieverify(&["check-cybe", "--algebra", "sl2", "--rmatrix", nonstandard.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let standard = write_tmp("standard.r", "r = e_plus ^ e_minus\n");
    let o = lieverify(&["check-cybe", "--algebra", "sl2", "--rmatrix", standard.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    // catalog labels resolve through the Cartan-Weyl names
    let null_plane = write_tmp("sl4.r", "r = (h1 - h3) ^ e6 + 2*(h3 ^ e6 + e1 ^ e5 - e3 ^ e4)\n");
    let o = lieverify(&["check-cybe", "--algebra", "so42", "--rmatrix", null_plane.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_with_two_and_a_position() {
    let dangling = write_tmp("dangling.r", "r = h ^\n");
    let o = lieverify(&["check-cybe", "--algebra", "sl2", "--rmatrix", dangling.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:8"));

    let unknown = write_tmp("unknown.r", "r = h ^ nope\n");
    let o = lieverify(&["check-cybe", "--algebra", "sl2", "--rmatrix", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lieverify(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(lieverify(&["check-jacobi", "--algebra", "so99"]).status.code(), Some(2));
    assert_eq!(lieverify(&["check-reality", "--star", "so32:lambda=2,eps=1"]).status.code(), Some(2));
    assert_eq!(lieverify(&["map-basis", "--algebra", "sl2"]).status.code(), Some(2));
    assert_eq!(lieverify(&["report", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(lieverify(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reality_follows_the_eps_sign() {
    let o = lieverify(&["check-reality", "--star", "so32:lambda=1,eps=-1", "--params", "c1=1,c2=1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = lieverify(&["check-reality", "--star", "so32:lambda=1,eps=1", "--params", "c1=1,c2=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lieverify(&["check-reality", "--star", "so42:eta=-1,eps=1", "--params", "c1=1,c2=2"]).status.code(), Some(0));
    assert_eq!(lieverify(&["check-reality", "--star", "so42:eta=-1,eps=1", "--params", "c1=1,c2=1"]).status.code(), Some(1));
}

#[test]
fn map_basis_emits_the_null_plane_tensor() {
    let o = lieverify(&["map-basis", "--algebra", "so42", "--params", "c1=1/2,c2=1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["matches_expected"], true);
    assert_eq!(v["tensor"], "-1/2*P0 ^ L3 - 1/2*P1 ^ M2 - 1/2*P1 ^ L1 + 1/2*P2 ^ M1 - 1/2*P2 ^ L2 - 1/2*P3 ^ L3");
    assert_eq!(v["terms"].as_array().unwrap().len(), 12);

    let o = lieverify(&["map-basis", "--algebra", "so32", "--params", "c1=2,c2=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("r = "));
}

#[test]
fn hopf_verify_reports_the_antipode_discrepancy_distinctly() {
    let o = lieverify(&["hopf-verify", "--order", "4", "--compare-printed-antipode", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["summary"]["recorded_discrepancy"], 1);
    assert_eq!(v["summary"]["fail"], 0);

    let o = lieverify(&["hopf-verify", "--order", "4", "--format", "json"]);
    assert_eq!(json(&o)["summary"]["recorded_discrepancy"], 0);
}

#[test]
fn verify_runs_suites_and_claims() {
    let o = lieverify(&["verify", "--suite", "jacobi"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 5 pass"));

    let o = lieverify(&["verify", "--claim", "hopf.casimir", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 3);

    assert_eq!(lieverify(&["verify", "--claim", "no.such"]).status.code(), Some(2));
}

#[test]
fn corrupted_catalog_fails_with_a_named_witness() {
    let o = lieverify(&["verify", "--suite", "jacobi", "--corrupt-catalog", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failing: Vec<&serde_json::Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(failing.iter().any(|c| c["id"] == "jacobi.sl2" && c["witness"].as_str().unwrap().contains('[')));
}
