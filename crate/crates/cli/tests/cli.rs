use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    workbench(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = workbench(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn catalog_file(spec: &str, name: &str) -> String {
    let out = workbench(&["catalog", "get", spec]);
    assert!(out.status.success(), "{spec}");
    scratch(name, std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    let sl2 = catalog_file("sl2", "sl2.json");
    assert_eq!(code(&["variety", "check", &sl2, "--variety", "malcev"]), 0);
    assert_eq!(code(&["variety", "check", &sl2, "--variety", "associative"]), 1);
    assert_eq!(code(&["variety", "check", &sl2, "--variety", "no-such-variety"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["variety", "check", "sl2"]), 2);
    assert_eq!(code(&["catalog", "get", "nonesuch"]), 2);
    assert_eq!(code(&["variety", "check", "/nonexistent/a.json", "--variety", "lie"]), 2);
}

#[test]
fn malformed_json_reports_path_and_position() {
    let bad = scratch("bad.json", "{\n  \"dim\": 2,\n  oops\n}");
    let out = workbench(&["variety", "check", &bad, "--variety", "lie"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&format!("{bad}:3:")), "{err}");
}

#[test]
fn local_generic_space_of_m8() {
    let m8 = catalog_file("M8", "m8.json");
    let r = json(&["der", "space", &m8, "--delta", "1", "--local-generic"]);
    assert_eq!(r["schema"], "1");
    assert_eq!(r["command"], "der space");
    assert_eq!(r["dim"], 28);
    assert_eq!(r["antisymmetric"], true);
}

#[test]
fn nf2_degenerates_to_zero() {
    let nf2 = catalog_file("NF(2)", "nf2.json");
    let zero2 = catalog_file("abelian(2)", "zero2.json");
    let cert = scratch("diag_t_t3.json", r#"[["t", "0"], ["0", "t^3"]]"#);
    assert_eq!(code(&["degen", "verify", "--from", &nf2, "--to", &zero2, "--cert", &cert]), 0);
    let r = json(&["degen", "verify", "--from", &nf2, "--to", &zero2, "--cert", &cert]);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["limit_exists"], true);
    // the reverse direction has no limit matching NF(2)
    assert_eq!(code(&["degen", "verify", "--from", &zero2, "--to", &nf2, "--cert", &cert]), 1);
    assert_eq!(code(&["degen", "obstruct", "--from", &zero2, "--to", &nf2]), 1);
    assert_eq!(code(&["degen", "obstruct", "--from", &nf2, "--to", &zero2]), 0);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["der", "space", "M8", "--local-generic"][..],
        &["der", "local", "sl2", "--matrix", "MATRIX"][..],
        &["conservative", "heis3"][..],
        &["ext", "cocycles", "--algebra", "abelian(2)", "--variety", "lie"][..],
        &["catalog", "get", "U2e"][..],
    ] {
        let m = scratch("skew.json", r#"[[0,1,0],[-1,0,0],[0,0,0]]"#);
        let args: Vec<&str> = args.iter().map(|a| if *a == "MATRIX" { m.as_str() } else { a }).collect();
        let mut all = vec!["--json"];
        all.extend(&args);
        let a = workbench(&all);
        let b = workbench(&all);
        assert_ne!(a.status.code(), Some(2), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn catalog_round_trip() {
    let defining = [
        ("abelian(3)", "associative"),
        ("NF(4)", "leibniz"),
        ("filiform1p(4,2)", "leibniz"),
        ("R(2,1)", "leibniz"),
        ("sl2", "lie"),
        ("heis3", "lie"),
        ("matrix(2)", "associative"),
        ("uppertri(3)", "associative"),
        ("quaternions", "associative"),
        ("octonions", "alternative"),
        ("M7", "malcev"),
        ("ternaryJordan(3)", "nary-jordan"),
        ("A_n(3)", "n-lie"),
        ("D(3)", "lie"),
        ("tp4", "commutative"),
    ];
    for (spec, variety) in defining {
        let path = catalog_file(spec, "round.json");
        assert_eq!(code(&["variety", "check", &path, "--variety", variety]), 0, "{spec} in {variety}");
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["schema"], "1", "{spec}");
    }
    let list = json(&["catalog", "list"]);
    assert!(list["algebras"].as_array().unwrap().len() >= 20);
}

#[test]
fn stdin_input() {
    let sl2 = workbench(&["catalog", "get", "sl2"]).stdout;
    let mut child = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["variety", "check", "-", "--variety", "lie"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::null())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(&sl2).unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(0));
}

#[test]
fn kantor_and_poisson_commands() {
    assert_eq!(code(&["kantor", "u2"]), 0);
    assert_eq!(code(&["kantor", "square", "octonions", "--u", "0", "--check", "alternative"]), 0);
    assert_eq!(code(&["kantor", "square", "octonions", "--u", "3", "--check", "alternative"]), 1);
    assert_eq!(code(&["kantor", "square", "octonions", "--u", "3", "--check", "flexible"]), 0);
    let prod = json(&["kantor", "product", "--a", "sl2", "--b", "sl2", "--u", "0"]);
    assert_eq!(prod["dim"], 3);
    assert_eq!(code(&["poisson", "check", "transposed2", "--kind", "transposed", "--link"]), 0);
    assert_eq!(json(&["poisson", "tps-space", "sl2"])["dim"], 0);
    assert_eq!(code(&["conservative", "sl2"]), 0);
}

#[test]
fn incidence_commands() {
    let s = scratch("sigma.json", r#"{"1<2": "2", "2<3": "2", "1<3": "2"}"#);
    let r = json(&["incidence", "poisson-equiv", "--poset", "chain(3)", "--sigma", &s]);
    assert_eq!(r["agree"], true);
    assert_eq!(r["poisson"], true);
    let poset = scratch("vee.json", r#"{"elements": ["a", "b", "c"], "covers": [["a", "b"], ["a", "c"]]}"#);
    let s = scratch("vee_sigma.json", r#"{"a<b": "1", "a<c": "3"}"#);
    assert_eq!(code(&["incidence", "poisson-equiv", "--poset", &poset, "--sigma", &s]), 0);
    let rho = scratch("rho.json", r#"[["0", "1", "0"], ["1", "0", "0"]]"#);
    let d = json(&["incidence", "hd-compose", "--poset", "chain(2)", "--inner", &rho, "--order", "3"]);
    assert_eq!(d["higher_derivation"], true);
    let seq = scratch("seq.json", &d.to_string());
    let sm = scratch("sm.json", r#"{"1<=1": ["1", "0", "0", "0"], "2<=2": ["1", "0", "0", "0"], "1<=2": ["1", "0", "0", "0"]}"#);
    assert_eq!(code(&["incidence", "hd-check", "--poset", "chain(2)", "--seq", &seq, "--rho", &rho, "--sigma-map", &sm]), 0);
    let inv = json(&["incidence", "hd-compose", "--poset", "chain(2)", "--seq", &seq, "--inverse"]);
    let inv_path = scratch("inv.json", &inv.to_string());
    let id = json(&["incidence", "hd-compose", "--poset", "chain(2)", "--seq", &seq, "--with", &inv_path]);
    let d1 = &id["d"].as_array().unwrap()[1..];
    assert!(d1.iter().flat_map(|m| m.as_array().unwrap()).flat_map(|r| r.as_array().unwrap()).all(|x| x == "0"));
}

#[test]
fn extension_commands() {
    let r = json(&["ext", "cocycles", "--algebra", "abelian(2)", "--variety", "lie"]);
    assert_eq!((r["z2_dim"].as_u64(), r["b2_dim"].as_u64(), r["h2_dim"].as_u64()), (Some(1), Some(0), Some(1)));
    let theta = scratch("theta.json", r#"{"theta": [[[0, 1], [-1, 0]]]}"#);
    let h = workbench(&["ext", "build", "--algebra", "abelian(2)", "--cocycle", &theta]);
    assert!(h.status.success());
    let path = scratch("heis.json", std::str::from_utf8(&h.stdout).unwrap());
    assert_eq!(code(&["variety", "check", &path, "--variety", "lie"]), 0);
    assert_eq!(json(&["der", "space", &path])["dim"], json(&["der", "space", "heis3"])["dim"]);
}
