use std::io::Write;
use std::process::{Command, Output};

fn bdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdes"))
        .args(args)
        .env_remove("BDES_CONFIG")
        .output()
        .expect("run bdes")
}

fn ok(args: &[&str]) -> String {
    let out = bdes(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    bdes(args).status.code().unwrap()
}

#[test]
fn table_rows() {
    assert_eq!(ok(&["table", "--patterns", "231", "--n", "8"]), "128 672 560 70\n");
    assert_eq!(ok(&["table", "--patterns", "", "--n", "4"]), "8 14 2\n");
    assert_eq!(
        ok(&["table", "--patterns", "132,321", "--n", "6", "--full"]),
        "2 14 0 0 0 0 0\n"
    );
    assert_eq!(ok(&["table", "--patterns", "132,321", "--n", "6"]), "2 14\n");
}

#[test]
fn table_formats() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["table", "--patterns", "231", "--n", "4", "--format", "json"])).unwrap();
    assert_eq!(v["counts"], serde_json::json!([8, 6, 0, 0, 0]));
    assert_eq!(v["patterns"], serde_json::json!(["231"]));

    let range: serde_json::Value =
        serde_json::from_str(&ok(&["table", "--patterns", "231", "--n", "1..3", "--format", "json"])).unwrap();
    assert_eq!(range.as_array().unwrap().len(), 3);

    let b = ok(&["table", "--patterns", "231", "--n", "2..3", "--format", "bfile"]);
    let data: Vec<&str> = b.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, ["0 2", "1 0", "2 0", "3 4", "4 1", "5 0", "6 0"]);

    let tsv = ok(&["table", "--patterns", "123", "--n", "3", "--format", "tsv"]);
    assert_eq!(tsv.lines().next(), Some("n\tk\tcount"));
}

#[test]
fn series_rows() {
    let s = ok(&["series", "--id", "B231_321", "--order", "9"]);
    assert!(s.lines().any(|l| l == "9: 55+147t+53t^2+t^3"), "{s}");
    let s = ok(&["series", "--id", "Bgrave123", "--order", "6", "--route", "both"]);
    assert!(s.lines().any(|l| l == "4: 1+6t+6t^2+t^3"), "{s}");
    let s = ok(&["series", "--id", "R_run", "--r", "2", "--order", "3"]);
    assert!(s.lines().any(|l| l == "3: 5+3t"), "{s}");
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["series", "--id", "B132", "--order", "4", "--format", "json"])).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn series_routes_agree_for_every_functional_id() {
    for id in ["B132", "B321", "B123", "Bgrave123", "B123_132", "B132_213", "W", "G"] {
        ok(&["series", "--id", id, "--order", "8", "--route", "both"]);
    }
}

#[test]
fn qsym_expansions() {
    assert_eq!(
        ok(&["qsym", "--patterns", "123", "--n", "5"]),
        "s(2,2,1)+4s(3,2)+3s(4,1)+5s(5)\n"
    );
    assert_eq!(ok(&["qsym", "--patterns", "1234", "--n", "4"]), "2s(2,2)+4s(3,1)+7s(4)\n");
    let m = ok(&["qsym", "--patterns", "132", "--n", "4", "--basis", "monomial"]);
    assert!(m.starts_with("symmetry=false"), "{m}");
    assert_eq!(code(&["qsym", "--patterns", "132", "--n", "4"]), 2);
}

#[test]
fn verify_scopes_pass() {
    for scope in ["class-equalities", "formulas", "bijections", "genfun-crossroutes"] {
        let out = ok(&["verify", "--scope", scope, "--max-n", "7"]);
        assert!(out.trim_end().ends_with("0 failed"), "{scope}: {out}");
    }
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "--scope", "bijections", "--max-n", "5", "--format", "json"])).unwrap();
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn conjecture_scans() {
    let rr = ok(&["conjecture", "--which", "real-rooted", "--max-n", "10"]);
    assert!(rr.contains("smallest failing n for {123,132}: 7"), "{rr}");
    ok(&["conjecture", "--which", "log-concave", "--max-n", "10"]);
    ok(&["conjecture", "--which", "schur-positive", "--max-n", "7"]);
    ok(&["conjecture", "--which", "branden", "--max-n", "8"]);
    ok(&["conjecture", "--which", "stembridge", "--max-n", "8"]);
}

#[test]
fn bijection_and_formula() {
    let path = ok(&["bijection", "--id", "omega_f", "--input", "2143"]);
    let back = ok(&["bijection", "--id", "omega_f", "--input", path.trim(), "--inverse"]);
    assert_eq!(back, "2143\n");
    assert_eq!(code(&["bijection", "--id", "omega_f", "--input", "3142"]), 2);
    assert_eq!(ok(&["formula", "--id", "b231", "--n", "7", "--k", "3"]), "5\n");
    assert_eq!(ok(&["formula", "--id", "b231", "--n", "7"]), "64 240 120 5\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["table", "--patterns", "12x", "--n", "3"]), 2);
    assert_eq!(code(&["table", "--patterns", "", "--n", "13"]), 3);
    assert_eq!(code(&["series", "--id", "B132", "--order", "41"]), 3);
    assert_eq!(code(&["series", "--id", "nope"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("bdes-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
        p.to_str().unwrap().to_string()
    };
    let small = write("small.toml", "[guards]\nmax_n_restricted = 5\n");
    assert_eq!(code(&["--config", &small, "table", "--patterns", "231", "--n", "6"]), 3);
    assert_eq!(
        ok(&["--config", &small, "--max-n-restricted", "6", "table", "--patterns", "231", "--n", "6"]),
        "32 80 20\n"
    );
    let env = Command::new(env!("CARGO_BIN_EXE_bdes"))
        .args(["table", "--patterns", "231", "--n", "6"])
        .env("BDES_CONFIG", &small)
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));

    let float = write("float.toml", "[runtime]\nprecision = \"f64\"\n");
    assert_eq!(code(&["--config", &float, "table", "--patterns", "231", "--n", "3"]), 2);
    let typo = write("typo.toml", "[sereis]\norder = 3\n");
    assert_eq!(code(&["--config", &typo, "table", "--patterns", "231", "--n", "3"]), 2);
    std::fs::remove_dir_all(&dir).ok();
}
