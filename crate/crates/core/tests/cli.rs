use std::process::Command;

use prudent::cli::{parse_complex, run};
use prudent::scalar::Real;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("prudent").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Data lines of a csv report (header comments dropped).
fn data(s: &str) -> Vec<Vec<String>> {
    s.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn column(s: &str, i: usize) -> Vec<String> {
    data(s)[1..].iter().map(|r| r[i].clone()).collect()
}

#[test]
fn enumerate_three_sided() {
    let (code, out, _) = call(&["enumerate", "--k", "3", "--max-area", "10"]);
    assert_eq!(code, 0);
    assert_eq!(data(&out)[0], ["n", "count"]);
    assert_eq!(column(&out, 1), ["6", "10", "20", "42", "92", "204", "454", "1010", "2242", "4962"]);
    for m in ["functional", "meromorphic"] {
        let (_, o2, _) = call(&["enumerate", "--k", "3", "--max-area", "10", "--method", m]);
        assert_eq!(column(&o2, 1), column(&out, 1));
    }
}

#[test]
fn enumerate_two_sided_big_integers() {
    let (code, out, _) = call(&["enumerate", "--k", "2", "--max-area", "100"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, 1)[99], "1267650600228229401496703205378");
}

#[test]
fn header_records_configuration() {
    let (_, out, _) = call(&["enumerate", "--k", "4", "--max-area", "3", "--digits", "25"]);
    for key in ["# subcommand = enumerate", "# k = 4", "# max_area = 3", "# digits = 25", "# format = csv", "# timestamp = "] {
        assert!(out.contains(key), "missing {key:?} in\n{out}");
    }
}

#[test]
fn reruns_are_identical_without_timestamp() {
    let args = ["gf-check", "--q", "0.3+0.1i", "--digits", "30", "--no-timestamp"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(!a.contains("timestamp"));
}

#[test]
fn json_layout() {
    let (code, out, _) = call(&["oracle", "--k", "3", "--max-area", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["n", "count"]));
    assert_eq!(v["rows"][3], serde_json::json!(["4", "42"]));
    assert_eq!(v["config"]["subcommand"], "oracle");
}

#[test]
fn verify_reports_matches() {
    let (code, out, _) = call(&["verify", "--k", "3", "--max-area", "6"]);
    assert_eq!(code, 0);
    assert!(column(&out, 3).iter().all(|v| v == "MATCH"));
    let (code, out, _) = call(&["verify", "--k", "4", "--max-area", "4"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(column(&out, 1), column(&out, 2));
}

#[test]
fn constants_line() {
    let (code, out, _) = call(&["constants", "--digits", "12"]);
    assert_eq!(code, 0);
    let line = out.lines().find(|l| l.starts_with("kappa0 = ")).unwrap();
    assert!(line.starts_with("kappa0 = 0.1083842946"), "{line}");
    assert_eq!(line.len(), "kappa0 = 0.108384294600".len());
    assert!(out.contains("zbar1 = 0.618033988750"));
    assert!(out.lines().any(|l| l.starts_with("kappa1 = ") && l.contains(", ")));
}

#[test]
fn gf_check_difference_is_small() {
    let (code, out, _) = call(&["gf-check", "--q", "0.45", "--methods", "taylor,singular", "--format", "csv"]);
    assert_eq!(code, 0, "{out}");
    let rows = data(&out);
    let diff = rows.iter().find(|r| r[0] == "difference").unwrap();
    assert!(diff[3].parse::<f64>().unwrap() < 1e-30, "{diff:?}");
}

#[test]
fn residual_rows() {
    let (code, out, _) = call(&["residuals", "--max-n", "64", "--terms", "5", "--digits", "20", "--window", "3", "6"]);
    assert_eq!(code, 0);
    let rows = data(&out);
    assert_eq!(rows[0], ["n", "log2n", "scaled", "residual"]);
    assert_eq!(rows.len(), 64);
    assert_eq!(rows[1][0], "2");
    assert!(out.contains("# source = exact"));
    assert!(out.contains("# abs_kappa_hat1 = "));
}

#[test]
fn fit_report() {
    let (code, out, _) = call(&["fit", "--k", "3", "--max-n", "200"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("exponent = 1.")), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["enumerate", "--k", "3"]).0, 1);
    assert_eq!(call(&["enumerate", "--k", "7", "--max-area", "3"]).0, 1);
    assert_eq!(call(&["enumerate", "--k", "2", "--max-area", "3", "--method", "theorem"]).0, 1);
    assert_eq!(call(&["gf-check", "--q", "0.4", "--methods", "taylor"]).0, 1);
    let (code, _, err) = call(&["gf-check", "--q", "0.51", "--methods", "taylor,meromorphic"]);
    assert_eq!(code, 2);
    assert!(err.contains("|q| < 1/2"), "{err}");
    assert_eq!(call(&["constants", "--digits", "900"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn complex_arguments() {
    let z = parse_complex("0.47-0.02i", 64).unwrap();
    assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.47, -0.02));
    let z = parse_complex("0.5,1e-3", 64).unwrap();
    assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.5, 1e-3));
    let z = parse_complex("-i", 64).unwrap();
    assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.0, -1.0));
    let z = parse_complex("1e-2+2e-1i", 64).unwrap();
    assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.01, 0.2));
    assert!(parse_complex("abc", 64).is_err());
}

#[test]
fn binary_honours_environment_and_exit_status() {
    let bin = env!("CARGO_BIN_EXE_prudent");
    let o = Command::new(bin).args(["enumerate", "--k", "2", "--max-area", "2"]).env("PRUDENT_DIGITS", "17").output().unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("# digits = 17"));
    let o = Command::new(bin).args(["enumerate", "--k", "9", "--max-area", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(bin).args(["gf-check", "--q", "0.7", "--methods", "taylor,singular"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
