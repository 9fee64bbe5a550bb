use std::fs;
use std::process::{Command, Output};

fn zrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zrp")).args(args).output().unwrap()
}

fn zrp_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zrp")).env("ZRP_THREADS", threads).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let mut lines = text.lines();
    let i = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
}

#[test]
fn phases_format() {
    let o = zrp(&["phases", "--target", "CH", "--k-min", "0.01", "--k-max", "2", "--k-steps", "200"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().next().unwrap(), "k,z,eta0,eta1,cot_eta0,cot_eta1,residual0,residual1");
    let k = column(&text, "k");
    assert_eq!(k.len(), 200);
    assert!(k.windows(2).all(|w| w[1] > w[0]));
    assert_eq!((k[0], k[199]), (0.01, 2.0));
    let z = column(&text, "z");
    assert!((z[0] - 0.01 * 2.116).abs() < 1e-16);
}

#[test]
fn xsec_c2_matches_optical_average() {
    let o = zrp(&["xsec", "--target", "C2", "--R", "2.348", "--k-steps", "50"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let total = column(&text, "sigma_total");
    for (d, s) in column(&text, "abs_diff").iter().zip(total) {
        assert!(*d < 1e-8 * s);
    }
}

#[test]
fn seventeen_digit_fields() {
    let text = stdout(&zrp(&["angular", "--z", "2", "--theta-steps", "5"]));
    for line in text.lines().skip(1) {
        for field in line.split(',') {
            let mantissa = field.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(mantissa.len(), 17, "{field}");
        }
    }
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["amplitude", "--target", "CH", "--k-steps", "7", "--dir-steps", "3"];
    let a = zrp_threads("1", &args);
    let b = zrp_threads("4", &args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, zrp_threads("4", &args).stdout);
}

#[test]
fn target_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("t.json");
    fs::write(
        &target,
        r#"{"name":"CH-file","R":2.116,"center1":{"offset_half_turns":2,"c1":-1.912},
            "center2":{"offset_half_turns":1,"c1":-5.72682,"c2":3.62932}}"#,
    )
    .unwrap();
    let out = dir.path().join("p.csv");
    let o = zrp(&["phases", "--target", target.to_str().unwrap(), "--k-steps", "9", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let from_file = fs::read_to_string(&out).unwrap();
    assert_eq!(from_file, stdout(&zrp(&["phases", "--k-steps", "9"])));
}

#[test]
fn exit_codes() {
    assert_eq!(zrp(&["--help"]).status.code(), Some(0));
    assert_eq!(zrp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zrp(&["phases", "--target", "C2"]).status.code(), Some(2));
    assert_eq!(zrp(&["phases", "--target", "XY"]).status.code(), Some(2));
    assert_eq!(zrp(&["phases", "--k-min", "2", "--k-max", "1"]).status.code(), Some(2));
    assert_eq!(zrp(&["phases", "--k-steps", "0"]).status.code(), Some(2));
    assert_eq!(zrp(&["validate", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(zrp_threads("zero", &["angular"]).status.code(), Some(2));
    assert_eq!(zrp(&["figures"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"name\": \"x\",\n \"R\": }").unwrap();
    let o = zrp(&["phases", "--target", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn numerical_error_exit_code() {
    let o = zrp(&["phases", "--target", "CH", "--k-min", "1e5", "--k-max", "1e5", "--k-steps", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("solve_phases") && err.contains("k = 100000"), "{err}");

    assert_eq!(zrp(&["xsec", "--nodes", "5000", "--k-steps", "1"]).status.code(), Some(2));
    let o = zrp(&["validate", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.ends_with(",FAIL")));
}

#[test]
fn transparent_target_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("flat.json");
    fs::write(
        &t,
        r#"{"name":"flat","R":2.0,"center1":{"offset_half_turns":2,"c1":0.0},"center2":{"offset_half_turns":2,"c1":0.0}}"#,
    )
    .unwrap();
    let o = zrp(&["xsec", "--target", t.to_str().unwrap(), "--k-steps", "3"]);
    assert!(o.status.success());
    assert!(column(&stdout(&o), "sigma_total").iter().all(|&s| s == 0.0));
}

#[test]
fn validate_passes_and_reports_divergence() {
    let o = zrp(&["validate", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "check,target,k,residual,tolerance,status");
    assert!(text.lines().any(|l| l.starts_with("amplitude_fixed_basis_vs_oracle,CH,") && l.ends_with(",INFO")));
    assert!(text.lines().any(|l| l.starts_with("amplitude_fixed_basis_vs_oracle,C2,") && l.ends_with(",PASS")));
}

#[test]
fn figures_layout() {
    let dir = tempfile::tempdir().unwrap();
    let o = zrp(&["figures", "--c2-r", "2.348", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let f2 = fs::read_to_string(dir.path().join("figure2.csv")).unwrap();
    let f3 = fs::read_to_string(dir.path().join("figure3.csv")).unwrap();
    assert!(f2.starts_with("z,theta_deg,Z0,Y00\n"));
    assert!(f3.starts_with("z,theta_deg,Z1,Y10\n"));
    assert_eq!(f2.lines().count(), 1 + 4 * 181);
}
