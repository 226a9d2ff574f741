use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_exact-svar"));
    c.env_remove("EXACT_SVAR_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("exact-svar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
    p
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn gamma_cdf_exponential_pair() {
    let o = run(&["--format", "json", "gamma", "cdf", "--alpha", "1", "--n", "2", "--at", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = &json_lines(&o)[0];
    let want = 1.0 - (-1.0f64).exp();
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-9);
    assert_eq!(v["command"], "gamma cdf");
}

#[test]
fn json_schema_is_fixed() {
    let o = run(&["--format", "json", "--no-timing", "uniform", "cdf", "--n", "4", "--at", "0.1:0.5:3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 3);
    for v in &lines {
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["command", "elapsed_ms", "est_error", "extra", "inputs", "method", "value"]);
        assert_eq!(v["elapsed_ms"].as_f64(), Some(0.0));
    }
    let xs: Vec<f64> = lines.iter().map(|v| v["inputs"]["x"].as_f64().unwrap()).collect();
    assert!(xs.iter().zip([0.1, 0.3, 0.5]).all(|(a, b)| (a - b).abs() < 1e-15), "{xs:?}");
}

#[test]
fn formats_carry_identical_values() {
    let base = ["--no-timing", "uniform", "cdf", "--n", "5", "--at", "0.2,0.6"];
    let mut vals = Vec::new();
    for f in ["json", "csv", "table"] {
        let mut args = vec!["--format", f];
        args.extend(base);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        vals.push(stdout(&o));
    }
    let json: Vec<String> = vals[0]
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            format!("{:.16e}", v["value"].as_f64().unwrap())
        })
        .collect();
    for s in &json {
        assert!(vals[0].contains(s.as_str()));
        assert!(vals[1].contains(s.as_str()), "csv lacks {s}");
        assert!(vals[2].contains(s.as_str()), "table lacks {s}");
    }
}

#[test]
fn no_timing_output_is_reproducible() {
    let args = ["--format", "csv", "--no-timing", "gamma", "cdf", "--alpha", "2", "--n", "3", "--at", "0.5:4:4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn uniform_constants() {
    let o = run(&["--format", "json", "uniform", "bn", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let b = json_lines(&o)[0]["value"].as_f64().unwrap();
    assert!((b - 13.0395132).abs() < 1e-4, "{b}");

    let o = run(&["--format", "json", "uniform", "moments", "--n", "3"]);
    let lines = json_lines(&o);
    let vals: Vec<f64> = lines.iter().map(|v| v["value"].as_f64().unwrap()).collect();
    assert!(vals.iter().any(|v| (v - 1.0 / 6.0).abs() < 1e-14), "{vals:?}");
}

#[test]
fn scale_test_on_null_quantiles() {
    // u_i = (i - 1/2)/5 gives a centered statistic of 0.4
    let data = temp_file("quantiles.txt", "# H0 quantiles\n0.1\n0.3\n0.5\n0.7\n0.9\n");
    let o = run(&["--format", "json", "test", "--data", data.to_str().unwrap(), "--null", "uniform", "--level", "0.05"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = &json_lines(&o)[0];
    let stat: f64 = v["extra"]["statistic"].as_str().unwrap().parse().unwrap();
    assert!((stat - 0.4).abs() < 1e-14, "{stat}");
    let p = v["value"].as_f64().unwrap();
    assert!(p > 0.0 && p < 1.0);
    assert_eq!(v["extra"]["reject"], false);
}

#[test]
fn exit_codes() {
    let empty = temp_file("empty.txt", "# nothing here\n\n");
    let o = run(&["test", "--data", empty.to_str().unwrap(), "--null", "uniform"]);
    assert_eq!(o.status.code(), Some(2), "empty data file");

    let outside = temp_file("outside.txt", "0.2\n0.4\n1.7\n0.5\n");
    let o = run(&["test", "--data", outside.to_str().unwrap(), "--null", "uniform"]);
    assert_eq!(o.status.code(), Some(3), "value outside the null support");

    let bad = temp_file("bad.txt", "0.2\nzero\n0.5\n");
    let o = run(&["test", "--data", bad.to_str().unwrap(), "--null", "uniform"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(run(&["gamma", "cdf", "--alpha", "-1", "--n", "2", "--at", "1"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "cdf", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_from_environment() {
    let cfg = temp_file("cfg.txt", "# knobs\nkmax = 0\n");
    let o = bin()
        .env("EXACT_SVAR_CONFIG", &cfg)
        .args(["uniform", "cdf", "--n", "4", "--at", "0.3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "kmax = 0 must be rejected");
    // flags override the file
    let o = bin()
        .env("EXACT_SVAR_CONFIG", &cfg)
        .args(["--kmax", "2000", "uniform", "cdf", "--n", "4", "--at", "0.3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
