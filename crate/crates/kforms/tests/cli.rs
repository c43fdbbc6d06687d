use std::process::{Command, Output};

fn kforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kforms")).args(args).env_remove("KFORMS_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn eval_examples() {
    for (src, kappa, expected) in [
        ("x1*x0 - x0*x1", "symbolic", "(i/κ)·x1"),
        ("x1*x0 - x0*x1", "2", "(i/2)·x1"),
        ("star(star(e2))", "symbolic", "e2"),
        ("d(d(x1*x0))", "symbolic", "0"),
    ] {
        let o = kforms(&["eval", src, "--kappa", kappa]);
        assert!(o.status.success(), "{src}");
        assert_eq!(stdout(&o), expected, "{src}");
    }
}

#[test]
fn eval_errors_exit_two() {
    let o = kforms(&["eval", "x0 ^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:5"));
    assert_eq!(kforms(&["eval", "x0", "--backend", "wave", "--kappa", "2"]).status.code(), Some(2));
    assert_eq!(kforms(&["eval", "x0", "--kappa", "-1"]).status.code(), Some(2));
}

#[test]
fn let_bindings() {
    let o = kforms(&["eval", "int(phi)", "--backend", "wave", "--kappa", "2", "--let", "phi=wave(0,0,0,0)"]);
    assert!(o.status.success());
    let bare = kforms(&["eval", "int(wave(0,0,0,0))", "--backend", "wave", "--kappa", "2"]);
    assert_eq!(stdout(&o), stdout(&bare));
}

#[test]
fn dispersion_json() {
    let o = kforms(&["dispersion", "--k", "-0.1,0,0", "--mass", "0", "--kappa", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "kforms.dispersion/1");
    // massless shell: k₀ = −κ ln(1 − |k|/κ)
    assert!((v["k0"].as_f64().unwrap() + 0.9f64.ln()).abs() < 1e-14);
    assert_eq!(kforms(&["dispersion", "--k", "2,0,0", "--mass", "0.5", "--kappa", "1"]).status.code(), Some(2));
}

#[test]
fn noether_on_and_off_shell() {
    let dir = std::env::temp_dir().join(format!("kforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let k0 = |kv: [f64; 3]| kforms_core::fieldtheory::dispersion_solve(kv, 0.5, 2.0).unwrap();
    let on = serde_json::json!([
        {"re": 1.0, "im": 0.5, "k": [k0([0.3, 0.1, 0.0]), 0.3, 0.1, 0.0]},
        {"re": -0.3, "im": 0.2, "k": [k0([-0.2, 0.0, 0.4]), -0.2, 0.0, 0.4]},
    ]);
    let off = serde_json::json!([
        {"re": 1.0, "im": 0.0, "k": [0.4, 0.3, 0.0, 0.0]},
        {"re": 0.5, "im": 0.0, "k": [0.7, 0.0, -0.2, 0.1]},
    ]);
    let run = |name: &str, modes: &serde_json::Value| {
        let path = dir.join(name);
        std::fs::write(&path, modes.to_string()).unwrap();
        let o = kforms(&["noether", "--modes", path.to_str().unwrap(), "--mass", "0.5", "--kappa", "2"]);
        assert!(o.status.success());
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()
    };
    let worst = |v: &serde_json::Value| v["divergence"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).fold(0.0, f64::max);
    let (a, b) = (run("on.json", &on), run("off.json", &off));
    assert_eq!(a["on_shell"], true);
    assert!(worst(&a) < 1e-10 && a["u1_divergence"].as_f64().unwrap() < 1e-10);
    assert_eq!(b["on_shell"], false);
    assert!(worst(&b) > 1e-3);
    std::fs::write(dir.join("bad.json"), "{").unwrap();
    assert_eq!(
        kforms(&["noether", "--modes", dir.join("bad.json").to_str().unwrap(), "--mass", "0", "--kappa", "1"]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_seed_fallback_and_out_file() {
    let explicit = kforms(&["verify", "hodge", "--seed", "9"]);
    assert!(explicit.status.success());
    let from_env = Command::new(env!("CARGO_BIN_EXE_kforms")).args(["verify", "hodge"]).env("KFORMS_SEED", "9").output().unwrap();
    assert_eq!(explicit.stdout, from_env.stdout);
    let path = std::env::temp_dir().join(format!("kforms-report-{}.json", std::process::id()));
    let o = kforms(&["verify", "hodge", "--seed", "9", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), explicit.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_rejects_bad_input() {
    assert_eq!(kforms(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(kforms(&["verify", "starprod", "--grid", "100"]).status.code(), Some(2));
    assert_eq!(kforms(&["verify", "hodge", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn tolerance_override_turns_checks_red() {
    let o = kforms(&["verify", "hodge", "--seed", "1", "--tol", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["tolerance"], 0.0);
    assert_eq!(o.status.code(), Some(if v["failed"].as_u64().unwrap() > 0 { 1 } else { 0 }));
}
