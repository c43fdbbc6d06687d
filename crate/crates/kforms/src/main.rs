use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use kforms::expr::{self, Backend, Env};
use kforms::suites::{run_suite, SuiteConfig};
use kforms_core::fieldtheory::{casimir_value, dispersion_solve, em_tensor, form_norm, noether_current, u1_current, FieldConfig};
use kforms_core::{Calculus, WaveElement};

#[derive(Parser)]
#[command(name = "kforms", version, about = "κ-Minkowski differential forms: evaluate expressions and verify identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Wave,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression
    Eval {
        expr: String,
        /// `symbolic`, a decimal or p/q
        #[arg(long, default_value = "symbolic")]
        kappa: String,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        /// Bind a name, e.g. --let phi=wave(1,0,0,0)
        #[arg(long = "let", value_name = "NAME=EXPR")]
        bindings: Vec<String>,
    },
    /// Run a verification suite and print a JSON report
    Verify {
        /// hopf, calculus, hodge, integral, starprod, fieldtheory or all
        suite: String,
        /// Falls back to KFORMS_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides every numeric tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Star-product grid size (power of two)
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Star-product half-width L
        #[arg(long, default_value_t = 12.0)]
        domain: f64,
        /// Record wall time in the report (breaks byte-identity)
        #[arg(long)]
        timing: bool,
    },
    /// Solve the deformed mass shell for k₀
    Dispersion {
        #[arg(long, value_name = "kx,ky,kz", allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Noether currents of a mode superposition
    Noether {
        /// JSON array of {re, im, k: [k0,k1,k2,k3]}
        #[arg(long)]
        modes: PathBuf,
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        kappa: f64,
    },
}

#[derive(Deserialize)]
struct ModeEntry {
    re: f64,
    im: f64,
    k: [f64; 4],
}

#[derive(Serialize)]
struct DispersionReport {
    schema: &'static str,
    k: [f64; 3],
    mass: f64,
    kappa: f64,
    k0: f64,
    residual: f64,
    classical: f64,
}

#[derive(Serialize)]
struct ModeReport {
    k: [f64; 4],
    amplitude: [f64; 2],
    shell_residual: f64,
}

#[derive(Serialize)]
struct NoetherReport {
    schema: &'static str,
    mass: f64,
    kappa: f64,
    modes: Vec<ModeReport>,
    on_shell: bool,
    /// max |d j_a| / max(|j_a|, 1) for a = 0..4
    divergence: Vec<f64>,
    u1_divergence: f64,
    /// zero-momentum part of T_ab
    stress_tensor: Vec<Vec<[f64; 2]>>,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("kforms: {message}");
    ExitCode::from(2)
}

fn emit(json: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn eval(src: &str, kappa: &str, backend: BackendArg, bindings: &[String]) -> Result<String, String> {
    let kappa = expr::parse_kappa(kappa)?;
    let backend = match backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Wave => Backend::Wave,
    };
    let mut env = Env::new(backend, kappa);
    for b in bindings {
        let (name, body) = b.split_once('=').ok_or_else(|| format!("--let `{b}`: expected NAME=EXPR"))?;
        let ast = expr::parse(body).map_err(|e| format!("--let {name}: {e}"))?;
        env.bind(name.trim(), ast);
    }
    expr::run(src, &env).map_err(|e| e.to_string())
}

fn verify(suite: &str, seed: Option<u64>, tol: Option<f64>, grid: usize, domain: f64, timing: bool) -> Result<(String, bool), String> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("KFORMS_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| format!("KFORMS_SEED=`{v}` is not a u64"))?,
            Err(_) => 0,
        },
    };
    if let Some(t) = tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(format!("--tol {t}: expected a non-negative number"));
        }
    }
    if !(domain.is_finite() && domain > 0.0) {
        return Err(format!("--domain {domain}: expected a positive number"));
    }
    let config = SuiteConfig { tolerance: tol, grid, domain, ..SuiteConfig::new(seed) };
    let report = run_suite(suite, &config, timing).map_err(|e| e.to_string())?;
    Ok((report.to_json(), report.passed()))
}

fn dispersion(k: &str, mass: f64, kappa: f64) -> Result<String, String> {
    let parts: Vec<f64> = k.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| format!("--k `{k}`: {e}"))?;
    let k: [f64; 3] = parts.try_into().map_err(|_| "--k: expected three components".to_string())?;
    let k0 = dispersion_solve(k, mass, kappa).map_err(|e| e.to_string())?;
    let report = DispersionReport {
        schema: "kforms.dispersion/1",
        k,
        mass,
        kappa,
        k0,
        residual: casimir_value(&[k0, k[0], k[1], k[2]], kappa) + mass * mass,
        classical: (k.iter().map(|x| x * x).sum::<f64>() + mass * mass).sqrt(),
    };
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

fn noether(path: &PathBuf, mass: f64, kappa: f64) -> Result<String, String> {
    if !(kappa.is_finite() && kappa > 0.0 && mass.is_finite() && mass >= 0.0) {
        return Err("--mass must be ≥ 0 and --kappa > 0".into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let entries: Vec<ModeEntry> = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if entries.is_empty() {
        return Err(format!("{}: no modes", path.display()));
    }
    let mut phi = WaveElement::zero(kappa);
    let mut modes = Vec::with_capacity(entries.len());
    for m in &entries {
        phi.accumulate(m.k, Complex64::new(m.re, m.im));
        let shell_residual = casimir_value(&m.k, kappa) + mass * mass;
        modes.push(ModeReport { k: m.k, amplitude: [m.re, m.im], shell_residual });
    }
    let on_shell = modes.iter().all(|m| m.shell_residual.abs() <= 1e-10 * (1.0 + mass * mass));
    let calc = Calculus::new();
    let cfg = FieldConfig::new(phi, mass);
    let relative = |j: &kforms_core::Form<WaveElement>| form_norm(&calc.d(j)) / form_norm(j).max(1.0);
    let divergence =
        (0..5).map(|a| noether_current(&calc, &cfg, a).map(|j| relative(&j))).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let stress_tensor = em_tensor(&calc, &cfg)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|row| row.iter().map(|t| t.coefficient(&[0.0; 4])).map(|z| [z.re, z.im]).collect())
        .collect();
    let report = NoetherReport {
        schema: "kforms.noether/1",
        mass,
        kappa,
        modes,
        on_shell,
        divergence,
        u1_divergence: relative(&u1_current(&calc, &cfg)),
        stress_tensor,
    };
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { expr, kappa, backend, bindings } => match eval(&expr, &kappa, backend, &bindings) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Verify { suite, seed, tol, out, grid, domain, timing } => match verify(&suite, seed, tol, grid, domain, timing) {
            Ok((json, passed)) => match emit(&json, out.as_ref()) {
                Ok(()) if passed => ExitCode::SUCCESS,
                Ok(()) => ExitCode::FAILURE,
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        },
        Command::Dispersion { k, mass, kappa } => match dispersion(&k, mass, kappa) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Noether { modes, mass, kappa } => match noether(&modes, mass, kappa) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
