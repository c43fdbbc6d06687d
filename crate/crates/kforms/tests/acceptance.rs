use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use kforms::suites::{run_one, run_suite, SuiteConfig};
use kforms_core::kpoincare::verify_so41;
use kforms_core::Check;

const SEED: u64 = 42;

struct Suite {
    checks: Vec<Check>,
    metrics: BTreeMap<String, f64>,
    seconds: f64,
}

impl Suite {
    fn run(name: &str) -> Suite {
        let start = Instant::now();
        let outcome = run_one(name, &SuiteConfig::new(SEED)).unwrap_or_else(|e| panic!("{name}: {e}"));
        Suite { checks: outcome.report.checks, metrics: outcome.metrics, seconds: start.elapsed().as_secs_f64() }
    }

    fn with(&self, identity: &str) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.identity == identity).collect()
    }

    fn all_pass(&self, identity: &str, at_least: usize) -> Result<usize, String> {
        let cs = self.with(identity);
        let failed = cs.iter().filter(|c| !c.passed).count();
        if cs.len() < at_least {
            Err(format!("`{identity}`: {} cases < {at_least}", cs.len()))
        } else if failed > 0 {
            Err(format!("`{identity}`: {failed}/{} failed", cs.len()))
        } else {
            Ok(cs.len())
        }
    }

    fn metric(&self, key: &str) -> f64 {
        *self.metrics.get(key).unwrap_or_else(|| panic!("missing metric {key}"))
    }
}

struct Line {
    pass: bool,
    detail: String,
}

fn gather(parts: Vec<Result<usize, String>>) -> Line {
    let errors: Vec<String> = parts.iter().filter_map(|p| p.as_ref().err().cloned()).collect();
    let cases: usize = parts.iter().filter_map(|p| p.as_ref().ok()).sum();
    if errors.is_empty() {
        Line { pass: true, detail: format!("{cases} cases") }
    } else {
        Line { pass: false, detail: errors.join("; ") }
    }
}

fn bound(label: &str, value: f64, limit: f64) -> Result<usize, String> {
    if value <= limit {
        Ok(0)
    } else {
        Err(format!("{label} = {value:.3e} > {limit:.0e}"))
    }
}

fn so41() -> Line {
    let start = Instant::now();
    let report = verify_so41();
    let seconds = start.elapsed().as_secs_f64();
    let n = report.checks.iter().filter(|c| c.passed && c.residual == 0.0).count();
    Line { pass: n == 25 && report.len() == 25 && seconds < 10.0, detail: format!("{n}/25 exact zero, {seconds:.2}s") }
}

fn hopf(s: &Suite) -> Line {
    let mut parts = vec![
        s.all_pass("Jacobi", 1),
        s.all_pass("coassociativity", 1),
        s.all_pass("m(S⊗id)Δ = ηε", 1),
        s.all_pass("m(id⊗S)Δ = ηε", 1),
        s.all_pass("Δ(ξ_a) = ξ_b⊗λ^b_a + 1⊗ξ_a", 5),
        s.all_pass("S(□_κ) = □_κ", 1),
        s.all_pass("[h, □_κ] = 0", 10),
    ];
    let failed = s.checks.iter().filter(|c| !c.passed).count();
    parts.push(if failed == 0 { Ok(0) } else { Err(format!("{failed} other hopf failures")) });
    gather(parts)
}

fn calculus(s: &Suite) -> Line {
    gather(vec![
        s.all_pass("d∘d = 0", 200),
        s.all_pass("d(ω∧ρ) = dω∧ρ + (−1)^p ω∧dρ", 200),
        s.all_pass("(f e^w)† = (−1)^{n(n−1)/2} e^w f†", 200),
        s.all_pass("(e^w)† = (−1)^{n(n−1)/2} e^w", 32),
        s.all_pass("[x^μ, vol⁵] = 0", 4),
        s.all_pass("[x^μ, f vol⁵] = [x^μ, f] vol⁵", 200),
        s.all_pass("[x^μ,[x^ν,ω]] − [x^ν,[x^μ,ω]] = [[x^μ,x^ν],ω]", 200),
    ])
}

fn hodge(s: &Suite) -> Line {
    let herm = s.with("conj (ω,ρ) = (ρ,ω)").iter().map(|c| c.residual).fold(0.0, f64::max);
    gather(vec![
        s.all_pass("∗∘∗ = (−1)^{n(5−n)} id", 32),
        s.all_pass("∗(f ω) = f ∗ω", 200),
        s.all_pass("∗(ω f) = (∗ω) f", 200),
        s.all_pass("g(e^a, e^b) = η^{ab}", 25),
        s.all_pass("conj (ω,ρ) = (ρ,ω)", 1),
        bound("hermiticity residual", herm, 1e-12),
    ])
}

fn cartan(s: &Suite) -> Line {
    gather(vec![s.all_pass("d∘i_a + i_a∘d = £_{iχ_a}", 600), s.all_pass("£_h d = d £_h", 1)])
}

fn integral(s: &Suite) -> Line {
    let lemma: Vec<String> = s.with("epsilon-lambda lemma").iter().map(|c| c.inputs.split(' ').next().unwrap_or("").to_string()).collect();
    let orders = (1..=4).all(|n| lemma.contains(&format!("n={n}")));
    gather(vec![
        s.all_pass("∫ dω = 0", 100),
        s.all_pass("∫ h▷ρ = ε(h) ∫ρ", 1),
        s.all_pass("epsilon-lambda lemma", 4),
        if orders { Ok(0) } else { Err("ε–λ lemma missing an order n = 1..4".into()) },
    ])
}

fn starprod(s: &Suite) -> Line {
    let (fine, coarse) = (s.metric("cyclicity_residual"), s.metric("cyclicity_coarse_residual"));
    let mut line = gather(vec![
        bound("cyclicity residual", fine, 1e-5),
        if coarse >= 4.0 * fine { Ok(0) } else { Err(format!("halving gain {:.2} < 4", coarse / fine)) },
        s.all_pass("∫ f†⋆f real, > 0", 8),
        s.all_pass("∫ f†⋆f = 0 for f = 0", 1),
        s.all_pass("twist exponent scan selects 1", 1),
        if s.metric("selected_exponent") == 1.0 { Ok(0) } else { Err("scan did not select 1".into()) },
        bound("runtime seconds", s.seconds, 60.0),
    ]);
    line.detail = format!("residual {fine:.2e}, halving gain {:.1}×, {:.1}s; {}", coarse / fine, s.seconds, line.detail);
    line
}

/// The literal sign `∗d∗d = +ηξξ` and the κ = 10⁶ limit at 1e-9 cannot hold:
/// the first is off by an overall sign, the second is a first-order effect.
/// Everything else in this item must pass.
fn fieldtheory(s: &Suite) -> (Line, Result<(), String>) {
    let plus = s.with("∗d∗d e_k = +η^{ab}ξ_aξ_b(k) e_k");
    let minus = s.with("∗d∗d e_k = −η^{ab}ξ_aξ_b(k) e_k");
    let limit = s.with("k₀(κ = 10⁶) = √(|k|² + m²)");
    let attainable = gather(vec![
        bound("dispersion residual", s.metric("dispersion_residual"), 1e-12),
        s.all_pass("η^{ab}ξ_aξ_b(k) = −m² on the solved shell", 50),
        s.all_pass("∗d∗d e_k = −η^{ab}ξ_aξ_b(k) e_k", 20),
        s.all_pass("d j_a = 0 on shell", 250),
        s.all_pass("d j = 0 on shell", 50),
        s.all_pass("T_ab = −½(ξ_aξ_b + ξ_bξ_a) φ†φ on a single mode", 10),
        s.all_pass("κ·(k₀ − √(|k|² + m²)) converges", 1),
        s.all_pass("closed-form □_κ = η^{ab}ξ_aξ_b", 1),
    ]);
    let literal_sign_fails = plus.len() == 20 && plus.iter().all(|c| !c.passed);
    let paired = plus.iter().all(|p| minus.iter().any(|m| m.inputs == p.inputs && m.passed));
    let shift = limit.first().map(|c| c.residual).unwrap_or(f64::NAN);
    let limit_fails = limit.len() == 1 && !limit[0].passed && (1e-7..1e-6).contains(&shift);
    let expected_red = ["∗d∗d e_k = +η^{ab}ξ_aξ_b(k) e_k", "k₀(κ = 10⁶) = √(|k|² + m²)"];
    let others = s.checks.iter().filter(|c| !c.passed && !expected_red.contains(&c.identity.as_str())).count();

    let pass = attainable.pass && plus.iter().all(|c| c.passed) && limit.iter().all(|c| c.passed);
    let detail = format!(
        "{}; literal ∗d∗d = +ηξξ fails {}/{} (−ηξξ holds), κ=1e6 shift {shift:.2e} vs 1e-9",
        attainable.detail,
        plus.iter().filter(|c| !c.passed).count(),
        plus.len()
    );
    let documented = if !attainable.pass {
        Err(attainable.detail.clone())
    } else if !(literal_sign_fails && paired && limit_fails && others == 0) {
        Err(format!("unexpected failure pattern: {detail}; {others} other failures"))
    } else {
        Ok(())
    };
    (Line { pass, detail }, documented)
}

fn determinism() -> Line {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_kforms"))
            .args(["verify", "all", "--seed", &SEED.to_string()])
            .env_remove("KFORMS_SEED")
            .output()
            .expect("binary runs");
        (out.stdout, out.status.code())
    };
    let (a, code_a) = run();
    let (b, code_b) = run();
    let report = run_suite("all", &SuiteConfig::new(SEED), false).expect("suite runs");
    let in_process = format!("{}\n", report.to_json()).into_bytes();
    let expected_code = if report.passed() { 0 } else { 1 };
    let pass = !a.is_empty() && a == b && a == in_process && code_a == Some(expected_code) && code_b == code_a;
    Line { pass, detail: format!("{} bytes, identical: {}, exit {:?} for {} failures", a.len(), a == b, code_a, report.failed) }
}

#[test]
fn acceptance() {
    let hopf_suite = Suite::run("hopf");
    let calculus_suite = Suite::run("calculus");
    let hodge_suite = Suite::run("hodge");
    let integral_suite = Suite::run("integral");
    let star_suite = Suite::run("starprod");
    let field_suite = Suite::run("fieldtheory");
    let (field_line, field_documented) = fieldtheory(&field_suite);

    let lines = [
        ("exact SO(4,1) contractions", so41()),
        ("exact Hopf structure", hopf(&hopf_suite)),
        ("calculus identities", calculus(&calculus_suite)),
        ("Hodge star and metric", hodge(&hodge_suite)),
        ("Cartan formula and Lie–d commutation", cartan(&calculus_suite)),
        ("twisted integral", integral(&integral_suite)),
        ("1+1 star product", starprod(&star_suite)),
        ("scalar field theory", field_line),
        ("CLI determinism and exit code", determinism()),
    ];
    for (i, (name, line)) in lines.iter().enumerate() {
        println!("[{}] {:<38} {}  {}", i + 1, name, if line.pass { "PASS" } else { "FAIL" }, line.detail);
    }

    for (i, (name, line)) in lines.iter().enumerate() {
        if i != 7 {
            assert!(line.pass, "[{}] {name}: {}", i + 1, line.detail);
        }
    }
    // item 8 is red only through its two unattainable literal clauses
    assert!(!lines[7].1.pass);
    field_documented.unwrap();
}
