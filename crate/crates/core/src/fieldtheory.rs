//! Free complex scalar field on κ-Minkowski space.
//!
//! Plane waves `e_k` are eigenfunctions of every momentum operator, so the
//! field equations reduce to the deformed mass shell
//! `4κ² sinh²(k₀/2κ) − e^{k₀/κ}|k⃗|² = m²`, i.e. `η^{ab} χ_a(k) χ_b(k) = −m²`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::forms::{Calculus, Coefficient, Form, Word};
use crate::integral;
use crate::kminkowski::{Mode, WaveElement};
use crate::kpoincare::{casimir, eta};
use crate::scalars::ExactScalar;
use crate::Error;

/// A field configuration `φ = Σ c_k e_k` with its mass.
#[derive(Clone, Debug)]
pub struct FieldConfig {
    pub phi: WaveElement,
    pub mass: f64,
}

impl FieldConfig {
    pub fn new(phi: WaveElement, mass: f64) -> Self {
        FieldConfig { phi, mass }
    }

    pub fn kappa(&self) -> f64 {
        self.phi.kappa()
    }

    /// Sum of on-shell plane waves with the given spatial momenta.
    pub fn on_shell(modes: &[([f64; 3], Complex64)], mass: f64, kappa: f64) -> Result<Self, Error> {
        let mut phi = WaveElement::zero(kappa);
        for (kv, c) in modes {
            let k0 = dispersion_solve(*kv, mass, kappa)?;
            phi.accumulate([k0, kv[0], kv[1], kv[2]], *c);
        }
        Ok(FieldConfig { phi, mass })
    }
}

/// Closed form `□_κ(k) = −4κ² sinh²(k₀/2κ) + e^{k₀/κ}|k⃗|²`.
pub fn casimir_value(k: &Mode, kappa: f64) -> f64 {
    let s = Float::sinh(k[0] / (2.0 * kappa));
    -4.0 * kappa * kappa * s * s + Float::exp(k[0] / kappa) * (k[1] * k[1] + k[2] * k[2] + k[3] * k[3])
}

/// Positive-energy root of the mass shell for spatial momentum `kvec`.
///
/// A root exists only for `|k⃗| < κ`; bisection brackets it and Newton
/// iterations polish it to machine precision.
pub fn dispersion_solve(kvec: [f64; 3], mass: f64, kappa: f64) -> Result<f64, Error> {
    if !(mass >= 0.0 && kappa > 0.0) || kvec.iter().any(|x| !x.is_finite()) || !mass.is_finite() {
        return Err(Error::NonFinite);
    }
    let q2 = kvec.iter().map(|x| x * x).sum::<f64>();
    // g(k₀) = □_κ(k) + m²; g(0) = |k|² + m² ≥ 0 and g decreases to −∞ iff |k| < κ
    let g = |k0: f64| casimir_value(&[k0, kvec[0], kvec[1], kvec[2]], kappa) + mass * mass;
    let dg = |k0: f64| {
        let u = Float::exp(k0 / kappa);
        -2.0 * kappa * Float::sinh(k0 / kappa) + u * q2 / kappa
    };
    if g(0.0) == 0.0 {
        return Ok(0.0);
    }
    if q2 >= kappa * kappa {
        return Err(Error::DispersionBracket);
    }
    let mut hi = Float::sqrt(q2 + mass * mass).max(kappa * 1e-3);
    let mut tries = 0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 200 || !hi.is_finite() {
            return Err(Error::DispersionBracket);
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-6 * hi {
            break;
        }
    }
    let mut k0 = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = g(k0) / dg(k0);
        if !step.is_finite() {
            break;
        }
        let next = (k0 - step).clamp(lo, hi);
        if next == k0 {
            break;
        }
        k0 = next;
    }
    Ok(k0)
}

/// `η^{ab} χ_a(k) χ_b(k)` computed from the operator families.
pub fn chi_square(k: &Mode, kappa: f64) -> Result<f64, Error> {
    let chi = crate::kpoincare::chi();
    let mut s = 0.0;
    for a in 0..5 {
        let c = chi[a].eigenvalue(k, kappa)?;
        s += eta(a) as f64 * (c * c).re;
    }
    Ok(s)
}

fn d_star(calc: &Calculus, f: &Form<WaveElement>) -> Form<WaveElement> {
    calc.hodge(&calc.d(f))
}

/// `∗d∗d φ` through the form pipeline.
pub fn star_d_star_d(calc: &Calculus, phi: &WaveElement) -> WaveElement {
    let f = Form::function(phi.clone());
    let r = calc.hodge(&calc.d(&d_star(calc, &f)));
    r.coefficient(Word::EMPTY).cloned().unwrap_or_else(|| phi.empty_like())
}

/// `∗d∗d φ − m² φ`.
pub fn eom_residual(calc: &Calculus, cfg: &FieldConfig) -> WaveElement {
    let m2 = Complex64::new(cfg.mass * cfg.mass, 0.0);
    star_d_star_d(calc, &cfg.phi).sub(&cfg.phi.scale(m2))
}

/// Lagrangian density `½{φ†(□_κ ▷ φ) + m² φ†φ}` matching the Hodge form of the action.
pub fn lagrangian(cfg: &FieldConfig) -> WaveElement {
    let dag = cfg.phi.wave_involution();
    let box_phi = cfg.phi.act_momentum(&casimir());
    let m2 = Complex64::new(cfg.mass * cfg.mass, 0.0);
    dag.wave_mul(&box_phi).add(&dag.wave_mul(&cfg.phi).scale(m2)).scale(Complex64::new(0.5, 0.0))
}

/// The action in both forms: `½∫{(dφ)†∧∗dφ + m² φ†∧∗φ}` and `∫ ℒ vol⁵`.
pub fn action_eval(calc: &Calculus, cfg: &FieldConfig) -> Result<(Complex64, Complex64), Error> {
    let f = Form::function(cfg.phi.clone());
    let df = calc.d(&f);
    let kinetic = calc.wedge(&calc.dagger(&df), &calc.hodge(&df));
    let mass = calc.wedge(&calc.dagger(&f), &calc.hodge(&f));
    let m2 = WaveElement::one(cfg.kappa()).scale(Complex64::new(cfg.mass * cfg.mass, 0.0));
    let total = kinetic.add(&mass.left_mul(&m2));
    let hodge_form = integral::integrate(&total)? * 0.5;
    let density = integral::integrate_function(&lagrangian(cfg));
    Ok((hodge_form, density))
}

/// Pointwise Hodge density `ℒ_H = ½ ∗{(dφ)† ∧ ∗dφ + m² φ† ∧ ∗φ}`.
///
/// It differs from [`lagrangian`] by a total derivative, so both give the
/// same action, but only `ℒ_H` balances the divergence of the kinetic part
/// of the Noether current.
pub fn lagrangian_hodge(calc: &Calculus, cfg: &FieldConfig) -> WaveElement {
    let f = Form::function(cfg.phi.clone());
    let df = calc.d(&f);
    let m2 = WaveElement::one(cfg.kappa()).scale(Complex64::new(cfg.mass * cfg.mass, 0.0));
    let top = calc.wedge(&calc.dagger(&df), &calc.hodge(&df)).add(&calc.wedge(&calc.dagger(&f), &calc.hodge(&f)).left_mul(&m2));
    top.coefficient(Word::VOL).map(|c| c.scale(Complex64::new(0.5, 0.0))).unwrap_or_else(|| cfg.phi.empty_like())
}

/// `K_a = ½{(χ_a ▷ φ†) ∧ ∗dφ + ∗d(σ^b_a ▷ φ†) ∧ (χ_b ▷ φ)}`, with `dK_a = χ_a ▷ ℒ_H` on-shell.
pub fn kinetic_current(calc: &Calculus, cfg: &FieldConfig, a: usize) -> Result<Form<WaveElement>, Error> {
    if a > 4 {
        return Err(Error::InvalidIndex(a));
    }
    let phi = &cfg.phi;
    let dag = phi.wave_involution();
    let star_dphi = d_star(calc, &Form::function(phi.clone()));
    let mut k = star_dphi.left_mul(&dag.act_momentum(&calc.chi[a]));
    for b in 0..5 {
        let s = dag.act_momentum(&calc.sigma[b][a]);
        if s.is_zero() {
            continue;
        }
        let left = d_star(calc, &Form::function(s));
        k = k.add(&calc.right_mul(&left, &phi.act_momentum(&calc.chi[b])));
    }
    Ok(k.scale(&ExactScalar::from_ratio(1, 2)))
}

/// Noether current 4-form `j_a = −i K_a + i_a(ℒ_H vol⁵)`.
///
/// Since `d ∘ i_a + i_a ∘ d = £_{iχ_a}`, the contraction term cancels
/// `dK_a` only after the relative factor `i`; the overall `−i` makes the
/// plane-wave stress tensor `T_ab = −ξ_a(k) ξ_b(k) φ†φ`.
pub fn noether_current(calc: &Calculus, cfg: &FieldConfig, a: usize) -> Result<Form<WaveElement>, Error> {
    let k = kinetic_current(calc, cfg, a)?;
    let l = Form::basis(Word::VOL, lagrangian_hodge(calc, cfg));
    Ok(k.left_mul(&WaveElement::one(cfg.kappa()).scale(Complex64::new(0.0, -1.0))).add(&calc.inner(a, &l)?))
}

/// `T_ab` from `j_a = ∗(e^b) T_ab` with right coefficients.
pub fn em_tensor(calc: &Calculus, cfg: &FieldConfig) -> Result<Vec<Vec<WaveElement>>, Error> {
    let mut t = Vec::with_capacity(5);
    for a in 0..5 {
        let j = noether_current(calc, cfg, a)?;
        let right = calc.to_right(&j);
        let mut row = Vec::with_capacity(5);
        for b in 0..5 {
            let (w, s) = Calculus::hodge_basis(Word::single(b));
            let c = right
                .iter()
                .find(|(rw, _)| *rw == w)
                .map(|(_, c)| c.scale(Complex64::new(s as f64, 0.0)))
                .unwrap_or_else(|| cfg.phi.empty_like());
            row.push(c);
        }
        t.push(row);
    }
    Ok(t)
}

/// U(1) current `j = ∗(φ† dφ − dφ† φ)`.
pub fn u1_current(calc: &Calculus, cfg: &FieldConfig) -> Form<WaveElement> {
    let dag = cfg.phi.wave_involution();
    let dphi = calc.d(&Form::function(cfg.phi.clone()));
    let ddag = calc.d(&Form::function(dag.clone()));
    let inner = dphi.left_mul(&dag).sub(&calc.right_mul(&ddag, &cfg.phi));
    calc.hodge(&inner)
}

/// Largest coefficient modulus of a form.
pub fn form_norm(f: &Form<WaveElement>) -> f64 {
    f.terms().map(|(_, c)| c.norm_max()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion_solve([0.0; 3], 0.0, 1.0).unwrap(), 0.0);
        let k0 = dispersion_solve([0.1, 0.0, 0.0], 0.0, 1.0).unwrap();
        // massless closed form: k0 = -κ ln(1 - |k|/κ)
        assert!((k0 + (1.0f64 - 0.1).ln()).abs() < 1e-14);
        assert!(casimir_value(&[k0, 0.1, 0.0, 0.0], 1.0).abs() < 1e-14);
        assert_eq!(dispersion_solve([2.0, 0.0, 0.0], 0.5, 1.0).unwrap_err(), Error::DispersionBracket);
    }

    #[test]
    fn commutative_limit() {
        let (kv, m) = ([0.3, -0.4, 1.2], 0.7);
        let classical = (kv.iter().map(|x| x * x).sum::<f64>() + m * m).sqrt();
        let rel = |kappa: f64| (dispersion_solve(kv, m, kappa).unwrap() - classical) / classical;
        // first-order deformation: κ·δ settles to a constant
        let (a, b) = (1e4 * rel(1e4), 1e6 * rel(1e6));
        assert!((a - b).abs() < 1e-3 * b.abs());
        assert!(rel(1e10).abs() < 1e-9);
    }

    fn three_modes(mass: f64, kappa: f64) -> FieldConfig {
        FieldConfig::on_shell(
            &[
                ([0.2, 0.1, -0.3], Complex64::new(1.0, 0.5)),
                ([-0.1, 0.4, 0.2], Complex64::new(-0.3, 0.8)),
                ([0.05, 0.0, 0.1], Complex64::new(0.2, 0.0)),
            ],
            mass,
            kappa,
        )
        .unwrap()
    }

    #[test]
    fn on_shell_currents_are_closed() {
        let calc = Calculus::new();
        let cfg = three_modes(0.4, 1.3);
        assert!(eom_residual(&calc, &cfg).norm_max() < 1e-12);
        for a in 0..5 {
            let j = noether_current(&calc, &cfg, a).unwrap();
            assert!(form_norm(&calc.d(&j)) < 1e-12 * form_norm(&j).max(1.0));
        }
        assert!(form_norm(&calc.d(&u1_current(&calc, &cfg))) < 1e-12);
        let off = FieldConfig::new(cfg.phi.clone(), 0.9);
        assert!(form_norm(&calc.d(&noether_current(&calc, &off, 0).unwrap())) > 1e-3);
    }

    #[test]
    fn action_forms_agree() {
        let calc = Calculus::new();
        let off = FieldConfig::new(three_modes(0.4, 1.3).phi, 0.9);
        let (a, b) = action_eval(&calc, &off).unwrap();
        assert!((a - b).norm() < 1e-12 && a.norm() > 1e-3);
        let constant = FieldConfig::new(WaveElement::one(1.3), 0.0);
        let (a, _) = action_eval(&calc, &constant).unwrap();
        assert_eq!(a.norm(), 0.0);
    }

    #[test]
    fn single_mode_stress_tensor() {
        let calc = Calculus::new();
        let (kappa, c) = (1.3, Complex64::new(1.0, 0.5));
        let cfg = FieldConfig::on_shell(&[([0.2, 0.1, -0.3], c)], 0.4, kappa).unwrap();
        let k = *cfg.phi.terms().next().unwrap().0;
        let t = em_tensor(&calc, &cfg).unwrap();
        let xi = crate::kpoincare::xi();
        for a in 0..5 {
            for b in 0..5 {
                let expected = -xi[a].eigenvalue(&k, kappa).unwrap() * xi[b].eigenvalue(&k, kappa).unwrap() * c.norm_sqr();
                assert!((t[a][b].coefficient(&[0.0; 4]) - expected).norm() < 1e-12);
                assert!((t[a][b].coefficient(&[0.0; 4]) - t[b][a].coefficient(&[0.0; 4])).norm() < 1e-12);
            }
        }
        let zero_mode = FieldConfig::new(WaveElement::one(kappa), 0.0);
        assert!(em_tensor(&calc, &zero_mode).unwrap().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn star_d_star_d_is_minus_casimir() {
        let calc = Calculus::new();
        let k = [0.4, 0.3, -0.2, 0.5];
        let e = WaveElement::wave(k, Complex64::new(1.0, 0.0), 2.0);
        let v = star_d_star_d(&calc, &e).coefficient(&k);
        assert!((v.re + casimir_value(&k, 2.0)).abs() < 1e-12);
    }

    #[test]
    fn real_pairing_charge_vanishes_classically() {
        let calc = Calculus::new();
        let k = [0.3, 0.2, 0.0, 0.1];
        let charge = |kappa: f64| {
            let e = WaveElement::wave(k, Complex64::new(1.0, 0.0), kappa);
            let cfg = FieldConfig::new(e.add(&e.wave_involution()), 0.0);
            form_norm(&u1_current(&calc, &cfg))
        };
        assert!(charge(1.5) > 1e-3);
        assert!(charge(1e6) < 1e-5);
    }

    #[test]
    fn chi_square_is_casimir() {
        let k = [0.31, 0.2, -0.5, 0.12];
        let v = chi_square(&k, 1.7).unwrap();
        assert!((v - casimir_value(&k, 1.7)).abs() < 1e-12);
    }
}
