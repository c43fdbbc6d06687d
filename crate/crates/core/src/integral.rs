//! Invariant integral on top forms over plane-wave sums.
//!
//! Translation invariance forces the functional to be supported on the zero
//! mode; it is normalized by `∫ e₀ vol⁵ = 1`.

use num_complex::Complex64;

use crate::check::{Check, Report};
use crate::forms::{Calculus, Coefficient, Form, Word};
use crate::kminkowski::WaveElement;
use crate::kpoincare::OperatorElement;
use crate::Error;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `∫ ω` for a 5-form: the zero-mode coefficient of `vol⁵`.
pub fn integrate(omega: &Form<WaveElement>) -> Result<Complex64, Error> {
    if let Some(&n) = omega.degrees().iter().find(|&&n| n != 5) {
        return Err(Error::DegreeMismatch { expected: 5, found: n });
    }
    Ok(omega.coefficient(Word::VOL).map(|c| c.coefficient(&[0.0; 4])).unwrap_or_else(zero))
}

/// `∫ f vol⁵` for a function.
pub fn integrate_function(f: &WaveElement) -> Complex64 {
    f.coefficient(&[0.0; 4])
}

/// `(ω, ρ) = ∫ ω† ∧ ∗ρ` for forms of equal degree.
pub fn inner_product(calc: &Calculus, omega: &Form<WaveElement>, rho: &Form<WaveElement>) -> Result<Complex64, Error> {
    if let (Some(a), Some(b)) = (omega.degree(), rho.degree()) {
        if a != b {
            return Err(Error::DegreeMismatch { expected: a, found: b });
        }
    }
    if omega.degrees().len() > 1 || rho.degrees().len() > 1 {
        let found = *omega.degrees().iter().chain(rho.degrees().iter()).max().unwrap_or(&0);
        return Err(Error::DegreeMismatch { expected: omega.degrees().first().copied().unwrap_or(0), found });
    }
    integrate(&calc.wedge(&calc.dagger(omega), &calc.hodge(rho)))
}

/// `ω̃`: components whose word contains the index 0 change sign.
pub fn tilde<A: Coefficient>(omega: &Form<A>) -> Form<A> {
    let mut out = Form::zero();
    for (w, c) in omega.terms() {
        out.accumulate(*w, if w.contains(0) { c.neg() } else { c.clone() });
    }
    out
}

/// `(ω, ω̃)` is real, vanishes only for `ω = 0` and has, in each degree, the
/// sign it takes on a unit basis form.
pub fn tilde_positivity(calc: &Calculus, omega: &Form<WaveElement>, tol: f64) -> Result<Check, Error> {
    let n = omega.degree().unwrap_or(0);
    let kappa = omega.terms().next().map(|(_, c)| c.kappa()).unwrap_or(1.0);
    let unit = Form::basis(Word::of_degree(n)[0], WaveElement::one(kappa));
    let sign = inner_product(calc, &unit, &tilde(&unit))?.re.signum();
    let v = inner_product(calc, omega, &tilde(omega))? * sign;
    let scale = omega.terms().map(|(_, c)| c.norm_max() * c.norm_max()).sum::<f64>().max(f64::MIN_POSITIVE);
    let imag = v.im.abs() / scale;
    let negative = (-v.re).max(0.0) / scale;
    let degenerate = if omega.is_zero() || v.re > tol * scale { 0.0 } else { 1.0 };
    Ok(Check::numeric("(ω, ω̃) definite", alloc::format!("{omega}"), imag.max(negative).max(degenerate), tol))
}

/// `∫ dω = 0` for a 4-form.
pub fn closedness(calc: &Calculus, omega: &Form<WaveElement>) -> Result<Check, Error> {
    let v = integrate(&calc.d(omega))?;
    Ok(Check::exact("∫ dω = 0", alloc::format!("terms={}", omega.terms().count()), v == zero()))
}

/// `∫ h ▷ ρ = ε(h) ∫ ρ` for momentum-sector `h`.
pub fn left_invariance(h: &OperatorElement, rho: &Form<WaveElement>) -> Result<Check, Error> {
    let kappa = rho.terms().next().map(|(_, c)| c.kappa()).unwrap_or(1.0);
    let lhs = integrate(&rho.act_coefficients(h))?;
    let rhs = h.counit().eval(kappa) * integrate(rho)?;
    Ok(Check::numeric("∫ h▷ρ = ε(h) ∫ρ", alloc::format!("{h}"), (lhs - rhs).norm(), 0.0))
}

/// `conj(∫ f) = ∫ f†` on a function.
pub fn involution_compatibility(f: &WaveElement) -> Check {
    let lhs = integrate_function(f).conj();
    let rhs = integrate_function(&f.wave_involution());
    Check::numeric("conj ∫f = ∫f†", alloc::format!("modes={}", f.len()), (lhs - rhs).norm(), 0.0)
}

/// Hermiticity `conj((ω,ρ)) = (ρ,ω)`.
pub fn hermiticity(calc: &Calculus, omega: &Form<WaveElement>, rho: &Form<WaveElement>, tol: f64) -> Result<Check, Error> {
    let a = inner_product(calc, omega, rho)?;
    let b = inner_product(calc, rho, omega)?;
    let scale = a.norm().max(b.norm()).max(1.0);
    Ok(Check::numeric("conj (ω,ρ) = (ρ,ω)", alloc::format!("degree={:?}", omega.degree()), (a.conj() - b).norm() / scale, tol))
}

/// Runs the closedness, invariance and involution checks on given inputs.
pub fn verify(calc: &Calculus, four_forms: &[Form<WaveElement>], functions: &[WaveElement]) -> Result<Report, Error> {
    let mut report = Report::new();
    let ops = [
        OperatorElement::p0(),
        OperatorElement::p(1),
        OperatorElement::p(2),
        OperatorElement::p(3),
        OperatorElement::e_pow(1),
        OperatorElement::e_pow(-1),
    ];
    for omega in four_forms {
        report.push(closedness(calc, omega)?);
    }
    for f in functions {
        report.push(involution_compatibility(f));
        let top = Form::basis(Word::VOL, f.clone());
        for h in &ops {
            report.push(left_invariance(h, &top)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: f64 = 1.3;

    fn wave(k: [f64; 4], re: f64, im: f64) -> WaveElement {
        WaveElement::wave(k, Complex64::new(re, im), K)
    }

    #[test]
    fn normalization_and_support() {
        assert_eq!(integrate_function(&WaveElement::one(K)), Complex64::new(1.0, 0.0));
        let f = Form::basis(Word::VOL, wave([0.2, 0.1, 0.0, 0.0], 1.0, 0.0));
        assert_eq!(integrate(&f).unwrap(), zero());
        let bad = Form::one_form(0, wave([0.0; 4], 1.0, 0.0));
        assert_eq!(integrate(&bad).unwrap_err(), Error::DegreeMismatch { expected: 5, found: 1 });
    }

    #[test]
    fn scalar_inner_product() {
        let calc = Calculus::new();
        let e = Form::function(wave([0.4, -0.2, 0.3, 0.1], 1.0, 0.0));
        let v = inner_product(&calc, &e, &e).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let e0 = Form::one_form(0, wave([0.0; 4], 1.0, 0.0));
        let v = inner_product(&calc, &e0, &e0).unwrap();
        assert!((v + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn closed_and_positive() {
        let calc = Calculus::new();
        let f = wave([0.4, -0.2, 0.3, 0.1], 0.5, -1.0).add(&wave([0.0; 4], 2.0, 0.0));
        let omega = Form::basis(Word::from_mask(0b01111), f.clone());
        assert!(closedness(&calc, &omega).unwrap().passed);
        let one = Form::one_form(0, f.clone()).add(&Form::one_form(3, f.clone()));
        assert!(tilde_positivity(&calc, &one, 1e-12).unwrap().passed);
        let two = Form::basis(Word::from_mask(0b00110), f);
        assert!(inner_product(&calc, &two, &tilde(&two)).unwrap().re < 0.0);
        assert!(tilde_positivity(&calc, &two, 1e-12).unwrap().passed);
        assert!(tilde_positivity(&calc, &Form::zero(), 1e-12).unwrap().passed);
    }
}
