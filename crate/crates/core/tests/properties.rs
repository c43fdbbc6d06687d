use num_complex::Complex64;
use proptest::prelude::*;

use kforms_core::kminkowski::{mode_antipode, mode_compose, Monomial};
use kforms_core::kpoincare::twist;
use kforms_core::{Calculus, ExactScalar, Form, Gaussian, Generator, OperatorElement, PolyElement, Rational, WaveElement, Word};

fn rational() -> impl Strategy<Value = Rational> {
    (-4i128..=4, 1i128..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (rational(), rational(), 0i32..=1).prop_map(|(re, im, p)| ExactScalar::term(p, Gaussian::new(re, im)))
}

fn monomial(max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0usize..4, 0..=max_degree as usize).prop_map(|slots| {
        let mut m = [0; 4];
        for s in slots {
            m[s] += 1;
        }
        m
    })
}

fn poly(max_degree: u32) -> impl Strategy<Value = PolyElement> {
    prop::collection::vec((monomial(max_degree), scalar()), 1..=3)
        .prop_map(|terms| terms.into_iter().fold(PolyElement::zero(), |f, (m, c)| &f + &PolyElement::monomial(m, c)))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::all().to_vec())
}

/// Words of one or two generators with a small coefficient.
fn operator() -> impl Strategy<Value = OperatorElement> {
    (prop::collection::vec(generator(), 1..=2), scalar())
        .prop_map(|(gs, c)| gs.into_iter().fold(OperatorElement::one(), |h, g| &h * &OperatorElement::generator(g)).scale(&c))
}

fn word(degree: usize) -> impl Strategy<Value = Word> {
    prop::sample::select(Word::of_degree(degree))
}

fn form(degree: usize) -> impl Strategy<Value = Form<PolyElement>> {
    prop::collection::vec((word(degree), poly(3)), 1..=2)
        .prop_map(|terms| {
            let mut f = Form::zero();
            for (w, c) in terms {
                f.accumulate(w, c);
            }
            f
        })
        .prop_filter("zero form", |f| !f.is_zero())
}

fn any_form(max_degree: usize) -> impl Strategy<Value = Form<PolyElement>> {
    (0..=max_degree).prop_flat_map(form)
}

fn mode(range: f64) -> impl Strategy<Value = [f64; 4]> {
    [-range..range, -range..range, -range..range, -range..range]
}

/// `Σ h₍₁₎▷f · h₍₂₎▷g` from the coproduct.
fn coproduct_action(h: &OperatorElement, f: &PolyElement, g: &PolyElement) -> PolyElement {
    let mut out = PolyElement::zero();
    for (legs, c) in h.coproduct().terms() {
        let left = f.act(&OperatorElement::from_word(legs[0], ExactScalar::one()));
        let right = g.act(&OperatorElement::from_word(legs[1], ExactScalar::one()));
        out = &out + &left.nc_mul(&right).scale(c);
    }
    out
}

fn calc() -> &'static Calculus {
    static CALC: std::sync::OnceLock<Calculus> = std::sync::OnceLock::new();
    CALC.get_or_init(Calculus::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(f in poly(3), g in poly(3), h in poly(3)) {
        prop_assert_eq!(f.nc_mul(&g).nc_mul(&h), f.nc_mul(&g.nc_mul(&h)));
    }

    #[test]
    fn involution_reverses_products(f in poly(3), g in poly(3)) {
        prop_assert_eq!(f.nc_mul(&g).involution(), g.involution().nc_mul(&f.involution()));
        prop_assert_eq!(f.involution().involution(), f);
    }

    #[test]
    fn action_is_a_module_algebra(h in operator(), f in poly(2), g in poly(2)) {
        prop_assert_eq!(f.nc_mul(&g).act(&h), coproduct_action(&h, &f, &g));
    }

    #[test]
    fn action_is_a_representation(h in operator(), k in operator(), f in poly(3)) {
        prop_assert_eq!(f.act(&(&h * &k)), f.act(&k).act(&h));
    }

    #[test]
    fn involution_is_covariant(h in operator(), f in poly(3)) {
        prop_assert_eq!(f.act(&h).involution(), f.involution().act(&h.antipode().dagger()));
    }

    #[test]
    fn fast_and_generic_actions_agree(h in operator(), f in poly(3)) {
        prop_assert_eq!(f.act(&h), f.act_generic(&h));
    }

    #[test]
    fn d_squares_to_zero(omega in any_form(3)) {
        prop_assert!(calc().d(&calc().d(&omega)).is_zero());
    }

    #[test]
    fn graded_leibniz(omega in any_form(2), b in form(1)) {
        let c = calc();
        let p = omega.degree().unwrap();
        let lhs = c.d(&c.wedge(&omega, &b));
        let sign = ExactScalar::from_int(if p % 2 == 0 { 1 } else { -1 });
        let rhs = c.wedge(&c.d(&omega), &b).add(&c.wedge(&omega, &c.d(&b)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(1), e in form(2)) {
        let c = calc();
        prop_assert_eq!(c.wedge(&c.wedge(&a, &b), &e), c.wedge(&a, &c.wedge(&b, &e)));
    }

    #[test]
    fn cartan_formula(a in 0usize..5, omega in any_form(5)) {
        let c = calc();
        let lhs = c.d(&c.inner(a, &omega).unwrap()).add(&c.inner(a, &c.d(&omega)).unwrap());
        let i_chi = c.chi[a].scale(&ExactScalar::i());
        prop_assert_eq!(lhs, c.lie(&i_chi, &omega).unwrap());
    }

    #[test]
    fn hodge_squares_to_sign(omega in any_form(5)) {
        let c = calc();
        let n = omega.degree().unwrap();
        let sign = ExactScalar::from_int(if (n * (5 - n)) % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(c.hodge(&c.hodge(&omega)), omega.scale(&sign));
    }

    #[test]
    fn waves_compose_and_invert(k in mode(1.0), l in mode(1.0), m in mode(1.0)) {
        let kappa = 1.5;
        let w = |k| WaveElement::wave(k, Complex64::new(1.0, 0.0), kappa);
        let (a, b, c) = (w(k), w(l), w(m));
        let lhs = a.wave_mul(&b).wave_mul(&c);
        let rhs = a.wave_mul(&b.wave_mul(&c));
        let (kl, lk) = (lhs.terms().next().unwrap().0, rhs.terms().next().unwrap().0);
        prop_assert!(kl.iter().zip(lk).all(|(x, y)| (x - y).abs() < 1e-12));
        let unit = mode_compose(&k, &mode_antipode(&k, kappa), kappa);
        prop_assert!(unit.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn twist_acts_by_its_eigenvalue(k in mode(1.0)) {
        let kappa = 2.0;
        let e = WaveElement::wave(k, Complex64::new(1.0, 0.0), kappa);
        let got = e.act_diagonal(&twist()).unwrap().coefficient(&k);
        prop_assert!((got - Complex64::new((3.0 * k[0] / kappa).exp(), 0.0)).norm() < 1e-12);
    }
}

/// `Σ c_a c_b x^a x^b` with `x^a x^b` normal-ordered exactly and evaluated at κ.
fn series_product(k: &[f64; 4], l: &[f64; 4], order: u32, kappa: f64) -> std::collections::BTreeMap<Monomial, Complex64> {
    let mut out = std::collections::BTreeMap::new();
    let nonzero = |k| WaveElement::series(k, order).into_iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0));
    let right: Vec<_> = nonzero(l).collect();
    for (a, ca) in nonzero(k) {
        for &(b, cb) in &right {
            let prod = PolyElement::monomial(a, ExactScalar::one()).nc_mul(&PolyElement::monomial(b, ExactScalar::one()));
            for (m, c) in prod.eval_coefficients(kappa) {
                *out.entry(m).or_insert(Complex64::new(0.0, 0.0)) += ca * cb * c;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wave_product_matches_series(k0 in -0.4..0.4f64, k1 in -0.4..0.4f64, l0 in -0.4..0.4f64, l1 in -0.4..0.4f64) {
        // 1+1 sector, where the ordering matters
        let kappa = 1.0;
        let (k, l) = ([k0, k1, 0.0, 0.0], [l0, l1, 0.0, 0.0]);
        let product = series_product(&k, &l, 12, kappa);
        let expected: std::collections::BTreeMap<Monomial, Complex64> =
            WaveElement::series(&mode_compose(&k, &l, kappa), 12).into_iter().collect();
        for (m, c) in expected.iter().filter(|(m, _)| m.iter().sum::<u32>() <= 3) {
            let got = product.get(m).copied().unwrap_or_default();
            prop_assert!((got - c).norm() < 1e-9, "monomial {:?}: {} vs {}", m, got, c);
        }
    }
}
