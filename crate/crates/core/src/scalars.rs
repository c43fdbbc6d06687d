//! Coefficient arithmetic.
//!
//! [`ExactScalar`] is a Laurent polynomial in the inverse deformation
//! parameter `1/κ` whose coefficients are Gaussian rationals `a + b·i`.
//! [`NumericScalar`] is a plain complex double used by the plane-wave
//! backend once `κ` has been fixed to a number.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Float, One, Zero};

use crate::Error;

/// Exact rational number used throughout the symbolic backend.
pub type Rational = Ratio<i128>;

/// Complex double of the numeric backend.
pub type NumericScalar = Complex64;

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub const fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::new(Rational::from_integer(n as i128), Rational::zero())
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = self.re * self.re + self.im * self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Gaussian::new(self.re / norm, -self.im / norm))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

/// Exact scalar `Σ_n c_n κ^{-n}` with Gaussian-rational `c_n`.
///
/// Terms are kept sorted by power with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: Vec<(i32, Gaussian)>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_gaussian(Gaussian::from_int(1))
    }

    pub fn i() -> Self {
        Self::from_gaussian(Gaussian::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(Gaussian::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_gaussian(Gaussian::new(Rational::new(num as i128, den as i128), Rational::zero()))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        Self::term(0, g)
    }

    /// `g · κ^{-power}`.
    pub fn term(power: i32, g: Gaussian) -> Self {
        if g.is_zero() {
            Self::zero()
        } else {
            ExactScalar { terms: alloc::vec![(power, g)] }
        }
    }

    /// `κ^{-n}`.
    pub fn inv_kappa_pow(n: i32) -> Self {
        Self::term(n, Gaussian::from_int(1))
    }

    /// `κ^{n}`.
    pub fn kappa_pow(n: i32) -> Self {
        Self::inv_kappa_pow(-n)
    }

    /// `i/κ`, the constant carried by every deformed commutator.
    pub fn i_over_kappa() -> Self {
        Self::term(1, Gaussian::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == Gaussian::from_int(1)
    }

    /// Sparse `(power of κ⁻¹, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> &[(i32, Gaussian)] {
        &self.terms
    }

    /// Coefficient of `κ^{-power}`.
    pub fn coefficient(&self, power: i32) -> Gaussian {
        self.terms.iter().find(|(p, _)| *p == power).map(|(_, g)| *g).unwrap_or_default()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(p, g)| (*p, g.conj())).collect() }
    }

    /// Inverse of a nonzero monomial scalar.
    pub fn inv(&self) -> Result<Self, Error> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(p, g)] => Ok(Self::term(-*p, g.inv().ok_or(Error::DivisionByZero)?)),
            _ => Err(Error::NotAUnit),
        }
    }

    pub fn scale(&self, g: Gaussian) -> Self {
        if g.is_zero() {
            return Self::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(p, c)| (*p, *c * g)).collect() }
    }

    /// Numeric value at a fixed `κ`.
    pub fn eval(&self, kappa: f64) -> Complex64 {
        self.terms.iter().map(|(p, g)| g.to_complex() * Float::powi(kappa, -*p)).fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    let (p, g) = b[j];
                    out.push((p, if negate { -g } else { g }));
                    j += 1;
                }
                Ordering::Equal => {
                    let g = if negate { a[i].1 - b[j].1 } else { a[i].1 + b[j].1 };
                    if !g.is_zero() {
                        out.push((a[i].0, g));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ExactScalar { terms: out }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        self.merge(o, false)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: ExactScalar) -> ExactScalar {
        self.merge(&o, false)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        *self = self.merge(o, false);
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self.merge(o, true)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        self.merge(&o, true)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(p, g)| (*p, -*g)).collect() }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return ExactScalar::zero();
        }
        if o.terms.len() == 1 && o.terms[0].0 == 0 {
            return self.scale(o.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            return o.scale(self.terms[0].1);
        }
        let mut acc: Vec<(i32, Gaussian)> = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                acc.push((p + q, *a * *b));
            }
        }
        acc.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Gaussian)> = Vec::with_capacity(acc.len());
        for (p, g) in acc {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 = last.1 + g,
                _ => out.push((p, g)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        ExactScalar { terms: out }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        &self * &o
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Numerator text and denominator integer of a monomial `g κ^{-p}`.
fn fmt_monomial(p: i32, g: &Gaussian) -> String {
    // Pure real or pure imaginary coefficients print as `n/(d κ^p)`.
    let (num, den, imag) = if g.im.is_zero() {
        (*g.re.numer(), *g.re.denom(), false)
    } else if g.re.is_zero() {
        (*g.im.numer(), *g.im.denom(), true)
    } else {
        let inner = alloc::format!("({} + {}i)", fmt_rational(&g.re), fmt_rational(&g.im));
        let inner = inner.replace("+ -", "- ");
        return attach_kappa(inner, 1, p);
    };
    let mut head = String::new();
    if num < 0 {
        head.push('-');
    }
    let a = num.abs();
    match (a, imag) {
        (1, true) => head.push('i'),
        (_, true) => head.push_str(&alloc::format!("{a}i")),
        (_, false) => head.push_str(&alloc::format!("{a}")),
    }
    attach_kappa(head, den, p)
}

fn attach_kappa(mut head: String, den: i128, p: i32) -> String {
    if p < 0 {
        // positive powers of κ multiply the numerator
        if head == "1" || head == "-1" {
            head.pop();
            head.push('κ');
        } else {
            head.push('κ');
        }
        if p < -1 {
            head.push_str(&alloc::format!("^{}", -p));
        }
    }
    let kden = match p {
        p if p <= 0 => String::new(),
        1 => String::from("κ"),
        p => alloc::format!("κ^{p}"),
    };
    match (den, kden.is_empty()) {
        (1, true) => head,
        (1, false) => alloc::format!("{head}/{kden}"),
        (d, true) => alloc::format!("{head}/{d}"),
        (d, false) => alloc::format!("{head}/({d}{kden})"),
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (p, g)) in self.terms.iter().enumerate() {
            let s = fmt_monomial(*p, g);
            if idx == 0 {
                f.write_str(&s)?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A coefficient of either backend.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(ExactScalar),
    Numeric(NumericScalar),
}

impl Scalar {
    fn pair<'a>(&'a self, o: &'a Scalar) -> Result<(&'a ExactScalar, &'a ExactScalar), (Complex64, Complex64)> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok((a, b)),
            _ => Err((self.as_numeric(), o.as_numeric())),
        }
    }

    fn as_numeric(&self) -> Complex64 {
        match self {
            Scalar::Numeric(z) => *z,
            // mixing promotes at κ = 1
            Scalar::Exact(e) => e.eval(1.0),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match self.pair(o) {
            Ok((a, b)) => Scalar::Exact(a + b),
            Err((a, b)) => Scalar::Numeric(a + b),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match self.pair(o) {
            Ok((a, b)) => Scalar::Exact(a * b),
            Err((a, b)) => Scalar::Numeric(a * b),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Numeric(z) => Scalar::Numeric(-z),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.conj()),
            Scalar::Numeric(z) => Scalar::Numeric(z.conj()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        match self {
            Scalar::Exact(a) => a.inv().map(Scalar::Exact),
            Scalar::Numeric(z) => {
                if z.norm_sqr() == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    finite(z.inv()).map(Scalar::Numeric)
                }
            }
        }
    }
}

/// Rejects NaN and infinite values.
pub fn finite(z: Complex64) -> Result<Complex64, Error> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ik() -> ExactScalar {
        ExactScalar::i_over_kappa()
    }

    #[test]
    fn conjugate_pair_multiplies_to_kappa_minus_two() {
        let prod = &ik() * &(-ik()).clone();
        // (i/κ)(-i/κ) = 1/κ²
        assert_eq!(prod, ExactScalar::inv_kappa_pow(2));
        assert_eq!(ik().conj(), -ik());
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = &ExactScalar::from_ratio(1, 2) + &ExactScalar::inv_kappa_pow(1);
        let b = &ExactScalar::from_ratio(1, 2) - &ExactScalar::inv_kappa_pow(1);
        assert_eq!(&a + &b, ExactScalar::one());
        assert!((&a - &a).is_zero());
        assert!((&a - &a).terms().is_empty());
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(ExactScalar::zero().inv(), Err(Error::DivisionByZero));
        let two_terms = &ExactScalar::one() + &ExactScalar::inv_kappa_pow(1);
        assert_eq!(two_terms.inv(), Err(Error::NotAUnit));
        let x = ExactScalar::term(2, Gaussian::new(Rational::new(3, 2), Rational::new(1, 1)));
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(Scalar::Numeric(Complex64::new(0.0, 0.0)).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(alloc::format!("{}", ik()), "i/κ");
        assert_eq!(alloc::format!("{}", ExactScalar::from_ratio(-1, 2)), "-1/2");
        assert_eq!(alloc::format!("{}", ExactScalar::term(2, Gaussian::new(Rational::new(1, 2), Rational::zero()))), "1/(2κ^2)");
        assert_eq!(alloc::format!("{}", ExactScalar::kappa_pow(1)), "κ");
        assert_eq!(alloc::format!("{}", -ExactScalar::kappa_pow(2)), "-κ^2");
        let mixed = &ExactScalar::one() - &ik();
        assert_eq!(alloc::format!("{mixed}"), "1 - i/κ");
    }

    #[test]
    fn eval_at_kappa() {
        let s = &ExactScalar::from_int(3) + &ExactScalar::i_over_kappa();
        let z = s.eval(2.0);
        assert!((z - Complex64::new(3.0, 0.5)).norm() < 1e-15);
        assert!((ExactScalar::kappa_pow(2).eval(3.0).re - 9.0).abs() < 1e-12);
    }
}
