//! The κ-Minkowski coordinate algebra `[x_j, x₀] = (i/κ) x_j`, `[x_j, x_k] = 0`.
//!
//! Two backends share the operator action:
//!
//! * [`PolyElement`] holds exact polynomials in normal order
//!   `x₁^a x₂^b x₃^c x₀^m` (time rightmost).
//! * [`WaveElement`] holds finite sums of ordered plane waves
//!   `e_k = e^{i k⃗·x⃗} e^{−i k₀ x₀}`, on which momenta act diagonally.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Float;

use crate::combinatorics::{binomial, epsilon3, falling};
use crate::kpoincare::{Momentum, OpWord, OperatorElement};
use crate::scalars::{ExactScalar, Gaussian};
use crate::Error;

/// Exponents `(n₁, n₂, n₃, n₀)` of `x₁^{n₁} x₂^{n₂} x₃^{n₃} x₀^{n₀}`.
pub type Monomial = [u32; 4];

fn spatial_degree(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

/// Exact element of the coordinate algebra.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyElement {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl PolyElement {
    pub fn zero() -> Self {
        PolyElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(ExactScalar::one())
    }

    pub fn scalar(c: ExactScalar) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(m: Monomial, c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.accumulate(m, c);
        p
    }

    /// Coordinate `x^μ`, `μ = 0` being time.
    pub fn x(mu: usize) -> Self {
        let mut m = [0; 4];
        m[if mu == 0 { 3 } else { mu - 1 }] = 1;
        Self::monomial(m, ExactScalar::one())
    }

    fn accumulate(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Maximal total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.accumulate(*m, v * c);
        }
        out
    }

    /// Normal-ordered product, using `x₀^m x^b = x^b (x₀ − i|b|/κ)^m`.
    pub fn nc_mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let c = ca * cb;
                let shift = ExactScalar::i_over_kappa().scale(Gaussian::from_int(-(spatial_degree(b) as i64)));
                let spatial = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                for (j, s) in shifted_powers(a[3], &shift) {
                    out.accumulate([spatial[0], spatial[1], spatial[2], j + b[3]], &c * &s);
                }
            }
        }
        out
    }

    /// Anti-linear anti-automorphism fixing every coordinate.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let shift = ExactScalar::i_over_kappa().scale(Gaussian::from_int(-(spatial_degree(a) as i64)));
            for (j, s) in shifted_powers(a[3], &shift) {
                out.accumulate([a[0], a[1], a[2], j], &c.conj() * &s);
            }
        }
        out
    }

    /// Action of a momentum monomial: `P_j = −i∂_j`, `P₀ = i∂₀`,
    /// `E^e` shifts `x₀ ↦ x₀ + ie/κ`.
    fn act_momentum_word(&self, m: &Momentum) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = *a;
            let mut dead = false;
            for j in 0..3 {
                let k = m.p[j] as u32;
                if k > exps[j] {
                    dead = true;
                    break;
                }
                coeff = &coeff * &ExactScalar::from_gaussian(neg_i_pow(k)).scale(Gaussian::from_int(falling(exps[j], k) as i64));
                exps[j] -= k;
            }
            let k0 = m.p0 as u32;
            if dead || k0 > exps[3] {
                continue;
            }
            coeff = &coeff * &ExactScalar::from_gaussian(i_pow(k0)).scale(Gaussian::from_int(falling(exps[3], k0) as i64));
            exps[3] -= k0;
            if m.e == 0 {
                out.accumulate(exps, coeff);
            } else {
                let shift = ExactScalar::i_over_kappa().scale(Gaussian::from_int(m.e as i64));
                for (j, s) in shifted_powers(exps[3], &shift) {
                    out.accumulate([exps[0], exps[1], exps[2], j], &coeff * &s);
                }
            }
        }
        out
    }

    /// Left action of the κ-Poincaré algebra. Momenta act as differential and
    /// shift operators; each Lorentz letter is applied by peeling coordinates
    /// through its coproduct.
    pub fn act(&self, h: &OperatorElement) -> Self {
        let mut out = Self::zero();
        for (w, c) in h.terms() {
            let mut f = self.act_momentum_word(&w.momentum);
            for slot in (0..6).rev() {
                for _ in 0..w.lorentz[slot] {
                    f = f.act_letter(Letter::lorentz(slot));
                }
            }
            out = &out + &f.scale(c);
        }
        out
    }

    /// Same action computed by coproduct peeling for every letter, momenta
    /// included. Used to cross-check [`PolyElement::act`].
    pub fn act_generic(&self, h: &OperatorElement) -> Self {
        let mut out = Self::zero();
        for (w, c) in h.terms() {
            let mut f = self.clone();
            let m = &w.momentum;
            let e_letter = if m.e >= 0 { Letter::E(1) } else { Letter::E(-1) };
            for _ in 0..m.e.unsigned_abs() {
                f = f.act_letter(e_letter);
            }
            for _ in 0..m.p0 {
                f = f.act_letter(Letter::P0);
            }
            for j in 0..3 {
                for _ in 0..m.p[j] {
                    f = f.act_letter(Letter::P(j + 1));
                }
            }
            for slot in (0..6).rev() {
                for _ in 0..w.lorentz[slot] {
                    f = f.act_letter(Letter::lorentz(slot));
                }
            }
            out = &out + &f.scale(c);
        }
        out
    }

    fn act_letter(&self, g: Letter) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = &out + &act_letter_on_word(g, &word_letters(m)).scale(c);
        }
        out
    }

    /// Numerical value of every coefficient at a given κ.
    pub fn eval_coefficients(&self, kappa: f64) -> Vec<(Monomial, Complex64)> {
        self.terms.iter().map(|(m, c)| (*m, c.eval(kappa))).collect()
    }
}

fn i_pow(k: u32) -> Gaussian {
    match k % 4 {
        0 => Gaussian::from_int(1),
        1 => Gaussian::i(),
        2 => Gaussian::from_int(-1),
        _ => -Gaussian::i(),
    }
}

fn neg_i_pow(k: u32) -> Gaussian {
    i_pow((4 - k % 4) % 4)
}

/// Expansion of `(x₀ + s)^n` as `(power of x₀, coefficient)`.
fn shifted_powers(n: u32, s: &ExactScalar) -> Vec<(u32, ExactScalar)> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut sp = ExactScalar::one();
    for k in 0..=n {
        let j = n - k;
        out.push((j, sp.scale(Gaussian::from_int(binomial(n, k) as i64))));
        sp = &sp * s;
    }
    out
}

/// Single generators acting by peeling.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Letter {
    P(usize),
    P0,
    E(i32),
    N(usize),
    R(usize),
}

impl Letter {
    fn lorentz(slot: usize) -> Letter {
        if slot < 3 {
            Letter::R(slot + 1)
        } else {
            Letter::N(slot - 2)
        }
    }
}

/// Coordinates of a monomial left to right, `0` standing for `x₀`.
fn word_letters(m: &Monomial) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, &n) in m[..3].iter().enumerate() {
        out.extend(core::iter::repeat_n(j + 1, n as usize));
    }
    out.extend(core::iter::repeat_n(0, m[3] as usize));
    out
}

fn word_to_poly(letters: &[usize]) -> PolyElement {
    letters.iter().fold(PolyElement::one(), |acc, &mu| acc.nc_mul(&PolyElement::x(mu)))
}

/// Action of a letter on one coordinate.
fn act_letter_on_coordinate(g: Letter, mu: usize) -> PolyElement {
    let minus_i = ExactScalar::i().scale(Gaussian::from_int(-1));
    match g {
        Letter::P(j) => {
            if mu == j {
                PolyElement::scalar(minus_i)
            } else {
                PolyElement::zero()
            }
        }
        Letter::P0 => {
            if mu == 0 {
                PolyElement::scalar(ExactScalar::i())
            } else {
                PolyElement::zero()
            }
        }
        Letter::E(e) => {
            if mu == 0 {
                &PolyElement::x(0) + &PolyElement::scalar(ExactScalar::i_over_kappa().scale(Gaussian::from_int(e as i64)))
            } else {
                PolyElement::x(mu)
            }
        }
        // Lorentz letters carry a factor i so that brackets are represented.
        Letter::N(j) => {
            if mu == 0 {
                PolyElement::x(j).scale(&ExactScalar::i())
            } else if mu == j {
                PolyElement::x(0).scale(&ExactScalar::i())
            } else {
                PolyElement::zero()
            }
        }
        Letter::R(j) => {
            if mu == 0 {
                return PolyElement::zero();
            }
            let mut out = PolyElement::zero();
            for l in 1..=3 {
                let e = epsilon3(j - 1, mu - 1, l - 1);
                if e != 0 {
                    out = &out + &PolyElement::x(l).scale(&ExactScalar::i().scale(Gaussian::from_int(e as i64)));
                }
            }
            out
        }
    }
}

/// Coproduct of a letter as a list of `(coeff, left letter or 1, right letter or 1)`.
fn letter_coproduct(g: Letter) -> Vec<(ExactScalar, Option<Letter>, Option<Letter>)> {
    let one = ExactScalar::one;
    match g {
        Letter::P0 => alloc::vec![(one(), Some(g), None), (one(), None, Some(g))],
        Letter::R(_) => alloc::vec![(one(), Some(g), None), (one(), None, Some(g))],
        Letter::E(_) => alloc::vec![(one(), Some(g), Some(g))],
        Letter::P(_) => alloc::vec![(one(), Some(g), None), (one(), Some(Letter::E(-1)), Some(g))],
        Letter::N(k) => {
            let mut out = alloc::vec![(one(), Some(g), None), (one(), Some(Letter::E(-1)), Some(g))];
            for l in 1..=3 {
                for m in 1..=3 {
                    let e = epsilon3(k - 1, l - 1, m - 1);
                    if e != 0 {
                        out.push((
                            ExactScalar::inv_kappa_pow(1).scale(Gaussian::from_int(e as i64)),
                            Some(Letter::P(l)),
                            Some(Letter::R(m)),
                        ));
                    }
                }
            }
            out
        }
    }
}

/// `g ▷ (x^{μ₁} x^{μ₂} …)` by `g ▷ (x·rest) = (g⁽¹⁾▷x)(g⁽²⁾▷rest)`.
fn act_letter_on_word(g: Letter, letters: &[usize]) -> PolyElement {
    let Some((&first, rest)) = letters.split_first() else {
        // counit on the unit
        return match g {
            Letter::E(_) => PolyElement::one(),
            _ => PolyElement::zero(),
        };
    };
    let mut out = PolyElement::zero();
    for (c, left, right) in letter_coproduct(g) {
        let head = match left {
            Some(l) => act_letter_on_coordinate(l, first),
            None => PolyElement::x(first),
        };
        if head.is_zero() {
            continue;
        }
        let tail = match right {
            Some(r) => act_letter_on_word(r, rest),
            None => word_to_poly(rest),
        };
        out = &out + &head.nc_mul(&tail).scale(&c);
    }
    out
}

const NAMES: [&str; 4] = ["x1", "x2", "x3", "x0"];

fn monomial_name(m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (slot, &e) in m.iter().enumerate() {
        if e == 1 {
            parts.push(NAMES[slot].into());
        } else if e > 1 {
            parts.push(alloc::format!("{}^{e}", NAMES[slot]));
        }
    }
    parts.join("·")
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let name = monomial_name(m);
            let coeff = alloc::format!("{c}");
            let body = if name.is_empty() {
                if c.terms().len() > 1 {
                    alloc::format!("({coeff})")
                } else {
                    coeff
                }
            } else if c.is_one() {
                name
            } else if (-c).is_one() {
                alloc::format!("-{name}")
            } else {
                alloc::format!("({coeff})·{name}")
            };
            if idx == 0 {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &PolyElement {
    type Output = PolyElement;
    fn add(self, o: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyElement {
    type Output = PolyElement;
    fn sub(self, o: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.accumulate(*m, -c);
        }
        out
    }
}

impl Neg for &PolyElement {
    type Output = PolyElement;
    fn neg(self) -> PolyElement {
        self.scale(&-ExactScalar::one())
    }
}

impl Mul for &PolyElement {
    type Output = PolyElement;
    fn mul(self, o: &PolyElement) -> PolyElement {
        self.nc_mul(o)
    }
}

// ---------------------------------------------------------------------------
// Plane waves

/// Wave vector `(k₀, k₁, k₂, k₃)`.
pub type Mode = [f64; 4];

/// Default quantization step for mode keys, `2⁻³²`.
pub const DEFAULT_QUANTUM: f64 = 1.0 / 4_294_967_296.0;

/// `k ⊕ l = (k₀ + l₀, k⃗ + e^{−k₀/κ} l⃗)`.
pub fn mode_compose(k: &Mode, l: &Mode, kappa: f64) -> Mode {
    let damp = Float::exp(-k[0] / kappa);
    [k[0] + l[0], k[1] + damp * l[1], k[2] + damp * l[2], k[3] + damp * l[3]]
}

/// `S(k) = (−k₀, −e^{k₀/κ} k⃗)`.
pub fn mode_antipode(k: &Mode, kappa: f64) -> Mode {
    let grow = Float::exp(k[0] / kappa);
    [-k[0], -grow * k[1], -grow * k[2], -grow * k[3]]
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct ModeKey([i64; 4]);

/// Finite sum `Σ c_k e_k` of ordered plane waves.
///
/// Modes are deduplicated on a grid of spacing `quantum`; the stored
/// representative keeps full precision.
#[derive(Clone, PartialEq)]
pub struct WaveElement {
    kappa: f64,
    quantum: f64,
    terms: BTreeMap<ModeKey, (Mode, Complex64)>,
}

impl WaveElement {
    pub fn zero(kappa: f64) -> Self {
        Self::with_quantum(kappa, DEFAULT_QUANTUM)
    }

    pub fn with_quantum(kappa: f64, quantum: f64) -> Self {
        WaveElement { kappa, quantum, terms: BTreeMap::new() }
    }

    pub fn one(kappa: f64) -> Self {
        Self::wave([0.0; 4], Complex64::new(1.0, 0.0), kappa)
    }

    /// `c · e_k`.
    pub fn wave(k: Mode, c: Complex64, kappa: f64) -> Self {
        let mut w = Self::zero(kappa);
        w.accumulate(k, c);
        w
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn quantum(&self) -> f64 {
        self.quantum
    }

    /// An empty element with the same κ and grid.
    pub fn empty_like(&self) -> Self {
        Self::with_quantum(self.kappa, self.quantum)
    }

    fn key(&self, k: &Mode) -> ModeKey {
        ModeKey(k.map(|x| Float::round(x / self.quantum) as i64))
    }

    pub fn accumulate(&mut self, k: Mode, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let key = self.key(&k);
        match self.terms.get_mut(&key) {
            Some((_, v)) => {
                *v += c;
                if *v == Complex64::new(0.0, 0.0) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (k, c));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &Complex64)> {
        self.terms.values().map(|(k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the mode nearest to `k` on the grid.
    pub fn coefficient(&self, k: &Mode) -> Complex64 {
        self.terms.get(&self.key(k)).map(|(_, c)| *c).unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Largest coefficient modulus.
    pub fn norm_max(&self) -> f64 {
        self.terms.values().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.empty_like();
        for (k, v) in self.terms() {
            out.accumulate(*k, v * c);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in o.terms() {
            out.accumulate(*k, *v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `e_k · e_l = e_{k⊕l}`.
    pub fn wave_mul(&self, o: &Self) -> Self {
        let mut out = self.empty_like();
        for (k, a) in self.terms() {
            for (l, b) in o.terms() {
                out.accumulate(mode_compose(k, l, self.kappa), a * b);
            }
        }
        out
    }

    /// `(c e_k)† = c̄ e_{S(k)}`.
    pub fn wave_involution(&self) -> Self {
        let mut out = self.empty_like();
        for (k, c) in self.terms() {
            out.accumulate(mode_antipode(k, self.kappa), c.conj());
        }
        out
    }

    /// Momentum-sector operators act on `e_k` by their eigenvalue.
    pub fn act_diagonal(&self, h: &OperatorElement) -> Result<Self, Error> {
        let mut out = self.empty_like();
        for (k, c) in self.terms() {
            let ev = h.eigenvalue(k, self.kappa)?;
            out.accumulate(*k, crate::scalars::finite(ev * c)?);
        }
        Ok(out)
    }

    /// Truncated series `Σ_{n ≤ order}` of the ordered exponential of `e_k`
    /// as an exact polynomial with numeric coefficients, returned per monomial.
    pub fn series(k: &Mode, order: u32) -> Vec<(Monomial, Complex64)> {
        // e^{i k·x} e^{−i k₀ x₀}: product of one-variable series, x₀ rightmost.
        let mut out = Vec::new();
        let i = Complex64::new(0.0, 1.0);
        let fact = |n: u32| (1..=n).fold(1.0, |a, b| a * b as f64);
        for n1 in 0..=order {
            for n2 in 0..=order - n1 {
                for n3 in 0..=order - n1 - n2 {
                    for n0 in 0..=order - n1 - n2 - n3 {
                        let c = (i * k[1]).powu(n1) / fact(n1) * (i * k[2]).powu(n2) / fact(n2) * (i * k[3]).powu(n3) / fact(n3)
                            * (-i * k[0]).powu(n0)
                            / fact(n0);
                        out.push(([n1, n2, n3, n0], c));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for WaveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)·e[{}, {}, {}, {}]", c.re, c.im, k[0], k[1], k[2], k[3])?;
        }
        Ok(())
    }
}

impl fmt::Display for WaveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Operator word of a single momentum monomial, used by tests and the parser.
pub fn momentum_word(p: [u16; 3], p0: u16, e: i32) -> OpWord {
    OpWord { lorentz: [0; 6], momentum: Momentum { p, p0, e } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kpoincare::{chi, twist, xi};
    use OperatorElement as O;
    use PolyElement as X;

    fn ik() -> ExactScalar {
        ExactScalar::i_over_kappa()
    }

    #[test]
    fn time_past_space() {
        // x₀ x₁ = x₁ x₀ − (i/κ) x₁
        let lhs = &X::x(0) * &X::x(1);
        let rhs = &(&X::x(1) * &X::x(0)) - &X::x(1).scale(&ik());
        assert_eq!(lhs, rhs);
        assert_eq!(&X::x(1) * &X::x(2), &X::x(2) * &X::x(1));
        let a = &(&X::x(0) * &X::x(1)) * &X::x(0);
        let b = &X::x(0) * &(&X::x(1) * &X::x(0));
        assert_eq!(a, b);
    }

    #[test]
    fn involution_examples() {
        let f = &X::x(1) * &X::x(0);
        assert_eq!(f.involution(), &(&X::x(1) * &X::x(0)) - &X::x(1).scale(&ik()));
        let c = X::scalar(ExactScalar::i());
        assert_eq!(c.involution(), X::scalar(-ExactScalar::i()));
        let g = &f * &X::x(0);
        assert_eq!(g.involution().involution(), g);
    }

    #[test]
    fn action_examples() {
        let minus_i = X::scalar(-ExactScalar::i());
        assert_eq!(X::x(1).act(&O::p(1)), minus_i);
        assert_eq!((&X::x(1) * &X::x(0)).act(&O::p(1)), X::x(0).scale(&-ExactScalar::i()));
        let i = ExactScalar::i();
        assert_eq!(X::x(1).act(&O::n(1)), X::x(0).scale(&i));
        assert_eq!(X::x(0).act(&O::n(2)), X::x(2).scale(&i));
        assert_eq!(X::x(0).act(&O::e_pow(1)), &X::x(0) + &X::scalar(ik()));
        assert_eq!(X::x(2).act(&O::r(1)), X::x(3).scale(&i));
        assert_eq!(X::x(0).act(&O::p0()), X::scalar(ExactScalar::i()));
    }

    #[test]
    fn fast_and_generic_actions_agree() {
        let f = &(&(&X::x(1) * &X::x(0)) * &X::x(2)) * &X::x(0);
        let ops = [O::p(1), O::p0(), O::e_pow(-2), &O::p(2) * &O::e_pow(1), xi()[0].clone(), O::n(1), &O::n(2) * &O::r(3)];
        for h in &ops {
            assert_eq!(f.act(h), f.act_generic(h), "{h}");
        }
    }

    #[test]
    fn wave_examples() {
        let k = [0.5, 0.1, 0.0, 0.0];
        let l = [0.2, 0.3, 0.0, 0.0];
        let s = mode_compose(&k, &l, 1.0);
        assert!((s[0] - 0.7).abs() < 1e-15);
        assert!((s[1] - 0.281_959).abs() < 1e-6);
        let a = mode_antipode(&k, 1.0);
        assert!((a[1] + 0.164_872).abs() < 1e-6);
        let one = WaveElement::one(1.0);
        let e = WaveElement::wave(l, Complex64::new(1.0, 0.0), 1.0);
        assert_eq!(one.wave_mul(&e), e);
        let ek = WaveElement::wave(k, Complex64::new(1.0, 0.0), 1.0);
        let prod = ek.wave_mul(&ek.wave_involution());
        assert_eq!(prod.len(), 1);
        assert!((prod.coefficient(&[0.0; 4]) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_action() {
        let kappa = 1.5;
        let k = [0.3, 0.2, -0.1, 0.4];
        let e = WaveElement::wave(k, Complex64::new(1.0, 0.0), kappa);
        let t = e.act_diagonal(&twist()).unwrap();
        assert!((t.coefficient(&k).re - (3.0 * 0.3 / kappa).exp()).abs() < 1e-12);
        let one = WaveElement::one(kappa);
        for x in xi() {
            assert!(one.act_diagonal(&x).unwrap().is_zero());
        }
        assert_eq!(e.act_diagonal(&O::n(1)).unwrap_err(), Error::NotDiagonal);
        // χ₁(k) = e^{k₀/κ} k₁
        let c1 = e.act_diagonal(&chi()[1]).unwrap().coefficient(&k);
        assert!((c1.re - (0.3f64 / kappa).exp() * 0.2).abs() < 1e-12);
    }
}
