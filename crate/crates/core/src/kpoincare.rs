//! The κ-Poincaré Hopf algebra as a rewriting system.
//!
//! Elements are sums of normal-ordered words
//! `R₁^a R₂^b R₃^c N₁^d N₂^e N₃^f · P₁^g P₂^h P₃^j P₀^l E^m`
//! where `E = e^{P₀/κ}` carries an integer exponent. The Lorentz letters form
//! a PBW basis of `U(so(3,1))`; the momentum letters commute among
//! themselves. Products are brought back to normal order by the bracket
//! relations of the bicrossproduct basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Float;

use crate::check::{Check, Report};
use crate::combinatorics::{epsilon3, levi_civita, permutations};
use crate::scalars::{ExactScalar, Gaussian};
use crate::Error;

/// Minkowski metric `η = diag(-1, 1, 1, 1, 1)` on five indices.
pub fn eta(a: usize) -> i64 {
    if a == 0 {
        -1
    } else {
        1
    }
}

/// Single algebra generators. Spatial indices run over `1..=3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    R(u8),
    N(u8),
    P(u8),
    P0,
    E,
    EInv,
}

impl Generator {
    /// The ten symmetry generators `P_μ, N_j, R_j`.
    pub fn symmetry() -> [Generator; 10] {
        use Generator::*;
        [P0, P(1), P(2), P(3), N(1), N(2), N(3), R(1), R(2), R(3)]
    }

    /// Symmetry generators plus `E` and `E⁻¹`.
    pub fn all() -> [Generator; 12] {
        use Generator::*;
        [P0, P(1), P(2), P(3), N(1), N(2), N(3), R(1), R(2), R(3), E, EInv]
    }

    /// Slot of a Lorentz generator in the PBW exponent array.
    fn lorentz_slot(self) -> Option<usize> {
        match self {
            Generator::R(j) => Some(j as usize - 1),
            Generator::N(j) => Some(j as usize + 2),
            _ => None,
        }
    }

    pub fn name(self) -> alloc::string::String {
        match self {
            Generator::R(j) => alloc::format!("R{j}"),
            Generator::N(j) => alloc::format!("N{j}"),
            Generator::P(j) => alloc::format!("P{j}"),
            Generator::P0 => "P0".into(),
            Generator::E => "E".into(),
            Generator::EInv => "E^-1".into(),
        }
    }
}

/// Commutative momentum monomial `P₁^p₁ P₂^p₂ P₃^p₃ P₀^p₀ E^e`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Momentum {
    pub p: [u16; 3],
    pub p0: u16,
    pub e: i32,
}

impl Momentum {
    pub const ONE: Momentum = Momentum { p: [0; 3], p0: 0, e: 0 };

    fn times(&self, o: &Momentum) -> Momentum {
        Momentum { p: [self.p[0] + o.p[0], self.p[1] + o.p[1], self.p[2] + o.p[2]], p0: self.p0 + o.p0, e: self.e + o.e }
    }

    fn is_one(&self) -> bool {
        *self == Momentum::ONE
    }

    fn p_j(j: usize) -> Momentum {
        let mut m = Momentum::ONE;
        m.p[j - 1] = 1;
        m
    }

    fn e_pow(e: i32) -> Momentum {
        Momentum { e, ..Momentum::ONE }
    }
}

/// A normal-ordered word: PBW Lorentz exponents followed by a momentum monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct OpWord {
    /// Exponents of `R₁, R₂, R₃, N₁, N₂, N₃`.
    pub lorentz: [u16; 6],
    pub momentum: Momentum,
}

impl OpWord {
    pub const UNIT: OpWord = OpWord { lorentz: [0; 6], momentum: Momentum::ONE };

    pub fn is_momentum(&self) -> bool {
        self.lorentz == [0; 6]
    }

    fn from_momentum(m: Momentum) -> OpWord {
        OpWord { lorentz: [0; 6], momentum: m }
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["R1", "R2", "R3", "N1", "N2", "N3"];
        let mut parts: Vec<alloc::string::String> = Vec::new();
        let mut push = |name: &str, exp: i64| {
            if exp == 1 {
                parts.push(name.into());
            } else if exp != 0 {
                parts.push(alloc::format!("{name}^{exp}"));
            }
        };
        for (slot, exp) in self.lorentz.iter().enumerate() {
            push(NAMES[slot], *exp as i64);
        }
        for j in 0..3 {
            push(["P1", "P2", "P3"][j], self.momentum.p[j] as i64);
        }
        push("P0", self.momentum.p0 as i64);
        push("E", self.momentum.e as i64);
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

type Terms = BTreeMap<OpWord, ExactScalar>;

fn accumulate(acc: &mut Terms, w: OpWord, c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&w) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                acc.remove(&w);
            }
        }
        None => {
            acc.insert(w, c);
        }
    }
}

/// Element of `U(so(3,1)) ▷◁ 𝒜*` in normal order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OperatorElement {
    terms: Terms,
}

impl OperatorElement {
    pub fn zero() -> Self {
        OperatorElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(ExactScalar::one())
    }

    pub fn scalar(c: ExactScalar) -> Self {
        Self::from_word(OpWord::UNIT, c)
    }

    pub fn from_word(w: OpWord, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, w, c);
        OperatorElement { terms }
    }

    pub fn generator(g: Generator) -> Self {
        let mut w = OpWord::UNIT;
        match g {
            Generator::R(_) | Generator::N(_) => w.lorentz[g.lorentz_slot().unwrap()] = 1,
            Generator::P(j) => w.momentum = Momentum::p_j(j as usize),
            Generator::P0 => w.momentum.p0 = 1,
            Generator::E => w.momentum.e = 1,
            Generator::EInv => w.momentum.e = -1,
        }
        Self::from_word(w, ExactScalar::one())
    }

    pub fn p(j: usize) -> Self {
        Self::generator(Generator::P(j as u8))
    }

    pub fn p0() -> Self {
        Self::generator(Generator::P0)
    }

    pub fn n(j: usize) -> Self {
        Self::generator(Generator::N(j as u8))
    }

    pub fn r(j: usize) -> Self {
        Self::generator(Generator::R(j as u8))
    }

    /// `E^n = e^{n P₀/κ}`.
    pub fn e_pow(n: i32) -> Self {
        Self::from_word(OpWord::from_momentum(Momentum::e_pow(n)), ExactScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpWord, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no Lorentz letters occur.
    pub fn is_momentum(&self) -> bool {
        self.terms.keys().all(OpWord::is_momentum)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            accumulate(&mut terms, *w, v * c);
        }
        OperatorElement { terms }
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficient of a word, zero if absent.
    pub fn coefficient(&self, w: &OpWord) -> ExactScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Eigenvalue on the plane wave `e_k`: `P₀ ↦ k₀`, `P_j ↦ k_j`,
    /// `E ↦ e^{k₀/κ}`. Fails on Lorentz letters.
    pub fn eigenvalue(&self, k: &[f64; 4], kappa: f64) -> Result<Complex64, Error> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in &self.terms {
            if !w.is_momentum() {
                return Err(Error::NotDiagonal);
            }
            let m = &w.momentum;
            let mut v = Float::exp(m.e as f64 * k[0] / kappa);
            for j in 0..3 {
                v *= Float::powi(k[j + 1], m.p[j] as i32);
            }
            v *= Float::powi(k[0], m.p0 as i32);
            acc += c.eval(kappa) * v;
        }
        Ok(acc)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let mut acc = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let c = ca * cb;
                if wb.is_momentum() {
                    let w = OpWord { lorentz: wa.lorentz, momentum: wa.momentum.times(&wb.momentum) };
                    accumulate(&mut acc, w, c);
                } else {
                    mul_words_into(&mut acc, &c, wa, wb);
                }
            }
        }
        OperatorElement { terms: acc }
    }

    /// Counit: a homomorphism to scalars killing every generator except `E^n`.
    pub fn counit(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (w, c) in &self.terms {
            if w.is_momentum() && w.momentum.p == [0; 3] && w.momentum.p0 == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Antipode, extended as an anti-homomorphism.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out = &out + &antipode_word(w).scale(c);
        }
        out
    }

    /// Hermitian conjugate: anti-linear anti-automorphism fixing every generator.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prod = OperatorElement::from_word(OpWord::from_momentum(w.momentum), c.conj());
            for slot in (0..6).rev() {
                let mut letter = OpWord::UNIT;
                letter.lorentz[slot] = 1;
                let letter = OperatorElement::from_word(letter, ExactScalar::one());
                for _ in 0..w.lorentz[slot] {
                    prod = &prod * &letter;
                }
            }
            out = &out + &prod;
        }
        out
    }

    /// Coproduct, extended as an algebra homomorphism.
    pub fn coproduct(&self) -> TensorOperator {
        let mut out = TensorOperator::zero(2);
        for (w, c) in &self.terms {
            out = out.add(&coproduct_word(w).scale(c));
        }
        out
    }

    /// `m · □_κ − □_κ · m`.
    pub fn commutator_casimir(&self) -> Self {
        self.commutator(&casimir())
    }
}

impl fmt::Display for OperatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let coeff = alloc::format!("{c}");
            let unit = *w == OpWord::UNIT;
            let body = if unit {
                if c.terms().len() > 1 {
                    alloc::format!("({coeff})")
                } else {
                    coeff
                }
            } else if c.is_one() {
                alloc::format!("{w}")
            } else if (-c).is_one() {
                alloc::format!("-{w}")
            } else {
                alloc::format!("({coeff})·{w}")
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

impl fmt::Debug for OperatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &OperatorElement {
    type Output = OperatorElement;
    fn add(self, o: &OperatorElement) -> OperatorElement {
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            accumulate(&mut terms, *w, c.clone());
        }
        OperatorElement { terms }
    }
}

impl Sub for &OperatorElement {
    type Output = OperatorElement;
    fn sub(self, o: &OperatorElement) -> OperatorElement {
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            accumulate(&mut terms, *w, -c);
        }
        OperatorElement { terms }
    }
}

impl Neg for &OperatorElement {
    type Output = OperatorElement;
    fn neg(self) -> OperatorElement {
        self.scale(&-ExactScalar::one())
    }
}

impl Mul for &OperatorElement {
    type Output = OperatorElement;
    fn mul(self, o: &OperatorElement) -> OperatorElement {
        self.mul_impl(o)
    }
}

impl Mul<&OperatorElement> for &ExactScalar {
    type Output = OperatorElement;
    fn mul(self, o: &OperatorElement) -> OperatorElement {
        o.scale(self)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for OperatorElement {
            type Output = OperatorElement;
            fn $m(self, o: OperatorElement) -> OperatorElement {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

// ---------------------------------------------------------------------------
// Structure constants

/// `[L_a, L_b]` for PBW slots `0..6` = `R₁ R₂ R₃ N₁ N₂ N₃`, as `(slot, coeff)`.
fn lorentz_bracket(a: usize, b: usize) -> Vec<(usize, ExactScalar)> {
    let mut out = Vec::new();
    let (ja, jb) = (a % 3, b % 3);
    let a_is_n = a >= 3;
    let b_is_n = b >= 3;
    for l in 0..3 {
        let e = epsilon3(ja, jb, l);
        if e == 0 {
            continue;
        }
        let i = ExactScalar::i().scale(Gaussian::from_int(e as i64));
        match (a_is_n, b_is_n) {
            // [R_j, R_k] = i ε R_l
            (false, false) => out.push((l, i)),
            // [N_j, N_k] = -i ε R_l
            (true, true) => out.push((l, -i)),
            // [R_j, N_k] = i ε N_l and [N_j, R_k] = i ε N_l
            _ => out.push((l + 3, i)),
        }
    }
    out
}

type MomPoly = Vec<(Momentum, ExactScalar)>;

fn mom_times(poly: &MomPoly, m: &Momentum, c: &ExactScalar) -> MomPoly {
    poly.iter().map(|(q, d)| (q.times(m), d * c)).collect()
}

/// `[L_slot, P_μ]` with `μ = 0` for `P₀` and `1..=3` for `P_j`.
fn lorentz_momentum_bracket(slot: usize, mu: usize) -> MomPoly {
    let i = ExactScalar::i();
    let j = slot % 3 + 1;
    let mut out = Vec::new();
    if slot < 3 {
        // rotations: [R_j, P_k] = i ε_{jkl} P_l, [R_j, P₀] = 0
        if mu > 0 {
            for l in 1..=3 {
                let e = epsilon3(j - 1, mu - 1, l - 1);
                if e != 0 {
                    out.push((Momentum::p_j(l), i.scale(Gaussian::from_int(e as i64))));
                }
            }
        }
        return out;
    }
    if mu == 0 {
        // [N_j, P₀] = i P_j
        out.push((Momentum::p_j(j), i));
        return out;
    }
    let i_over_k = ExactScalar::i_over_kappa();
    if mu == j {
        // i (κ/2 (1 - E⁻²) + |P|²/(2κ))
        let half_ik = ExactScalar::term(-1, Gaussian::new(crate::Rational::new(0, 1), crate::Rational::new(1, 2)));
        out.push((Momentum::ONE, half_ik.clone()));
        out.push((Momentum::e_pow(-2), -half_ik));
        let half_i_over_k = i_over_k.scale(Gaussian::new(crate::Rational::new(1, 2), crate::Rational::new(0, 1)));
        for l in 1..=3 {
            let mut m = Momentum::ONE;
            m.p[l - 1] = 2;
            out.push((m, half_i_over_k.clone()));
        }
    }
    // - (i/κ) P_j P_k
    let mut m = Momentum::p_j(j);
    m.p[mu - 1] += 1;
    out.push((m, -i_over_k));
    out
}

/// `[L_slot, m]` for a momentum monomial, using that `ad L` is a derivation
/// and `[L, E^e] = (e/κ) E^e [L, P₀]`.
fn lorentz_monomial_bracket(slot: usize, m: &Momentum) -> MomPoly {
    let mut out: MomPoly = Vec::new();
    for mu in 1..=3 {
        let a = m.p[mu - 1];
        if a == 0 {
            continue;
        }
        let mut rest = *m;
        rest.p[mu - 1] -= 1;
        out.extend(mom_times(&lorentz_momentum_bracket(slot, mu), &rest, &ExactScalar::from_int(a as i64)));
    }
    let bracket0 = lorentz_momentum_bracket(slot, 0);
    if m.p0 > 0 {
        let mut rest = *m;
        rest.p0 -= 1;
        out.extend(mom_times(&bracket0, &rest, &ExactScalar::from_int(m.p0 as i64)));
    }
    if m.e != 0 {
        let c = ExactScalar::inv_kappa_pow(1).scale(Gaussian::from_int(m.e as i64));
        out.extend(mom_times(&bracket0, m, &c));
    }
    out
}

// ---------------------------------------------------------------------------
// Normal ordering

fn first_slot(l: &[u16; 6]) -> Option<usize> {
    l.iter().position(|&e| e > 0)
}

fn last_slot(l: &[u16; 6]) -> Option<usize> {
    l.iter().rposition(|&e| e > 0)
}

/// PBW word times one Lorentz letter, re-sorted.
fn lorentz_times_letter(l: &[u16; 6], x: usize) -> Vec<([u16; 6], ExactScalar)> {
    match last_slot(l) {
        Some(y) if y > x => {
            let mut head = *l;
            head[y] -= 1;
            let mut out = Vec::new();
            // head·Y·X = head·X·Y + head·[Y, X]
            for (w, c) in lorentz_times_letter(&head, x) {
                for (w2, c2) in lorentz_times_letter(&w, y) {
                    out.push((w2, &c * &c2));
                }
            }
            for (z, cz) in lorentz_bracket(y, x) {
                for (w, c) in lorentz_times_letter(&head, z) {
                    out.push((w, &c * &cz));
                }
            }
            out
        }
        _ => {
            let mut w = *l;
            w[x] += 1;
            alloc::vec![(w, ExactScalar::one())]
        }
    }
}

/// Normal-ordered word times one Lorentz letter.
fn word_times_letter(a: &OpWord, x: usize) -> Vec<(OpWord, ExactScalar)> {
    let mut out = Vec::new();
    // L m X = (L X) m - L [X, m]
    for (l, c) in lorentz_times_letter(&a.lorentz, x) {
        out.push((OpWord { lorentz: l, momentum: a.momentum }, c));
    }
    if !a.momentum.is_one() {
        for (m, c) in lorentz_monomial_bracket(x, &a.momentum) {
            out.push((OpWord { lorentz: a.lorentz, momentum: m }, -c));
        }
    }
    out
}

fn mul_words_into(acc: &mut Terms, coef: &ExactScalar, a: &OpWord, b: &OpWord) {
    let Some(x) = first_slot(&b.lorentz) else {
        let w = OpWord { lorentz: a.lorentz, momentum: a.momentum.times(&b.momentum) };
        accumulate(acc, w, coef.clone());
        return;
    };
    let mut rest = *b;
    rest.lorentz[x] -= 1;
    for (w, c) in word_times_letter(a, x) {
        mul_words_into(acc, &(coef * &c), &w, &rest);
    }
}

// ---------------------------------------------------------------------------
// Hopf structure on words

fn momentum_element(m: Momentum) -> OperatorElement {
    OperatorElement::from_word(OpWord::from_momentum(m), ExactScalar::one())
}

fn antipode_generator(g: Generator) -> OperatorElement {
    use OperatorElement as O;
    let minus = -ExactScalar::one();
    match g {
        Generator::P0 => O::p0().scale(&minus),
        Generator::P(j) => (&O::e_pow(1) * &O::p(j as usize)).scale(&minus),
        Generator::E => O::e_pow(-1),
        Generator::EInv => O::e_pow(1),
        Generator::R(j) => O::r(j as usize).scale(&minus),
        Generator::N(j) => {
            // S(N_j) = -E N_j + (1/κ) ε_{jkl} E P_k R_l
            let j = j as usize;
            let mut out = (&O::e_pow(1) * &O::n(j)).scale(&minus);
            for k in 1..=3 {
                for l in 1..=3 {
                    let e = epsilon3(j - 1, k - 1, l - 1);
                    if e == 0 {
                        continue;
                    }
                    let c = ExactScalar::inv_kappa_pow(1).scale(Gaussian::from_int(e as i64));
                    let t = &(&O::e_pow(1) * &O::p(k)) * &O::r(l);
                    out = &out + &t.scale(&c);
                }
            }
            out
        }
    }
}

fn antipode_word(w: &OpWord) -> OperatorElement {
    // momentum part commutes; S(P_j^n) = (-1)^n E^n P_j^n
    let m = &w.momentum;
    let sign = (m.p.iter().map(|&x| x as i64).sum::<i64>() + m.p0 as i64) % 2;
    let mut sm = *m;
    sm.e = m.p.iter().map(|&x| x as i32).sum::<i32>() - m.e;
    let mut out = momentum_element(sm);
    if sign == 1 {
        out = -&out;
    }
    for slot in (0..6).rev() {
        let g = if slot < 3 { Generator::R(slot as u8 + 1) } else { Generator::N(slot as u8 - 2) };
        let s = antipode_generator(g);
        for _ in 0..w.lorentz[slot] {
            out = &out * &s;
        }
    }
    out
}

fn coproduct_generator(g: Generator) -> TensorOperator {
    use OperatorElement as O;
    let one = O::one();
    let mut t = TensorOperator::zero(2);
    match g {
        Generator::P0 => {
            t = t.add(&TensorOperator::pure(&[O::p0(), one.clone()]));
            t = t.add(&TensorOperator::pure(&[one, O::p0()]));
        }
        Generator::P(j) => {
            let j = j as usize;
            t = t.add(&TensorOperator::pure(&[O::p(j), one]));
            t = t.add(&TensorOperator::pure(&[O::e_pow(-1), O::p(j)]));
        }
        Generator::E => t = TensorOperator::pure(&[O::e_pow(1), O::e_pow(1)]),
        Generator::EInv => t = TensorOperator::pure(&[O::e_pow(-1), O::e_pow(-1)]),
        Generator::R(j) => {
            let j = j as usize;
            t = t.add(&TensorOperator::pure(&[O::r(j), one.clone()]));
            t = t.add(&TensorOperator::pure(&[one, O::r(j)]));
        }
        Generator::N(k) => {
            // Δ N_k = N_k ⊗ 1 + E⁻¹ ⊗ N_k + (1/κ) ε_{klm} P_l ⊗ R_m
            let k = k as usize;
            t = t.add(&TensorOperator::pure(&[O::n(k), one]));
            t = t.add(&TensorOperator::pure(&[O::e_pow(-1), O::n(k)]));
            for l in 1..=3 {
                for m in 1..=3 {
                    let e = epsilon3(k - 1, l - 1, m - 1);
                    if e == 0 {
                        continue;
                    }
                    let c = ExactScalar::inv_kappa_pow(1).scale(Gaussian::from_int(e as i64));
                    t = t.add(&TensorOperator::pure(&[O::p(l), O::r(m)]).scale(&c));
                }
            }
        }
    }
    t
}

fn coproduct_word(w: &OpWord) -> TensorOperator {
    let mut out = TensorOperator::unit(2);
    for slot in 0..6 {
        let g = if slot < 3 { Generator::R(slot as u8 + 1) } else { Generator::N(slot as u8 - 2) };
        let d = coproduct_generator(g);
        for _ in 0..w.lorentz[slot] {
            out = out.mul(&d);
        }
    }
    // Momentum sector: Δ is computed directly on the commutative monomial.
    let m = &w.momentum;
    let mut mom = TensorOperator::pure(&[O2::e(m.e), O2::e(m.e)]);
    for j in 1..=3 {
        let d = coproduct_generator(Generator::P(j as u8));
        for _ in 0..m.p[j - 1] {
            mom = mom.mul(&d);
        }
    }
    let d0 = coproduct_generator(Generator::P0);
    for _ in 0..m.p0 {
        mom = mom.mul(&d0);
    }
    out.mul(&mom)
}

struct O2;
impl O2 {
    fn e(n: i32) -> OperatorElement {
        OperatorElement::e_pow(n)
    }
}

// ---------------------------------------------------------------------------
// Tensor powers

/// Element of an `arity`-fold tensor power, each leg normal-ordered.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorOperator {
    arity: usize,
    terms: BTreeMap<Vec<OpWord>, ExactScalar>,
}

impl TensorOperator {
    pub fn zero(arity: usize) -> Self {
        TensorOperator { arity, terms: BTreeMap::new() }
    }

    pub fn unit(arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.terms.insert(alloc::vec![OpWord::UNIT; arity], ExactScalar::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `a₁ ⊗ a₂ ⊗ …` expanded over the words of each leg.
    pub fn pure(legs: &[OperatorElement]) -> Self {
        let mut t = Self::unit(legs.len());
        t.terms.clear();
        let mut partial: Vec<(Vec<OpWord>, ExactScalar)> = alloc::vec![(Vec::new(), ExactScalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (ws, c) in &partial {
                for (w, d) in leg.terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(*w);
                    next.push((ws2, c * d));
                }
            }
            partial = next;
        }
        for (ws, c) in partial {
            t.insert(ws, c);
        }
        t
    }

    fn insert(&mut self, ws: Vec<OpWord>, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&ws) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&ws);
                }
            }
            None => {
                self.terms.insert(ws, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<OpWord>, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut out = self.clone();
        for (ws, c) in &o.terms {
            out.insert(ws.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-ExactScalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.arity);
        for (ws, d) in &self.terms {
            out.insert(ws.clone(), d * c);
        }
        out
    }

    /// Legwise product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut out = Self::zero(self.arity);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let legs: Vec<OperatorElement> = wa
                    .iter()
                    .zip(wb)
                    .map(|(x, y)| {
                        let mut acc = BTreeMap::new();
                        if y.is_momentum() {
                            accumulate(
                                &mut acc,
                                OpWord { lorentz: x.lorentz, momentum: x.momentum.times(&y.momentum) },
                                ExactScalar::one(),
                            );
                        } else {
                            mul_words_into(&mut acc, &ExactScalar::one(), x, y);
                        }
                        OperatorElement { terms: acc }
                    })
                    .collect();
                let t = Self::pure(&legs).scale(&(ca * cb));
                out = out.add(&t);
            }
        }
        out
    }

    /// Applies `f` to leg `leg`, linearly.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&OperatorElement) -> TensorOperator) -> Self {
        let mut out: Option<Self> = None;
        for (ws, c) in &self.terms {
            let inner = f(&OperatorElement::from_word(ws[leg], c.clone()));
            let mut piece = Self::zero(self.arity - 1 + inner.arity);
            for (iw, ic) in &inner.terms {
                let mut full = Vec::with_capacity(piece.arity);
                full.extend_from_slice(&ws[..leg]);
                full.extend_from_slice(iw);
                full.extend_from_slice(&ws[leg + 1..]);
                piece.insert(full, ic.clone());
            }
            out = Some(match out {
                Some(acc) => acc.add(&piece),
                None => piece,
            });
        }
        out.unwrap_or_else(|| Self::zero(self.arity))
    }

    /// Multiplies all legs together in order.
    pub fn multiply_legs(&self) -> OperatorElement {
        let mut out = OperatorElement::zero();
        for (ws, c) in &self.terms {
            let mut prod = OperatorElement::scalar(c.clone());
            for w in ws {
                prod = &prod * &OperatorElement::from_word(*w, ExactScalar::one());
            }
            out = &out + &prod;
        }
        out
    }
}

impl fmt::Debug for TensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (ws, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for w in ws {
                write!(f, "[{w}]")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Operator families

fn sinh_p0() -> OperatorElement {
    (&OperatorElement::e_pow(1) - &OperatorElement::e_pow(-1)).scale(&ExactScalar::from_ratio(1, 2))
}

fn cosh_p0() -> OperatorElement {
    (&OperatorElement::e_pow(1) + &OperatorElement::e_pow(-1)).scale(&ExactScalar::from_ratio(1, 2))
}

fn p_squared() -> OperatorElement {
    (1..=3).fold(OperatorElement::zero(), |acc, j| &acc + &OperatorElement::p(j).pow(2))
}

/// `E |P⃗|²`.
fn e_p_squared() -> OperatorElement {
    &OperatorElement::e_pow(1) * &p_squared()
}

fn c(num: i64, den: i64, inv_kappa: i32) -> ExactScalar {
    ExactScalar::term(inv_kappa, Gaussian::new(crate::Rational::new(num as i128, den as i128), crate::Rational::new(0, 1)))
}

/// The matrix `λ^a_b` with `e^a f = (λ^a_b ▷ f) e^b`, rows `a` and columns `b`.
pub fn lambda_matrix() -> [[OperatorElement; 5]; 5] {
    let z = OperatorElement::zero;
    let mut m: [[OperatorElement; 5]; 5] = Default::default();
    let ep2 = e_p_squared();
    let half_ep2 = ep2.scale(&c(1, 2, 2));
    m[0][0] = &cosh_p0() + &half_ep2;
    m[0][4] = &(-&sinh_p0()) - &half_ep2;
    m[4][0] = &(-&sinh_p0()) + &half_ep2;
    m[4][4] = &cosh_p0() - &half_ep2;
    for j in 1..=3 {
        let pj = OperatorElement::p(j).scale(&c(1, 1, 1));
        let epj = (&OperatorElement::e_pow(1) * &OperatorElement::p(j)).scale(&c(1, 1, 1));
        m[0][j] = pj.clone();
        m[4][j] = pj;
        m[j][0] = epj.clone();
        m[j][4] = -&epj;
        for k in 1..=3 {
            m[j][k] = if j == k { OperatorElement::one() } else { z() };
        }
    }
    m
}

/// `ξ_a`, with `d f = (i ξ_a ▷ f) e^a`.
pub fn xi() -> [OperatorElement; 5] {
    let half_ep2 = e_p_squared().scale(&c(1, 2, 1));
    let kappa = ExactScalar::kappa_pow(1);
    [
        &(-&sinh_p0().scale(&kappa)) + &half_ep2,
        OperatorElement::p(1),
        OperatorElement::p(2),
        OperatorElement::p(3),
        &(&cosh_p0().scale(&kappa) - &half_ep2) - &OperatorElement::scalar(kappa),
    ]
}

/// `χ_a = −S(ξ_a)`, with `d f = e^a (i χ_a ▷ f)`.
pub fn chi() -> [OperatorElement; 5] {
    xi().map(|x| -&x.antipode())
}

/// `σ^a_b = S(λ^a_b)`, with `f e^a = e^b (σ^a_b ▷ f)`.
pub fn sigma_matrix() -> [[OperatorElement; 5]; 5] {
    lambda_matrix().map(|row| row.map(|x| x.antipode()))
}

/// Twist of the twisted-cyclic integral in 3+1 dimensions, `T = e^{3P₀/κ}`.
pub fn twist() -> OperatorElement {
    OperatorElement::e_pow(3)
}

/// Mass Casimir `□_κ = η^{ab} ξ_a ξ_b`.
pub fn casimir() -> OperatorElement {
    let x = xi();
    (0..5).fold(OperatorElement::zero(), |acc, a| &acc + &(&x[a] * &x[a]).scale(&ExactScalar::from_int(eta(a))))
}

// ---------------------------------------------------------------------------
// Verifiers

/// All 25 contractions `η^{cd} λ^a_c λ^b_d − η^{ab}`.
pub fn verify_so41() -> Report {
    let l = lambda_matrix();
    let mut report = Report::new();
    for a in 0..5 {
        for b in 0..5 {
            let mut acc = OperatorElement::scalar(ExactScalar::from_int(if a == b { -eta(a) } else { 0 }));
            for cc in 0..5 {
                acc = &acc + &(&l[a][cc] * &l[b][cc]).scale(&ExactScalar::from_int(eta(cc)));
            }
            report.push(Check::exact("eta^{cd} lambda^a_c lambda^b_d = eta^{ab}", alloc::format!("a={a} b={b}"), acc.is_zero()));
        }
    }
    report
}

/// `η^{cd} λ^a_c λ^b_d` for one index pair.
pub fn so41_contraction(a: usize, b: usize) -> OperatorElement {
    let l = lambda_matrix();
    (0..5).fold(OperatorElement::zero(), |acc, cc| &acc + &(&l[a][cc] * &l[b][cc]).scale(&ExactScalar::from_int(eta(cc))))
}

/// Both sides of
/// `λ^{a₁}_{b₁}…λ^{aₙ}_{bₙ} ε^{b₁…bₙ aₙ₊₁…a₅} = σ^{aₙ₊₁}_{bₙ₊₁}…σ^{a₅}_{b₅} ε^{a₁…aₙ bₙ₊₁…b₅}`
/// for one free-index assignment.
pub fn epsilon_lambda_sides(
    n: usize,
    free: &[usize; 5],
    lambda: &[[OperatorElement; 5]; 5],
    sigma: &[[OperatorElement; 5]; 5],
) -> (OperatorElement, OperatorElement) {
    let mut lhs = OperatorElement::zero();
    let mut rhs = OperatorElement::zero();
    // Summed indices range over all values; terms with vanishing ε are skipped.
    for_each_tuple(n, |bs| {
        let mut idx = [0usize; 5];
        idx[..n].copy_from_slice(bs);
        idx[n..].copy_from_slice(&free[n..]);
        let e = levi_civita(&idx);
        if e == 0 {
            return;
        }
        let mut prod = OperatorElement::scalar(ExactScalar::from_int(e as i64));
        for i in 0..n {
            prod = &prod * &lambda[free[i]][bs[i]];
        }
        lhs = &lhs + &prod;
    });
    for_each_tuple(5 - n, |bs| {
        let mut idx = [0usize; 5];
        idx[..n].copy_from_slice(&free[..n]);
        idx[n..].copy_from_slice(bs);
        let e = levi_civita(&idx);
        if e == 0 {
            return;
        }
        let mut prod = OperatorElement::scalar(ExactScalar::from_int(e as i64));
        for i in n..5 {
            prod = &prod * &sigma[free[i]][bs[i - n]];
        }
        rhs = &rhs + &prod;
    });
    (lhs, rhs)
}

fn for_each_tuple(len: usize, mut f: impl FnMut(&[usize])) {
    let total = 5usize.pow(len as u32);
    let mut buf = alloc::vec![0usize; len];
    for mut code in 0..total {
        for slot in buf.iter_mut() {
            *slot = code % 5;
            code /= 5;
        }
        f(&buf);
    }
}

/// Checks the ε–λ lemma for every one of the `5⁵` free-index assignments.
pub fn verify_epsilon_lambda_lemma(n: usize) -> Result<Report, Error> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidIndex(n));
    }
    let lambda = lambda_matrix();
    let sigma = sigma_matrix();
    let mut report = Report::new();
    let mut free = [0usize; 5];
    for_each_tuple(5, |a| {
        free.copy_from_slice(a);
        let (lhs, rhs) = epsilon_lambda_sides(n, &free, &lambda, &sigma);
        report.push(Check::exact("epsilon-lambda lemma", alloc::format!("n={n} a={free:?}"), lhs == rhs));
    });
    Ok(report)
}

/// Jacobi identity on every ordered triple of generators.
pub fn verify_jacobi() -> Report {
    let gens = Generator::all();
    let els: Vec<OperatorElement> = gens.iter().map(|g| OperatorElement::generator(*g)).collect();
    let mut report = Report::new();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            for (k, cc) in els.iter().enumerate() {
                let t1 = a.commutator(&b.commutator(cc));
                let t2 = b.commutator(&cc.commutator(a));
                let t3 = cc.commutator(&a.commutator(b));
                let sum = &(&t1 + &t2) + &t3;
                report.push(Check::exact(
                    "Jacobi",
                    alloc::format!("{} {} {}", gens[i].name(), gens[j].name(), gens[k].name()),
                    sum.is_zero(),
                ));
            }
        }
    }
    report
}

/// Coassociativity, counit and antipode axioms on every generator.
pub fn verify_hopf_axioms() -> Report {
    let mut report = Report::new();
    for g in Generator::all() {
        let x = OperatorElement::generator(g);
        let d = x.coproduct();
        let left = d.map_leg(0, |a| a.coproduct());
        let right = d.map_leg(1, |a| a.coproduct());
        report.push(Check::exact("coassociativity", g.name(), left == right));

        let eps = OperatorElement::scalar(x.counit());
        let s_id = d.map_leg(0, |a| TensorOperator::pure(&[a.antipode()])).multiply_legs();
        let id_s = d.map_leg(1, |a| TensorOperator::pure(&[a.antipode()])).multiply_legs();
        report.push(Check::exact("m(S⊗id)Δ = ηε", g.name(), s_id == eps));
        report.push(Check::exact("m(id⊗S)Δ = ηε", g.name(), id_s == eps));

        let eps_left = d.map_leg(0, |a| TensorOperator::pure(&[OperatorElement::scalar(a.counit())])).multiply_legs();
        let eps_right = d.map_leg(1, |a| TensorOperator::pure(&[OperatorElement::scalar(a.counit())])).multiply_legs();
        report.push(Check::exact("(ε⊗id)Δ = id", g.name(), eps_left == x));
        report.push(Check::exact("(id⊗ε)Δ = id", g.name(), eps_right == x));
    }
    report
}

/// Structural identities of the operator families.
pub fn verify_families() -> Report {
    let mut report = Report::new();
    let x = xi();
    let ch = chi();
    let l = lambda_matrix();
    let sg = sigma_matrix();
    let boxk = casimir();
    for a in 0..5 {
        // Δ(ξ_a) = ξ_b ⊗ λ^b_a + 1 ⊗ ξ_a
        let mut expected = TensorOperator::pure(&[OperatorElement::one(), x[a].clone()]);
        for b in 0..5 {
            expected = expected.add(&TensorOperator::pure(&[x[b].clone(), l[b][a].clone()]));
        }
        report.push(Check::exact("Δ(ξ_a) = ξ_b⊗λ^b_a + 1⊗ξ_a", alloc::format!("a={a}"), x[a].coproduct() == expected));
        // Δ(χ_a) = χ_a ⊗ 1 + σ^b_a ⊗ χ_b
        let mut expected = TensorOperator::pure(&[ch[a].clone(), OperatorElement::one()]);
        for b in 0..5 {
            expected = expected.add(&TensorOperator::pure(&[sg[b][a].clone(), ch[b].clone()]));
        }
        report.push(Check::exact("Δ(χ_a) = χ_a⊗1 + σ^b_a⊗χ_b", alloc::format!("a={a}"), ch[a].coproduct() == expected));
        report.push(Check::exact("ε(ξ_a) = 0", alloc::format!("a={a}"), x[a].counit().is_zero()));
        for b in 0..5 {
            let mut d = OperatorElement::zero();
            for cc in 0..5 {
                d = &d + &(&sg[a][cc] * &l[cc][b]);
            }
            let delta = if a == b { OperatorElement::one() } else { OperatorElement::zero() };
            report.push(Check::exact("S(λ^a_c) λ^c_b = δ^a_b", alloc::format!("a={a} b={b}"), d == delta));
            let mut expected = TensorOperator::zero(2);
            for cc in 0..5 {
                expected = expected.add(&TensorOperator::pure(&[l[a][cc].clone(), l[cc][b].clone()]));
            }
            report.push(Check::exact("Δ(λ^a_b) = λ^a_c⊗λ^c_b", alloc::format!("a={a} b={b}"), l[a][b].coproduct() == expected));
            let eps = l[a][b].counit();
            report.push(Check::exact("ε(λ^a_b) = δ^a_b", alloc::format!("a={a} b={b}"), eps == ExactScalar::from_int((a == b) as i64)));
        }
    }
    let chi_box = (0..5).fold(OperatorElement::zero(), |acc, a| &acc + &(&ch[a] * &ch[a]).scale(&ExactScalar::from_int(eta(a))));
    report.push(Check::exact("η^{ab}χ_aχ_b = □_κ", "", chi_box == boxk));
    report.push(Check::exact("S(□_κ) = □_κ", "", boxk.antipode() == boxk));
    for g in Generator::symmetry() {
        report.push(Check::exact("[h, □_κ] = 0", g.name(), OperatorElement::generator(g).commutator_casimir().is_zero()));
    }
    report
}

/// Lorentz generators `M_{μν}` with `M_{0j} = N_j`, `M_{jk} = ε_{jkl} R_l`.
pub fn lorentz_m(mu: usize, nu: usize) -> OperatorElement {
    match (mu, nu) {
        (0, 0) => OperatorElement::zero(),
        (0, j) => OperatorElement::n(j),
        (j, 0) => -&OperatorElement::n(j),
        (j, k) => {
            let mut out = OperatorElement::zero();
            for l in 1..=3 {
                let e = epsilon3(j - 1, k - 1, l - 1);
                if e != 0 {
                    out = &out + &OperatorElement::r(l).scale(&ExactScalar::from_int(e as i64));
                }
            }
            out
        }
    }
}

/// Vector law `[M_{μν}, χ_ρ] = i(η_{μρ}χ_ν − η_{νρ}χ_μ)` and `[M_{μν}, χ₄] = 0`.
pub fn verify_chi_covariance() -> Report {
    let ch = chi();
    let mut report = Report::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let m = lorentz_m(mu, nu);
            for rho in 0..5 {
                let lhs = m.commutator(&ch[rho]);
                let rhs = if rho == 4 {
                    OperatorElement::zero()
                } else {
                    let mut r = OperatorElement::zero();
                    if mu == rho {
                        r = &r + &ch[nu].scale(&ExactScalar::from_int(eta(mu)));
                    }
                    if nu == rho {
                        r = &r - &ch[mu].scale(&ExactScalar::from_int(eta(nu)));
                    }
                    r.scale(&ExactScalar::i())
                };
                report.push(Check::exact("[M_{μν}, χ_ρ] = i(η_{μρ}χ_ν − η_{νρ}χ_μ)", alloc::format!("μ={mu} ν={nu} ρ={rho}"), lhs == rhs));
            }
        }
    }
    report
}

/// Determinant of a square block of commuting momentum-sector entries.
pub(crate) fn minor(m: &[[OperatorElement; 5]; 5], rows: &[usize], cols: &[usize]) -> OperatorElement {
    let n = rows.len();
    let mut out = OperatorElement::zero();
    for (perm, even) in permutations(n) {
        let mut prod = OperatorElement::one();
        for i in 0..n {
            let entry = &m[rows[i]][cols[perm[i]]];
            if entry.is_zero() {
                prod = OperatorElement::zero();
                break;
            }
            prod = &prod * entry;
        }
        if prod.is_zero() {
            continue;
        }
        out = if even { &out + &prod } else { &out - &prod };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use OperatorElement as O;

    fn i() -> ExactScalar {
        ExactScalar::i()
    }

    #[test]
    fn boost_past_time_momentum() {
        // P₀ N₁ = N₁ P₀ − i P₁
        let lhs = &O::p0() * &O::n(1);
        let rhs = &(&O::n(1) * &O::p0()) - &O::p(1).scale(&i());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rotation_past_momentum() {
        // R₁ P₂ = P₂ R₁ + i P₃, i.e. P₂ R₁ is stored as R₁ P₂ − i P₃
        let lhs = &O::p(2) * &O::r(1);
        let rhs = &(&O::r(1) * &O::p(2)) - &O::p(3).scale(&i());
        assert_eq!(lhs, rhs);
        assert_eq!(O::r(1).commutator(&O::p(2)), O::p(3).scale(&i()));
    }

    #[test]
    fn translations_commute() {
        assert_eq!(&O::e_pow(1) * &O::p(1), &O::p(1) * &O::e_pow(1));
        assert_eq!(&O::e_pow(1) * &O::e_pow(-1), O::one());
    }

    #[test]
    fn boost_momentum_bracket_matches_table() {
        // [N₁, P₁] = i(κ/2 (1 − E⁻²) + |P|²/(2κ)) − (i/κ) P₁²
        let lhs = O::n(1).commutator(&O::p(1));
        let half_kappa = ExactScalar::kappa_pow(1).scale(Gaussian::new(crate::Rational::new(1, 2), 0.into()));
        let mut rhs = (&O::one() - &O::e_pow(-2)).scale(&half_kappa);
        rhs = &rhs + &p_squared().scale(&ExactScalar::term(1, Gaussian::new(crate::Rational::new(1, 2), 0.into())));
        rhs = rhs.scale(&i());
        rhs = &rhs - &O::p(1).pow(2).scale(&ExactScalar::i_over_kappa());
        assert_eq!(lhs, rhs);
        // [N₁, E] = (i/κ) P₁ E
        let ne = O::n(1).commutator(&O::e_pow(1));
        assert_eq!(ne, (&O::p(1) * &O::e_pow(1)).scale(&ExactScalar::i_over_kappa()));
    }

    #[test]
    fn lorentz_brackets() {
        assert_eq!(O::r(1).commutator(&O::r(2)), O::r(3).scale(&i()));
        assert_eq!(O::n(1).commutator(&O::n(2)), O::r(3).scale(&-i()));
        assert_eq!(O::r(1).commutator(&O::n(2)), O::n(3).scale(&i()));
        assert_eq!(O::n(1).commutator(&O::r(2)), O::n(3).scale(&i()));
    }

    #[test]
    fn coproduct_examples() {
        let d = O::p0().coproduct();
        let expected = TensorOperator::pure(&[O::p0(), O::one()]).add(&TensorOperator::pure(&[O::one(), O::p0()]));
        assert_eq!(d, expected);
        let d = O::r(2).coproduct();
        let expected = TensorOperator::pure(&[O::r(2), O::one()]).add(&TensorOperator::pure(&[O::one(), O::r(2)]));
        assert_eq!(d, expected);
        // Δ(P₁²) = (P₁⊗1 + E⁻¹⊗P₁)²
        let single = TensorOperator::pure(&[O::p(1), O::one()]).add(&TensorOperator::pure(&[O::e_pow(-1), O::p(1)]));
        assert_eq!(O::p(1).pow(2).coproduct(), single.mul(&single));
        // homomorphism on a mixed product
        let a = &O::n(1) * &O::p(2);
        let b = &O::r(3) * &O::e_pow(1);
        assert_eq!((&a * &b).coproduct(), a.coproduct().mul(&b.coproduct()));
    }

    #[test]
    fn antipode_and_counit_examples() {
        assert_eq!(O::p0().antipode(), -&O::p0());
        assert_eq!(O::e_pow(1).antipode(), O::e_pow(-1));
        assert!(O::n(1).counit().is_zero());
        assert!(O::e_pow(3).counit().is_one());
        // anti-homomorphism
        let a = &O::n(1) * &O::p(2);
        let b = &O::n(2) * &O::r(1);
        assert_eq!((&a * &b).antipode(), &b.antipode() * &a.antipode());
        // S² is the identity on the momentum sector
        assert_eq!(xi()[0].antipode().antipode(), xi()[0]);
    }

    #[test]
    fn family_examples() {
        let l = lambda_matrix();
        assert_eq!(l[1][1], O::one());
        assert_eq!(l[2][2], O::one());
        assert!(l[1][2].is_zero());
        let x = xi();
        let kappa = ExactScalar::kappa_pow(1);
        let expected4 = &(&cosh_p0().scale(&kappa) - &e_p_squared().scale(&c(1, 2, 1))) - &O::scalar(kappa);
        assert_eq!(x[4], expected4);
        for xa in &x {
            assert!(xa.counit().is_zero());
        }
        // χ_j = E P_j
        assert_eq!(chi()[1], &O::e_pow(1) * &O::p(1));
    }

    #[test]
    fn so41_examples() {
        assert_eq!(so41_contraction(0, 0), -&O::one());
        assert!(so41_contraction(1, 2).is_zero());
        assert_eq!(so41_contraction(4, 4), O::one());
        assert!(verify_so41().all_passed());
    }

    #[test]
    fn casimir_commutators() {
        assert!(O::n(1).commutator_casimir().is_zero());
        assert!(O::p(2).commutator_casimir().is_zero());
        // [N₁, χ₁] = −i χ₀ and [N₁, χ₂] = 0
        let ch = chi();
        assert_eq!(O::n(1).commutator(&ch[1]), ch[0].scale(&-i()));
        assert!(O::n(1).commutator(&ch[2]).is_zero());
    }

    #[test]
    fn epsilon_lambda_repeated_index_vanishes() {
        let l = lambda_matrix();
        let s = sigma_matrix();
        let (lhs, rhs) = epsilon_lambda_sides(2, &[0, 1, 2, 2, 4], &l, &s);
        assert!(lhs.is_zero() && rhs.is_zero());
        let (lhs, rhs) = epsilon_lambda_sides(1, &[0, 1, 2, 3, 4], &l, &s);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
        assert_eq!(verify_epsilon_lambda_lemma(0).unwrap_err(), Error::InvalidIndex(0));
    }

    #[test]
    fn display() {
        let x = &(&O::n(1) * &O::p0()) - &O::p(1).scale(&i());
        assert_eq!(alloc::format!("{x}"), "(-i)·P1 + N1·P0");
    }
}
