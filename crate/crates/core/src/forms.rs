//! The five-dimensional bicovariant differential calculus.
//!
//! A form is a sum of `L · e^{a₁}∧…∧e^{aₙ}` with the algebra coefficient `L`
//! on the left and a strictly increasing wedge word. Moving a coefficient
//! across a word uses minors of `λ` (from the right) or `σ` (from the left):
//!
//! * `e^A f = Σ_B (det λ[A,B] ▷ f) e^B`
//! * `f e^A = Σ_B e^B (det σ[A,B] ▷ f)`

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;

use crate::combinatorics::{epsilon3, levi_civita};
use crate::kminkowski::{PolyElement, WaveElement};
use crate::kpoincare::{self, eta, minor, OpWord, OperatorElement};
use crate::scalars::{ExactScalar, Gaussian};
use crate::Error;

/// Coefficient algebras the calculus can be built over.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &ExactScalar) -> Self;
    fn dagger(&self) -> Self;
    /// Action of an operator built from momentum letters only.
    fn act_momentum(&self, h: &OperatorElement) -> Self;
    /// Action of an arbitrary operator; backends may refuse Lorentz letters.
    fn act(&self, h: &OperatorElement) -> Result<Self, Error>;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coefficient for PolyElement {
    fn is_zero(&self) -> bool {
        PolyElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self.nc_mul(o)
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        PolyElement::scale(self, c)
    }
    fn dagger(&self) -> Self {
        self.involution()
    }
    fn act_momentum(&self, h: &OperatorElement) -> Self {
        PolyElement::act(self, h)
    }
    fn act(&self, h: &OperatorElement) -> Result<Self, Error> {
        Ok(PolyElement::act(self, h))
    }
}

impl Coefficient for WaveElement {
    fn is_zero(&self) -> bool {
        WaveElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        WaveElement::add(self, o)
    }
    fn neg(&self) -> Self {
        WaveElement::scale(self, Complex64::new(-1.0, 0.0))
    }
    fn mul(&self, o: &Self) -> Self {
        self.wave_mul(o)
    }
    fn scale(&self, c: &ExactScalar) -> Self {
        WaveElement::scale(self, c.eval(self.kappa()))
    }
    fn dagger(&self) -> Self {
        self.wave_involution()
    }
    fn act_momentum(&self, h: &OperatorElement) -> Self {
        debug_assert!(h.is_momentum());
        let mut out = self.empty_like();
        for (k, c) in self.terms() {
            let ev = h.eigenvalue(k, self.kappa()).unwrap_or_default();
            out.accumulate(*k, ev * c);
        }
        out
    }
    fn act(&self, h: &OperatorElement) -> Result<Self, Error> {
        self.act_diagonal(h)
    }
}

/// Strictly increasing wedge word over `{0,…,4}`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word(u8);

impl Word {
    pub const EMPTY: Word = Word(0);
    /// `vol⁵ = e⁰∧e¹∧e²∧e³∧e⁴`.
    pub const VOL: Word = Word(0b11111);

    pub fn from_mask(mask: u8) -> Self {
        Word(mask & 0b11111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn single(a: usize) -> Self {
        Word(1 << a)
    }

    /// Sorts indices into a canonical word, returning the permutation sign;
    /// `None` when an index repeats or is out of range.
    pub fn from_indices(idx: &[usize]) -> Option<(Word, i64)> {
        let mut mask = 0u8;
        for &a in idx {
            if a > 4 || mask & (1 << a) != 0 {
                return None;
            }
            mask |= 1 << a;
        }
        let mut inversions = 0;
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if idx[i] > idx[j] {
                    inversions += 1;
                }
            }
        }
        Some((Word(mask), if inversions % 2 == 0 { 1 } else { -1 }))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..5).filter(|a| self.0 & (1 << a) != 0).collect()
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn complement(self) -> Word {
        Word(!self.0 & 0b11111)
    }

    /// All 32 words ordered by degree.
    pub fn all() -> Vec<Word> {
        let mut out: Vec<Word> = (0..32u8).map(Word).collect();
        out.sort();
        out
    }

    /// All words of one degree.
    pub fn of_degree(n: usize) -> Vec<Word> {
        Word::all().into_iter().filter(|w| w.degree() == n).collect()
    }

    /// `e^A ∧ e^B` as `(word, sign)`, `None` when the words overlap.
    pub fn wedge(self, o: Word) -> Option<(Word, i64)> {
        if self.0 & o.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for a in self.indices() {
            swaps += o.indices().iter().filter(|&&b| b < a).count();
        }
        Some((Word(self.0 | o.0), if swaps % 2 == 0 { 1 } else { -1 }))
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.degree(), self.0).cmp(&(o.degree(), o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.indices().iter().map(|a| alloc::format!("e{a}")).collect();
        f.write_str(&parts.join("∧"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A differential form with left coefficients.
#[derive(Clone, PartialEq)]
pub struct Form<A> {
    terms: BTreeMap<Word, A>,
}

impl<A: Coefficient> Default for Form<A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<A: Coefficient> Form<A> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    /// `c · e^w`.
    pub fn basis(w: Word, c: A) -> Self {
        let mut f = Self::zero();
        f.accumulate(w, c);
        f
    }

    /// A function viewed as a 0-form.
    pub fn function(c: A) -> Self {
        Self::basis(Word::EMPTY, c)
    }

    /// `c · e^a`.
    pub fn one_form(a: usize, c: A) -> Self {
        Self::basis(Word::single(a), c)
    }

    pub fn accumulate(&mut self, w: Word, c: A) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(v) => {
                let s = v.add(&c);
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &A)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: Word) -> Option<&A> {
        self.terms.get(&w)
    }

    /// Degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.degree()).collect();
        d.dedup();
        d
    }

    /// Single degree of a homogeneous nonzero form.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn component(&self, n: usize) -> Self {
        Form { terms: self.terms.iter().filter(|(w, _)| w.degree() == n).map(|(w, c)| (*w, c.clone())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.accumulate(*w, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        self.map(|c| c.scale(s))
    }

    fn map(&self, f: impl Fn(&A) -> A) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.accumulate(*w, f(c));
        }
        out
    }

    /// `f · ω`.
    pub fn left_mul(&self, f: &A) -> Self {
        self.map(|c| f.mul(c))
    }

    /// Momentum operator acting on every coefficient.
    pub fn act_coefficients(&self, h: &OperatorElement) -> Self {
        self.map(|c| c.act_momentum(h))
    }
}

impl<A: Coefficient + fmt::Display> fmt::Display for Form<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *w == Word::EMPTY {
                write!(f, "{c}")?;
            } else {
                let cs = alloc::format!("{c}");
                if cs == "1" {
                    write!(f, "{w}")?;
                } else {
                    write!(f, "({cs})·{w}")?;
                }
            }
        }
        Ok(())
    }
}

impl<A: Coefficient> fmt::Debug for Form<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn index(a: Word, b: Word) -> usize {
    a.0 as usize * 32 + b.0 as usize
}

/// Operator data of the calculus, computed once and shared.
pub struct Calculus {
    pub lambda: [[OperatorElement; 5]; 5],
    pub sigma: [[OperatorElement; 5]; 5],
    pub xi: [OperatorElement; 5],
    pub chi: [OperatorElement; 5],
    i_xi: [OperatorElement; 5],
    lambda_minor: Vec<OperatorElement>,
    sigma_minor: Vec<OperatorElement>,
}

impl Default for Calculus {
    fn default() -> Self {
        Self::new()
    }
}

impl Calculus {
    pub fn new() -> Self {
        let lambda = kpoincare::lambda_matrix();
        let sigma = kpoincare::sigma_matrix();
        let xi = kpoincare::xi();
        let chi = kpoincare::chi();
        let i_xi = xi.clone().map(|x| x.scale(&ExactScalar::i()));
        let mut lambda_minor = alloc::vec![OperatorElement::zero(); 1024];
        let mut sigma_minor = alloc::vec![OperatorElement::zero(); 1024];
        for a in Word::all() {
            for b in Word::of_degree(a.degree()) {
                let (ra, rb) = (a.indices(), b.indices());
                lambda_minor[index(a, b)] = minor(&lambda, &ra, &rb);
                sigma_minor[index(a, b)] = minor(&sigma, &ra, &rb);
            }
        }
        Calculus { lambda, sigma, xi, chi, i_xi, lambda_minor, sigma_minor }
    }

    /// `det λ[A, B]`.
    pub fn lambda_minor(&self, a: Word, b: Word) -> &OperatorElement {
        &self.lambda_minor[index(a, b)]
    }

    /// `det σ[A, B]`.
    pub fn sigma_minor(&self, a: Word, b: Word) -> &OperatorElement {
        &self.sigma_minor[index(a, b)]
    }

    /// `e^A f` rewritten as `Σ_B (det λ[A,B] ▷ f) e^B`.
    pub fn push_left<A: Coefficient>(&self, w: Word, f: &A) -> Vec<(Word, A)> {
        Word::of_degree(w.degree())
            .into_iter()
            .filter_map(|b| {
                let m = self.lambda_minor(w, b);
                if m.is_zero() {
                    return None;
                }
                let c = f.act_momentum(m);
                (!c.is_zero()).then_some((b, c))
            })
            .collect()
    }

    /// `f e^A` rewritten as `Σ_B e^B (det σ[A,B] ▷ f)`.
    pub fn push_right<A: Coefficient>(&self, w: Word, f: &A) -> Vec<(Word, A)> {
        Word::of_degree(w.degree())
            .into_iter()
            .filter_map(|b| {
                let m = self.sigma_minor(w, b);
                if m.is_zero() {
                    return None;
                }
                let c = f.act_momentum(m);
                (!c.is_zero()).then_some((b, c))
            })
            .collect()
    }

    /// `ω · f`.
    pub fn right_mul<A: Coefficient>(&self, omega: &Form<A>, f: &A) -> Form<A> {
        let mut out = Form::zero();
        for (w, c) in omega.terms() {
            for (b, g) in self.push_left(*w, f) {
                out.accumulate(b, c.mul(&g));
            }
        }
        out
    }

    /// Right-coefficient expansion `Σ e^B R_B` of a form.
    pub fn to_right<A: Coefficient>(&self, omega: &Form<A>) -> Vec<(Word, A)> {
        let mut acc: BTreeMap<Word, A> = BTreeMap::new();
        for (w, c) in omega.terms() {
            for (b, r) in self.push_right(*w, c) {
                let v = match acc.remove(&b) {
                    Some(v) => v.add(&r),
                    None => r,
                };
                if !v.is_zero() {
                    acc.insert(b, v);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Builds `Σ e^B R_B` back in left-coefficient form.
    pub fn from_right<A: Coefficient>(&self, terms: &[(Word, A)]) -> Form<A> {
        let mut out = Form::zero();
        for (w, r) in terms {
            for (b, c) in self.push_left(*w, r) {
                out.accumulate(b, c);
            }
        }
        out
    }

    /// Graded product.
    pub fn wedge<A: Coefficient>(&self, omega: &Form<A>, rho: &Form<A>) -> Form<A> {
        let mut out = Form::zero();
        for (w1, c1) in omega.terms() {
            for (w2, c2) in rho.terms() {
                if w1.degree() + w2.degree() > 5 {
                    continue;
                }
                for (b, pushed) in self.push_left(*w1, c2) {
                    if let Some((w, s)) = b.wedge(*w2) {
                        out.accumulate(w, c1.mul(&pushed).scale(&ExactScalar::from_int(s)));
                    }
                }
            }
        }
        out
    }

    /// Exterior derivative, `d(L e^w) = (i ξ_b ▷ L) e^b ∧ e^w`.
    pub fn d<A: Coefficient>(&self, omega: &Form<A>) -> Form<A> {
        let mut out = Form::zero();
        for (w, c) in omega.terms() {
            for b in 0..5 {
                if let Some((word, s)) = Word::single(b).wedge(*w) {
                    let dc = c.act_momentum(&self.i_xi[b]);
                    out.accumulate(word, dc.scale(&ExactScalar::from_int(s)));
                }
            }
        }
        out
    }

    /// `d f = e^a (i χ_a ▷ f)` for a function, returned in right form.
    pub fn d_right<A: Coefficient>(&self, f: &A) -> Vec<(Word, A)> {
        (0..5).map(|a| (Word::single(a), f.act_momentum(&self.chi[a].scale(&ExactScalar::i())))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Involution; basis words satisfy `(e^A)† = (−1)^{n(n−1)/2} e^A`.
    pub fn dagger<A: Coefficient>(&self, omega: &Form<A>) -> Form<A> {
        let mut out = Form::zero();
        for (w, c) in omega.terms() {
            let n = w.degree() as i64;
            let s = ExactScalar::from_int(if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 });
            for (b, pushed) in self.push_left(*w, &c.dagger()) {
                out.accumulate(b, pushed.scale(&s));
            }
        }
        out
    }

    /// Hodge star on a basis word: `∗(e^A) = s_A e^{Aᶜ}`.
    pub fn hodge_basis(w: Word) -> (Word, i64) {
        let a = w.indices();
        let c = w.complement();
        let mut idx = a.clone();
        idx.extend(c.indices());
        let mut s = levi_civita(&idx) as i64;
        for &x in &a {
            s *= eta(x);
        }
        // det η on the upper half keeps ∗∗ = (−1)^{n(5−n)}
        if w.degree() >= 3 {
            s = -s;
        }
        (c, s)
    }

    /// Hodge star, left-linear over the coefficients.
    pub fn hodge<A: Coefficient>(&self, omega: &Form<A>) -> Form<A> {
        let mut out = Form::zero();
        for (w, c) in omega.terms() {
            let (cw, s) = Self::hodge_basis(*w);
            out.accumulate(cw, c.scale(&ExactScalar::from_int(s)));
        }
        out
    }

    /// `g(ω, ρ) = ∗(ω† ∧ ∗ρ)` for one-forms.
    pub fn metric<A: Coefficient>(&self, omega: &Form<A>, rho: &Form<A>) -> Result<Option<A>, Error> {
        check_degree(omega, 1)?;
        check_degree(rho, 1)?;
        let top = self.wedge(&self.dagger(omega), &self.hodge(rho));
        let g = self.hodge(&top);
        Ok(g.coefficient(Word::EMPTY).cloned())
    }

    /// Contraction with the dual basis vector `θ_a`, acting on the first
    /// wedge index after moving coefficients to the right.
    pub fn inner<A: Coefficient>(&self, a: usize, omega: &Form<A>) -> Result<Form<A>, Error> {
        if a > 4 {
            return Err(Error::InvalidIndex(a));
        }
        let mut right = Vec::new();
        for (w, r) in self.to_right(omega) {
            if !w.contains(a) {
                continue;
            }
            let pos = w.indices().iter().position(|&x| x == a).unwrap_or(0);
            let s = if pos % 2 == 0 { 1 } else { -1 };
            right.push((Word(w.0 & !(1 << a)), r.scale(&ExactScalar::from_int(s))));
        }
        Ok(self.from_right(&right))
    }

    /// Lie derivative: the covariant action `h ▷ (L e^w) = (h⁽¹⁾ ▷ L)(h⁽²⁾ ▷ e^w)`.
    pub fn lie<A: Coefficient>(&self, h: &OperatorElement, omega: &Form<A>) -> Result<Form<A>, Error> {
        let mut out = Form::zero();
        for (w, c) in h.terms() {
            let mut cur =
                omega.act_coefficients(&OperatorElement::from_word(OpWord { lorentz: [0; 6], momentum: w.momentum }, ExactScalar::one()));
            for slot in (0..6).rev() {
                for _ in 0..w.lorentz[slot] {
                    cur = lorentz_on_form(slot, &cur)?;
                }
            }
            out = out.add(&cur.scale(c));
        }
        Ok(out)
    }

    /// Commutator of one form with an exact coordinate, `x^μ ω − ω x^μ`.
    pub fn coord_commutator(&self, mu: usize, omega: &Form<PolyElement>) -> Result<Form<PolyElement>, Error> {
        if mu > 3 {
            return Err(Error::InvalidIndex(mu));
        }
        let x = PolyElement::x(mu);
        Ok(omega.left_mul(&x).sub(&self.right_mul(omega, &x)))
    }
}

fn check_degree<A: Coefficient>(omega: &Form<A>, n: usize) -> Result<(), Error> {
    match omega.degree() {
        Some(d) if d != n => Err(Error::DegreeMismatch { expected: n, found: d }),
        None if !omega.is_zero() => Err(Error::DegreeMismatch { expected: n, found: *omega.degrees().last().unwrap_or(&0) }),
        _ => Ok(()),
    }
}

/// Lorentz generator on a basis one-form, as `(coefficient, index)` pairs.
fn lorentz_on_basis(slot: usize, a: usize) -> Vec<(ExactScalar, usize)> {
    let i = ExactScalar::i();
    let j = slot % 3 + 1;
    let mut out = Vec::new();
    if slot >= 3 {
        match a {
            0 => out.push((i, j)),
            k if k == j => out.push((i, 0)),
            _ => {}
        }
    } else if (1..=3).contains(&a) {
        for l in 1..=3 {
            let e = epsilon3(j - 1, a - 1, l - 1);
            if e != 0 {
                out.push((i.scale(Gaussian::from_int(e as i64)), l));
            }
        }
    }
    out
}

/// Lorentz generator acting on a basis word as a derivation.
fn lorentz_on_word(slot: usize, w: Word) -> Vec<(Word, ExactScalar)> {
    let idx = w.indices();
    let mut out = Vec::new();
    for (pos, &a) in idx.iter().enumerate() {
        for (c, b) in lorentz_on_basis(slot, a) {
            let mut new = idx.clone();
            new[pos] = b;
            if let Some((nw, s)) = Word::from_indices(&new) {
                out.push((nw, c.scale(Gaussian::from_int(s))));
            }
        }
    }
    out
}

fn lorentz_on_form<A: Coefficient>(slot: usize, omega: &Form<A>) -> Result<Form<A>, Error> {
    let g = if slot < 3 { OperatorElement::r(slot + 1) } else { OperatorElement::n(slot - 2) };
    let mut out = Form::zero();
    let words = |w: Word, s: usize| lorentz_on_word(s, w);
    for (w, c) in omega.terms() {
        // g ⊗ 1 part
        out.accumulate(*w, c.act(&g)?);
        if slot < 3 {
            // Δ R = R ⊗ 1 + 1 ⊗ R
            for (nw, s) in words(*w, slot) {
                out.accumulate(nw, c.scale(&s));
            }
        } else {
            // Δ N_k = N_k ⊗ 1 + E⁻¹ ⊗ N_k + (1/κ) ε_{klm} P_l ⊗ R_m
            let shifted = c.act_momentum(&OperatorElement::e_pow(-1));
            for (nw, s) in words(*w, slot) {
                out.accumulate(nw, shifted.scale(&s));
            }
            let k = slot - 2;
            for l in 1..=3 {
                for m in 1..=3 {
                    let e = epsilon3(k - 1, l - 1, m - 1);
                    if e == 0 {
                        continue;
                    }
                    let pl = c.act_momentum(&OperatorElement::p(l));
                    if pl.is_zero() {
                        continue;
                    }
                    let coeff = ExactScalar::inv_kappa_pow(1).scale(Gaussian::from_int(e as i64));
                    for (nw, s) in words(*w, m - 1) {
                        out.accumulate(nw, pl.scale(&(&coeff * &s)));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kminkowski::PolyElement as X;

    fn one() -> X {
        X::one()
    }

    fn e(a: usize) -> Form<X> {
        Form::one_form(a, one())
    }

    #[test]
    fn word_basics() {
        let (w, s) = Word::from_indices(&[1, 0]).unwrap();
        assert_eq!(w, Word::from_mask(0b11));
        assert_eq!(s, -1);
        assert!(Word::from_indices(&[2, 2]).is_none());
        assert_eq!(Word::all().len(), 32);
        assert_eq!(Word::of_degree(2).len(), 10);
        assert_eq!(alloc::format!("{}", Word::VOL), "e0∧e1∧e2∧e3∧e4");
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = Calculus::new();
        assert!(c.wedge(&e(1), &e(1)).is_zero());
        let a = c.wedge(&e(0), &e(1));
        let b = c.wedge(&e(1), &e(0));
        assert_eq!(a, b.neg());
        assert_eq!(a, Form::basis(Word::from_mask(0b11), one()));
    }

    #[test]
    fn differential_of_coordinates() {
        let c = Calculus::new();
        for mu in 0..4 {
            assert_eq!(c.d(&Form::function(X::x(mu))), e(mu));
        }
        let f = &X::x(1) * &X::x(0);
        assert!(c.d(&c.d(&Form::function(f))).is_zero());
    }

    #[test]
    fn hodge_examples() {
        let c = Calculus::new();
        assert_eq!(c.hodge(&Form::function(one())), Form::basis(Word::VOL, one()));
        let star_e0 = c.hodge(&e(0));
        assert_eq!(star_e0, Form::basis(Word::from_mask(0b11110), one()).neg());
        assert_eq!(c.hodge(&c.hodge(&e(2))), e(2));
        assert_eq!(c.hodge(&Form::basis(Word::VOL, one())), Form::function(one()));
    }

    #[test]
    fn metric_is_eta() {
        let c = Calculus::new();
        for a in 0..5 {
            for b in 0..5 {
                let g = c.metric(&e(a), &e(b)).unwrap();
                let expected = if a == b { Some(X::scalar(ExactScalar::from_int(eta(a)))) } else { None };
                assert_eq!(g, expected, "a={a} b={b}");
            }
        }
        let two = c.wedge(&e(0), &e(1));
        assert_eq!(c.metric(&two, &e(1)).unwrap_err(), Error::DegreeMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn commutators_with_coordinates() {
        let c = Calculus::new();
        let ik = ExactScalar::i_over_kappa();
        // [x₁, e¹] = (i/κ)(e⁰ − e⁴)
        let lhs = c.coord_commutator(1, &e(1)).unwrap();
        assert_eq!(lhs, e(0).sub(&e(4)).scale(&ik));
        assert!(c.coord_commutator(0, &e(1)).unwrap().is_zero());
        for mu in 0..4 {
            assert!(c.coord_commutator(mu, &Form::basis(Word::VOL, one())).unwrap().is_zero());
        }
    }

    #[test]
    fn inner_on_one_forms() {
        let c = Calculus::new();
        assert_eq!(c.inner(0, &e(0)).unwrap(), Form::function(one()));
        assert!(c.inner(1, &e(0)).unwrap().is_zero());
        assert!(c.inner(2, &Form::function(one())).unwrap().is_zero());
        assert_eq!(c.inner(7, &e(0)).unwrap_err(), Error::InvalidIndex(7));
    }
}
