//! Star-product realization of the two-dimensional algebra on a grid.
//!
//! Functions `f(α, β)` on `[-L, L)²` stand for operators ordered with the
//! space coordinate `β ↔ x1` to the left of the time coordinate `α ↔ x0`:
//!
//! ```text
//! (f ⋆ g)(α, β) = 1/2π ∫ du dv e^{-iuv} f(α + u, β) g(α, e^{-v/κ} β)
//! f†(α, β)      = 1/2π ∫ dw dz e^{-iwz} conj f(α + w, e^{-z/κ} β)
//! ```
//!
//! On plane waves `e^{ipβ} e^{iqα}` these reproduce the mode law
//! `(q, p) ⊕ (q', p') = (q + q', p + e^{-q/κ} p')` and its antipode. The `u`
//! integral is an FFT along `α`; the dilation in `β` is a four-point cubic
//! Lagrange interpolation, so results converge at fourth order in the
//! spacing.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Relative spectral magnitude below which components are treated as noise.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Boundary-to-peak ratio above which a packet does not fit the domain.
pub const DECAY_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum StarError {
    NotPowerOfTwo(usize),
    SampleCount { expected: usize, found: usize },
    GridMismatch,
    DomainTooSmall { boundary: f64 },
}

impl fmt::Display for StarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarError::NotPowerOfTwo(n) => write!(f, "grid size {n} is not a power of two"),
            StarError::SampleCount { expected, found } => {
                write!(f, "expected {expected} samples, found {found}")
            }
            StarError::GridMismatch => f.write_str("grid functions live on different grids"),
            StarError::DomainTooSmall { boundary } => {
                write!(f, "domain too small: boundary magnitude {boundary:e}")
            }
        }
    }
}

impl std::error::Error for StarError {}

/// Samples on an `N × N` grid, `α_i = -L + i h`, `β_j = -L + j h`, `h = 2L/N`.
/// Stored row-major in `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    n: usize,
    half_width: f64,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(n: usize, half_width: f64, samples: Vec<Complex64>) -> Result<Self, StarError> {
        if n < 4 || !n.is_power_of_two() {
            return Err(StarError::NotPowerOfTwo(n));
        }
        if samples.len() != n * n {
            return Err(StarError::SampleCount { expected: n * n, found: samples.len() });
        }
        Ok(GridFunction { n, half_width, samples })
    }

    pub fn from_fn(n: usize, half_width: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self, StarError> {
        let h = 2.0 * half_width / n as f64;
        let mut samples = Vec::with_capacity(n * n);
        for i in 0..n {
            let a = -half_width + i as f64 * h;
            for j in 0..n {
                samples.push(f(a, -half_width + j as f64 * h));
            }
        }
        GridFunction::new(n, half_width, samples)
    }

    pub fn zeros(n: usize, half_width: f64) -> Result<Self, StarError> {
        GridFunction::new(n, half_width, vec![Complex64::new(0.0, 0.0); n * n])
    }

    /// `c · exp(-((α-α₀)² + (β-β₀)²) / 2w²) · e^{i(qα + pβ)}`.
    pub fn gaussian(n: usize, half_width: f64, center: [f64; 2], width: f64, carrier: [f64; 2], c: Complex64) -> Result<Self, StarError> {
        GridFunction::from_fn(n, half_width, |a, b| {
            let (da, db) = (a - center[0], b - center[1]);
            let env = (-(da * da + db * db) / (2.0 * width * width)).exp();
            c * env * Complex64::new(0.0, carrier[0] * a + carrier[1] * b).exp()
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.samples[i * self.n + j]
    }

    pub fn norm_max(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude on the outermost ring of the grid.
    pub fn boundary_max(&self) -> f64 {
        let n = self.n;
        (0..n).flat_map(|k| [(0, k), (n - 1, k), (k, 0), (k, n - 1)]).map(|(i, j)| self.get(i, j).norm()).fold(0.0, f64::max)
    }

    /// Fails unless the boundary is below `threshold` relative to the peak.
    pub fn check_decay(&self, threshold: f64) -> Result<(), StarError> {
        let peak = self.norm_max();
        let boundary = self.boundary_max();
        if peak > 0.0 && boundary > threshold * peak {
            return Err(StarError::DomainTooSmall { boundary: boundary / peak });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GridFunction { n: self.n, half_width: self.half_width, samples: self.samples.iter().map(|&z| f(z)).collect() }
    }

    pub fn zip(&self, o: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self, StarError> {
        self.same_grid(o)?;
        Ok(GridFunction {
            n: self.n,
            half_width: self.half_width,
            samples: self.samples.iter().zip(&o.samples).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn pointwise(&self, o: &Self) -> Result<Self, StarError> {
        self.zip(o, |a, b| a * b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, StarError> {
        self.zip(o, |a, b| a - b)
    }

    /// Lebesgue integral by the rectangle rule (spectrally exact for packets).
    pub fn trace(&self) -> Complex64 {
        let h = self.spacing();
        self.samples.iter().sum::<Complex64>() * (h * h)
    }

    fn same_grid(&self, o: &Self) -> Result<(), StarError> {
        if self.n != o.n || self.half_width != o.half_width {
            return Err(StarError::GridMismatch);
        }
        Ok(())
    }
}

/// `α`-Fourier data `f̂(v_m; β_j) = ∫ dα e^{-i v_m α} f(α, β_j)`, stored with
/// the frequency index `m` major. The Nyquist row is dropped.
struct Spectrum {
    n: usize,
    rows: Vec<Complex64>,
}

impl Spectrum {
    fn row(&self, m: usize) -> &[Complex64] {
        &self.rows[m * self.n..(m + 1) * self.n]
    }
}

/// FFT plans and grid constants for one `(N, L, κ)`.
pub struct StarProduct {
    n: usize,
    half_width: f64,
    kappa: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl StarProduct {
    pub fn new(n: usize, half_width: f64, kappa: f64) -> Result<Self, StarError> {
        if n < 4 || !n.is_power_of_two() {
            return Err(StarError::NotPowerOfTwo(n));
        }
        let mut planner = FftPlanner::new();
        Ok(StarProduct { n, half_width, kappa, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) })
    }

    pub fn for_grid(f: &GridFunction, kappa: f64) -> Result<Self, StarError> {
        StarProduct::new(f.n, f.half_width, kappa)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Angular frequency of FFT bin `m`.
    fn frequency(&self, m: usize) -> f64 {
        let signed = if m < self.n / 2 { m as f64 } else { m as f64 - self.n as f64 };
        2.0 * std::f64::consts::PI * signed / (self.n as f64 * self.spacing())
    }

    fn check(&self, f: &GridFunction) -> Result<(), StarError> {
        if f.n != self.n || f.half_width != self.half_width {
            return Err(StarError::GridMismatch);
        }
        Ok(())
    }

    fn spectrum(&self, f: &GridFunction) -> Spectrum {
        let (n, h, l) = (self.n, self.spacing(), self.half_width);
        let mut rows = vec![Complex64::new(0.0, 0.0); n * n];
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for (i, b) in buf.iter_mut().enumerate() {
                *b = f.samples[i * n + j];
            }
            self.forward.process(&mut buf);
            for (m, &b) in buf.iter().enumerate() {
                if m == n / 2 {
                    continue;
                }
                let phase = Complex64::new(0.0, self.frequency(m) * l).exp();
                rows[m * n + j] = b * phase * h;
            }
        }
        Spectrum { n, rows }
    }

    /// Back to samples: `f(α_i, β_j) = 1/(N h) Σ_m e^{i v_m α_i} f̂(v_m; β_j)`.
    fn synthesize(&self, s: &Spectrum) -> GridFunction {
        let (n, h, l) = (self.n, self.spacing(), self.half_width);
        let mut samples = vec![Complex64::new(0.0, 0.0); n * n];
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for (m, b) in buf.iter_mut().enumerate() {
                let phase = Complex64::new(0.0, -self.frequency(m) * l).exp();
                *b = s.rows[m * n + j] * phase;
            }
            self.inverse.process(&mut buf);
            for (i, &b) in buf.iter().enumerate() {
                samples[i * n + j] = b / (n as f64 * h);
            }
        }
        GridFunction { n, half_width: l, samples }
    }

    fn dilation(&self, m: usize) -> f64 {
        (-self.frequency(m) / self.kappa).exp()
    }

    /// Rows whose magnitude is above the noise floor.
    fn live_rows(&self, s: &Spectrum) -> Vec<usize> {
        let peak = s.rows.iter().map(|z| z.norm()).fold(0.0, f64::max);
        (0..self.n).filter(|&m| s.row(m).iter().any(|z| z.norm() > NOISE_FLOOR * peak)).collect()
    }

    /// Four-point Lagrange stencil at `x`: grid indices and weights, with
    /// zero extension outside the grid.
    fn stencil(&self, x: f64) -> [(usize, f64); 4] {
        let h = self.spacing();
        let t = (x + self.half_width) / h;
        let j0 = t.floor();
        let s = t - j0;
        let w = [
            -s * (s - 1.0) * (s - 2.0) / 6.0,
            (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0,
            (s + 1.0) * s * (s - 1.0) / 6.0,
        ];
        let mut out = [(0, 0.0); 4];
        for (k, o) in out.iter_mut().enumerate() {
            let j = j0 + k as f64 - 1.0;
            if j >= 0.0 && j < self.n as f64 {
                *o = (j as usize, w[k]);
            }
        }
        out
    }

    fn interpolate(&self, row: &[Complex64], x: f64) -> Complex64 {
        self.stencil(x).iter().map(|&(j, w)| row[j] * w).sum()
    }

    /// `f ⋆ g` on the grid.
    pub fn star(&self, f: &GridFunction, g: &GridFunction) -> Result<GridFunction, StarError> {
        self.check(f)?;
        self.check(g)?;
        let (n, h) = (self.n, self.spacing());
        let fs = self.spectrum(f);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        let mut gval = vec![Complex64::new(0.0, 0.0); n];
        for m in self.live_rows(&fs) {
            let v = self.frequency(m);
            let s = self.dilation(m);
            let phases: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.0, v * f.coordinate(i)).exp()).collect();
            for j in 0..n {
                let fh = fs.row(m)[j];
                if fh == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let st = self.stencil(s * f.coordinate(j));
                for (i, gv) in gval.iter_mut().enumerate() {
                    let row = &g.samples[i * n..(i + 1) * n];
                    *gv = st.iter().map(|&(jj, w)| row[jj] * w).sum();
                }
                for i in 0..n {
                    out[i * n + j] += phases[i] * fh * gval[i];
                }
            }
        }
        let norm = 1.0 / (n as f64 * h);
        for z in &mut out {
            *z *= norm;
        }
        Ok(GridFunction { n, half_width: self.half_width, samples: out })
    }

    /// `f†` on the grid.
    pub fn involution(&self, f: &GridFunction) -> Result<GridFunction, StarError> {
        self.check(f)?;
        let n = self.n;
        let fs = self.spectrum(&f.conj());
        let mut rows = vec![Complex64::new(0.0, 0.0); n * n];
        for m in self.live_rows(&fs) {
            let s = self.dilation(m);
            for j in 0..n {
                rows[m * n + j] = self.interpolate(fs.row(m), s * f.coordinate(j));
            }
        }
        Ok(self.synthesize(&Spectrum { n, rows }))
    }

    /// `f† ⋆ f`.
    pub fn star_square(&self, f: &GridFunction) -> Result<GridFunction, StarError> {
        self.star(&self.involution(f)?, f)
    }

    /// `T^p ▷ f` with `T = e^{P₀/κ}`, i.e. `f(α - i p/κ, β)`, realized as the
    /// spectral weight `e^{p v/κ}`. Components under the noise floor are
    /// dropped before weighting.
    pub fn twist(&self, f: &GridFunction, power: i32) -> Result<GridFunction, StarError> {
        self.check(f)?;
        let n = self.n;
        let mut fs = self.spectrum(f);
        let peak = fs.rows.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for m in 0..n {
            let weight = (power as f64 * self.frequency(m) / self.kappa).exp();
            for z in &mut fs.rows[m * n..(m + 1) * n] {
                *z = if z.norm() > NOISE_FLOOR * peak { *z * weight } else { Complex64::new(0.0, 0.0) };
            }
        }
        Ok(self.synthesize(&fs))
    }

    /// `∫ f ⋆ g` without forming the product:
    /// `1/N Σ_m Σ_j f̂(v_m; β_j) ĝ(-v_m; e^{-v_m/κ} β_j)`.
    pub fn trace_star(&self, f: &GridFunction, g: &GridFunction) -> Result<Complex64, StarError> {
        self.check(f)?;
        self.check(g)?;
        let n = self.n;
        let (fs, gs) = (self.spectrum(f), self.spectrum(g));
        let mut acc = Complex64::new(0.0, 0.0);
        for m in self.live_rows(&fs) {
            let s = self.dilation(m);
            let neg = (n - m) % n;
            for j in 0..n {
                acc += fs.row(m)[j] * self.interpolate(gs.row(neg), s * f.coordinate(j));
            }
        }
        Ok(acc / n as f64)
    }

    /// Closed form of `∫ f† ⋆ f = 1/2π ∫ dv e^{-v/κ} ∫ dβ |f̂(v; β)|²`.
    pub fn norm_oracle(&self, f: &GridFunction) -> Result<f64, StarError> {
        self.check(f)?;
        let fs = self.spectrum(f);
        let (n, h) = (self.n, self.spacing());
        let dv = 2.0 * std::f64::consts::PI / (n as f64 * h);
        let mut acc = 0.0;
        for m in 0..n {
            let weight = (-self.frequency(m) / self.kappa).exp();
            acc += weight * fs.row(m).iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        Ok(acc * h * dv / (2.0 * std::f64::consts::PI))
    }
}

/// Relative deviation `|∫ f⋆g - ∫ g⋆(T^p▷f)| / |∫ f⋆g|`.
pub fn twisted_cyclicity(sp: &StarProduct, f: &GridFunction, g: &GridFunction, power: i32) -> Result<f64, StarError> {
    let lhs = sp.trace_star(f, g)?;
    let rhs = sp.trace_star(g, &sp.twist(f, power)?)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicityReport {
    pub grid: usize,
    pub half_width: f64,
    pub kappa: f64,
    pub residual: f64,
    pub coarse_residual: f64,
    /// Residual for each twist exponent `0..=3`.
    pub scan: [f64; 4],
    pub selected_exponent: i32,
}

/// Twisted cyclicity at `N`, its value at `N/2`, and the exponent scan.
pub fn twisted_cyclicity_check(
    n: usize,
    half_width: f64,
    kappa: f64,
    packets: impl Fn(usize) -> Result<(GridFunction, GridFunction), StarError>,
) -> Result<CyclicityReport, StarError> {
    let sp = StarProduct::new(n, half_width, kappa)?;
    let (f, g) = packets(n)?;
    f.check_decay(DECAY_THRESHOLD)?;
    g.check_decay(DECAY_THRESHOLD)?;
    let mut scan = [0.0; 4];
    for (p, s) in scan.iter_mut().enumerate() {
        *s = twisted_cyclicity(&sp, &f, &g, p as i32)?;
    }
    let selected_exponent = (0..4).min_by(|&a, &b| scan[a].total_cmp(&scan[b])).unwrap_or(0) as i32;
    let coarse = StarProduct::new(n / 2, half_width, kappa)?;
    let (fc, gc) = packets(n / 2)?;
    Ok(CyclicityReport {
        grid: n,
        half_width,
        kappa,
        residual: scan[1],
        coarse_residual: twisted_cyclicity(&coarse, &fc, &gc, 1)?,
        scan,
        selected_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: f64 = 8.0;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn packet(n: usize) -> GridFunction {
        GridFunction::gaussian(n, L, [0.3, -0.2], 1.0, [0.8, -0.5], c(1.0, 0.4)).unwrap()
    }

    // 1/2π ∫ dv e^{ivα} f̂(v; β) g(α, e^{-v/κ}β) for the centered unit
    // Gaussians f = g = e^{-(α²+β²)/2}, by dense trapezoid in v.
    fn gaussian_star_oracle(a: f64, b: f64, kappa: f64) -> Complex64 {
        let (steps, vmax) = (40_000, 12.0);
        let dv = 2.0 * vmax / steps as f64;
        let mut acc = c(0.0, 0.0);
        for k in 0..=steps {
            let v = -vmax + k as f64 * dv;
            let fhat = (2.0 * std::f64::consts::PI).sqrt() * (-v * v / 2.0).exp() * (-b * b / 2.0).exp();
            let s = (-v / kappa).exp();
            let g = (-(a * a + s * s * b * b) / 2.0).exp();
            let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
            acc += c(0.0, v * a).exp() * fhat * g * w;
        }
        acc * dv / (2.0 * std::f64::consts::PI)
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(GridFunction::zeros(12, 1.0).unwrap_err(), StarError::NotPowerOfTwo(12));
        assert!(matches!(GridFunction::new(8, 1.0, vec![c(0.0, 0.0); 3]), Err(StarError::SampleCount { expected: 64, found: 3 })));
        let wide = GridFunction::gaussian(32, 2.0, [0.0, 0.0], 3.0, [0.0, 0.0], c(1.0, 0.0)).unwrap();
        assert!(matches!(wide.check_decay(1e-8), Err(StarError::DomainTooSmall { .. })));
    }

    #[test]
    fn unit_gaussian_trace() {
        let w = 0.9;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * w * w);
        let f = GridFunction::gaussian(128, L, [0.1, 0.2], w, [0.0, 0.0], c(norm, 0.0)).unwrap();
        assert!((f.trace() - c(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn star_matches_quadrature_oracle() {
        let kappa = 1.5;
        let sp = StarProduct::new(256, L, kappa).unwrap();
        let f = GridFunction::gaussian(256, L, [0.0, 0.0], 1.0, [0.0, 0.0], c(1.0, 0.0)).unwrap();
        let fg = sp.star(&f, &f).unwrap();
        for (i, j) in [(128, 128), (120, 140), (135, 110), (100, 150)] {
            let oracle = gaussian_star_oracle(f.coordinate(i), f.coordinate(j), kappa);
            assert!((fg.get(i, j) - oracle).norm() < 1e-5, "{i},{j}");
        }
    }

    #[test]
    fn trace_star_agrees_with_star() {
        let sp = StarProduct::new(128, L, 2.0).unwrap();
        let f = packet(128);
        let g = GridFunction::gaussian(128, L, [-0.4, 0.5], 1.2, [-0.3, 0.7], c(0.2, -1.0)).unwrap();
        let a = sp.trace_star(&f, &g).unwrap();
        let b = sp.star(&f, &g).unwrap().trace();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn involution_is_an_involution_and_respects_trace() {
        let roundtrip = |n: usize| {
            let sp = StarProduct::new(n, L, 2.0).unwrap();
            let f = packet(n);
            let fd = sp.involution(&f).unwrap();
            assert!((f.trace().conj() - fd.trace()).norm() < 1e-8);
            sp.involution(&fd).unwrap().sub(&f).unwrap().norm_max() / f.norm_max()
        };
        let (coarse, fine) = (roundtrip(128), roundtrip(256));
        assert!(fine < 2e-4 && coarse > 4.0 * fine);
    }

    #[test]
    fn positivity_matches_norm_oracle() {
        let sp = StarProduct::new(256, L, 2.0).unwrap();
        let f = packet(256);
        let t = sp.star_square(&f).unwrap().trace();
        let oracle = sp.norm_oracle(&f).unwrap();
        assert!(oracle > 0.0);
        assert!(t.im.abs() < 1e-6 * oracle);
        assert!((t.re - oracle).abs() < 1e-5 * oracle);
        let zero = GridFunction::zeros(256, L).unwrap();
        assert_eq!(sp.star_square(&zero).unwrap().trace(), c(0.0, 0.0));
    }

    #[test]
    fn commutative_limit() {
        let f = packet(128);
        let g = GridFunction::gaussian(128, L, [0.2, 0.1], 1.1, [0.1, 0.3], c(1.0, 0.0)).unwrap();
        let dev = |kappa: f64| {
            let sp = StarProduct::new(128, L, kappa).unwrap();
            let d = sp.star(&f, &g).unwrap().sub(&f.pointwise(&g).unwrap()).unwrap();
            d.norm_max()
        };
        let (a, b) = (dev(1e3), dev(1e4));
        assert!(a < 1e-2 && (a / b - 10.0).abs() < 0.5);
        let sp = StarProduct::new(128, L, 1e5).unwrap();
        let sq = sp.star_square(&f).unwrap();
        let abs2 = f.map(|z| c(z.norm_sqr(), 0.0));
        assert!(sq.sub(&abs2).unwrap().norm_max() < 1e-4 * abs2.norm_max());
    }

    #[test]
    fn twist_is_exponent_one() {
        let report = twisted_cyclicity_check(256, L, 2.0, |n| {
            Ok((
                GridFunction::gaussian(n, L, [0.3, -0.2], 1.0, [0.9, -0.5], c(1.0, 0.4))?,
                GridFunction::gaussian(n, L, [-0.4, 0.5], 1.2, [-0.8, 0.7], c(0.2, -1.0))?,
            ))
        })
        .unwrap();
        assert_eq!(report.selected_exponent, 1);
        assert!(report.scan[0] > 1e-2);
        assert!(report.residual < 1e-4);
        assert!(report.coarse_residual > 4.0 * report.residual);
    }
}
