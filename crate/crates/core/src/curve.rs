//! Interface curves `z(t)` with `z(t + T) = z(t) + shift`, sampled uniformly
//! in the parameter, plus the reconstruction of a curve from its tangent
//! angle.

use crate::error::{Result, WaveError};
use crate::fft;
use crate::spectral::{Parity, PeriodicField};
use num_complex::Complex64;
use once_cell::sync::OnceCell;
use std::f64::consts::PI;

const SYMMETRY_TOL: f64 = 1e-10;

/// A planar curve sampled at `t_j = t0 + j T / n` satisfying
/// `z(t + T) = z(t) + shift` (for the physical interfaces `T = 2 pi` and
/// `shift = 2 pi`; closed test fixtures use `shift = 0`).
#[derive(Debug, Clone)]
pub struct InterfaceCurve {
    n: usize,
    t0: f64,
    period: f64,
    z: Vec<Complex64>,
    dz: Vec<Complex64>,
    d2z: Vec<Complex64>,
    shift: Complex64,
    symmetric: bool,
    cache: OnceCell<SpectralCache>,
}

#[derive(Debug)]
struct SpectralCache {
    /// DFT bins of the periodic part `z(t) - shift (t - t0)/T`.
    zbins: Vec<Complex64>,
    /// DFT bins of the (periodic) tangent samples.
    dzbins: Vec<Complex64>,
}

fn dft(samples: &[Complex64]) -> Vec<Complex64> {
    let mut buf = samples.to_vec();
    fft::forward(&mut buf);
    buf
}

/// Spectral derivative of a uniformly sampled complex periodic sequence.
fn spectral_derivative(samples: &[Complex64], period: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    fft::forward(&mut buf);
    let om = 2.0 * PI / period;
    for (m, v) in buf.iter_mut().enumerate() {
        let k = fft::wavenumber(m, n) as f64;
        *v *= Complex64::new(0.0, k * om);
    }
    fft::inverse(&mut buf);
    buf
}

impl InterfaceCurve {
    /// Build a curve from position samples. Tangents are computed spectrally
    /// when not supplied.
    pub fn from_samples(
        t0: f64,
        period: f64,
        z: Vec<Complex64>,
        dz: Option<Vec<Complex64>>,
        shift: Complex64,
    ) -> Result<Self> {
        let n = z.len();
        if !fft::is_power_of_two(n) {
            return Err(WaveError::GridSize { n });
        }
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(WaveError::NonFinite);
        }
        let lin = shift / period;
        let periodic: Vec<Complex64> = z
            .iter()
            .enumerate()
            .map(|(j, zj)| zj - lin * (j as f64 * period / n as f64))
            .collect();
        let dz = match dz {
            Some(d) => {
                if d.len() != n {
                    return Err(WaveError::SizeMismatch { left: n, right: d.len() });
                }
                d
            }
            None => {
                let mut d = spectral_derivative(&periodic, period);
                for v in d.iter_mut() {
                    *v += lin;
                }
                d
            }
        };
        let d2z = spectral_derivative(&dz, period);
        let symmetric = detect_symmetry(&z, shift);
        Ok(InterfaceCurve { n, t0, period, z, dz, d2z, shift, symmetric, cache: OnceCell::new() })
    }

    /// Same as [`from_samples`](Self::from_samples) with analytic second
    /// derivatives supplied by the caller.
    pub fn from_samples_full(
        t0: f64,
        period: f64,
        z: Vec<Complex64>,
        dz: Vec<Complex64>,
        d2z: Vec<Complex64>,
        shift: Complex64,
    ) -> Result<Self> {
        let mut c = Self::from_samples(t0, period, z, Some(dz), shift)?;
        if d2z.len() != c.n {
            return Err(WaveError::SizeMismatch { left: c.n, right: d2z.len() });
        }
        c.d2z = d2z;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn shift(&self) -> Complex64 {
        self.shift
    }

    pub fn positions(&self) -> &[Complex64] {
        &self.z
    }

    pub fn tangents(&self) -> &[Complex64] {
        &self.dz
    }

    pub fn second_derivatives(&self) -> &[Complex64] {
        &self.d2z
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Parameter of sample `j`.
    pub fn node(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.period / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    pub fn min_speed(&self) -> f64 {
        self.dz.iter().fold(f64::INFINITY, |m, d| m.min(d.norm()))
    }

    /// `|z(t0 + T) - z(t0) - 2 pi|`, the deviation from the physical
    /// pseudo-periodicity.
    pub fn pseudo_period_defect(&self) -> f64 {
        (self.shift - Complex64::new(2.0 * PI, 0.0)).norm()
    }

    fn cache(&self) -> &SpectralCache {
        self.cache.get_or_init(|| {
            let lin = self.shift / self.period;
            let periodic: Vec<Complex64> = self
                .z
                .iter()
                .enumerate()
                .map(|(j, zj)| zj - lin * (j as f64 * self.period / self.n as f64))
                .collect();
            SpectralCache { zbins: dft(&periodic), dzbins: dft(&self.dz) }
        })
    }

    fn eval_bins(&self, bins: &[Complex64], t: f64) -> Complex64 {
        let n = self.n;
        let om = 2.0 * PI / self.period;
        let u = (t - self.t0) * om;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, b) in bins.iter().enumerate() {
            let k = fft::wavenumber(m, n) as f64;
            acc += b * Complex64::from_polar(1.0, k * u);
        }
        acc / n as f64
    }

    /// Evaluate the curve at an arbitrary parameter by trigonometric
    /// interpolation of its periodic part.
    pub fn point(&self, t: f64) -> Complex64 {
        let cache = self.cache();
        self.eval_bins(&cache.zbins, t) + self.shift / self.period * (t - self.t0)
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        let cache = self.cache();
        self.eval_bins(&cache.dzbins, t)
    }

    /// Rigid horizontal translation (test helper for invariance checks).
    pub fn translated(&self, offset: Complex64) -> InterfaceCurve {
        let z = self.z.iter().map(|v| v + offset).collect();
        InterfaceCurve::from_samples_full(
            self.t0,
            self.period,
            z,
            self.dz.clone(),
            self.d2z.clone(),
            self.shift,
        )
        .expect("translation preserves validity")
    }

    /// The curve traversed as `t -> -t` (reflection through the y-axis for
    /// symmetric interfaces): `z_new(t) = -conj(z(-t))`.
    pub fn reflected(&self) -> InterfaceCurve {
        let n = self.n;
        let z: Vec<Complex64> = (0..n)
            .map(|j| {
                let src = (n - j) % n;
                // -t_j for j > 0 sits one period above the sample window.
                let v = if j == 0 { self.z[0] + self.shift } else { self.z[src] };
                Complex64::new(-v.re, v.im) + self.shift
            })
            .collect();
        let dz: Vec<Complex64> = (0..n)
            .map(|j| {
                let d = self.dz[(n - j) % n];
                Complex64::new(d.re, -d.im)
            })
            .collect();
        InterfaceCurve::from_samples(self.t0, self.period, z, Some(dz), self.shift)
            .expect("reflection preserves validity")
    }
}

fn detect_symmetry(z: &[Complex64], shift: Complex64) -> bool {
    if shift.im.abs() > SYMMETRY_TOL {
        return false;
    }
    let n = z.len();
    let scale = z.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
    // j = 0 reflects onto itself one period down: Re z_0 = -Re(shift)/2.
    let mut defect = (z[0].re + shift.re / 2.0).abs();
    for j in 1..n {
        let r = n - j;
        defect = defect.max((z[j].re + z[r].re).abs()).max((z[j].im - z[r].im).abs());
    }
    defect <= SYMMETRY_TOL * scale.max(1.0)
}

/// Reconstruct the interface from its tangent angle:
/// `z(alpha) = integral_{-pi}^{alpha} e^{-H theta + i theta}`.
///
/// The complex mean `m` of `e^{-H theta + i theta}` carries the linear part
/// `m (alpha + pi)`; the zero-mean remainder is integrated in Fourier space by
/// division by `ik`. The result is shifted so that `Re z(0) = 0`; the vertical
/// constant is left at the value produced by the zero-mean integration.
pub fn curve_from_theta(theta: &PeriodicField) -> Result<InterfaceCurve> {
    if theta.parity() != Parity::Odd {
        return Err(WaveError::ParityViolation {
            expected: Parity::Odd,
            defect: theta.parity_defect(Parity::Odd),
        });
    }
    let n = theta.n();
    let tau = theta.hilbert();
    let tangent: Vec<Complex64> = theta
        .values()
        .iter()
        .zip(tau.values().iter())
        .map(|(&th, &ta)| Complex64::from_polar((-ta).exp(), th))
        .collect();

    let mut bins = tangent.clone();
    fft::forward(&mut bins);
    let mean = bins[0] / n as f64;
    // Zero-mean periodic antiderivative.
    let mut pbins = bins;
    pbins[0] = Complex64::new(0.0, 0.0);
    for (m, v) in pbins.iter_mut().enumerate() {
        let k = fft::wavenumber(m, n) as f64;
        if k != 0.0 {
            *v /= Complex64::new(0.0, k);
        }
    }
    fft::inverse(&mut pbins);

    let alphas = crate::spectral::nodes(n);
    let mut z: Vec<Complex64> = alphas
        .iter()
        .zip(pbins.iter())
        .map(|(&a, p)| mean * (a + PI) + p)
        .collect();
    // Normalize Re z(0) = 0 (node n/2 sits at alpha = 0).
    let x0 = z[n / 2].re;
    for v in z.iter_mut() {
        v.re -= x0;
    }
    let shift = mean * 2.0 * PI;
    InterfaceCurve::from_samples(-PI, 2.0 * PI, z, Some(tangent), shift)
}

/// Complex mean of `e^{-H theta + i theta}`; equals 1 for any smooth odd
/// `theta` by the Cauchy integral theorem.
pub fn cauchy_mean(theta: &PeriodicField) -> Complex64 {
    let tau = theta.hilbert();
    let n = theta.n();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&th, &ta) in theta.values().iter().zip(tau.values().iter()) {
        acc += Complex64::from_polar((-ta).exp(), th);
    }
    acc / n as f64
}
