//! Real 2*pi-periodic scalar fields on a uniform grid with spectrally accurate
//! transforms.
//!
//! The grid nodes are `alpha_j = -pi + 2*pi*j/n`, so the reflection
//! `alpha -> -alpha` maps node `j` to node `(n - j) mod n` and parity is
//! testable sample-wise. The Hilbert transform uses the multiplier
//! `H e^{i k alpha} = i sgn(k) e^{i k alpha}` (so `H sin = cos`,
//! `H cos = -sin`, `H 1 = 0`), which is the convention consistent with
//! boundary values of functions analytic in the lower half-plane. Both
//! `hilbert` and `derivative` zero the Nyquist mode.

use crate::error::{Result, WaveError};
use crate::fft;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const PARITY_TOL: f64 = 1e-12;

/// Reflection symmetry tag of a field about `alpha = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    None,
}

impl Parity {
    /// Parity after applying an odd Fourier multiplier (derivative, Hilbert).
    fn flipped(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
            Parity::None => Parity::None,
        }
    }
}

/// Real 2*pi-periodic field sampled at `alpha_j = -pi + 2*pi*j/n`.
#[derive(Debug, Clone)]
pub struct PeriodicField {
    n: usize,
    values: Vec<f64>,
    parity: Parity,
}

/// Grid nodes `alpha_j = -pi + 2*pi*j/n`.
pub fn nodes(n: usize) -> Vec<f64> {
    (0..n).map(|j| -PI + 2.0 * PI * j as f64 / n as f64).collect()
}

impl PeriodicField {
    pub fn new(values: Vec<f64>, parity: Parity) -> Result<Self> {
        let n = values.len();
        if !fft::is_power_of_two(n) {
            return Err(WaveError::GridSize { n });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(WaveError::NonFinite);
        }
        let field = PeriodicField { n, values, parity };
        field.check_parity()?;
        Ok(field)
    }

    pub fn zeros(n: usize) -> Self {
        PeriodicField { n, values: vec![0.0; n], parity: Parity::Odd }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        PeriodicField { n, values: vec![value; n], parity: Parity::Even }
    }

    /// Sample `f` at the grid nodes; the parity tag is validated.
    pub fn from_fn(n: usize, parity: Parity, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = nodes(n).into_iter().map(f).collect();
        Self::new(values, parity)
    }

    fn check_parity(&self) -> Result<()> {
        let defect = self.parity_defect(self.parity);
        let amp = self.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if defect > PARITY_TOL * amp.max(1.0) {
            return Err(WaveError::ParityViolation { expected: self.parity, defect });
        }
        Ok(())
    }

    /// Max sample-wise deviation from the given parity.
    pub fn parity_defect(&self, parity: Parity) -> f64 {
        let n = self.n;
        let mut defect = 0.0_f64;
        match parity {
            Parity::Odd => {
                for j in 0..n {
                    let r = (n - j) % n;
                    defect = defect.max((self.values[j] + self.values[r]).abs());
                }
            }
            Parity::Even => {
                for j in 0..n {
                    let r = (n - j) % n;
                    defect = defect.max((self.values[j] - self.values[r]).abs());
                }
            }
            Parity::None => {}
        }
        defect
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nodes(&self) -> Vec<f64> {
        nodes(self.n)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    /// L2 norm with the trapezoidal weight `2*pi/n`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * 2.0 * PI / self.n as f64).sqrt()
    }

    /// Pointwise map; the caller declares the parity of the result.
    pub fn map(&self, parity: Parity, f: impl Fn(f64) -> f64) -> PeriodicField {
        PeriodicField { n: self.n, values: self.values.iter().map(|v| f(*v)).collect(), parity }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip(&self, other: &PeriodicField, parity: Parity, f: impl Fn(f64, f64) -> f64) -> Result<PeriodicField> {
        if self.n != other.n {
            return Err(WaveError::SizeMismatch { left: self.n, right: other.n });
        }
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(PeriodicField { n: self.n, values, parity })
    }

    fn spectrum_buffer(&self) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = self.values.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        fft::forward(&mut buf);
        buf
    }

    fn from_spectrum_buffer(mut buf: Vec<Complex64>, parity: Parity) -> PeriodicField {
        fft::inverse(&mut buf);
        let values = buf.into_iter().map(|c| c.re).collect();
        PeriodicField { n: 0, values, parity }.fix_n()
    }

    fn fix_n(mut self) -> Self {
        self.n = self.values.len();
        self
    }

    fn apply_multiplier(&self, parity: Parity, m: impl Fn(i64) -> Complex64) -> PeriodicField {
        let n = self.n;
        let mut buf = self.spectrum_buffer();
        for (idx, v) in buf.iter_mut().enumerate() {
            let k = fft::wavenumber(idx, n);
            // Odd multipliers are ill-defined on the unpaired Nyquist mode.
            if idx == n / 2 {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v *= m(k);
            }
        }
        Self::from_spectrum_buffer(buf, parity)
    }

    /// Periodic Hilbert transform, `H e^{i k alpha} = i sgn(k) e^{i k alpha}`.
    ///
    /// Maps odd fields to even ones and vice versa; the mean mode (and the
    /// Nyquist mode) are annihilated, so the output has zero mean.
    pub fn hilbert(&self) -> PeriodicField {
        self.apply_multiplier(self.parity.flipped(), |k| Complex64::new(0.0, k.signum() as f64))
    }

    /// Spectral derivative d/d alpha (Nyquist mode zeroed).
    pub fn derivative(&self) -> PeriodicField {
        self.apply_multiplier(self.parity.flipped(), |k| Complex64::new(0.0, k as f64))
    }

    /// L2 pairing over one period by the trapezoidal rule (spectrally exact
    /// for band-limited products).
    pub fn inner(&self, other: &PeriodicField) -> Result<f64> {
        if self.n != other.n {
            return Err(WaveError::SizeMismatch { left: self.n, right: other.n });
        }
        let dot: f64 = self.values.iter().zip(other.values.iter()).map(|(a, b)| a * b).sum();
        Ok(dot * 2.0 * PI / self.n as f64)
    }

    /// Fourier pad/truncate to an `n2`-point grid.
    ///
    /// Upsampling splits the Nyquist coefficient between `+-n/2` (exact for
    /// real fields); downsampling drops every mode outside the new range.
    pub fn resample(&self, n2: usize) -> Result<PeriodicField> {
        if !fft::is_power_of_two(n2) {
            return Err(WaveError::GridSize { n: n2 });
        }
        let n = self.n;
        if n2 == n {
            return Ok(self.clone());
        }
        let src = self.spectrum_buffer();
        let mut dst = vec![Complex64::new(0.0, 0.0); n2];
        let scale = n2 as f64 / n as f64;
        if n2 > n {
            for m in 0..n {
                let k = fft::wavenumber(m, n);
                if m == n / 2 {
                    // Nyquist split: cos((n/2) alpha) = (e^{i k a} + e^{-i k a})/2.
                    let half = src[m] * 0.5 * scale;
                    dst[n / 2] += half;
                    dst[n2 - n / 2] += half;
                } else {
                    let m2 = if k >= 0 { k as usize } else { (n2 as i64 + k) as usize };
                    dst[m2] = src[m] * scale;
                }
            }
        } else {
            for m2 in 0..n2 {
                let k = fft::wavenumber(m2, n2);
                if m2 == n2 / 2 {
                    // The new Nyquist keeps only the +k/2 source mode.
                    dst[m2] = src[n2 / 2] * scale;
                } else {
                    let m = if k >= 0 { k as usize } else { (n as i64 + k) as usize };
                    dst[m2] = src[m] * scale;
                }
            }
        }
        Ok(Self::from_spectrum_buffer(dst, self.parity))
    }

    /// Complex Fourier coefficient `c_k` with respect to `e^{i k alpha}`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let spec = Spectrum::from_field(self);
        spec.coefficient(k)
    }

    /// Sine coefficients `b_1..b_m` of `f = sum b_k sin(k alpha) + ...`.
    pub fn sin_coefficients(&self, m: usize) -> Vec<f64> {
        let spec = Spectrum::from_field(self);
        (1..=m).map(|k| -2.0 * spec.coefficient(k as i64).im).collect()
    }

    /// Cosine coefficients `a_0..a_m` of `f = a_0 + sum a_k cos(k alpha) + ...`.
    pub fn cos_coefficients(&self, m: usize) -> Vec<f64> {
        let spec = Spectrum::from_field(self);
        let mut out = Vec::with_capacity(m + 1);
        out.push(spec.coefficient(0).re);
        for k in 1..=m {
            out.push(2.0 * spec.coefficient(k as i64).re);
        }
        out
    }

    /// Field `sum_k b_k sin(k alpha)` on an `n`-point grid (exactly odd).
    pub fn from_sin_coefficients(n: usize, coeffs: &[f64]) -> Result<PeriodicField> {
        if !fft::is_power_of_two(n) {
            return Err(WaveError::GridSize { n });
        }
        if coeffs.len() >= n / 2 {
            return Err(WaveError::InvalidParameter(format!(
                "{} sine modes exceed the {}-point grid",
                coeffs.len(),
                n
            )));
        }
        let alphas = nodes(n);
        let mut values = vec![0.0; n];
        for (j, a) in alphas.iter().enumerate() {
            values[j] = coeffs.iter().enumerate().map(|(i, b)| b * ((i as f64 + 1.0) * a).sin()).sum();
        }
        // Enforce exact sample-wise oddness against rounding.
        for j in 1..n / 2 {
            let avg = 0.5 * (values[j] - values[n - j]);
            values[j] = avg;
            values[n - j] = -avg;
        }
        values[0] = 0.0;
        values[n / 2] = 0.0;
        Ok(PeriodicField { n, values, parity: Parity::Odd })
    }

    /// Field `a_0 + sum_k a_k cos(k alpha)` on an `n`-point grid (exactly even).
    pub fn from_cos_coefficients(n: usize, coeffs: &[f64]) -> Result<PeriodicField> {
        if !fft::is_power_of_two(n) {
            return Err(WaveError::GridSize { n });
        }
        if coeffs.len() > n / 2 {
            return Err(WaveError::InvalidParameter(format!(
                "{} cosine modes exceed the {}-point grid",
                coeffs.len(),
                n
            )));
        }
        let alphas = nodes(n);
        let mut values = vec![0.0; n];
        for (j, a) in alphas.iter().enumerate() {
            values[j] = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { *c } else { c * ((i as f64) * a).cos() })
                .sum();
        }
        for j in 1..n / 2 {
            let avg = 0.5 * (values[j] + values[n - j]);
            values[j] = avg;
            values[n - j] = avg;
        }
        Ok(PeriodicField { n, values, parity: Parity::Even })
    }

    /// Retag the parity (validated).
    pub fn with_parity(&self, parity: Parity) -> Result<PeriodicField> {
        PeriodicField::new(self.values.clone(), parity)
    }

    /// Symmetrize samples onto the declared parity (used to keep structurally
    /// symmetric computations exactly symmetric against rounding).
    pub fn symmetrized(&self, parity: Parity) -> PeriodicField {
        let n = self.n;
        let mut values = self.values.clone();
        match parity {
            Parity::Odd => {
                values[0] = 0.0;
                values[n / 2] = 0.0;
                for j in 1..n / 2 {
                    let avg = 0.5 * (self.values[j] - self.values[n - j]);
                    values[j] = avg;
                    values[n - j] = -avg;
                }
            }
            Parity::Even => {
                for j in 1..n / 2 {
                    let avg = 0.5 * (self.values[j] + self.values[n - j]);
                    values[j] = avg;
                    values[n - j] = avg;
                }
            }
            Parity::None => {}
        }
        PeriodicField { n, values, parity }
    }
}

/// Complex Fourier coefficients `c_k`, `k = -n/2+1 .. n/2`, of a real field.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    /// DFT-order bins: `coeffs[m] = c_{k(m)} * (-1)^{k(m)}` times `n`.
    bins: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_field(f: &PeriodicField) -> Spectrum {
        Spectrum { n: f.n, bins: f.spectrum_buffer() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `e^{i k alpha}`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let n = self.n as i64;
        if k <= -n / 2 || k > n / 2 {
            return Complex64::new(0.0, 0.0);
        }
        let m = if k >= 0 { k as usize } else { (n + k) as usize };
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        self.bins[m] * sign / self.n as f64
    }

    /// Largest `|c_k|` over `|k| > kmax` (truncation-error report).
    pub fn tail_amplitude(&self, kmax: usize) -> f64 {
        let mut t = 0.0_f64;
        for m in 0..self.n {
            let k = fft::wavenumber(m, self.n).unsigned_abs() as usize;
            if k > kmax {
                t = t.max(self.bins[m].norm() / self.n as f64);
            }
        }
        t
    }

    pub fn to_field(&self, parity: Parity) -> PeriodicField {
        PeriodicField::from_spectrum_buffer(self.bins.clone(), parity)
    }

    /// Max violation of the conjugate symmetry `c_{-k} = conj(c_k)`.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut d = 0.0_f64;
        for k in 1..n / 2 {
            let diff = self.coefficient(k as i64).conj() - self.coefficient(-(k as i64));
            d = d.max(diff.norm());
        }
        d = d.max(self.coefficient(0).im.abs());
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_diff(a: &PeriodicField, b: &PeriodicField) -> f64 {
        a.values()
            .iter()
            .zip(b.values().iter())
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn hilbert_maps_sin_to_cos() {
        let n = 64;
        let f = PeriodicField::from_fn(n, Parity::Odd, |a| a.sin()).unwrap();
        let h = f.hilbert();
        let expect = PeriodicField::from_fn(n, Parity::Even, |a| a.cos()).unwrap();
        assert!(max_diff(&h, &expect) < 1e-14);
        assert_eq!(h.parity(), Parity::Even);
    }

    #[test]
    fn hilbert_annihilates_constants() {
        let f = PeriodicField::constant(64, 1.0);
        assert!(f.hilbert().sup_norm() < 1e-15);
    }

    #[test]
    fn hilbert_of_cos_is_minus_sin() {
        let n = 64;
        let f = PeriodicField::from_fn(n, Parity::Even, |a| (3.0 * a).cos()).unwrap();
        let expect = PeriodicField::from_fn(n, Parity::Odd, |a| -(3.0 * a).sin()).unwrap();
        assert!(max_diff(&f.hilbert(), &expect) < 1e-14);
    }

    #[test]
    fn derivative_of_sin() {
        let n = 64;
        let f = PeriodicField::from_fn(n, Parity::Odd, |a| a.sin()).unwrap();
        let expect = PeriodicField::from_fn(n, Parity::Even, |a| a.cos()).unwrap();
        assert!(max_diff(&f.derivative(), &expect) < 1e-13);
        assert!(PeriodicField::constant(n, 2.5).derivative().sup_norm() < 1e-14);
    }

    #[test]
    fn hilbert_squares_to_minus_identity_minus_mean() {
        // Band-limited field with a nonzero mean.
        let n = 128;
        let f = PeriodicField::from_fn(n, Parity::None, |a| {
            0.7 + a.sin() + 0.3 * (2.0 * a).cos() - 0.2 * (5.0 * a).sin()
        })
        .unwrap();
        let hh = f.hilbert().hilbert();
        let mean = f.mean();
        let mut worst = 0.0_f64;
        for (x, y) in hh.values().iter().zip(f.values().iter()) {
            worst = worst.max((x + (y - mean)).abs());
        }
        assert!(worst < 1e-12, "worst = {worst:.3e}");
    }

    #[test]
    fn hilbert_and_derivative_commute() {
        let n = 128;
        let f = PeriodicField::from_fn(n, Parity::None, |a| {
            (2.0 * a).sin() + 0.4 * (7.0 * a).cos()
        })
        .unwrap();
        let a = f.derivative().hilbert();
        let b = f.hilbert().derivative();
        assert!(max_diff(&a, &b) < 1e-10);
    }

    #[test]
    fn inner_products() {
        let n = 256;
        let s = PeriodicField::from_fn(n, Parity::Odd, |a| a.sin()).unwrap();
        let c = PeriodicField::from_fn(n, Parity::Even, |a| a.cos()).unwrap();
        assert!((s.inner(&s).unwrap() - PI).abs() < 1e-13);
        assert!(s.inner(&c).unwrap().abs() < 1e-13);
        let other = PeriodicField::zeros(128);
        assert!(s.inner(&other).is_err());
    }

    #[test]
    fn resample_exact_for_band_limited() {
        let n = 64;
        let f = PeriodicField::from_fn(n, Parity::Odd, |a| a.sin()).unwrap();
        let up = f.resample(128).unwrap();
        let expect = PeriodicField::from_fn(128, Parity::Odd, |a| a.sin()).unwrap();
        assert!(max_diff(&up, &expect) < 1e-13);
    }

    #[test]
    fn resample_drops_nyquist_on_truncation() {
        let n = 64;
        let f = PeriodicField::from_fn(n, Parity::Even, |a| (32.0 * a).cos()).unwrap();
        let down = f.resample(32).unwrap();
        assert!(down.sup_norm() < 1e-13);
    }

    #[test]
    fn resample_round_trip_identity() {
        let n = 128;
        let f = PeriodicField::from_fn(n, Parity::Odd, |a| {
            (1..20).map(|k| 0.5_f64.powi(k) * (k as f64 * a).sin()).sum()
        })
        .unwrap();
        let round = f.resample(512).unwrap().resample(n).unwrap();
        assert!(max_diff(&round, &f) < 1e-14);
    }

    #[test]
    fn spectrum_round_trip_and_symmetry() {
        let n = 128;
        let f = PeriodicField::from_fn(n, Parity::None, |a| {
            1.3 + (3.0 * a).sin() - 0.2 * (9.0 * a).cos()
        })
        .unwrap();
        let spec = Spectrum::from_field(&f);
        assert!(spec.conjugate_symmetry_defect() < 1e-13);
        let back = spec.to_field(Parity::None);
        let scale = f.sup_norm();
        assert!(max_diff(&back, &f) / scale < 1e-13);
        // Spot-check a coefficient: sin(3a) has c_3 = -i/2.
        let c3 = spec.coefficient(3);
        assert!((c3 - Complex64::new(0.0, -0.5)).norm() < 1e-13);
    }

    #[test]
    fn parity_validation_rejects_mismatch() {
        let err = PeriodicField::from_fn(64, Parity::Odd, |a| a.cos());
        assert!(err.is_err());
    }

    #[test]
    fn sin_cos_coefficient_round_trip() {
        let coeffs = [0.4, -0.3, 0.02, 0.7];
        let f = PeriodicField::from_sin_coefficients(64, &coeffs).unwrap();
        assert_eq!(f.parity(), Parity::Odd);
        let got = f.sin_coefficients(4);
        for (a, b) in coeffs.iter().zip(got.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
        let cc = [1.0, -0.2, 0.05];
        let g = PeriodicField::from_cos_coefficients(64, &cc).unwrap();
        let got = g.cos_coefficients(2);
        for (a, b) in cc.iter().zip(got.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
