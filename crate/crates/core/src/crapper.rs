//! The exact one-parameter family of periodic pure-capillary waves: boundary
//! traces, curve profiles, the parameter map `q(A)` and the two critical
//! amplitudes (graph threshold and self-intersection threshold).

use crate::curve::InterfaceCurve;
use crate::error::{Result, WaveError};
use crate::spectral::{nodes, Parity, PeriodicField};
use num_complex::Complex64;
use once_cell::sync::OnceCell;
use std::f64::consts::PI;

/// Amplitude parameter of the exact family, `0 <= A < 1`. Negative values are
/// excluded: `A -> -A` is a horizontal translation by half a period.
#[derive(Debug, Clone, Copy)]
pub struct CrapperParams {
    a: f64,
}

impl CrapperParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) || !a.is_finite() {
            return Err(WaveError::InvalidParameter(format!(
                "amplitude A = {a} outside [0, 1)"
            )));
        }
        Ok(CrapperParams { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn q(&self) -> f64 {
        (1.0 + self.a * self.a) / (1.0 - self.a * self.a)
    }
}

/// Surface-tension coefficient `q = (1 + A^2)/(1 - A^2) >= 1`.
pub fn q_of_a(a: f64) -> Result<f64> {
    if a.abs() >= 1.0 || !a.is_finite() {
        return Err(WaveError::InvalidParameter(format!("|A| = {} >= 1", a.abs())));
    }
    Ok((1.0 + a * a) / (1.0 - a * a))
}

/// Inverse of [`q_of_a`] on the branch `A >= 0`.
pub fn a_of_q(q: f64) -> Result<f64> {
    if q < 1.0 || !q.is_finite() {
        return Err(WaveError::InvalidParameter(format!("q = {q} < 1 has no amplitude")));
    }
    Ok(((q - 1.0) / (q + 1.0)).sqrt())
}

/// Boundary trace of the exact family at `w = alpha`:
/// `f_A = 2 i log((1 + A e^{-i alpha})/(1 - A e^{-i alpha}))`, returned as
/// `(theta, tau) = (Re f_A, Im f_A)`. `theta` is odd, `tau` even, and
/// `tau = H theta` under this crate's Hilbert convention.
pub fn theta_tau(a: f64, n: usize) -> Result<(PeriodicField, PeriodicField)> {
    if a.abs() >= 1.0 || !a.is_finite() {
        return Err(WaveError::InvalidParameter(format!("|A| = {} >= 1", a.abs())));
    }
    let alphas = nodes(n);
    let mut th = Vec::with_capacity(n);
    let mut ta = Vec::with_capacity(n);
    for alpha in alphas {
        let u = Complex64::from_polar(a, -alpha);
        let ratio = (Complex64::new(1.0, 0.0) + u) / (Complex64::new(1.0, 0.0) - u);
        // f = 2 i (ln|r| + i arg r) => Re f = -2 arg r, Im f = 2 ln|r|.
        th.push(-2.0 * ratio.arg());
        ta.push(2.0 * ratio.norm().ln());
    }
    let theta = PeriodicField::new(th, Parity::None)?.symmetrized(Parity::Odd);
    let tau = PeriodicField::new(ta, Parity::None)?.symmetrized(Parity::Even);
    Ok((theta, tau))
}

/// Closed-form interface `z_A(alpha) = alpha + 4i/(1 + A e^{-i alpha}) - 4i`
/// with analytic first and second derivatives.
pub fn curve(a: f64, n: usize) -> Result<InterfaceCurve> {
    if a.abs() >= 1.0 || !a.is_finite() {
        return Err(WaveError::InvalidParameter(format!("|A| = {} >= 1", a.abs())));
    }
    let alphas = nodes(n);
    let mut z = Vec::with_capacity(n);
    let mut dz = Vec::with_capacity(n);
    let mut d2z = Vec::with_capacity(n);
    let four_i = Complex64::new(0.0, 4.0);
    for alpha in alphas {
        let u = Complex64::from_polar(a, -alpha);
        let one = Complex64::new(1.0, 0.0);
        let den = one + u;
        z.push(Complex64::new(alpha, 0.0) + four_i / den - four_i);
        let r = (one - u) / den;
        dz.push(r * r);
        d2z.push(Complex64::new(0.0, 4.0) * u * (one - u) / (den * den * den));
    }
    InterfaceCurve::from_samples_full(-PI, 2.0 * PI, z, dz, d2z, Complex64::new(2.0 * PI, 0.0))
}

/// Resolution heuristic: the smallest power-of-two grid with
/// `A^{n/2} < 1e-14`, clamped to `[64, 8192]`. Returns the grid size and the
/// achieved truncation level `A^{n/2}`.
pub fn suggested_n(a: f64) -> (usize, f64) {
    let a = a.abs().min(0.999);
    let mut n = 64usize;
    while n < 8192 && a.powf(n as f64 / 2.0) >= 1e-14 {
        n *= 2;
    }
    (n, a.powf(n as f64 / 2.0))
}

/// Graph threshold `sqrt(2) - 1`: `z_A` is a graph iff `A` is below it.
pub fn graph_threshold() -> f64 {
    std::f64::consts::SQRT_2 - 1.0
}

static A_SPLASH: OnceCell<f64> = OnceCell::new();

/// Critical amplitudes `(sqrt(2) - 1, A0)`.
///
/// `A0` (the self-intersection threshold, approx. 0.45467) is recomputed by
/// bisection on the geometry module's self-intersection predicate rather than
/// hard-coded; the first call pays for the bisection, later calls are cached.
pub fn critical_constants() -> (f64, f64) {
    let a0 = *A_SPLASH.get_or_init(|| {
        bisect_self_intersection(0.44, 0.47, 2048, 1e-7)
            .expect("bracket [0.44, 0.47] straddles the splash amplitude")
    });
    (graph_threshold(), a0)
}

/// Bisection of the self-intersection predicate of the closed-form curve over
/// `[lo, hi]`; returns the midpoint of the final bracket.
pub fn bisect_self_intersection(lo: f64, hi: f64, n: usize, tol_a: f64) -> Result<f64> {
    let intersects = |a: f64| -> Result<bool> {
        let c = curve(a, n)?;
        Ok(!crate::geometry::self_intersections(&c)?.is_empty())
    };
    let (mut lo, mut hi) = (lo, hi);
    if intersects(lo)? {
        return Err(WaveError::BracketingFailed(format!("curve already crosses at A = {lo}")));
    }
    if !intersects(hi)? {
        return Err(WaveError::BracketingFailed(format!("curve still simple at A = {hi}")));
    }
    while hi - lo > tol_a {
        let mid = 0.5 * (lo + hi);
        if intersects(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
