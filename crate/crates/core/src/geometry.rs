//! Geometric analysis of interface curves: curvature, arc-length
//! reparametrization, the chord-arc (eta-splash) functional, self-intersection
//! detection and the conformal opening map.

use crate::curve::InterfaceCurve;
use crate::error::{Result, WaveError};
use crate::fft;
use crate::spectral::{Parity, PeriodicField};
use crate::util;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Arc separation below which chord/arc ratios are ignored: the ratio tends
/// to 1 on the diagonal of a unit-speed curve and carries no information
/// about near-self-intersection.
pub const DIAGONAL_EXCLUSION: f64 = 0.25;

/// Default chord-arc tolerance (in arc-length units) under which a simple
/// curve with a distant near-touch is classified as a splash.
pub const DEFAULT_SPLASH_TOL: f64 = 1e-6;

const DEFAULT_SCAN_POINTS: usize = 4096;

/// Trichotomy of interface shapes, plus the self-intersecting case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    /// `Re dz > 0` everywhere: the interface is a graph `y = h(x)`.
    Graph,
    /// Injective but not a graph.
    Simple,
    /// Simple with chord-arc ratio below tolerance at arc separation > 1.
    Splash,
    /// Self-intersecting.
    Crossing,
}

impl CurveClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveClass::Graph => "graph",
            CurveClass::Simple => "simple",
            CurveClass::Splash => "splash",
            CurveClass::Crossing => "crossing",
        }
    }
}

/// Result of the chord-arc scan and classification.
#[derive(Debug, Clone)]
pub struct SplashReport {
    /// Infimum of `|z(a) - z(b)| / min(b - a, 1)` over arc-length pairs with
    /// separation at least [`DIAGONAL_EXCLUSION`].
    pub eta: f64,
    /// Minimizing pair in arc-length parameters.
    pub pair: (f64, f64),
    /// Arc separation `b - a` of the minimizing pair.
    pub arc_separation: f64,
    /// Number of (deduplicated) transverse self-crossings.
    pub intersections: usize,
    pub classification: CurveClass,
    /// Lengths of the contiguous near-minimizing intervals around each member
    /// of the pair (diagnostic; the bound is reported, not enforced).
    pub interval_lengths: (f64, f64),
}

/// A transverse self-crossing `z(alpha) = z(beta) + 2 pi w`.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub alpha: f64,
    pub beta: f64,
    /// Horizontal period offset of the second branch.
    pub winding: i32,
    pub point: Complex64,
    /// Newton refinement converged to `|z(a) - z(b)| < 1e-12`.
    pub converged: bool,
    pub residual: f64,
}

/// Curvature from the tangent angle: `K = e^{H theta} dtheta/dalpha`.
pub fn curvature(theta: &PeriodicField) -> Result<PeriodicField> {
    if theta.parity() != Parity::Odd {
        return Err(WaveError::ParityViolation {
            expected: Parity::Odd,
            defect: theta.parity_defect(Parity::Odd),
        });
    }
    let tau = theta.hilbert();
    let dtheta = theta.derivative();
    tau.zip(&dtheta, Parity::Even, |t, d| t.exp() * d)
}

/// Curvature from the coordinate formula
/// `(x' y'' - y' x'') / |z'|^3 = Im(conj(z') z'') / |z'|^3`.
pub fn coordinate_curvature(c: &InterfaceCurve) -> Vec<f64> {
    c.tangents()
        .iter()
        .zip(c.second_derivatives().iter())
        .map(|(d, dd)| (d.conj() * dd).im / d.norm().powi(3))
        .collect()
}

/// Resample the curve at `m` points equally spaced in arc length.
///
/// The cumulative length is integrated spectrally and inverted by Newton with
/// a bisection safeguard; total length per period is preserved to rounding.
pub fn arclength_reparam(c: &InterfaceCurve, m: usize) -> Result<InterfaceCurve> {
    if !fft::is_power_of_two(m) {
        return Err(WaveError::GridSize { n: m });
    }
    let n = c.n();
    let min_speed = c.min_speed();
    if min_speed <= 1e-14 {
        return Err(WaveError::DegenerateTangent { min_speed });
    }

    // Spectral antiderivative of the speed |dz|: coefficients of the
    // zero-mean periodic part, plus grid values for cell bracketing.
    let om = 2.0 * PI / c.period();
    let mut pcoef: Vec<Complex64> =
        c.tangents().iter().map(|d| Complex64::new(d.norm(), 0.0)).collect();
    fft::forward(&mut pcoef);
    let mean_speed = pcoef[0].re / n as f64;
    let total_length = mean_speed * c.period();
    pcoef[0] = Complex64::new(0.0, 0.0);
    for (idx, v) in pcoef.iter_mut().enumerate() {
        let k = fft::wavenumber(idx, n) as f64;
        if k != 0.0 {
            *v /= Complex64::new(0.0, k * om) * n as f64;
        }
    }
    let p_at_t0: f64 = pcoef.iter().map(|b| b.re).sum();
    // s(t) = mean_speed (t - t0) + P(t) - P(t0).
    let eval_s = |t: f64| -> f64 {
        let u = (t - c.t0()) * om;
        let mut acc = 0.0;
        for (idx, b) in pcoef.iter().enumerate() {
            let k = fft::wavenumber(idx, n) as f64;
            acc += (b * Complex64::from_polar(1.0, k * u)).re;
        }
        mean_speed * (t - c.t0()) + acc - p_at_t0
    };
    // Cumulative length at grid nodes for monotone cell lookup.
    let mut s_grid: Vec<f64> = (0..n).map(|j| eval_s(c.node(j))).collect();
    s_grid.push(total_length);

    let dt_cell = c.period() / n as f64;
    let mut nodes_t = Vec::with_capacity(m);
    for k in 0..m {
        let target = k as f64 * total_length / m as f64;
        let cell = match s_grid.binary_search_by(|s| s.partial_cmp(&target).unwrap()) {
            Ok(j) => j.min(n - 1),
            Err(j) => j.saturating_sub(1).min(n - 1),
        };
        let mut lo = c.t0() + cell as f64 * dt_cell;
        let mut hi = lo + dt_cell;
        let frac = (target - s_grid[cell]) / (s_grid[cell + 1] - s_grid[cell]).max(1e-300);
        let mut t = lo + frac.clamp(0.0, 1.0) * dt_cell;
        let mut converged = false;
        for _ in 0..40 {
            let f = eval_s(t) - target;
            if f.abs() < 1e-13 * total_length.max(1.0) {
                converged = true;
                break;
            }
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let deriv = c.tangent(t).norm().max(1e-300);
            let next = t - f / deriv;
            t = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        }
        if !converged {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if eval_s(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 * c.period() {
                    break;
                }
            }
            t = 0.5 * (lo + hi);
        }
        nodes_t.push(t);
    }

    let z: Vec<Complex64> = nodes_t.iter().map(|&t| c.point(t)).collect();
    let dz: Vec<Complex64> = nodes_t
        .iter()
        .map(|&t| {
            let d = c.tangent(t);
            d / d.norm()
        })
        .collect();
    InterfaceCurve::from_samples(-total_length / 2.0, total_length, z, Some(dz), c.shift())
}

/// Total length of one period, by spectral quadrature of the speed.
pub fn total_length(c: &InterfaceCurve) -> f64 {
    let mean: f64 = c.tangents().iter().map(|d| d.norm()).sum::<f64>() / c.n() as f64;
    mean * c.period()
}

struct ChordScan {
    eta: f64,
    i_best: usize,
    j_best: usize,
    /// Minimum ratio seen by each sample over all its admissible partners.
    per_point_min: Vec<f64>,
}

/// Brute-force chord/arc scan over all pairs with arc separation in
/// `[DIAGONAL_EXCLUSION, L]` on an arc-length sampled curve.
fn chord_scan(arc: &InterfaceCurve) -> ChordScan {
    let m = arc.n();
    let ds = arc.period() / m as f64;
    let gap = ((DIAGONAL_EXCLUSION / ds).ceil() as usize).max(1);
    let shift = arc.shift();
    let mut zext = Vec::with_capacity(2 * m + 1);
    zext.extend_from_slice(arc.positions());
    for j in 0..=m {
        zext.push(arc.positions()[j % m] + shift);
    }

    let mut eta = f64::INFINITY;
    let (mut i_best, mut j_best) = (0usize, gap);
    let mut per_point_min = vec![f64::INFINITY; m];
    for i in 0..m {
        let zi = zext[i];
        for j in (i + gap)..=(i + m) {
            let sep = (j - i) as f64 * ds;
            let den = sep.min(1.0);
            let ratio = (zext[j] - zi).norm() / den;
            if ratio < eta {
                eta = ratio;
                i_best = i;
                j_best = j;
            }
            if ratio < per_point_min[i] {
                per_point_min[i] = ratio;
            }
            let jm = j % m;
            if ratio < per_point_min[jm] {
                per_point_min[jm] = ratio;
            }
        }
    }
    ChordScan { eta, i_best, j_best, per_point_min }
}

/// Golden-section refinement of the ratio around the discrete minimizer
/// (cyclic coordinate descent; the near-touch minimum is smooth).
fn refine_pair(arc: &InterfaceCurve, s_a: f64, s_b: f64, ds: f64) -> (f64, f64, f64) {
    let ratio = |a: f64, b: f64| -> f64 {
        let sep = b - a;
        if sep < DIAGONAL_EXCLUSION {
            return f64::INFINITY;
        }
        (arc.point(b) - arc.point(a)).norm() / sep.min(1.0)
    };
    let golden = |f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64| -> f64 {
        let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let mut c = hi - phi * (hi - lo);
        let mut d = lo + phi * (hi - lo);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..40 {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - phi * (hi - lo);
                fc = f(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + phi * (hi - lo);
                fd = f(d);
            }
        }
        0.5 * (lo + hi)
    };
    let (mut a, mut b) = (s_a, s_b);
    for _ in 0..4 {
        let bb = b;
        a = golden(&|x| ratio(x, bb), a - ds, a + ds);
        let aa = a;
        b = golden(&|x| ratio(aa, x), b - ds, b + ds);
    }
    (a, b, ratio(a, b))
}

/// Options for [`analyze`].
#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    /// Number of arc-length samples used by the chord-arc scan.
    pub scan_points: usize,
    /// Chord-arc threshold distinguishing splash from simple.
    pub splash_tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { scan_points: DEFAULT_SCAN_POINTS, splash_tol: DEFAULT_SPLASH_TOL }
    }
}

/// Chord-arc functional of the curve (arc-length reparametrization is
/// performed internally), with the default splash tolerance.
pub fn chord_arc_eta(c: &InterfaceCurve) -> Result<SplashReport> {
    analyze(c, AnalyzeOptions::default())
}

/// Classify the curve with an explicit splash tolerance.
pub fn classify(c: &InterfaceCurve, splash_tol: f64) -> Result<SplashReport> {
    analyze(c, AnalyzeOptions { splash_tol, ..AnalyzeOptions::default() })
}

/// Full geometric analysis: graph test, self-intersection sweep, chord-arc
/// scan with local refinement, and classification.
pub fn analyze(c: &InterfaceCurve, opts: AnalyzeOptions) -> Result<SplashReport> {
    let crossings = self_intersections(c)?;
    let arc = arclength_reparam(c, opts.scan_points)?;
    let scan = chord_scan(&arc);
    let ds = arc.period() / arc.n() as f64;
    let s_a = arc.node(scan.i_best);
    let s_b = arc.t0() + scan.j_best as f64 * ds;
    let (a, b, eta_refined) = refine_pair(&arc, s_a, s_b, ds);
    let eta = eta_refined.min(scan.eta);

    // Near-minimizing interval lengths at a threshold slightly above eta.
    let threshold = (1.5 * eta).max(eta + 1e-9);
    let run_len = |mins: &[f64], center: usize| -> f64 {
        let m = mins.len();
        let mut count = 1usize;
        let mut k = (center + 1) % m;
        while k != center && mins[k] <= threshold {
            count += 1;
            k = (k + 1) % m;
        }
        let mut k = (center + m - 1) % m;
        while k != center && mins[k] <= threshold {
            count += 1;
            k = (k + m - 1) % m;
        }
        count as f64 * ds
    };
    let interval_lengths = (
        run_len(&scan.per_point_min, scan.i_best),
        run_len(&scan.per_point_min, scan.j_best % arc.n()),
    );

    let is_graph = c.tangents().iter().all(|d| d.re > 0.0);
    let classification = if !crossings.is_empty() {
        CurveClass::Crossing
    } else if is_graph {
        CurveClass::Graph
    } else if eta < opts.splash_tol && (b - a) > 1.0 {
        CurveClass::Splash
    } else {
        CurveClass::Simple
    };

    Ok(SplashReport {
        eta,
        pair: (a, b),
        arc_separation: b - a,
        intersections: crossings.len(),
        classification,
        interval_lengths,
    })
}

/// All transverse self-crossings of one period against itself and its
/// `+2 pi` translate, found on the sample polyline and refined by 2D Newton
/// on `(alpha, beta) -> z(alpha) - z(beta) - 2 pi w`.
pub fn self_intersections(c: &InterfaceCurve) -> Result<Vec<Crossing>> {
    let n = c.n();
    let shift = c.shift();
    // Closed polygon of one period: endpoint z_n = z_0 + shift.
    let mut pts = Vec::with_capacity(n + 1);
    pts.extend_from_slice(c.positions());
    pts.push(c.positions()[0] + shift);

    #[derive(Clone, Copy)]
    struct BBox {
        xmin: f64,
        xmax: f64,
        ymin: f64,
        ymax: f64,
    }
    let boxes: Vec<BBox> = (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[i + 1]);
            BBox {
                xmin: a.re.min(b.re),
                xmax: a.re.max(b.re),
                ymin: a.im.min(b.im),
                ymax: a.im.max(b.im),
            }
        })
        .collect();

    let seg_intersect = |p0: Complex64, p1: Complex64, q0: Complex64, q1: Complex64| -> Option<(f64, f64)> {
        let r = p1 - p0;
        let s = q1 - q0;
        let den = r.re * s.im - r.im * s.re;
        let qp = q0 - p0;
        if den.abs() < 1e-300 {
            return None;
        }
        let t = (qp.re * s.im - qp.im * s.re) / den;
        let u = (qp.re * r.im - qp.im * r.re) / den;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
            Some((t, u))
        } else {
            None
        }
    };

    let dt = c.period() / n as f64;
    let mut seeds: Vec<(f64, f64, i32)> = Vec::new();
    for w in 0..=1i32 {
        let offset = shift * w as f64;
        let rows = util::par_map(n, |i| {
            let mut local: Vec<(f64, f64, i32)> = Vec::new();
            let jstart = if w == 0 { i + 2 } else { 0 };
            for j in jstart..n {
                if w == 0 && i == 0 && j == n - 1 {
                    continue; // wrap-adjacent
                }
                if w == 1 && (i == j || (i == n - 1 && j == 0)) {
                    continue; // a segment vs its own translate / seam-adjacent
                }
                let (bi, bj) = (boxes[i], boxes[j]);
                if bi.xmax < bj.xmin + offset.re
                    || bj.xmax + offset.re < bi.xmin
                    || bi.ymax < bj.ymin + offset.im
                    || bj.ymax + offset.im < bi.ymin
                {
                    continue;
                }
                if let Some((t, u)) =
                    seg_intersect(pts[i], pts[i + 1], pts[j] + offset, pts[j + 1] + offset)
                {
                    local.push((c.t0() + (i as f64 + t) * dt, c.t0() + (j as f64 + u) * dt, w));
                }
            }
            local
        });
        for mut r in rows {
            seeds.append(&mut r);
        }
    }

    // Newton refinement with a one-cell trust region.
    let mut crossings: Vec<Crossing> = Vec::new();
    for (a0, b0, w) in seeds {
        let offset = shift * w as f64;
        let (mut a, mut b) = (a0, b0);
        let mut converged = false;
        let mut res = f64::INFINITY;
        for _ in 0..50 {
            let f = c.point(a) - c.point(b) - offset;
            res = f.norm();
            if res < 1e-12 {
                converged = true;
                break;
            }
            let da = c.tangent(a);
            let db = c.tangent(b);
            let det = -da.re * db.im + da.im * db.re;
            if det.abs() < 1e-14 {
                break;
            }
            // Solve [da, -db] (sa, sb)^T = -f.
            let sa = (-f.re * (-db.im) - (-db.re) * (-f.im)) / det;
            let sb = (da.re * (-f.im) - (-f.re) * da.im) / det;
            let lim = dt;
            a += sa.clamp(-lim, lim);
            b += sb.clamp(-lim, lim);
        }
        if (a - b).abs() < 0.5 * dt && w == 0 {
            continue; // collapsed onto the diagonal
        }
        crossings.push(Crossing { alpha: a, beta: b, winding: w, point: c.point(a), converged, residual: res });
    }

    // Deduplicate modulo periodicity and pair order.
    let period = c.period();
    let canon = |x: f64| -> f64 {
        let mut v = (x - c.t0()).rem_euclid(period) + c.t0();
        if v >= c.t0() + period - 1e-12 {
            v = c.t0();
        }
        v
    };
    let mut unique: Vec<Crossing> = Vec::new();
    'outer: for cr in crossings {
        let (pa, pb) = (canon(cr.alpha), canon(cr.beta));
        for u in &unique {
            let (ua, ub) = (canon(u.alpha), canon(u.beta));
            let same = |x: f64, y: f64| {
                let d = (x - y).abs();
                d < 2.0 * dt || (period - d).abs() < 2.0 * dt
            };
            if (same(pa, ua) && same(pb, ub)) || (same(pa, ub) && same(pb, ua)) {
                continue 'outer;
            }
        }
        unique.push(cr);
    }
    Ok(unique)
}

/// Image of one period under the opening map `P(z) = sqrt(a - e^{-i z})`
/// (principal square root, branch cut on the negative real axis).
#[derive(Debug, Clone)]
pub struct OpenedCurve {
    pub points: Vec<Complex64>,
}

impl OpenedCurve {
    /// Smallest real part over the image (distance to the imaginary axis).
    pub fn min_real(&self) -> f64 {
        self.points.iter().fold(f64::INFINITY, |m, p| m.min(p.re))
    }

    /// Number of contiguous sample clusters with `Re P < tol` (the splash
    /// image touches the imaginary axis in exactly two of them).
    pub fn axis_touch_count(&self, tol: f64) -> usize {
        let m = self.points.len();
        let near: Vec<bool> = self.points.iter().map(|p| p.re < tol).collect();
        let mut count = 0usize;
        for j in 0..m {
            if near[j] && !near[(j + m - 1) % m] {
                count += 1;
            }
        }
        count
    }

    /// Simple-closedness of the image polygon, by the same segment sweep used
    /// for interfaces.
    pub fn is_simple(&self) -> bool {
        let pts = &self.points;
        let m = pts.len();
        let seg = |i: usize| (pts[i], pts[(i + 1) % m]);
        for i in 0..m {
            let (p0, p1) = seg(i);
            for j in (i + 2)..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                let (q0, q1) = seg(j);
                let r = p1 - p0;
                let s = q1 - q0;
                let den = r.re * s.im - r.im * s.re;
                if den.abs() < 1e-300 {
                    continue;
                }
                let qp = q0 - p0;
                let t = (qp.re * s.im - qp.im * s.re) / den;
                let u = (qp.re * r.im - qp.im * r.re) / den;
                if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
                    return false;
                }
            }
        }
        true
    }
}

/// Apply the opening map with constant `a >= 0`. Errors if a curve segment
/// crosses the branch cut `{a - e^{-i z} in (-inf, 0)}`.
pub fn open_map(c: &InterfaceCurve, a: f64) -> Result<OpenedCurve> {
    if a < 0.0 || !a.is_finite() {
        return Err(WaveError::InvalidParameter(format!("opening constant a = {a} < 0")));
    }
    let zeta: Vec<Complex64> = c
        .positions()
        .iter()
        .map(|z| Complex64::new(a, 0.0) - (Complex64::new(0.0, -1.0) * z).exp())
        .collect();
    let n = zeta.len();
    for j in 0..n {
        let (z0, z1) = (zeta[j], zeta[(j + 1) % n]);
        if z0.im.signum() != z1.im.signum() {
            // Interpolated crossing of the real axis; reject if it lands on
            // the cut (negative real axis).
            let t = z0.im / (z0.im - z1.im);
            let xc = z0.re + t * (z1.re - z0.re);
            if xc < 0.0 {
                return Err(WaveError::BranchCut { index: j, a });
            }
        }
    }
    Ok(OpenedCurve { points: zeta.into_iter().map(|v| v.sqrt()).collect() })
}

/// Default opening constant from the ordinate of the near-touch midpoint:
/// `a = exp(y_mid)` places the branch point at the (near-)splash point.
pub fn default_opening_constant(c: &InterfaceCurve, report: &SplashReport) -> f64 {
    let arc = arclength_reparam(c, 1024).expect("reparam for opening constant");
    let mid = 0.5 * (arc.point(report.pair.0) + arc.point(report.pair.1));
    mid.im.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crapper;

    #[test]
    fn curvature_of_flat_interface_is_zero() {
        let theta = PeriodicField::zeros(64);
        assert!(curvature(&theta).unwrap().sup_norm() < 1e-15);
    }

    #[test]
    fn curvature_matches_coordinate_formula() {
        let a = 0.2;
        let n = 512;
        let (theta, _) = crapper::theta_tau(a, n).unwrap();
        let k_theta = curvature(&theta).unwrap();
        let c = crapper::curve(a, n).unwrap();
        let k_coord = coordinate_curvature(&c);
        let mut worst = 0.0_f64;
        for (x, y) in k_theta.values().iter().zip(k_coord.iter()) {
            worst = worst.max((x - y).abs());
        }
        assert!(worst < 1e-9, "curvature mismatch {worst:.3e}");
        assert_eq!(k_theta.parity(), Parity::Even);
    }

    #[test]
    fn total_turning_vanishes() {
        let a = 0.3;
        let n = 512;
        let (theta, _) = crapper::theta_tau(a, n).unwrap();
        let k = curvature(&theta).unwrap();
        let c = crapper::curve(a, n).unwrap();
        let weighted: f64 = k
            .values()
            .iter()
            .zip(c.tangents().iter())
            .map(|(kv, d)| kv * d.norm())
            .sum::<f64>()
            / n as f64;
        assert!(weighted.abs() < 1e-12);
    }

    #[test]
    fn reparam_identity_on_flat_curve() {
        let c = crapper::curve(0.0, 128).unwrap();
        let r = arclength_reparam(&c, 128).unwrap();
        for (j, z) in r.positions().iter().enumerate() {
            let expect = Complex64::new(r.node(j), 0.0);
            assert!((z - expect).norm() < 1e-12);
        }
        assert!((total_length(&r) - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn reparam_circle_fixture_is_exact() {
        // Closed test curve 2 e^{i t}: constant speed, so the reparam is the
        // identity up to node placement.
        let n = 256;
        let z: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(2.0, -PI + 2.0 * PI * j as f64 / n as f64))
            .collect();
        let c = InterfaceCurve::from_samples(-PI, 2.0 * PI, z, None, Complex64::new(0.0, 0.0))
            .unwrap();
        let r = arclength_reparam(&c, 256).unwrap();
        assert!((total_length(&c) - 4.0 * PI).abs() < 1e-10);
        for (j, z) in r.positions().iter().enumerate() {
            let s = r.node(j);
            let expect = Complex64::from_polar(2.0, -PI + (s + 2.0 * PI) / 2.0);
            assert!((z - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn reparam_unit_speed_spectral_oracle() {
        let a = 0.4;
        let c = crapper::curve(a, 1024).unwrap();
        let m = 4096;
        let r = arclength_reparam(&c, m).unwrap();
        assert!((total_length(&r) - total_length(&c)).abs() < 1e-10);
        // Independent speed check: spectral derivative of the resampled
        // positions with respect to the new parameter.
        let lin = r.shift() / r.period();
        let periodic: Vec<Complex64> = r
            .positions()
            .iter()
            .enumerate()
            .map(|(j, z)| z - lin * (j as f64 * r.period() / m as f64))
            .collect();
        let mut bins = periodic;
        fft::forward(&mut bins);
        let om = 2.0 * PI / r.period();
        for (idx, v) in bins.iter_mut().enumerate() {
            let k = fft::wavenumber(idx, m) as f64;
            *v *= Complex64::new(0.0, k * om);
        }
        fft::inverse(&mut bins);
        let mut worst = 0.0_f64;
        for d in bins.iter().map(|p| p + lin) {
            worst = worst.max((d.norm() - 1.0).abs());
        }
        assert!(worst < 1e-8, "speed deviation {worst:.3e}");
    }

    #[test]
    fn flat_eta_is_one_and_graph() {
        let c = crapper::curve(0.0, 256).unwrap();
        let report = chord_arc_eta(&c).unwrap();
        assert!((report.eta - 1.0).abs() < 1e-9, "eta = {}", report.eta);
        assert_eq!(report.classification, CurveClass::Graph);
        assert_eq!(report.intersections, 0);
    }

    #[test]
    fn crapper_simple_range_has_no_crossings() {
        for &a in &[0.0, 0.2, 0.40] {
            let c = crapper::curve(a, 2048).unwrap();
            assert!(self_intersections(&c).unwrap().is_empty(), "A = {a}");
        }
    }

    #[test]
    fn crapper_crossing_count_and_symmetry() {
        let c = crapper::curve(0.46, 4096).unwrap();
        let crossings = self_intersections(&c).unwrap();
        assert_eq!(crossings.len(), 2, "expected exactly two crossings");
        for cr in &crossings {
            assert!(cr.converged, "refinement should converge at A = 0.46");
            assert!(cr.residual < 1e-12);
            // Crossings sit on the symmetry axis: alpha = -beta, Re point = 0.
            assert!((cr.alpha + cr.beta).abs() < 1e-8, "pair not symmetric");
            assert!(cr.point.re.abs() < 1e-9);
        }
    }

    #[test]
    fn eta_decreases_toward_splash_and_is_invariant() {
        let c1 = crapper::curve(0.35, 1024).unwrap();
        let c2 = crapper::curve(0.42, 1024).unwrap();
        let opts = AnalyzeOptions { scan_points: 2048, splash_tol: DEFAULT_SPLASH_TOL };
        let e1 = analyze(&c1, opts).unwrap().eta;
        let e2 = analyze(&c2, opts).unwrap().eta;
        assert!(e2 < e1, "eta must decrease with A: {e1} vs {e2}");

        // Invariance under horizontal translation and reflection.
        let translated = c2.translated(Complex64::new(1.25, 0.0));
        let et = analyze(&translated, opts).unwrap().eta;
        assert!((et - e2).abs() < 1e-9, "translation changed eta: {e2} vs {et}");
        let reflected = c2.reflected();
        let er = analyze(&reflected, opts).unwrap().eta;
        assert!((er - e2).abs() < 1e-7, "reflection changed eta: {e2} vs {er}");
    }

    #[test]
    fn classification_trichotomy_on_exact_family() {
        let opts = AnalyzeOptions { scan_points: 2048, splash_tol: DEFAULT_SPLASH_TOL };
        let graph = analyze(&crapper::curve(0.2, 1024).unwrap(), opts).unwrap();
        assert_eq!(graph.classification, CurveClass::Graph);
        let simple = analyze(&crapper::curve(0.43, 1024).unwrap(), opts).unwrap();
        assert_eq!(simple.classification, CurveClass::Simple);
        let crossing = analyze(&crapper::curve(0.46, 2048).unwrap(), opts).unwrap();
        assert_eq!(crossing.classification, CurveClass::Crossing);
        assert_eq!(crossing.intersections, 2);
    }

    #[test]
    fn open_map_of_flat_curve_is_simple() {
        let c = crapper::curve(0.0, 256).unwrap();
        let opened = open_map(&c, 2.0).unwrap();
        assert!(opened.is_simple());
        // Direct evaluation: sqrt(2 - e^{-i alpha}).
        for (j, p) in opened.points.iter().enumerate() {
            let alpha = c.node(j);
            let expect = (Complex64::new(2.0, 0.0)
                - Complex64::from_polar(1.0, -alpha))
            .sqrt();
            assert!((p - expect).norm() < 1e-12);
        }
        assert!(opened.min_real() > 0.9);
    }

    #[test]
    fn open_map_near_splash_stays_right_of_axis() {
        let c = crapper::curve(0.40, 1024).unwrap();
        let report = chord_arc_eta(&c).unwrap();
        let a = default_opening_constant(&c, &report);
        let opened = open_map(&c, a).unwrap();
        assert!(opened.is_simple());
        assert!(opened.min_real() > 0.0, "image should stay in the open right half-plane");
    }

    #[test]
    fn open_map_rejects_bad_constant() {
        // a = 0 puts the branch point at y -> -infinity image; the cut then
        // slices through the fluid image for this profile.
        let c = crapper::curve(0.40, 512).unwrap();
        assert!(open_map(&c, 0.0).is_err());
    }
}
