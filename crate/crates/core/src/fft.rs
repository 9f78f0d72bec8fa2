//! Cached FFT plans and index conventions shared by the spectral layer.
//!
//! Samples live at `alpha_j = -pi + 2*pi*j/n`. A field `f = sum_k c_k e^{i k alpha}`
//! has DFT `X[m] = n * (-1)^k c_k` with `k = m` for `m <= n/2` and `k = m - n`
//! otherwise. Diagonal Fourier multipliers in `k` can therefore be applied
//! directly in DFT order; the `(-1)^k` twist only matters when reading off
//! coefficient values.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

struct PlanCache {
    planner: FftPlanner<f64>,
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

static PLANS: Lazy<Mutex<PlanCache>> = Lazy::new(|| {
    Mutex::new(PlanCache {
        planner: FftPlanner::new(),
        forward: HashMap::new(),
        inverse: HashMap::new(),
    })
});

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    let PlanCache { planner, forward, inverse: inv } = &mut *cache;
    let map = if inverse { inv } else { forward };
    map.entry(n)
        .or_insert_with(|| {
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// In-place unnormalized forward DFT.
pub fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// In-place inverse DFT normalized by `1/n`.
pub fn inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    plan(n, true).process(buf);
    let scale = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// Signed wavenumber for DFT bin `m` of an `n`-point transform.
#[inline]
pub fn wavenumber(m: usize, n: usize) -> i64 {
    if m <= n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

pub fn is_power_of_two(n: usize) -> bool {
    n >= 4 && n.is_power_of_two()
}
