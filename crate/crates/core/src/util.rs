//! Deterministic chunked parallelism for the O(n^2) scans.
//!
//! Work is split by row index and results are collected in index order, so
//! the output is identical for any worker count. The thread count comes from
//! `CAPWAVE_THREADS` (default: available parallelism, capped at 8).

pub fn thread_count() -> usize {
    if let Ok(v) = std::env::var("CAPWAVE_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            return k.clamp(1, 64);
        }
    }
    std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(8)
}

/// Map `f` over `0..rows`, in parallel chunks, preserving index order.
pub fn par_map<T: Send, F: Fn(usize) -> T + Sync>(rows: usize, f: F) -> Vec<T> {
    let workers = thread_count().min(rows.max(1));
    if workers <= 1 || rows < 64 {
        return (0..rows).map(f).collect();
    }
    let chunk = rows.div_ceil(workers);
    let mut out: Vec<Option<T>> = (0..rows).map(|_| None).collect();
    let fref = &f;
    std::thread::scope(|scope| {
        let mut slices: Vec<&mut [Option<T>]> = out.chunks_mut(chunk).collect();
        let mut start = 0usize;
        let mut handles = Vec::new();
        for slice in slices.drain(..) {
            let begin = start;
            start += slice.len();
            handles.push(scope.spawn(move || {
                for (off, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(fref(begin + off));
                }
            }));
        }
        for h in handles {
            h.join().expect("worker panicked");
        }
    });
    out.into_iter().map(|v| v.expect("filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_matches_serial() {
        let serial: Vec<usize> = (0..1000).map(|i| i * i).collect();
        let parallel = par_map(1000, |i| i * i);
        assert_eq!(serial, parallel);
    }
}
