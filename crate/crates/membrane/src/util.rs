//! Small numeric helpers: deterministic summation and bounded parallelism.

/// Pairwise (cascade) summation over an ordered slice.
///
/// The reduction tree depends only on the length, so results are bit-stable
/// for a fixed cell order regardless of how the values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Number of worker threads to use, capped by the `MEMBRANE_THREADS`
/// environment variable when it is set.
pub fn thread_budget() -> usize {
    let hw = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("MEMBRANE_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .unwrap_or(hw)
            .min(hw.max(1)),
        Err(_) => hw,
    }
}

/// Memoized bivariate function. Quadrature grids revisit the same nodes
/// many times per integral (tensor cells share per-axis grids), so caching
/// by exact bit pattern removes almost all repeated evaluations. Values are
/// independent of insertion order, keeping results deterministic under
/// threaded evaluation.
pub struct Memo2<F> {
    f: F,
    map: std::sync::RwLock<std::collections::HashMap<(u64, u64), f64>>,
}

impl<F: Fn(f64, f64) -> f64 + Sync> Memo2<F> {
    pub fn new(f: F) -> Self {
        Memo2 {
            f,
            map: std::sync::RwLock::new(std::collections::HashMap::new()),
        }
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        let key = (a.to_bits(), b.to_bits());
        if let Some(hit) = self.map.read().expect("memo lock").get(&key) {
            return *hit;
        }
        let value = (self.f)(a, b);
        self.map.write().expect("memo lock").insert(key, value);
        value
    }
}

/// Apply `f` to every index in `0..n`, possibly on several threads, and
/// collect results in index order. Falls back to a sequential loop for
/// small workloads. `f` must be pure; output order is deterministic.
pub fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_budget().min(n.max(1));
    if threads <= 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for slot in out.chunks_mut(chunk).enumerate() {
            let (ci, slots) = slot;
            let f = &f;
            scope.spawn(move || {
                for (k, s) in slots.iter_mut().enumerate() {
                    *s = Some(f(ci * chunk + k));
                }
            });
        }
    });
    out.into_iter()
        .map(|s| s.expect("worker filled slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_benign_data() {
        let xs: Vec<f64> = (1..=100).map(|k| 1.0 / k as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn parallel_map_preserves_order() {
        let got = parallel_map(257, |i| i * i);
        let want: Vec<usize> = (0..257).map(|i| i * i).collect();
        assert_eq!(got, want);
    }
}
