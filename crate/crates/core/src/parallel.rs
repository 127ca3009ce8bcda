//! Index-ordered map over independent work items, on a local rayon pool or
//! sequentially when the `parallel` feature is off.

/// `f(0), …, f(count-1)` collected in index order. `jobs = 0` means the
/// rayon default.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    use rayon::prelude::*;
    if jobs == 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, _jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..count).map(f).collect()
}

/// Sequential reference, always available.
pub fn map_indexed_seq<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let a = map_indexed(100, 4, |i| i * i);
        let b = map_indexed_seq(100, |i| i * i);
        assert_eq!(a, b);
    }
}
