//! Deterministic fan-out over an index range.

use std::thread;

/// `f(0), ..., f(n - 1)` computed on up to `threads` scoped threads and
/// returned in index order, so reductions over the result do not depend on
/// the thread count.
pub fn par_map<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        return (0..n).map(&f).collect();
    }
    let f = &f;
    let mut parts: Vec<Vec<(usize, T)>> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|tid| s.spawn(move || (tid..n).step_by(threads).map(|i| (i, f(i))).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for part in parts.iter_mut() {
        for (i, v) in part.drain(..) {
            slots[i] = Some(v);
        }
    }
    slots.into_iter().map(|v| v.expect("every index computed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_thread_count() {
        let one = par_map(37, 1, |i| i * i);
        for t in [2, 3, 8, 64] {
            assert_eq!(par_map(37, t, |i| i * i), one);
        }
        assert!(par_map(0, 4, |i| i).is_empty());
    }
}
