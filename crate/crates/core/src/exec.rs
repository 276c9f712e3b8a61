// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it the same calls run sequentially. Results are
//! always returned in input order.

/// Splits `[lo, hi)` into at most `parts` contiguous, nonempty chunks.
pub fn split_range(lo: u64, hi: u64, parts: usize) -> Vec<(u64, u64)> {
    if hi <= lo {
        return Vec::new();
    }
    let parts = parts.max(1) as u64;
    let len = hi - lo;
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = lo;
    for i in 0..parts {
        let size = base + u64::from(i < extra);
        if size == 0 {
            continue;
        }
        out.push((start, start + size));
        start += size;
    }
    out
}

#[cfg(feature = "parallel")]
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    rayon::join(a, b)
}

#[cfg(not(feature = "parallel"))]
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    (a(), b())
}

/// Worker count a caller might reasonably ask for.
pub fn available_parallelism() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
