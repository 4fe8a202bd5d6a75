//! Data-parallel exhaustive scans. Reductions are order-independent, so
//! results do not depend on the size of the thread pool.

use num_bigint::BigInt;
use rayon::prelude::*;

fn bump(mut h: Vec<u64>, k: usize) -> Vec<u64> {
    if h.len() <= k {
        h.resize(k + 1, 0);
    }
    h[k] += 1;
    h
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Number of items per value of `stat`, trailing zeros trimmed.
pub fn histogram<T: Sync>(items: &[T], stat: impl Fn(&T) -> usize + Sync + Send) -> Vec<BigInt> {
    items
        .par_iter()
        .fold(Vec::new, |h, x| bump(h, stat(x)))
        .reduce(Vec::new, merge)
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// Indices of the items failing `ok`, in input order.
pub fn failures<T: Sync>(items: &[T], ok: impl Fn(&T) -> bool + Sync + Send) -> Vec<usize> {
    items
        .par_iter()
        .enumerate()
        .filter(|(_, x)| !ok(x))
        .map(|(i, _)| i)
        .collect()
}
