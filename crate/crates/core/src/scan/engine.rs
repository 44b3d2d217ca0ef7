//! Chunked enumeration of `P^(n-1)(F_p)`, run on a rayon pool or inline.
//! Results come back in chunk order, so merges are deterministic whatever the
//! worker count.

use super::proj::{strata, stratum_point};

const CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug)]
pub struct Chunk {
    pub lead: usize,
    pub start: u64,
    pub end: u64,
}

impl Chunk {
    /// Calls `f` on every canonical point of the chunk, in order.
    pub fn for_each(&self, p: u32, n: usize, mut f: impl FnMut(&[u32])) {
        let mut v = vec![0; n];
        for i in self.start..self.end {
            stratum_point(p, n, self.lead, i, &mut v);
            f(&v);
        }
    }
}

pub fn chunks(p: u32, n: usize) -> Vec<Chunk> {
    let mut out = Vec::new();
    for (lead, size) in strata(p, n) {
        let mut s = 0;
        while s < size {
            let e = (s + CHUNK).min(size);
            out.push(Chunk {
                lead,
                start: s,
                end: e,
            });
            s = e;
        }
    }
    out
}

/// Maps `f` over `items`, preserving order. `workers == 1` (or a build
/// without the `parallel` feature) runs sequentially; `0` means one worker
/// per available core.
pub fn map_ordered<I, T, F>(items: &[I], workers: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers != 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("thread pool");
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    items.iter().map(f).collect()
}

/// Number of workers actually used for a request.
pub fn effective_workers(workers: usize) -> usize {
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            return rayon::current_num_threads();
        }
        workers
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::proj::{projective_count, projective_points};

    #[test]
    fn chunks_cover_the_space_in_order() {
        let mut seen = Vec::new();
        for c in chunks(7, 5) {
            c.for_each(7, 5, |v| seen.push(v.to_vec()));
        }
        assert_eq!(seen.len() as u64, projective_count(7, 5));
        assert_eq!(seen, projective_points(7, 5).collect::<Vec<_>>());
    }

    #[test]
    fn ordered_map_is_worker_independent() {
        let items: Vec<u64> = (0..100).collect();
        let a = map_ordered(&items, 1, |x| x * x);
        let b = map_ordered(&items, 4, |x| x * x);
        assert_eq!(a, b);
    }
}
