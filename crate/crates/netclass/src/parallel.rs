//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over a rayon pool;
//! without it every call runs on the calling thread. Results are always
//! returned in input order, so output never depends on scheduling.

use std::ops::Range;

/// How to run a batch of independent jobs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Use up to this many workers; `0` means the rayon default.
    Parallel(usize),
    #[default]
    Auto,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel")
            && !matches!(self, Execution::Sequential | Execution::Parallel(1))
    }
}

/// `(start..end).map(job)` collected in order.
pub fn map_range<T, J>(exec: Execution, range: Range<u64>, job: J) -> Vec<T>
where
    T: Send,
    J: Fn(u64) -> T + Sync + Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        return with_pool(exec, || {
            use rayon::prelude::*;
            range.into_par_iter().map(&job).collect()
        });
    }
    range.map(job).collect()
}

/// `items.iter().map(job)` collected in order.
pub fn map_slice<S, T, J>(exec: Execution, items: &[S], job: J) -> Vec<T>
where
    S: Sync,
    T: Send,
    J: Fn(&S) -> T + Sync + Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        return with_pool(exec, || {
            use rayon::prelude::*;
            items.par_iter().map(&job).collect()
        });
    }
    items.iter().map(job).collect()
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(exec: Execution, op: impl FnOnce() -> R + Send) -> R {
    match exec {
        Execution::Parallel(n) if n > 0 => {
            match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(op),
                Err(_) => op(),
            }
        }
        _ => op(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let square = |i: u64| i * i;
        let seq = map_range(Execution::Sequential, 0..1000, square);
        assert_eq!(map_range(Execution::Auto, 0..1000, square), seq);
        assert_eq!(map_range(Execution::Parallel(3), 0..1000, square), seq);
        let items: Vec<u64> = (0..100).collect();
        assert_eq!(
            map_slice(Execution::Parallel(2), &items, |&i| i + 1),
            (1..101).collect::<Vec<_>>()
        );
    }
}
