//! Order-preserving parallel evaluation of parameter grids.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Evaluates `f` on every grid point concurrently and returns the results in
/// grid order. The first error in grid order wins.
pub fn par_map<T, R, F>(grid: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    let out: Vec<Result<R>> = grid.par_iter().map(&f).collect();
    out.into_iter().collect()
}

/// Runs `op` on a dedicated pool of `threads` workers (`0` means the number
/// of available cores).
pub fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(op))
}
