//! Thread-pool executor for the replication engine.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};
use selfaffine_core::montecarlo::Executor;

/// Runs replications on a dedicated rayon pool. Output order follows the
/// replication index, so results match [`selfaffine_core::montecarlo::Sequential`].
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `threads = 0` uses one thread per available core.
    pub fn new(threads: usize) -> Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Self { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn map_indices<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool
            .install(|| (0..n).into_par_iter().map(f).collect())
    }
}
