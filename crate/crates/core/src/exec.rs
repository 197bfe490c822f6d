use std::sync::Arc;

use rayon::prelude::*;

/// Environment variable capping enumeration threads; `0` means sequential.
pub const THREADS_ENV: &str = "HURWITZ_THREADS";

/// Where independent branches of a search are evaluated.
///
/// `map` always returns results in input order, so callers that merge into
/// ordered sets get identical output for every thread count.
#[derive(Clone, Default)]
pub enum Executor {
    #[default]
    Sequential,
    Pool(Arc<rayon::ThreadPool>),
}

impl Executor {
    pub fn with_threads(threads: usize) -> Executor {
        if threads == 0 {
            return Executor::Sequential;
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => Executor::Pool(Arc::new(pool)),
            Err(_) => Executor::Sequential,
        }
    }

    /// Reads `HURWITZ_THREADS`; unset or unparsable means sequential.
    pub fn from_env() -> Executor {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(0);
        Executor::with_threads(threads)
    }

    pub fn threads(&self) -> usize {
        match self {
            Executor::Sequential => 0,
            Executor::Pool(p) => p.current_num_threads(),
        }
    }

    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Executor::Sequential => items.iter().map(f).collect(),
            Executor::Pool(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Executor({} threads)", self.threads())
    }
}
