//! Thread-parallel aggregation and annealing restarts.
//!
//! Work is split deterministically and merged in a fixed order, so results
//! are bit-identical for every thread count.

use std::num::NonZeroUsize;
use std::thread;

use convexcount_core::counting::{aggregate_partition, AggregateSums, CountingError};
use convexcount_core::search::{
    anneal_restart, merge_restarts, AnnealConfig, RestartOutcome, SearchError, SearchResult,
};
use convexcount_core::Placement;

/// Environment fallback for `--threads`.
pub const THREADS_ENV: &str = "GEO_THREADS";

/// `requested`, else a positive `GEO_THREADS`, else the available
/// parallelism.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    requested
        .filter(|&t| t > 0)
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .filter(|&t: &usize| t > 0)
        })
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// [`aggregate_regions`](convexcount_core::counting::aggregate_regions) on
/// `threads` workers; triangles are dealt out by their smallest index.
pub fn aggregate_parallel(p: &Placement, threads: usize) -> Result<AggregateSums, CountingError> {
    let parts = threads.clamp(1, p.len());
    if parts == 1 {
        return aggregate_partition(p, 0, 1);
    }
    let partials: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = (0..parts)
            .map(|part| s.spawn(move || aggregate_partition(p, part, parts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("aggregation worker panicked"))
            .collect()
    });
    let mut total = AggregateSums::empty(p.len());
    for partial in partials {
        total.merge(&partial?)?;
    }
    Ok(total)
}

/// [`minimize_pentagons`](convexcount_core::search::minimize_pentagons) with
/// restarts spread over `threads` workers.
pub fn minimize_parallel(cfg: &AnnealConfig, threads: usize) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let workers = threads.clamp(1, cfg.restarts as usize) as u32;
    let outcomes: Vec<Result<RestartOutcome, SearchError>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..cfg.restarts)
                        .step_by(workers as usize)
                        .map(|r| anneal_restart(cfg, r))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("annealing worker panicked"))
            .collect()
    });
    merge_restarts(cfg, outcomes.into_iter().collect::<Result<_, _>>()?)
}
