//! Parallel drivers. Branches run on a worker pool; a branch is cancelled only
//! when a lower-numbered branch has already succeeded, so the reported result
//! is always the one the sequential order would give.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use wallkit_core::contact::SymmetryOptions;
use wallkit_core::corona::{CoronaOptions, CoronaOutcome, CoronaSearch, CoronaStats, SurroundResult};
use wallkit_core::layout::ContactIndex;
use wallkit_core::shape::RealizedShape;
use wallkit_core::wall::{WallBounds, WallOutcome, WallSearch, WallSearchStats};

/// Runs `count` branches and returns the lowest-numbered success (if any)
/// together with the statistics of every branch.
pub fn first_success<O: Send, S: Send>(
    count: usize,
    jobs: usize,
    run: impl Fn(usize, &dyn Fn() -> bool) -> (Option<O>, S) + Sync,
) -> (Option<O>, Vec<S>) {
    if jobs <= 1 {
        let mut stats = Vec::new();
        let never = || false;
        for b in 0..count {
            let (o, s) = run(b, &never);
            stats.push(s);
            if o.is_some() {
                return (o, stats);
            }
        }
        return (None, stats);
    }
    let best = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("worker pool");
    let results: Vec<(Option<O>, S)> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|b| {
                if best.load(Ordering::Relaxed) < b {
                    let cancelled = || true;
                    return run(b, &cancelled);
                }
                let cancel = || best.load(Ordering::Relaxed) < b;
                let r = run(b, &cancel);
                if r.0.is_some() {
                    best.fetch_min(b, Ordering::Relaxed);
                }
                r
            })
            .collect()
    });
    let mut found = None;
    let mut stats = Vec::new();
    for (o, s) in results {
        stats.push(s);
        if found.is_none() {
            found = o;
        }
    }
    (found, stats)
}

pub fn find_wall_parallel(shape: &RealizedShape, t: usize, bounds: &WallBounds, opts: SymmetryOptions, jobs: usize) -> WallOutcome {
    let index = ContactIndex::new(shape, opts);
    let search = WallSearch::new(shape, &index, t, bounds.clone());
    let (found, stats) = first_success(search.branch_count(), jobs, |b, cancel| {
        let r = search.run_branch(b, cancel);
        (r.outcome, r.stats)
    });
    match found {
        Some(o) => o,
        None => {
            let mut total = WallSearchStats::default();
            for s in &stats {
                total.merge(s);
            }
            search.infeasible(total)
        }
    }
}

pub fn surround_parallel(shape: &RealizedShape, n: usize, opts: CoronaOptions, jobs: usize) -> SurroundResult {
    let index = ContactIndex::new(shape, opts.symmetry);
    surround_with_index(shape, &index, n, opts, jobs)
}

pub fn surround_with_index(shape: &RealizedShape, index: &ContactIndex, n: usize, opts: CoronaOptions, jobs: usize) -> SurroundResult {
    let search = CoronaSearch::new(shape, index, n, opts);
    let (found, stats): (Option<CoronaOutcome>, Vec<CoronaStats>) =
        first_success(search.branch_count(), jobs, |b, cancel| search.run_branch(b, cancel));
    match found {
        Some(o) => search.result(o),
        None => {
            let mut total = CoronaStats::default();
            for s in &stats {
                total.merge(s);
            }
            search.exhausted(total)
        }
    }
}
