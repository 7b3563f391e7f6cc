//! Wall-clock budgets and the subtree-parallel existence search.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rsg_core::search::{
    BranchResult, Clock, ExistsSearch, SearchOptions, SearchOutcome, SharedProgress,
};

/// Time since construction, from `std::time::Instant`.
#[derive(Debug, Clone, Copy)]
pub struct WallClock {
    start: Instant,
}

impl WallClock {
    pub fn start() -> Self {
        WallClock {
            start: Instant::now(),
        }
    }
}

impl Clock for WallClock {
    fn elapsed(&self) -> Option<Duration> {
        Some(self.start.elapsed())
    }
}

/// `jobs = 0` means one worker per available core.
pub fn resolve_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map_or(1, NonZeroUsize::get)
    }
}

/// [`rsg_core::search::exists_rs`] with a wall clock and `jobs` workers.
///
/// Workers take top-level branches in index order. Verdicts match the
/// serial search whenever the budget is not exhausted, and SAT
/// certificates come from the lowest satisfiable branch, so they match too.
pub fn exists_rs_parallel(
    n: usize,
    r: usize,
    t: usize,
    options: &SearchOptions,
    jobs: usize,
) -> rsg_core::Result<SearchOutcome> {
    let clock = WallClock::start();
    let search = ExistsSearch::new(n, r, t, *options)?;
    let jobs = resolve_jobs(jobs).min(search.branch_count().max(1));
    if jobs <= 1 {
        return search.run(&clock);
    }
    let shared = SharedProgress::default();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<BranchResult>>> = Mutex::new(vec![None; search.branch_count()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= search.branch_count() {
                    break;
                }
                let res = search.run_branch(i, &shared, &clock);
                results.lock().expect("worker panicked")[i] = Some(res);
            });
        }
    });
    let results = results.into_inner().expect("worker panicked");
    search.combine(&results, &shared, &clock)
}
