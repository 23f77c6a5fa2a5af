//! Multi-worker versions of the exhaustive bracket and the change-set
//! search. Results are identical to the single-worker functions.

use knotcheck_core::certify::SearchLimits;
use knotcheck_core::invariants::{bracket_oracle_partial, unknotting_lower_bound, InvariantError};
use knotcheck_core::unknotting::{
    change_sets, evaluate_candidate, quick_limits, unknotting_upper, CandidateResult, ChangeSet, UnknottingReport,
    Witness,
};
use knotcheck_core::{bracket_oracle, Diagram, LaurentPoly};
use rayon::prelude::*;

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

pub fn bracket_oracle_jobs(d: &Diagram, jobs: usize) -> Result<LaurentPoly, InvariantError> {
    if jobs <= 1 {
        return bracket_oracle(d);
    }
    let parts = jobs as u64 * 4;
    let partials: Vec<_> =
        pool(jobs).install(|| (0..parts).into_par_iter().map(|p| bracket_oracle_partial(d, p, parts)).collect());
    let mut total = LaurentPoly::zero();
    for p in partials {
        total = total.checked_add(&p?)?;
    }
    Ok(total)
}

/// Evaluates `sets` in order-preserving batches; returns the first success
/// and the near misses seen before it.
fn first_success(
    pool: &rayon::ThreadPool,
    d: &Diagram,
    sets: &[ChangeSet],
    lim: &SearchLimits,
    near: &mut Vec<ChangeSet>,
) -> Option<Witness> {
    let batch = pool.current_num_threads() * 4;
    for chunk in sets.chunks(batch) {
        let results: Vec<CandidateResult> =
            pool.install(|| chunk.par_iter().map(|s| evaluate_candidate(d, s, lim)).collect());
        for (set, r) in chunk.iter().zip(results) {
            match r {
                CandidateResult::Unknot(certificate) => return Some(Witness { changes: set.clone(), certificate }),
                CandidateResult::NearMiss => near.push(set.clone()),
                CandidateResult::Knotted | CandidateResult::Failed => {}
            }
        }
    }
    None
}

pub fn unknotting_upper_jobs(d: &Diagram, k: usize, lim: &SearchLimits, jobs: usize) -> Option<Witness> {
    if jobs <= 1 {
        return unknotting_upper(d, k, lim);
    }
    let pool = pool(jobs);
    let quick = quick_limits(lim);
    let mut near = Vec::new();
    for size in 0..=k.min(d.crossing_count()) {
        let sets: Vec<ChangeSet> = change_sets(d.crossing_count(), size).collect();
        if let Some(w) = first_success(&pool, d, &sets, &quick, &mut near) {
            return Some(w);
        }
    }
    if quick == *lim {
        return None;
    }
    first_success(&pool, d, &near, lim, &mut Vec::new())
}

pub fn report_jobs(d: &Diagram, k: usize, lim: &SearchLimits, jobs: usize) -> Result<UnknottingReport, InvariantError> {
    let lower = unknotting_lower_bound(d)?;
    Ok(UnknottingReport::new(d, k, lower, unknotting_upper_jobs(d, k, lim, jobs)))
}
