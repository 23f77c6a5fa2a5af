//! Crossing-change search for upper bounds on the unknotting number, paired
//! with the signature lower bound.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certify::{certify_unknot, simplify_with_moves, Certificate, Outcome, SearchLimits, UnknownReason};
use crate::codec::canonical_code;
use crate::diagram::Diagram;
use crate::invariants::{unknotting_lower_bound, InvariantError};

/// Per-candidate node budget during the first pass.
pub const QUICK_NODES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChangeError {
    #[error("crossing index {index} out of range for {len} crossings")]
    Index { index: usize, len: usize },
    #[error("crossing index {0} listed twice")]
    Duplicate(usize),
}

/// Sorted distinct crossing indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChangeSet(Vec<usize>);

impl ChangeSet {
    pub fn new(mut indices: Vec<usize>, crossings: usize) -> Result<ChangeSet, ChangeError> {
        if let Some(&index) = indices.iter().find(|&&i| i >= crossings) {
            return Err(ChangeError::Index { index, len: crossings });
        }
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ChangeError::Duplicate(w[0]));
        }
        Ok(ChangeSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl core::fmt::Display for ChangeSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Changes every listed crossing. Crossing indices refer to `d` as given.
pub fn apply_changes(d: &Diagram, changes: &[usize]) -> Result<Diagram, ChangeError> {
    let set = ChangeSet::new(changes.to_vec(), d.crossing_count())?;
    let mut out = d.clone();
    for &i in set.indices() {
        out = out.crossing_change(i).expect("index checked");
    }
    Ok(out)
}

/// A change set together with a certificate for the changed diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub changes: ChangeSet,
    /// Starts at the changed diagram (before greedy simplification).
    pub certificate: Certificate,
}

/// Result of trying one change set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateResult {
    Unknot(Certificate),
    Knotted,
    /// Budget ran out; worth a retry with larger limits.
    NearMiss,
    Failed,
}

/// Changes, simplifies greedily, filters by Jones, then searches.
pub fn evaluate_candidate(d: &Diagram, changes: &ChangeSet, lim: &SearchLimits) -> CandidateResult {
    let changed = apply_changes(d, changes.indices()).expect("valid change set");
    let (simple, mut moves) = simplify_with_moves(&changed);
    match certify_unknot(&simple, lim) {
        Outcome::Certified(cert) => {
            moves.extend(cert.moves);
            CandidateResult::Unknot(Certificate { start: canonical_code(&changed), moves })
        }
        Outcome::Unknown(UnknownReason::KnottedByJones) => CandidateResult::Knotted,
        Outcome::Unknown(UnknownReason::NodeLimit) => CandidateResult::NearMiss,
        Outcome::Unknown(UnknownReason::Exhausted) => CandidateResult::Failed,
    }
}

/// Change sets of exactly `size` indices below `n`, in lexicographic order.
pub fn change_sets(n: usize, size: usize) -> impl Iterator<Item = ChangeSet> {
    let mut cur: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = size;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - size + i {
                    c[i] += 1;
                    for j in i + 1..size {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(ChangeSet(out))
    })
}

/// Limits used in the first pass over candidates.
pub fn quick_limits(lim: &SearchLimits) -> SearchLimits {
    SearchLimits { max_nodes: lim.max_nodes.min(QUICK_NODES), ..*lim }
}

/// Least change set (by size, then lexicographically) of size at most `k`
/// whose changed diagram certifies as unknotted. Candidates that hit the
/// quick node budget are retried with the full limits, in order, once
/// every candidate has been tried.
pub fn unknotting_upper(d: &Diagram, k: usize, lim: &SearchLimits) -> Option<Witness> {
    let quick = quick_limits(lim);
    let mut near = Vec::new();
    for size in 0..=k.min(d.crossing_count()) {
        for set in change_sets(d.crossing_count(), size) {
            match evaluate_candidate(d, &set, &quick) {
                CandidateResult::Unknot(certificate) => return Some(Witness { changes: set, certificate }),
                CandidateResult::NearMiss => near.push(set),
                CandidateResult::Knotted | CandidateResult::Failed => {}
            }
        }
    }
    if quick == *lim {
        return None;
    }
    near.into_iter().find_map(|set| match evaluate_candidate(d, &set, lim) {
        CandidateResult::Unknot(certificate) => Some(Witness { changes: set, certificate }),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknottingReport {
    pub code: String,
    pub lower: u32,
    pub upper: Option<Witness>,
    /// Change budget searched.
    pub k: usize,
    pub verdict: String,
}

impl UnknottingReport {
    pub fn new(d: &Diagram, k: usize, lower: u32, upper: Option<Witness>) -> UnknottingReport {
        let verdict = match &upper {
            Some(w) if w.changes.len() as u32 == lower => format!("{lower} ≤ u ≤ {lower} (u = {lower})"),
            Some(w) => format!("{lower} ≤ u ≤ {}", w.changes.len()),
            None => format!("{lower} ≤ u (no witness with at most {k} changes)"),
        };
        UnknottingReport { code: canonical_code(d), lower, upper, k, verdict }
    }
}

impl core::fmt::Display for UnknottingReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "diagram: {}", self.code)?;
        writeln!(f, "lower: {}", self.lower)?;
        match &self.upper {
            Some(w) => writeln!(f, "upper: {} via changes {}", w.changes.len(), w.changes)?,
            None => writeln!(f, "upper: none within {} changes", self.k)?,
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

pub fn report(d: &Diagram, k: usize, lim: &SearchLimits) -> Result<UnknottingReport, InvariantError> {
    let lower = unknotting_lower_bound(d)?;
    Ok(UnknottingReport::new(d, k, lower, unknotting_upper(d, k, lim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::replay;
    use crate::codec::parse_pd;
    use crate::diagram::torus_knot;
    use proptest::prelude::*;

    const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

    #[test]
    fn change_set_errors() {
        assert_eq!(ChangeSet::new(alloc::vec![3], 3), Err(ChangeError::Index { index: 3, len: 3 }));
        assert_eq!(ChangeSet::new(alloc::vec![1, 0, 1], 3), Err(ChangeError::Duplicate(1)));
        assert_eq!(ChangeSet::new(alloc::vec![2, 0], 3).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(change_sets(7, 3).count(), 35);
        assert_eq!((0..=3).map(|s| change_sets(7, s).count()).sum::<usize>(), 64);
        assert_eq!(change_sets(3, 0).collect::<Vec<_>>(), alloc::vec![ChangeSet(Vec::new())]);
        assert_eq!(change_sets(2, 3).count(), 0);
        let sets: Vec<ChangeSet> = change_sets(5, 2).collect();
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sets[0].indices(), &[0, 1]);
    }

    #[test]
    fn empty_changes_are_identity() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(apply_changes(&t, &[]).unwrap(), t);
    }

    #[test]
    fn trefoil_needs_one() {
        let t = parse_pd(TREFOIL).unwrap();
        let w = unknotting_upper(&t, 1, &SearchLimits::default()).unwrap();
        assert_eq!(w.changes.indices(), &[0]);
        let changed = apply_changes(&t, w.changes.indices()).unwrap();
        assert!(replay(&changed, &w.certificate));
        let r = report(&torus_knot(3).unwrap(), 1, &SearchLimits::default()).unwrap();
        assert_eq!((r.lower, r.upper.as_ref().map(|w| w.changes.len())), (1, Some(1)));
        assert_eq!(r.verdict, "1 ≤ u ≤ 1 (u = 1)");
    }

    #[test]
    fn torus_seven_needs_three() {
        let t = torus_knot(7).unwrap();
        assert!(unknotting_upper(&t, 1, &SearchLimits::default()).is_none());
        let r = report(&t, 3, &SearchLimits::default()).unwrap();
        assert_eq!(r.lower, 3);
        let w = r.upper.as_ref().unwrap();
        assert_eq!(w.changes.len(), 3);
        assert!(replay(&apply_changes(&t, w.changes.indices()).unwrap(), &w.certificate));
        assert_eq!(r.verdict, "3 ≤ u ≤ 3 (u = 3)");
    }

    #[test]
    fn unknot_report() {
        let r = report(&Diagram::unknot(), 0, &SearchLimits::default()).unwrap();
        assert_eq!((r.lower, r.upper.map(|w| w.changes.len())), (0, Some(0)));
    }

    #[test]
    fn upper_never_below_lower() {
        for n in [3, 5, 7] {
            let t = torus_knot(n).unwrap();
            let lower = unknotting_lower_bound(&t).unwrap() as usize;
            if let Some(w) = unknotting_upper(&t, lower, &SearchLimits::default()) {
                assert!(w.changes.len() >= lower);
            }
        }
    }

    proptest! {
        #[test]
        fn changes_involutive_and_order_free(seed in 0u64..300, picks in proptest::collection::vec(0usize..64, 0..6)) {
            let d = crate::moves::random_diagram(seed, 9);
            let n = d.crossing_count();
            prop_assume!(n > 0);
            let mut set: Vec<usize> = picks.iter().map(|p| p % n).collect();
            set.sort_unstable();
            set.dedup();
            let once = apply_changes(&d, &set).unwrap();
            prop_assert_eq!(apply_changes(&once, &set).unwrap(), d.clone());
            let mut rev = set.clone();
            rev.reverse();
            prop_assert_eq!(apply_changes(&d, &rev).unwrap(), once.clone());
            prop_assert_eq!(once.faces().len(), n + 2);
        }
    }
}
