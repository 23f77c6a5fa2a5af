//! Kauffman bracket `<D>` in the variable `A`.
//!
//! Smoothing convention at a tuple `(a, b, c, d)`: the A-smoothing joins
//! `a-b` and `c-d`, the B-smoothing joins `a-d` and `b-c`; a state with `k`
//! loops contributes `A^(#A - #B) (-A^2 - A^-2)^(k - 1)`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::InvariantError;
use crate::diagram::{Diagram, End};
use crate::poly::LaurentPoly;
use crate::unionfind::UnionFind;

/// Largest diagram the exhaustive state sum accepts.
pub const ORACLE_MAX_CROSSINGS: usize = 24;

/// Cap on live boundary states in the frontier evaluation.
const FRONTIER_STATE_LIMIT: usize = 2_000_000;

fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)]).unwrap()
}

/// Exhaustive sum over all `2^n` smoothing states.
pub fn bracket_oracle(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    bracket_oracle_partial(d, 0, 1)
}

/// Sum over the states `s` with `s % parts == part`. Summing the partial
/// results over `part in 0..parts` gives the full bracket for any `parts`.
pub fn bracket_oracle_partial(d: &Diagram, part: u64, parts: u64) -> Result<LaurentPoly, InvariantError> {
    let n = d.crossing_count();
    if n > ORACLE_MAX_CROSSINGS {
        return Err(InvariantError::Size { n, max: ORACLE_MAX_CROSSINGS });
    }
    if n == 0 {
        return Ok(if part == 0 { LaurentPoly::one() } else { LaurentPoly::zero() });
    }
    let tuples: Vec<[usize; 4]> = d.tuples().iter().map(|t| t.map(|l| l as usize - 1)).collect();
    let arcs = 2 * n;
    // hist[(#A - #B + n)][loops]
    let mut hist = vec![vec![0i64; arcs + 1]; 2 * n + 1];
    let mut state = part;
    let total = 1u64 << n;
    while state < total {
        let mut uf = UnionFind::new(arcs);
        let mut a_count = 0usize;
        for (i, t) in tuples.iter().enumerate() {
            if state >> i & 1 == 0 {
                uf.union(t[0], t[1]);
                uf.union(t[2], t[3]);
                a_count += 1;
            } else {
                uf.union(t[0], t[3]);
                uf.union(t[1], t[2]);
            }
        }
        let exp = 2 * a_count;
        hist[exp][uf.components()] += 1;
        state += parts;
    }
    let delta = delta();
    let mut total_poly = LaurentPoly::zero();
    for (i, row) in hist.iter().enumerate() {
        let a_exp = i as i32 - n as i32;
        let mut delta_pow = LaurentPoly::one();
        for &count in row.iter().skip(1) {
            if count != 0 {
                let term = delta_pow.checked_mul_monomial(count, a_exp)?;
                total_poly = total_poly.checked_add(&term)?;
            }
            delta_pow = delta_pow.checked_mul(&delta)?;
        }
    }
    Ok(total_poly)
}

/// Work counters for the frontier evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BracketStats {
    /// (boundary state, smoothing) pairs evaluated.
    pub state_evaluations: u64,
    /// Largest number of live boundary states after any step.
    pub peak_states: usize,
    /// Largest number of open arc ends after any step.
    pub peak_frontier: usize,
}

pub fn bracket_fast(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    bracket_fast_with_stats(d).map(|(p, _)| p)
}

/// Adds crossings one at a time, keeping for every way the open arc ends
/// can be connected through the processed part (a non-crossing matching)
/// the accumulated polynomial. Loops that close are absorbed immediately,
/// so the work depends on the frontier width rather than on `2^n`.
pub fn bracket_fast_with_stats(d: &Diagram) -> Result<(LaurentPoly, BracketStats), InvariantError> {
    let n = d.crossing_count();
    let mut stats = BracketStats::default();
    if n == 0 {
        return Ok((LaurentPoly::one(), stats));
    }
    let arcs = d.arc_count();
    // end id: 2 * arc + (0 tail | 1 head)
    let ends = 2 * arcs as usize;
    let mut loc = vec![(0usize, 0usize); ends];
    let mut slot_end = vec![[0usize; 4]; n];
    for (x, slots) in slot_end.iter_mut().enumerate() {
        for (p, s) in slots.iter_mut().enumerate() {
            let (arc, end) = d.slot(x, p);
            let e = 2 * arc as usize + (end == End::Head) as usize;
            *s = e;
            loc[e] = (x, p);
        }
    }

    let order = processing_order(d, &slot_end, &loc);
    let mut processed = vec![false; n];
    let mut boundary: Vec<usize> = Vec::new();
    let mut states: HashMap<(Vec<u16>, bool), LaurentPoly> = HashMap::new();
    states.insert((Vec::new(), false), LaurentPoly::one());
    let delta = delta();

    for &x in &order {
        processed[x] = true;
        let old_index = |e: usize, boundary: &[usize]| boundary.binary_search(&e).ok();
        let mut new_boundary: Vec<usize> = (0..ends)
            .filter(|&e| !processed[loc[e].0] && processed[loc[e ^ 1].0])
            .collect();
        new_boundary.sort_unstable();
        let mut next: HashMap<(Vec<u16>, bool), LaurentPoly> = HashMap::with_capacity(states.len() * 2);

        for ((matching, flag), poly) in &states {
            for (a_smoothing, pairing) in [(true, [1usize, 0, 3, 2]), (false, [3usize, 2, 1, 0])] {
                stats.state_evaluations += 1;
                let mut visited = [false; 4];
                // Walk from an end sitting at x until the path leaves x for an
                // unprocessed crossing; returns the new boundary end reached.
                let walk = |mut h: usize, visited: &mut [bool; 4]| -> usize {
                    loop {
                        let p = loc[h].1;
                        let q = pairing[p];
                        visited[p] = true;
                        visited[q] = true;
                        let h2 = slot_end[x][q];
                        let e2 = h2 ^ 1;
                        if loc[e2].0 == x {
                            h = e2;
                        } else if processed[loc[e2].0] && loc[e2].0 != x {
                            // h2 was an open end; jump through the processed part
                            let i = old_index(h2, &boundary).expect("open end");
                            let g = boundary[matching[i] as usize];
                            if loc[g].0 == x {
                                h = g;
                            } else {
                                return g;
                            }
                        } else {
                            return e2;
                        }
                    }
                };
                let mut partner = vec![u16::MAX; new_boundary.len()];
                for (bi, &b) in new_boundary.iter().enumerate() {
                    if partner[bi] != u16::MAX {
                        continue;
                    }
                    let e = b ^ 1;
                    let r = if loc[e].0 == x {
                        walk(e, &mut visited)
                    } else {
                        let i = old_index(b, &boundary).expect("open end");
                        let g = boundary[matching[i] as usize];
                        if loc[g].0 == x {
                            walk(g, &mut visited)
                        } else {
                            g
                        }
                    };
                    let ri = new_boundary.binary_search(&r).expect("boundary end");
                    partner[bi] = ri as u16;
                    partner[ri] = bi as u16;
                }
                // whatever is left at x closes into loops
                let mut loops = 0;
                for p in 0..4 {
                    if visited[p] {
                        continue;
                    }
                    loops += 1;
                    let start = p;
                    let mut h = slot_end[x][p];
                    loop {
                        let p = loc[h].1;
                        let q = pairing[p];
                        visited[p] = true;
                        visited[q] = true;
                        let h2 = slot_end[x][q];
                        let e2 = h2 ^ 1;
                        h = if loc[e2].0 == x {
                            e2
                        } else {
                            let i = old_index(h2, &boundary).expect("open end");
                            boundary[matching[i] as usize]
                        };
                        if loc[h].1 == start || visited[loc[h].1] {
                            break;
                        }
                    }
                }
                let mut poly = poly.checked_mul_monomial(1, if a_smoothing { 1 } else { -1 })?;
                let mut flag = *flag;
                for _ in 0..loops {
                    if flag {
                        poly = poly.checked_mul(&delta)?;
                    } else {
                        flag = true;
                    }
                }
                let slot = next.entry((partner, flag)).or_default();
                *slot = slot.checked_add(&poly)?;
            }
        }
        next.retain(|_, p| !p.is_zero());
        if next.len() > FRONTIER_STATE_LIMIT {
            return Err(InvariantError::Limit(FRONTIER_STATE_LIMIT));
        }
        stats.peak_states = stats.peak_states.max(next.len());
        stats.peak_frontier = stats.peak_frontier.max(new_boundary.len());
        states = next;
        boundary = new_boundary;
    }
    debug_assert!(boundary.is_empty());
    let result = states.remove(&(Vec::new(), true)).unwrap_or_default();
    Ok((result, stats))
}

/// Greedy order: next is the crossing with the most arc ends already joined
/// to processed crossings (ties to the lowest index).
fn processing_order(d: &Diagram, slot_end: &[[usize; 4]], loc: &[(usize, usize)]) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = (usize::MAX, 0usize);
        for x in (0..n).filter(|&x| !done[x]) {
            let links = slot_end[x].iter().filter(|&&e| done[loc[e ^ 1].0]).count();
            if best.0 == usize::MAX || links > best.1 {
                best = (x, links);
            }
        }
        done[best.0] = true;
        order.push(best.0);
    }
    order
}
