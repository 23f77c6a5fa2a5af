//! Knot signature from a Goeritz matrix with the Gordon–Litherland
//! correction.
//!
//! Faces are checkerboard colored. At crossing `x` the quadrant between
//! slots `p` and `p + 1` is `q_p`; `q_1` and `q_3` are the regions swept when
//! the over-strand turns counterclockwise. With the white quadrants at `x`:
//!
//! * `eta(x) = -1` if the white quadrants are `q_1, q_3`, else `+1`;
//! * the Goeritz matrix over white faces has `G[i][j] = -sum eta` over
//!   crossings joining faces `i != j`, rows summing to zero, and one row and
//!   column (the anchor face) removed;
//! * a crossing is of type II when the oriented smoothing merges its black
//!   quadrants (`q_1, q_3` for positive crossings, `q_0, q_2` for negative);
//!   `mu` is the sum of `eta` over type II crossings;
//! * `sigma = sig(G) - mu`.
//!
//! With these conventions positive knots have negative signature
//! (`sigma = -2` for the positive trefoil).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use super::InvariantError;
use crate::diagram::{Diagram, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzData {
    /// Symmetric matrix over the white faces minus the anchor.
    pub matrix: Vec<Vec<i64>>,
    /// Face ids (see [`Diagram::faces`]) indexing the matrix rows.
    pub white_faces: Vec<usize>,
    /// Face removed from the matrix.
    pub anchor: usize,
    pub matrix_signature: i32,
    pub mu: i32,
    pub sigma: i32,
}

/// Goeritz data with the face on the right of arc label 1 colored white and
/// used as anchor. Errors on the 0-crossing diagram, whose signature is 0.
pub fn signature(d: &Diagram) -> Result<GoeritzData, InvariantError> {
    if d.crossing_count() == 0 {
        return Err(InvariantError::Degenerate);
    }
    let anchor = d.faces().right_of(0);
    goeritz_anchored(d, anchor)
}

/// The signature as a number; 0 for the 0-crossing diagram.
pub fn knot_signature(d: &Diagram) -> Result<i32, InvariantError> {
    match signature(d) {
        Ok(g) => Ok(g.sigma),
        Err(InvariantError::Degenerate) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Goeritz data for the coloring in which face `anchor` is white, with that
/// face dropped from the matrix. Any anchor gives the same `sigma`.
pub fn goeritz_anchored(d: &Diagram, anchor: usize) -> Result<GoeritzData, InvariantError> {
    if d.crossing_count() == 0 {
        return Err(InvariantError::Degenerate);
    }
    let faces = d.faces();
    let nf = faces.len();
    // color[f] == true means white
    let mut color: Vec<Option<bool>> = vec![None; nf];
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for a in 0..d.arc_count() {
        let (l, r) = (faces.left_of(a), faces.right_of(a));
        neighbours[l].push(r);
        neighbours[r].push(l);
    }
    color[anchor] = Some(true);
    let mut queue = VecDeque::from([anchor]);
    while let Some(f) = queue.pop_front() {
        let c = color[f].unwrap();
        for &g in &neighbours[f] {
            match color[g] {
                None => {
                    color[g] = Some(!c);
                    queue.push_back(g);
                }
                Some(cg) => debug_assert_ne!(cg, c, "faces are not 2-colorable"),
            }
        }
    }

    let white: Vec<usize> = (0..nf).filter(|&f| color[f] == Some(true) && f != anchor).collect();
    let index = |f: usize| white.iter().position(|&w| w == f);
    let m = white.len();
    let mut full = vec![vec![0i64; m + 1]; m + 1];
    // row m stands for the anchor
    let row = |f: usize| index(f).unwrap_or(m);
    let mut mu = 0i32;
    for (x, c) in d.crossings().iter().enumerate() {
        let q: [usize; 4] = core::array::from_fn(|p| faces.face_of(d.dart_from_slot(x, p)));
        let white_odd = color[q[1]] == Some(true);
        let eta: i64 = if white_odd { -1 } else { 1 };
        let (w1, w2) = if white_odd { (q[1], q[3]) } else { (q[0], q[2]) };
        if w1 != w2 {
            let (i, j) = (row(w1), row(w2));
            full[i][j] -= eta;
            full[j][i] -= eta;
        }
        let merged_odd = c.sign() == Sign::Positive;
        let type_two = merged_odd != white_odd;
        if type_two {
            mu += eta as i32;
        }
    }
    for i in 0..=m {
        let off: i64 = (0..=m).filter(|&j| j != i).map(|j| full[i][j]).sum();
        full[i][i] = -off;
    }
    let matrix: Vec<Vec<i64>> = full.into_iter().take(m).map(|r| r.into_iter().take(m).collect()).collect();
    let matrix_signature = symmetric_signature(&matrix)?;
    Ok(GoeritzData { matrix, white_faces: white, anchor, matrix_signature, mu, sigma: matrix_signature - mu })
}

/// Signature (positive minus negative eigenvalue count) of a symmetric
/// integer matrix by exact congruence diagonalization over the rationals.
pub(crate) fn symmetric_signature(m: &[Vec<i64>]) -> Result<i32, InvariantError> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> =
        m.iter().map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect()).collect();
    let mut sig = 0i32;
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // zero diagonal: add row/col j to row/col i where a[i][j] != 0
                let Some((i, j)) = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                for c in 0..n {
                    let v = a[j][c];
                    a[i][c] = a[i][c].checked_add(&v).ok_or(InvariantError::Overflow)?;
                }
                for r in 0..n {
                    let v = a[r][j];
                    a[r][i] = a[r][i].checked_add(&v).ok_or(InvariantError::Overflow)?;
                }
                i
            }
        };
        a.swap(k, pivot);
        for r in a.iter_mut() {
            r.swap(k, pivot);
        }
        let p = a[k][k];
        sig += if p.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].checked_div(&p).ok_or(InvariantError::Overflow)?;
            for j in k..n {
                let t = f.checked_mul(&a[k][j]).ok_or(InvariantError::Overflow)?;
                a[i][j] = a[i][j].checked_sub(&t).ok_or(InvariantError::Overflow)?;
            }
        }
        // the matching column operations only clear row k
        for i in k + 1..n {
            debug_assert!(a[i][k].is_zero());
            a[k][i] = Ratio::zero();
        }
        k += 1;
    }
    Ok(sig)
}
