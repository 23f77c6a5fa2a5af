//! Knot diagrams as planar diagram codes.
//!
//! A diagram with `n` crossings has `2n` arcs, numbered `0..2n` internally
//! (labels `1..=2n` in PD text) so that arc `k` is followed by arc `k + 1`
//! along the orientation. The knot passes through crossings `2n` times; pass
//! `k` enters on arc `k` and leaves on arc `k + 1`. A crossing is therefore
//! fully described by its under pass, its over pass and its sign, and the PD
//! tuple (counterclockwise from the incoming under-strand) is derived:
//!
//! ```text
//! positive: (u, o+1, u+1, o)    over-strand runs d -> b
//! negative: (u, o, u+1, o+1)    over-strand runs b -> d
//! ```
//!
//! Slot positions 0..4 are the tuple positions; position 0 holds the head of
//! the incoming under arc.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc label {label} appears {count} times (expected 2)")]
    Pairing { label: u32, count: usize },
    #[error("code has {components} components (expected a single knot)")]
    MultiComponent { components: usize },
    #[error("inconsistent strand orientation at crossing {crossing}")]
    Orientation { crossing: usize },
    #[error("rotation system has {faces} faces (a planar diagram needs {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("crossing index {index} out of range for {len} crossings")]
    CrossingIndex { index: usize, len: usize },
    #[error("arc label {arc} out of range 1..={max}")]
    Arc { arc: u32, max: u32 },
    #[error("torus knot parameter must be odd and positive, got {0}")]
    Parity(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Positive { "+" } else { "-" })
    }
}

/// One crossing: the pass that goes under, the pass that goes over, and the
/// crossing sign (which fixes the rotation system).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub(crate) under: u32,
    pub(crate) over: u32,
    pub(crate) sign: Sign,
}

impl Crossing {
    pub fn under_pass(&self) -> u32 {
        self.under
    }

    pub fn over_pass(&self) -> u32 {
        self.over
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Zero-based arc in each slot, counterclockwise from the incoming
    /// under-strand.
    pub(crate) fn slot_arcs(&self, arcs: u32) -> [u32; 4] {
        let u = self.under;
        let o = self.over;
        let (u1, o1) = ((u + 1) % arcs, (o + 1) % arcs);
        match self.sign {
            Sign::Positive => [u, o1, u1, o],
            Sign::Negative => [u, o, u1, o1],
        }
    }

    /// PD tuple with one-based labels.
    pub fn tuple(&self, arcs: u32) -> [u32; 4] {
        self.slot_arcs(arcs).map(|a| a + 1)
    }

    /// Slot holding the incoming over-strand.
    pub(crate) fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }
}

/// Which end of an arc sits in a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum End {
    Tail,
    Head,
}

/// A directed side of an arc. `2k` runs along arc `k` with the orientation
/// (its left side), `2k + 1` runs against it (the right side of arc `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub u32);

impl Dart {
    pub fn forward(arc: u32) -> Dart {
        Dart(2 * arc)
    }

    pub fn backward(arc: u32) -> Dart {
        Dart(2 * arc + 1)
    }

    pub fn arc(self) -> u32 {
        self.0 / 2
    }

    pub fn is_forward(self) -> bool {
        self.0 % 2 == 0
    }
}

/// Face structure of a diagram. Face ids follow the smallest dart on each
/// boundary, so they are deterministic for a given labeling.
#[derive(Debug, Clone)]
pub struct Faces {
    boundaries: Vec<Vec<Dart>>,
    face_of: Vec<u32>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Darts of face `f` in boundary order (each with the face on its left).
    pub fn boundary(&self, f: usize) -> &[Dart] {
        &self.boundaries[f]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Dart]> {
        self.boundaries.iter().map(|b| b.as_slice())
    }

    pub fn face_of(&self, dart: Dart) -> usize {
        self.face_of[dart.0 as usize] as usize
    }

    pub fn left_of(&self, arc: u32) -> usize {
        self.face_of(Dart::forward(arc))
    }

    pub fn right_of(&self, arc: u32) -> usize {
        self.face_of(Dart::backward(arc))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// Crossing index of each pass.
    pass_at: Vec<u32>,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", crate::codec::emit_pd(self))
    }
}

impl Diagram {
    /// The 0-crossing diagram.
    pub fn unknot() -> Diagram {
        Diagram { crossings: Vec::new(), pass_at: Vec::new() }
    }

    /// Builds a diagram from crossings given by pass indices and signs,
    /// checking pairing and planarity.
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Diagram, DiagramError> {
        let arcs = 2 * crossings.len();
        let mut pass_at = vec![u32::MAX; arcs];
        for (x, c) in crossings.iter().enumerate() {
            for p in [c.under, c.over] {
                let slot = pass_at.get_mut(p as usize).ok_or(DiagramError::Pairing { label: p + 1, count: 1 })?;
                if *slot != u32::MAX {
                    return Err(DiagramError::Pairing { label: p + 1, count: 3 });
                }
                *slot = x as u32;
            }
        }
        let d = Diagram { crossings, pass_at };
        d.check_planar()?;
        Ok(d)
    }

    /// Unchecked constructor for callers that preserve planarity by
    /// construction (moves, sums). Debug builds still verify.
    pub(crate) fn from_crossings_trusted(crossings: Vec<Crossing>) -> Diagram {
        let mut pass_at = vec![0u32; 2 * crossings.len()];
        for (x, c) in crossings.iter().enumerate() {
            pass_at[c.under as usize] = x as u32;
            pass_at[c.over as usize] = x as u32;
        }
        let d = Diagram { crossings, pass_at };
        debug_assert!(d.check_planar().is_ok(), "non-planar result: {d:?}");
        d
    }

    /// Builds a diagram from PD tuples with arbitrary positive labels. The
    /// orientation is read off the under-strands (position 0 enters, position
    /// 2 leaves); arcs are renumbered along it, starting from the smallest
    /// input label.
    pub fn from_pd_tuples(tuples: &[[u32; 4]]) -> Result<Diagram, DiagramError> {
        if tuples.is_empty() {
            return Ok(Diagram::unknot());
        }
        let n = tuples.len();
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                occ.entry(l).or_default().push((x, p));
            }
        }
        if let Some((&label, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::Pairing { label, count: v.len() });
        }
        let partner = |x: usize, p: usize| -> (usize, usize) {
            let v = &occ[&tuples[x][p]];
            if v[0] == (x, p) {
                v[1]
            } else {
                v[0]
            }
        };

        let mut visited = vec![[false; 4]; n];
        // (crossing, entry slot, label of the incoming arc)
        let mut passes: Vec<(usize, usize, u32)> = Vec::with_capacity(2 * n);
        let (mut x, mut p) = (0usize, 0usize);
        loop {
            let exit = match p {
                0 => 2,
                1 | 3 => p ^ 2,
                _ => return Err(DiagramError::Orientation { crossing: x }),
            };
            if visited[x][p] || visited[x][exit] {
                return Err(DiagramError::Orientation { crossing: x });
            }
            visited[x][p] = true;
            visited[x][exit] = true;
            passes.push((x, p, tuples[x][p]));
            (x, p) = partner(x, exit);
            if (x, p) == (0, 0) {
                break;
            }
        }
        if passes.len() != 2 * n {
            let components = count_components(tuples, &occ);
            return Err(DiagramError::MultiComponent { components: components.max(2) });
        }

        let arcs = (2 * n) as u32;
        let start = passes.iter().enumerate().min_by_key(|(_, (_, _, l))| *l).map(|(i, _)| i).unwrap();
        let mut under = vec![u32::MAX; n];
        let mut over = vec![(u32::MAX, Sign::Positive); n];
        for (i, &(x, p, _)) in passes.iter().enumerate() {
            let k = ((i + passes.len() - start) % passes.len()) as u32;
            match p {
                0 => under[x] = k,
                3 => over[x] = (k, Sign::Positive),
                _ => over[x] = (k, Sign::Negative),
            }
        }
        let crossings = (0..n)
            .map(|x| Crossing { under: under[x], over: over[x].0, sign: over[x].1 })
            .collect::<Vec<_>>();
        debug_assert!(crossings.iter().all(|c| c.under < arcs && c.over < arcs));
        let d = Diagram::from_crossings_unplanar(crossings);
        d.check_planar()?;
        Ok(d)
    }

    fn from_crossings_unplanar(crossings: Vec<Crossing>) -> Diagram {
        let mut pass_at = vec![0u32; 2 * crossings.len()];
        for (x, c) in crossings.iter().enumerate() {
            pass_at[c.under as usize] = x as u32;
            pass_at[c.over as usize] = x as u32;
        }
        Diagram { crossings, pass_at }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    /// PD tuples with one-based labels, in crossing order.
    pub fn tuples(&self) -> Vec<[u32; 4]> {
        let arcs = self.arc_count();
        self.crossings.iter().map(|c| c.tuple(arcs)).collect()
    }

    /// Crossing index of pass `k`.
    pub fn crossing_of_pass(&self, k: u32) -> usize {
        self.pass_at[k as usize] as usize
    }

    /// Whether pass `k` is the over pass of its crossing.
    pub fn pass_is_over(&self, k: u32) -> bool {
        self.crossings[self.pass_at[k as usize] as usize].over == k
    }

    pub(crate) fn prev_arc(&self, k: u32) -> u32 {
        (k + self.arc_count() - 1) % self.arc_count()
    }

    /// Slot holding the tail of arc `k` (where pass `k - 1` leaves).
    pub(crate) fn tail_slot(&self, k: u32) -> (usize, usize) {
        let pass = self.prev_arc(k);
        let x = self.pass_at[pass as usize] as usize;
        let c = &self.crossings[x];
        if c.under == pass {
            (x, 2)
        } else {
            (x, c.over_in_slot() ^ 2)
        }
    }

    /// Slot holding the head of arc `k` (where pass `k` enters).
    pub(crate) fn head_slot(&self, k: u32) -> (usize, usize) {
        let x = self.pass_at[k as usize] as usize;
        let c = &self.crossings[x];
        if c.under == k {
            (x, 0)
        } else {
            (x, c.over_in_slot())
        }
    }

    /// Arc and arc end held by a slot.
    pub(crate) fn slot(&self, x: usize, p: usize) -> (u32, End) {
        let c = &self.crossings[x];
        let arc = c.slot_arcs(self.arc_count())[p];
        let end = if p == 0 || p == c.over_in_slot() { End::Head } else { End::Tail };
        (arc, end)
    }

    /// Dart leaving a crossing through a slot.
    pub(crate) fn dart_from_slot(&self, x: usize, p: usize) -> Dart {
        match self.slot(x, p) {
            (a, End::Tail) => Dart::forward(a),
            (a, End::Head) => Dart::backward(a),
        }
    }

    fn dart_end(&self, d: Dart) -> (usize, usize) {
        if d.is_forward() {
            self.head_slot(d.arc())
        } else {
            self.tail_slot(d.arc())
        }
    }

    /// Crossing at which a dart starts.
    pub(crate) fn dart_start(&self, d: Dart) -> (usize, usize) {
        if d.is_forward() {
            self.tail_slot(d.arc())
        } else {
            self.head_slot(d.arc())
        }
    }

    /// Traces the faces of the rotation system. Each face is the cycle of
    /// darts keeping it on their left.
    pub fn faces(&self) -> Faces {
        if self.crossings.is_empty() {
            return Faces { boundaries: vec![vec![Dart(0)], vec![Dart(1)]], face_of: vec![0, 1] };
        }
        let darts = 2 * self.arc_count() as usize;
        let mut face_of = vec![u32::MAX; darts];
        let mut boundaries = Vec::new();
        for start in 0..darts {
            if face_of[start] != u32::MAX {
                continue;
            }
            let id = boundaries.len() as u32;
            let mut boundary = Vec::new();
            let mut d = Dart(start as u32);
            while face_of[d.0 as usize] == u32::MAX {
                face_of[d.0 as usize] = id;
                boundary.push(d);
                let (x, p) = self.dart_end(d);
                d = self.dart_from_slot(x, (p + 3) % 4);
            }
            boundaries.push(boundary);
        }
        Faces { boundaries, face_of }
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let faces = self.faces().len();
        let expected = self.crossings.len() + 2;
        if faces != expected {
            return Err(DiagramError::NonPlanar { faces, expected });
        }
        Ok(())
    }

    /// Checks pairing, single component and planarity.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut seen = vec![0usize; self.pass_at.len()];
        for c in &self.crossings {
            for p in [c.under, c.over] {
                match seen.get_mut(p as usize) {
                    Some(s) => *s += 1,
                    None => return Err(DiagramError::Pairing { label: p + 1, count: 1 }),
                }
            }
        }
        if let Some(k) = seen.iter().position(|s| *s != 1) {
            return Err(DiagramError::Pairing { label: k as u32 + 1, count: seen[k] + 1 });
        }
        self.check_planar()
    }

    pub fn sign(&self, i: usize) -> Result<Sign, DiagramError> {
        self.crossings
            .get(i)
            .map(|c| c.sign)
            .ok_or(DiagramError::CrossingIndex { index: i, len: self.crossings.len() })
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Mirror image: every crossing changed. Arc labels and crossing order
    /// are kept.
    pub fn mirror(&self) -> Diagram {
        let crossings = self.crossings.iter().map(|c| switched(*c)).collect();
        Diagram { crossings, pass_at: self.pass_at.clone() }
    }

    /// Swaps over and under at crossing `i`.
    pub fn crossing_change(&self, i: usize) -> Result<Diagram, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::CrossingIndex { index: i, len: self.crossings.len() });
        }
        let mut d = self.clone();
        d.crossings[i] = switched(d.crossings[i]);
        Ok(d)
    }

    /// Removes the given crossings (both passes each) and renumbers the
    /// remaining passes in order. Used for R1/R2 removals.
    pub(crate) fn delete_crossings(&self, doomed: &[usize]) -> Diagram {
        let arcs = self.arc_count() as usize;
        let mut removed = vec![false; arcs];
        for &x in doomed {
            let c = &self.crossings[x];
            removed[c.under as usize] = true;
            removed[c.over as usize] = true;
        }
        let mut new_index = vec![0u32; arcs];
        let mut next = 0u32;
        for k in 0..arcs {
            new_index[k] = next;
            if !removed[k] {
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(x, _)| !doomed.contains(x))
            .map(|(_, c)| Crossing { under: new_index[c.under as usize], over: new_index[c.over as usize], sign: c.sign })
            .collect();
        Diagram::from_crossings_trusted(crossings)
    }

    /// Inserts new passes into arcs. `insertions[k]` lists, in order along
    /// arc `k`, pairs of (new crossing id, is-over). New crossing `j` gets
    /// sign `signs[j]` and is appended after the existing crossings.
    pub(crate) fn insert_passes(&self, insertions: &[(u32, Vec<(usize, bool)>)], signs: &[Sign]) -> Diagram {
        let arcs = self.arc_count().max(1) as usize;
        let mut on_arc: Vec<Vec<(usize, bool)>> = vec![Vec::new(); arcs];
        for (arc, list) in insertions {
            on_arc[*arc as usize].extend_from_slice(list);
        }
        let old_n = self.crossings.len();
        let mut under = vec![u32::MAX; old_n + signs.len()];
        let mut over = vec![u32::MAX; old_n + signs.len()];
        let mut next = 0u32;
        for k in 0..arcs {
            // passes inserted on arc k come before old pass k
            for &(j, is_over) in &on_arc[k] {
                let slot = if is_over { &mut over } else { &mut under };
                slot[old_n + j] = next;
                next += 1;
            }
            if old_n > 0 {
                let x = self.pass_at[k] as usize;
                if self.crossings[x].under == k as u32 {
                    under[x] = next;
                } else {
                    over[x] = next;
                }
                next += 1;
            }
        }
        let crossings = (0..old_n + signs.len())
            .map(|x| Crossing {
                under: under[x],
                over: over[x],
                sign: if x < old_n { self.crossings[x].sign } else { signs[x - old_n] },
            })
            .collect();
        Diagram::from_crossings_trusted(crossings)
    }

    /// Replaces crossings wholesale (R3). The caller guarantees planarity.
    pub(crate) fn with_crossings(crossings: Vec<Crossing>) -> Diagram {
        Diagram::from_crossings_trusted(crossings)
    }

    /// Relabels arcs by `k -> (k - shift) mod 2n`, optionally reversing the
    /// orientation first. Crossing order is kept.
    pub fn relabeled(&self, shift: u32, reverse: bool) -> Diagram {
        let arcs = self.arc_count();
        if arcs == 0 {
            return self.clone();
        }
        let map = |p: u32| -> u32 {
            let p = if reverse { (2 * arcs - 1 - p) % arcs } else { p };
            (p + arcs - shift % arcs) % arcs
        };
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { under: map(c.under), over: map(c.over), sign: c.sign })
            .collect();
        Diagram::from_crossings_unplanar(crossings)
    }
}

fn switched(c: Crossing) -> Crossing {
    Crossing { under: c.over, over: c.under, sign: c.sign.flipped() }
}

fn count_components(tuples: &[[u32; 4]], occ: &BTreeMap<u32, Vec<(usize, usize)>>) -> usize {
    // strands: a-c and b-d at every crossing, joined along equal labels
    let mut uf = crate::unionfind::UnionFind::new(tuples.len() * 4);
    let id = |x: usize, p: usize| x * 4 + p;
    for x in 0..tuples.len() {
        uf.union(id(x, 0), id(x, 2));
        uf.union(id(x, 1), id(x, 3));
    }
    for v in occ.values() {
        uf.union(id(v[0].0, v[0].1), id(v[1].0, v[1].1));
    }
    uf.components()
}

/// Connected sum: cuts arc `a1` of `d1` and arc `a2` of `d2` (one-based
/// labels) and splices them respecting orientation. Crossings of `d1` come
/// first. The 0-crossing diagram has the single arc label 1.
pub fn connected_sum(d1: &Diagram, a1: u32, d2: &Diagram, a2: u32) -> Result<Diagram, DiagramError> {
    let check = |d: &Diagram, a: u32| {
        let max = d.arc_count().max(1);
        if a == 0 || a > max {
            Err(DiagramError::Arc { arc: a, max })
        } else {
            Ok(a - 1)
        }
    };
    let (a1, a2) = (check(d1, a1)?, check(d2, a2)?);
    let (m1, m2) = (d1.arc_count(), d2.arc_count());
    let map1 = |p: u32| (p + m1 - a1) % m1;
    let map2 = |q: u32| m1 + (q + m2 - a2) % m2;
    let mut crossings = Vec::with_capacity(d1.crossings.len() + d2.crossings.len());
    crossings.extend(d1.crossings.iter().map(|c| Crossing { under: map1(c.under), over: map1(c.over), sign: c.sign }));
    crossings.extend(d2.crossings.iter().map(|c| Crossing { under: map2(c.under), over: map2(c.over), sign: c.sign }));
    Diagram::from_crossings(crossings)
}

/// Standard closed 2-braid diagram of the (2, n) torus knot, all crossings
/// positive. Pass `j` and pass `j + n` meet at crossing `j`; the strand
/// alternates under/over.
pub fn torus_knot(n: i64) -> Result<Diagram, DiagramError> {
    if n < 1 || n % 2 == 0 {
        return Err(DiagramError::Parity(n));
    }
    let n = n as u32;
    let crossings = (0..n)
        .map(|j| {
            let (under, over) = if j % 2 == 0 { (j, j + n) } else { (j + n, j) };
            Crossing { under, over, sign: Sign::Positive }
        })
        .collect();
    Diagram::from_crossings(crossings)
}
