//! Reidemeister moves, found by inspecting faces.
//!
//! Sites are expressed in the labels of the diagram's canonical form
//! (arcs one-based, crossings and faces zero-based), so a move text is
//! meaningful for any labeling of the same diagram. Textual forms:
//!
//! ```text
//! R1Down@f3(a5)             monogon face 3 bounded by arc 5
//! R2Down@f3(c4,c9)          bigon face 3 between crossings 4 and 9
//! R3@f2(a4)                 slide arc 4 (over or under at both corners) across triangle face 2
//! R1Up@a3(L,+)              kink on arc 3, loop on its left, positive crossing
//! R2Up@f2(a3>a7,over)       push a finger of arc 3 across face 2 over arc 7
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codec::{canonical_form, fingerprint};
use crate::diagram::{torus_knot, Dart, Diagram, Faces, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply to this diagram")]
    Stale,
    #[error("cannot parse move `{text}`: {msg}")]
    Syntax { text: String, msg: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Down,
    R2Down,
    R3,
    R1Up,
    R2Up,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [MoveKind::R1Down, MoveKind::R2Down, MoveKind::R3, MoveKind::R1Up, MoveKind::R2Up];

    /// Change in crossing count.
    pub fn delta(self) -> i32 {
        match self {
            MoveKind::R1Down => -1,
            MoveKind::R2Down => -2,
            MoveKind::R3 => 0,
            MoveKind::R1Up => 1,
            MoveKind::R2Up => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MoveKind::R1Down => "R1Down",
            MoveKind::R2Down => "R2Down",
            MoveKind::R3 => "R3",
            MoveKind::R1Up => "R1Up",
            MoveKind::R2Up => "R2Up",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Where a move applies. Arcs here are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    R1Down { face: u32, arc: u32 },
    R2Down { face: u32, crossings: [u32; 2] },
    R3 { face: u32, arc: u32 },
    R1Up { arc: u32, side: Side, sign: Sign },
    R2Up { face: u32, finger: u32, target: u32, finger_over: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub site: Site,
    /// Fingerprint of the canonical diagram the move was enumerated on.
    /// Moves parsed from text carry none and are checked by site only.
    pub origin: Option<u64>,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self.site {
            Site::R1Down { .. } => MoveKind::R1Down,
            Site::R2Down { .. } => MoveKind::R2Down,
            Site::R3 { .. } => MoveKind::R3,
            Site::R1Up { .. } => MoveKind::R1Up,
            Site::R2Up { .. } => MoveKind::R2Up,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.kind().name();
        match self.site {
            Site::R1Down { face, arc } | Site::R3 { face, arc } => write!(f, "{name}@f{face}(a{})", arc + 1),
            Site::R2Down { face, crossings: [x, y] } => write!(f, "{name}@f{face}(c{x},c{y})"),
            Site::R1Up { arc, side, sign } => {
                let s = if side == Side::Left { 'L' } else { 'R' };
                write!(f, "{name}@a{}({s},{sign})", arc + 1)
            }
            Site::R2Up { face, finger, target, finger_over } => {
                let o = if finger_over { "over" } else { "under" };
                write!(f, "{name}@f{face}(a{}>a{},{o})", finger + 1, target + 1)
            }
        }
    }
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(text: &str) -> Result<Move, MoveError> {
        let err = |msg| MoveError::Syntax { text: String::from(text), msg };
        let t = text.trim();
        let (name, rest) = t.split_once('@').ok_or_else(|| err("missing `@`"))?;
        let (head, args) = rest.split_once('(').ok_or_else(|| err("missing `(`"))?;
        let args = args.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
        let num = |s: &str, prefix: char| -> Result<u32, MoveError> {
            s.trim().strip_prefix(prefix).and_then(|v| v.parse::<u32>().ok()).ok_or_else(|| err("bad number"))
        };
        let arc = |s: &str| -> Result<u32, MoveError> {
            match num(s, 'a')? {
                0 => Err(err("arc labels start at 1")),
                a => Ok(a - 1),
            }
        };
        let parts: Vec<&str> = args.split(',').collect();
        let site = match name {
            "R1Down" | "R3" => {
                let face = num(head, 'f')?;
                let [a] = parts[..] else { return Err(err("expected one arc")) };
                let arc = arc(a)?;
                if name == "R3" {
                    Site::R3 { face, arc }
                } else {
                    Site::R1Down { face, arc }
                }
            }
            "R2Down" => {
                let face = num(head, 'f')?;
                let [x, y] = parts[..] else { return Err(err("expected two crossings")) };
                Site::R2Down { face, crossings: [num(x, 'c')?, num(y, 'c')?] }
            }
            "R1Up" => {
                let a = arc(head)?;
                let [side, sign] = parts[..] else { return Err(err("expected side and sign")) };
                let side = match side.trim() {
                    "L" => Side::Left,
                    "R" => Side::Right,
                    _ => return Err(err("side must be L or R")),
                };
                let sign = match sign.trim() {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    _ => return Err(err("sign must be + or -")),
                };
                Site::R1Up { arc: a, side, sign }
            }
            "R2Up" => {
                let face = num(head, 'f')?;
                let [pair, over] = parts[..] else { return Err(err("expected arc pair and over/under")) };
                let (i, j) = pair.split_once('>').ok_or_else(|| err("expected `a<i>>a<j>`"))?;
                let finger_over = match over.trim() {
                    "over" => true,
                    "under" => false,
                    _ => return Err(err("expected over or under")),
                };
                Site::R2Up { face, finger: arc(i)?, target: arc(j)?, finger_over }
            }
            _ => return Err(err("unknown move kind")),
        };
        Ok(Move { site, origin: None })
    }
}

/// All applicable moves of the requested kinds, in the canonical labeling
/// of `d`. Order: by kind as listed in `kinds`, then by face, then by arc.
pub fn enumerate_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<Move> {
    let c = canonical_form(d);
    let origin = Some(fingerprint(&c));
    let faces = c.faces();
    let mut out = Vec::new();
    for &k in kinds {
        out.extend(sites_on(&c, &faces, k).into_iter().map(|site| Move { site, origin }));
    }
    out
}

/// Applies a move whose site is given in the canonical labeling of `d`.
/// The result is arc-renumbered but not canonicalized.
pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram, MoveError> {
    let c = canonical_form(d);
    if let Some(origin) = m.origin {
        if origin != fingerprint(&c) {
            return Err(MoveError::Stale);
        }
    }
    let faces = c.faces();
    apply_on(&c, &faces, &m.site)
}

fn pass_over(d: &Diagram, k: u32) -> bool {
    d.pass_is_over(k)
}

/// For arc `k`: Some(true) if over at both ends, Some(false) if under at both.
fn consistent_arc(d: &Diagram, k: u32) -> Option<bool> {
    let (a, b) = (pass_over(d, d.prev_arc(k)), pass_over(d, k));
    (a == b).then_some(a)
}

fn arc_ends(d: &Diagram, k: u32) -> (usize, usize) {
    (d.crossing_of_pass(d.prev_arc(k)), d.crossing_of_pass(k))
}

/// Sites of one kind on a diagram taken in its own labeling.
pub(crate) fn sites_on(d: &Diagram, faces: &Faces, kind: MoveKind) -> Vec<Site> {
    let mut out = Vec::new();
    let n = d.crossing_count();
    match kind {
        MoveKind::R1Down => {
            let mut seen = Vec::new();
            for (f, b) in faces.iter().enumerate() {
                if n == 0 || b.len() != 1 {
                    continue;
                }
                let arc = b[0].arc();
                let x = d.crossing_of_pass(arc);
                if !seen.contains(&x) {
                    seen.push(x);
                    out.push(Site::R1Down { face: f as u32, arc });
                }
            }
        }
        MoveKind::R2Down => {
            for (f, b) in faces.iter().enumerate() {
                if let Some(crossings) = bigon_site(d, b) {
                    out.push(Site::R2Down { face: f as u32, crossings });
                }
            }
        }
        MoveKind::R3 => {
            for (f, b) in faces.iter().enumerate() {
                if !is_triangle(d, b) {
                    continue;
                }
                for dart in b {
                    if consistent_arc(d, dart.arc()).is_some() {
                        out.push(Site::R3 { face: f as u32, arc: dart.arc() });
                    }
                }
            }
        }
        MoveKind::R1Up => {
            for arc in 0..d.arc_count().max(1) {
                for side in [Side::Left, Side::Right] {
                    for sign in [Sign::Positive, Sign::Negative] {
                        out.push(Site::R1Up { arc, side, sign });
                    }
                }
            }
        }
        MoveKind::R2Up => {
            for (f, b) in faces.iter().enumerate() {
                for di in b {
                    for dj in b {
                        for finger_over in [true, false] {
                            out.push(Site::R2Up { face: f as u32, finger: di.arc(), target: dj.arc(), finger_over });
                        }
                    }
                }
            }
        }
    }
    out
}

fn bigon_site(d: &Diagram, b: &[Dart]) -> Option<[u32; 2]> {
    if d.crossing_count() < 2 || b.len() != 2 {
        return None;
    }
    let (x, y) = arc_ends(d, b[0].arc());
    if x == y {
        return None;
    }
    consistent_arc(d, b[0].arc())?;
    Some([x.min(y) as u32, x.max(y) as u32])
}

fn is_triangle(d: &Diagram, b: &[Dart]) -> bool {
    if d.crossing_count() < 3 || b.len() != 3 {
        return false;
    }
    let mut xs: Vec<usize> = b.iter().map(|dart| d.dart_start(*dart).0).collect();
    xs.sort_unstable();
    xs.dedup();
    xs.len() == 3
}

fn face_dart(faces: &Faces, face: u32, arc: u32) -> Option<Dart> {
    if face as usize >= faces.len() {
        return None;
    }
    faces.boundary(face as usize).iter().copied().find(|dart| dart.arc() == arc)
}

/// Applies a site to `d` in its own labeling.
pub(crate) fn apply_on(d: &Diagram, faces: &Faces, site: &Site) -> Result<Diagram, MoveError> {
    let n = d.crossing_count();
    match *site {
        Site::R1Down { face, arc } => {
            if n == 0 || face as usize >= faces.len() {
                return Err(MoveError::Stale);
            }
            let b = faces.boundary(face as usize);
            if b.len() != 1 || b[0].arc() != arc {
                return Err(MoveError::Stale);
            }
            Ok(d.delete_crossings(&[d.crossing_of_pass(arc)]))
        }
        Site::R2Down { face, crossings } => {
            if face as usize >= faces.len() || bigon_site(d, faces.boundary(face as usize)) != Some(crossings) {
                return Err(MoveError::Stale);
            }
            Ok(d.delete_crossings(&[crossings[0] as usize, crossings[1] as usize]))
        }
        Site::R3 { face, arc } => {
            if face as usize >= faces.len() {
                return Err(MoveError::Stale);
            }
            let b = faces.boundary(face as usize);
            if !is_triangle(d, b) || !b.iter().any(|dart| dart.arc() == arc) || consistent_arc(d, arc).is_none() {
                return Err(MoveError::Stale);
            }
            Ok(slide_triangle(d, b))
        }
        Site::R1Up { arc, side, sign } => {
            if arc >= d.arc_count().max(1) {
                return Err(MoveError::Stale);
            }
            // under-first kinks put the loop on the left exactly when positive
            let under_first = (side == Side::Left) == (sign == Sign::Positive);
            Ok(d.insert_passes(&[(arc, alloc::vec![(0, !under_first), (0, under_first)])], &[sign]))
        }
        Site::R2Up { face, finger, target, finger_over } => {
            let di = face_dart(faces, face, finger).ok_or(MoveError::Stale)?;
            let dj = face_dart(faces, face, target).ok_or(MoveError::Stale)?;
            Ok(push_finger(d, di, dj, finger_over))
        }
    }
}

/// Triangle inversion: each of the three strands meets the other two in the
/// opposite order afterwards; crossing signs and over/under are unchanged.
fn slide_triangle(d: &Diagram, b: &[Dart]) -> Diagram {
    let mut swap: Vec<(u32, u32)> = Vec::with_capacity(3);
    for dart in b {
        let k = dart.arc();
        swap.push((d.prev_arc(k), k));
    }
    let permute = |p: u32| -> u32 {
        for &(a, c) in &swap {
            if p == a {
                return c;
            }
            if p == c {
                return a;
            }
        }
        p
    };
    let crossings = d
        .crossings()
        .iter()
        .map(|c| {
            let mut c = *c;
            c.under = permute(c.under);
            c.over = permute(c.over);
            c
        })
        .collect();
    Diagram::with_crossings(crossings)
}

/// Pushes a finger of the arc under dart `di` across the face on the left of
/// both darts, crossing the arc under `dj` twice.
///
/// Local picture: the finger arc runs along the bottom of the face, the
/// target along the top; the finger rises through crossing `L` and comes
/// back down through crossing `R`. The face is on the left of the finger arc
/// iff the finger runs left-to-right, and on the left of the target iff the
/// target runs right-to-left. With `v` the vertical direction of the finger
/// and `h` the horizontal direction of the target at a crossing, the sign is
/// `v * h`, negated when the finger is on top.
fn push_finger(d: &Diagram, di: Dart, dj: Dart, finger_over: bool) -> Diagram {
    const L: usize = 0;
    const R: usize = 1;
    let finger_east = di.is_forward();
    let target_east = !dj.is_forward();
    let v_left: i32 = if finger_east { 1 } else { -1 };
    let h: i32 = if target_east { 1 } else { -1 };
    let top: i32 = if finger_over { -1 } else { 1 };
    let sign_of = |v: i32| if top * v * h > 0 { Sign::Positive } else { Sign::Negative };
    let signs = [sign_of(v_left), sign_of(-v_left)];

    let finger_passes =
        if finger_east { alloc::vec![(L, finger_over), (R, finger_over)] } else { alloc::vec![(R, finger_over), (L, finger_over)] };
    let target_passes =
        if target_east { alloc::vec![(L, !finger_over), (R, !finger_over)] } else { alloc::vec![(R, !finger_over), (L, !finger_over)] };
    if di.arc() == dj.arc() {
        // both points on one arc: the finger base comes first
        let mut all = finger_passes;
        all.extend(target_passes);
        d.insert_passes(&[(di.arc(), all)], &signs)
    } else {
        d.insert_passes(&[(di.arc(), finger_passes), (dj.arc(), target_passes)], &signs)
    }
}

/// `steps` random moves (a kind chosen uniformly among those with a site,
/// then a site uniformly), never exceeding `max_crossings`. Deterministic
/// for a fixed seed.
pub fn scramble(d: &Diagram, steps: usize, max_crossings: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    scramble_with(d, steps, max_crossings, &mut rng)
}

fn scramble_with(d: &Diagram, steps: usize, max_crossings: usize, rng: &mut ChaCha8Rng) -> Diagram {
    let mut cur = canonical_form(d);
    for _ in 0..steps {
        let faces = cur.faces();
        let n = cur.crossing_count() as i32;
        let options: Vec<Vec<Site>> = MoveKind::ALL
            .iter()
            .filter(|k| n + k.delta() <= max_crossings as i32)
            .map(|&k| sites_on(&cur, &faces, k))
            .filter(|s| !s.is_empty())
            .collect();
        if options.is_empty() {
            break;
        }
        let sites = &options[rng.gen_range(0..options.len())];
        let site = sites[rng.gen_range(0..sites.len())];
        let next = apply_on(&cur, &faces, &site).expect("enumerated site applies");
        cur = canonical_form(&next);
    }
    cur
}

/// Random test-corpus diagram with at most `max_crossings` crossings: a
/// scrambled unknot, torus knot or sum, followed by random crossing changes.
pub fn random_diagram(seed: u64, max_crossings: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let base = match rng.gen_range(0..4) {
        0 => Diagram::unknot(),
        1 => torus_knot(3).unwrap(),
        2 => torus_knot(5).unwrap().mirror(),
        _ => {
            let t = torus_knot(3).unwrap();
            crate::diagram::connected_sum(&t, 1, &t.mirror(), 3).unwrap()
        }
    };
    let base = if base.crossing_count() > max_crossings { Diagram::unknot() } else { base };
    let steps = rng.gen_range(0..16);
    let d = scramble_with(&base, steps, max_crossings, &mut rng);
    let mut d = d;
    for i in 0..d.crossing_count() {
        if rng.gen_bool(0.3) {
            d = d.crossing_change(i).unwrap();
        }
    }
    d
}
