//! Unknot certification by best-first Reidemeister search.
//!
//! A certificate is plain text:
//!
//! ```text
//! start: PD[X(1,1,2,2)]
//! R1Down@f0(a1)
//! end: PD[]
//! ```
//!
//! Each move uses the canonical labels of the diagram it applies to.

use alloc::boxed::Box;
use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::hash::BuildHasher;
use core::str::FromStr;

use hashbrown::hash_table::HashTable;
use hashbrown::DefaultHashBuilder;
use thiserror::Error;

use crate::codec::{canonical_code, canonical_form, compact, fingerprint, from_compact, parse_pd};
use crate::diagram::{Diagram, Faces};
use crate::invariants::jones;
use crate::moves::{apply_move, apply_on, sites_on, Move, MoveKind, Site};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Cap on intermediate crossing counts. `None` means the input's
    /// crossing count plus 3.
    pub max_crossings: Option<usize>,
    /// Cap on distinct diagrams visited.
    pub max_nodes: usize,
    pub allow_r1up: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_crossings: None, max_nodes: 1_000_000, allow_r1up: false }
    }
}

impl SearchLimits {
    pub fn crossing_cap(&self, d: &Diagram) -> usize {
        self.max_crossings.unwrap_or(d.crossing_count() + 3).max(d.crossing_count())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Canonical code of the starting diagram.
    pub start: String,
    pub moves: Vec<Move>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.start)?;
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        writeln!(f, "end: PD[]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `start:` line")]
    NoStart,
    #[error("missing `end: PD[]` line")]
    NoEnd,
}

impl FromStr for Certificate {
    type Err = CertificateParseError;

    fn from_str(text: &str) -> Result<Certificate, CertificateParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(CertificateParseError::NoStart)?;
        let start = first.strip_prefix("start:").ok_or(CertificateParseError::NoStart)?.trim();
        let start = parse_pd(start)
            .map(|d| canonical_code(&d))
            .map_err(|e| CertificateParseError::Line { line, msg: alloc::format!("{e}") })?;
        let mut moves = Vec::new();
        let mut ended = false;
        for (line, l) in lines {
            if ended {
                return Err(CertificateParseError::Line { line, msg: "text after `end:`".into() });
            }
            if let Some(end) = l.strip_prefix("end:") {
                if end.trim() != "PD[]" {
                    return Err(CertificateParseError::Line { line, msg: "certificate must end at PD[]".into() });
                }
                ended = true;
                continue;
            }
            let m: Move = l.parse().map_err(|e| CertificateParseError::Line { line, msg: alloc::format!("{e}") })?;
            moves.push(m);
        }
        if !ended {
            return Err(CertificateParseError::NoEnd);
        }
        Ok(Certificate { start, moves })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownReason {
    /// The Jones polynomial is not 1, so no certificate exists.
    KnottedByJones,
    NodeLimit,
    /// Every diagram within the crossing cap was visited.
    Exhausted,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::KnottedByJones => "jones polynomial differs from 1",
            UnknownReason::NodeLimit => "node limit reached",
            UnknownReason::Exhausted => "search space exhausted within crossing cap",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Certified(Certificate),
    Unknown(UnknownReason),
}

impl Outcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Unknown(_) => None,
        }
    }
}

/// True iff the Jones polynomial differs from 1, which proves `d` knotted.
pub fn prove_knotted(d: &Diagram) -> bool {
    jones(d).map(|v| !v.is_one()).unwrap_or(false)
}

/// Checks a certificate against a starting diagram. Never panics.
pub fn replay(start: &Diagram, cert: &Certificate) -> bool {
    if canonical_code(start) != cert.start {
        return false;
    }
    let mut cur = start.clone();
    for m in &cert.moves {
        match apply_move(&cur, &Move { site: m.site, origin: None }) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    cur.crossing_count() == 0
}

/// Applies R1Down and R2Down moves while any exists; returns the final
/// diagram in canonical form and the moves used.
pub fn simplify_with_moves(d: &Diagram) -> (Diagram, Vec<Move>) {
    let mut cur = canonical_form(d);
    let mut moves = Vec::new();
    loop {
        let faces = cur.faces();
        let site = [MoveKind::R1Down, MoveKind::R2Down].into_iter().find_map(|k| sites_on(&cur, &faces, k).into_iter().next());
        let Some(site) = site else { break };
        moves.push(Move { site, origin: Some(fingerprint(&cur)) });
        cur = canonical_form(&apply_on(&cur, &faces, &site).expect("enumerated site applies"));
    }
    (cur, moves)
}

pub fn simplify_greedy(d: &Diagram) -> Diagram {
    simplify_with_moves(d).0
}

struct Node {
    code: Box<[u16]>,
    hash: u64,
    parent: u32,
    site: Option<Site>,
}

/// Best-first search toward the 0-crossing diagram. Children are ordered by
/// crossing count, ties by insertion order. Diagrams are deduplicated by
/// canonical form.
pub fn certify_unknot(d: &Diagram, lim: &SearchLimits) -> Outcome {
    if d.crossing_count() == 0 {
        return Outcome::Certified(Certificate { start: canonical_code(d), moves: Vec::new() });
    }
    if prove_knotted(d) {
        return Outcome::Unknown(UnknownReason::KnottedByJones);
    }
    search(&canonical_form(d), lim)
}

fn search(start: &Diagram, lim: &SearchLimits) -> Outcome {
    let cap = lim.crossing_cap(start);
    let mut kinds = alloc::vec![MoveKind::R1Down, MoveKind::R2Down, MoveKind::R3, MoveKind::R2Up];
    if lim.allow_r1up {
        kinds.push(MoveKind::R1Up);
    }
    let hasher = DefaultHashBuilder::default();
    let mut nodes: Vec<Node> = Vec::new();
    let mut table: HashTable<u32> = HashTable::new();
    // (crossing count of children, insertion seq, node, kind index, site index)
    let mut heap: BinaryHeap<Reverse<(usize, u64, u32, u8, u32)>> = BinaryHeap::new();
    let mut seq = 0u64;

    let push_cursors = |heap: &mut BinaryHeap<_>, seq: &mut u64, node: u32, n: usize| {
        for (ki, k) in kinds.iter().enumerate() {
            let m = n as i64 + k.delta() as i64;
            if m >= 0 && m as usize <= cap {
                heap.push(Reverse((m as usize, *seq, node, ki as u8, 0u32)));
                *seq += 1;
            }
        }
    };

    let code = compact(start);
    let hash = hasher.hash_one(&code);
    nodes.push(Node { code: code.into_boxed_slice(), hash, parent: u32::MAX, site: None });
    table.insert_unique(hash, 0, |&i| nodes[i as usize].hash);
    if lim.max_nodes == 0 {
        return Outcome::Unknown(UnknownReason::NodeLimit);
    }
    push_cursors(&mut heap, &mut seq, 0, start.crossing_count());

    let mut cache: Option<(u32, u8, Diagram, Faces, Vec<Site>)> = None;
    while let Some(Reverse((prio, s, node, ki, idx))) = heap.pop() {
        let fresh = !matches!(&cache, Some((cn, ck, ..)) if *cn == node && *ck == ki);
        if fresh {
            let dg = from_compact(&nodes[node as usize].code);
            let faces = dg.faces();
            let sites = sites_on(&dg, &faces, kinds[ki as usize]);
            cache = Some((node, ki, dg, faces, sites));
        }
        let (_, _, dg, faces, sites) = cache.as_ref().unwrap();
        let Some(site) = sites.get(idx as usize) else { continue };
        if idx as usize + 1 < sites.len() {
            heap.push(Reverse((prio, s, node, ki, idx + 1)));
        }
        let child = canonical_form(&apply_on(dg, faces, site).expect("enumerated site applies"));
        let code = compact(&child);
        let hash = hasher.hash_one(&code);
        if table.find(hash, |&i| *nodes[i as usize].code == *code).is_some() {
            continue;
        }
        if nodes.len() >= lim.max_nodes {
            return Outcome::Unknown(UnknownReason::NodeLimit);
        }
        let id = nodes.len() as u32;
        nodes.push(Node { code: code.into_boxed_slice(), hash, parent: node, site: Some(*site) });
        table.insert_unique(hash, id, |&i| nodes[i as usize].hash);
        if child.crossing_count() == 0 {
            return Outcome::Certified(path_to(&nodes, id, start));
        }
        push_cursors(&mut heap, &mut seq, id, child.crossing_count());
    }
    Outcome::Unknown(UnknownReason::Exhausted)
}

fn path_to(nodes: &[Node], mut id: u32, start: &Diagram) -> Certificate {
    let mut moves = Vec::new();
    while let Some(site) = nodes[id as usize].site {
        let parent = nodes[id as usize].parent;
        let origin = fingerprint(&from_compact(&nodes[parent as usize].code));
        moves.push(Move { site, origin: Some(origin) });
        id = parent;
    }
    moves.reverse();
    Certificate { start: canonical_code(start), moves }
}
