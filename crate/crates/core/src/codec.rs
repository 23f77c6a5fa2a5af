//! PD text: `PD[X(a,b,c,d),...]`, and the canonical code used for equality
//! and search deduplication.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::diagram::{Crossing, Diagram, DiagramError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error(transparent)]
    Structure(#[from] DiagramError),
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, msg: &'static str) -> Result<(), CodecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(msg))
        }
    }

    fn err(&self, msg: &'static str) -> CodecError {
        CodecError::Syntax { pos: self.pos, msg }
    }

    fn label(&mut self) -> Result<u32, CodecError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u32 = 0;
        while let Some(c) = self.s.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u32))
                .ok_or(CodecError::Syntax { pos: start, msg: "arc label too large" })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an arc label"));
        }
        if v == 0 {
            return Err(CodecError::Syntax { pos: start, msg: "arc labels must be positive" });
        }
        Ok(v)
    }
}

/// Parses the crossing tuples without building a diagram.
pub fn parse_tuples(text: &str) -> Result<Vec<[u32; 4]>, CodecError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    cur.expect(b'P', "expected `PD[`")?;
    if cur.s.get(cur.pos) != Some(&b'D') {
        return Err(cur.err("expected `PD[`"));
    }
    cur.pos += 1;
    cur.expect(b'[', "expected `[` after `PD`")?;
    let mut tuples = Vec::new();
    if cur.peek() == Some(b']') {
        cur.pos += 1;
    } else {
        loop {
            cur.expect(b'X', "expected `X`")?;
            let close = match cur.peek() {
                Some(b'(') => b')',
                Some(b'[') => b']',
                _ => return Err(cur.err("expected `(` or `[` after `X`")),
            };
            cur.pos += 1;
            let mut t = [0u32; 4];
            for (i, slot) in t.iter_mut().enumerate() {
                if i > 0 {
                    cur.expect(b',', "expected `,` between labels")?;
                }
                *slot = cur.label()?;
            }
            cur.expect(close, "expected closing bracket after four labels")?;
            tuples.push(t);
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                Some(b']') => {
                    cur.pos += 1;
                    break;
                }
                _ => return Err(cur.err("expected `,` or `]`")),
            }
        }
    }
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(tuples)
}

/// Parses and validates PD text; arcs are renumbered along the orientation.
pub fn parse_pd(text: &str) -> Result<Diagram, CodecError> {
    let tuples = parse_tuples(text)?;
    Ok(Diagram::from_pd_tuples(&tuples)?)
}

pub fn emit_tuples(tuples: &[[u32; 4]]) -> String {
    let mut out = String::from("PD[");
    for (i, t) in tuples.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "X({},{},{},{})", t[0], t[1], t[2], t[3]);
    }
    out.push(']');
    out
}

pub fn emit_pd(d: &Diagram) -> String {
    emit_tuples(&d.tuples())
}

/// The diagram relabeled and reordered into canonical form: among all
/// `2 * 2n` traversal labelings (every starting arc, both orientations) the
/// one whose sorted tuple list is lexicographically least (compared as
/// integer sequences), with crossings listed in that sorted order.
pub fn canonical_form(d: &Diagram) -> Diagram {
    let arcs = d.arc_count();
    if arcs == 0 {
        return d.clone();
    }
    let mut best: Option<Vec<([u32; 4], Crossing)>> = None;
    let mut scratch: Vec<([u32; 4], Crossing)> = Vec::with_capacity(d.crossing_count());
    for reverse in [false, true] {
        for shift in 0..arcs {
            scratch.clear();
            let map = |p: u32| -> u32 {
                let p = if reverse { (2 * arcs - 1 - p) % arcs } else { p };
                (p + arcs - shift) % arcs
            };
            for c in d.crossings() {
                let c = Crossing { under: map(c.under), over: map(c.over), sign: c.sign };
                scratch.push((c.tuple(arcs), c));
            }
            scratch.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            let better = match &best {
                None => true,
                Some(b) => scratch.iter().map(|e| e.0).lt(b.iter().map(|e| e.0)),
            };
            if better {
                best = Some(scratch.clone());
            }
        }
    }
    Diagram::with_crossings(best.unwrap().into_iter().map(|(_, c)| c).collect())
}

/// Label-independent text form: equal for diagrams differing only by arc
/// relabeling, starting arc, orientation reversal or crossing order.
pub fn canonical_code(d: &Diagram) -> String {
    emit_pd(&canonical_form(d))
}

/// Compact form of a canonical diagram: three `u16` per crossing.
pub(crate) fn compact(d: &Diagram) -> Vec<u16> {
    let mut out = Vec::with_capacity(3 * d.crossing_count());
    for c in d.crossings() {
        out.extend_from_slice(&[c.under as u16, c.over as u16, (c.sign.value() > 0) as u16]);
    }
    out
}

pub(crate) fn from_compact(v: &[u16]) -> Diagram {
    let crossings = v
        .chunks_exact(3)
        .map(|c| Crossing {
            under: c[0] as u32,
            over: c[1] as u32,
            sign: if c[2] == 1 { crate::Sign::Positive } else { crate::Sign::Negative },
        })
        .collect();
    Diagram::with_crossings(crossings)
}

/// 64-bit FNV-1a fingerprint of a diagram's canonical code.
pub fn fingerprint(canonical: &Diagram) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for t in canonical.tuples() {
        for x in t {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    h ^ canonical.crossing_count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::torus_knot;
    use proptest::prelude::*;

    const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

    #[test]
    fn empty_code() {
        let d = parse_pd("PD[]").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(emit_pd(&d), "PD[]");
        assert!(parse_pd("  PD [ ] ").is_ok());
    }

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(emit_pd(&d), TREFOIL);
        assert_eq!(d.writhe(), -3);
    }

    #[test]
    fn square_brackets_and_whitespace() {
        let d = parse_pd("PD[ X[1, 4, 2, 5], X[3,6,4,1] ,X(5,2,6,3) ]").unwrap();
        assert_eq!(emit_pd(&d), TREFOIL);
    }

    #[test]
    fn unpaired_labels_rejected() {
        let e = parse_pd("PD[X(1,4,2,5),X(3,6,4,1)]").unwrap_err();
        assert!(matches!(e, CodecError::Structure(DiagramError::Pairing { count: 1, .. })));
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "PD", "PD[X(1,2,3)]", "PD[X(1,2,3,4)", "PD[X(1,2,3,4]]", "PD[X(0,1,1,0)]", "PD[Y(1,2,3,4)]", "PD[]x"] {
            assert!(matches!(parse_pd(bad), Err(CodecError::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn two_component_code_rejected() {
        // Hopf link
        let e = parse_pd("PD[X(1,3,2,4),X(3,1,4,2)]").unwrap_err();
        assert!(matches!(e, CodecError::Structure(DiagramError::MultiComponent { components: 2 })));
    }

    #[test]
    fn relabeled_input_is_normalized() {
        // labels shifted by +2 (mod 6)
        let shifted = parse_pd("PD[X(3,6,4,1),X(5,2,6,3),X(1,4,2,5)]").unwrap();
        let shifted2 = parse_pd("PD[X(3,6,4,1),X(5,2,6,3),X(1,4,2,5)]").unwrap();
        assert_eq!(shifted, shifted2);
        let t = parse_pd(TREFOIL).unwrap();
        let plus_two = parse_pd("PD[X(3,6,4,1),X(5,2,6,3),X(1,4,2,5)]").unwrap();
        assert_eq!(canonical_code(&t), canonical_code(&plus_two));
        // arbitrary non-sequential labels
        let odd = parse_pd("PD[X(10,40,20,50),X(30,60,40,10),X(50,20,60,30)]").unwrap();
        assert_eq!(canonical_code(&odd), canonical_code(&t));
    }

    #[test]
    fn canonical_separates_mirrors() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_ne!(canonical_code(&t), canonical_code(&t.mirror()));
        assert_eq!(canonical_code(&t.mirror()), canonical_code(&torus_knot(3).unwrap()));
    }

    #[test]
    fn torus_emission() {
        let t = torus_knot(7).unwrap();
        let text = emit_pd(&t);
        let mut labels: Vec<u32> = t.tuples().concat();
        labels.sort();
        labels.dedup();
        assert_eq!(labels, (1..=14).collect::<Vec<_>>());
        assert_eq!(parse_pd(&text).unwrap(), t);
    }

    #[test]
    fn one_crossing_codes_are_unambiguous() {
        let pos = parse_pd("PD[X(1,1,2,2)]").unwrap();
        let neg = parse_pd("PD[X(1,2,2,1)]").unwrap();
        assert_eq!(pos.writhe(), 1);
        assert_eq!(neg.writhe(), -1);
        assert_eq!(emit_pd(&torus_knot(1).unwrap()), "PD[X(1,1,2,2)]");
    }

    proptest! {
        #[test]
        fn canonical_invariant_under_relabeling(seed in 0u64..400, shift in 0u32..40, reverse: bool) {
            let d = crate::moves::random_diagram(seed, 9);
            let arcs = d.arc_count().max(1);
            let r = d.relabeled(shift % arcs, reverse);
            prop_assert_eq!(canonical_code(&r), canonical_code(&d));
            let again = parse_pd(&emit_pd(&d)).unwrap();
            prop_assert_eq!(canonical_code(&again), canonical_code(&d));
            let c = parse_pd(&canonical_code(&d)).unwrap();
            prop_assert_eq!(canonical_code(&c), canonical_code(&d));
        }
    }
}
