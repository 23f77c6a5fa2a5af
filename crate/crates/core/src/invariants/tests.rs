use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::codec::{emit_pd, parse_pd, parse_tuples};
use crate::diagram::{connected_sum, torus_knot};
use crate::moves::random_diagram;

const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
const FIGURE_EIGHT: &str = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]";

/// Jones polynomial straight from PD text: loops counted by graph search over
/// labels, writhe read off the tuple orientation. Shares no code with the
/// library beyond the tuple parser.
fn text_jones(pd: &str) -> BTreeMap<i32, i64> {
    let tuples = parse_tuples(pd).unwrap();
    let n = tuples.len();
    let labels = 2 * n as u32;
    let mut bracket: BTreeMap<i32, i64> = BTreeMap::new();
    if n == 0 {
        return BTreeMap::from([(0, 1)]);
    }
    for state in 0u64..1 << n {
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut a_exp = 0i32;
        for (i, t) in tuples.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                a_exp += 1;
                [(t[0], t[1]), (t[2], t[3])]
            } else {
                a_exp -= 1;
                [(t[0], t[3]), (t[1], t[2])]
            };
            for (x, y) in pairs {
                adj.entry(x).or_default().push(y);
                adj.entry(y).or_default().push(x);
            }
        }
        let mut seen = vec![false; labels as usize + 1];
        let mut loops = 0;
        for start in 1..=labels {
            if seen[start as usize] {
                continue;
            }
            loops += 1;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.extend(adj[&v].iter().copied());
                }
            }
        }
        // A^a_exp * (-A^2 - A^-2)^(loops - 1)
        let mut term: BTreeMap<i32, i64> = BTreeMap::from([(a_exp, 1)]);
        for _ in 1..loops {
            let mut next = BTreeMap::new();
            for (e, c) in term {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            term = next;
        }
        for (e, c) in term {
            *bracket.entry(e).or_insert(0) += c;
        }
    }
    // positive iff the over-strand runs from position 3 to position 1; with a
    // single crossing the over-strand enters on the arc leaving under
    let positive = |t: &[u32; 4]| if n == 1 { t[3] == t[2] } else { t[1] == t[3] % labels + 1 };
    let writhe: i32 = tuples.iter().map(|t| if positive(t) { 1 } else { -1 }).sum();
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let mut v = BTreeMap::new();
    for (e, c) in bracket {
        if c != 0 {
            let a = e - 3 * writhe;
            assert_eq!(a % 4, 0);
            v.insert(-a / 4, sign * c);
        }
    }
    v
}

fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied()).unwrap()
}

fn as_poly(m: &BTreeMap<i32, i64>) -> LaurentPoly {
    LaurentPoly::from_terms(m.iter().map(|(e, c)| (*e, *c))).unwrap()
}

#[test]
fn oracle_self_check_values() {
    assert_eq!(text_jones("PD[]"), BTreeMap::from([(0, 1)]));
    assert_eq!(text_jones(TREFOIL), BTreeMap::from([(-4, -1), (-3, 1), (-1, 1)]));
    assert_eq!(text_jones(FIGURE_EIGHT), BTreeMap::from([(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
}

#[test]
fn trefoil_jones() {
    let t = parse_pd(TREFOIL).unwrap();
    assert_eq!(jones(&t).unwrap(), poly(&[(-4, -1), (-3, 1), (-1, 1)]));
    assert_eq!(jones(&t).unwrap().to_string(), "-t^-4 + t^-3 + t^-1");
    assert_eq!(jones(&torus_knot(3).unwrap()).unwrap(), poly(&[(1, 1), (3, 1), (4, -1)]));
}

#[test]
fn torus_seven_jones() {
    let expected = poly(&[(3, 1), (5, 1), (6, -1), (7, 1), (8, -1), (9, 1), (10, -1)]);
    let t = torus_knot(7).unwrap();
    assert_eq!(as_poly(&text_jones(&emit_pd(&t))), expected);
    assert_eq!(jones(&t).unwrap(), expected);
    assert_eq!(jones_oracle(&t).unwrap(), expected);
}

#[test]
fn fast_bracket_stays_small_on_torus_seven() {
    let (_, stats) = bracket_fast_with_stats(&torus_knot(7).unwrap()).unwrap();
    assert!(stats.state_evaluations < 128, "{stats:?}");
}

#[test]
fn unknot_values() {
    let u = Diagram::unknot();
    assert!(jones(&u).unwrap().is_one());
    assert!(bracket_oracle(&u).unwrap().is_one());
    assert_eq!(signature(&u), Err(InvariantError::Degenerate));
    assert_eq!(knot_signature(&u), Ok(0));
    let kink = torus_knot(1).unwrap();
    assert!(jones(&kink).unwrap().is_one());
    assert_eq!(bracket_fast(&kink).unwrap(), poly(&[(3, -1)]));
    assert_eq!(bracket_fast(&kink.mirror()).unwrap(), poly(&[(-3, -1)]));
    assert_eq!(text_jones("PD[X(2,1,1,2)]"), BTreeMap::from([(0, 1)]));
}

#[test]
fn oracle_size_guard() {
    let t = torus_knot(25).unwrap();
    assert_eq!(bracket_oracle(&t), Err(InvariantError::Size { n: 25, max: 24 }));
    assert!(bracket_fast(&t).is_ok());
}

#[test]
fn partial_sums_add_up() {
    let d = random_diagram(11, 9);
    for parts in [1u64, 2, 3, 7] {
        let mut total = LaurentPoly::zero();
        for part in 0..parts {
            total = total.checked_add(&bracket_oracle_partial(&d, part, parts).unwrap()).unwrap();
        }
        assert_eq!(total, bracket_oracle(&d).unwrap());
    }
}

#[test]
fn mirror_inverts_and_sums_multiply() {
    let t7 = torus_knot(7).unwrap();
    let v = jones(&t7).unwrap();
    assert_eq!(jones(&t7.mirror()).unwrap(), v.invert_var());
    let s = connected_sum(&t7, 1, &t7.mirror(), 1).unwrap();
    assert_eq!(jones(&s).unwrap(), &v * &v.invert_var());
    let t = parse_pd(TREFOIL).unwrap();
    let f = parse_pd(FIGURE_EIGHT).unwrap();
    let tf = connected_sum(&t, 2, &f, 5).unwrap();
    assert_eq!(jones(&tf).unwrap(), &jones(&t).unwrap() * &jones(&f).unwrap());
}

#[test]
fn chirality_checks() {
    let t = parse_pd(TREFOIL).unwrap();
    assert_eq!(detect_mirror_pair(&t, &t.mirror()).unwrap(), MirrorVerdict::MirrorJones);
    assert_eq!(detect_mirror_pair(&t, &t).unwrap(), MirrorVerdict::SameJones);
    assert_eq!(detect_mirror_pair(&t, &torus_knot(5).unwrap()).unwrap(), MirrorVerdict::Unrelated);
    assert!(chiral_by_jones(&t).unwrap());
    assert!(!chiral_by_jones(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap());
    assert!(!chiral_by_jones(&Diagram::unknot()).unwrap());
    let t7 = torus_knot(7).unwrap();
    let s = connected_sum(&t7, 1, &t7.mirror(), 1).unwrap();
    assert!(!chiral_by_jones(&s).unwrap());
}

#[test]
fn signature_values() {
    assert_eq!(knot_signature(&torus_knot(3).unwrap()), Ok(-2));
    assert_eq!(knot_signature(&parse_pd(TREFOIL).unwrap()), Ok(2));
    for n in [1i64, 3, 5, 7, 9] {
        let t = torus_knot(n).unwrap();
        assert_eq!(knot_signature(&t), Ok(-(n as i32 - 1)), "T(2,{n})");
        assert_eq!(knot_signature(&t.mirror()), Ok(n as i32 - 1));
    }
    assert_eq!(knot_signature(&parse_pd(FIGURE_EIGHT).unwrap()), Ok(0));
    assert_eq!(unknotting_lower_bound(&torus_knot(7).unwrap()), Ok(3));
    let t7 = torus_knot(7).unwrap();
    assert_eq!(knot_signature(&connected_sum(&t7, 1, &t7.mirror(), 1).unwrap()), Ok(0));
}

#[test]
fn goeritz_shape() {
    let g = signature(&torus_knot(3).unwrap()).unwrap();
    assert_eq!(g.matrix.len(), g.white_faces.len());
    for (i, row) in g.matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            assert_eq!(*v, g.matrix[j][i]);
        }
    }
    assert_eq!(g.sigma, g.matrix_signature - g.mu);
}

#[test]
fn signature_independent_of_anchor_face() {
    for seed in 0..80 {
        let d = random_diagram(seed, 10);
        if d.crossing_count() == 0 {
            continue;
        }
        let s = knot_signature(&d).unwrap();
        for f in 0..d.faces().len() {
            assert_eq!(goeritz_anchored(&d, f).unwrap().sigma, s, "{d:?} anchor {f}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]
    #[test]
    fn fast_matches_oracles(seed in 0u64..100_000) {
        let d = random_diagram(seed, 11);
        let fast = bracket_fast(&d).unwrap();
        prop_assert_eq!(&fast, &bracket_oracle(&d).unwrap());
        prop_assert_eq!(jones(&d).unwrap(), as_poly(&text_jones(&emit_pd(&d))));
    }

    #[test]
    fn mirror_and_sum_laws(s1 in 0u64..10_000, s2 in 0u64..10_000, a in 1u32..40, b in 1u32..40) {
        let d1 = random_diagram(s1, 6);
        let d2 = random_diagram(s2, 6);
        let v1 = jones(&d1).unwrap();
        prop_assert_eq!(jones(&d1.mirror()).unwrap(), v1.invert_var());
        prop_assert_eq!(knot_signature(&d1.mirror()).unwrap(), -knot_signature(&d1).unwrap());
        let a = (a - 1) % d1.arc_count().max(1) + 1;
        let b = (b - 1) % d2.arc_count().max(1) + 1;
        let s = connected_sum(&d1, a, &d2, b).unwrap();
        prop_assert_eq!(s.writhe(), d1.writhe() + d2.writhe());
        prop_assert_eq!(jones(&s).unwrap(), &v1 * &jones(&d2).unwrap());
        prop_assert_eq!(knot_signature(&s).unwrap(), knot_signature(&d1).unwrap() + knot_signature(&d2).unwrap());
    }
}
