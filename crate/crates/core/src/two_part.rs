//! Splitting a walk at its NE vertex into an ordered pair of arms.
//!
//! Both arms start at the NE vertex. When both are nonempty the arm whose
//! second vertex is lexicographically larger comes first. When exactly one is
//! empty, the nonempty arm comes first iff its first step is `-e1`; this keeps
//! the d=2 first part starting with `-e1` and makes the closing-walk
//! first-length histogram flat.

use num_bigint::BigUint;

use crate::counting::{self, EnumConfig};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Polygon, Step, Walk};

/// Which arm of a decomposition contains the walk's starting vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    first: Walk,
    second: Walk,
    origin_part: Part,
}

impl Decomposition {
    pub fn new(first: Walk, second: Walk, origin_part: Part) -> Result<Self> {
        if first.start() != second.start() {
            return Err(Error::InvalidDecomposition("parts start at different vertices".into()));
        }
        if !first.is_self_avoiding() || !second.is_self_avoiding() {
            return Err(Error::InvalidDecomposition("a part is not self-avoiding".into()));
        }
        if !first.avoids(&second) {
            return Err(Error::InvalidDecomposition(
                "parts intersect away from the meeting vertex".into(),
            ));
        }
        let meet = first.start();
        let below = |w: &Walk| w.vertices()[1..].iter().all(|v| v < meet);
        if !below(&first) || !below(&second) {
            return Err(Error::InvalidDecomposition(
                "meeting vertex is not the NE vertex".into(),
            ));
        }
        if !first_precedes(&first, &second) {
            return Err(Error::InvalidDecomposition("parts are in the wrong order".into()));
        }
        if first.is_empty() && second.is_empty() && origin_part != Part::First {
            return Err(Error::InvalidDecomposition(
                "a length-0 walk decomposes with origin part first".into(),
            ));
        }
        Ok(Self {
            first,
            second,
            origin_part,
        })
    }

    pub fn first(&self) -> &Walk {
        &self.first
    }

    pub fn second(&self) -> &Walk {
        &self.second
    }

    pub fn meeting_vertex(&self) -> &LatticePoint {
        self.first.start()
    }

    pub fn origin_part(&self) -> Part {
        self.origin_part
    }
}

/// Whether arm `a` is ordered before arm `b` (both start at the same vertex).
pub fn first_precedes(a: &Walk, b: &Walk) -> bool {
    let minus_e1 = Step::new(0, true);
    match (a.is_empty(), b.is_empty()) {
        (false, false) => a.vertex(1) > b.vertex(1),
        (false, true) => a.steps()[0] == minus_e1,
        (true, false) => b.steps()[0] != minus_e1,
        (true, true) => true,
    }
}

/// Starts at the origin, self-avoiding, all later vertices lexicographically
/// below the origin.
pub fn has_first_part_shape(w: &Walk) -> bool {
    let origin = LatticePoint::origin(w.dim());
    w.start() == &origin
        && w.is_self_avoiding()
        && w.vertices()[1..].iter().all(|v| v < &origin)
}

pub fn decompose(w: &Walk) -> Result<Decomposition> {
    if !w.is_self_avoiding() {
        return Err(Error::NotSelfAvoiding);
    }
    let j = w.ne_index();
    let toward_start = w.subwalk(0, j).reversed();
    let toward_end = w.subwalk(j, w.len());
    let (first, second, origin_part) = if first_precedes(&toward_start, &toward_end) {
        (toward_start, toward_end, Part::First)
    } else {
        (toward_end, toward_start, Part::Second)
    };
    Ok(Decomposition {
        first,
        second,
        origin_part,
    })
}

/// Length of the first part of `w`'s decomposition.
pub fn first_part_len(w: &Walk) -> usize {
    let j = w.ne_index();
    let toward_start = w.subwalk(0, j).reversed();
    let toward_end = w.subwalk(j, w.len());
    if first_precedes(&toward_start, &toward_end) {
        j
    } else {
        w.len() - j
    }
}

/// Reassembles the walk: the reversed origin-containing part, then the other.
pub fn compose(dec: &Decomposition) -> Walk {
    let (head, tail) = match dec.origin_part {
        Part::First => (&dec.first, &dec.second),
        Part::Second => (&dec.second, &dec.first),
    };
    head.reversed().concat(tail).expect("parts share their start")
}

/// The canonical closed trace of a polygon.
pub fn polygon_to_path(p: &Polygon) -> Walk {
    p.path().clone()
}

/// `w'_i = w_{(j+i) mod (n+1)}` for a closing walk `w` of length `n`.
pub fn cyclic_shift(w: &Walk, j: usize) -> Result<Walk> {
    if !w.is_closing()? {
        return Err(Error::NotClosing);
    }
    let m = w.len() + 1;
    let vs = w.vertices();
    Walk::from_vertices((0..m).map(|i| vs[(j + i) % m].clone()).collect())
}

/// Histogram of `|γ^1|` over closing walks γ ∈ SAW^0_n, bins `0..=n`.
pub fn closing_first_length_histogram(n: usize, d: usize, cfg: &EnumConfig) -> Result<Vec<BigUint>> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be odd, got {n}")));
    }
    counting::first_length_histogram(n, d, true, cfg)
}

pub fn histogram_csv(hist: &[BigUint]) -> String {
    let mut out = String::from("j,count\n");
    for (j, c) in hist.iter().enumerate() {
        out.push_str(&format!("{j},{c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::codec::parse;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint::new(c).unwrap()
    }

    #[test]
    fn nonempty_south_arm_is_second() {
        // NE is the endpoint; the arm back to the start begins with -e2
        let w = parse("d=2;origin=0,0;steps=EN").unwrap();
        let dec = decompose(&w).unwrap();
        assert_eq!(dec.meeting_vertex(), &p(&[1, 1]));
        assert!(dec.first().is_empty());
        assert_eq!(dec.second().vertices(), &[p(&[1, 1]), p(&[1, 0]), p(&[0, 0])]);
        assert_eq!(compose(&dec), w);
    }

    #[test]
    fn nonempty_west_arm_is_first() {
        let w = parse("d=2;origin=0,0;steps=EE").unwrap();
        let dec = decompose(&w).unwrap();
        assert_eq!(dec.first().len(), 2);
        assert_eq!(dec.first().steps()[0], Step::WEST);
        assert!(dec.second().is_empty());
        assert_eq!(compose(&dec), w);
    }

    #[test]
    fn empty_walk() {
        let w = Walk::empty(p(&[3, 1]));
        let dec = decompose(&w).unwrap();
        assert!(dec.first().is_empty() && dec.second().is_empty());
        assert_eq!(compose(&dec), w);
    }

    #[test]
    fn interior_ne_vertex() {
        let w = parse("d=2;origin=0,0;steps=NESE").unwrap();
        let dec = decompose(&w).unwrap();
        assert_eq!(dec.meeting_vertex(), &p(&[1, 1]));
        assert_eq!(dec.first().vertex(1), &p(&[0, 1]));
        assert_eq!(dec.second().vertex(1), &p(&[1, 0]));
        assert_eq!(compose(&dec), w);
    }

    #[test]
    fn intersecting_parts_rejected() {
        let a = parse("d=2;origin=0,0;steps=WS").unwrap();
        let b = parse("d=2;origin=0,0;steps=SW").unwrap();
        assert!(matches!(
            Decomposition::new(a, b, Part::First),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn cyclic_shift_examples() {
        let w = parse("d=2;origin=0,0;steps=ENW").unwrap();
        let s = cyclic_shift(&w, 1).unwrap();
        assert_eq!(s.vertices(), &[p(&[1, 0]), p(&[1, 1]), p(&[0, 1]), p(&[0, 0])]);
        assert_eq!(cyclic_shift(&w, 4).unwrap(), w);
        assert!(cyclic_shift(&parse("d=2;origin=0,0;steps=EE").unwrap(), 1).is_err());
    }

    #[test]
    fn flat_histograms() {
        let cfg = EnumConfig::default();
        for n in [3, 5] {
            let h = closing_first_length_histogram(n, 2, &cfg).unwrap();
            assert_eq!(h.len(), n + 1);
            assert!(h.iter().all(|c| c == &h[0]), "n={n}: {h:?}");
        }
    }
}
