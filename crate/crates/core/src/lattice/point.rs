use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Coords = SmallVec<[i32; 4]>;

/// A vertex of the hypercubic lattice Z^d, d >= 2.
///
/// The `Ord` impl is the lexicographic order used for NE vertices: the last
/// coordinate is compared first, then the one before it, down to coordinate 1.
/// For d=2 this is "most north, then most east".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint(Coords);

impl LatticePoint {
    pub fn new(coords: &[i32]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len()));
        }
        Ok(Self(Coords::from_slice(coords)))
    }

    pub fn origin(d: usize) -> Self {
        Self(smallvec::smallvec![0; d])
    }

    /// The unit vector `e_{axis+1}` (axis is zero-based).
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut p = Self::origin(d);
        p.0[axis] = 1;
        p
    }

    pub(crate) fn from_coords(coords: Coords) -> Self {
        debug_assert!(coords.len() >= 2);
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> i32 {
        self.0[axis]
    }

    pub fn offset(&self, step: Step) -> Self {
        let mut c = self.0.clone();
        c[step.axis()] += step.delta();
        Self(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The unit step leading from `self` to `other`, if they are neighbours.
    pub fn step_to(&self, other: &Self) -> Option<Step> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut found = None;
        for (axis, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            match b - a {
                0 => {}
                1 | -1 if found.is_none() => found = Some(Step::new(axis, b - a < 0)),
                _ => return None,
            }
        }
        found
    }

    pub fn is_adjacent(&self, other: &Self) -> bool {
        self.step_to(other).is_some()
    }

    /// NE comparison between points of equal dimension.
    pub fn ne_cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.ne_cmp(other))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic comparison of two lattice points, coordinate d first.
pub fn lex_compare_points(u: &LatticePoint, v: &LatticePoint) -> Result<Ordering> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(u.ne_cmp(v))
}

/// A signed unit step `±e_{axis+1}`.
///
/// Steps order as `+e1, -e1, +e2, -e2, ...`; in d=2 that is `E, W, N, S`.
/// Enumeration visits walks in this order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    axis: u8,
    negative: bool,
}

impl Step {
    pub const EAST: Step = Step { axis: 0, negative: false };
    pub const WEST: Step = Step { axis: 0, negative: true };
    pub const NORTH: Step = Step { axis: 1, negative: false };
    pub const SOUTH: Step = Step { axis: 1, negative: true };

    pub fn new(axis: usize, negative: bool) -> Self {
        debug_assert!(axis < u8::MAX as usize);
        Self {
            axis: axis as u8,
            negative,
        }
    }

    pub fn axis(self) -> usize {
        self.axis as usize
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn delta(self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn reversed(self) -> Self {
        Self {
            axis: self.axis,
            negative: !self.negative,
        }
    }

    /// All 2d steps in enumeration order.
    pub fn all(d: usize) -> impl Iterator<Item = Step> + Clone {
        (0..d).flat_map(|a| [Step::new(a, false), Step::new(a, true)])
    }

    /// Signed 1-based token, e.g. `+1` or `-2`.
    pub fn signed_token(self) -> String {
        format!("{}{}", if self.negative { '-' } else { '+' }, self.axis + 1)
    }

    /// Compass letter for d=2 steps.
    pub fn compass(self) -> Option<char> {
        match (self.axis, self.negative) {
            (0, false) => Some('E'),
            (0, true) => Some('W'),
            (1, false) => Some('N'),
            (1, true) => Some('S'),
            _ => None,
        }
    }
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compass() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.signed_token()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint::new(c).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(lex_compare_points(&p(&[0, 1]), &p(&[1, 1])), Ok(Ordering::Less));
        assert_eq!(lex_compare_points(&p(&[5, -3]), &p(&[0, 0])), Ok(Ordering::Less));
        let u = p(&[2, 7]);
        assert_eq!(lex_compare_points(&u, &u), Ok(Ordering::Equal));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            lex_compare_points(&p(&[0, 0]), &p(&[0, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(LatticePoint::new(&[1]).is_err());
    }

    #[test]
    fn total_order_on_small_box() {
        let pts: Vec<_> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| p(&[x, y])))
            .collect();
        for a in &pts {
            for b in &pts {
                let ab = lex_compare_points(a, b).unwrap();
                let ba = lex_compare_points(b, a).unwrap();
                assert_eq!(ab, ba.reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &pts {
                    if ab != Ordering::Greater && lex_compare_points(b, c).unwrap() != Ordering::Greater {
                        assert_ne!(lex_compare_points(a, c).unwrap(), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn higher_dimensions_compare_last_coordinate_first() {
        assert_eq!(p(&[9, 9, 0]).ne_cmp(&p(&[0, 0, 1])), Ordering::Less);
        assert_eq!(p(&[0, 1, 0]).ne_cmp(&p(&[5, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn step_order_is_east_west_north_south() {
        let v: Vec<_> = Step::all(2).collect();
        assert_eq!(v, vec![Step::EAST, Step::WEST, Step::NORTH, Step::SOUTH]);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn step_to_detects_neighbours() {
        assert_eq!(p(&[0, 0]).step_to(&p(&[0, -1])), Some(Step::SOUTH));
        assert_eq!(p(&[0, 0]).step_to(&p(&[1, 1])), None);
        assert_eq!(p(&[0, 0]).step_to(&p(&[0, 0])), None);
    }
}
