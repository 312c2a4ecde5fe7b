use std::collections::HashSet;
use std::fmt;

use super::point::{LatticePoint, Step};
use crate::error::{Error, Result};

/// A nearest-neighbour walk on Z^d: a starting point plus unit steps.
///
/// Vertices are derived once at construction; the value is immutable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    steps: Vec<Step>,
    vertices: Vec<LatticePoint>,
}

impl Walk {
    pub fn new(origin: LatticePoint, steps: Vec<Step>) -> Result<Self> {
        let d = origin.dim();
        if let Some(bad) = steps.iter().find(|s| s.axis() >= d) {
            return Err(Error::Parse(format!(
                "step {} is not a unit vector of Z^{d}",
                bad.signed_token()
            )));
        }
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        vertices.push(origin);
        for &s in &steps {
            let next = vertices.last().unwrap().offset(s);
            vertices.push(next);
        }
        Ok(Self { steps, vertices })
    }

    pub fn from_origin(d: usize, steps: Vec<Step>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Self::new(LatticePoint::origin(d), steps)
    }

    /// Builds a walk from its vertex list; consecutive vertices must be neighbours.
    pub fn from_vertices(vertices: Vec<LatticePoint>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidArgument("a walk needs at least one vertex".into()))?;
        let d = first.dim();
        let mut steps = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            if w[1].dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: w[1].dim(),
                });
            }
            let s = w[0]
                .step_to(&w[1])
                .ok_or_else(|| Error::Parse(format!("{} and {} are not neighbours", w[0], w[1])))?;
            steps.push(s);
        }
        Ok(Self { steps, vertices })
    }

    pub fn empty(at: LatticePoint) -> Self {
        Self {
            steps: Vec::new(),
            vertices: vec![at],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.vertices[i]
    }

    pub fn start(&self) -> &LatticePoint {
        &self.vertices[0]
    }

    pub fn end(&self) -> &LatticePoint {
        self.vertices.last().unwrap()
    }

    /// Index of the lexicographically maximal vertex (the first one, if repeated).
    pub fn ne_index(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.vertices.iter().enumerate().skip(1) {
            if v.ne_cmp(&self.vertices[best]).is_gt() {
                best = i;
            }
        }
        best
    }

    pub fn ne_vertex(&self) -> &LatticePoint {
        &self.vertices[self.ne_index()]
    }

    pub fn reversed(&self) -> Self {
        Self {
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
            vertices: self.vertices.iter().rev().cloned().collect(),
        }
    }

    pub fn translated(&self, by: &LatticePoint) -> Self {
        Self {
            steps: self.steps.clone(),
            vertices: self.vertices.iter().map(|v| v.add(by)).collect(),
        }
    }

    /// The subwalk on indices `[i, j]`.
    pub fn subwalk(&self, i: usize, j: usize) -> Self {
        assert!(i <= j && j <= self.len(), "subwalk [{i},{j}] out of range");
        Self {
            steps: self.steps[i..j].to_vec(),
            vertices: self.vertices[i..=j].to_vec(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::InvalidArgument(format!(
                "cannot join walk ending at {} to walk starting at {}",
                self.end(),
                other.start()
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(Self { steps, vertices })
    }

    /// Replaces steps `[from, to)` by `replacement`; the replaced stretch must have
    /// the same displacement.
    pub fn splice(&self, from: usize, to: usize, replacement: &[Step]) -> Result<Self> {
        let mut steps = self.steps[..from].to_vec();
        steps.extend_from_slice(replacement);
        steps.extend_from_slice(&self.steps[to..]);
        let w = Walk::new(self.start().clone(), steps)?;
        if w.end() != self.end() {
            return Err(Error::InvalidArgument("splice changes the walk endpoint".into()));
        }
        Ok(w)
    }

    /// Axis reflection used by the reflected-walk construction.
    ///
    /// The walk must start at the origin. Coordinate `a` of every vertex is
    /// negated, where `a` is the most significant axis of the NE order (e_2 in
    /// d=2, e_d in general), and the result is translated by `e_a`.
    pub fn reflect_for_construction(&self) -> Result<Self> {
        if !self.start().is_origin() {
            return Err(Error::NotAtOrigin);
        }
        let d = self.dim();
        let axis = distinguished_axis(d);
        let steps = self
            .steps
            .iter()
            .map(|&s| if s.axis() == axis { s.reversed() } else { s })
            .collect();
        Walk::new(LatticePoint::unit(d, axis), steps)
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(v))
    }

    /// A self-avoiding walk of length >= 2 closes when its endpoint neighbours its start.
    pub fn is_closing(&self) -> Result<bool> {
        if !self.is_self_avoiding() {
            return Err(Error::NotSelfAvoiding);
        }
        Ok(self.len() >= 2 && self.end().is_adjacent(self.start()))
    }

    /// `self` avoids `other` when both start at the same vertex and no other
    /// vertex is shared.
    pub fn avoids(&self, other: &Walk) -> bool {
        if self.start() != other.start() {
            return false;
        }
        let set: HashSet<&LatticePoint> = other.vertices[1..].iter().collect();
        !self.vertices[1..].iter().any(|v| set.contains(v))
    }
}

/// Zero-based axis of the reflection used to build alternatives to closing walks.
pub fn distinguished_axis(d: usize) -> usize {
    d - 1
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk[{} ", self.start())?;
        for s in &self.steps {
            write!(f, "{s:?}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint::new(c).unwrap()
    }

    fn walk(pts: &[&[i32]]) -> Walk {
        Walk::from_vertices(pts.iter().map(|c| p(c)).collect()).unwrap()
    }

    #[test]
    fn ne_vertex_examples() {
        assert_eq!(walk(&[&[0, 0], &[0, 1], &[1, 1]]).ne_vertex(), &p(&[1, 1]));
        assert_eq!(Walk::empty(p(&[2, 3])).ne_vertex(), &p(&[2, 3]));
        assert_eq!(walk(&[&[0, 0], &[1, 0], &[1, -1]]).ne_vertex(), &p(&[1, 0]));
    }

    #[test]
    fn reverse_examples() {
        let w = walk(&[&[0, 0], &[1, 0]]);
        assert_eq!(w.reversed(), walk(&[&[1, 0], &[0, 0]]));
        assert_eq!(w.reversed().reversed(), w);
        let e = Walk::empty(p(&[4, 4]));
        assert_eq!(e.reversed(), e);
    }

    #[test]
    fn reflection_examples() {
        let w = walk(&[&[0, 0], &[0, -1]]);
        assert_eq!(w.reflect_for_construction().unwrap(), walk(&[&[0, 1], &[0, 2]]));
        let w = walk(&[&[0, 0], &[1, 0]]);
        assert_eq!(w.reflect_for_construction().unwrap(), walk(&[&[0, 1], &[1, 1]]));
        let e = Walk::empty(p(&[0, 0]));
        assert_eq!(e.reflect_for_construction().unwrap(), Walk::empty(p(&[0, 1])));
        assert_eq!(
            walk(&[&[1, 0], &[2, 0]]).reflect_for_construction(),
            Err(Error::NotAtOrigin)
        );
    }

    #[test]
    fn reflection_in_three_dimensions_uses_last_axis() {
        let w = walk(&[&[0, 0, 0], &[0, 0, -1], &[1, 0, -1]]);
        let r = w.reflect_for_construction().unwrap();
        assert_eq!(r.vertices(), &[p(&[0, 0, 1]), p(&[0, 0, 2]), p(&[1, 0, 2])]);
    }

    #[test]
    fn self_avoidance_examples() {
        assert!(walk(&[&[0, 0], &[1, 0], &[1, 1]]).is_self_avoiding());
        assert!(!walk(&[&[0, 0], &[1, 0], &[0, 0]]).is_self_avoiding());
        assert!(Walk::empty(p(&[0, 0])).is_self_avoiding());
    }

    #[test]
    fn closing_examples() {
        assert_eq!(walk(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).is_closing(), Ok(true));
        assert_eq!(walk(&[&[0, 0], &[1, 0]]).is_closing(), Ok(false));
        let straight = Walk::from_origin(2, vec![Step::EAST; 5]).unwrap();
        assert_eq!(straight.is_closing(), Ok(false));
        assert_eq!(
            walk(&[&[0, 0], &[1, 0], &[0, 0]]).is_closing(),
            Err(Error::NotSelfAvoiding)
        );
    }

    #[test]
    fn from_vertices_rejects_jumps() {
        assert!(Walk::from_vertices(vec![p(&[0, 0]), p(&[2, 0])]).is_err());
    }

    #[test]
    fn avoids_requires_common_start() {
        let a = walk(&[&[0, 0], &[1, 0]]);
        let b = walk(&[&[0, 0], &[0, 1]]);
        assert!(a.avoids(&b));
        assert!(!a.avoids(&walk(&[&[0, 0], &[1, 0]])));
        assert!(!a.avoids(&walk(&[&[5, 0], &[6, 0]])));
    }
}
