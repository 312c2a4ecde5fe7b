use std::collections::{BTreeSet, HashMap};

use super::point::LatticePoint;
use super::walk::Walk;
use crate::error::{Error, Result};

/// An unordered nearest-neighbour edge, stored with its endpoints sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(LatticePoint, LatticePoint);

impl Edge {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Result<Self> {
        if !a.is_adjacent(&b) {
            return Err(Error::InvalidPolygon(format!("{a} and {b} are not neighbours")));
        }
        Ok(if a <= b { Self(a, b) } else { Self(b, a) })
    }

    pub fn endpoints(&self) -> (&LatticePoint, &LatticePoint) {
        (&self.0, &self.1)
    }

    fn translated(&self, by: &LatticePoint) -> Self {
        Self(self.0.add(by), self.1.add(by))
    }
}

/// A self-avoiding polygon, normalised so that its NE vertex is the origin.
///
/// Two polygons are equal iff their edge sets are equal, i.e. iff they are
/// translates of one another before normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    edges: BTreeSet<Edge>,
    path: Walk,
}

impl Polygon {
    /// The polygon obtained by adding the missing edge to a closing walk.
    pub fn from_closing_walk(w: &Walk) -> Result<Self> {
        if !w.is_closing()? {
            return Err(Error::NotClosing);
        }
        let mut edges = Vec::with_capacity(w.len() + 1);
        for pair in w.vertices().windows(2) {
            edges.push(Edge::new(pair[0].clone(), pair[1].clone())?);
        }
        edges.push(Edge::new(w.end().clone(), w.start().clone())?);
        Self::from_edges(edges)
    }

    /// A closed trace (first vertex equal to the last) of a polygon.
    pub fn from_closed_path(w: &Walk) -> Result<Self> {
        if w.start() != w.end() {
            return Err(Error::InvalidPolygon("path is not closed".into()));
        }
        let edges = w
            .vertices()
            .windows(2)
            .map(|pair| Edge::new(pair[0].clone(), pair[1].clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(edges)
    }

    /// Validates an edge collection and normalises it to NE = origin.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            if !set.insert(e.clone()) {
                return Err(Error::InvalidPolygon(format!("repeated edge {:?}", e)));
            }
        }
        let first = set
            .iter()
            .next()
            .ok_or_else(|| Error::InvalidPolygon("no edges".into()))?;
        let d = first.0.dim();
        if let Some(e) = set.iter().find(|e| e.0.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: e.0.dim(),
            });
        }
        if set.len() < 4 {
            return Err(Error::InvalidPolygon(format!("length {} is below 4", set.len())));
        }
        let mut adjacency: HashMap<&LatticePoint, Vec<&LatticePoint>> = HashMap::new();
        for e in &set {
            adjacency.entry(&e.0).or_default().push(&e.1);
            adjacency.entry(&e.1).or_default().push(&e.0);
        }
        if let Some((v, nb)) = adjacency.iter().find(|(_, nb)| nb.len() != 2) {
            return Err(Error::InvalidPolygon(format!("vertex {v} has degree {}", nb.len())));
        }
        let ne = (*adjacency.keys().max().unwrap()).clone();
        let shift = LatticePoint::origin(d).sub(&ne);
        let edges: BTreeSet<Edge> = set.iter().map(|e| e.translated(&shift)).collect();
        let path = trace(&edges, d)?;
        Ok(Self { edges, path })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn dim(&self) -> usize {
        self.path.dim()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// The canonical closed trace: starts and ends at the origin, first step
    /// towards the lexicographically larger of the two origin neighbours.
    pub fn path(&self) -> &Walk {
        &self.path
    }

    /// The canonical trace without its final edge: a closing walk of length `len() - 1`.
    pub fn closing_walk(&self) -> Walk {
        self.path.subwalk(0, self.len() - 1)
    }

    /// Vertices in canonical trace order (origin first, not repeated).
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.path.vertices()[..self.len()]
    }
}

fn trace(edges: &BTreeSet<Edge>, d: usize) -> Result<Walk> {
    let mut adjacency: HashMap<&LatticePoint, [Option<&LatticePoint>; 2]> = HashMap::new();
    for e in edges {
        for (a, b) in [(&e.0, &e.1), (&e.1, &e.0)] {
            let slot = adjacency.entry(a).or_insert([None, None]);
            if slot[0].is_none() {
                slot[0] = Some(b);
            } else {
                slot[1] = Some(b);
            }
        }
    }
    let origin = LatticePoint::origin(d);
    let [a, b] = adjacency[&origin];
    let (a, b) = (a.unwrap(), b.unwrap());
    let first = if a > b { a } else { b };
    let mut vertices = vec![origin.clone(), first.clone()];
    let mut prev = &origin;
    let mut cur = first;
    while *cur != origin {
        let [x, y] = adjacency[cur];
        let next = if x.unwrap() == prev { y.unwrap() } else { x.unwrap() };
        prev = cur;
        cur = next;
        vertices.push(cur.clone());
        if vertices.len() > edges.len() + 1 {
            break;
        }
    }
    if vertices.len() != edges.len() + 1 {
        return Err(Error::InvalidPolygon("edges do not form a single cycle".into()));
    }
    Walk::from_vertices(vertices)
}
