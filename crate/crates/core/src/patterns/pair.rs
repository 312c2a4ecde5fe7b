use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Step, Walk};

/// Side length of the pattern cube `[0, 3]^d`.
pub const CUBE_SIDE: i32 = 3;

const SEARCH_NODE_LIMIT: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternType {
    I,
    II,
}

impl PatternType {
    pub fn swapped(self) -> Self {
        match self {
            PatternType::I => PatternType::II,
            PatternType::II => PatternType::I,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PatternType::I => "I",
            PatternType::II => "II",
        }
    }
}

/// The type I / type II pattern pair, two walks through the cube `[0,3]^d`
/// from `(1,3,1,...,1)` to `(2,3,1,...,1)` that differ by an inward detour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPair {
    chi_i: Walk,
    chi_ii: Walk,
}

impl PatternPair {
    /// Pairs two walks without checking them; see [`validate_pattern_pair`].
    pub fn new(chi_i: Walk, chi_ii: Walk) -> Self {
        Self { chi_i, chi_ii }
    }

    pub fn chi_i(&self) -> &Walk {
        &self.chi_i
    }

    pub fn chi_ii(&self) -> &Walk {
        &self.chi_ii
    }

    pub fn pattern(&self, kind: PatternType) -> &Walk {
        match kind {
            PatternType::I => &self.chi_i,
            PatternType::II => &self.chi_ii,
        }
    }

    pub fn dim(&self) -> usize {
        self.chi_i.dim()
    }

    /// Index in `chi_ii` of the vertex that sits at index `i` of `chi_i`.
    ///
    /// Both patterns agree up to the start of the detour and then run two
    /// steps apart.
    pub fn shifted_index(&self, i: usize) -> usize {
        if i <= self.detour_start() {
            i
        } else {
            i + 2
        }
    }

    /// Last common vertex index before the type II detour.
    pub fn detour_start(&self) -> usize {
        self.chi_i
            .steps()
            .iter()
            .zip(self.chi_ii.steps())
            .take_while(|(a, b)| a == b)
            .count()
    }
}

pub fn entry_point(d: usize) -> LatticePoint {
    let mut c = vec![1; d];
    c[1] = 3;
    LatticePoint::new(&c).expect("d >= 2")
}

pub fn exit_point(d: usize) -> LatticePoint {
    let mut c = vec![1; d];
    c[0] = 2;
    c[1] = 3;
    LatticePoint::new(&c).expect("d >= 2")
}

fn in_cube(p: &LatticePoint) -> bool {
    p.coords().iter().all(|&c| (0..=CUBE_SIDE).contains(&c))
}

fn on_boundary(p: &LatticePoint) -> bool {
    in_cube(p) && p.coords().iter().any(|&c| c == 0 || c == CUBE_SIDE)
}

fn is_interior(p: &LatticePoint) -> bool {
    p.coords().iter().all(|&c| c > 0 && c < CUBE_SIDE)
}

fn boundary_vertices(d: usize) -> Vec<LatticePoint> {
    let side = (CUBE_SIDE + 1) as usize;
    (0..side.pow(d as u32))
        .map(|mut idx| {
            let coords: Vec<i32> = (0..d)
                .map(|_| {
                    let c = (idx % side) as i32;
                    idx /= side;
                    c
                })
                .collect();
            LatticePoint::new(&coords).unwrap()
        })
        .filter(on_boundary)
        .collect()
}

/// The pattern pair for dimension `d`: stored for d=2, found by a bounded
/// Hamiltonian-path search on the cube boundary otherwise.
pub fn canonical_pattern_pair(d: usize) -> Result<PatternPair> {
    use Step as S;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if d == 2 {
        let (e, w, n, s) = (S::EAST, S::WEST, S::NORTH, S::SOUTH);
        let chi_i = Walk::new(entry_point(2), vec![w, s, s, s, e, e, e, n, n, n, w])?;
        let chi_ii = Walk::new(entry_point(2), vec![w, s, s, s, e, n, e, s, e, n, n, n, w])?;
        return Ok(PatternPair::new(chi_i, chi_ii));
    }
    search_pattern_pair(d)
}

/// Outcome of [`validate_pattern_pair`]: empty `violations` means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternValidation {
    pub violations: Vec<String>,
}

impl PatternValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_pattern_pair(pair: &PatternPair) -> PatternValidation {
    let mut violations = Vec::new();
    let d = pair.chi_i.dim();
    if pair.chi_ii.dim() != d {
        violations.push(format!(
            "dimension mismatch: chi_I in Z^{d}, chi_II in Z^{}",
            pair.chi_ii.dim()
        ));
        return PatternValidation { violations };
    }
    let boundary = boundary_vertices(d);
    for (name, w) in [("chi_I", &pair.chi_i), ("chi_II", &pair.chi_ii)] {
        if !w.is_self_avoiding() {
            violations.push(format!("{name} is not self-avoiding"));
        }
        if let Some(v) = w.vertices().iter().find(|v| !in_cube(v)) {
            violations.push(format!("{name} leaves the cube at {v}"));
        }
        let visited: HashSet<&LatticePoint> = w.vertices().iter().collect();
        let missing = boundary.iter().filter(|v| !visited.contains(v)).count();
        if missing > 0 {
            violations.push(format!("{name} misses {missing} boundary vertices"));
        }
        if w.start() != &entry_point(d) {
            violations.push(format!("{name} starts at {}, not {}", w.start(), entry_point(d)));
        }
        if w.end() != &exit_point(d) {
            violations.push(format!("{name} ends at {}, not {}", w.end(), exit_point(d)));
        }
    }
    if pair.chi_ii.len() != pair.chi_i.len() + 2 {
        violations.push(format!(
            "|chi_II| = {} but |chi_I| + 2 = {}",
            pair.chi_ii.len(),
            pair.chi_i.len() + 2
        ));
    }
    PatternValidation { violations }
}

fn search_pattern_pair(d: usize) -> Result<PatternPair> {
    let vertices = boundary_vertices(d);
    let index: std::collections::HashMap<&LatticePoint, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let neighbours: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            Step::all(d)
                .filter_map(|s| index.get(&v.offset(s)).copied())
                .collect()
        })
        .collect();
    let start = index[&entry_point(d)];
    let target = index[&exit_point(d)];
    let mut search = HamiltonSearch {
        neighbours: &neighbours,
        visited: vec![false; vertices.len()],
        path: vec![start],
        target,
        nodes: 0,
    };
    search.visited[start] = true;
    let mut found = None;
    search.run(&mut |path| {
        let walk = Walk::from_vertices(path.iter().map(|&i| vertices[i].clone()).collect()).ok()?;
        with_detour(&walk).map(|chi_ii| PatternPair::new(walk, chi_ii))
    }, &mut found);
    found.ok_or_else(|| {
        Error::PatternSearch(format!(
            "no boundary Hamiltonian path with an inward detour found in d={d} within {SEARCH_NODE_LIMIT} nodes"
        ))
    })
}

/// Replaces the first edge `u -> v` whose inward translates are interior by
/// `u -> u+e -> v+e -> v`.
fn with_detour(chi: &Walk) -> Option<Walk> {
    let d = chi.dim();
    let vs = chi.vertices();
    for i in 0..chi.len() {
        for s in Step::all(d) {
            let (a, b) = (vs[i].offset(s), vs[i + 1].offset(s));
            if is_interior(&a) && is_interior(&b) {
                let mut out = vs[..=i].to_vec();
                out.push(a);
                out.push(b);
                out.extend_from_slice(&vs[i + 1..]);
                return Walk::from_vertices(out).ok();
            }
        }
    }
    None
}

struct HamiltonSearch<'a> {
    neighbours: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
    target: usize,
    nodes: u64,
}

impl HamiltonSearch<'_> {
    fn free_degree(&self, v: usize) -> usize {
        self.neighbours[v].iter().filter(|&&u| !self.visited[u]).count()
    }

    /// Every unvisited vertex other than the target still needs two usable
    /// neighbours, the target one, and the unvisited part must be connected
    /// to the current vertex.
    fn completable(&self, cur: usize) -> bool {
        let usable = |v: usize| {
            self.neighbours[v]
                .iter()
                .filter(|&&u| !self.visited[u] || u == cur)
                .count()
        };
        let mut unvisited = 0;
        for v in 0..self.visited.len() {
            if self.visited[v] {
                continue;
            }
            unvisited += 1;
            let need = if v == self.target { 1 } else { 2 };
            if usable(v) < need {
                return false;
            }
        }
        let mut seen = vec![false; self.visited.len()];
        let mut stack = vec![cur];
        let mut reached = 0;
        seen[cur] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.neighbours[v] {
                if !self.visited[u] && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == unvisited
    }

    fn run<T>(&mut self, accept: &mut dyn FnMut(&[usize]) -> Option<T>, found: &mut Option<T>) {
        if found.is_some() || self.nodes > SEARCH_NODE_LIMIT {
            return;
        }
        self.nodes += 1;
        let cur = *self.path.last().unwrap();
        if self.path.len() == self.visited.len() {
            if cur == self.target {
                *found = accept(&self.path);
            }
            return;
        }
        if cur == self.target {
            return;
        }
        if !self.completable(cur) {
            return;
        }
        let mut next: Vec<usize> = self.neighbours[cur]
            .iter()
            .copied()
            .filter(|&u| !self.visited[u])
            .collect();
        // Warnsdorff: most constrained neighbour first, target last
        next.sort_by_key(|&u| (u == self.target, self.free_degree(u), u));
        for u in next {
            self.visited[u] = true;
            self.path.push(u);
            self.run(accept, found);
            self.path.pop();
            self.visited[u] = false;
            if found.is_some() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pair_validates() {
        let pair = canonical_pattern_pair(2).unwrap();
        assert!(validate_pattern_pair(&pair).is_valid());
        assert_eq!(pair.chi_i().len(), 11);
        assert_eq!(pair.chi_ii().len(), 13);
        assert_eq!(pair.detour_start(), 5);
    }

    #[test]
    fn shifted_index_maps_common_vertices() {
        let pair = canonical_pattern_pair(2).unwrap();
        for i in 0..=pair.chi_i().len() {
            assert_eq!(pair.chi_i().vertex(i), pair.chi_ii().vertex(pair.shifted_index(i)));
        }
    }

    #[test]
    fn missing_boundary_vertex_is_reported() {
        let pair = canonical_pattern_pair(2).unwrap();
        let truncated = PatternPair::new(pair.chi_i().subwalk(0, 10), pair.chi_ii().clone());
        let v = validate_pattern_pair(&truncated);
        assert!(!v.is_valid());
        assert!(v.violations.iter().any(|m| m.contains("boundary")));
    }

    #[test]
    fn equal_lengths_are_reported() {
        let pair = canonical_pattern_pair(2).unwrap();
        let same = PatternPair::new(pair.chi_i().clone(), pair.chi_i().clone());
        assert!(!validate_pattern_pair(&same).is_valid());
    }

    #[test]
    fn three_dimensional_pair_is_found() {
        let pair = canonical_pattern_pair(3).unwrap();
        let v = validate_pattern_pair(&pair);
        assert!(v.is_valid(), "{:?}", v.violations);
        assert_eq!(pair.chi_i().len(), 55);
    }
}
