//! Depth-first enumeration of self-avoiding walks on a bit-packed box.
//!
//! A walk of length `m` from the origin stays inside `[-m, m]^d`, so the box
//! needs no padding. Cells that may not be entered (visited, blocked, or
//! outside the allowed region) share one bitset.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::EnumConfig;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Step, Walk};

/// Refuse to allocate occupancy boxes with more cells than this.
const MAX_CELLS: usize = 1 << 28;

/// Which walks an enumeration visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// Walks starting at the origin (SAW_n).
    OriginStart,
    /// Walks whose NE vertex is the origin (SAW^0_n); each walk of SAW_n
    /// translated by minus its NE vertex.
    NeAtOrigin,
    /// Walks starting at the origin whose other vertices are all
    /// lexicographically below it: the shape of a first or second part.
    FirstPart,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }
}

#[derive(Clone)]
struct Grid {
    d: usize,
    radius: i32,
    side: usize,
    cells: usize,
    offsets: Vec<isize>,
    steps: Vec<Step>,
    center: usize,
}

impl Grid {
    fn new(d: usize, radius: usize) -> Result<Self> {
        let side = 2 * radius + 1;
        let cells = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(side).filter(|&c| c <= MAX_CELLS));
        let cells = cells.ok_or(Error::Guardrail {
            n: radius,
            d,
            predicted: (side as f64).powi(d as i32),
            budget: MAX_CELLS as f64,
        })?;
        let strides: Vec<usize> = (0..d).map(|a| side.pow(a as u32)).collect();
        let steps: Vec<Step> = Step::all(d).collect();
        let offsets = steps
            .iter()
            .map(|s| s.delta() as isize * strides[s.axis()] as isize)
            .collect();
        let center = strides.iter().map(|s| s * radius).sum();
        Ok(Self {
            d,
            radius: radius as i32,
            side,
            cells,
            offsets,
            steps,
            center,
        })
    }

    fn index(&self, p: &LatticePoint) -> Option<usize> {
        let mut idx = 0;
        let mut stride = 1;
        for &c in p.coords() {
            if c.abs() > self.radius {
                return None;
            }
            idx += (c + self.radius) as usize * stride;
            stride *= self.side;
        }
        Some(idx)
    }

    fn point(&self, mut idx: usize) -> LatticePoint {
        let mut coords = crate::lattice::Coords::with_capacity(self.d);
        for _ in 0..self.d {
            coords.push((idx % self.side) as i32 - self.radius);
            idx /= self.side;
        }
        LatticePoint::from_coords(coords)
    }

    #[inline]
    fn neighbour(&self, idx: usize, k: usize) -> usize {
        (idx as isize + self.offsets[k]) as usize
    }
}

/// A configured enumeration of self-avoiding walks of length `n` in Z^d.
///
/// Walks are visited in lexicographic order of their step sequences, with
/// steps ordered `+e1, -e1, +e2, ...`. Parallel entry points split the search
/// tree at a fixed prefix depth and merge per-prefix results in prefix order,
/// so their output does not depend on scheduling.
pub struct WalkSearch {
    n: usize,
    d: usize,
    constraint: Constraint,
    cfg: EnumConfig,
    blocked: Vec<LatticePoint>,
    first_steps: Option<Vec<Step>>,
}

impl WalkSearch {
    pub fn new(n: usize, d: usize, constraint: Constraint, cfg: &EnumConfig) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        cfg.check_guardrail(n, d)?;
        Ok(Self {
            n,
            d,
            constraint,
            cfg: cfg.clone(),
            blocked: Vec::new(),
            first_steps: None,
        })
    }

    /// Points the walk may not visit (the start is never blocked).
    pub fn blocked(mut self, points: impl IntoIterator<Item = LatticePoint>) -> Self {
        self.blocked.extend(points);
        self
    }

    /// Restricts the first step (ignored for `n = 0`).
    pub fn first_steps(mut self, steps: impl IntoIterator<Item = Step>) -> Self {
        self.first_steps = Some(steps.into_iter().collect());
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn state(&self) -> Result<State> {
        let grid = Grid::new(self.d, self.n)?;
        let mut forbidden = Bits::new(grid.cells);
        if self.constraint == Constraint::FirstPart {
            for idx in 0..grid.cells {
                let p = grid.point(idx);
                if p.ne_cmp(&LatticePoint::origin(self.d)).is_ge() {
                    forbidden.set(idx);
                }
            }
        }
        for p in &self.blocked {
            if p.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found: p.dim(),
                });
            }
            if let Some(i) = grid.index(p) {
                forbidden.set(i);
            }
        }
        forbidden.set(grid.center);
        let root_mask = self.first_steps.as_ref().map(|fs| {
            grid.steps
                .iter()
                .map(|s| fs.contains(s))
                .collect::<Vec<_>>()
        });
        Ok(State {
            pos: grid.center,
            grid,
            forbidden,
            steps: Vec::with_capacity(self.n),
            root_mask,
        })
    }

    fn target_mask(&self, grid: &Grid, targets: &[LatticePoint]) -> Bits {
        let mut mask = Bits::new(grid.cells);
        for t in targets {
            if let Some(i) = grid.index(t) {
                mask.set(i);
            }
        }
        mask
    }

    fn prefixes(&self, state: &mut State) -> Vec<Vec<Step>> {
        let depth = self.cfg.split_depth.min(self.n);
        let mut out = Vec::new();
        state.collect_prefixes(depth, &mut out);
        out
    }

    /// Number of walks.
    pub fn count(&self) -> Result<BigUint> {
        self.count_inner(None)
    }

    /// Number of walks whose endpoint is one of `targets`.
    pub fn count_ending_in(&self, targets: &[LatticePoint]) -> Result<BigUint> {
        self.count_inner(Some(targets))
    }

    fn count_inner(&self, targets: Option<&[LatticePoint]>) -> Result<BigUint> {
        let mut base = self.state()?;
        let mask = targets.map(|t| self.target_mask(&base.grid, t));
        let prefixes = self.prefixes(&mut base);
        let rem = self.n - self.cfg.split_depth.min(self.n);
        let counts: Vec<u64> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut s = base.clone();
                s.replay(prefix);
                s.count(rem, mask.as_ref())
            })
            .collect();
        Ok(counts
            .into_iter()
            .fold(BigUint::default(), |acc, c| acc + c))
    }

    /// Calls `visit` on every walk, serially and in enumeration order.
    /// Returns the number of walks visited.
    pub fn for_each(&self, mut visit: impl FnMut(&Walk)) -> Result<BigUint> {
        let mut state = self.state()?;
        let mut count = 0u64;
        let d = self.d;
        let constraint = self.constraint;
        state.visit(self.n, &mut |steps: &[Step], _end| {
            visit(&make_walk(d, constraint, steps));
            count += 1;
        });
        Ok(BigUint::from(count))
    }

    /// Like [`for_each`](Self::for_each) but visits concurrently; `visit` may
    /// be called from several threads in any order.
    pub fn par_for_each(&self, visit: impl Fn(&Walk) + Sync) -> Result<BigUint> {
        let d = self.d;
        let constraint = self.constraint;
        self.par_fold_steps(
            || 0u64,
            |acc, steps, _| {
                visit(&make_walk(d, constraint, steps));
                *acc += 1;
            },
            |a, b| *a += b,
        )
        .map(BigUint::from)
    }

    /// Folds over the raw step sequences of all walks (for `NeAtOrigin` these
    /// are the steps of the untranslated origin-start walk) together with the
    /// untranslated endpoint.
    ///
    /// Each prefix subtree folds from `identity()`; subtree results are merged
    /// left to right in enumeration order.
    pub fn par_fold_steps<T: Send>(
        &self,
        identity: impl Fn() -> T + Sync,
        fold: impl Fn(&mut T, &[Step], &LatticePoint) + Sync,
        merge: impl Fn(&mut T, T),
    ) -> Result<T> {
        let mut base = self.state()?;
        let prefixes = self.prefixes(&mut base);
        let rem = self.n - self.cfg.split_depth.min(self.n);
        let parts: Vec<T> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut s = base.clone();
                s.replay(prefix);
                let grid = s.grid.clone();
                let mut acc = identity();
                s.visit(rem, &mut |steps, end| fold(&mut acc, steps, &grid.point(end)));
                acc
            })
            .collect();
        let mut it = parts.into_iter();
        let mut acc = it.next().unwrap_or_else(&identity);
        for part in it {
            merge(&mut acc, part);
        }
        Ok(acc)
    }
}

fn make_walk(d: usize, constraint: Constraint, steps: &[Step]) -> Walk {
    let w = Walk::from_origin(d, steps.to_vec()).expect("engine steps are valid");
    match constraint {
        Constraint::NeAtOrigin => {
            let shift = LatticePoint::origin(d).sub(w.ne_vertex());
            w.translated(&shift)
        }
        _ => w,
    }
}

#[derive(Clone)]
struct State {
    grid: Grid,
    forbidden: Bits,
    pos: usize,
    steps: Vec<Step>,
    root_mask: Option<Vec<bool>>,
}

impl State {
    #[inline]
    fn allowed_step(&self, k: usize) -> bool {
        !(self.steps.is_empty() && self.root_mask.as_ref().is_some_and(|m| !m[k]))
    }

    fn push(&mut self, k: usize) {
        let next = self.grid.neighbour(self.pos, k);
        self.forbidden.set(next);
        self.steps.push(self.grid.steps[k]);
        self.pos = next;
    }

    fn pop(&mut self, k: usize) {
        self.forbidden.clear(self.pos);
        self.steps.pop();
        self.pos = (self.pos as isize - self.grid.offsets[k]) as usize;
    }

    fn replay(&mut self, prefix: &[Step]) {
        for s in prefix {
            let k = self.grid.steps.iter().position(|t| t == s).unwrap();
            self.push(k);
        }
    }

    fn collect_prefixes(&mut self, depth: usize, out: &mut Vec<Vec<Step>>) {
        if depth == 0 {
            out.push(self.steps.clone());
            return;
        }
        for k in 0..self.grid.offsets.len() {
            if !self.allowed_step(k) {
                continue;
            }
            let next = self.grid.neighbour(self.pos, k);
            if self.forbidden.get(next) {
                continue;
            }
            self.push(k);
            self.collect_prefixes(depth - 1, out);
            self.pop(k);
        }
    }

    fn count(&mut self, rem: usize, mask: Option<&Bits>) -> u64 {
        if rem == 0 {
            return mask.is_none_or(|m| m.get(self.pos)) as u64;
        }
        let mut total = 0;
        let root = self.steps.is_empty();
        if rem == 1 {
            for k in 0..self.grid.offsets.len() {
                if root && !self.allowed_step(k) {
                    continue;
                }
                let next = self.grid.neighbour(self.pos, k);
                if !self.forbidden.get(next) && mask.is_none_or(|m| m.get(next)) {
                    total += 1;
                }
            }
            return total;
        }
        for k in 0..self.grid.offsets.len() {
            if root && !self.allowed_step(k) {
                continue;
            }
            let next = self.grid.neighbour(self.pos, k);
            if self.forbidden.get(next) {
                continue;
            }
            self.push(k);
            total += self.count(rem - 1, mask);
            self.pop(k);
        }
        total
    }

    fn visit(&mut self, rem: usize, leaf: &mut dyn FnMut(&[Step], usize)) {
        if rem == 0 {
            leaf(&self.steps, self.pos);
            return;
        }
        for k in 0..self.grid.offsets.len() {
            if !self.allowed_step(k) {
                continue;
            }
            let next = self.grid.neighbour(self.pos, k);
            if self.forbidden.get(next) {
                continue;
            }
            self.push(k);
            self.visit(rem - 1, leaf);
            self.pop(k);
        }
    }
}
