//! Brute-force reference enumerations. Deliberately naive: a hash set of
//! visited sites, plain recursion, no pruning beyond self-avoidance.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use saw_lab::lattice::{LatticePoint, Walk};

pub type Pt = [i32; 3];

pub fn neighbours(p: Pt, d: usize) -> Vec<Pt> {
    let mut out = Vec::with_capacity(2 * d);
    for axis in 0..d {
        for delta in [1, -1] {
            let mut q = p;
            q[axis] += delta;
            out.push(q);
        }
    }
    out
}

fn grow(path: &mut Vec<Pt>, seen: &mut HashSet<Pt>, n: usize, d: usize, visit: &mut dyn FnMut(&[Pt])) {
    if path.len() == n + 1 {
        visit(path);
        return;
    }
    for q in neighbours(*path.last().unwrap(), d) {
        if seen.insert(q) {
            path.push(q);
            grow(path, seen, n, d, visit);
            path.pop();
            seen.remove(&q);
        }
    }
}

/// Calls `visit` on the vertex list of every n-step walk from the origin.
pub fn each_walk(n: usize, d: usize, mut visit: impl FnMut(&[Pt])) {
    let mut path = vec![[0; 3]];
    let mut seen = HashSet::from([[0; 3]]);
    grow(&mut path, &mut seen, n, d, &mut visit);
}

pub fn walk_count(n: usize, d: usize) -> u64 {
    let mut c = 0;
    each_walk(n, d, |_| c += 1);
    c
}

pub fn adjacent(a: Pt, b: Pt) -> bool {
    (0..3).map(|i| (a[i] - b[i]).abs()).sum::<i32>() == 1
}

pub fn closing_count(n: usize, d: usize) -> u64 {
    let mut c = 0;
    each_walk(n, d, |w| c += (n >= 2 && adjacent(w[0], w[n])) as u64);
    c
}

/// Polygons with n edges, identified by their translated edge sets.
pub fn polygon_count(n: usize, d: usize) -> u64 {
    let mut seen: HashSet<BTreeSet<(Pt, Pt)>> = HashSet::new();
    if n < 4 {
        return 0;
    }
    each_walk(n - 1, d, |w| {
        if !adjacent(w[0], w[n - 1]) {
            return;
        }
        let mut lo = [i32::MAX; 3];
        for v in w {
            for i in 0..3 {
                lo[i] = lo[i].min(v[i]);
            }
        }
        let shift = |v: Pt| [v[0] - lo[0], v[1] - lo[1], v[2] - lo[2]];
        let mut edges = BTreeSet::new();
        for i in 0..n {
            let (a, b) = (shift(w[i]), shift(w[(i + 1) % n]));
            edges.insert(if a < b { (a, b) } else { (b, a) });
        }
        seen.insert(edges);
    });
    seen.len() as u64
}

/// Order used for the NE vertex: last coordinate most significant.
pub fn lex(a: Pt, b: Pt, d: usize) -> Ordering {
    (0..d).rev().map(|i| a[i].cmp(&b[i])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// The walk translated so that its lexicographically largest vertex is the
/// origin.
pub fn to_ne_origin(w: &[Pt], d: usize) -> Vec<Pt> {
    let top = *w.iter().max_by(|a, b| lex(**a, **b, d)).unwrap();
    w.iter().map(|v| [v[0] - top[0], v[1] - top[1], v[2] - top[2]]).collect()
}

/// Split at the NE vertex; returns (first, second, origin in first).
pub fn split(w: &[Pt], d: usize) -> (Vec<Pt>, Vec<Pt>, bool) {
    let j = (0..w.len()).max_by(|&a, &b| lex(w[a], w[b], d)).unwrap();
    let back: Vec<Pt> = w[..=j].iter().rev().copied().collect();
    let fwd: Vec<Pt> = w[j..].to_vec();
    let back_first = match (back.len() > 1, fwd.len() > 1) {
        (true, true) => lex(back[1], fwd[1], d) == Ordering::Greater,
        (true, false) => back[1][0] == back[0][0] - 1,
        (false, true) => fwd[1][0] != fwd[0][0] - 1,
        (false, false) => true,
    };
    if back_first {
        (back, fwd, true)
    } else {
        (fwd, back, false)
    }
}

pub fn to_walk(w: &[Pt], d: usize) -> Walk {
    let vs = w.iter().map(|v| LatticePoint::new(&v[..d]).unwrap()).collect();
    Walk::from_vertices(vs).unwrap()
}

/// Walks with NE vertex at the origin, one per walk from the origin.
pub fn each_ne_walk(n: usize, d: usize, mut visit: impl FnMut(&[Pt])) {
    each_walk(n, d, |w| visit(&to_ne_origin(w, d)));
}

/// First_{ell,n}: distinct first parts of length `ell` over SAW^0_n.
pub fn first_parts(ell: usize, n: usize, d: usize) -> HashSet<Vec<Pt>> {
    let mut out = HashSet::new();
    each_ne_walk(n, d, |w| {
        let (first, _, _) = split(w, d);
        if first.len() == ell + 1 {
            out.insert(first);
        }
    });
    out
}
