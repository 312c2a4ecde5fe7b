//! Constructed pattern-bearing polygons.
//!
//! Uniformly sampled small polygons carry no slots, so test polygons are
//! built by hanging pattern pockets below eastward corridors. The canonical
//! trace of a fixture runs:
//!
//! ```text
//! W^a  S  E^(a-1) [top pockets]      along y = 0, then y = -1
//! S^V  W^(e-1)  S^V                  down, west along y = -1-V, down
//! E^e [far pockets ... near pockets] along the bottom row
//! N^(1+2V)                           back up x = 0 to the origin
//! ```
//!
//! Each pocket replaces one east step by `S, chi, N`. Top pockets sit in the
//! first tenth of γ^empty (S1), near pockets in the last tenth (S2), far
//! pockets in the middle.

use super::pair::{canonical_pattern_pair, PatternPair, PatternType};
use super::slots::polygon_from_path_steps;
use crate::error::Result;
use crate::lattice::{Polygon, Step};

const DROP: usize = 6;
const POCKET_SPACING: i64 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSpec {
    pub top: Vec<PatternType>,
    pub far: Vec<PatternType>,
    pub near: Vec<PatternType>,
    /// Width of the bottom row; pads the polygon so the end segments are long
    /// enough to hold the top and near pockets.
    pub width: usize,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub spec: FixtureSpec,
    pub polygon: Polygon,
}

fn pocket(steps: &mut Vec<Step>, pair: &PatternPair, kind: PatternType) {
    steps.push(Step::SOUTH);
    steps.extend_from_slice(pair.pattern(kind).steps());
    steps.push(Step::NORTH);
}

/// Eastward run from `x0` to `x0 + len` with pockets at the given step starts.
fn corridor(steps: &mut Vec<Step>, pair: &PatternPair, x0: i64, len: usize, pockets: &[(i64, PatternType)]) {
    for x in x0..x0 + len as i64 {
        match pockets.iter().find(|(c, _)| *c == x) {
            Some(&(_, kind)) => pocket(steps, pair, kind),
            None => steps.push(Step::EAST),
        }
    }
}

pub fn build_fixture(spec: &FixtureSpec) -> Result<Polygon> {
    let pair = canonical_pattern_pair(2)?;
    let top_n = spec.top.len() as i64;
    let a = (6 + POCKET_SPACING * top_n) as usize;
    let e = spec.width.max(
        (POCKET_SPACING * (spec.far.len() + spec.near.len()) as i64 + 12) as usize,
    );
    let mut steps = Vec::new();
    steps.extend(std::iter::repeat_n(Step::WEST, a));
    steps.push(Step::SOUTH);
    let top: Vec<(i64, PatternType)> = spec
        .top
        .iter()
        .enumerate()
        .map(|(i, &k)| (-(a as i64) + 2 + POCKET_SPACING * i as i64, k))
        .collect();
    corridor(&mut steps, &pair, -(a as i64), a - 1, &top);
    steps.extend(std::iter::repeat_n(Step::SOUTH, DROP));
    steps.extend(std::iter::repeat_n(Step::WEST, e - 1));
    steps.extend(std::iter::repeat_n(Step::SOUTH, DROP));
    let mut bottom: Vec<(i64, PatternType)> = spec
        .far
        .iter()
        .enumerate()
        .map(|(i, &k)| (-(e as i64) + 3 + POCKET_SPACING * i as i64, k))
        .collect();
    bottom.extend(
        spec.near
            .iter()
            .enumerate()
            .map(|(i, &k)| (-3 - POCKET_SPACING * i as i64, k)),
    );
    corridor(&mut steps, &pair, -(e as i64), e, &bottom);
    steps.extend(std::iter::repeat_n(Step::NORTH, 1 + 2 * DROP));
    polygon_from_path_steps(2, steps)
}

fn kinds(bits: u32, count: usize) -> Vec<PatternType> {
    (0..count)
        .map(|i| if bits >> i & 1 == 1 { PatternType::II } else { PatternType::I })
        .collect()
}

/// 63 fixtures: one to three pockets in each end segment, zero to two in
/// the middle, assorted type assignments.
pub fn fixture_corpus() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for top_n in 1..=3usize {
        for near_n in 1..=3usize {
            for variant in 0..7u32 {
                let bits = variant.wrapping_mul(0x9E37_79B9) >> 7 ^ variant;
                let far = match variant % 3 {
                    0 => Vec::new(),
                    1 => vec![PatternType::I],
                    _ => vec![PatternType::II, PatternType::I],
                };
                let spec = FixtureSpec {
                    top: kinds(bits, top_n),
                    far,
                    near: kinds(bits >> top_n, near_n),
                    width: 440 + 9 * variant as usize,
                };
                let polygon = build_fixture(&spec)?;
                out.push(Fixture {
                    name: format!("t{top_n}-n{near_n}-v{variant}"),
                    spec,
                    polygon,
                });
            }
        }
    }
    Ok(out)
}

/// A fixture with two top and two near slots, two of them type II.
pub fn four_slot_fixture() -> Result<Polygon> {
    use PatternType::{I, II};
    build_fixture(&FixtureSpec {
        top: vec![II, I],
        far: vec![I],
        near: vec![I, II],
        width: 450,
    })
}

/// A fixture with one slot at each end.
pub fn two_slot_fixture(top: PatternType, near: PatternType) -> Result<Polygon> {
    build_fixture(&FixtureSpec {
        top: vec![top],
        far: Vec::new(),
        near: vec![near],
        width: 440,
    })
}

/// A slot-free polygon of the same corridor shape.
pub fn plain_fixture() -> Result<Polygon> {
    build_fixture(&FixtureSpec {
        top: Vec::new(),
        far: Vec::new(),
        near: Vec::new(),
        width: 440,
    })
}
