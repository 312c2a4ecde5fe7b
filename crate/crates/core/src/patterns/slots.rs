use serde_json::{json, Value};

use super::pair::{entry_point, PatternPair, PatternType, CUBE_SIDE};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Polygon, Step, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Segment {
    S1,
    S2,
}

/// One pattern occurrence and the cube hosting it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    /// Minimal corner of the slot cube.
    pub base: LatticePoint,
    /// Step at which the occurrence starts in the scanned walk.
    pub step: usize,
    /// The same start step in the walk with every slot set to type I.
    pub empty_step: usize,
    pub kind: PatternType,
    pub segment: Option<Segment>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SlotCounts {
    pub t_i: usize,
    pub t_ii: usize,
    pub n_i: usize,
    pub n_ii: usize,
    pub n_i1: usize,
    pub n_i2: usize,
    pub n_ii1: usize,
    pub n_ii2: usize,
    pub l_empty: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlotMap {
    pub slots: Vec<Slot>,
    /// Indices into `slots`.
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub counts: SlotCounts,
    /// End-segment length `floor(|p| / 10)`; zero before partitioning.
    pub segment_len: usize,
    /// Good-shell flag; `None` before partitioning.
    pub good: Option<bool>,
}

impl SlotMap {
    /// Indices of the slots in S1 ∪ S2, in walk order.
    pub fn local_slots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.s1.iter().chain(&self.s2).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn to_json(&self) -> Value {
        let slots: Vec<Value> = self
            .slots
            .iter()
            .map(|s| {
                json!({
                    "base": s.base.coords(),
                    "step": s.step,
                    "empty_step": s.empty_step,
                    "type": s.kind.label(),
                    "segment": match s.segment {
                        Some(Segment::S1) => Value::from("S1"),
                        Some(Segment::S2) => Value::from("S2"),
                        None => Value::Null,
                    },
                })
            })
            .collect();
        let c = &self.counts;
        json!({
            "slots": slots,
            "S1": self.s1,
            "S2": self.s2,
            "segment_len": self.segment_len,
            "good": self.good,
            "counts": {
                "T_I": c.t_i, "T_II": c.t_ii, "N_I": c.n_i, "N_II": c.n_ii,
                "N_I1": c.n_i1, "N_I2": c.n_i2, "N_II1": c.n_ii1, "N_II2": c.n_ii2,
                "l_empty": c.l_empty,
            },
        })
    }
}

fn cubes_overlap(a: &LatticePoint, b: &LatticePoint) -> bool {
    a.coords()
        .iter()
        .zip(b.coords())
        .all(|(x, y)| (x - y).abs() <= CUBE_SIDE)
}

fn matches_at(steps: &[Step], k: usize, pattern: &[Step]) -> bool {
    steps.len() >= k + pattern.len() && &steps[k..k + pattern.len()] == pattern
}

/// Finds every translate of either pattern along `w` (translation only).
///
/// Overlapping slot cubes are reported as an error.
pub fn scan_patterns(w: &Walk, pair: &PatternPair) -> Result<SlotMap> {
    if w.dim() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: w.dim(),
        });
    }
    let steps = w.steps();
    let entry = entry_point(w.dim());
    let mut slots: Vec<Slot> = Vec::new();
    let mut t_ii = 0;
    for k in 0..steps.len() {
        let kind = if matches_at(steps, k, pair.chi_i().steps()) {
            PatternType::I
        } else if matches_at(steps, k, pair.chi_ii().steps()) {
            PatternType::II
        } else {
            continue;
        };
        let base = w.vertex(k).sub(&entry);
        if let Some(other) = slots.iter().find(|s| cubes_overlap(&s.base, &base)) {
            return Err(Error::PatternOverlap(format!(
                "occurrences at steps {} and {k} share cube cells",
                other.step
            )));
        }
        slots.push(Slot {
            base,
            step: k,
            empty_step: k - 2 * t_ii,
            kind,
            segment: None,
        });
        if kind == PatternType::II {
            t_ii += 1;
        }
    }
    let t_i = slots.len() - t_ii;
    Ok(SlotMap {
        slots,
        s1: Vec::new(),
        s2: Vec::new(),
        counts: SlotCounts {
            t_i,
            t_ii,
            l_empty: w.len() - 2 * t_ii,
            ..Default::default()
        },
        segment_len: 0,
        good: None,
    })
}

/// Rebuilds a step sequence from the all-type-I steps and a type per slot.
pub(crate) fn assemble(
    empty_steps: &[Step],
    empty_positions: &[usize],
    kinds: &[PatternType],
    pair: &PatternPair,
) -> Vec<Step> {
    let li = pair.chi_i().len();
    let mut out = Vec::with_capacity(empty_steps.len() + 2 * kinds.len());
    let mut i = 0;
    let mut next = 0;
    while i < empty_steps.len() {
        if next < empty_positions.len() && empty_positions[next] == i {
            out.extend_from_slice(pair.pattern(kinds[next]).steps());
            i += li;
            next += 1;
        } else {
            out.push(empty_steps[i]);
            i += 1;
        }
    }
    out
}

/// Steps of `w` with every type II occurrence replaced by type I.
pub(crate) fn empty_steps(w: &Walk, map: &SlotMap, pair: &PatternPair) -> Vec<Step> {
    let positions: Vec<usize> = map.slots.iter().map(|s| s.empty_step).collect();
    let mut out = Vec::with_capacity(map.counts.l_empty);
    let mut k = 0;
    let steps = w.steps();
    for s in &map.slots {
        out.extend_from_slice(&steps[k..s.step]);
        out.extend_from_slice(pair.chi_i().steps());
        k = s.step + pair.pattern(s.kind).len();
    }
    out.extend_from_slice(&steps[k..]);
    debug_assert_eq!(
        assemble(&out, &positions, &map.slots.iter().map(|s| s.kind).collect::<Vec<_>>(), pair),
        steps
    );
    out
}

/// A polygon from canonical-path steps, checking that the steps are the
/// canonical trace of the result.
pub(crate) fn polygon_from_path_steps(d: usize, steps: Vec<Step>) -> Result<Polygon> {
    let path = Walk::from_origin(d, steps)?;
    let poly = Polygon::from_closed_path(&path)?;
    if poly.path() != &path {
        return Err(Error::InvalidPolygon(
            "pattern exchange moved the canonical trace".into(),
        ));
    }
    Ok(poly)
}

/// γ^empty: the polygon with every type II pattern replaced by type I,
/// together with the number of replacements.
pub fn empty_polygon(p: &Polygon, pair: &PatternPair) -> Result<(Polygon, usize)> {
    let map = scan_patterns(p.path(), pair)?;
    if map.counts.t_ii == 0 {
        return Ok((p.clone(), 0));
    }
    let steps = empty_steps(p.path(), &map, pair);
    Ok((polygon_from_path_steps(p.dim(), steps)?, map.counts.t_ii))
}

/// Scans `p` and splits its slots into S1 (inside the first `floor(|p|/10)`
/// steps of γ^empty) and S2 (inside the last `floor(|p|/10)` steps), filling
/// in the N counts and the good-shell flag at density `phi`.
pub fn slot_partition(p: &Polygon, pair: &PatternPair, phi: f64) -> Result<SlotMap> {
    let mut map = scan_patterns(p.path(), pair)?;
    let w = p.len() / 10;
    let l_empty = map.counts.l_empty;
    let li = pair.chi_i().len();
    for (idx, slot) in map.slots.iter_mut().enumerate() {
        if slot.empty_step + li <= w {
            slot.segment = Some(Segment::S1);
            map.s1.push(idx);
        } else if slot.empty_step + w >= l_empty {
            slot.segment = Some(Segment::S2);
            map.s2.push(idx);
        }
    }
    let count = |ids: &[usize], kind| ids.iter().filter(|&&i| map.slots[i].kind == kind).count();
    let c = &mut map.counts;
    c.n_i1 = count(&map.s1, PatternType::I);
    c.n_ii1 = count(&map.s1, PatternType::II);
    c.n_i2 = count(&map.s2, PatternType::I);
    c.n_ii2 = count(&map.s2, PatternType::II);
    c.n_i = c.n_i1 + c.n_i2;
    c.n_ii = c.n_ii1 + c.n_ii2;
    map.segment_len = w;
    let smallest = map.s1.len().min(map.s2.len()).min(c.n_i).min(c.n_ii);
    map.good = Some(smallest as f64 >= phi * p.len() as f64);
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::canonical_pattern_pair;

    #[test]
    fn pattern_itself_is_one_occurrence() {
        let pair = canonical_pattern_pair(2).unwrap();
        let map = scan_patterns(pair.chi_i(), &pair).unwrap();
        assert_eq!(map.slots.len(), 1);
        assert_eq!(map.slots[0].step, 0);
        assert_eq!(map.slots[0].kind, PatternType::I);
        assert!(map.slots[0].base.is_origin());
        let map = scan_patterns(pair.chi_ii(), &pair).unwrap();
        assert_eq!(map.slots[0].kind, PatternType::II);
        assert_eq!(map.counts.l_empty, 11);
    }

    #[test]
    fn short_walks_have_no_occurrences() {
        let pair = canonical_pattern_pair(2).unwrap();
        let w = pair.chi_i().subwalk(0, 10);
        assert!(scan_patterns(&w, &pair).unwrap().slots.is_empty());
    }

    #[test]
    fn spliced_corridor() {
        let pair = canonical_pattern_pair(2).unwrap();
        let mut steps = vec![Step::EAST; 6];
        steps.push(Step::SOUTH);
        steps.extend_from_slice(pair.chi_ii().steps());
        steps.push(Step::NORTH);
        steps.extend(vec![Step::EAST; 6]);
        let w = Walk::from_origin(2, steps).unwrap();
        let map = scan_patterns(&w, &pair).unwrap();
        assert_eq!(map.slots.len(), 1);
        assert_eq!(map.slots[0].step, 7);
        assert_eq!(map.slots[0].kind, PatternType::II);
    }
}
