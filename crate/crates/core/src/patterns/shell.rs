use std::collections::HashSet;

use super::pair::{PatternPair, PatternType};
use super::slots::{assemble, empty_steps, polygon_from_path_steps, scan_patterns, slot_partition, SlotMap};
use crate::counting::{Constraint, EnumConfig, WalkSearch};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Polygon, Step, Walk};

/// Largest S1 ∪ S2 for which local shells are enumerated.
pub const MAX_LOCAL_SLOTS: usize = 20;

/// Identifies a local shell: polygons related by moving type II patterns
/// among the S1 ∪ S2 slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalShellKey {
    pub empty: Polygon,
    /// γ^empty start steps of the S1 ∪ S2 slots, in order.
    pub positions: Vec<usize>,
    /// Type II count within S1 ∪ S2.
    pub n_ii: usize,
    /// γ^empty start step and type of every other slot.
    pub frozen: Vec<(usize, PatternType)>,
}

/// A polygon's local shell, ready for member enumeration and resampling.
#[derive(Clone, Debug)]
pub struct LocalShell {
    pub key: LocalShellKey,
    pub map: SlotMap,
    empty_steps: Vec<Step>,
    all_positions: Vec<usize>,
    /// Positions in `map.slots` of the local slots.
    local: Vec<usize>,
    pair: PatternPair,
    d: usize,
}

impl LocalShell {
    pub fn new(p: &Polygon, pair: &PatternPair) -> Result<Self> {
        let map = slot_partition(p, pair, 0.0)?;
        let empty_steps = empty_steps(p.path(), &map, pair);
        let empty = polygon_from_path_steps(p.dim(), empty_steps.clone())?;
        let local = map.local_slots();
        let positions = local.iter().map(|&i| map.slots[i].empty_step).collect();
        let frozen = map
            .slots
            .iter()
            .enumerate()
            .filter(|(i, _)| !local.contains(i))
            .map(|(_, s)| (s.empty_step, s.kind))
            .collect();
        let all_positions = map.slots.iter().map(|s| s.empty_step).collect();
        Ok(Self {
            key: LocalShellKey {
                empty,
                positions,
                n_ii: map.counts.n_ii,
                frozen,
            },
            empty_steps,
            all_positions,
            local,
            map,
            pair: pair.clone(),
            d: p.dim(),
        })
    }

    /// Number of S1 ∪ S2 slots.
    pub fn slot_count(&self) -> usize {
        self.local.len()
    }

    /// Number of those slots that are in S1 (they come first).
    pub fn s1_count(&self) -> usize {
        self.map.s1.len()
    }

    pub fn type_ii_count(&self) -> usize {
        self.key.n_ii
    }

    /// The member whose type II local slots are exactly `chosen` (indices
    /// into the local slot list).
    pub fn member(&self, chosen: &[usize]) -> Result<Polygon> {
        if chosen.len() != self.key.n_ii || chosen.iter().any(|&c| c >= self.local.len()) {
            return Err(Error::InvalidArgument(format!(
                "a member needs {} distinct local slots below {}",
                self.key.n_ii,
                self.local.len()
            )));
        }
        let mut kinds: Vec<PatternType> = self.map.slots.iter().map(|s| s.kind).collect();
        for (li, &si) in self.local.iter().enumerate() {
            kinds[si] = if chosen.contains(&li) {
                PatternType::II
            } else {
                PatternType::I
            };
        }
        let steps = assemble(&self.empty_steps, &self.all_positions, &kinds, &self.pair);
        polygon_from_path_steps(self.d, steps)
    }

    /// Local slot indices holding type II in the shell's source polygon.
    pub fn source_choice(&self) -> Vec<usize> {
        self.local
            .iter()
            .enumerate()
            .filter(|(_, &si)| self.map.slots[si].kind == PatternType::II)
            .map(|(li, _)| li)
            .collect()
    }

    /// All `j`-subsets of the local slots in lexicographic order.
    pub fn choices(&self) -> Result<Vec<Vec<usize>>> {
        if self.local.len() > MAX_LOCAL_SLOTS {
            return Err(Error::SlotBudget {
                slots: self.local.len(),
                max: MAX_LOCAL_SLOTS,
            });
        }
        Ok(combinations(self.local.len(), self.key.n_ii))
    }

    pub fn members(&self) -> Result<Vec<Polygon>> {
        self.choices()?.iter().map(|c| self.member(c)).collect()
    }

    /// Type I count in S1 for the member given by `chosen`.
    pub fn n_i1_of(&self, chosen: &[usize]) -> usize {
        let s1 = self.s1_count();
        s1 - chosen.iter().filter(|&&c| c < s1).count()
    }

    pub fn pair(&self) -> &PatternPair {
        &self.pair
    }
}

/// All `j`-subsets of `0..k`, lexicographically ordered.
pub fn combinations(k: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < j - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= k {
        rec(0, k, j, &mut Vec::with_capacity(j), &mut out);
    }
    out
}

pub fn local_shell_key(p: &Polygon, pair: &PatternPair) -> Result<LocalShellKey> {
    Ok(LocalShell::new(p, pair)?.key)
}

/// Every polygon obtained from `p` by redistributing its S1 ∪ S2 type II
/// patterns, `p` included.
pub fn local_shell_members(p: &Polygon, pair: &PatternPair) -> Result<Vec<Polygon>> {
    LocalShell::new(p, pair)?.members()
}

/// Shell of a walk: its start, its all-type-I steps and where its slots sit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShellKey {
    pub start: LatticePoint,
    pub empty_steps: Vec<Step>,
    pub positions: Vec<usize>,
}

pub fn shell_key(w: &Walk, pair: &PatternPair) -> Result<ShellKey> {
    let map = scan_patterns(w, pair)?;
    Ok(ShellKey {
        start: w.start().clone(),
        empty_steps: empty_steps(w, &map, pair),
        positions: map.slots.iter().map(|s| s.empty_step).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceReport {
    pub equivalent: bool,
    /// Number of extension walks examined.
    pub checked: u64,
    /// A walk avoiding exactly one of the two inputs, if any.
    pub witness: Option<Walk>,
}

/// Checks, for every self-avoiding walk β of length at most `ext_len` from
/// the common start, that β avoids `gamma` iff it avoids `gamma_prime`.
/// The inputs must belong to the same shell.
pub fn avoidance_equivalence_check(
    gamma: &Walk,
    gamma_prime: &Walk,
    ext_len: usize,
    pair: &PatternPair,
    cfg: &EnumConfig,
) -> Result<AvoidanceReport> {
    if shell_key(gamma, pair)? != shell_key(gamma_prime, pair)? {
        return Err(Error::ShellMismatch);
    }
    shared_avoidance_witness(gamma, gamma_prime, ext_len, cfg)
}

/// The same comparison without the shell precondition.
pub fn shared_avoidance_witness(
    gamma: &Walk,
    gamma_prime: &Walk,
    ext_len: usize,
    cfg: &EnumConfig,
) -> Result<AvoidanceReport> {
    if gamma.start() != gamma_prime.start() {
        return Err(Error::InvalidArgument("walks start at different vertices".into()));
    }
    let start = gamma.start().clone();
    let a: HashSet<&LatticePoint> = gamma.vertices()[1..].iter().collect();
    let b: HashSet<&LatticePoint> = gamma_prime.vertices()[1..].iter().collect();
    let mut checked = 0u64;
    let mut witness = None;
    for len in 0..=ext_len {
        WalkSearch::new(len, gamma.dim(), Constraint::OriginStart, cfg)?.for_each(|beta| {
            checked += 1;
            if witness.is_some() {
                return;
            }
            let moved: Vec<LatticePoint> = beta.vertices()[1..].iter().map(|v| v.add(&start)).collect();
            let avoids_a = !moved.iter().any(|v| a.contains(v));
            let avoids_b = !moved.iter().any(|v| b.contains(v));
            if avoids_a != avoids_b {
                witness = Some(beta.translated(&start));
            }
        })?;
    }
    Ok(AvoidanceReport {
        equivalent: witness.is_none(),
        checked,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(3, 1).len(), 3);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(0, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        let c = combinations(5, 3);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }
}
