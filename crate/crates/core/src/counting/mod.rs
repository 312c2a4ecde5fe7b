//! Exact enumeration: walk and polygon counts, closing probabilities and
//! first-part tables.

mod engine;

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub use engine::{Constraint, WalkSearch};

use crate::error::{Error, Result};
use crate::lattice::{ExactProb, LatticePoint, Step, Walk};
use crate::threshold::{cmp_ratio_with_power, Exponent};
use crate::two_part;

pub const DEFAULT_NODE_BUDGET: f64 = 1e10;
pub const DEFAULT_SPLIT_DEPTH: usize = 6;
pub const NODE_BUDGET_ENV: &str = "SAWLAB_NODE_BUDGET";

/// Published square-lattice walk counts c_1..c_16.
pub const SQUARE_WALKS: [u64; 16] = [
    4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292, 324932, 881500, 2374444, 6416596, 17245332,
];

/// Published square-lattice polygon counts `(n, p_n)` for even n up to 16.
pub const SQUARE_POLYGONS: [(usize, u64); 7] =
    [(4, 1), (6, 2), (8, 7), (10, 28), (12, 124), (14, 588), (16, 2938)];

#[derive(Clone, Debug, PartialEq)]
pub struct EnumConfig {
    pub node_budget: f64,
    pub split_depth: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

impl EnumConfig {
    /// Default settings with the node budget taken from `SAWLAB_NODE_BUDGET`
    /// when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(text) = std::env::var(NODE_BUDGET_ENV) {
            cfg.node_budget = text
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|b| *b > 0.0)
                .ok_or_else(|| Error::InvalidArgument(format!("{NODE_BUDGET_ENV}={text:?}")))?;
        }
        Ok(cfg)
    }

    pub fn check_guardrail(&self, n: usize, d: usize) -> Result<()> {
        let predicted = predicted_nodes(n, d);
        if predicted > self.node_budget {
            return Err(Error::Guardrail {
                n,
                d,
                predicted,
                budget: self.node_budget,
            });
        }
        Ok(())
    }
}

/// Rough search-volume estimate `g^n` used by the guardrail.
pub fn predicted_nodes(n: usize, d: usize) -> f64 {
    let growth = match d {
        2 => 2.7,
        3 => 4.7,
        _ => 2.0 * d as f64 - 1.0,
    };
    growth_pow(growth, n)
}

fn growth_pow(g: f64, n: usize) -> f64 {
    g.powf(n as f64)
}

/// Enumerates walks serially in lexicographic step order, calling `visitor`
/// on each, and returns how many there were.
pub fn enumerate_saw(
    n: usize,
    d: usize,
    constraint: Constraint,
    cfg: &EnumConfig,
    visitor: impl FnMut(&Walk),
) -> Result<BigUint> {
    WalkSearch::new(n, d, constraint, cfg)?.for_each(visitor)
}

/// Concurrent variant of [`enumerate_saw`]; visit order is unspecified.
pub fn par_enumerate_saw(
    n: usize,
    d: usize,
    constraint: Constraint,
    cfg: &EnumConfig,
    visitor: impl Fn(&Walk) + Sync,
) -> Result<BigUint> {
    WalkSearch::new(n, d, constraint, cfg)?.par_for_each(visitor)
}

pub fn count_saw(n: usize, d: usize, constraint: Constraint, cfg: &EnumConfig) -> Result<BigUint> {
    WalkSearch::new(n, d, constraint, cfg)?.count()
}

/// c_n, the number of n-step self-avoiding walks from the origin.
pub fn count_walks(n: usize, d: usize, cfg: &EnumConfig) -> Result<BigUint> {
    count_saw(n, d, Constraint::OriginStart, cfg)
}

/// Closing walks among the n-step self-avoiding walks from the origin.
pub fn count_closing_walks(n: usize, d: usize, cfg: &EnumConfig) -> Result<BigUint> {
    if n < 2 {
        WalkSearch::new(n, d, Constraint::OriginStart, cfg)?;
        return Ok(BigUint::zero());
    }
    let origin = LatticePoint::origin(d);
    let targets: Vec<_> = Step::all(d).map(|s| origin.offset(s)).collect();
    WalkSearch::new(n, d, Constraint::OriginStart, cfg)?.count_ending_in(&targets)
}

/// p_n, the number of n-edge polygons up to translation.
///
/// Each polygon is read off its canonical trace: from the NE vertex (origin)
/// step to the larger neighbour `-e_a`, run through lexicographically smaller
/// vertices only, and end at the smaller neighbour `-e_b` (`b > a`).
pub fn count_polygons(n: usize, d: usize, cfg: &EnumConfig) -> Result<BigUint> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "polygon length must be even and at least 4, got {n}"
        )));
    }
    let mut total = BigUint::zero();
    for a in 0..d {
        let targets: Vec<_> = (a + 1..d)
            .map(|b| LatticePoint::origin(d).offset(Step::new(b, true)))
            .collect();
        if targets.is_empty() {
            continue;
        }
        total += WalkSearch::new(n - 1, d, Constraint::FirstPart, cfg)?
            .first_steps([Step::new(a, true)])
            .count_ending_in(&targets)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub n: usize,
    pub d: usize,
    pub c_n: BigUint,
    pub p_n1: BigUint,
    pub closing_walks: BigUint,
    pub closing_direct: ExactProb,
    pub closing_identity: ExactProb,
}

/// Closing probability of a uniform n-step walk, computed two ways: by
/// counting closing walks, and as `2(n+1) p_{n+1} / c_n`.
pub fn closing_probabilities(n: usize, d: usize, cfg: &EnumConfig) -> Result<CountReport> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be odd and at least 3, got {n}")));
    }
    let c_n = count_walks(n, d, cfg)?;
    let closing_walks = count_closing_walks(n, d, cfg)?;
    let p_n1 = count_polygons(n + 1, d, cfg)?;
    let closing_direct = ExactProb::new(closing_walks.clone(), c_n.clone())?;
    let closing_identity = ExactProb::new(BigUint::from(2 * (n + 1)) * &p_n1, c_n.clone())?;
    Ok(CountReport {
        n,
        d,
        c_n,
        p_n1,
        closing_walks,
        closing_direct,
        closing_identity,
    })
}

/// Second parts that complete the first part `gamma` to an n-step walk with
/// NE vertex at the origin.
pub fn completion_search(gamma: &Walk, n: usize, cfg: &EnumConfig) -> Result<WalkSearch> {
    let d = gamma.dim();
    if !gamma.start().is_origin() {
        return Err(Error::NotAtOrigin);
    }
    if gamma.len() > n {
        return Err(Error::InvalidArgument(format!(
            "first part of length {} exceeds n={n}",
            gamma.len()
        )));
    }
    cfg.check_guardrail(n, d)?;
    let m = n - gamma.len();
    let origin = LatticePoint::origin(d);
    let allowed = Step::all(d).filter(|&s| {
        let phi = Walk::new(origin.clone(), vec![s]).unwrap();
        two_part::first_precedes(gamma, &phi)
    });
    Ok(WalkSearch::new(m, d, Constraint::FirstPart, cfg)?
        .blocked(gamma.vertices()[1..].iter().cloned())
        .first_steps(allowed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionCounts {
    pub completions: BigUint,
    pub closing: BigUint,
}

/// Counts completions of `gamma` to length `n`, and how many of the completed
/// walks close. `gamma` must have the shape of a first part.
pub fn completion_counts(gamma: &Walk, n: usize, cfg: &EnumConfig) -> Result<CompletionCounts> {
    if !two_part::has_first_part_shape(gamma) {
        return Err(Error::InvalidDecomposition(format!("{gamma:?} is not a first part")));
    }
    let d = gamma.dim();
    if gamma.len() == n {
        let valid = two_part::first_precedes(gamma, &Walk::empty(LatticePoint::origin(d)));
        let closes = valid && n >= 2 && gamma.end().is_adjacent(gamma.start());
        return Ok(CompletionCounts {
            completions: BigUint::from(valid as u8),
            closing: BigUint::from(closes as u8),
        });
    }
    let search = completion_search(gamma, n, cfg)?;
    let completions = search.count()?;
    let closing = if n >= 2 {
        let targets: Vec<_> = Step::all(d).map(|s| gamma.end().offset(s)).collect();
        search.count_ending_in(&targets)?
    } else {
        BigUint::zero()
    };
    Ok(CompletionCounts { completions, closing })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstPartRow {
    pub walk: Walk,
    pub completions: BigUint,
    pub closing: BigUint,
    pub q: ExactProb,
    pub in_hphi: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstPartTable {
    pub ell: usize,
    pub n: usize,
    pub alpha: Exponent,
    pub rows: Vec<FirstPartRow>,
}

impl FirstPartTable {
    pub fn total_completions(&self) -> BigUint {
        self.rows.iter().map(|r| &r.completions).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("ell,n,walk,completions,closing,q_num,q_den,in_hphi\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},\"{}\",{},{},{},{},{}\n",
                self.ell,
                self.n,
                crate::lattice::codec::serialize(&r.walk),
                r.completions,
                r.closing,
                r.q.numer(),
                r.q.denom(),
                r.in_hphi
            ));
        }
        out
    }
}

/// Every first part of length `ell` admitting at least one completion to
/// length `n`, with its exact conditional closing probability and whether
/// that probability exceeds `n^{-alpha}`.
pub fn first_part_table(
    ell: usize,
    n: usize,
    d: usize,
    alpha: Exponent,
    cfg: &EnumConfig,
) -> Result<FirstPartTable> {
    if ell > n {
        return Err(Error::InvalidArgument(format!("ell={ell} exceeds n={n}")));
    }
    cfg.check_guardrail(n, d)?;
    let mut candidates = Vec::new();
    enumerate_saw(ell, d, Constraint::FirstPart, cfg, |w| candidates.push(w.clone()))?;
    let mut rows = Vec::new();
    for walk in candidates {
        let counts = completion_counts(&walk, n, cfg)?;
        if counts.completions.is_zero() {
            continue;
        }
        let q = ExactProb::new(counts.closing.clone(), counts.completions.clone())?;
        let in_hphi = exceeds_power(&q, n, -alpha);
        rows.push(FirstPartRow {
            walk,
            completions: counts.completions,
            closing: counts.closing,
            q,
            in_hphi,
        });
    }
    Ok(FirstPartTable { ell, n, alpha, rows })
}

/// `q > n^exp`, decided exactly.
pub fn exceeds_power(q: &ExactProb, n: usize, exp: Exponent) -> bool {
    cmp_ratio_with_power(q.numer(), q.denom(), n as u64, exp) == Ordering::Greater
}

/// Histogram of first-part lengths over SAW^0_n, indexed by length `0..=n`;
/// restricted to closing walks when `closing_only`.
pub fn first_length_histogram(
    n: usize,
    d: usize,
    closing_only: bool,
    cfg: &EnumConfig,
) -> Result<Vec<BigUint>> {
    let search = WalkSearch::new(n, d, Constraint::NeAtOrigin, cfg)?;
    let origin = LatticePoint::origin(d);
    let hist = search.par_fold_steps(
        || vec![0u64; n + 1],
        |hist, steps, end| {
            if closing_only && !(n >= 2 && end.is_adjacent(&origin)) {
                return;
            }
            let w = Walk::new(origin.clone(), steps.to_vec()).unwrap();
            hist[two_part::first_part_len(&w)] += 1;
        },
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
    )?;
    Ok(hist.into_iter().map(BigUint::from).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub c_n: BigUint,
    pub root: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub d: usize,
    pub rows: Vec<GrowthRow>,
    pub pairs_checked: usize,
    /// Pairs `(m, k)` with `c_{m+k} > c_m c_k`; empty for correct counts.
    pub violations: Vec<(usize, usize)>,
    /// Least-squares fit of `ln c_n ≈ n ln mu + b sqrt(n) + a` over `n >= 2`;
    /// a diagnostic of the Hammersley-Welsh shape, not a bound.
    pub fit_mu: Option<f64>,
    pub fit_sqrt_coefficient: Option<f64>,
}

pub fn growth_report(n_max: usize, d: usize, cfg: &EnumConfig) -> Result<GrowthReport> {
    cfg.check_guardrail(n_max, d)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let c_n = count_walks(n, d, cfg)?;
        let root = if n == 0 {
            1.0
        } else {
            c_n.to_f64().unwrap().powf(1.0 / n as f64)
        };
        rows.push(GrowthRow { n, c_n, root });
    }
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for m in 1..=n_max {
        for k in 1..=n_max - m {
            pairs_checked += 1;
            if rows[m + k].c_n > &rows[m].c_n * &rows[k].c_n {
                violations.push((m, k));
            }
        }
    }
    let fit = fit_hammersley_welsh(&rows);
    Ok(GrowthReport {
        d,
        rows,
        pairs_checked,
        violations,
        fit_mu: fit.map(|f| f.0.exp()),
        fit_sqrt_coefficient: fit.map(|f| f.1),
    })
}

fn fit_hammersley_welsh(rows: &[GrowthRow]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64, f64)> = rows
        .iter()
        .filter(|r| r.n >= 2)
        .map(|r| (r.n as f64, (r.n as f64).sqrt(), r.c_n.to_f64().unwrap().ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    // normal equations for y = x1*u + x2*v + x3
    let mut m = [[0.0f64; 4]; 3];
    for &(u, v, y) in &pts {
        let f = [u, v, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += f[i] * f[j];
            }
            m[i][3] += f[i] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        m.swap(col, pivot);
        if m[col][col].abs() < 1e-12 {
            return None;
        }
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some((m[0][3] / m[0][0], m[1][3] / m[1][1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EnumConfig {
        EnumConfig::default()
    }

    #[test]
    fn small_walk_counts() {
        let expected = [1u64, 4, 12, 36, 100, 284, 780, 2172];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(count_walks(n, 2, &cfg()).unwrap(), BigUint::from(c), "n={n}");
        }
        assert_eq!(count_walks(1, 3, &cfg()).unwrap(), BigUint::from(6u32));
        assert_eq!(count_walks(0, 5, &cfg()).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn small_polygon_counts() {
        assert_eq!(count_polygons(4, 2, &cfg()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_polygons(6, 2, &cfg()).unwrap(), BigUint::from(2u32));
        assert_eq!(count_polygons(8, 2, &cfg()).unwrap(), BigUint::from(7u32));
        assert_eq!(count_polygons(4, 3, &cfg()).unwrap(), BigUint::from(3u32));
        assert!(count_polygons(5, 2, &cfg()).is_err());
        assert!(count_polygons(2, 2, &cfg()).is_err());
    }

    #[test]
    fn closing_spot_values() {
        for (n, num, den) in [(3, 2u32, 9u32), (5, 6, 71), (7, 28, 543)] {
            let r = closing_probabilities(n, 2, &cfg()).unwrap();
            let want = ExactProb::new(num, den).unwrap();
            assert_eq!(r.closing_direct, want);
            assert_eq!(r.closing_identity, want);
        }
    }

    #[test]
    fn guardrail_trips() {
        assert!(matches!(count_walks(100, 2, &cfg()), Err(Error::Guardrail { .. })));
        let tight = EnumConfig {
            node_budget: 10.0,
            ..cfg()
        };
        assert!(count_walks(3, 2, &tight).is_err());
    }

    #[test]
    fn split_depth_does_not_change_counts() {
        for depth in [0, 1, 3, 6, 20] {
            let c = EnumConfig {
                split_depth: depth,
                ..cfg()
            };
            assert_eq!(count_walks(7, 2, &c).unwrap(), BigUint::from(2172u32));
            assert_eq!(count_polygons(8, 2, &c).unwrap(), BigUint::from(7u32));
        }
    }

    #[test]
    fn ne_constraint_puts_ne_at_origin() {
        let origin = LatticePoint::origin(2);
        let count = enumerate_saw(5, 2, Constraint::NeAtOrigin, &cfg(), |w| {
            assert_eq!(w.ne_vertex(), &origin);
        })
        .unwrap();
        assert_eq!(count, BigUint::from(284u32));
    }

    #[test]
    fn serial_visit_order_is_lexicographic() {
        let mut seen: Vec<Vec<Step>> = Vec::new();
        enumerate_saw(4, 2, Constraint::OriginStart, &cfg(), |w| seen.push(w.steps().to_vec())).unwrap();
        assert!(seen.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn completions_partition_saw0() {
        let (n, d) = (6, 2);
        let hist = first_length_histogram(n, d, false, &cfg()).unwrap();
        for ell in 0..=n {
            let table = first_part_table(ell, n, d, Exponent::integer(1), &cfg()).unwrap();
            // each (first, second) pair is the decomposition of a walk and of its reversal
            assert_eq!(table.total_completions() * 2u32, hist[ell], "ell={ell}");
            assert!(table.rows.iter().all(|r| !r.completions.is_zero()));
        }
    }

    #[test]
    fn hphi_with_huge_alpha_is_positive_q() {
        let table = first_part_table(2, 5, 2, Exponent::integer(1000), &cfg()).unwrap();
        for r in &table.rows {
            assert_eq!(r.in_hphi, !r.q.is_zero());
        }
    }

    #[test]
    fn growth_is_submultiplicative() {
        let r = growth_report(10, 2, &cfg()).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.pairs_checked, 45);
        assert_eq!(r.rows[4].c_n, BigUint::from(100u32));
    }
}
