//! Charming indices and snakes, the bad-index lemma, the first-part law
//! identity, the reflection construction and the avoidance bootstrap.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::counting::{
    completion_counts, count_polygons, first_length_histogram, first_part_table, Constraint, EnumConfig,
    WalkSearch,
};
use crate::error::{Error, Result};
use crate::lattice::{distinguished_axis, ExactProb, LatticePoint, Step, Walk};
use crate::threshold::{cmp_int_with_power, cmp_ratio_with_power, floor_power, Exponent};
use crate::two_part::{decompose, has_first_part_shape};

#[derive(Clone, Debug, PartialEq)]
pub struct SnakeParams {
    pub d: usize,
    /// Inverse charm.
    pub alpha: Exponent,
    /// Snake length exponent.
    pub beta: Exponent,
    /// Charm deficit.
    pub eta: Exponent,
    pub n: usize,
    pub ell: usize,
}

impl SnakeParams {
    pub fn new(d: usize, alpha: Exponent, beta: Exponent, eta: Exponent, n: usize, ell: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("n must be odd, got {n}")));
        }
        if ell > n {
            return Err(Error::InvalidArgument(format!("ell={ell} exceeds n={n}")));
        }
        if eta.numer() < 0 || eta >= beta {
            return Err(Error::InvalidArgument(format!("need 0 <= eta < beta, got eta={eta}, beta={beta}")));
        }
        Ok(Self {
            d,
            alpha,
            beta,
            eta,
            n,
            ell,
        })
    }

    pub fn delta(&self) -> Exponent {
        self.beta - self.eta - self.alpha
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodConstants {
    pub d: usize,
    pub alpha: Exponent,
    pub beta: Exponent,
    pub eta: Exponent,
    pub delta: Exponent,
    /// `c = 2^(1/(5(4d+1)))`.
    pub c: f64,
    pub c_symbolic: String,
    /// `K = 20(4d+1) log(4d) / log 2`.
    pub k: f64,
    pub k_symbolic: String,
    /// `K^(1/delta)`; `None` when delta <= 0.
    pub threshold_n: Option<f64>,
}

impl MethodConstants {
    pub fn delta_positive(&self) -> bool {
        self.delta.is_positive()
    }

    /// `2(n+1) c^(-n^delta / 2)`, the closing-probability bound.
    pub fn bound(&self, n: f64) -> f64 {
        let e = n.powf(self.delta.to_f64()) / 2.0;
        2.0 * (n + 1.0) * self.c.powf(-e)
    }

    /// Whether `n` reaches the size the method needs.
    pub fn feasible_at(&self, n: f64) -> bool {
        self.threshold_n.is_some_and(|t| n >= t)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "alpha": self.alpha.to_string(),
            "beta": self.beta.to_string(),
            "eta": self.eta.to_string(),
            "delta": self.delta.to_string(),
            "delta_positive": self.delta_positive(),
            "c": self.c,
            "c_symbolic": self.c_symbolic,
            "K": self.k,
            "K_symbolic": self.k_symbolic,
            "threshold_n": self.threshold_n,
        })
    }
}

pub fn method_constants(d: usize, alpha: Exponent, beta: Exponent, eta: Exponent) -> Result<MethodConstants> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let m = 4 * d + 1;
    let c = 2f64.powf(1.0 / (5 * m) as f64);
    let k = 20.0 * m as f64 * ((4 * d) as f64).log2();
    let delta = beta - eta - alpha;
    let threshold_n = delta.is_positive().then(|| k.powf(1.0 / delta.to_f64()));
    Ok(MethodConstants {
        d,
        alpha,
        beta,
        eta,
        delta,
        c,
        c_symbolic: format!("2^(1/{})", 5 * m),
        k,
        k_symbolic: format!("{}*log({})/log(2)", 20 * m, 4 * d),
        threshold_n,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharmResult {
    pub k: usize,
    pub completions: BigUint,
    pub closing: BigUint,
    pub q: ExactProb,
    pub charming: bool,
}

/// `W^0_{k+n-ell}(closes | Γ^1 = γ_[0,k])` and whether it exceeds `n^{-alpha}`.
pub fn conditional_closing_prob(
    gamma: &Walk,
    k: usize,
    n: usize,
    ell: usize,
    alpha: Exponent,
    cfg: &EnumConfig,
) -> Result<CharmResult> {
    if k > gamma.len() || k > ell || ell > n {
        return Err(Error::InvalidArgument(format!(
            "need k <= |gamma|, k <= ell <= n; got k={k}, |gamma|={}, ell={ell}, n={n}",
            gamma.len()
        )));
    }
    if (ell - k) % 2 == 1 || (k + n - ell).is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "parity: ell-k must be even and k+n-ell odd (k={k}, ell={ell}, n={n})"
        )));
    }
    let prefix = gamma.subwalk(0, k);
    if !has_first_part_shape(&prefix) {
        return Err(Error::InvalidDecomposition(format!("{prefix:?} is not a first part")));
    }
    let counts = completion_counts(&prefix, k + n - ell, cfg)?;
    if counts.completions.is_zero() {
        return Err(Error::NoCompletions);
    }
    let q = ExactProb::new(counts.closing.clone(), counts.completions.clone())?;
    let charming = cmp_ratio_with_power(q.numer(), q.denom(), n as u64, -alpha) == Ordering::Greater;
    Ok(CharmResult {
        k,
        completions: counts.completions,
        closing: counts.closing,
        q,
        charming,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharmingProfile {
    pub walk: Walk,
    pub params: SnakeParams,
    /// Parity-admissible indices of `[ell - n^beta, ell]`, clipped at 0.
    pub rows: Vec<CharmResult>,
    pub charming_count: usize,
    /// Whether `charming_count >= n^(beta-eta) / 4`.
    pub in_cs: bool,
    pub center: usize,
    /// Non-charming profile indices within `2 n^(1/2) (log n)^(1/4)` of `center`.
    pub n_set: Vec<usize>,
}

impl CharmingProfile {
    pub fn admissible(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,q_num,q_den,charming\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.k, r.q.numer(), r.q.denom(), r.charming));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "walk": crate::lattice::codec::serialize(&self.walk),
            "n": self.params.n,
            "ell": self.params.ell,
            "alpha": self.params.alpha.to_string(),
            "beta": self.params.beta.to_string(),
            "eta": self.params.eta.to_string(),
            "admissible": self.admissible(),
            "charming_count": self.charming_count,
            "in_cs": self.in_cs,
            "center": self.center,
            "n_set": self.n_set,
            "rows": self.rows.iter().map(|r| json!({
                "k": r.k,
                "q_num": r.q.numer().to_string(),
                "q_den": r.q.denom().to_string(),
                "charming": r.charming,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Charming flags of `gamma` (a first part of length `ell`) over the snake
/// interval. `center` defaults to `ell`.
pub fn charming_profile(
    gamma: &Walk,
    params: &SnakeParams,
    center: Option<usize>,
    cfg: &EnumConfig,
) -> Result<CharmingProfile> {
    let SnakeParams { n, ell, .. } = *params;
    if gamma.len() != ell {
        return Err(Error::InvalidArgument(format!("|gamma|={} but ell={ell}", gamma.len())));
    }
    let reach = floor_power(n as u64, params.beta) as usize;
    let lo = ell.saturating_sub(reach);
    let ks: Vec<usize> = (lo..=ell).filter(|k| (ell - k) % 2 == 0).collect();
    let rows = ks
        .par_iter()
        .map(|&k| conditional_closing_prob(gamma, k, n, ell, params.alpha, cfg))
        .collect::<Result<Vec<_>>>()?;
    let charming_count = rows.iter().filter(|r| r.charming).count();
    let in_cs = !rows.is_empty()
        && cmp_int_with_power(
            &BigUint::from(4 * charming_count),
            n as u64,
            params.beta - params.eta,
        ) != Ordering::Less;
    let center = center.unwrap_or(ell);
    let nf = n as f64;
    let radius = 2.0 * nf.sqrt() * nf.ln().max(0.0).powf(0.25);
    let n_set = rows
        .iter()
        .filter(|r| !r.charming && (r.k as f64 - center as f64).abs() <= radius)
        .map(|r| r.k)
        .collect();
    Ok(CharmingProfile {
        walk: gamma.clone(),
        params: params.clone(),
        rows,
        charming_count,
        in_cs,
        center,
        n_set,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BadIndexReport {
    pub n: usize,
    pub d: usize,
    pub alpha_prime: Exponent,
    pub delta_prime: Exponent,
    /// Walks of SAW^0_n per first-part length.
    pub totals: Vec<BigUint>,
    /// Closing walks of SAW^0_n per first-part length.
    pub closing: Vec<BigUint>,
    /// `W_n(closes) >= n^{-alpha'}`.
    pub premise: bool,
    /// Indices whose walks outnumber their closing walks by `n^{alpha'+delta'}`.
    pub q_set: Vec<usize>,
    /// `|Q| <= 2 n^{1-delta'}`, asserted only under the premise.
    pub bound_holds: Option<bool>,
    pub ell: Option<usize>,
}

impl BadIndexReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": self.d,
            "alpha_prime": self.alpha_prime.to_string(),
            "delta_prime": self.delta_prime.to_string(),
            "totals": self.totals.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "closing": self.closing.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "premise": self.premise,
            "q_set": self.q_set,
            "bound_holds": self.bound_holds,
            "ell": self.ell,
        })
    }
}

pub fn bad_index_set_and_select_ell(
    n: usize,
    d: usize,
    alpha_prime: Exponent,
    delta_prime: Exponent,
    cfg: &EnumConfig,
) -> Result<BadIndexReport> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be odd, got {n}")));
    }
    let totals = first_length_histogram(n, d, false, cfg)?;
    let closing = first_length_histogram(n, d, true, cfg)?;
    let all: BigUint = totals.iter().sum();
    let all_closing: BigUint = closing.iter().sum();
    let base = n as u64;
    let premise = cmp_ratio_with_power(&all_closing, &all, base, -alpha_prime) != Ordering::Less;
    let cut = -(alpha_prime + delta_prime);
    let q_set: Vec<usize> = (0..=n)
        .filter(|&i| !totals[i].is_zero())
        .filter(|&i| cmp_ratio_with_power(&closing[i], &totals[i], base, cut) != Ordering::Greater)
        .collect();
    let bound_holds = premise.then(|| {
        cmp_ratio_with_power(
            &BigUint::from(q_set.len()),
            &BigUint::from(2u32),
            base,
            Exponent::integer(1) - delta_prime,
        ) != Ordering::Greater
    });
    let in_q: HashSet<usize> = q_set.iter().copied().collect();
    let ell = (n.div_ceil(4)..=3 * n / 4).find(|i| !in_q.contains(i) && !closing[*i].is_zero());
    Ok(BadIndexReport {
        n,
        d,
        alpha_prime,
        delta_prime,
        totals,
        closing,
        premise,
        q_set,
        bound_holds,
        ell,
    })
}

/// Canonical closed traces of the `(n+1)`-edge polygons minus their last
/// edge: walks from the NE vertex below it, leaving towards `-e_a` and ending
/// at `-e_b` with `b > a`.
fn for_each_polygon_trace(n: usize, d: usize, cfg: &EnumConfig, mut visit: impl FnMut(&Walk)) -> Result<()> {
    let origin = LatticePoint::origin(d);
    WalkSearch::new(n, d, Constraint::FirstPart, cfg)?.for_each(|w| {
        let Some(&first) = w.steps().first() else { return };
        if !first.is_negative() {
            return;
        }
        let Some(last) = w.end().step_to(&origin) else { return };
        if n >= 2 && !last.is_negative() && last.axis() > first.axis() {
            visit(w);
        }
    })?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawComparison {
    pub n: usize,
    pub ell: usize,
    pub polygons: BigUint,
    pub closing_walks: BigUint,
    /// Counts of `Γ_[0,ell]` over polygons.
    pub polygon_law: HashMap<Walk, BigUint>,
    /// Counts of `Γ^1` over closing walks with `|Γ^1| = ell`.
    pub first_part_law: HashMap<Walk, BigUint>,
}

impl LawComparison {
    /// Both laws agree as normalized distributions; vacuous when both are empty.
    pub fn holds(&self) -> bool {
        if self.polygons.is_zero() || self.closing_walks.is_zero() {
            return self.polygons.is_zero() && self.closing_walks.is_zero();
        }
        self.polygon_law.len() == self.first_part_law.len()
            && self.polygon_law.iter().all(|(w, a)| {
                self.first_part_law
                    .get(w)
                    .is_some_and(|b| a * &self.closing_walks == b * &self.polygons)
            })
    }
}

/// Law of the first `ell` steps of a uniform `(n+1)`-edge polygon against the
/// law of the first part of a uniform closing walk in SAW^0_n with
/// `|Γ^1| = ell`.
pub fn first_part_law_identity_check(n: usize, ell: usize, d: usize, cfg: &EnumConfig) -> Result<LawComparison> {
    if ell > n {
        return Err(Error::InvalidArgument(format!("ell={ell} exceeds n={n}")));
    }
    cfg.check_guardrail(n, d)?;
    let mut polygon_law: HashMap<Walk, BigUint> = HashMap::new();
    let mut polygons = BigUint::zero();
    for_each_polygon_trace(n, d, cfg, |w| {
        *polygon_law.entry(w.subwalk(0, ell)).or_default() += 1u32;
        polygons += 1u32;
    })?;
    let mut first_part_law: HashMap<Walk, BigUint> = HashMap::new();
    let mut closing_walks = BigUint::zero();
    if n >= 2 {
        WalkSearch::new(n, d, Constraint::NeAtOrigin, cfg)?.for_each(|w| {
            if !w.end().is_adjacent(w.start()) {
                return;
            }
            let dec = decompose(w).expect("enumerated walks are self-avoiding");
            if dec.first().len() == ell {
                *first_part_law.entry(dec.first().clone()).or_default() += 1u32;
                closing_walks += 1u32;
            }
        })?;
    }
    Ok(LawComparison {
        n,
        ell,
        polygons,
        closing_walks,
        polygon_law,
        first_part_law,
    })
}

fn check_first_part(phi: &Walk, n: usize, cfg: &EnumConfig) -> Result<()> {
    if !has_first_part_shape(phi) || phi.len() > n {
        return Err(Error::InvalidDecomposition(format!("{phi:?} is not a first part")));
    }
    if completion_counts(phi, n, cfg)?.completions.is_zero() {
        return Err(Error::InvalidDecomposition(format!("{phi:?} has no completion to length {n}")));
    }
    Ok(())
}

/// Walks of length `n - ell` from the origin with NE vertex at the origin.
fn extension_set(ell: usize, n: usize, d: usize, cfg: &EnumConfig) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    WalkSearch::new(n - ell, d, Constraint::FirstPart, cfg)?.for_each(|w| out.push(w.clone()))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectedFamily {
    pub phi: Walk,
    pub n: usize,
    pub w_size: usize,
    /// Every concatenation is self-avoiding of length `n + 1`, with the
    /// reversed first part at or below the distinguished hyperplane and the
    /// reflected extension above it.
    pub concatenations_valid: bool,
    /// Distinct truncated walks, in construction order.
    pub walks: Vec<Walk>,
    pub all_follow_reversed_phi: bool,
}

impl ReflectedFamily {
    /// `2d * distinct >= |W|`.
    pub fn bound_holds(&self) -> bool {
        2 * self.phi.dim() * self.walks.len() >= self.w_size
    }
}

/// For each extension γ: reverse(φ), the edge `0 -> e_a`, and the reflected
/// γ shifted by `e_a`, then the last edge dropped.
pub fn reflected_walk_family(phi: &Walk, n: usize, cfg: &EnumConfig) -> Result<ReflectedFamily> {
    check_first_part(phi, n, cfg)?;
    let d = phi.dim();
    let axis = distinguished_axis(d);
    let ell = phi.len();
    let extensions = extension_set(ell, n, d, cfg)?;
    let head = phi.reversed();
    let edge = Walk::new(LatticePoint::origin(d), vec![Step::new(axis, false)])?;
    let below = head.vertices().iter().all(|v| v.coord(axis) <= 0);
    let mut valid = below;
    let mut seen = HashSet::new();
    let mut walks = Vec::new();
    let mut follow = true;
    for gamma in &extensions {
        let tail = gamma.reflect_for_construction()?;
        valid &= tail.vertices().iter().all(|v| v.coord(axis) >= 1);
        let full = head.concat(&edge)?.concat(&tail)?;
        valid &= full.len() == n + 1 && full.is_self_avoiding();
        let cut = full.subwalk(0, n);
        follow &= cut.subwalk(0, ell) == head;
        if seen.insert(cut.clone()) {
            walks.push(cut);
        }
    }
    Ok(ReflectedFamily {
        phi: phi.clone(),
        n,
        w_size: extensions.len(),
        concatenations_valid: valid,
        walks,
        all_follow_reversed_phi: follow,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BootstrapRow {
    pub j: usize,
    pub avoid: BigUint,
    pub close: BigUint,
    pub p_avoid: ExactProb,
    pub p_close: ExactProb,
    /// `P(C | A)`; `None` when `A` is empty.
    pub p_close_given_avoid: Option<ExactProb>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BootstrapTable {
    pub phi: Walk,
    pub n: usize,
    pub w_size: usize,
    pub rows: Vec<BootstrapRow>,
    /// Every γ in `A_{i+1}` is also in `A_i`.
    pub monotone: bool,
    /// Largest number of events `C_i` containing a single γ.
    pub max_multiplicity: usize,
}

impl BootstrapTable {
    pub fn multiplicity_ok(&self) -> bool {
        self.max_multiplicity <= 2 * self.phi.dim()
    }

    /// `Σ_i P(C_i) <= 2d`, exactly.
    pub fn cap_ok(&self) -> bool {
        let total: BigUint = self.rows.iter().map(|r| &r.close).sum();
        total <= BigUint::from(2 * self.phi.dim() * self.w_size)
    }

    pub fn to_json(&self) -> Value {
        let p = |q: &ExactProb| q.to_string();
        json!({
            "phi": crate::lattice::codec::serialize(&self.phi),
            "n": self.n,
            "w_size": self.w_size,
            "monotone": self.monotone,
            "max_multiplicity": self.max_multiplicity,
            "cap_ok": self.cap_ok(),
            "rows": self.rows.iter().map(|r| json!({
                "j": r.j,
                "p_avoid": p(&r.p_avoid),
                "p_close": p(&r.p_close),
                "p_close_given_avoid": r.p_close_given_avoid.as_ref().map(p),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Exact `P(A_i)`, `P(C_i)` and `P(C_i | A_i)` under the uniform law on the
/// extensions of length `n - |φ|`: `A_i` = γ avoids `φ_[0,j_i]`, `C_i` = γ
/// avoids it and ends next to `φ_{j_i}`.
pub fn bootstrap_table(phi: &Walk, n: usize, js: &[usize], cfg: &EnumConfig) -> Result<BootstrapTable> {
    let ell = phi.len();
    if js.is_empty() || js.windows(2).any(|w| w[0] >= w[1]) || js.iter().any(|&j| j > ell) {
        return Err(Error::InvalidArgument(format!(
            "indices must be strictly increasing within [0, {ell}], got {js:?}"
        )));
    }
    check_first_part(phi, n, cfg)?;
    let extensions = extension_set(ell, n, phi.dim(), cfg)?;
    let prefixes: Vec<Walk> = js.iter().map(|&j| phi.subwalk(0, j)).collect();
    let mut avoid = vec![0u64; js.len()];
    let mut close = vec![0u64; js.len()];
    let mut monotone = true;
    let mut max_multiplicity = 0;
    for gamma in &extensions {
        let a: Vec<bool> = prefixes.iter().map(|p| gamma.avoids(p)).collect();
        monotone &= a.windows(2).all(|w| w[0] || !w[1]);
        let mut mult = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai {
                avoid[i] += 1;
                if gamma.end().is_adjacent(phi.vertex(js[i])) {
                    close[i] += 1;
                    mult += 1;
                }
            }
        }
        max_multiplicity = max_multiplicity.max(mult);
    }
    let total = extensions.len() as u64;
    let rows = js
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            Ok(BootstrapRow {
                j,
                avoid: avoid[i].into(),
                close: close[i].into(),
                p_avoid: ExactProb::new(avoid[i], total)?,
                p_close: ExactProb::new(close[i], total)?,
                p_close_given_avoid: (avoid[i] > 0).then(|| ExactProb::new(close[i], avoid[i])).transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BootstrapTable {
        phi: phi.clone(),
        n,
        w_size: extensions.len(),
        rows,
        monotone,
        max_multiplicity,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub n: usize,
    pub ell: usize,
    pub cs_size: usize,
    /// `c_n`.
    pub saw: BigUint,
    /// Σ over CS of walks from the origin whose first `ell` steps are the
    /// translated reversal of φ.
    pub translated_prefix: BigUint,
    /// Σ over CS of walks starting with the reversal of φ itself.
    pub reversed_prefix: BigUint,
    /// Walks of SAW^0_n with first part in CS.
    pub ne_first_in_cs: BigUint,
    /// Σ over CS of completion counts.
    pub completions_in_cs: BigUint,
    /// Closing walks among `ne_first_in_cs`.
    pub ne_closing_in_cs: BigUint,
    /// Polygons with `n+1` edges whose first `ell` steps lie in CS.
    pub polygons_in_cs: BigUint,
    pub p_n1: BigUint,
}

impl ChainReport {
    /// The finite relations between consecutive lines of the chain.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("saw >= translated_prefix", self.saw >= self.translated_prefix),
            ("translated_prefix == reversed_prefix", self.translated_prefix == self.reversed_prefix),
            ("ne_first_in_cs == 2 * completions_in_cs", self.ne_first_in_cs == &self.completions_in_cs * 2u32),
            ("ne_first_in_cs >= ne_closing_in_cs", self.ne_first_in_cs >= self.ne_closing_in_cs),
            ("ne_closing_in_cs == 2 * polygons_in_cs", self.ne_closing_in_cs == &self.polygons_in_cs * 2u32),
            ("polygons_in_cs <= p_n1", self.polygons_in_cs <= self.p_n1),
        ]
    }

    pub fn holds(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &BigUint| x.to_string();
        json!({
            "n": self.n,
            "ell": self.ell,
            "cs_size": self.cs_size,
            "saw": s(&self.saw),
            "translated_prefix": s(&self.translated_prefix),
            "reversed_prefix": s(&self.reversed_prefix),
            "ne_first_in_cs": s(&self.ne_first_in_cs),
            "completions_in_cs": s(&self.completions_in_cs),
            "ne_closing_in_cs": s(&self.ne_closing_in_cs),
            "polygons_in_cs": s(&self.polygons_in_cs),
            "p_n1": s(&self.p_n1),
            "checks": self.checks().into_iter().map(|(k, v)| (k.to_string(), Value::Bool(v))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Each line of the snake-method counting chain at small `n`, without the
/// growth factors.
pub fn inequality_chain(params: &SnakeParams, cfg: &EnumConfig) -> Result<ChainReport> {
    let SnakeParams { d, n, ell, .. } = *params;
    let table = first_part_table(ell, n, d, params.alpha, cfg)?;
    let mut cs: Vec<Walk> = Vec::new();
    let mut completions_in_cs = BigUint::zero();
    for row in &table.rows {
        if charming_profile(&row.walk, params, None, cfg)?.in_cs {
            completions_in_cs += &row.completions;
            cs.push(row.walk.clone());
        }
    }
    let cs_set: HashSet<&Walk> = cs.iter().collect();
    let reversed_steps: HashSet<Vec<Step>> = cs.iter().map(|w| w.reversed().steps().to_vec()).collect();

    let mut saw = BigUint::zero();
    let mut translated_prefix = BigUint::zero();
    WalkSearch::new(n, d, Constraint::OriginStart, cfg)?.for_each(|w| {
        saw += 1u32;
        if reversed_steps.contains(&w.steps()[..ell]) {
            translated_prefix += 1u32;
        }
    })?;

    let mut reversed_prefix = BigUint::zero();
    for phi in &cs {
        reversed_prefix += WalkSearch::new(n - ell, d, Constraint::OriginStart, cfg)?
            .blocked(phi.vertices()[1..].iter().cloned())
            .count()?;
    }

    let mut ne_first_in_cs = BigUint::zero();
    let mut ne_closing_in_cs = BigUint::zero();
    WalkSearch::new(n, d, Constraint::NeAtOrigin, cfg)?.for_each(|w| {
        let dec = decompose(w).expect("enumerated walks are self-avoiding");
        if cs_set.contains(dec.first()) {
            ne_first_in_cs += 1u32;
            if n >= 2 && w.end().is_adjacent(w.start()) {
                ne_closing_in_cs += 1u32;
            }
        }
    })?;

    let mut polygons_in_cs = BigUint::zero();
    for_each_polygon_trace(n, d, cfg, |w| {
        if cs_set.contains(&w.subwalk(0, ell)) {
            polygons_in_cs += 1u32;
        }
    })?;
    let p_n1 = if (n + 1) % 2 == 0 { count_polygons(n + 1, d, cfg)? } else { BigUint::zero() };

    Ok(ChainReport {
        n,
        ell,
        cs_size: cs.len(),
        saw,
        translated_prefix,
        reversed_prefix,
        ne_first_in_cs,
        completions_in_cs,
        ne_closing_in_cs,
        polygons_in_cs,
        p_n1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::first_part_table;

    fn cfg() -> EnumConfig {
        EnumConfig::default()
    }

    fn ex(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn walk(d: usize, steps: &[Step]) -> Walk {
        Walk::from_origin(d, steps.to_vec()).unwrap()
    }

    #[test]
    fn constants_for_the_plane() {
        let m = method_constants(2, ex("0.3"), ex("0.5"), ex("0")).unwrap();
        assert!((m.c - 2f64.powf(1.0 / 45.0)).abs() < 1e-15);
        assert!((m.k - 540.0).abs() < 1e-9);
        assert_eq!(m.delta, ex("1/5"));
        let t = m.threshold_n.unwrap();
        assert!((t / 540f64.powi(5) - 1.0).abs() < 1e-9);
        assert!(!m.feasible_at(1e6));
        assert_eq!(m.c_symbolic, "2^(1/45)");
    }

    #[test]
    fn delta_is_twice_epsilon() {
        for eps in ["0.01", "0.1", "1/8"] {
            let e = ex(eps);
            let alpha = ex("1/2") - e - e;
            let m = method_constants(2, alpha, ex("1/2"), ex("0")).unwrap();
            assert_eq!(m.delta, e + e);
        }
        let m = method_constants(3, ex("0.6"), ex("0.5"), ex("0")).unwrap();
        assert!(!m.delta_positive());
        assert_eq!(m.threshold_n, None);
    }

    #[test]
    fn charm_at_ell_matches_first_part_table() {
        for n in [3usize, 5, 7] {
            for ell in 0..=n {
                let table = first_part_table(ell, n, 2, ex("0.5"), &cfg()).unwrap();
                for row in &table.rows {
                    let r = conditional_closing_prob(&row.walk, ell, n, ell, ex("0.5"), &cfg()).unwrap();
                    assert_eq!(r.q, row.q);
                    assert_eq!(r.charming, row.in_hphi);
                }
            }
        }
    }

    #[test]
    fn no_completion_is_an_error() {
        // W S E leaves the origin no free neighbour below it
        let w = walk(2, &[Step::WEST, Step::SOUTH, Step::EAST]);
        assert_eq!(
            conditional_closing_prob(&w, 3, 5, 3, ex("0.5"), &cfg()),
            Err(Error::NoCompletions)
        );
        let r = conditional_closing_prob(&w, 3, 3, 3, ex("0.5"), &cfg()).unwrap();
        assert_eq!(r.q, ExactProb::one());
    }

    #[test]
    fn parity_rules_enforced() {
        let w = walk(2, &[Step::WEST, Step::SOUTH]);
        assert!(matches!(
            conditional_closing_prob(&w, 1, 5, 2, ex("0.5"), &cfg()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn profile_of_a_short_snake() {
        let params = SnakeParams::new(2, ex("0.4"), ex("1"), ex("0"), 7, 3).unwrap();
        let table = first_part_table(3, 7, 2, ex("0.4"), &cfg()).unwrap();
        for row in &table.rows {
            let prof = charming_profile(&row.walk, &params, None, &cfg()).unwrap();
            let ks: Vec<usize> = prof.rows.iter().map(|r| r.k).collect();
            assert_eq!(ks, vec![1, 3]);
            assert_eq!(prof.rows[1].q, row.q);
            let need = 7f64 / 4.0;
            assert_eq!(prof.in_cs, prof.charming_count as f64 >= need);
        }
    }

    #[test]
    fn law_identity_small() {
        for n in 1..=7 {
            for ell in 0..=n {
                let cmp = first_part_law_identity_check(n, ell, 2, &cfg()).unwrap();
                assert!(cmp.holds(), "n={n} ell={ell}");
            }
        }
        let cmp = first_part_law_identity_check(3, 1, 2, &cfg()).unwrap();
        assert!(!cmp.first_part_law.is_empty());
    }

    #[test]
    fn reflection_hand_example() {
        let phi = walk(2, &[Step::WEST]);
        let fam = reflected_walk_family(&phi, 2, &cfg()).unwrap();
        assert!(fam.concatenations_valid);
        let expect = Walk::from_vertices(vec![
            LatticePoint::new(&[-1, 0]).unwrap(),
            LatticePoint::new(&[0, 0]).unwrap(),
            LatticePoint::new(&[0, 1]).unwrap(),
        ])
        .unwrap();
        assert!(fam.walks.contains(&expect));
        assert!(fam.bound_holds());
    }

    #[test]
    fn bootstrap_trivial_row() {
        let phi = walk(2, &[Step::WEST, Step::SOUTH]);
        let t = bootstrap_table(&phi, 5, &[0], &cfg()).unwrap();
        assert_eq!(t.rows[0].p_avoid, ExactProb::one());
        assert!(bootstrap_table(&phi, 5, &[1, 1], &cfg()).is_err());
        assert!(bootstrap_table(&phi, 5, &[3], &cfg()).is_err());
    }

    #[test]
    fn bad_index_example() {
        let r = bad_index_set_and_select_ell(7, 2, ex("1.6"), ex("0.5"), &cfg()).unwrap();
        assert!(r.premise);
        assert_eq!(r.bound_holds, Some(true));
        assert!(r.ell.is_some());
        let weak = bad_index_set_and_select_ell(7, 2, ex("0.1"), ex("0.5"), &cfg()).unwrap();
        assert!(!weak.premise);
        assert_eq!(weak.bound_holds, None);
    }

    #[test]
    fn chain_lines_relate() {
        let params = SnakeParams::new(2, ex("2"), ex("1"), ex("0"), 7, 3).unwrap();
        let r = inequality_chain(&params, &cfg()).unwrap();
        assert!(r.cs_size > 0);
        assert!(!r.polygons_in_cs.is_zero());
        assert!(r.holds(), "{:?}", r.checks());
    }
}
