//! Uniform redistribution of type II patterns over a local shell, its exact
//! hypergeometric law, and the midpoint distribution of uniform walks.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::counting::{Constraint, EnumConfig, WalkSearch};
use crate::error::{Error, Result};
use crate::lattice::{Coords, ExactProb, LatticePoint, Polygon};
use crate::patterns::{combinations, LocalShell, PatternPair};

/// Sort key drawn by local slot `slot` for draw number `draw`.
///
/// ChaCha8 keyed by `seed`; the stream selects the slot and the word position
/// the draw, so any key can be computed independently of all others.
pub fn slot_key(seed: u64, slot: usize, draw: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(slot as u64);
    rng.set_word_pos(2 * draw as u128);
    rng.next_u64()
}

/// The `j` local slots with the smallest keys (ties broken by index), sorted.
pub fn choose_type_ii(keys: &[u64], j: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by_key(|&i| (keys[i], i));
    let mut chosen = order[..j].to_vec();
    chosen.sort_unstable();
    chosen
}

fn draw_choice(seed: u64, draw: u64, k: usize, j: usize) -> Vec<usize> {
    let keys: Vec<u64> = (0..k).map(|s| slot_key(seed, s, draw)).collect();
    choose_type_ii(&keys, j)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResampleRecord {
    pub gamma_in: Polygon,
    pub gamma_out: Polygon,
    pub n_i1_before: usize,
    pub n_i1_after: usize,
    /// `L` with `gamma_out_ell = gamma_in_L`, when `ell` was supplied and
    /// falls in the middle-section window.
    pub l: Option<usize>,
    pub seed: u64,
    pub draw: u64,
}

/// Forgets which S1 ∪ S2 slots of `p` hold type II patterns and places the
/// same number uniformly at random; draw number `draw` of the stream `seed`.
pub fn resample_draw(
    shell: &LocalShell,
    p: &Polygon,
    seed: u64,
    draw: u64,
    ell: Option<usize>,
) -> Result<ResampleRecord> {
    let k = shell.slot_count();
    let j = shell.type_ii_count();
    let before = shell.source_choice();
    let chosen = draw_choice(seed, draw, k, j);
    let gamma_out = shell.member(&chosen)?;
    let s1 = shell.s1_count();
    let x_in = before.iter().filter(|&&c| c < s1).count();
    let x_out = chosen.iter().filter(|&&c| c < s1).count();
    let l = match ell {
        Some(ell) => {
            let w = middle_window(shell, p.len());
            (w.0 <= ell && ell <= w.1).then(|| (ell + 2 * x_in) - 2 * x_out)
        }
        None => None,
    };
    Ok(ResampleRecord {
        gamma_in: p.clone(),
        gamma_out,
        n_i1_before: shell.n_i1_of(&before),
        n_i1_after: shell.n_i1_of(&chosen),
        l,
        seed,
        draw,
    })
}

pub fn resample_local_shell(p: &Polygon, pair: &PatternPair, seed: u64) -> Result<ResampleRecord> {
    let shell = LocalShell::new(p, pair)?;
    resample_draw(&shell, p, seed, 0, None)
}

/// `C(s1,k) C(s2,n_i-k) / C(s1+s2,n_i)`.
pub fn hypergeometric_pmf(s1: u64, s2: u64, n_i: u64, k: u64) -> Result<ExactProb> {
    if k > s1 || k > n_i || n_i - k > s2 {
        return Err(Error::InvalidArgument(format!(
            "k={k} inadmissible for s1={s1}, s2={s2}, N_I={n_i}"
        )));
    }
    ExactProb::new(binom(s1, k) * binom(s2, n_i - k), binom(s1 + s2, n_i))
}

fn binom(n: u64, r: u64) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Admissible `k` for the hypergeometric law.
pub fn hypergeometric_support(s1: u64, s2: u64, n_i: u64) -> std::ops::RangeInclusive<u64> {
    n_i.saturating_sub(s2)..=s1.min(n_i)
}

/// The full law as `(k, pmf(k))` over the admissible range.
pub fn hypergeometric_table(s1: u64, s2: u64, n_i: u64) -> Result<Vec<(u64, ExactProb)>> {
    if n_i > s1 + s2 {
        return Err(Error::InvalidArgument(format!("N_I={n_i} exceeds s1+s2={}", s1 + s2)));
    }
    let support = hypergeometric_support(s1, s2, n_i);
    let (lo, hi) = (*support.start(), *support.end());
    let den = binom(s1 + s2, n_i);
    // C(s1,k) C(s2,N_I-k) updated in place as k increases
    let mut a = binom(s1, lo);
    let mut b = binom(s2, n_i - lo);
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for k in lo..=hi {
        out.push((k, ExactProb::new(&a * &b, den.clone())?));
        if k < hi {
            a = a * (s1 - k) / (k + 1);
            let m = n_i - k;
            b = b * m / (s2 - m + 1);
        }
    }
    Ok(out)
}

/// Non-decreasing then non-increasing, with a maximizer within distance 1 of
/// the mean `s1 N_I / (s1 + s2)`.
pub fn is_unimodal_about_mean(s1: u64, s2: u64, n_i: u64) -> Result<bool> {
    let table = hypergeometric_table(s1, s2, n_i)?;
    let mut descending = false;
    for w in table.windows(2) {
        match w[1].1.ratio().cmp(w[0].1.ratio()) {
            std::cmp::Ordering::Greater if descending => return Ok(false),
            std::cmp::Ordering::Less => descending = true,
            _ => {}
        }
    }
    let max = table.iter().map(|(_, q)| q.ratio()).max().cloned();
    let total = (s1 + s2).max(1) as i128;
    let near_mean = table.iter().any(|(k, q)| {
        Some(q.ratio()) == max.as_ref() && (*k as i128 * total - (s1 * n_i) as i128).abs() <= total
    });
    Ok(near_mean)
}

/// `Σ_{|k - mean| >= t} pmf(k)` is non-increasing in `t`, over every
/// distance that occurs.
pub fn tail_mass_is_monotone(s1: u64, s2: u64, n_i: u64) -> Result<bool> {
    let table = hypergeometric_table(s1, s2, n_i)?;
    let total = (s1 + s2).max(1) as i128;
    // distances scaled by s1 + s2 to stay integral
    let dist = |k: u64| (k as i128 * total - (s1 * n_i) as i128).abs();
    let mut ts: Vec<i128> = table.iter().map(|(k, _)| dist(*k)).collect();
    ts.sort_unstable();
    ts.dedup();
    let tails: Vec<num_rational::Ratio<BigUint>> = ts
        .iter()
        .map(|&t| {
            table
                .iter()
                .filter(|(k, _)| dist(*k) >= t)
                .fold(num_rational::Ratio::from_integer(BigUint::from(0u32)), |acc, (_, q)| acc + q.ratio())
        })
        .collect();
    Ok(tails.windows(2).all(|w| w[1] <= w[0]))
}

/// `exp(-αβ m z² / (2(1-α)(1-β))) / sqrt(2π αβ (1-α)(1-β) m)`.
pub fn gaussian_density(z: f64, alpha: f64, beta: f64, m: f64) -> Result<f64> {
    let open = |x: f64| x > 0.0 && x < 1.0;
    if !open(alpha) || !open(beta) || m.is_nan() || m < 1.0 || !z.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need alpha, beta in (0,1) and m >= 1; got alpha={alpha}, beta={beta}, m={m}"
        )));
    }
    let ab = alpha * beta;
    let v = (1.0 - alpha) * (1.0 - beta);
    Ok((-ab * m * z * z / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * ab * v * m).sqrt())
}

/// Path-index interval on which every member of the shell traverses its
/// middle section.
fn middle_window(shell: &LocalShell, poly_len: usize) -> (usize, usize) {
    let n = poly_len - 1;
    if shell.slot_count() == 0 {
        return (0, n);
    }
    let w = shell.map.segment_len;
    let l_empty = shell.map.counts.l_empty;
    let (m, big_m) = s1_type_ii_range(shell);
    let detour = shell.pair().detour_start();
    let frozen_before = |i: usize| {
        shell
            .key
            .frozen
            .iter()
            .filter(|(k, t)| *t == crate::patterns::PatternType::II && k + detour < i)
            .count()
    };
    let lo = w + 2 * big_m + 2 * frozen_before(w);
    let hi = l_empty - w + 2 * m + 2 * frozen_before(l_empty - w);
    (lo, hi)
}

/// Fewest and most type II patterns S1 can hold across the shell.
fn s1_type_ii_range(shell: &LocalShell) -> (usize, usize) {
    let s1 = shell.s1_count();
    let s2 = shell.slot_count() - s1;
    let j = shell.type_ii_count();
    (j.saturating_sub(s2), s1.min(j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleWindow {
    pub ell: usize,
    pub l_mid: usize,
    /// Inclusive path-index bounds.
    pub window: (usize, usize),
    /// Type I count in S1 of the reference member.
    pub reference_n_i1: usize,
}

/// The middle index `l_mid` (the index in `p` of the reference member's
/// vertex `ell`) and the window of indices lying in the middle section of
/// every member of the local shell.
pub fn middle_index_and_window(p: &Polygon, pair: &PatternPair, ell: usize) -> Result<MiddleWindow> {
    let n = p.len() - 1;
    let (lo, hi) = (n.div_ceil(4), 3 * n / 4);
    if ell < lo || ell > hi {
        return Err(Error::InvalidArgument(format!("ell={ell} outside [{lo}, {hi}]")));
    }
    let shell = LocalShell::new(p, pair)?;
    let window = middle_window(&shell, p.len());
    if shell.slot_count() == 0 {
        return Ok(MiddleWindow {
            ell,
            l_mid: ell,
            window,
            reference_n_i1: 0,
        });
    }
    let s1 = shell.s1_count();
    let s2 = shell.slot_count() - s1;
    let n_i = shell.slot_count() - shell.type_ii_count();
    let (m, big_m) = s1_type_ii_range(&shell);
    let target = (n_i * s1 / (s1 + s2)).clamp(s1 - big_m, s1 - m);
    let x_ref = s1 - target;
    let x_p = shell.map.counts.n_ii1;
    Ok(MiddleWindow {
        ell,
        l_mid: ell + 2 * x_p - 2 * x_ref,
        window,
        reference_n_i1: target,
    })
}

/// Checks that the selection rule is exactly uniform: over all `k!` rank
/// orders of the keys, every `j`-subset is chosen equally often.
pub fn selection_is_exactly_uniform(k: usize, j: usize) -> bool {
    let mut tally: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut ranks: Vec<u64> = (0..k as u64).collect();
    permute(&mut ranks, 0, &mut |keys| {
        *tally.entry(choose_type_ii(keys, j)).or_default() += 1;
    });
    let subsets = combinations(k, j);
    let first = tally.get(&subsets[0]).copied().unwrap_or(0);
    tally.len() == subsets.len() && subsets.iter().all(|s| tally.get(s) == Some(&first))
}

fn permute(v: &mut Vec<u64>, i: usize, f: &mut dyn FnMut(&[u64])) {
    if i == v.len() {
        f(v);
        return;
    }
    for t in i..v.len() {
        v.swap(i, t);
        permute(v, i + 1, f);
        v.swap(i, t);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub observed: Vec<u64>,
    pub expected: Vec<f64>,
}

impl ChiSquareTest {
    /// Pearson's statistic; `p_value` is 1 when there is nothing to test.
    pub fn new(observed: Vec<u64>, probabilities: &[f64]) -> Self {
        let total: u64 = observed.iter().sum();
        let expected: Vec<f64> = probabilities.iter().map(|p| p * total as f64).collect();
        let statistic = observed
            .iter()
            .zip(&expected)
            .filter(|(_, e)| **e > 0.0)
            .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
            .sum();
        let dof = expected.iter().filter(|e| **e > 0.0).count().saturating_sub(1);
        let p_value = if dof == 0 {
            1.0
        } else {
            ChiSquared::new(dof as f64).map(|c| c.sf(statistic)).unwrap_or(f64::NAN)
        };
        Self {
            statistic,
            dof,
            p_value,
            observed,
            expected,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "observed": self.observed,
            "expected": self.expected,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport {
    pub slots: usize,
    pub type_ii: usize,
    pub s1: usize,
    pub samples: u64,
    pub seed: u64,
    /// Member distribution against the uniform law.
    pub members: ChiSquareTest,
    /// `N_I^1` marginal against the hypergeometric law.
    pub marginal: ChiSquareTest,
    /// Fraction of members with each `N_I^1` equals the hypergeometric pmf.
    pub exact_identity: bool,
    pub threshold: f64,
}

impl EquilibriumReport {
    pub fn passed(&self) -> bool {
        self.exact_identity && self.members.p_value > self.threshold && self.marginal.p_value > self.threshold
    }

    pub fn to_json(&self) -> Value {
        json!({
            "slots": self.slots,
            "type_ii": self.type_ii,
            "s1": self.s1,
            "samples": self.samples,
            "seed": self.seed,
            "members": self.members.to_json(),
            "marginal": self.marginal.to_json(),
            "exact_identity": self.exact_identity,
            "threshold": self.threshold,
            "passed": self.passed(),
        })
    }
}

/// Draws `samples` resamplings of `p`'s local shell and tests the member
/// frequencies (uniform) and the `N_I^1` marginal (hypergeometric) by
/// chi-square at level 0.01; also checks the marginal identity exactly.
pub fn equilibrium_and_pmf_test(
    p: &Polygon,
    pair: &PatternPair,
    samples: u64,
    seed: u64,
) -> Result<EquilibriumReport> {
    let shell = LocalShell::new(p, pair)?;
    let choices = shell.choices()?;
    let k = shell.slot_count();
    let j = shell.type_ii_count();
    let s1 = shell.s1_count();
    let index: HashMap<&Vec<usize>, usize> = choices.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut member_counts = vec![0u64; choices.len()];
    for draw in 0..samples {
        let c = draw_choice(seed, draw, k, j);
        member_counts[index[&c]] += 1;
    }
    let uniform = vec![1.0 / choices.len() as f64; choices.len()];
    let members = ChiSquareTest::new(member_counts.clone(), &uniform);

    let (s1u, s2u, n_iu) = (s1 as u64, (k - s1) as u64, (k - j) as u64);
    let support: Vec<u64> = hypergeometric_support(s1u, s2u, n_iu).collect();
    let mut marginal_counts = vec![0u64; support.len()];
    let mut exact_tally = vec![0u64; support.len()];
    let lo = *support.first().unwrap_or(&0);
    for (c, &count) in choices.iter().zip(&member_counts) {
        let slot = shell.n_i1_of(c) as u64 - lo;
        marginal_counts[slot as usize] += count;
        exact_tally[slot as usize] += 1;
    }
    let pmf = support
        .iter()
        .map(|&x| hypergeometric_pmf(s1u, s2u, n_iu, x))
        .collect::<Result<Vec<_>>>()?;
    let exact_identity = pmf
        .iter()
        .zip(&exact_tally)
        .all(|(q, &t)| Some(q) == ExactProb::new(t, choices.len() as u64).ok().as_ref());
    let probs: Vec<f64> = pmf.iter().map(|q| q.to_f64()).collect();
    let marginal = ChiSquareTest::new(marginal_counts, &probs);
    Ok(EquilibriumReport {
        slots: k,
        type_ii: j,
        s1,
        samples,
        seed,
        members,
        marginal,
        exact_identity,
        threshold: 0.01,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MidpointReport {
    pub m: usize,
    pub d: usize,
    pub total: BigUint,
    pub counts: BTreeMap<LatticePoint, BigUint>,
    pub sup: ExactProb,
    pub sup_times_sqrt_m: f64,
}

impl MidpointReport {
    pub fn probability(&self, x: &LatticePoint) -> ExactProb {
        match self.counts.get(x) {
            Some(c) => ExactProb::new(c.clone(), self.total.clone()).unwrap(),
            None => ExactProb::zero(),
        }
    }

    /// Rows `x,y,num,den` (one coordinate column per axis beyond d=2).
    pub fn to_csv(&self) -> String {
        let mut header: Vec<String> = match self.d {
            2 => vec!["x".into(), "y".into()],
            d => (1..=d).map(|i| format!("x{i}")).collect(),
        };
        header.push("num".into());
        header.push("den".into());
        let mut out = header.join(",") + "\n";
        for x in self.counts.keys() {
            let q = self.probability(x);
            let coords: Vec<String> = x.coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", coords.join(","), q.numer(), q.denom()));
        }
        out
    }
}

/// Exact law of `Γ_{floor(m/2)}` for a uniform m-step walk from the origin.
pub fn midpoint_histogram(m: usize, d: usize, cfg: &EnumConfig) -> Result<MidpointReport> {
    let half = m / 2;
    let search = WalkSearch::new(m, d, Constraint::OriginStart, cfg)?;
    let counts = search.par_fold_steps(
        HashMap::<Coords, u64>::new,
        |acc, steps, _| {
            let mut c: Coords = smallvec::smallvec![0; d];
            for s in &steps[..half] {
                c[s.axis()] += s.delta();
            }
            *acc.entry(c).or_default() += 1;
        },
        |a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
        },
    )?;
    let total: u64 = counts.values().sum();
    let counts: BTreeMap<LatticePoint, BigUint> = counts
        .into_iter()
        .map(|(c, v)| (LatticePoint::from_coords(c), BigUint::from(v)))
        .collect();
    let max = counts.values().max().cloned().unwrap_or_default();
    let sup = if total == 0 {
        ExactProb::zero()
    } else {
        ExactProb::new(max, total)?
    };
    let sup_times_sqrt_m = sup.to_f64() * (m.max(1) as f64).sqrt();
    Ok(MidpointReport {
        m,
        d,
        total: BigUint::from(total),
        counts,
        sup,
        sup_times_sqrt_m,
    })
}

/// The hypergeometric law in floating point, from the exact ratio
/// `pmf(k+1)/pmf(k) = (s1-k)(N_I-k) / ((k+1)(s2-N_I+k+1))`, normalized over
/// the whole support. Suited to sizes where exact binomials are costly.
pub fn hypergeometric_weights(s1: u64, s2: u64, n_i: u64) -> Result<Vec<(u64, f64)>> {
    if n_i > s1 + s2 {
        return Err(Error::InvalidArgument(format!("N_I={n_i} exceeds s1+s2={}", s1 + s2)));
    }
    let support = hypergeometric_support(s1, s2, n_i);
    let (lo, hi) = (*support.start(), *support.end());
    let mode = ((n_i + 1) * (s1 + 1) / (s1 + s2 + 2)).clamp(lo, hi);
    let len = (hi - lo + 1) as usize;
    let mut w = vec![0.0f64; len];
    w[(mode - lo) as usize] = 1.0;
    let ratio = |k: u64| {
        ((s1 - k) as f64 * (n_i - k) as f64) / ((k + 1) as f64 * (s2 + k + 1 - n_i) as f64)
    };
    for k in mode..hi {
        w[(k + 1 - lo) as usize] = w[(k - lo) as usize] * ratio(k);
    }
    for k in (lo..mode).rev() {
        w[(k - lo) as usize] = w[(k + 1 - lo) as usize] / ratio(k);
    }
    let total: f64 = w.iter().sum();
    Ok((lo..=hi).zip(w.into_iter().map(|x| x / total)).collect())
}

/// Largest `|pmf(k) / density(z_k) - 1|` over `|k - αβm| <= radius`, where
/// `z_k = k / (αβm) - 1`, `s1 = αm` and `N_I = βm`.
pub fn gaussian_ratio_error(m: u64, alpha: f64, beta: f64, radius: f64) -> Result<f64> {
    let s1 = (alpha * m as f64).round() as u64;
    let n_i = (beta * m as f64).round() as u64;
    let s2 = m - s1;
    let mean = alpha * beta * m as f64;
    let mut worst = 0.0f64;
    for (k, pmf) in hypergeometric_weights(s1, s2, n_i)? {
        if (k as f64 - mean).abs() > radius {
            continue;
        }
        let z = k as f64 / mean - 1.0;
        let density = gaussian_density(z, alpha, beta, m as f64)?;
        worst = worst.max((pmf / density - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn pmf_examples() {
        assert_eq!(hypergeometric_pmf(2, 2, 2, 1).unwrap(), ExactProb::new(2u32, 3u32).unwrap());
        assert_eq!(hypergeometric_pmf(4, 5, 0, 0).unwrap(), ExactProb::one());
        assert!(hypergeometric_pmf(2, 2, 2, 3).is_err());
        assert!(hypergeometric_pmf(1, 1, 2, 0).is_err());
    }

    #[test]
    fn pmf_grid_properties() {
        for total in 0..=12u64 {
            for s1 in 0..=total {
                for n_i in 0..=total {
                    let table = hypergeometric_table(s1, total - s1, n_i).unwrap();
                    let sum = table
                        .iter()
                        .fold(num_rational::Ratio::from_integer(BigUint::from(0u32)), |a, (_, q)| a + q.ratio());
                    assert_eq!(sum, num_rational::Ratio::from_integer(BigUint::from(1u32)));
                    assert!(is_unimodal_about_mean(s1, total - s1, n_i).unwrap());
                    assert!(tail_mass_is_monotone(s1, total - s1, n_i).unwrap());
                }
            }
        }
    }

    #[test]
    fn density_example() {
        let v = gaussian_density(0.0, 0.5, 0.5, 100.0).unwrap();
        assert!((v - 0.159_577).abs() < 1e-5);
        assert_eq!(
            gaussian_density(0.3, 0.5, 0.4, 50.0).unwrap(),
            gaussian_density(-0.3, 0.5, 0.4, 50.0).unwrap()
        );
        assert!(gaussian_density(0.0, 0.0, 0.5, 10.0).is_err());
        assert!(gaussian_density(0.0, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn selection_uniform_for_small_k() {
        for k in 0..=5 {
            for j in 0..=k {
                assert!(selection_is_exactly_uniform(k, j), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn keys_are_reproducible() {
        assert_eq!(slot_key(7, 3, 11), slot_key(7, 3, 11));
        assert_ne!(slot_key(7, 3, 11), slot_key(7, 4, 11));
        assert_ne!(slot_key(7, 3, 11), slot_key(7, 3, 12));
    }

    #[test]
    fn midpoint_small_cases() {
        let cfg = EnumConfig::default();
        let r = midpoint_histogram(1, 2, &cfg).unwrap();
        assert_eq!(r.sup, ExactProb::one());
        let r = midpoint_histogram(2, 2, &cfg).unwrap();
        assert_eq!(r.sup, ExactProb::new(1u32, 4u32).unwrap());
        assert_eq!(r.total, BigUint::from(12u32));
    }

    #[test]
    fn gaussian_close_on_central_window() {
        let err = gaussian_ratio_error(10_000, 0.5, 0.5, 200.0).unwrap();
        assert!(err < 0.05, "{err}");
    }

    #[test]
    fn float_weights_match_exact_law() {
        let exact = hypergeometric_table(30, 40, 25).unwrap();
        let approx = hypergeometric_weights(30, 40, 25).unwrap();
        for ((k, q), (k2, x)) in exact.iter().zip(&approx) {
            assert_eq!(k, k2);
            assert!((q.to_f64() - x).abs() < 1e-12);
        }
    }

    #[test]
    fn table_matches_pointwise_pmf() {
        let t = hypergeometric_table(7, 5, 6).unwrap();
        for (k, q) in t {
            assert_eq!(q, hypergeometric_pmf(7, 5, 6, k).unwrap());
        }
    }

    #[test]
    fn pmf_to_float_for_huge_binomials() {
        let q = hypergeometric_pmf(600, 600, 600, 300).unwrap();
        let v = q.to_f64();
        assert!(v > 0.0 && v < 1.0);
        assert!(!q.numer().is_zero());
    }
}
