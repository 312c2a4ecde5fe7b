mod common;

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use saw_lab::counting::{self, Constraint, EnumConfig, WalkSearch};
use saw_lab::lattice::LatticePoint;
use saw_lab::two_part::{self, decompose, Part};

use common::*;

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

#[test]
fn walk_counts_match_naive_dfs() {
    for n in 0..=9 {
        assert_eq!(counting::count_walks(n, 2, &cfg()).unwrap(), BigUint::from(walk_count(n, 2)), "d=2 n={n}");
    }
    for n in 0..=5 {
        assert_eq!(counting::count_walks(n, 3, &cfg()).unwrap(), BigUint::from(walk_count(n, 3)), "d=3 n={n}");
    }
}

#[test]
fn closing_and_polygon_counts_match() {
    for n in 2..=9 {
        assert_eq!(counting::count_closing_walks(n, 2, &cfg()).unwrap(), BigUint::from(closing_count(n, 2)));
    }
    for n in (4..=10).step_by(2) {
        assert_eq!(counting::count_polygons(n, 2, &cfg()).unwrap(), BigUint::from(polygon_count(n, 2)), "p_{n}");
    }
    assert_eq!(counting::count_polygons(6, 3, &cfg()).unwrap(), BigUint::from(polygon_count(6, 3)));
}

#[test]
fn ne_walks_are_the_translates() {
    for d in [2, 3] {
        let n = if d == 2 { 7 } else { 4 };
        let mut expected = HashSet::new();
        each_ne_walk(n, d, |w| {
            expected.insert(to_walk(w, d));
        });
        let mut got = HashSet::new();
        WalkSearch::new(n, d, Constraint::NeAtOrigin, &cfg())
            .unwrap()
            .for_each(|w| {
                got.insert(w.clone());
            })
            .unwrap();
        assert_eq!(got, expected, "d={d}");
    }
}

#[test]
fn decomposition_agrees_with_naive_split() {
    for d in [2, 3] {
        let n = if d == 2 { 7 } else { 4 };
        each_ne_walk(n, d, |w| {
            let (first, second, origin_first) = split(w, d);
            let dec = decompose(&to_walk(w, d)).unwrap();
            assert_eq!(dec.first(), &to_walk(&first, d));
            assert_eq!(dec.second(), &to_walk(&second, d));
            assert_eq!(dec.origin_part() == Part::First, origin_first);
        });
    }
}

#[test]
fn first_part_table_lists_the_first_parts() {
    let n = 7;
    for ell in 0..=n {
        let table = counting::first_part_table(ell, n, 2, "1".parse().unwrap(), &cfg()).unwrap();
        let listed: HashSet<_> = table
            .rows
            .iter()
            .filter(|r| r.completions > BigUint::from(0u32))
            .map(|r| r.walk.clone())
            .collect();
        let expected: HashSet<_> = first_parts(ell, n, 2).iter().map(|w| to_walk(w, 2)).collect();
        assert_eq!(listed, expected, "ell={ell}");
    }
}

#[test]
fn completions_count_second_parts() {
    let (n, d) = (7, 2);
    let mut seconds: HashMap<Vec<Pt>, HashSet<Vec<Pt>>> = HashMap::new();
    let mut closing: HashMap<Vec<Pt>, HashSet<Vec<Pt>>> = HashMap::new();
    each_ne_walk(n, d, |w| {
        let (first, second, _) = split(w, d);
        if adjacent(w[0], w[n]) {
            closing.entry(first.clone()).or_default().insert(second.clone());
        }
        seconds.entry(first).or_default().insert(second);
    });
    for (first, set) in &seconds {
        let c = counting::completion_counts(&to_walk(first, d), n, &cfg()).unwrap();
        assert_eq!(c.completions, BigUint::from(set.len()));
        let closes = closing.get(first).map_or(0, |s| s.len());
        assert_eq!(c.closing, BigUint::from(closes));
    }
}

#[test]
fn first_part_histogram_sums_to_closing_walks() {
    for n in [3, 5, 7, 9] {
        let hist = two_part::closing_first_length_histogram(n, 2, &cfg()).unwrap();
        let total: BigUint = hist.iter().sum();
        assert_eq!(total, BigUint::from(closing_count(n, 2)));
        assert!(hist.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn midpoint_law_matches_naive_tally() {
    for m in [4, 7, 8] {
        let report = saw_lab::resampler::midpoint_histogram(m, 2, &cfg()).unwrap();
        let mut tally: HashMap<(i32, i32), u64> = HashMap::new();
        each_walk(m, 2, |w| *tally.entry((w[m / 2][0], w[m / 2][1])).or_default() += 1);
        assert_eq!(report.counts.len(), tally.len());
        for ((x, y), c) in tally {
            let p = LatticePoint::new(&[x, y]).unwrap();
            assert_eq!(report.counts[&p], BigUint::from(c));
        }
    }
}
