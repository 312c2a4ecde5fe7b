use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;
use saw_lab::lattice::{codec, lex_compare_points, LatticePoint, Polygon, Step, Walk};
use saw_lab::patterns::{self, fixtures, PatternPair};
use saw_lab::resampler;
use saw_lab::two_part::{compose, decompose, has_first_part_shape, Part};

/// A self-avoiding walk: random steps, cut at the first revisit.
fn saw(d: usize, max_len: usize) -> impl Strategy<Value = Walk> {
    (prop::collection::vec((0..d, any::<bool>()), 0..=max_len), prop::collection::vec(-5i32..5, d)).prop_map(
        move |(raw, origin)| {
            let start = LatticePoint::new(&origin).unwrap();
            let mut seen = HashSet::from([start.clone()]);
            let mut at = start.clone();
            let mut steps = Vec::new();
            for (axis, neg) in raw {
                let s = Step::new(axis, neg);
                let next = at.offset(s);
                if !seen.insert(next.clone()) {
                    break;
                }
                steps.push(s);
                at = next;
            }
            Walk::new(start, steps).unwrap()
        },
    )
}

fn point(d: usize) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-3i32..3, d).prop_map(|c| LatticePoint::new(&c).unwrap())
}

proptest! {
    #[test]
    fn codec_roundtrip(w in (2usize..=3).prop_flat_map(|d| saw(d, 20))) {
        let text = codec::serialize(&w);
        prop_assert_eq!(codec::parse(&text).unwrap(), w);
    }

    #[test]
    fn decompose_then_compose(w in (2usize..=3).prop_flat_map(|d| saw(d, 16))) {
        let dec = decompose(&w).unwrap();
        prop_assert_eq!(dec.first().len() + dec.second().len(), w.len());
        prop_assert!(dec.first().avoids(dec.second()));
        prop_assert_eq!(dec.meeting_vertex(), w.ne_vertex());
        prop_assert_eq!(compose(&dec), w.clone());
        // reversal swaps which part holds the start and nothing else
        let rev = decompose(&w.reversed()).unwrap();
        prop_assert_eq!(rev.first(), dec.first());
        prop_assert_eq!(rev.second(), dec.second());
        if !w.is_empty() {
            prop_assert_ne!(rev.origin_part() == Part::First, dec.origin_part() == Part::First);
        }
    }

    #[test]
    fn parts_at_origin_have_first_part_shape(w in saw(2, 16)) {
        let top = w.ne_vertex().clone();
        let moved = w.translated(&LatticePoint::origin(2).sub(&top));
        let dec = decompose(&moved).unwrap();
        prop_assert!(has_first_part_shape(dec.first()));
        prop_assert!(has_first_part_shape(dec.second()));
        if !dec.first().is_empty() {
            prop_assert_eq!(dec.first().steps()[0], Step::WEST);
        }
    }

    #[test]
    fn lex_order_is_total_and_translation_invariant(
        (a, b, c) in (2usize..=3).prop_flat_map(|d| (point(d), point(d), point(d)))
    ) {
        let ab = lex_compare_points(&a, &b).unwrap();
        prop_assert_eq!(ab.reverse(), lex_compare_points(&b, &a).unwrap());
        prop_assert_eq!(ab.is_eq(), a == b);
        prop_assert_eq!(lex_compare_points(&a.add(&c), &b.add(&c)).unwrap(), ab);
        // the most significant coordinate decides
        let last = a.dim() - 1;
        if a.coord(last) != b.coord(last) {
            prop_assert_eq!(ab, a.coord(last).cmp(&b.coord(last)));
        }
    }

    #[test]
    fn hypergeometric_pmf_sums_to_one(s1 in 0u64..40, s2 in 0u64..40, frac in 0.0f64..=1.0) {
        let n_i = ((s1 + s2) as f64 * frac).floor() as u64;
        let table = resampler::hypergeometric_table(s1, s2, n_i).unwrap();
        let total = table.iter().fold(Ratio::from_integer(BigUint::from(0u32)), |acc, (_, q)| acc + q.ratio());
        prop_assert_eq!(total, Ratio::from_integer(BigUint::from(1u32)));
        for (k, q) in table {
            prop_assert_eq!(q, resampler::hypergeometric_pmf(s1, s2, n_i, k).unwrap());
        }
    }

    #[test]
    fn type_ii_choice_is_a_j_subset(keys in prop::collection::vec(any::<u64>(), 0..10), j in 0usize..10) {
        let j = j.min(keys.len());
        let chosen = resampler::choose_type_ii(&keys, j);
        prop_assert_eq!(chosen.len(), j);
        prop_assert!(chosen.windows(2).all(|w| w[0] < w[1]));
        let worst = chosen.iter().map(|&i| (keys[i], i)).max();
        if let Some(worst) = worst {
            prop_assert!((0..keys.len()).filter(|i| !chosen.contains(i)).all(|i| (keys[i], i) > worst));
        }
    }
}

fn four_slot() -> &'static (Polygon, PatternPair, patterns::LocalShell) {
    static SHELL: OnceLock<(Polygon, PatternPair, patterns::LocalShell)> = OnceLock::new();
    SHELL.get_or_init(|| {
        let p = fixtures::four_slot_fixture().unwrap();
        let pair = patterns::canonical_pattern_pair(2).unwrap();
        let shell = patterns::LocalShell::new(&p, &pair).unwrap();
        (p, pair, shell)
    })
}

proptest! {
    // shell keys of ~900-step polygons are slow in debug builds
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resampling_is_reproducible(seed in any::<u64>(), draw in 0u64..1000) {
        let (p, pair, shell) = four_slot();
        let a = resampler::resample_draw(shell, p, seed, draw, None).unwrap();
        let b = resampler::resample_draw(shell, p, seed, draw, None).unwrap();
        prop_assert_eq!(&a.gamma_out, &b.gamma_out);
        prop_assert_eq!(a.gamma_out.len(), p.len());
        prop_assert_eq!(patterns::local_shell_key(&a.gamma_out, pair).unwrap(), shell.key.clone());
    }
}
