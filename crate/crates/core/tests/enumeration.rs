use std::collections::BTreeSet;

use qamgolay::algebra::{Permutation, Z4};
use qamgolay::constructions::{ConstructionSpec, Recipe, Side};
use qamgolay::enumeration::*;
use qamgolay::golay::{is_gcp, QamSequence};
use qamgolay::offsets::CoefficientMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quadratic(m: u128) -> u128 {
    (m + 1) * (m - 2)
}

/// Pairs a sample of generated offsets with a fixed standard base on both sides.
fn sampled_pairs_are_gcps(entries: &[(CoefficientMatrix, Recipe)], count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<_> = entries.choose_multiple(&mut rng, count).collect();
    for (_, recipe) in sample {
        for side in [Side::First, Side::Last] {
            let m = recipe.m();
            let spec = ConstructionSpec {
                recipe: recipe.with_side(side),
                pi: Permutation::identity(m),
                base_c: (0..=m).map(|i| Z4::new(i as i64)).collect(),
                c_prime: Z4::ONE,
            };
            let pair = spec.build().unwrap();
            let ok = is_gcp(&QamSequence::from_vgbf(&pair.f), &QamSequence::from_vgbf(&pair.g)).unwrap();
            assert!(ok, "{recipe:?} {side:?}");
        }
    }
}

#[test]
fn q4_counts_up_to_m5() {
    for m in 3..=5usize {
        let got = enumerate_new_offsets_q4(m).unwrap();
        assert_eq!(got.len() as u128, 100 * quadratic(m as u128));
        assert!(got.iter().all(|c| c.nonzero_linear_columns().len() >= 3));
    }
}

#[test]
fn q6_counts_and_disjoint_cases() {
    for m in 3..=4usize {
        let cases = enumerate_q6_case_recipes(m).unwrap();
        let sets: Vec<BTreeSet<CoefficientMatrix>> = cases
            .iter()
            .map(|c| c.iter().map(|(x, _)| x.clone()).collect())
            .collect();
        let mm = m as u128;
        assert_eq!(sets[0].len() as u128, 1880 * quadratic(mm));
        assert_eq!(sets[1].len() as u128, 1880 * quadratic(mm));
        assert_eq!((sets[2].len() + sets[3].len()) as u128, 20 * (mm - 3) * quadratic(mm));
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(sets[i].is_disjoint(&sets[j]), "cases {i} and {j} overlap at m = {m}");
            }
        }
        let union = enumerate_new_offsets_q6(m).unwrap();
        assert_eq!(union.len() as u128, (3700 + 20 * mm) * quadratic(mm));
        assert!(union.iter().all(|c| c.nonzero_linear_columns().len() >= 3));
    }
}

#[test]
fn q6_family_with_three_by_two_at_m5() {
    let got = enumerate_triple_family(5, &[3, 2]).unwrap();
    assert_eq!(got.len(), 33840);
    assert_eq!(lower_bound_new_offsets(5, &[3, 2]).unwrap(), 33840);
}

#[test]
fn generated_offsets_give_gcps() {
    sampled_pairs_are_gcps(&enumerate_triple_family_recipes(4, &[2, 2]).unwrap(), 500, 1);
    let cases = enumerate_q6_case_recipes(4).unwrap();
    for (i, case) in cases.iter().enumerate() {
        sampled_pairs_are_gcps(case, 500.min(case.len()), 10 + i as u64);
    }
    sampled_pairs_are_gcps(&enumerate_triple_family_recipes(5, &[3, 2]).unwrap(), 500, 3);
}

#[test]
fn report_rows() {
    let r = count_report(Family::NewQ6Cases, 6, 3, None).unwrap();
    assert_eq!((r.formula, r.generated), (15040, Some(15040)));
    let r = count_report(Family::NewTriple, 6, 5, Some(&[3, 2])).unwrap();
    assert_eq!(r.matches(), Some(true));
    assert!(count_report(Family::NewQ6Cases, 4, 3, None).is_err());
}
