mod common;

use num::{BigInt, BigRational};
use proptest::prelude::*;
use proptest::sample::Index;

use common::*;
use shotgun_core::probability::{exact_repeat_prob, exact_repeat_prob_rational, orbit_decomposition, repeat_prob_bounds};
use shotgun_core::ProbVector;

fn law(raw: &[u32]) -> ProbVector {
    let total: u32 = raw.iter().sum();
    ProbVector::from_rationals(raw.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total))).collect())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn orbit_sum_bounds(kind in kind(), idx in indices(1..10), s in any::<Index>()) {
        let g = ctx(kind);
        let ball = g.ball(2).unwrap();
        let a = pick_set(&ball, &idx);
        let shift = pick(&ball, &s);
        prop_assume!(!g.is_identity(&shift));
        let o = orbit_decomposition(&g, &a, &shift).unwrap();
        let sizes = o.sizes();
        let total: usize = sizes.iter().sum();
        prop_assert_eq!(total, o.ground.len());
        prop_assert!(a.len() <= total);
        prop_assert!(sizes.iter().map(|n| n - 1).sum::<usize>() <= a.len());
        // orbits partition the ground set
        let mut all: Vec<_> = o.orbits.iter().flat_map(|x| x.iter().cloned()).collect();
        all.sort();
        prop_assert_eq!(all, o.ground.elements().to_vec());
    }

    #[test]
    fn nested_sets_lower_the_probability(kind in kind(), idx in indices(2..10), s in any::<Index>(),
                                         raw in prop::collection::vec(1u32..6, 2..4)) {
        let g = ctx(kind);
        let ball = g.ball(2).unwrap();
        let shift = pick(&ball, &s);
        let p = law(&raw);
        let mut prev = BigRational::from_integer(1.into());
        for n in 1..=idx.len() {
            let a = pick_set(&ball, &idx[..n]);
            let v = exact_repeat_prob_rational(&g, &a, &shift, &p).unwrap();
            prop_assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn double_mode_matches_rational_and_bounds(kind in kind(), idx in indices(1..10), s in any::<Index>(),
                                               raw in prop::collection::vec(1u32..6, 2..4)) {
        use num::ToPrimitive;
        let g = ctx(kind);
        let ball = g.ball(2).unwrap();
        let a = pick_set(&ball, &idx);
        let shift = pick(&ball, &s);
        let p = law(&raw);
        let exact = exact_repeat_prob_rational(&g, &a, &shift, &p).unwrap().to_f64().unwrap();
        let double = exact_repeat_prob(&g, &a, &shift, &p).unwrap();
        prop_assert!(((double - exact) / exact).abs() <= 1e-12);
        if !g.is_identity(&shift) {
            let (lo, hi) = repeat_prob_bounds(&g, &a, &shift, &p).unwrap();
            prop_assert!(lo <= exact * (1.0 + 1e-12) && exact <= hi * (1.0 + 1e-12));
        }
    }
}

#[test]
fn identity_shift_is_certain() {
    let g = z1();
    let p = law(&[1, 2]);
    let a = interval(&g, 0, 5);
    assert_eq!(exact_repeat_prob_rational(&g, &a, &g.identity(), &p).unwrap(), BigRational::from_integer(1.into()));
    assert!(repeat_prob_bounds(&g, &a, &g.identity(), &p).is_err());
}
