//! Properties of atomic functionals, predual norms and finiteness gaps.

mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitney_core::extension::McShaneExtension;
use whitney_core::predual::{
    finiteness_gap, pair_smooth, predual_norm_bracket, predual_norm_k0, Atom, AtomicFunctional, FinitenessMode,
    SUBSET_LIMIT,
};
use whitney_core::{Modulus, MultiIndex, NormContext, WhitneyField};

fn random_functional(rng: &mut ChaCha8Rng, ctx: &NormContext, pool: &[Vec<f64>]) -> AtomicFunctional {
    let zero = MultiIndex::zero(ctx.n);
    let mut g = AtomicFunctional::new(ctx.clone());
    for _ in 0..rng.gen_range(1..=5) {
        let i = rng.gen_range(0..pool.len());
        let c = rng.gen_range(-2.0..2.0);
        if pool.len() > 1 && rng.gen_bool(0.5) {
            let j = (i + rng.gen_range(1..pool.len())) % pool.len();
            g.add(Atom::difference(pool[i].clone(), pool[j].clone(), zero.clone()), c).unwrap();
        } else {
            g.add(Atom::delta(pool[i].clone(), zero.clone()), c).unwrap();
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn k0_norm_is_a_norm(seed in any::<u64>(), s in -4.0f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let modulus = random_modulus(&mut rng);
        let ctx = NormContext::new(0, n, modulus.clone()).unwrap();
        let size = rng.gen_range(1..=5);
        let pool = random_points(&mut rng, n, size);
        let g = random_functional(&mut rng, &ctx, &pool);
        let h = random_functional(&mut rng, &ctx, &pool);
        let ng = predual_norm_k0(&g, &modulus).unwrap().value;
        let nh = predual_norm_k0(&h, &modulus).unwrap().value;
        let ns = predual_norm_k0(&g.combine(s, &h, 0.0).unwrap(), &modulus).unwrap().value;
        let nsum = predual_norm_k0(&g.combine(1.0, &h, 1.0).unwrap(), &modulus).unwrap().value;
        prop_assert!(ng >= 0.0);
        prop_assert!((ns - s.abs() * ng).abs() <= 1e-9 * (1.0 + ng));
        prop_assert!(nsum <= ng + nh + 1e-9);
    }

    #[test]
    fn feasible_values_pair_below_the_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let modulus = random_modulus(&mut rng);
        let ctx = NormContext::new(0, n, modulus.clone()).unwrap();
        let size = rng.gen_range(1..=5);
        let pool = random_points(&mut rng, n, size);
        let g = random_functional(&mut rng, &ctx, &pool);
        let norm = predual_norm_k0(&g, &modulus).unwrap();
        // A random point of the feasible set: scale random values into it.
        let support = g.support();
        let mut u: Vec<f64> = support.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut worst: f64 = 1.0;
        for i in 0..u.len() {
            worst = worst.max(u[i].abs());
            for j in i + 1..u.len() {
                worst = worst.max((u[i] - u[j]).abs() / modulus.eval(euclid(&support[i], &support[j])).unwrap());
            }
        }
        u.iter_mut().for_each(|v| *v /= worst);
        let field = WhitneyField::new(n, 0, support, u.into_iter().map(|v| vec![v]).collect()).unwrap();
        let ext = McShaneExtension::new(&field, modulus.clone()).unwrap();
        prop_assert!(pair_smooth(&ext, &g).unwrap() <= norm.value + 1e-9);
        let best = McShaneExtension::new(&norm.maximizer_field().unwrap(), modulus.clone()).unwrap();
        prop_assert!((pair_smooth(&best, &g).unwrap() - norm.value).abs() <= 1e-9);
    }

    #[test]
    fn point_difference_norm_is_min_of_two_and_modulus(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let modulus = random_modulus(&mut rng);
        let ctx = NormContext::new(0, n, modulus.clone()).unwrap();
        let x = random_point(&mut rng, n, 3.0);
        let y = random_point(&mut rng, n, 3.0);
        let zero = MultiIndex::zero(n);
        let g = AtomicFunctional::from_terms(ctx, vec![(Atom::delta(x.clone(), zero.clone()), 1.0), (Atom::delta(y.clone(), zero), -1.0)]).unwrap();
        let v = predual_norm_k0(&g, &modulus).unwrap().value;
        let w = modulus.eval(euclid(&x, &y)).unwrap();
        prop_assert!((v - w.min(2.0)).abs() <= 1e-9);
        // The same number by vertex enumeration of the constraint polytope.
        let rows = vec![
            (vec![1.0, 0.0], 1.0), (vec![-1.0, 0.0], 1.0), (vec![0.0, 1.0], 1.0), (vec![0.0, -1.0], 1.0),
            (vec![1.0, -1.0], w), (vec![-1.0, 1.0], w),
        ];
        let brute = vertex_max(&[1.0, -1.0], &rows).unwrap().0;
        prop_assert!((v - brute).abs() <= 1e-9);
    }

    #[test]
    fn bracket_contains_the_exact_k0_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let modulus = random_modulus(&mut rng);
        let ctx = NormContext::new(0, n, modulus.clone()).unwrap();
        let size = rng.gen_range(1..=4);
        let pool = random_points(&mut rng, n, size);
        let g = random_functional(&mut rng, &ctx, &pool);
        let exact = predual_norm_k0(&g, &modulus).unwrap().value;
        let b = predual_norm_bracket(&g).unwrap();
        prop_assert!(b.lo <= exact + 1e-9);
        prop_assert!(exact <= b.hi + 1e-9);
        prop_assert!(b.lo <= b.hi + 1e-9);
    }

    #[test]
    fn subset_sup_is_monotone_and_below_full(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(0..=1);
        let m = rng.gen_range(1..=6);
        let ctx = NormContext::new(k, n, random_modulus(&mut rng)).unwrap();
        let pts = random_points(&mut rng, n, m);
        let field = random_field(&mut rng, n, k, pts);
        for mode in [FinitenessMode::Jets, FinitenessMode::Values] {
            let mut last = 0.0;
            for d in 1..=m {
                let r = finiteness_gap(&field, d, &ctx, mode, SUBSET_LIMIT).unwrap();
                prop_assert!(r.subset_sup >= last * (1.0 - 1e-9) - 1e-12);
                prop_assert!(r.subset_sup <= r.full * (1.0 + 1e-9) + 1e-9);
                last = r.subset_sup;
            }
        }
    }
}

#[test]
fn single_point_ratio_is_one() {
    let field = WhitneyField::new(1, 1, vec![vec![0.4]], vec![vec![0.3, -2.0]]).unwrap();
    let ctx = NormContext::new(1, 1, Modulus::Linear).unwrap();
    for d in 1..4 {
        for mode in [FinitenessMode::Jets, FinitenessMode::Values] {
            assert_eq!(finiteness_gap(&field, d, &ctx, mode, SUBSET_LIMIT).unwrap().ratio, 1.0);
        }
    }
}

/// `n = 1`, `k = 1`, `d = k + 2`: with only values as data the ratio is at
/// least 1 and stays bounded across random fields.
#[test]
fn values_mode_ratio_is_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let ctx = NormContext::new(1, 1, Modulus::Linear).unwrap();
    let mut worst: f64 = 1.0;
    for _ in 0..100 {
        let m = rng.gen_range(3..=7);
        let pts = random_points(&mut rng, 1, m);
        let field = random_field(&mut rng, 1, 1, pts);
        let r = finiteness_gap(&field, 3, &ctx, FinitenessMode::Values, SUBSET_LIMIT).unwrap();
        assert!(r.ratio >= 1.0 - 1e-9, "{}", r.ratio);
        worst = worst.max(r.ratio);
    }
    eprintln!("largest values-mode ratio over 100 fields: {worst:.4}");
    assert!(worst.is_finite() && worst < 10.0, "{worst}");
}

#[test]
fn subset_guard_rejects_large_enumerations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = random_points(&mut rng, 2, 40);
    let field = random_field(&mut rng, 2, 0, pts);
    let ctx = NormContext::new(0, 2, Modulus::Linear).unwrap();
    let err = finiteness_gap(&field, 10, &ctx, FinitenessMode::Jets, SUBSET_LIMIT).unwrap_err();
    assert!(err.is_input());
}
