mod common;

use common::*;
use goint_core::integrals::{
    choquet_integral, discrete_go_aggregate, go_integral, sugeno_integral, t_normed_integral,
};
use goint_core::verify::{
    brute_force_go, random_capacity, random_instance, trial_rng, GridSpec, DEFAULT_SIZES,
};
use goint_core::{
    BinaryOperator, Capacity, CapacityKind, CapacitySpec, DiscreteGpg, FiniteSpace, FuzzyFunction,
    GpgFunctional, LambdaSpec, LevelProfile, Subset,
};
use rand::Rng;

const INSTANCES: u64 = 300;

fn instances(seed: u64) -> impl Iterator<Item = (Capacity, FuzzyFunction)> {
    (0..INSTANCES).map(move |trial| random_instance(&mut trial_rng(seed, trial), &DEFAULT_SIZES))
}

#[test]
fn sugeno_matches_sorted_and_subset_formulas() {
    for (nu, f) in instances(1) {
        let fast = sugeno_integral(&nu, &f).unwrap();
        assert_eq!(fast, sorted_sugeno(&nu, &f), "{nu:?} {f:?}");
        assert_eq!(fast, subset_t_normed(&nu, &f, f64::min));
    }
}

#[test]
fn t_normed_matches_sorted_and_subset_formulas() {
    for (nu, f) in instances(2) {
        for star in BinaryOperator::builtin_t_norms() {
            let fast = t_normed_integral(&nu, &f, &star).unwrap();
            let sorted = sorted_t_normed(&nu, &f, |a, b| star.eval(a, b));
            let subsets = subset_t_normed(&nu, &f, |a, b| star.eval(a, b));
            assert!(close(fast, sorted, 1e-12), "{star}: {fast} vs {sorted}");
            assert!(close(fast, subsets, 1e-12), "{star}: {fast} vs {subsets}");
        }
    }
}

#[test]
fn choquet_matches_permutation_formula() {
    for (nu, f) in instances(3) {
        let fast = choquet_integral(&nu, &f).unwrap();
        assert!(close(fast, sorted_choquet(&nu, &f), 1e-12));
    }
}

#[test]
fn choquet_of_additive_is_weighted_mean() {
    for trial in 0..INSTANCES {
        let mut rng = trial_rng(4, trial);
        let n = rng.random_range(1..=8);
        let space = FiniteSpace::with_size(n).unwrap();
        let nu = random_capacity(&mut rng, &space, CapacityKind::Additive);
        let f = goint_core::verify::random_function(&mut rng, &space);
        let mean: f64 = (0..n).map(|i| nu.value(Subset(1 << i)) * f.value(i)).sum();
        assert!(close(choquet_integral(&nu, &f).unwrap(), mean, 1e-12));
    }
}

#[test]
fn profile_matches_definition_at_random_thresholds() {
    for (trial, (nu, f)) in instances(5).enumerate() {
        let mut rng = trial_rng(50, trial as u64);
        for op in BinaryOperator::builtin_t_overlaps() {
            let m = LevelProfile::build(&nu, &f, op).unwrap();
            let mut ts: Vec<f64> = (0..20).map(|_| rng.random::<f64>()).collect();
            ts.extend(f.values());
            ts.extend([0.0, 1.0]);
            for t in ts {
                assert_eq!(m.eval(t), profile_at(&nu, &f, &op, t), "{op} t={t}");
            }
        }
    }
}

#[test]
fn brute_force_agrees_exactly_for_max_and_distorted() {
    let grid = GridSpec::new(1e-3, true).unwrap();
    let functionals = [
        GpgFunctional::Max,
        GpgFunctional::distorted_power(2.0).unwrap(),
        GpgFunctional::distorted_power(0.5).unwrap(),
    ];
    for (nu, f) in instances(6).take(150) {
        for op in BinaryOperator::builtin_t_overlaps() {
            for g in &functionals {
                let exact = go_integral(&nu, &f, &op, g).unwrap();
                let oracle = brute_force_go(&nu, &f, &op, g, &grid).unwrap();
                assert_eq!(exact, oracle, "{op} {g}");
            }
        }
    }
}

#[test]
fn brute_force_without_breakpoints_never_exceeds_exact() {
    let coarse = GridSpec::new(0.05, false).unwrap();
    for (nu, f) in instances(7).take(100) {
        for op in BinaryOperator::builtin_t_overlaps() {
            let exact = go_integral(&nu, &f, &op, &GpgFunctional::Max).unwrap();
            let oracle = brute_force_go(&nu, &f, &op, &GpgFunctional::Max, &coarse).unwrap();
            assert!(oracle <= exact + 1e-15);
        }
    }
}

#[test]
fn lambda_measure_matches_product_formula() {
    for trial in 0..100 {
        let mut rng = trial_rng(8, trial);
        let n = rng.random_range(2..=8);
        let space = FiniteSpace::with_size(n).unwrap();
        let densities: Vec<f64> = (0..n).map(|_| 0.02 + 0.96 * rng.random::<f64>()).collect();
        let nu = Capacity::build(
            &space,
            CapacitySpec::SugenoLambda {
                densities: densities.clone(),
                lambda: LambdaSpec::Auto,
            },
        )
        .unwrap();
        let lambda = nu.lambda().unwrap();
        // λ solves ∏(1 + λ g_i) = 1 + λ
        let product: f64 = densities.iter().map(|g| 1.0 + lambda * g).product();
        assert!(close(product, 1.0 + lambda, 1e-9), "λ={lambda}");
        for bits in 1..(1u64 << n) - 1 {
            let set = Subset(bits);
            assert!(close(
                nu.value(set),
                lambda_measure(&densities, lambda, set),
                1e-9
            ));
        }
    }
}

#[test]
fn discrete_max_aggregate_equals_go_with_max() {
    for (nu, f) in instances(9).take(200) {
        for op in BinaryOperator::builtin_t_overlaps() {
            let go = go_integral(&nu, &f, &op, &GpgFunctional::Max).unwrap();
            let agg = discrete_go_aggregate(&nu, &f, &op, &DiscreteGpg::MaxN).unwrap();
            assert_eq!(go, agg);
            let values: Vec<f64> = f
                .distinct_positive_values()
                .into_iter()
                .map(|w| profile_at(&nu, &f, &op, w))
                .collect();
            let sum = discrete_go_aggregate(&nu, &f, &op, &DiscreteGpg::ProbSum).unwrap();
            let expected = 1.0 - values.iter().map(|v| 1.0 - v).product::<f64>();
            assert!(close(
                sum,
                if values.is_empty() { 0.0 } else { expected },
                1e-12
            ));
        }
    }
}

#[test]
fn permuting_points_leaves_integrals_unchanged() {
    for (trial, (nu, f)) in instances(10).enumerate().take(200) {
        let n = f.values().len();
        let mut rng = trial_rng(100, trial as u64);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let nu_p = nu.permuted(&perm).unwrap();
        let f_p = f.permuted(nu_p.space(), &perm).unwrap();
        // sums over subsets are reassociated by the permutation, so allow rounding
        assert!(close(
            sugeno_integral(&nu, &f).unwrap(),
            sugeno_integral(&nu_p, &f_p).unwrap(),
            1e-12
        ));
        for op in BinaryOperator::builtin_t_overlaps() {
            assert!(close(
                go_integral(&nu, &f, &op, &GpgFunctional::Max).unwrap(),
                go_integral(&nu_p, &f_p, &op, &GpgFunctional::Max).unwrap(),
                1e-12
            ));
        }
        assert!(close(
            choquet_integral(&nu, &f).unwrap(),
            choquet_integral(&nu_p, &f_p).unwrap(),
            1e-12
        ));
    }
}
