//! Independent reference computations used by the integration tests.
//!
//! Nothing here goes through `LevelProfile`; each formula works directly on
//! sorted values or on subset enumeration.

#![allow(dead_code)]

use goint_core::{BinaryOperator, Capacity, FuzzyFunction, Subset};

/// Point indices ordered by ascending value (ties by index).
pub fn ascending(f: &FuzzyFunction) -> Vec<usize> {
    let mut order: Vec<usize> = (0..f.values().len()).collect();
    order.sort_by(|&i, &j| f.value(i).total_cmp(&f.value(j)).then(i.cmp(&j)));
    order
}

/// `A_i = {σ_i, …, σ_n}` for the ascending order σ.
fn upper_sets(order: &[usize]) -> Vec<Subset> {
    (0..order.len())
        .map(|i| Subset(order[i..].iter().fold(0u64, |bits, &x| bits | 1 << x)))
        .collect()
}

/// `max_i f(σ_i) ∗ ν(A_i)` over the ascending order.
pub fn sorted_t_normed(nu: &Capacity, f: &FuzzyFunction, star: impl Fn(f64, f64) -> f64) -> f64 {
    let order = ascending(f);
    order
        .iter()
        .zip(upper_sets(&order))
        .map(|(&x, set)| star(nu.value(set), f.value(x)))
        .fold(0.0, f64::max)
}

pub fn sorted_sugeno(nu: &Capacity, f: &FuzzyFunction) -> f64 {
    sorted_t_normed(nu, f, f64::min)
}

/// `Σ_i (f(σ_i) − f(σ_{i−1})) ν(A_i)`.
pub fn sorted_choquet(nu: &Capacity, f: &FuzzyFunction) -> f64 {
    let order = ascending(f);
    let mut previous = 0.0;
    let mut total = 0.0;
    for (&x, set) in order.iter().zip(upper_sets(&order)) {
        total += (f.value(x) - previous) * nu.value(set);
        previous = f.value(x);
    }
    total
}

/// `max_{A ≠ ∅} ν(A) ∗ min_{x∈A} f(x)` by enumerating all subsets.
pub fn subset_t_normed(nu: &Capacity, f: &FuzzyFunction, star: impl Fn(f64, f64) -> f64) -> f64 {
    let n = f.values().len();
    (1u64..1 << n)
        .map(|bits| {
            let low = (0..n)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| f.value(i))
                .fold(1.0, f64::min);
            star(nu.value(Subset(bits)), low)
        })
        .fold(0.0, f64::max)
}

/// `{x : f(x) ≥ t}` recomputed from the raw values.
pub fn level_set(f: &FuzzyFunction, t: f64) -> Subset {
    Subset(
        f.values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= t)
            .fold(0u64, |bits, (i, _)| bits | 1 << i),
    )
}

/// `m(t) = O(ν(f_t), t)` from the definition.
pub fn profile_at(nu: &Capacity, f: &FuzzyFunction, op: &BinaryOperator, t: f64) -> f64 {
    op.eval(nu.value(level_set(f, t)), t)
}

/// `(∏_{x∈A}(1 + λ g_x) − 1) / λ`, or the plain sum at `λ = 0`.
pub fn lambda_measure(densities: &[f64], lambda: f64, set: Subset) -> f64 {
    let members = set.indices().map(|i| densities[i]);
    if lambda == 0.0 {
        members.sum()
    } else {
        (members.map(|g| 1.0 + lambda * g).product::<f64>() - 1.0) / lambda
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// A GO-style integral built on the non-monotone `O'(l, s) = l·(1 − s)` for
/// `s < 1` (and `O'(l, 1) = l`). It keeps both boundary values but
/// constant functions already break monotonicity: `I(0.5_X) = 0.5 > I(0.9_X) = 0.1`.
pub struct CorruptedGo;

impl CorruptedGo {
    pub fn eval(l: f64, s: f64) -> f64 {
        if s == 1.0 {
            l
        } else {
            l * (1.0 - s)
        }
    }
}

impl goint_core::Integral for CorruptedGo {
    fn integrate(&self, capacity: &Capacity, f: &FuzzyFunction) -> goint_core::Result<f64> {
        let m = goint_core::LevelProfile::build(capacity, f, BinaryOperator::Min)?;
        Ok(m.segments()
            .iter()
            .map(|s| Self::eval(s.capacity, s.breakpoint))
            .fold(0.0, f64::max))
    }

    fn describe(&self) -> String {
        "go[corrupted;max]".into()
    }
}
