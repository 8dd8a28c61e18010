//! Brute-force oracles and property harnesses.
//!
//! The oracle [`brute_force_go`] evaluates `m(t) = O(ν(f_t), t)` from first
//! principles on a threshold grid and applies the functional to the samples,
//! independently of [`LevelProfile`]. The property suites draw seeded random
//! instances and record every violation together with the instance that
//! produced it, so any violation can be replayed.
//!
//! Each trial draws from its own ChaCha stream `(seed, trial)`, so trials can
//! run in parallel and still produce identical reports for identical seeds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouping::{GpgFunctional, LevelProfile};
use crate::integrals::{Integral, IntegralConfig, IntegralKind};
use crate::overlap_ops::BinaryOperator;
use crate::space_measure::{
    Capacity, CapacityKind, CapacitySpec, Distortion, FiniteSpace, FuzzyFunction, LambdaSpec,
    Subset,
};

/// Tolerance for identities that hold exactly on the exact evaluation paths.
pub const EXACT_TOLERANCE: f64 = 1e-9;
/// Tolerance for identities involving kernel-grid approximations.
pub const KERNEL_TOLERANCE: f64 = 1e-3;
/// Slack allowed for floating noise in monotonicity comparisons.
pub const MONOTONICITY_SLACK: f64 = 1e-12;
/// Space sizes drawn by the suites unless told otherwise.
pub const DEFAULT_SIZES: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];
/// Violations kept per report; the rest are only counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 100;

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

// ---------------------------------------------------------------------------
// random instances
// ---------------------------------------------------------------------------

/// A capacity of the requested kind with random parameters.
///
/// Tables are upward closures of random scores (sometimes quantized to tenths
/// to create ties); λ-measures fall back to additive on one-point spaces,
/// where no automatic λ exists.
pub fn random_capacity<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    kind: CapacityKind,
) -> Capacity {
    let n = space.size();
    let normalized = |rng: &mut R| {
        let raw: Vec<f64> = (0..n).map(|_| 0.05 + rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / total).collect::<Vec<f64>>()
    };
    let spec = match kind {
        CapacityKind::Table => {
            let quantize = rng.random_bool(0.3);
            let full = Subset::full(n).0 as usize;
            let mut values = vec![0.0; full + 1];
            for bits in 1..=full {
                let size = (bits as u64).count_ones() as f64;
                let mut score = rng.random::<f64>() * size / n as f64;
                if quantize {
                    score = (score * 10.0).round() / 10.0;
                }
                let below = (0..n)
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| values[bits & !(1 << i)])
                    .fold(0.0, f64::max);
                values[bits] = score.max(below);
            }
            values[full] = 1.0;
            CapacitySpec::Table(
                values
                    .into_iter()
                    .enumerate()
                    .map(|(bits, v)| (Subset(bits as u64), v))
                    .collect(),
            )
        }
        CapacityKind::Possibility => {
            let mut densities: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            densities[rng.random_range(0..n)] = 1.0;
            CapacitySpec::Possibility(densities)
        }
        CapacityKind::Additive => CapacitySpec::Additive(normalized(rng)),
        CapacityKind::SugenoLambda if n >= 2 => CapacitySpec::SugenoLambda {
            densities: (0..n).map(|_| 0.02 + 0.96 * rng.random::<f64>()).collect(),
            lambda: LambdaSpec::Auto,
        },
        CapacityKind::SugenoLambda => CapacitySpec::Additive(vec![1.0]),
        CapacityKind::Distorted => CapacitySpec::Distorted {
            weights: normalized(rng),
            distortion: Distortion::power(0.3 + 2.7 * rng.random::<f64>()).expect("positive"),
        },
    };
    Capacity::build(space, spec).expect("random capacities are valid by construction")
}

/// Random values in `[0,1]` with deliberate zeros, ones, ties and round values.
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace) -> FuzzyFunction {
    let mut values: Vec<f64> = Vec::with_capacity(space.size());
    for _ in 0..space.size() {
        let roll = rng.random::<f64>();
        let v = if roll < 0.12 {
            0.0
        } else if roll < 0.2 {
            1.0
        } else if roll < 0.35 && !values.is_empty() {
            values[rng.random_range(0..values.len())]
        } else if roll < 0.45 {
            rng.random_range(0..=10) as f64 / 10.0
        } else {
            rng.random::<f64>()
        };
        values.push(v);
    }
    FuzzyFunction::new(space, values).expect("values lie in [0, 1]")
}

/// Raises some coordinates of `f`, giving `g ≥ f` pointwise.
pub fn raise_function<R: Rng + ?Sized>(rng: &mut R, f: &FuzzyFunction) -> FuzzyFunction {
    let values = f
        .values()
        .iter()
        .map(|&v| {
            let roll = rng.random::<f64>();
            if roll < 0.1 {
                1.0
            } else if roll < 0.6 {
                v + rng.random::<f64>() * (1.0 - v)
            } else {
                v
            }
        })
        .collect();
    FuzzyFunction::new(f.space(), values).expect("raised values stay in [0, 1]")
}

/// A random space of a size drawn from `sizes`, a capacity of a random kind and a function.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, sizes: &[usize]) -> (Capacity, FuzzyFunction) {
    let n = sizes[rng.random_range(0..sizes.len())];
    let space = FiniteSpace::with_size(n).expect("size within limits");
    let kind = CapacityKind::ALL[rng.random_range(0..CapacityKind::ALL.len())];
    let capacity = random_capacity(rng, &space, kind);
    let f = random_function(rng, &space);
    (capacity, f)
}

fn comonotone_pair_from<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
) -> (FuzzyFunction, FuzzyFunction) {
    let n = space.size();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let sorted_values = |rng: &mut R| {
        let coarse = rng.random_bool(0.3);
        let mut vs: Vec<f64> = (0..n)
            .map(|_| {
                let v = rng.random::<f64>();
                if coarse {
                    (v * 5.0).round() / 5.0
                } else {
                    v
                }
            })
            .collect();
        vs.sort_by(f64::total_cmp);
        vs
    };
    let (fs, gs) = (sorted_values(rng), sorted_values(rng));
    let mut f = vec![0.0; n];
    let mut g = vec![0.0; n];
    for (rank, &point) in order.iter().enumerate() {
        f[point] = fs[rank];
        g[point] = gs[rank];
    }
    (
        FuzzyFunction::new(space, f).expect("in range"),
        FuzzyFunction::new(space, g).expect("in range"),
    )
}

/// Two comonotone functions: a random point ordering with two independently
/// drawn sorted value sequences laid along it. Deterministic per seed.
pub fn generate_comonotone_pair(space: &FiniteSpace, seed: u64) -> (FuzzyFunction, FuzzyFunction) {
    comonotone_pair_from(&mut trial_rng(seed, 0), space)
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

/// Threshold grid for [`brute_force_go`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    step: f64,
    include_breakpoints: bool,
}

impl GridSpec {
    pub fn new(step: f64, include_breakpoints: bool) -> Result<Self> {
        if !(step > 0.0 && step <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "grid step must lie in (0, 0.5], got {step}"
            )));
        }
        Ok(Self {
            step,
            include_breakpoints,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn include_breakpoints(&self) -> bool {
        self.include_breakpoints
    }

    fn points(&self, f: &FuzzyFunction) -> Vec<f64> {
        let count = (1.0 / self.step).floor() as usize;
        let mut ts: Vec<f64> = (0..=count)
            .map(|j| (j as f64 * self.step).min(1.0))
            .collect();
        ts.push(1.0);
        if self.include_breakpoints {
            ts.extend(f.values().iter().copied());
        }
        ts
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            step: 1e-4,
            include_breakpoints: true,
        }
    }
}

/// The GO-integral from its definition: `m(t) = O(ν(f_t), t)` is sampled on
/// the grid (level sets and capacities recomputed at every `t`) and the
/// functional is applied to the samples.
pub fn brute_force_go(
    capacity: &Capacity,
    f: &FuzzyFunction,
    overlap: &BinaryOperator,
    gpg: &GpgFunctional,
    grid: &GridSpec,
) -> Result<f64> {
    if capacity.space() != f.space() {
        return Err(Error::SpaceMismatch);
    }
    let m = |t: f64| overlap.eval(capacity.value(f.level_set(t)), t);
    let sample_max = || grid.points(f).into_iter().map(m).fold(0.0, f64::max);
    Ok(match gpg {
        GpgFunctional::Max => sample_max(),
        GpgFunctional::Distorted(h) => h.eval(sample_max()),
        GpgFunctional::Kernel(g) => grid
            .points(f)
            .into_iter()
            .map(|t| g.eval(t, m(t)))
            .fold(0.0, f64::max),
        GpgFunctional::BreakpointMean => {
            let ws = f.distinct_positive_values();
            if ws.is_empty() {
                0.0
            } else {
                ws.iter().map(|&w| m(w)).sum::<f64>() / ws.len() as f64
            }
        }
    })
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    /// `I(1_X) = 1`.
    UnitBoundary,
    /// `I(0_X) = 0`.
    ZeroBoundary,
    /// `f ≤ g ⇒ I(f) ≤ I(g)`; functions are `[f, g]`.
    Monotonicity,
    /// `I(f ∨ g) = I(f) ∨ I(g)` for comonotone `[f, g]`.
    ComonotoneMaxitivity,
    /// `I(c_X ∗ f) = c ∗ I(f)`.
    StarHomogeneity { star: BinaryOperator, c: f64 },
    /// Plateau capacities must not increase at segment `index`.
    UscPlateau { index: usize },
    /// `m(w_i) ≥ O(c_{i+1}, w_i)` at breakpoint `index`.
    UscBreakpoint { index: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Instance {
    Integral {
        capacity: Capacity,
        functions: Vec<Vec<f64>>,
    },
    Profile {
        profile: LevelProfile,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    #[serde(flatten)]
    pub check: Check,
    pub trial: Option<u64>,
    pub instance: Instance,
    pub left: f64,
    pub right: f64,
    pub gap: f64,
}

impl Violation {
    /// Recomputes the gap from the stored instance. Profile violations ignore `integral`.
    pub fn replay(&self, integral: &dyn Integral) -> Result<f64> {
        match &self.instance {
            Instance::Profile { profile } => Ok(usc_findings(profile)
                .into_iter()
                .find(|(check, ..)| *check == self.check)
                .map(|(_, _, _, gap)| gap)
                .unwrap_or(0.0)),
            Instance::Integral {
                capacity,
                functions,
            } => {
                let space = capacity.space();
                let func = |i: usize| FuzzyFunction::new(space, functions[i].clone());
                let (_, _, gap) = match &self.check {
                    Check::UnitBoundary | Check::ZeroBoundary => {
                        let expected = if self.check == Check::UnitBoundary {
                            1.0
                        } else {
                            0.0
                        };
                        boundary_gap(integral, capacity, &func(0)?, expected)?
                    }
                    Check::Monotonicity => {
                        monotonicity_gap(integral, capacity, &func(0)?, &func(1)?)?
                    }
                    Check::ComonotoneMaxitivity => {
                        maxitivity_gap(integral, capacity, &func(0)?, &func(1)?)?
                    }
                    Check::StarHomogeneity { star, c } => {
                        homogeneity_gap(integral, capacity, &func(0)?, star, *c)?
                    }
                    Check::UscPlateau { .. } | Check::UscBreakpoint { .. } => {
                        return Err(Error::Unsupported(
                            "profile checks need a profile instance".into(),
                        ))
                    }
                };
                Ok(gap)
            }
        }
    }
}

/// Outcome of a property run. Violations beyond [`MAX_RECORDED_VIOLATIONS`]
/// are counted but not stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub subject: String,
    pub trials: usize,
    pub seed: u64,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(property: &str, subject: String, trials: usize, seed: u64) -> Self {
        Self {
            property: property.to_string(),
            subject,
            trials,
            seed,
            violation_count: 0,
            violations: Vec::new(),
            outcome: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn absorb(&mut self, violations: impl IntoIterator<Item = Violation>) {
        for v in violations {
            self.violation_count += 1;
            if self.violations.len() < MAX_RECORDED_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// gap computations shared by the suites and by replay
// ---------------------------------------------------------------------------

fn boundary_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    expected: f64,
) -> Result<(f64, f64, f64)> {
    let value = integral.integrate(capacity, f)?;
    Ok((value, expected, (value - expected).abs()))
}

fn monotonicity_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    g: &FuzzyFunction,
) -> Result<(f64, f64, f64)> {
    let left = integral.integrate(capacity, f)?;
    let right = integral.integrate(capacity, g)?;
    Ok((left, right, left - right))
}

fn maxitivity_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    g: &FuzzyFunction,
) -> Result<(f64, f64, f64)> {
    if let Some((x, y)) = f.comonotone_violation(g) {
        return Err(Error::NotComonotone(x, y));
    }
    let left = integral.integrate(capacity, &f.join(g)?)?;
    let right = integral
        .integrate(capacity, f)?
        .max(integral.integrate(capacity, g)?);
    Ok((left, right, (left - right).abs()))
}

fn homogeneity_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    star: &BinaryOperator,
    c: f64,
) -> Result<(f64, f64, f64)> {
    let scaled = f.map(|v| star.eval(c, v))?;
    let left = integral.integrate(capacity, &scaled)?;
    let right = star.eval(c, integral.integrate(capacity, f)?);
    Ok((left, right, (left - right).abs()))
}

/// `|I(f ∨ g) − I(f) ∨ I(g)|` for an explicit pair; errors unless the pair is comonotone.
pub fn comonotone_maxitivity_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    g: &FuzzyFunction,
) -> Result<f64> {
    Ok(maxitivity_gap(integral, capacity, f, g)?.2)
}

/// `|I(c_X ∗ f) − c ∗ I(f)|` for an explicit instance.
pub fn star_homogeneity_gap(
    integral: &dyn Integral,
    capacity: &Capacity,
    f: &FuzzyFunction,
    star: &BinaryOperator,
    c: f64,
) -> Result<f64> {
    Ok(homogeneity_gap(integral, capacity, f, star, c)?.2)
}

fn integral_instance(capacity: &Capacity, functions: &[&FuzzyFunction]) -> Instance {
    Instance::Integral {
        capacity: capacity.clone(),
        functions: functions.iter().map(|f| f.values().to_vec()).collect(),
    }
}

fn run_trials<F>(trials: usize, body: F) -> Result<Vec<Violation>>
where
    F: Fn(u64) -> Result<Vec<Violation>> + Sync,
{
    let per_trial: Vec<Result<Vec<Violation>>> =
        (0..trials as u64).into_par_iter().map(&body).collect();
    let mut all = Vec::new();
    for r in per_trial {
        all.extend(r?);
    }
    Ok(all)
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

/// Boundary and monotonicity properties of an integral.
///
/// `I(1_X) = 1` and `I(0_X) = 0` are checked exactly on one capacity of every
/// kind and on the capacity of every trial; each trial also draws `f` and a
/// pointwise raised `g ≥ f` and checks `I(f) ≤ I(g)`.
pub fn run_theorem1_suite(
    integral: &dyn Integral,
    sizes: &[usize],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("no space sizes given".into()));
    }
    let mut report = PropertyReport::new("theorem1", integral.describe(), trials, seed);

    let boundary = |capacity: &Capacity, trial: Option<u64>| -> Result<Vec<Violation>> {
        let mut found = Vec::new();
        for (check, c) in [(Check::UnitBoundary, 1.0), (Check::ZeroBoundary, 0.0)] {
            let f = FuzzyFunction::constant(capacity.space(), c)?;
            let (left, right, gap) = boundary_gap(integral, capacity, &f, c)?;
            if gap != 0.0 {
                found.push(Violation {
                    check,
                    trial,
                    instance: integral_instance(capacity, &[&f]),
                    left,
                    right,
                    gap,
                });
            }
        }
        Ok(found)
    };

    let mut rng = trial_rng(seed, u64::MAX);
    for kind in CapacityKind::ALL {
        let n = sizes[rng.random_range(0..sizes.len())];
        let space = FiniteSpace::with_size(n)?;
        let capacity = random_capacity(&mut rng, &space, kind);
        report.absorb(boundary(&capacity, None)?);
    }

    // kernel grids differ between f and g, so approximate integrals get the approximation tolerance
    let slack = if integral.tolerance() > EXACT_TOLERANCE {
        integral.tolerance()
    } else {
        MONOTONICITY_SLACK
    };
    let violations = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let (capacity, f) = random_instance(&mut rng, sizes);
        let g = raise_function(&mut rng, &f);
        let mut found = boundary(&capacity, Some(trial))?;
        let (left, right, gap) = monotonicity_gap(integral, &capacity, &f, &g)?;
        if gap > slack {
            found.push(Violation {
                check: Check::Monotonicity,
                trial: Some(trial),
                instance: integral_instance(&capacity, &[&f, &g]),
                left,
                right,
                gap,
            });
        }
        Ok(found)
    })?;
    report.absorb(violations);
    report.notes.push(format!(
        "boundary checks on {} capacities; monotonicity slack {slack:e}",
        CapacityKind::ALL.len() + trials
    ));
    Ok(report)
}

/// `I(f ∨ g) = I(f) ∨ I(g)` on `trials` random comonotone pairs.
pub fn check_comonotone_maxitivity(
    integral: &dyn Integral,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let tolerance = integral.tolerance();
    let mut report =
        PropertyReport::new("comonotone_maxitivity", integral.describe(), trials, seed);
    let violations = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let n = DEFAULT_SIZES[rng.random_range(0..DEFAULT_SIZES.len())];
        let space = FiniteSpace::with_size(n)?;
        let kind = CapacityKind::ALL[rng.random_range(0..CapacityKind::ALL.len())];
        let capacity = random_capacity(&mut rng, &space, kind);
        let (f, g) = comonotone_pair_from(&mut rng, &space);
        let (left, right, gap) = maxitivity_gap(integral, &capacity, &f, &g)?;
        Ok(if gap > tolerance {
            vec![Violation {
                check: Check::ComonotoneMaxitivity,
                trial: Some(trial),
                instance: integral_instance(&capacity, &[&f, &g]),
                left,
                right,
                gap,
            }]
        } else {
            Vec::new()
        })
    })?;
    report.absorb(violations);
    report.notes.push(format!("tolerance {tolerance:e}"));
    Ok(report)
}

/// `I(c_X ∗ f) = c ∗ I(f)` for a t-normed integral, using its own t-norm
/// (min for the Sugeno integral).
pub fn check_star_homogeneity(
    config: &IntegralConfig,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    match config.kind() {
        IntegralKind::TNormed { t_norm } => {
            check_star_homogeneity_with(config, t_norm, trials, seed)
        }
        IntegralKind::Sugeno => {
            check_star_homogeneity_with(config, &BinaryOperator::Min, trials, seed)
        }
        other => Err(Error::Unsupported(format!(
            "∗-homogeneity applies to t-normed integrals, not `{}`; use the exploratory form",
            other.name()
        ))),
    }
}

/// Exploratory form of [`check_star_homogeneity`] for any integral and operator.
pub fn check_star_homogeneity_with(
    integral: &dyn Integral,
    star: &BinaryOperator,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let tolerance = integral.tolerance();
    let mut report = PropertyReport::new("star_homogeneity", integral.describe(), trials, seed);
    let violations = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let (capacity, f) = random_instance(&mut rng, &DEFAULT_SIZES);
        let roll = rng.random::<f64>();
        let c = if roll < 0.1 {
            0.0
        } else if roll < 0.2 {
            1.0
        } else {
            rng.random::<f64>()
        };
        let (left, right, gap) = homogeneity_gap(integral, &capacity, &f, star, c)?;
        Ok(if gap > tolerance {
            vec![Violation {
                check: Check::StarHomogeneity { star: *star, c },
                trial: Some(trial),
                instance: integral_instance(&capacity, &[&f]),
                left,
                right,
                gap,
            }]
        } else {
            Vec::new()
        })
    })?;
    report.absorb(violations);
    report
        .notes
        .push(format!("∗ = {star}; tolerance {tolerance:e}"));
    Ok(report)
}

pub const OUTCOME_COUNTEREXAMPLE: &str = "counterexample-found";
pub const OUTCOME_NONE_FOUND: &str = "no-counterexample-within-budget";

/// Searches for counterexamples to comonotone maxitivity and ∗-homogeneity of
/// the GO-integral `GO(overlap, gpg)`. The operators are not vetted, so broken
/// functionals can be probed. The outcome is either a witness or "nothing
/// found within budget"; it never asserts that a property holds.
pub fn search_problem1(
    overlap: &BinaryOperator,
    gpg: &GpgFunctional,
    star: &BinaryOperator,
    budget: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let integral = IntegralConfig::unchecked(IntegralKind::Go {
        overlap: *overlap,
        gpg: gpg.clone(),
    });
    let mut report = PropertyReport::new("problem1", integral.describe(), budget, seed);
    if budget > 0 {
        let maxitivity = check_comonotone_maxitivity(&integral, budget, seed)?;
        let homogeneity = check_star_homogeneity_with(&integral, star, budget, seed)?;
        report.notes.push(format!(
            "comonotone maxitivity: {} of {budget} trials violated",
            maxitivity.violation_count
        ));
        report.notes.push(format!(
            "{star}-homogeneity: {} of {budget} trials violated",
            homogeneity.violation_count
        ));
        report.absorb(maxitivity.violations);
        report.absorb(homogeneity.violations);
        report.violation_count = maxitivity.violation_count + homogeneity.violation_count;
    }
    report.outcome = Some(
        if report.violation_count > 0 {
            OUTCOME_COUNTEREXAMPLE
        } else {
            OUTCOME_NONE_FOUND
        }
        .to_string(),
    );
    report
        .notes
        .push("exploratory search: absence of a counterexample is not a proof".into());
    Ok(report)
}

fn usc_findings(m: &LevelProfile) -> Vec<(Check, f64, f64, f64)> {
    let segments = m.segments();
    let op = m.overlap();
    let mut found = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        let next = segments.get(i + 1).map_or(0.0, |n| n.capacity);
        if next > s.capacity {
            found.push((
                Check::UscPlateau { index: i },
                s.capacity,
                next,
                next - s.capacity,
            ));
        }
        let at = op.eval(s.capacity, s.breakpoint);
        let right_limit = op.eval(next, s.breakpoint);
        if right_limit > at {
            found.push((
                Check::UscBreakpoint { index: i },
                at,
                right_limit,
                right_limit - at,
            ));
        }
    }
    found
}

/// Upper-semicontinuity surrogate for a profile: plateau capacities are
/// nonincreasing and `m(w_i) ≥ O(c_{i+1}, w_i)` at every breakpoint, with
/// `c_{k+1} = 0`.
pub fn check_profile_usc(m: &LevelProfile) -> PropertyReport {
    let mut report = PropertyReport::new("usc", m.overlap().to_string(), 1, 0);
    report.absorb(
        usc_findings(m)
            .into_iter()
            .map(|(check, left, right, gap)| Violation {
                check,
                trial: None,
                instance: Instance::Profile { profile: m.clone() },
                left,
                right,
                gap,
            }),
    );
    report
}

/// Builds `trials` random profiles (random instance, operator drawn from
/// `overlaps`) and checks each with [`check_profile_usc`].
pub fn run_usc_suite(
    overlaps: &[BinaryOperator],
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    if overlaps.is_empty() {
        return Err(Error::InvalidParameter("no operators given".into()));
    }
    let subject = overlaps
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut report = PropertyReport::new("usc", subject, trials, seed);
    let violations = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let (capacity, f) = random_instance(&mut rng, &DEFAULT_SIZES);
        let op = overlaps[rng.random_range(0..overlaps.len())];
        let m = LevelProfile::build(&capacity, &f, op)?;
        Ok(check_profile_usc(&m)
            .violations
            .into_iter()
            .map(|v| Violation {
                trial: Some(trial),
                ..v
            })
            .collect())
    })?;
    report.absorb(violations);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouping::Segment;
    use crate::integrals::go_integral;

    #[test]
    fn trial_streams_are_independent_and_reproducible() {
        let a: f64 = trial_rng(7, 3).random();
        let b: f64 = trial_rng(7, 3).random();
        let c: f64 = trial_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_capacities_validate() {
        for trial in 0..200 {
            let mut rng = trial_rng(11, trial);
            let n = rng.random_range(1..=8);
            let space = FiniteSpace::with_size(n).unwrap();
            for kind in CapacityKind::ALL {
                let nu = random_capacity(&mut rng, &space, kind);
                let report = nu.validate();
                assert!(report.pass, "{kind:?} n={n}: {report:?}");
            }
        }
    }

    #[test]
    fn grid_spec_bounds() {
        assert!(GridSpec::new(0.0, true).is_err());
        assert!(GridSpec::new(0.6, true).is_err());
        assert!(GridSpec::new(0.5, false).is_ok());
        assert_eq!(GridSpec::default().step(), 1e-4);
    }

    #[test]
    fn brute_force_matches_on_fixture() {
        let space = FiniteSpace::new(["a", "b"]).unwrap();
        let nu = Capacity::build(&space, CapacitySpec::Possibility(vec![1.0, 0.5])).unwrap();
        let f = FuzzyFunction::new(&space, vec![0.3, 0.9]).unwrap();
        let grid = GridSpec::default();
        let oracle =
            brute_force_go(&nu, &f, &BinaryOperator::Min, &GpgFunctional::Max, &grid).unwrap();
        assert_eq!(oracle, 0.5);
        let zero = FuzzyFunction::constant(&space, 0.0).unwrap();
        assert_eq!(
            brute_force_go(&nu, &zero, &BinaryOperator::Min, &GpgFunctional::Max, &grid).unwrap(),
            0.0
        );
        // without breakpoints the coarse grid misses 0.9 but the plateau value 0.5 is still reached
        let coarse = GridSpec::new(0.25, false).unwrap();
        let v = brute_force_go(
            &nu,
            &f,
            &BinaryOperator::Product,
            &GpgFunctional::Max,
            &coarse,
        )
        .unwrap();
        let exact = go_integral(&nu, &f, &BinaryOperator::Product, &GpgFunctional::Max).unwrap();
        assert!(v <= exact);
    }

    #[test]
    fn comonotone_pairs() {
        let space = FiniteSpace::with_size(7).unwrap();
        for seed in 0..50 {
            let (f, g) = generate_comonotone_pair(&space, seed);
            assert_eq!(f.comonotone_violation(&g), None);
            assert_eq!(generate_comonotone_pair(&space, seed), (f, g));
        }
        let c = FuzzyFunction::constant(&space, 0.4).unwrap();
        let (f, _) = generate_comonotone_pair(&space, 1);
        assert_eq!(c.comonotone_violation(&f), None);
    }

    #[test]
    fn sugeno_maxitivity_hand_example() {
        let space = FiniteSpace::new(["a", "b"]).unwrap();
        let nu = Capacity::build(&space, CapacitySpec::Possibility(vec![0.3, 1.0])).unwrap();
        let f = FuzzyFunction::new(&space, vec![0.2, 0.4]).unwrap();
        let g = FuzzyFunction::new(&space, vec![0.5, 0.7]).unwrap();
        let sugeno = IntegralConfig::sugeno();
        assert_eq!(
            comonotone_maxitivity_gap(&sugeno, &nu, &f, &g).unwrap(),
            0.0
        );
        let h = FuzzyFunction::new(&space, vec![0.7, 0.5]).unwrap();
        assert_eq!(
            comonotone_maxitivity_gap(&sugeno, &nu, &f, &h),
            Err(Error::NotComonotone(0, 1))
        );
    }

    #[test]
    fn homogeneity_hand_example() {
        let space = FiniteSpace::new(["a", "b"]).unwrap();
        let nu = Capacity::build(&space, CapacitySpec::Possibility(vec![1.0, 0.5])).unwrap();
        let f = FuzzyFunction::new(&space, vec![0.3, 0.9]).unwrap();
        let product = IntegralConfig::t_normed(BinaryOperator::Product).unwrap();
        let scaled = f.map(|v| 0.5 * v).unwrap();
        let left = product.integrate(&nu, &scaled).unwrap();
        assert!((left - 0.225).abs() < 1e-12);
        let gap = star_homogeneity_gap(&product, &nu, &f, &BinaryOperator::Product, 0.5).unwrap();
        assert!(gap < 1e-12);
        assert_eq!(
            star_homogeneity_gap(&product, &nu, &f, &BinaryOperator::Product, 1.0).unwrap(),
            0.0
        );
        assert_eq!(
            star_homogeneity_gap(&product, &nu, &f, &BinaryOperator::Product, 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn homogeneity_rejects_non_t_normed_configs() {
        assert!(check_star_homogeneity(&IntegralConfig::choquet(), 10, 0).is_err());
        assert!(check_star_homogeneity(&IntegralConfig::sugeno(), 10, 0)
            .unwrap()
            .passed());
    }

    #[test]
    fn usc_check_on_forged_profile() {
        let forged = LevelProfile::from_segments(
            BinaryOperator::Min,
            vec![
                Segment {
                    breakpoint: 0.3,
                    capacity: 0.2,
                },
                Segment {
                    breakpoint: 0.6,
                    capacity: 0.9,
                },
            ],
        )
        .unwrap();
        let report = check_profile_usc(&forged);
        assert!(!report.passed());
        assert_eq!(report.violations[0].check, Check::UscPlateau { index: 0 });
        // min(0.9, 0.3) = 0.3 > min(0.2, 0.3) = 0.2
        assert_eq!(
            report.violations[1].check,
            Check::UscBreakpoint { index: 0 }
        );
        assert!((report.violations[1].gap - 0.1).abs() < 1e-15);
        let sugeno = IntegralConfig::sugeno();
        for v in &report.violations {
            assert_eq!(v.replay(&sugeno).unwrap(), v.gap);
        }
        assert!(check_profile_usc(&LevelProfile::empty(BinaryOperator::Min)).passed());
    }

    #[test]
    fn problem1_zero_budget() {
        let report = search_problem1(
            &BinaryOperator::Min,
            &GpgFunctional::Max,
            &BinaryOperator::Min,
            0,
            1,
        )
        .unwrap();
        assert_eq!(report.trials, 0);
        assert!(report.violations.is_empty());
        assert_eq!(report.outcome.as_deref(), Some(OUTCOME_NONE_FOUND));
    }

    #[test]
    fn zero_trials_checks_boundaries_only() {
        let config = IntegralConfig::go(BinaryOperator::Min, GpgFunctional::Max).unwrap();
        let report = run_theorem1_suite(&config, &DEFAULT_SIZES, 0, 3).unwrap();
        assert!(report.passed());
        assert_eq!(report.trials, 0);
    }
}
