//! Level profiles and pseudo-grouping functionals.
//!
//! For a capacity `ν`, a function `f` and a binary operator `O`, the level
//! profile is `m(t) = O(ν(f_t), t)` on `[0,1]`. With `w_1 < … < w_k` the
//! distinct positive values of `f` and `c_i = ν({f ≥ w_i})`, it is the step
//! function with rising ramps
//!
//! ```text
//!     m(0) = O(ν(X), 0)
//!     m(t) = O(c_i, t)   for t ∈ (w_{i−1}, w_i]   (w_0 = 0)
//!     m(t) = O(0, t)     for t > w_k
//! ```
//!
//! The half-open segments put each breakpoint into the segment it closes,
//! which is what makes `m` upper semicontinuous when `c` is nonincreasing.
//! A [`GpgFunctional`] maps such a profile to `[0,1]`; the GO-integral is
//! `G(m)`. Hypographs are never materialized.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::overlap_ops::{parse_descriptor, take_param, BinaryOperator, AXIOM_TOLERANCE};
use crate::report::AxiomReport;
use crate::space_measure::{Capacity, Distortion, FuzzyFunction};
use crate::verify::trial_rng;

/// Default number of kernel-supremum grid points per unit of `t`.
pub const DEFAULT_KERNEL_RESOLUTION: usize = 4096;

/// Largest number of segments drawn by [`random_profile`].
pub const RANDOM_PROFILE_MAX_SEGMENTS: usize = 6;

/// One plateau of a level profile: on `(w_{i−1}, w_i]` the level set has capacity `c_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub breakpoint: f64,
    pub capacity: f64,
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuple = serializer.serialize_tuple(2)?;
        tuple.serialize_element(&self.breakpoint)?;
        tuple.serialize_element(&self.capacity)?;
        tuple.end()
    }
}

/// Exact representation of `m(t) = O(ν(f_t), t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelProfile {
    overlap: BinaryOperator,
    segments: Vec<Segment>,
}

impl LevelProfile {
    /// Builds the profile of `f` under `capacity`, walking the distinct values
    /// of `f` from the top and growing the level set as it goes.
    pub fn build(capacity: &Capacity, f: &FuzzyFunction, overlap: BinaryOperator) -> Result<Self> {
        if capacity.space() != f.space() {
            return Err(Error::SpaceMismatch);
        }
        let values = f.values();
        let mut order: Vec<usize> = (0..values.len()).filter(|&i| values[i] > 0.0).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));

        let mut segments = Vec::new();
        let mut level = crate::space_measure::Subset::EMPTY;
        let mut i = 0;
        while i < order.len() {
            let w = values[order[i]];
            while i < order.len() && values[order[i]] == w {
                level = level.with(order[i]);
                i += 1;
            }
            segments.push(Segment {
                breakpoint: w,
                capacity: capacity.value(level),
            });
        }
        segments.reverse();
        Ok(Self { overlap, segments })
    }

    /// A profile from explicit segments. Breakpoints must be strictly
    /// increasing in `(0,1]` and capacities in `[0,1]`; capacities are not
    /// required to be nonincreasing, so malformed (non-u.s.c.) profiles can be
    /// forged for negative tests.
    pub fn from_segments(overlap: BinaryOperator, segments: Vec<Segment>) -> Result<Self> {
        let mut prev = 0.0;
        for (i, s) in segments.iter().enumerate() {
            if !(s.breakpoint > prev && s.breakpoint <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "segment {i}: breakpoint {} must exceed {prev} and be at most 1",
                    s.breakpoint
                )));
            }
            if !(0.0..=1.0).contains(&s.capacity) {
                return Err(Error::OutOfUnitInterval {
                    what: format!("segment {i} capacity"),
                    value: s.capacity,
                });
            }
            prev = s.breakpoint;
        }
        Ok(Self { overlap, segments })
    }

    pub fn empty(overlap: BinaryOperator) -> Self {
        Self {
            overlap,
            segments: Vec::new(),
        }
    }

    pub fn overlap(&self) -> BinaryOperator {
        self.overlap
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// The same plateaus under another operator.
    pub fn with_overlap(&self, overlap: BinaryOperator) -> Self {
        Self {
            overlap,
            segments: self.segments.clone(),
        }
    }

    /// `m(t)`. A breakpoint `t = w_i` belongs to segment `i`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.overlap.eval(1.0, 0.0);
        }
        let i = self.segments.partition_point(|s| s.breakpoint < t);
        match self.segments.get(i) {
            Some(s) => self.overlap.eval(s.capacity, t),
            None => self.overlap.eval(0.0, t),
        }
    }

    /// `O(c_i, w_i)` for every segment: the value at each breakpoint.
    pub fn breakpoint_values(&self) -> Vec<f64> {
        self.segments
            .iter()
            .map(|s| self.overlap.eval(s.capacity, s.breakpoint))
            .collect()
    }

    /// Closed intervals `[w_{i−1}, w_i]` with their plateau capacity, followed
    /// by the zero tail `[w_k, 1]` when `w_k < 1`.
    fn pieces(&self) -> Vec<(f64, f64, f64)> {
        let mut pieces = Vec::with_capacity(self.segments.len() + 1);
        let mut left = 0.0;
        for s in &self.segments {
            pieces.push((left, s.breakpoint, s.capacity));
            left = s.breakpoint;
        }
        if left < 1.0 {
            pieces.push((left, 1.0, 0.0));
        }
        pieces
    }
}

/// Free-function form of [`LevelProfile::build`].
pub fn build_level_profile(
    capacity: &Capacity,
    f: &FuzzyFunction,
    overlap: BinaryOperator,
) -> Result<LevelProfile> {
    LevelProfile::build(capacity, f, overlap)
}

/// Free-function form of [`LevelProfile::eval`].
pub fn eval_profile(m: &LevelProfile, t: f64) -> f64 {
    m.eval(t)
}

/// A kernel `g(t, a)` for the sup-kernel functional `sup_t g(t, m(t))`.
/// Admissible kernels are continuous, nondecreasing in `a`, with `g(t,0)=0`
/// and `g(t,1)=1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `g(t, a) = a^(1 + βt)`, `β ≥ 0`.
    Tilt { beta: f64 },
    /// `g(t, a) = h(a)`, independent of `t`; coincides with `Distorted(h)`.
    Constant(Distortion),
}

impl Kernel {
    pub fn tilt(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta >= 0.0 {
            Ok(Kernel::Tilt { beta })
        } else {
            Err(Error::InvalidParameter(format!(
                "tilt β must be finite and nonnegative, got {beta}"
            )))
        }
    }

    #[inline]
    pub fn eval(&self, t: f64, a: f64) -> f64 {
        match self {
            Kernel::Tilt { beta } => a.powf(1.0 + beta * t),
            Kernel::Constant(h) => h.eval(a),
        }
    }
}

/// A pseudo-grouping functional on level profiles.
#[derive(Debug, Clone, PartialEq)]
pub enum GpgFunctional {
    /// `max_t m(t)`.
    Max,
    /// `h(max_t m(t))`.
    Distorted(Distortion),
    /// `sup_t g(t, m(t))`, evaluated on a per-segment grid.
    Kernel(Kernel),
    /// Mean of the breakpoint values `O(c_i, w_i)`. Negative control: it
    /// misses the unit condition and is not monotone.
    BreakpointMean,
}

/// Value of a functional together with the kernel grid it used, if any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GpgOutcome {
    pub value: f64,
    pub grid_resolution: Option<usize>,
}

impl GpgFunctional {
    pub fn distorted_power(p: f64) -> Result<Self> {
        Ok(GpgFunctional::Distorted(Distortion::power(p)?))
    }

    pub fn tilt(beta: f64) -> Result<Self> {
        Ok(GpgFunctional::Kernel(Kernel::tilt(beta)?))
    }

    /// The builtin conforming functionals used by the property suites.
    pub fn builtins() -> Vec<GpgFunctional> {
        vec![
            GpgFunctional::Max,
            GpgFunctional::distorted_power(2.0).expect("valid"),
            GpgFunctional::distorted_power(0.5).expect("valid"),
            GpgFunctional::tilt(1.0).expect("valid"),
        ]
    }

    /// Whether the functional satisfies the unit, zero and monotonicity conditions by construction.
    pub fn is_conforming(&self) -> bool {
        !matches!(self, GpgFunctional::BreakpointMean)
    }

    pub fn apply(&self, m: &LevelProfile) -> f64 {
        self.evaluate(m, DEFAULT_KERNEL_RESOLUTION).value
    }

    /// Evaluates the functional. `resolution` is the kernel grid density per
    /// unit of `t`; the other variants are exact and ignore it.
    ///
    /// On each segment `m` is nondecreasing (the operator is), so `max m`
    /// sits at a breakpoint and the `Max` variant is exact. The kernel
    /// supremum is taken on `⌈N·(w_i − w_{i−1})⌉ + 2` evenly spaced points
    /// of every closed segment, endpoints included.
    pub fn evaluate(&self, m: &LevelProfile, resolution: usize) -> GpgOutcome {
        let exact = |value| GpgOutcome {
            value,
            grid_resolution: None,
        };
        match self {
            GpgFunctional::Max => exact(profile_max(m)),
            GpgFunctional::Distorted(h) => exact(h.eval(profile_max(m))),
            GpgFunctional::BreakpointMean => {
                let values = m.breakpoint_values();
                if values.is_empty() {
                    exact(0.0)
                } else {
                    exact(values.iter().sum::<f64>() / values.len() as f64)
                }
            }
            GpgFunctional::Kernel(g) => {
                let resolution = resolution.max(1);
                let op = m.overlap();
                let mut best = g.eval(0.0, m.eval(0.0));
                for (left, right, c) in m.pieces() {
                    let count = (resolution as f64 * (right - left)).ceil() as usize + 2;
                    for j in 0..count {
                        let t = if j == 0 {
                            left
                        } else if j == count - 1 {
                            right
                        } else {
                            left + (right - left) * j as f64 / (count - 1) as f64
                        };
                        best = best.max(g.eval(t, op.eval(c, t)));
                    }
                }
                GpgOutcome {
                    value: best,
                    grid_resolution: Some(resolution),
                }
            }
        }
    }
}

fn profile_max(m: &LevelProfile) -> f64 {
    m.breakpoint_values().into_iter().fold(0.0, f64::max)
}

/// Free-function form of [`GpgFunctional::apply`].
pub fn apply_gpg(g: &GpgFunctional, m: &LevelProfile) -> f64 {
    g.apply(m)
}

impl fmt::Display for GpgFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GpgFunctional::Max => f.write_str("max"),
            GpgFunctional::Distorted(Distortion::Power { p }) => {
                write!(f, "distorted:p={}", p.get())
            }
            GpgFunctional::Distorted(Distortion::PiecewiseLinear { knots }) => {
                write!(f, "distorted:piecewise{knots:?}")
            }
            GpgFunctional::Kernel(Kernel::Tilt { beta }) => write!(f, "kernel:beta={beta}"),
            GpgFunctional::Kernel(Kernel::Constant(Distortion::Power { p })) => {
                write!(f, "kernel_constant:p={}", p.get())
            }
            GpgFunctional::Kernel(Kernel::Constant(Distortion::PiecewiseLinear { knots })) => {
                write!(f, "kernel_constant:piecewise{knots:?}")
            }
            GpgFunctional::BreakpointMean => f.write_str("breakpoint_mean"),
        }
    }
}

impl Serialize for GpgFunctional {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for GpgFunctional {
    type Err = Error;

    /// `max`, `distorted:p=2`, `kernel:beta=1`, `kernel_constant:p=2`, `breakpoint_mean`.
    fn from_str(text: &str) -> Result<Self> {
        let (name, params) = parse_descriptor(text)?;
        match name.as_str() {
            "max" => Ok(GpgFunctional::Max),
            "distorted" => Self::distorted_power(take_param(&params, "p", "distorted")?),
            "kernel" | "tilt" => Self::tilt(take_param(&params, "beta", "kernel")?),
            "kernel_constant" => Ok(GpgFunctional::Kernel(Kernel::Constant(Distortion::power(
                take_param(&params, "p", "kernel_constant")?,
            )?))),
            "breakpoint_mean" => Ok(GpgFunctional::BreakpointMean),
            _ => Err(Error::UnknownName {
                what: "grouping functional",
                name,
            }),
        }
    }
}

/// n-ary general pseudo-grouping functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscreteGpg {
    MaxN,
    /// Probabilistic sum `1 − ∏(1 − x_i)`.
    ProbSum,
    /// Arithmetic mean. Negative control: misses the unit condition.
    MeanN,
}

impl DiscreteGpg {
    /// Applies the function; the empty tuple maps to 0.
    pub fn apply(&self, xs: &[f64]) -> f64 {
        if xs.is_empty() {
            return 0.0;
        }
        match self {
            DiscreteGpg::MaxN => xs.iter().copied().fold(0.0, f64::max),
            DiscreteGpg::ProbSum => 1.0 - xs.iter().map(|x| 1.0 - x).product::<f64>(),
            DiscreteGpg::MeanN => xs.iter().sum::<f64>() / xs.len() as f64,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DiscreteGpg::MaxN => "max_n",
            DiscreteGpg::ProbSum => "prob_sum",
            DiscreteGpg::MeanN => "mean_n",
        }
    }
}

impl fmt::Display for DiscreteGpg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for DiscreteGpg {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for DiscreteGpg {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, _) = parse_descriptor(text)?;
        match name.as_str() {
            "max_n" | "max" => Ok(DiscreteGpg::MaxN),
            "prob_sum" | "probabilistic_sum" => Ok(DiscreteGpg::ProbSum),
            "mean_n" | "mean" => Ok(DiscreteGpg::MeanN),
            _ => Err(Error::UnknownName {
                what: "discrete grouping function",
                name,
            }),
        }
    }
}

/// Arities above this are sampled instead of enumerated.
pub const EXHAUSTIVE_ARITY: usize = 4;
/// Random tuples drawn for sampled arities.
pub const SAMPLED_TUPLES: usize = 100_000;
const SAMPLED_TUPLE_SEED: u64 = 0x6770_6701;

fn exhaustive_grid_cap(arity: usize) -> usize {
    match arity {
        1 => usize::MAX,
        2 => 1000,
        3 => 100,
        _ => 30,
    }
}

/// Checks the n-ary pseudo-grouping conditions: `G(0,…,0) = 0`, `G = 1`
/// whenever a coordinate is 1, and coordinatewise monotonicity.
///
/// Arities up to [`EXHAUSTIVE_ARITY`] enumerate the full `(grid_n+1)^n` grid
/// (first coordinate varying fastest), with the grid coarsened for `n ≥ 2` to
/// keep the enumeration bounded; the resolution used is reported. Larger
/// arities draw [`SAMPLED_TUPLES`] seeded random tuples.
pub fn check_gpg_discrete(g: &DiscreteGpg, arity: usize, grid_n: usize) -> Result<AxiomReport> {
    if arity == 0 {
        return Err(Error::InvalidParameter("arity must be at least 1".into()));
    }
    if grid_n == 0 {
        return Err(Error::InvalidParameter(
            "grid resolution must be positive".into(),
        ));
    }

    let zero = vec![0.0; arity];
    let at_zero = g.apply(&zero);

    if arity <= EXHAUSTIVE_ARITY {
        let effective = grid_n.min(exhaustive_grid_cap(arity));
        let mut report = AxiomReport::new("gpg-discrete", format!("{g}/{arity}"), Some(effective));
        if effective < grid_n {
            report.notes.push(format!(
                "grid coarsened from {grid_n} to {effective} for arity {arity}"
            ));
        }
        if at_zero.abs() > AXIOM_TOLERANCE {
            report.violation("zero", &zero, &[at_zero]);
        }
        let point = |i: usize| i as f64 / effective as f64;
        let mut idx = vec![0usize; arity];
        let mut xs = vec![0.0; arity];
        loop {
            for (x, &i) in xs.iter_mut().zip(&idx) {
                *x = point(i);
            }
            check_tuple(g, &mut xs, &idx, effective, &mut report);
            // odometer, first coordinate fastest
            let mut k = 0;
            while k < arity {
                idx[k] += 1;
                if idx[k] <= effective {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == arity {
                break;
            }
        }
        Ok(report)
    } else {
        let mut report = AxiomReport::new("gpg-discrete", format!("{g}/{arity}"), None);
        report.notes.push(format!(
            "arity {arity}: {SAMPLED_TUPLES} seeded random tuples instead of a full grid"
        ));
        if at_zero.abs() > AXIOM_TOLERANCE {
            report.violation("zero", &zero, &[at_zero]);
        }
        let mut rng = trial_rng(SAMPLED_TUPLE_SEED, 0);
        let mut xs = vec![0.0; arity];
        for _ in 0..SAMPLED_TUPLES {
            for x in xs.iter_mut() {
                *x = rng.random::<f64>();
            }
            let k = rng.random_range(0..arity);
            let base = g.apply(&xs);
            let old = xs[k];
            xs[k] = old + rng.random::<f64>() * (1.0 - old);
            let raised = g.apply(&xs);
            if base > raised + AXIOM_TOLERANCE {
                let mut before = xs.clone();
                before[k] = old;
                report.violation(
                    "monotonicity",
                    &[before, xs.clone()].concat(),
                    &[base, raised],
                );
            }
            xs[k] = 1.0;
            let top = g.apply(&xs);
            if (top - 1.0).abs() > AXIOM_TOLERANCE {
                report.violation("one", &xs, &[top]);
            }
        }
        Ok(report)
    }
}

fn check_tuple(
    g: &DiscreteGpg,
    xs: &mut [f64],
    idx: &[usize],
    grid: usize,
    report: &mut AxiomReport,
) {
    let v = g.apply(xs);
    if !(0.0..=1.0).contains(&v) {
        report.violation("range", xs, &[v]);
    }
    if idx.contains(&grid) && (v - 1.0).abs() > AXIOM_TOLERANCE {
        report.violation("one", xs, &[v]);
    }
    for k in 0..xs.len() {
        if idx[k] == grid {
            continue;
        }
        let old = xs[k];
        xs[k] = (idx[k] + 1) as f64 / grid as f64;
        let raised = g.apply(xs);
        if v > raised + AXIOM_TOLERANCE {
            let mut before = xs.to_vec();
            before[k] = old;
            report.violation(
                "monotonicity",
                &[before, xs.to_vec()].concat(),
                &[v, raised],
            );
        }
        xs[k] = old;
    }
}

/// Draws a random well-formed profile: `k` uniform in `1..=6`, sorted uniform
/// breakpoints, capacities as descending-sorted uniforms.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, overlap: BinaryOperator) -> LevelProfile {
    let k = rng.random_range(1..=RANDOM_PROFILE_MAX_SEGMENTS);
    let mut breakpoints: Vec<f64> = (0..k).map(|_| 1.0 - rng.random::<f64>()).collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();
    let mut capacities: Vec<f64> = (0..breakpoints.len())
        .map(|_| rng.random::<f64>())
        .collect();
    capacities.sort_by(|a, b| b.total_cmp(a));
    let segments = breakpoints
        .into_iter()
        .zip(capacities)
        .map(|(breakpoint, capacity)| Segment {
            breakpoint,
            capacity,
        })
        .collect();
    LevelProfile { overlap, segments }
}

/// Raises every plateau of `m` (and re-establishes nonincreasing order), so
/// the result dominates `m` pointwise.
pub fn raise_profile<R: Rng + ?Sized>(rng: &mut R, m: &LevelProfile) -> LevelProfile {
    let mut segments = m.segments.clone();
    for s in segments.iter_mut() {
        s.capacity += rng.random::<f64>() * (1.0 - s.capacity);
    }
    for i in (0..segments.len().saturating_sub(1)).rev() {
        segments[i].capacity = segments[i].capacity.max(segments[i + 1].capacity);
    }
    LevelProfile {
        overlap: m.overlap,
        segments,
    }
}

/// Checks the functional conditions on random profiles: the zero profile maps
/// to 0; `trials` profiles reaching `m(1) = 1` map to 1; `trials` ordered
/// pairs `m ≤ m′` map to ordered values. Each trial draws its operator from
/// the builtin t-overlap functions. Continuity is not checked.
pub fn check_gpg_functional(g: &GpgFunctional, trials: usize, seed: u64) -> AxiomReport {
    let mut report = AxiomReport::new("gpg-functional", g.to_string(), None);
    report
        .notes
        .push(format!("trials = {trials}, seed = {seed}"));
    report
        .notes
        .push("continuity on hypographs is not checked".into());

    let empty = LevelProfile::empty(BinaryOperator::Min);
    let at_zero = g.apply(&empty);
    if at_zero.abs() > AXIOM_TOLERANCE {
        report.violation_with_profiles("zero", &[], &[at_zero], vec![empty.clone()]);
    }

    let overlaps = BinaryOperator::builtin_t_overlaps();
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed, trial);
        let op = overlaps[rng.random_range(0..overlaps.len())];

        let mut top = random_profile(&mut rng, op);
        for s in top.segments.iter_mut() {
            s.capacity = 1.0;
        }
        top.segments.last_mut().expect("k ≥ 1").breakpoint = 1.0;
        let v = g.apply(&top);
        if (v - 1.0).abs() > AXIOM_TOLERANCE {
            report.violation_with_profiles("one", &[], &[v], vec![top.clone()]);
        }

        let low = random_profile(&mut rng, op);
        let high = raise_profile(&mut rng, &low);
        let (a, b) = (g.apply(&low), g.apply(&high));
        if a > b + AXIOM_TOLERANCE {
            report.violation_with_profiles(
                "monotonicity",
                &[],
                &[a, b],
                vec![low.clone(), high.clone()],
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_measure::{CapacitySpec, FiniteSpace};

    fn fixture() -> (Capacity, FuzzyFunction) {
        let space = FiniteSpace::new(["a", "b"]).unwrap();
        let nu = Capacity::build(&space, CapacitySpec::Possibility(vec![1.0, 0.5])).unwrap();
        let f = FuzzyFunction::new(&space, vec![0.3, 0.9]).unwrap();
        (nu, f)
    }

    fn seg(breakpoint: f64, capacity: f64) -> Segment {
        Segment {
            breakpoint,
            capacity,
        }
    }

    #[test]
    fn profile_of_the_possibility_fixture() {
        let (nu, f) = fixture();
        let m = LevelProfile::build(&nu, &f, BinaryOperator::Min).unwrap();
        assert_eq!(m.segments(), &[seg(0.3, 1.0), seg(0.9, 0.5)]);
        assert_eq!(m.eval(0.3), 0.3);
        assert_eq!(m.eval(0.0), 0.0);
        assert_eq!(m.eval(0.95), 0.0);
        assert_eq!(m.eval(0.9), 0.5);
        assert_eq!(m.eval(0.6), 0.5);
        assert_eq!(m.eval(0.2), 0.2);
    }

    #[test]
    fn constant_profiles() {
        let (nu, _) = fixture();
        let zero = FuzzyFunction::constant(nu.space(), 0.0).unwrap();
        let m = LevelProfile::build(&nu, &zero, BinaryOperator::Min).unwrap();
        assert!(m.is_empty());
        assert_eq!(m.eval(0.5), 0.0);
        let one = FuzzyFunction::constant(nu.space(), 1.0).unwrap();
        let m = LevelProfile::build(&nu, &one, BinaryOperator::Min).unwrap();
        assert_eq!(m.segments(), &[seg(1.0, 1.0)]);
    }

    #[test]
    fn duplicate_values_collapse() {
        let space = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let nu = Capacity::build(&space, CapacitySpec::Additive(vec![0.2, 0.3, 0.5])).unwrap();
        let f = FuzzyFunction::new(&space, vec![0.4, 0.4, 0.8]).unwrap();
        let m = LevelProfile::build(&nu, &f, BinaryOperator::Product).unwrap();
        assert_eq!(m.segments(), &[seg(0.4, 1.0), seg(0.8, 0.5)]);
    }

    #[test]
    fn space_mismatch() {
        let (nu, _) = fixture();
        let other = FiniteSpace::new(["a", "c"]).unwrap();
        let f = FuzzyFunction::new(&other, vec![0.3, 0.9]).unwrap();
        assert_eq!(
            LevelProfile::build(&nu, &f, BinaryOperator::Min),
            Err(Error::SpaceMismatch)
        );
    }

    #[test]
    fn functional_values_on_fixture() {
        let (nu, f) = fixture();
        let m = LevelProfile::build(&nu, &f, BinaryOperator::Min).unwrap();
        assert_eq!(GpgFunctional::Max.apply(&m), 0.5);
        assert_eq!(
            GpgFunctional::Max.apply(&LevelProfile::empty(BinaryOperator::Min)),
            0.0
        );
        assert_eq!(GpgFunctional::distorted_power(2.0).unwrap().apply(&m), 0.25);
        assert_eq!(GpgFunctional::BreakpointMean.apply(&m), 0.4);
        let tilt0 = GpgFunctional::tilt(0.0).unwrap().evaluate(&m, 4096);
        assert_eq!(tilt0.value, 0.5);
        assert_eq!(tilt0.grid_resolution, Some(4096));
        // Tilt β = 1: t ↦ min(c_i, t)^(1+t) peaks at t = 0.5 with 0.5^1.5; the
        // grid on (0.3, 0.9] has spacing 0.6/2459 and misses the peak slightly
        let tilt1 = GpgFunctional::tilt(1.0).unwrap().apply(&m);
        assert!(tilt1 <= 0.5f64.powf(1.5));
        assert!(0.5f64.powf(1.5) - tilt1 < 1e-4, "{tilt1}");
    }

    #[test]
    fn forged_profiles() {
        assert!(LevelProfile::from_segments(
            BinaryOperator::Min,
            vec![seg(0.5, 0.2), seg(0.4, 0.1)]
        )
        .is_err());
        assert!(LevelProfile::from_segments(BinaryOperator::Min, vec![seg(0.0, 0.2)]).is_err());
        assert!(LevelProfile::from_segments(BinaryOperator::Min, vec![seg(0.5, 1.2)]).is_err());
        let forged =
            LevelProfile::from_segments(BinaryOperator::Min, vec![seg(0.3, 0.2), seg(0.6, 0.9)])
                .unwrap();
        assert_eq!(forged.eval(0.6), 0.6);
    }

    #[test]
    fn parse_functionals() {
        for text in [
            "max",
            "distorted:p=2",
            "kernel:beta=1",
            "kernel_constant:p=0.5",
            "breakpoint_mean",
        ] {
            let g: GpgFunctional = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        assert!("kernel:beta=-1".parse::<GpgFunctional>().is_err());
        assert!("median".parse::<GpgFunctional>().is_err());
    }

    #[test]
    fn discrete_gpg_examples() {
        assert!(check_gpg_discrete(&DiscreteGpg::MaxN, 3, 100).unwrap().pass);
        assert!(
            check_gpg_discrete(&DiscreteGpg::ProbSum, 2, 50)
                .unwrap()
                .pass
        );
        let report = check_gpg_discrete(&DiscreteGpg::MeanN, 2, 100).unwrap();
        assert!(!report.pass);
        let cx = report.counterexample("one").unwrap();
        assert_eq!(cx.inputs, vec![1.0, 0.0]);
        assert_eq!(cx.observed, vec![0.5]);
        assert!(report.counterexample("monotonicity").is_none());
    }

    #[test]
    fn discrete_gpg_sampled_arity() {
        let report = check_gpg_discrete(&DiscreteGpg::ProbSum, 6, 10).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.grid_resolution, None);
        assert!(!check_gpg_discrete(&DiscreteGpg::MeanN, 6, 10).unwrap().pass);
        assert!(check_gpg_discrete(&DiscreteGpg::MaxN, 0, 10).is_err());
    }

    #[test]
    fn functional_checks() {
        assert!(check_gpg_functional(&GpgFunctional::Max, 500, 1).pass);
        assert!(check_gpg_functional(&GpgFunctional::tilt(1.0).unwrap(), 500, 1).pass);
        let only_zero = check_gpg_functional(&GpgFunctional::Max, 0, 1);
        assert!(only_zero.pass);
        let broken = check_gpg_functional(&GpgFunctional::BreakpointMean, 200, 1);
        assert!(!broken.pass);
        let cx = broken.counterexample("one").unwrap();
        assert_eq!(
            GpgFunctional::BreakpointMean.apply(&cx.profiles[0]),
            cx.observed[0]
        );
        assert!(cx.observed[0] < 1.0);
    }

    #[test]
    fn raised_profiles_dominate() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..200 {
            let m = random_profile(&mut rng, BinaryOperator::Product);
            let r = raise_profile(&mut rng, &m);
            for s in m.segments().windows(2) {
                assert!(s[0].capacity >= s[1].capacity);
            }
            for s in r.segments().windows(2) {
                assert!(s[0].capacity >= s[1].capacity);
            }
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                assert!(m.eval(t) <= r.eval(t));
            }
        }
    }
}
