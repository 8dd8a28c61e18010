//! Sugeno, t-normed, Choquet and GO integrals on finite spaces.
//!
//! All exact paths go through the level profile of `f`: with breakpoints
//! `w_1 < … < w_k` (the distinct positive values of `f`) and plateau
//! capacities `c_i = ν({f ≥ w_i})`,
//!
//! - Sugeno:    `max_i min(c_i, w_i)`
//! - t-normed:  `max_i c_i ∗ w_i`
//! - GO:        `G(m)` with `m(t) = O(ν(f_t), t)`; for `G = max` this is `max_i O(c_i, w_i)`
//! - Choquet:   `Σ_i (w_i − w_{i−1}) c_i`
//!
//! Since `O` and `∗` are nondecreasing, the supremum over each segment is
//! attained at its right endpoint, so no threshold grid is needed. The
//! `t = 0` term is `O(ν(X), 0) = 0` and is never evaluated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouping::{
    DiscreteGpg, GpgFunctional, LevelProfile, Segment, DEFAULT_KERNEL_RESOLUTION,
};
use crate::overlap_ops::{check_t_norm, check_t_overlap, BinaryOperator, DEFAULT_AXIOM_GRID};
use crate::space_measure::{Capacity, FuzzyFunction};

fn plateaus(capacity: &Capacity, f: &FuzzyFunction) -> Result<Vec<Segment>> {
    // the operator is irrelevant for the plateaus themselves
    Ok(LevelProfile::build(capacity, f, BinaryOperator::Min)?
        .segments()
        .to_vec())
}

pub fn sugeno_integral(capacity: &Capacity, f: &FuzzyFunction) -> Result<f64> {
    Ok(plateaus(capacity, f)?
        .iter()
        .map(|s| s.capacity.min(s.breakpoint))
        .fold(0.0, f64::max))
}

/// `max_t ν(f_t) ∗ t`. `star` must be a certified continuous t-norm.
pub fn t_normed_integral(
    capacity: &Capacity,
    f: &FuzzyFunction,
    star: &BinaryOperator,
) -> Result<f64> {
    if !star.is_certified_t_norm() {
        return Err(Error::InadmissibleOperator {
            operator: star.to_string(),
            role: "t-norm",
            reason: "not a continuous t-norm family".into(),
        });
    }
    t_normed_unchecked(capacity, f, star)
}

fn t_normed_unchecked(
    capacity: &Capacity,
    f: &FuzzyFunction,
    star: &BinaryOperator,
) -> Result<f64> {
    Ok(plateaus(capacity, f)?
        .iter()
        .map(|s| star.eval(s.capacity, s.breakpoint))
        .fold(0.0, f64::max))
}

/// `G(m)` with `m(t) = O(ν(f_t), t)`. `overlap` must be a certified t-overlap function.
pub fn go_integral(
    capacity: &Capacity,
    f: &FuzzyFunction,
    overlap: &BinaryOperator,
    gpg: &GpgFunctional,
) -> Result<f64> {
    if !overlap.is_certified_t_overlap() {
        return Err(Error::InadmissibleOperator {
            operator: overlap.to_string(),
            role: "t-overlap function",
            reason: "not a t-overlap family".into(),
        });
    }
    Ok(gpg.apply(&LevelProfile::build(capacity, f, *overlap)?))
}

/// The sorted-values formula `Σ_i (w_i − w_{i−1}) · ν({f ≥ w_i})`, `w_0 = 0`.
pub fn choquet_integral(capacity: &Capacity, f: &FuzzyFunction) -> Result<f64> {
    let mut previous = 0.0;
    let mut total = 0.0;
    for s in plateaus(capacity, f)? {
        total += (s.breakpoint - previous) * s.capacity;
        previous = s.breakpoint;
    }
    Ok(total)
}

/// Applies an n-ary grouping function to the breakpoint vector
/// `(O(c_1, w_1), …, O(c_k, w_k))`. The arity follows the number of distinct
/// positive values of `f`; `f ≡ 0` gives 0. With `MaxN` this coincides with
/// the GO-integral for `G = max`.
pub fn discrete_go_aggregate(
    capacity: &Capacity,
    f: &FuzzyFunction,
    overlap: &BinaryOperator,
    grouping: &DiscreteGpg,
) -> Result<f64> {
    let m = LevelProfile::build(capacity, f, *overlap)?;
    Ok(grouping.apply(&m.breakpoint_values()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegralKind {
    Sugeno,
    TNormed {
        t_norm: BinaryOperator,
    },
    Choquet,
    Go {
        overlap: BinaryOperator,
        gpg: GpgFunctional,
    },
}

impl IntegralKind {
    pub fn name(&self) -> &'static str {
        match self {
            IntegralKind::Sugeno => "sugeno",
            IntegralKind::TNormed { .. } => "t_normed",
            IntegralKind::Choquet => "choquet",
            IntegralKind::Go { .. } => "go",
        }
    }

    /// Operator descriptors, e.g. `product` or `min;max`; empty for Sugeno and Choquet.
    pub fn operators(&self) -> String {
        match self {
            IntegralKind::Sugeno | IntegralKind::Choquet => String::new(),
            IntegralKind::TNormed { t_norm } => t_norm.to_string(),
            IntegralKind::Go { overlap, gpg } => format!("{overlap};{gpg}"),
        }
    }
}

/// Result of evaluating a configured integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub kind: &'static str,
    pub profile: Vec<Segment>,
    pub grid_resolution: Option<usize>,
}

/// Anything that maps (capacity, function) to a number; the property suites
/// in [`crate::verify`] are written against this.
pub trait Integral: Sync {
    fn integrate(&self, capacity: &Capacity, f: &FuzzyFunction) -> Result<f64>;
    fn describe(&self) -> String;

    /// Tolerance for identities checked against this integral.
    fn tolerance(&self) -> f64 {
        crate::verify::EXACT_TOLERANCE
    }
}

/// An integral kind whose operators have been checked once.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralConfig {
    kind: IntegralKind,
    kernel_resolution: usize,
    checked: bool,
}

impl IntegralConfig {
    /// Checks operator admissibility on the default axiom grid: the t-normed
    /// operator must pass [`check_t_norm`], the GO operator must pass
    /// [`check_t_overlap`] and the GO functional must be a conforming variant.
    pub fn new(kind: IntegralKind) -> Result<Self> {
        match &kind {
            IntegralKind::TNormed { t_norm } => {
                let report = check_t_norm(t_norm, DEFAULT_AXIOM_GRID)?;
                if !report.pass {
                    return Err(inadmissible(t_norm, "t-norm", &report));
                }
            }
            IntegralKind::Go { overlap, gpg } => {
                let report = check_t_overlap(overlap, DEFAULT_AXIOM_GRID)?;
                if !report.pass {
                    return Err(inadmissible(overlap, "t-overlap function", &report));
                }
                if !gpg.is_conforming() {
                    return Err(Error::InadmissibleOperator {
                        operator: gpg.to_string(),
                        role: "pseudo-grouping functional",
                        reason: "negative-control variant".into(),
                    });
                }
            }
            IntegralKind::Sugeno | IntegralKind::Choquet => {}
        }
        Ok(Self {
            kind,
            kernel_resolution: DEFAULT_KERNEL_RESOLUTION,
            checked: true,
        })
    }

    /// Skips the admissibility checks. For exploratory runs and negative controls.
    pub fn unchecked(kind: IntegralKind) -> Self {
        Self {
            kind,
            kernel_resolution: DEFAULT_KERNEL_RESOLUTION,
            checked: false,
        }
    }

    pub fn sugeno() -> Self {
        Self::new(IntegralKind::Sugeno).expect("no operators to check")
    }

    pub fn choquet() -> Self {
        Self::new(IntegralKind::Choquet).expect("no operators to check")
    }

    pub fn t_normed(t_norm: BinaryOperator) -> Result<Self> {
        Self::new(IntegralKind::TNormed { t_norm })
    }

    pub fn go(overlap: BinaryOperator, gpg: GpgFunctional) -> Result<Self> {
        Self::new(IntegralKind::Go { overlap, gpg })
    }

    #[must_use]
    pub fn with_kernel_resolution(mut self, resolution: usize) -> Self {
        self.kernel_resolution = resolution.max(1);
        self
    }

    pub fn kind(&self) -> &IntegralKind {
        &self.kind
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    pub fn kernel_resolution(&self) -> usize {
        self.kernel_resolution
    }

    pub fn evaluate(&self, capacity: &Capacity, f: &FuzzyFunction) -> Result<Evaluation> {
        let overlap = match &self.kind {
            IntegralKind::Go { overlap, .. } => *overlap,
            IntegralKind::TNormed { t_norm } => *t_norm,
            IntegralKind::Sugeno | IntegralKind::Choquet => BinaryOperator::Min,
        };
        let profile = LevelProfile::build(capacity, f, overlap)?;
        let mut grid_resolution = None;
        let value = match &self.kind {
            IntegralKind::Sugeno => sugeno_integral(capacity, f)?,
            IntegralKind::Choquet => choquet_integral(capacity, f)?,
            IntegralKind::TNormed { t_norm } => t_normed_unchecked(capacity, f, t_norm)?,
            IntegralKind::Go { gpg, .. } => {
                let outcome = gpg.evaluate(&profile, self.kernel_resolution);
                grid_resolution = outcome.grid_resolution;
                outcome.value
            }
        };
        Ok(Evaluation {
            value,
            kind: self.kind.name(),
            profile: profile.segments().to_vec(),
            grid_resolution,
        })
    }
}

impl Integral for IntegralConfig {
    fn integrate(&self, capacity: &Capacity, f: &FuzzyFunction) -> Result<f64> {
        Ok(self.evaluate(capacity, f)?.value)
    }

    fn describe(&self) -> String {
        match self.kind.operators().as_str() {
            "" => self.kind.name().to_string(),
            ops => format!("{}[{ops}]", self.kind.name()),
        }
    }

    fn tolerance(&self) -> f64 {
        match &self.kind {
            IntegralKind::Go {
                gpg: GpgFunctional::Kernel(_),
                ..
            } => crate::verify::KERNEL_TOLERANCE,
            _ => crate::verify::EXACT_TOLERANCE,
        }
    }
}

fn inadmissible(op: &BinaryOperator, role: &'static str, report: &crate::AxiomReport) -> Error {
    let failed: Vec<&str> = report
        .counterexamples
        .iter()
        .map(|c| c.axiom.as_str())
        .collect();
    Error::InadmissibleOperator {
        operator: op.to_string(),
        role,
        reason: format!("grid check failed: {}", failed.join(", ")),
    }
}
