//! Finite ground spaces, subsets, fuzzy functions and capacities.
//!
//! A compactum is instantiated as a finite labeled point set. Every subset of
//! a finite space is closed, and upper semicontinuity of a capacity is vacuous
//! there, so a capacity is just a normalized monotone set function.
//!
//! Subsets are encoded as characteristic bit patterns ([`Subset`]), which caps
//! a space at [`MAX_POINTS`] points. Full subset tables are further capped at
//! [`MAX_TABLE_POINTS`] points (2^20 entries).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::overlap_ops::Exponent;

/// Largest space representable by the bit-pattern subset encoding.
pub const MAX_POINTS: usize = 64;
/// Largest space for which full subset tables (and exhaustive validation) are used.
pub const MAX_TABLE_POINTS: usize = 20;

/// Tolerance for sum-to-one and max-equals-one preconditions.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Bracket width at which the λ bisection stops.
pub const LAMBDA_TOLERANCE: f64 = 1e-10;

/// Random maximal chains walked when a space is too large for exhaustive validation.
pub const SAMPLED_CHAINS: usize = 256;
const SAMPLED_CHAIN_SEED: u64 = 0x5eed_c4a1;
const MAX_RECORDED_VIOLATIONS: usize = 64;

/// A finite set of labeled points. The label order fixes point indices.
#[derive(Clone)]
pub struct FiniteSpace {
    labels: Arc<[String]>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(labels.len()));
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if seen.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// A space with points named `x0, x1, …`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("x{i}")))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut set = Subset::EMPTY;
        for label in labels {
            set = set.with(self.index_of(label.as_ref())?);
        }
        Ok(set)
    }

    pub fn subset_of_indices(&self, indices: &[usize]) -> Result<Subset> {
        let mut set = Subset::EMPTY;
        for &i in indices {
            if i >= self.size() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.size(),
                });
            }
            set = set.with(i);
        }
        Ok(set)
    }

    /// Formats a subset with this space's labels, e.g. `{a,c}`.
    pub fn describe(&self, set: Subset) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        let names: Vec<&str> = set.indices().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The space with points reordered: point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.size())?;
        Self::new(perm.iter().map(|&i| self.labels[i].clone()))
    }

    fn ensure_same(&self, other: &FiniteSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("FiniteSpace").field(&self.labels).finish()
    }
}

impl Serialize for FiniteSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(serializer)
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
    }
    Ok(())
}

/// A subset of a finite space as a characteristic bit pattern (bit `i` ⇔ point `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let indices: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", indices.join(","))
    }
}

/// A map `X → [0,1]`. On a finite space continuity is vacuous.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyFunction {
    space: FiniteSpace,
    values: Vec<f64>,
}

impl FuzzyFunction {
    pub fn new(space: &FiniteSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::LengthMismatch {
                expected: space.size(),
                got: values.len(),
            });
        }
        for (label, &v) in space.labels().iter().zip(&values) {
            check_unit(&format!("f({label})"), v)?;
        }
        Ok(Self {
            space: space.clone(),
            values,
        })
    }

    /// The constant function `c_X`.
    pub fn constant(space: &FiniteSpace, c: f64) -> Result<Self> {
        Self::new(space, vec![c; space.size()])
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// `f_t = {x : f(x) ≥ t}` with exact comparison on the stored values.
    pub fn level_set(&self, t: f64) -> Subset {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v >= t)
            .fold(Subset::EMPTY, |set, (i, _)| set.with(i))
    }

    /// Distinct strictly positive values, ascending.
    pub fn distinct_positive_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.values.iter().copied().filter(|&v| v > 0.0).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    /// Pointwise `f ∨ g`.
    pub fn join(&self, other: &FuzzyFunction) -> Result<FuzzyFunction> {
        self.zip_with(other, f64::max)
    }

    /// Pointwise `f ∧ g`.
    pub fn meet(&self, other: &FuzzyFunction) -> Result<FuzzyFunction> {
        self.zip_with(other, f64::min)
    }

    /// Applies `op` pointwise; the result must stay in `[0,1]`.
    pub fn map(&self, op: impl Fn(f64) -> f64) -> Result<FuzzyFunction> {
        FuzzyFunction::new(&self.space, self.values.iter().map(|&v| op(v)).collect())
    }

    pub fn zip_with(
        &self,
        other: &FuzzyFunction,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<FuzzyFunction> {
        self.space.ensure_same(&other.space)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| op(a, b))
            .collect();
        FuzzyFunction::new(&self.space, values)
    }

    /// Pointwise `f ≤ g`.
    pub fn is_below(&self, other: &FuzzyFunction) -> bool {
        self.space == other.space && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// First pair of points where `(f(x)−f(y))·(g(x)−g(y)) < 0`, if any.
    pub fn comonotone_violation(&self, other: &FuzzyFunction) -> Option<(usize, usize)> {
        let n = self.values.len().min(other.values.len());
        for x in 0..n {
            for y in x + 1..n {
                let df = self.values[x] - self.values[y];
                let dg = other.values[x] - other.values[y];
                if df * dg < 0.0 {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn permuted(&self, space: &FiniteSpace, perm: &[usize]) -> Result<FuzzyFunction> {
        check_permutation(perm, self.space.size())?;
        FuzzyFunction::new(space, perm.iter().map(|&i| self.values[i]).collect())
    }
}

/// Free-function form of [`FuzzyFunction::level_set`].
pub fn level_set(f: &FuzzyFunction, t: f64) -> Subset {
    f.level_set(t)
}

fn check_unit(what: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval {
            what: what.to_string(),
            value: v,
        })
    }
}

/// A nondecreasing map `h: [0,1] → [0,1]` with `h(0)=0`, `h(1)=1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Distortion {
    /// `h(x) = x^p`.
    Power { p: Exponent },
    /// Linear interpolation between knots `(x, h(x))`, with `x` strictly increasing from 0 to 1.
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

impl Distortion {
    pub fn power(p: f64) -> Result<Self> {
        Ok(Distortion::Power {
            p: Exponent::new(p)?,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Distortion::Power { p } => x.powf(p.get()),
            Distortion::PiecewiseLinear { knots } => {
                let i = knots.partition_point(|&(k, _)| k < x);
                if i == 0 {
                    return knots[0].1;
                }
                if i == knots.len() {
                    return knots[knots.len() - 1].1;
                }
                let (x0, y0) = knots[i - 1];
                let (x1, y1) = knots[i];
                if x == x1 {
                    y1
                } else {
                    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
                }
            }
        }
    }

    /// Checks `h(0)=0`, `h(1)=1` and monotonicity on a 101-point grid.
    pub fn validate(&self) -> Result<()> {
        if let Distortion::PiecewiseLinear { knots } = self {
            if knots.len() < 2 {
                return Err(Error::InvalidDistortion("needs at least two knots".into()));
            }
            if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::InvalidDistortion(
                    "knot abscissae must be strictly increasing".into(),
                ));
            }
            if knots[0].0 != 0.0 || knots[knots.len() - 1].0 != 1.0 {
                return Err(Error::InvalidDistortion("knots must span [0, 1]".into()));
            }
        }
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidDistortion(format!(
                "h(0) = {} ≠ 0",
                self.eval(0.0)
            )));
        }
        if self.eval(1.0) != 1.0 {
            return Err(Error::InvalidDistortion(format!(
                "h(1) = {} ≠ 1",
                self.eval(1.0)
            )));
        }
        let mut prev = 0.0;
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let y = self.eval(x);
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidDistortion(format!(
                    "h({x}) = {y} leaves [0, 1]"
                )));
            }
            if y < prev {
                return Err(Error::InvalidDistortion(format!(
                    "h decreases at x = {x} ({prev} > {y})"
                )));
            }
            prev = y;
        }
        Ok(())
    }
}

/// How the λ of a Sugeno λ-measure is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaSpec {
    /// Solve `∏(1+λg_i) = 1+λ`.
    Auto,
    Value(f64),
}

/// Constructive description of a capacity, consumed by [`build_capacity`].
#[derive(Debug, Clone, PartialEq)]
pub enum CapacitySpec {
    /// Every subset with its value; all `2^n` subsets must be present.
    Table(Vec<(Subset, f64)>),
    /// Point densities with maximum 1; `ν(A) = max_{x∈A} π(x)`.
    Possibility(Vec<f64>),
    /// Point weights summing to 1.
    Additive(Vec<f64>),
    SugenoLambda {
        densities: Vec<f64>,
        lambda: LambdaSpec,
    },
    /// `ν(A) = h(Σ_{x∈A} w_x)`.
    Distorted {
        weights: Vec<f64>,
        distortion: Distortion,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityKind {
    Table,
    Possibility,
    Additive,
    SugenoLambda,
    Distorted,
}

impl CapacityKind {
    pub const ALL: [CapacityKind; 5] = [
        CapacityKind::Table,
        CapacityKind::Possibility,
        CapacityKind::Additive,
        CapacityKind::SugenoLambda,
        CapacityKind::Distorted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CapacityKind::Table => "table",
            CapacityKind::Possibility => "possibility",
            CapacityKind::Additive => "additive",
            CapacityKind::SugenoLambda => "sugeno_lambda",
            CapacityKind::Distorted => "distorted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Repr {
    /// Indexed by subset bits.
    Table {
        values: Vec<f64>,
    },
    Possibility {
        densities: Vec<f64>,
    },
    Additive {
        weights: Vec<f64>,
    },
    SugenoLambda {
        densities: Vec<f64>,
        lambda: f64,
    },
    Distorted {
        weights: Vec<f64>,
        distortion: Distortion,
    },
}

/// A normalized monotone set function on the subsets of a finite space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Capacity {
    space: FiniteSpace,
    #[serde(flatten)]
    repr: Repr,
}

impl Capacity {
    /// Builds a capacity from its description and checks that it is one.
    pub fn build(space: &FiniteSpace, spec: CapacitySpec) -> Result<Self> {
        let n = space.size();
        let repr = match spec {
            CapacitySpec::Table(entries) => Repr::Table {
                values: collect_table(n, entries)?,
            },
            CapacitySpec::Possibility(densities) => {
                check_point_values(space, "π", &densities)?;
                let max = densities.iter().copied().fold(0.0, f64::max);
                if (max - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(Error::Normalization(format!(
                        "possibility densities must reach 1, max is {max}"
                    )));
                }
                Repr::Possibility { densities }
            }
            CapacitySpec::Additive(weights) => {
                check_point_values(space, "w", &weights)?;
                check_sum_to_one(&weights)?;
                Repr::Additive { weights }
            }
            CapacitySpec::SugenoLambda { densities, lambda } => {
                check_point_values(space, "g", &densities)?;
                let lambda = match lambda {
                    LambdaSpec::Auto => solve_lambda(&densities)?,
                    LambdaSpec::Value(l) => {
                        if !l.is_finite() || l <= -1.0 {
                            return Err(Error::Lambda(format!("λ = {l} must lie in (−1, ∞)")));
                        }
                        let total = lambda_measure(&densities, l, space.full());
                        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                            return Err(Error::Normalization(format!(
                                "λ = {l} gives ν(X) = {total}, not 1"
                            )));
                        }
                        l
                    }
                };
                Repr::SugenoLambda { densities, lambda }
            }
            CapacitySpec::Distorted {
                weights,
                distortion,
            } => {
                check_point_values(space, "w", &weights)?;
                check_sum_to_one(&weights)?;
                distortion.validate()?;
                Repr::Distorted {
                    weights,
                    distortion,
                }
            }
        };
        let capacity = Capacity {
            space: space.clone(),
            repr,
        };
        if let Some(violation) = capacity.validate().violations.into_iter().next() {
            return Err(violation.into_error());
        }
        Ok(capacity)
    }

    /// A table capacity without axiom checks, indexed by subset bits. Useful
    /// for feeding deliberately broken set functions to [`validate_capacity`].
    pub fn table_unchecked(space: &FiniteSpace, values: Vec<f64>) -> Result<Self> {
        let n = space.size();
        if n > MAX_TABLE_POINTS {
            return Err(Error::TableTooLarge { got: n });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: values.len(),
            });
        }
        Ok(Capacity {
            space: space.clone(),
            repr: Repr::Table { values },
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn kind(&self) -> CapacityKind {
        match self.repr {
            Repr::Table { .. } => CapacityKind::Table,
            Repr::Possibility { .. } => CapacityKind::Possibility,
            Repr::Additive { .. } => CapacityKind::Additive,
            Repr::SugenoLambda { .. } => CapacityKind::SugenoLambda,
            Repr::Distorted { .. } => CapacityKind::Distorted,
        }
    }

    /// The solved or supplied λ of a Sugeno λ-measure.
    pub fn lambda(&self) -> Option<f64> {
        match self.repr {
            Repr::SugenoLambda { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// `ν(A)`. Computed kinds return exactly 0 on ∅ and 1 on X and are
    /// clamped to `[0,1]` elsewhere, which absorbs rounding in sums and products.
    pub fn value(&self, set: Subset) -> f64 {
        let full = self.space.full();
        let set = Subset(set.0 & full.0);
        if let Repr::Table { values } = &self.repr {
            return values[set.0 as usize];
        }
        if set.is_empty() {
            return 0.0;
        }
        if set == full {
            return 1.0;
        }
        let raw = match &self.repr {
            Repr::Table { .. } => unreachable!(),
            Repr::Possibility { densities } => {
                set.indices().map(|i| densities[i]).fold(0.0, f64::max)
            }
            Repr::Additive { weights } => sum_over(weights, set),
            Repr::SugenoLambda { densities, lambda } => lambda_measure(densities, *lambda, set),
            Repr::Distorted {
                weights,
                distortion,
            } => distortion.eval(sum_over(weights, set).clamp(0.0, 1.0)),
        };
        raw.clamp(0.0, 1.0)
    }

    /// All `2^n` values indexed by subset bits.
    pub fn to_table(&self) -> Result<Vec<f64>> {
        let n = self.space.size();
        if n > MAX_TABLE_POINTS {
            return Err(Error::TableTooLarge { got: n });
        }
        if let Repr::Table { values } = &self.repr {
            return Ok(values.clone());
        }
        Ok((0..1u64 << n)
            .map(|bits| self.value(Subset(bits)))
            .collect())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_capacity(self)
    }

    /// The same capacity on a reordered space: point `i` of the result is point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Capacity> {
        let space = self.space.permuted(perm)?;
        let pick = |v: &[f64]| perm.iter().map(|&i| v[i]).collect::<Vec<f64>>();
        let repr = match &self.repr {
            Repr::Table { values } => {
                let mut out = vec![0.0; values.len()];
                for (bits, slot) in out.iter_mut().enumerate() {
                    let old = Subset(bits as u64)
                        .indices()
                        .fold(Subset::EMPTY, |s, i| s.with(perm[i]));
                    *slot = values[old.0 as usize];
                }
                Repr::Table { values: out }
            }
            Repr::Possibility { densities } => Repr::Possibility {
                densities: pick(densities),
            },
            Repr::Additive { weights } => Repr::Additive {
                weights: pick(weights),
            },
            Repr::SugenoLambda { densities, lambda } => Repr::SugenoLambda {
                densities: pick(densities),
                lambda: *lambda,
            },
            Repr::Distorted {
                weights,
                distortion,
            } => Repr::Distorted {
                weights: pick(weights),
                distortion: distortion.clone(),
            },
        };
        Ok(Capacity { space, repr })
    }
}

/// Free-function form of [`Capacity::build`].
pub fn build_capacity(space: &FiniteSpace, spec: CapacitySpec) -> Result<Capacity> {
    Capacity::build(space, spec)
}

/// Free-function form of [`Capacity::value`].
pub fn capacity_value(capacity: &Capacity, set: Subset) -> f64 {
    capacity.value(set)
}

fn sum_over(weights: &[f64], set: Subset) -> f64 {
    set.indices().map(|i| weights[i]).sum()
}

fn lambda_measure(densities: &[f64], lambda: f64, set: Subset) -> f64 {
    if lambda == 0.0 {
        return sum_over(densities, set);
    }
    let product: f64 = set.indices().map(|i| 1.0 + lambda * densities[i]).product();
    (product - 1.0) / lambda
}

fn check_point_values(space: &FiniteSpace, what: &str, values: &[f64]) -> Result<()> {
    if values.len() != space.size() {
        return Err(Error::LengthMismatch {
            expected: space.size(),
            got: values.len(),
        });
    }
    for (label, &v) in space.labels().iter().zip(values) {
        check_unit(&format!("{what}({label})"), v)?;
    }
    Ok(())
}

fn check_sum_to_one(weights: &[f64]) -> Result<()> {
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::Normalization(format!(
            "weights must sum to 1, sum is {total}"
        )));
    }
    Ok(())
}

fn collect_table(n: usize, entries: Vec<(Subset, f64)>) -> Result<Vec<f64>> {
    if n > MAX_TABLE_POINTS {
        return Err(Error::TableTooLarge { got: n });
    }
    let full = Subset::full(n);
    let mut values = vec![None; 1 << n];
    for (set, v) in entries {
        if !set.is_subset_of(full) {
            return Err(Error::IndexOutOfRange {
                index: 63 - set.0.leading_zeros() as usize,
                size: n,
            });
        }
        if !v.is_finite() {
            return Err(Error::OutOfUnitInterval {
                what: format!("ν({set})"),
                value: v,
            });
        }
        if values[set.0 as usize].replace(v).is_some() {
            return Err(Error::DuplicateTableEntry(set));
        }
    }
    for (set, name) in [(Subset::EMPTY, "∅"), (full, "X")] {
        if values[set.0 as usize].is_none() {
            return Err(Error::Normalization(format!(
                "capacity table has no entry for {name}"
            )));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(bits, v)| v.ok_or(Error::IncompleteTable(Subset(bits as u64))))
        .collect()
}

/// Solves `∏(1+λg_i) = 1+λ` for the nonzero root `λ ∈ (−1, ∞)`.
///
/// Works on `h(λ) = (∏(1+λg_i) − 1)/λ − 1`, which is continuous, strictly
/// increasing on `(−1, ∞)` and has `h(0⁻) = h(0⁺) = Σg − 1`, so the sign of
/// `Σg − 1` tells which side of zero the root is on. Densities already summing
/// to 1 give `λ = 0` (the additive measure).
pub fn solve_lambda(densities: &[f64]) -> Result<f64> {
    if densities.iter().any(|&g| !(g > 0.0 && g < 1.0)) {
        return Err(Error::Lambda(
            "automatic λ needs every density strictly inside (0, 1)".into(),
        ));
    }
    let total: f64 = densities.iter().sum();
    if (total - 1.0).abs() <= NORMALIZATION_TOLERANCE {
        return Ok(0.0);
    }
    let h = |lambda: f64| {
        let product: f64 = densities.iter().map(|&g| 1.0 + lambda * g).product();
        (product - 1.0) / lambda - 1.0
    };
    let (mut lo, mut hi) = if total > 1.0 {
        (-1.0, 0.0)
    } else {
        let mut hi = 1.0;
        while h(hi) <= 0.0 {
            hi *= 2.0;
            if hi > 1e15 {
                return Err(Error::Lambda(format!(
                    "no root bracketed below λ = 1e15 (Σg = {total})"
                )));
            }
        }
        (0.0, hi)
    };
    for _ in 0..500 {
        if hi - lo <= LAMBDA_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    if root <= -1.0 || root == 0.0 {
        return Err(Error::Lambda(format!(
            "bisection collapsed onto the bracket edge (λ = {root})"
        )));
    }
    Ok(root)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityAxiom {
    Normalization,
    Monotonicity,
    Range,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CapacityWitness {
    Subset {
        subset: Subset,
        value: f64,
    },
    Pair {
        smaller: Subset,
        larger: Subset,
        smaller_value: f64,
        larger_value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityViolation {
    pub axiom: CapacityAxiom,
    pub witness: CapacityWitness,
}

impl CapacityViolation {
    fn into_error(self) -> Error {
        match (self.axiom, self.witness) {
            (
                _,
                CapacityWitness::Pair {
                    smaller,
                    larger,
                    smaller_value,
                    larger_value,
                },
            ) => Error::Monotonicity {
                smaller,
                larger,
                smaller_value,
                larger_value,
            },
            (CapacityAxiom::Normalization, CapacityWitness::Subset { subset, value }) => {
                Error::Normalization(format!("ν({subset}) = {value}"))
            }
            (_, CapacityWitness::Subset { subset, value }) => Error::OutOfUnitInterval {
                what: format!("ν({subset})"),
                value,
            },
        }
    }
}

/// Outcome of [`validate_capacity`]. `pass` holds iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    /// True when the space was too large for the exhaustive check.
    pub sampled: bool,
    pub violation_count: usize,
    /// The first violations found (at most 64).
    pub violations: Vec<CapacityViolation>,
}

/// Checks normalization, range and monotonicity.
///
/// Up to [`MAX_TABLE_POINTS`] points every pair `A ⊂ A∪{x}` is checked, which
/// implies monotonicity over all pairs `A ⊆ B`. Larger spaces walk
/// [`SAMPLED_CHAINS`] seeded random maximal chains from ∅ to X and the report
/// is flagged as sampled.
pub fn validate_capacity(capacity: &Capacity) -> ValidationReport {
    let n = capacity.space.size();
    let full = capacity.space.full();
    let mut sink = ViolationSink::default();

    for (set, expected) in [(Subset::EMPTY, 0.0), (full, 1.0)] {
        let value = capacity.value(set);
        if value != expected {
            sink.push(
                CapacityAxiom::Normalization,
                CapacityWitness::Subset { subset: set, value },
            );
        }
    }

    let sampled = n > MAX_TABLE_POINTS;
    if !sampled {
        let table = capacity.to_table().expect("size checked above");
        for (bits, &value) in table.iter().enumerate() {
            let set = Subset(bits as u64);
            if !(0.0..=1.0).contains(&value) {
                sink.push(
                    CapacityAxiom::Range,
                    CapacityWitness::Subset { subset: set, value },
                );
            }
            for i in 0..n {
                if set.contains(i) {
                    continue;
                }
                let larger = set.with(i);
                let larger_value = table[larger.0 as usize];
                if value > larger_value {
                    sink.push(
                        CapacityAxiom::Monotonicity,
                        CapacityWitness::Pair {
                            smaller: set,
                            larger,
                            smaller_value: value,
                            larger_value,
                        },
                    );
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLED_CHAIN_SEED);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..SAMPLED_CHAINS {
            for i in (1..n).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            let mut set = Subset::EMPTY;
            let mut value = capacity.value(set);
            for &i in &order {
                let larger = set.with(i);
                let larger_value = capacity.value(larger);
                if !(0.0..=1.0).contains(&larger_value) {
                    sink.push(
                        CapacityAxiom::Range,
                        CapacityWitness::Subset {
                            subset: larger,
                            value: larger_value,
                        },
                    );
                }
                if value > larger_value {
                    sink.push(
                        CapacityAxiom::Monotonicity,
                        CapacityWitness::Pair {
                            smaller: set,
                            larger,
                            smaller_value: value,
                            larger_value,
                        },
                    );
                }
                set = larger;
                value = larger_value;
            }
        }
    }

    ValidationReport {
        pass: sink.count == 0,
        sampled,
        violation_count: sink.count,
        violations: sink.recorded,
    }
}

#[derive(Default)]
struct ViolationSink {
    count: usize,
    recorded: Vec<CapacityViolation>,
}

impl ViolationSink {
    fn push(&mut self, axiom: CapacityAxiom, witness: CapacityWitness) {
        self.count += 1;
        if self.recorded.len() < MAX_RECORDED_VIOLATIONS {
            self.recorded.push(CapacityViolation { axiom, witness });
        }
    }
}
