//! Binary operators on `[0,1]²`: t-norms, t-overlap functions and two
//! deliberately non-conforming controls, with grid-based axiom checkers.
//!
//! A t-overlap function is a continuous, symmetric, nondecreasing `O` with
//! `O(l,s) = 0` whenever `l·s = 0` and `O(l,s) = 1` exactly when `l·s = 1`.
//! Every continuous t-norm is one. The checkers here work on a uniform grid,
//! so a pass means "no counterexample at grid points", never a proof.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::report::AxiomReport;

/// Equality tolerance used by the grid checkers.
pub const AXIOM_TOLERANCE: f64 = 1e-12;
/// Default grid resolution for axiom checks.
pub const DEFAULT_AXIOM_GRID: usize = 100;
/// Associativity runs on a cubic grid, so its resolution is capped.
pub const ASSOCIATIVITY_GRID_CAP: usize = 64;

/// A strictly positive, finite exponent.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 {
            Ok(Self(p))
        } else {
            Err(Error::InvalidParameter(format!(
                "exponent must be positive and finite, got {p}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BinaryOperator {
    /// `min(l, s)`, the Gödel t-norm.
    Min,
    /// `l·s`.
    Product,
    /// `max(0, l + s − 1)`.
    Lukasiewicz,
    /// `(l·s)^p`; a t-overlap for every `p > 0`, a t-norm only for `p = 1`.
    PowerProduct(Exponent),
    /// `min(l, s)^p`; a t-overlap for every `p > 0`, a t-norm only for `p = 1`.
    MinPower(Exponent),
    /// `(l + s)/2`. Negative control: not zero on the boundary.
    Mean,
    /// `l·s²`. Negative control: not symmetric.
    AsymTest,
}

impl BinaryOperator {
    pub fn power_product(p: f64) -> Result<Self> {
        Ok(BinaryOperator::PowerProduct(Exponent::new(p)?))
    }

    pub fn min_power(p: f64) -> Result<Self> {
        Ok(BinaryOperator::MinPower(Exponent::new(p)?))
    }

    #[inline]
    pub fn eval(&self, l: f64, s: f64) -> f64 {
        match *self {
            BinaryOperator::Min => l.min(s),
            BinaryOperator::Product => l * s,
            BinaryOperator::Lukasiewicz => (l + s - 1.0).max(0.0),
            BinaryOperator::PowerProduct(p) => (l * s).powf(p.0),
            BinaryOperator::MinPower(p) => l.min(s).powf(p.0),
            BinaryOperator::Mean => 0.5 * (l + s),
            BinaryOperator::AsymTest => l * s * s,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            BinaryOperator::Min => "min",
            BinaryOperator::Product => "product",
            BinaryOperator::Lukasiewicz => "lukasiewicz",
            BinaryOperator::PowerProduct(_) => "power_product",
            BinaryOperator::MinPower(_) => "min_power",
            BinaryOperator::Mean => "mean",
            BinaryOperator::AsymTest => "asym_test",
        }
    }

    /// The exponent of a parameterized family.
    pub fn parameter(&self) -> Option<f64> {
        match self {
            BinaryOperator::PowerProduct(p) | BinaryOperator::MinPower(p) => Some(p.0),
            _ => None,
        }
    }

    /// Same family with a new exponent; errors for parameterless families.
    pub fn with_parameter(&self, p: f64) -> Result<Self> {
        match self {
            BinaryOperator::PowerProduct(_) => Self::power_product(p),
            BinaryOperator::MinPower(_) => Self::min_power(p),
            other => Err(Error::InvalidParameter(format!(
                "operator `{other}` has no parameter"
            ))),
        }
    }

    /// Families known to satisfy the t-overlap axioms on the whole square.
    pub fn is_certified_t_overlap(&self) -> bool {
        !matches!(self, BinaryOperator::Mean | BinaryOperator::AsymTest)
    }

    /// Families known to be continuous t-norms.
    pub fn is_certified_t_norm(&self) -> bool {
        match self {
            BinaryOperator::Min | BinaryOperator::Product | BinaryOperator::Lukasiewicz => true,
            BinaryOperator::PowerProduct(p) | BinaryOperator::MinPower(p) => p.0 == 1.0,
            BinaryOperator::Mean | BinaryOperator::AsymTest => false,
        }
    }

    /// The builtin t-overlap functions used by the property suites.
    pub fn builtin_t_overlaps() -> Vec<BinaryOperator> {
        vec![
            BinaryOperator::Min,
            BinaryOperator::Product,
            BinaryOperator::Lukasiewicz,
            BinaryOperator::PowerProduct(Exponent(0.5)),
            BinaryOperator::PowerProduct(Exponent(2.0)),
            BinaryOperator::PowerProduct(Exponent(3.0)),
            BinaryOperator::MinPower(Exponent(2.0)),
        ]
    }

    /// The builtin continuous t-norms.
    pub fn builtin_t_norms() -> Vec<BinaryOperator> {
        vec![
            BinaryOperator::Min,
            BinaryOperator::Product,
            BinaryOperator::Lukasiewicz,
        ]
    }
}

impl fmt::Display for BinaryOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}:p={}", self.family(), p),
            None => f.write_str(self.family()),
        }
    }
}

impl Serialize for BinaryOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `name` or `name:key=value[,key=value]`, e.g. `power_product:p=2`.
pub(crate) fn parse_descriptor(text: &str) -> Result<(String, Vec<(String, f64)>)> {
    let text = text.trim();
    let (name, rest) = match text.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (text, None),
    };
    let mut params = Vec::new();
    if let Some(rest) = rest {
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value, got `{part}`"))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("`{value}` is not a number")))?;
            params.push((key.trim().to_string(), value));
        }
    }
    Ok((name.to_ascii_lowercase().replace('-', "_"), params))
}

pub(crate) fn take_param(params: &[(String, f64)], key: &str, what: &str) -> Result<f64> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::InvalidParameter(format!("{what} needs parameter `{key}`")))
}

impl FromStr for BinaryOperator {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, params) = parse_descriptor(text)?;
        match name.as_str() {
            "min" => Ok(BinaryOperator::Min),
            "product" | "prod" => Ok(BinaryOperator::Product),
            "lukasiewicz" => Ok(BinaryOperator::Lukasiewicz),
            "power_product" => Self::power_product(take_param(&params, "p", "power_product")?),
            "min_power" => Self::min_power(take_param(&params, "p", "min_power")?),
            "mean" => Ok(BinaryOperator::Mean),
            "asym_test" => Ok(BinaryOperator::AsymTest),
            _ => Err(Error::UnknownName {
                what: "operator family",
                name,
            }),
        }
    }
}

/// Free-function form of [`BinaryOperator::eval`].
pub fn eval_binary(op: &BinaryOperator, l: f64, s: f64) -> f64 {
    op.eval(l, s)
}

fn grid(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

fn check_grid_size(grid_n: usize) -> Result<()> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid resolution must be at least 2, got {grid_n}"
        )));
    }
    Ok(())
}

fn check_range_and_monotonicity(op: &BinaryOperator, xs: &[f64], report: &mut AxiomReport) {
    let n = xs.len();
    let values: Vec<Vec<f64>> = xs
        .iter()
        .map(|&l| xs.iter().map(|&s| op.eval(l, s)).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let v = values[i][j];
            if !(0.0..=1.0).contains(&v) {
                report.violation("range", &[xs[i], xs[j]], &[v]);
            }
            if i + 1 < n && v > values[i + 1][j] + AXIOM_TOLERANCE {
                report.violation(
                    "monotonicity",
                    &[xs[i], xs[j], xs[i + 1], xs[j]],
                    &[v, values[i + 1][j]],
                );
            }
            if j + 1 < n && v > values[i][j + 1] + AXIOM_TOLERANCE {
                report.violation(
                    "monotonicity",
                    &[xs[i], xs[j], xs[i], xs[j + 1]],
                    &[v, values[i][j + 1]],
                );
            }
        }
    }
}

/// Grid check of the t-overlap axioms on the `(grid_n+1)²` uniform grid.
///
/// Symmetry up to [`AXIOM_TOLERANCE`]; `O = 0` on the edges `l·s = 0`;
/// `O(1,1) = 1` exactly and `O < 1` at every other grid point; monotonicity
/// between grid neighbours along both axes; values in `[0,1]`.
pub fn check_t_overlap(op: &BinaryOperator, grid_n: usize) -> Result<AxiomReport> {
    check_grid_size(grid_n)?;
    let xs = grid(grid_n);
    let mut report = AxiomReport::new("t-overlap", op.to_string(), Some(grid_n));

    for &l in &xs {
        for &s in &xs {
            let v = op.eval(l, s);
            let w = op.eval(s, l);
            if (v - w).abs() > AXIOM_TOLERANCE {
                report.violation("symmetry", &[l, s], &[v, w]);
            }
            if l * s == 0.0 {
                if v.abs() > AXIOM_TOLERANCE {
                    report.violation("boundary_zero", &[l, s], &[v]);
                }
            } else if l * s < 1.0 && v >= 1.0 {
                report.violation("boundary_one", &[l, s], &[v]);
            }
        }
    }
    let top = op.eval(1.0, 1.0);
    if top != 1.0 {
        report.violation("boundary_one", &[1.0, 1.0], &[top]);
    }
    check_range_and_monotonicity(op, &xs, &mut report);

    let interior_zero = xs[1..]
        .iter()
        .flat_map(|&l| xs[1..].iter().map(move |&s| (l, s)))
        .find(|&(l, s)| op.eval(l, s) == 0.0);
    report.notes.push(match interior_zero {
        _ if !report.pass => "not a t-overlap on this grid".to_string(),
        None => "strict overlap at grid points: zero only where l·s = 0".to_string(),
        Some((l, s)) => format!("not a strict overlap: O({l}, {s}) = 0 with l·s > 0"),
    });
    report
        .notes
        .push("grid check only; continuity and off-grid behaviour are not certified".into());
    Ok(report)
}

/// Grid check of the t-norm axioms: commutativity, monotonicity, the unit law
/// `s ∗ 1 = s` and associativity. Associativity runs on a cubic grid whose
/// resolution is capped at [`ASSOCIATIVITY_GRID_CAP`].
pub fn check_t_norm(op: &BinaryOperator, grid_n: usize) -> Result<AxiomReport> {
    check_grid_size(grid_n)?;
    let xs = grid(grid_n);
    let mut report = AxiomReport::new("t-norm", op.to_string(), Some(grid_n));

    for &l in &xs {
        for &s in &xs {
            let v = op.eval(l, s);
            let w = op.eval(s, l);
            if (v - w).abs() > AXIOM_TOLERANCE {
                report.violation("commutativity", &[l, s], &[v, w]);
            }
        }
    }
    check_range_and_monotonicity(op, &xs, &mut report);
    for &s in &xs {
        let v = op.eval(s, 1.0);
        if (v - s).abs() > AXIOM_TOLERANCE {
            report.violation("unit", &[s, 1.0], &[v]);
        }
    }

    let assoc_n = grid_n.min(ASSOCIATIVITY_GRID_CAP);
    let ys = grid(assoc_n);
    for &a in &ys {
        for &b in &ys {
            let ab = op.eval(a, b);
            for &c in &ys {
                let left = op.eval(ab, c);
                let right = op.eval(a, op.eval(b, c));
                if (left - right).abs() > AXIOM_TOLERANCE {
                    report.violation("associativity", &[a, b, c], &[left, right]);
                }
            }
        }
    }
    report
        .notes
        .push(format!("associativity checked on a {}³ grid", assoc_n + 1));
    Ok(report)
}
