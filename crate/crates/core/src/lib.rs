//! GO-integrals on finite spaces.
//!
//! The GO-integral generalizes the Sugeno and t-normed integrals: for a
//! capacity `ν`, a function `f: X → [0,1]`, a t-overlap function `O` and a
//! pseudo-grouping functional `G` it evaluates
//!
//! ```text
//!     I(f) = G(m),   m(t) = O(ν({x : f(x) ≥ t}), t)
//! ```
//!
//! On a finite space `m` is a step function with rising ramps, so the crate
//! represents it exactly as a [`LevelProfile`] and evaluates the integral at
//! the breakpoints. The [`verify`] module holds definition-level oracles and
//! property harnesses that check the exact path against first principles.
//!
//! Module map:
//!
//! - [`space_measure`]: finite spaces, subsets, fuzzy functions, capacities
//! - [`overlap_ops`]: t-norms and t-overlap functions, grid axiom checkers
//! - [`grouping`]: level profiles, pseudo-grouping functionals, n-ary groupings
//! - [`integrals`]: Sugeno, t-normed, Choquet and GO integrals
//! - [`verify`]: brute-force oracles and property suites
//! - [`cli`]: the `goint` command-line front end

pub mod cli;
pub mod error;
pub mod grouping;
pub mod integrals;
pub mod overlap_ops;
pub mod report;
pub mod space_measure;
pub mod verify;

pub use error::{Error, Result};
pub use grouping::{DiscreteGpg, GpgFunctional, GpgOutcome, Kernel, LevelProfile, Segment};
pub use integrals::{Evaluation, Integral, IntegralConfig, IntegralKind};
pub use overlap_ops::{BinaryOperator, Exponent};
pub use report::{AxiomReport, Counterexample};
pub use space_measure::{
    Capacity, CapacityKind, CapacitySpec, Distortion, FiniteSpace, FuzzyFunction, LambdaSpec,
    Subset, ValidationReport,
};
