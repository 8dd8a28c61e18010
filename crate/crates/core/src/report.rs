use serde::Serialize;

use crate::grouping::LevelProfile;

/// One recorded axiom violation.
///
/// `inputs` are the arguments at which the axiom failed and `observed` the
/// operator values there, so the violation can be re-exhibited by evaluating
/// again. Functional checks store the offending level profiles in `profiles`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub axiom: String,
    pub inputs: Vec<f64>,
    pub observed: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<LevelProfile>,
    /// Number of grid points (or trials) violating this axiom; only the first is kept.
    pub occurrences: usize,
}

/// Result of a grid or sampled axiom check. `pass` ⇔ `counterexamples` is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom_set: String,
    pub subject: String,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    pub grid_resolution: Option<usize>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub(crate) fn new(axiom_set: &str, subject: String, grid_resolution: Option<usize>) -> Self {
        Self {
            axiom_set: axiom_set.to_string(),
            subject,
            pass: true,
            counterexamples: Vec::new(),
            grid_resolution,
            notes: Vec::new(),
        }
    }

    /// Records a violation of `axiom`, keeping only the first witness per axiom.
    pub(crate) fn violation(&mut self, axiom: &str, inputs: &[f64], observed: &[f64]) {
        self.violation_with_profiles(axiom, inputs, observed, Vec::new());
    }

    pub(crate) fn violation_with_profiles(
        &mut self,
        axiom: &str,
        inputs: &[f64],
        observed: &[f64],
        profiles: Vec<LevelProfile>,
    ) {
        self.pass = false;
        if let Some(existing) = self.counterexamples.iter_mut().find(|c| c.axiom == axiom) {
            existing.occurrences += 1;
            return;
        }
        self.counterexamples.push(Counterexample {
            axiom: axiom.to_string(),
            inputs: inputs.to_vec(),
            observed: observed.to_vec(),
            profiles,
            occurrences: 1,
        });
    }

    pub fn counterexample(&self, axiom: &str) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| c.axiom == axiom)
    }
}
