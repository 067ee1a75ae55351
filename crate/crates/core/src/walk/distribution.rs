use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::WalkError;
use crate::group::{Element, Preset};

const SUM_TOLERANCE: f64 = 1e-9;

/// A finitely supported probability measure on the group.
#[derive(Clone, Debug, PartialEq)]
pub struct StepDistribution {
    support: Vec<(Element, f64)>,
}

/// Outcome of the generating check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generation {
    /// Every generator and inverse is a product of at most `depth` atoms.
    Verified { depth: usize },
    /// Not confirmed by products of at most `radius` atoms.
    Unverified { radius: usize },
}

impl StepDistribution {
    /// Rejects empty supports, repeated atoms, and weights that are not
    /// positive or do not sum to one.
    pub fn new(support: Vec<(Element, f64)>) -> Result<StepDistribution, WalkError> {
        if support.is_empty() {
            return Err(WalkError::InvalidDistribution("empty support".into()));
        }
        let mut seen = HashSet::new();
        let mut total = 0.0;
        for (x, w) in &support {
            if !(w.is_finite() && *w > 0.0) {
                return Err(WalkError::InvalidDistribution(format!("weight {w} is not positive")));
            }
            if !seen.insert(x) {
                return Err(WalkError::InvalidDistribution("an atom is listed twice".into()));
            }
            total += w;
        }
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(WalkError::InvalidDistribution(format!("weights sum to {total}")));
        }
        Ok(StepDistribution { support })
    }

    /// Uniform on the generators and their inverses.
    pub fn uniform(p: &Preset) -> StepDistribution {
        let steps = p.steps();
        let w = 1.0 / steps.len() as f64;
        StepDistribution {
            support: steps.into_iter().map(|s| (p.step_element(s), w)).collect(),
        }
    }

    pub fn dirac(x: Element) -> StepDistribution {
        StepDistribution {
            support: vec![(x, 1.0)],
        }
    }

    /// Reads a table of words such as `{"a": 0.7, "a^-1": 0.1}`.
    pub fn parse(p: &Preset, table: &BTreeMap<String, f64>) -> Result<StepDistribution, WalkError> {
        let support = table
            .iter()
            .map(|(word, &w)| Ok((p.parse_element(word)?, w)))
            .collect::<Result<Vec<_>, WalkError>>()?;
        StepDistribution::new(support)
    }

    /// The inverse table: the same words, formatted, with their weights.
    pub fn to_table(&self, p: &Preset) -> BTreeMap<String, f64> {
        self.support.iter().map(|(x, w)| (p.format_element(x), *w)).collect()
    }

    pub fn support(&self) -> &[(Element, f64)] {
        &self.support
    }

    /// `μ̌(γ) = μ(γ⁻¹)`.
    pub fn reflected(&self, p: &Preset) -> StepDistribution {
        StepDistribution {
            support: self.support.iter().map(|(x, w)| (p.inverse(x), *w)).collect(),
        }
    }

    /// Checks whether the semigroup generated by the support reaches every
    /// generator and inverse using products of at most `radius` atoms.
    pub fn generating(&self, p: &Preset, radius: usize, budget: usize) -> Generation {
        let mut targets: HashSet<Element> = p.steps().into_iter().map(|s| p.step_element(s)).collect();
        let mut seen: HashSet<Element> = HashSet::new();
        let mut layer: Vec<Element> = Vec::new();
        for (x, _) in &self.support {
            if seen.insert(x.clone()) {
                layer.push(x.clone());
            }
        }
        for depth in 1..=radius {
            for x in &layer {
                targets.remove(x);
            }
            if targets.is_empty() {
                return Generation::Verified { depth };
            }
            if depth == radius || seen.len() > budget {
                break;
            }
            let mut next = Vec::new();
            for x in &layer {
                for (a, _) in &self.support {
                    let y = p.multiply(x, a);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        Generation::Unverified { radius }
    }
}
