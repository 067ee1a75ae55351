use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::StepDistribution;
use crate::group::{Element, Preset};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepEntropy {
    pub n: usize,
    /// `H(μ*ⁿ)`.
    pub entropy: f64,
    /// `H(μ*ⁿ) − H(μ*⁽ⁿ⁻¹⁾)`.
    pub increment: f64,
    pub support: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    /// `H(μ) = −Σ μ(γ) log μ(γ)`.
    pub entropy: f64,
    /// `Σ μ(γ) log |γ|_o` over atoms with `γo ≠ o`.
    pub log_moment: f64,
    pub convolutions: Vec<StepEntropy>,
}

fn entropy<'a>(weights: impl Iterator<Item = &'a f64>) -> f64 {
    weights.filter(|&&w| w > 0.0).map(|&w| -w * w.ln()).sum::<f64>() + 0.0
}

/// Exact moments of `μ`, plus `H(μ*ⁿ)` for `n ≤ max_n` while the
/// convolution support stays below `max_support`.
pub fn moment_report(p: &Preset, mu: &StepDistribution, max_n: usize, max_support: usize) -> MomentReport {
    let log_moment = mu
        .support()
        .iter()
        .filter(|(x, _)| !p.is_identity(x))
        .map(|(x, w)| w * (p.norm(x) as f64).ln())
        .sum::<f64>()
        + 0.0;
    let h1 = entropy(mu.support().iter().map(|(_, w)| w));
    let mut convolutions = Vec::new();
    let mut dist: BTreeMap<Element, f64> = BTreeMap::from([(p.identity(), 1.0)]);
    let mut previous = 0.0;
    for n in 1..=max_n {
        let mut next: BTreeMap<Element, f64> = BTreeMap::new();
        for (x, wx) in &dist {
            for (a, wa) in mu.support() {
                *next.entry(p.multiply(x, a)).or_insert(0.0) += wx * wa;
            }
        }
        if next.len() > max_support {
            break;
        }
        dist = next;
        let h = entropy(dist.values());
        convolutions.push(StepEntropy {
            n,
            entropy: h,
            increment: h - previous,
            support: dist.len(),
        });
        previous = h;
    }
    MomentReport {
        entropy: h1,
        log_moment,
        convolutions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_generators() {
        let p = Preset::parse("f2").unwrap();
        let r = moment_report(&p, &StepDistribution::uniform(&p), 3, 1000);
        assert!((r.entropy - 4f64.ln()).abs() < 1e-12);
        assert_eq!(r.log_moment, 0.0);
        assert_eq!(r.convolutions[0].entropy, r.entropy);
        // Two steps: identity with mass 1/4 and twelve reduced words with 1/16.
        let h2 = -(0.25f64 * 0.25f64.ln()) - 12.0 * (1.0 / 16.0) * (1.0f64 / 16.0).ln();
        assert!((r.convolutions[1].entropy - h2).abs() < 1e-12);
        assert_eq!(r.convolutions[1].support, 13);
    }

    #[test]
    fn cube_and_inverse() {
        let p = Preset::parse("f2").unwrap();
        let mu = StepDistribution::new(vec![
            (p.parse_element("a^3").unwrap(), 0.5),
            (p.parse_element("a^-1").unwrap(), 0.5),
        ])
        .unwrap();
        let r = moment_report(&p, &mu, 0, 10);
        assert!((r.log_moment - 0.5 * 3f64.ln()).abs() < 1e-12);
        assert!((r.entropy - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn dirac_has_no_entropy() {
        let p = Preset::parse("z2").unwrap();
        let r = moment_report(&p, &StepDistribution::dirac(p.parse_element("a").unwrap()), 4, 10);
        assert_eq!(r.entropy, 0.0);
        assert!(r.convolutions.iter().all(|c| c.entropy == 0.0));
    }
}
