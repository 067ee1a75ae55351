//! Estimators over sampled runs: stabilization, hitting frequencies,
//! drift, regular-point certificates and separation of limits.

use serde::{Deserialize, Serialize};

use super::{WalkBatch, WalkError, WalkRun};
use crate::group::{HalfSpace, Preset, Step};
use crate::median::Separation;
use crate::pocset::{Relation, Sign};

/// `max(1000, n/10)`, clamped to the run length.
pub fn default_window(steps: usize) -> usize {
    (steps / 10).max(1000).min(steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stabilization {
    /// Sign constant over the final window; `step` is the last crossing.
    Stable { step: usize, sign: Sign },
    Unstable,
}

fn check_window(steps: usize, window: usize) -> Result<(), WalkError> {
    if window > steps {
        Err(WalkError::WindowTooLarge { window, steps })
    } else {
        Ok(())
    }
}

/// Per monitored wall, whether its sign is constant over the final `window` steps.
pub fn stabilization(batch: &WalkBatch, run: &WalkRun, window: usize) -> Result<Vec<Stabilization>, WalkError> {
    if batch.monitored.is_empty() {
        return Err(WalkError::NoMonitoredWalls);
    }
    check_window(run.steps, window)?;
    Ok(run
        .monitored
        .iter()
        .map(|rec| {
            if rec.last_change as usize + window <= run.steps {
                Stabilization::Stable {
                    step: rec.last_change as usize,
                    sign: rec.sign,
                }
            } else {
                Stabilization::Unstable
            }
        })
        .collect())
}

/// Wilson score interval at `z` standard deviations.
pub fn wilson_interval(hits: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HittingEstimate {
    pub stabilized: usize,
    pub unstabilized: usize,
    /// Stabilized runs ending in the half-space.
    pub hits: usize,
    pub frequency: f64,
    /// 95% Wilson interval.
    pub interval: (f64, f64),
}

/// Fraction of runs stabilized on `h`'s wall whose final sign selects `h`.
pub fn hitting_measure(batch: &WalkBatch, h: &HalfSpace, window: usize) -> Result<HittingEstimate, WalkError> {
    let i = batch
        .monitored
        .iter()
        .position(|w| *w == h.wall)
        .ok_or(WalkError::UnmonitoredWall)?;
    check_window(batch.steps, window)?;
    let (mut stabilized, mut hits) = (0, 0);
    for run in &batch.runs {
        let rec = run.monitored[i];
        if rec.last_change as usize + window <= run.steps {
            stabilized += 1;
            hits += (rec.sign == h.sign) as usize;
        }
    }
    if stabilized == 0 {
        return Err(WalkError::NoStabilizedRuns);
    }
    Ok(HittingEstimate {
        stabilized,
        unstabilized: batch.runs.len() - stabilized,
        hits,
        frequency: hits as f64 / stabilized as f64,
        interval: wilson_interval(hits, stabilized, 1.96),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftEstimate {
    pub runs: usize,
    pub steps: usize,
    pub mean: f64,
    pub std_dev: f64,
    /// Normal 95% interval for the mean of `|ω′_n|/n`.
    pub interval: (f64, f64),
}

/// Mean of `|ω′_n|_o / n` over the runs; `None` without runs or steps.
pub fn drift(batch: &WalkBatch) -> Option<DriftEstimate> {
    if batch.runs.is_empty() || batch.steps == 0 {
        return None;
    }
    let n = batch.steps as f64;
    let xs: Vec<f64> = batch.runs.iter().map(|r| r.final_norm() as f64 / n).collect();
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    let half = 1.96 * (var / m).sqrt();
    Some(DriftEstimate {
        runs: xs.len(),
        steps: batch.steps,
        mean,
        std_dev: var.sqrt(),
        interval: (mean - half, mean + half),
    })
}

/// Length of the prefix of the final normal form in `factor` whose edge
/// walls were all last crossed at least `window` steps before the end.
pub fn stable_prefix(run: &WalkRun, factor: usize, window: usize) -> Result<usize, WalkError> {
    check_window(run.steps, window)?;
    let lasts = &run.edge_last[factor];
    Ok(lasts
        .iter()
        .position(|&t| t as usize + window > run.steps)
        .unwrap_or(lasts.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOptions {
    pub window: usize,
    /// Chains stop growing at this length.
    pub max_chain: usize,
    /// Search radius for strong separation certificates.
    pub radius: usize,
}

/// Walks the stable prefix in `factor` and keeps each crossed half-space
/// that is properly nested in the previous pick and strongly separated
/// (certificate `Yes`) from every earlier pick.
pub fn regular_certificate(
    p: &Preset,
    run: &WalkRun,
    factor: usize,
    opts: &CertificateOptions,
) -> Result<Vec<HalfSpace>, WalkError> {
    let stable = stable_prefix(run, factor, opts.window)?;
    let word = &run.position.parts[factor];
    let mut prefix = p.identity();
    let mut chain: Vec<HalfSpace> = Vec::new();
    for &letter in &word[..stable] {
        if chain.len() >= opts.max_chain {
            break;
        }
        let step = Step { factor, letter };
        let h = p.crossed(&prefix, step);
        p.push(&mut prefix, step);
        let nested = chain
            .last()
            .is_none_or(|last| p.relation(&h, last) == Relation::ContainedIn);
        if !nested {
            continue;
        }
        let mut separated = true;
        for k in &chain {
            if !p.strongly_separated(&h.wall, &k.wall, opts.radius)?.is_yes() {
                separated = false;
                break;
            }
        }
        if separated {
            chain.push(h);
        }
    }
    if chain.is_empty() {
        return Err(WalkError::NoChain { longest: 0 });
    }
    Ok(chain)
}

/// A run's boundary point as seen through its stabilized walls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEstimate {
    pub run: usize,
    pub window: usize,
    /// Aligned with the batch's monitored walls; `None` when unstable.
    pub signs: Vec<Option<Sign>>,
    /// Per factor, a nested strongly separated chain toward the limit.
    pub chains: Vec<Vec<HalfSpace>>,
    /// Per factor, the stable part of the final normal form.
    pub stable: crate::group::Element,
}

pub fn boundary_estimate(
    p: &Preset,
    batch: &WalkBatch,
    run: &WalkRun,
    opts: &CertificateOptions,
) -> Result<BoundaryEstimate, WalkError> {
    let signs = stabilization(batch, run, opts.window)?
        .into_iter()
        .map(|s| match s {
            Stabilization::Stable { sign, .. } => Some(sign),
            Stabilization::Unstable => None,
        })
        .collect();
    let mut chains = Vec::new();
    let mut stable = p.identity();
    for f in 0..p.factors().len() {
        chains.push(match regular_certificate(p, run, f, opts) {
            Ok(c) => c,
            Err(WalkError::NoChain { .. }) => Vec::new(),
            Err(e) => return Err(e),
        });
        let len = stable_prefix(run, f, opts.window)?;
        stable.parts[f] = run.position.parts[f][..len].to_vec();
    }
    Ok(BoundaryEstimate {
        run: run.index,
        window: opts.window,
        signs,
        chains,
        stable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distinctness {
    /// Disjoint half-spaces with certificate `Yes`, containing the first
    /// and second limit respectively.
    Separated { first: HalfSpace, second: HalfSpace },
    /// `signs_differ` tells whether the stabilized monitored signs disagree.
    NotSeparated { signs_differ: bool },
}

/// Looks for a disjoint strongly separated pair among the two chains,
/// shallowest pairs first.
pub fn distinct_limits(
    p: &Preset,
    a: &BoundaryEstimate,
    b: &BoundaryEstimate,
    radius: usize,
) -> Result<Distinctness, WalkError> {
    let signs_differ = a
        .signs
        .iter()
        .zip(&b.signs)
        .any(|(x, y)| matches!((x, y), (Some(x), Some(y)) if x != y));
    for (ca, cb) in a.chains.iter().zip(&b.chains) {
        let mut pairs: Vec<(usize, usize)> = (0..ca.len())
            .flat_map(|i| (0..cb.len()).map(move |j| (i, j)))
            .collect();
        pairs.sort_by_key(|&(i, j)| (i + j, i));
        for (i, j) in pairs {
            let (h, k) = (&ca[i], &cb[j]);
            if h.wall == k.wall || p.relation(h, k) != Relation::DisjointFrom {
                continue;
            }
            if matches!(p.strongly_separated(&h.wall, &k.wall, radius)?, Separation::Yes) {
                return Ok(Distinctness::Separated {
                    first: h.clone(),
                    second: k.clone(),
                });
            }
        }
    }
    Ok(Distinctness::NotSeparated { signs_differ })
}
