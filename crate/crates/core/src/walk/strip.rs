//! Strips between two boundary estimates.
//!
//! Each boundary point is approximated by the stable part of its run's
//! final normal form. Per factor the two approximations are rebased at
//! their greatest common prefix, which puts the basepoint on a geodesic
//! between them; the strip is then counted as the interval vertices in
//! each ball around the basepoint.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{BoundaryEstimate, WalkBatch, WalkError};
use crate::group::{Element, GroupError, Letter, Preset, Raag, DEFAULT_BUDGET};

/// Per factor, the number of interval vertices at each distance from the
/// rebased basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    /// Per factor, the common prefix the endpoints were rebased at.
    pub bridge: Element,
    pub counts: Vec<Vec<u128>>,
    /// Factors where the rebased point carries no strongly separated
    /// certificate (abelian factors).
    pub euclidean_factors: Vec<usize>,
}

impl Strip {
    pub fn new(p: &Preset, minus: &BoundaryEstimate, plus: &BoundaryEstimate) -> Result<Strip, WalkError> {
        if minus.stable == plus.stable {
            return Err(WalkError::IndistinctEndpoints);
        }
        let mut bridge = p.identity();
        let mut counts = Vec::new();
        let mut euclidean_factors = Vec::new();
        for (f, r) in p.factors().iter().enumerate() {
            let (g, u, v) = common_prefix(r, &minus.stable.parts[f], &plus.stable.parts[f]);
            bridge.parts[f] = g;
            counts.push(if r.edges().is_empty() {
                chain_counts(u.len(), v.len())
            } else if r.is_abelian() {
                euclidean_factors.push(f);
                abelian_counts(r, &u, &v)
            } else {
                interval_counts(r, &u, &v, DEFAULT_BUDGET)?
            });
        }
        Ok(Strip {
            bridge,
            counts,
            euclidean_factors,
        })
    }

    /// Interval vertices within distance `k` of the rebased basepoint.
    pub fn count(&self, k: usize) -> u128 {
        let (last, rest) = self.counts.split_last().expect("at least one factor");
        let mut joint = vec![1u128];
        for c in rest {
            joint = convolve(&joint, c, k);
        }
        let mut cumulative = Vec::with_capacity(last.len());
        let mut acc = 0u128;
        for &x in last {
            acc = acc.saturating_add(x);
            cumulative.push(acc);
        }
        let total_at = |j: usize| cumulative[j.min(cumulative.len() - 1)];
        joint
            .iter()
            .enumerate()
            .take(k + 1)
            .fold(0u128, |s, (m, &x)| s.saturating_add(x.saturating_mul(total_at(k - m))))
    }
}

/// `#{γ ∈ B_k : γo′ ∈ I(b−, b+)}` with `o′` the rebased bridge point.
pub fn strip_count(p: &Preset, minus: &BoundaryEstimate, plus: &BoundaryEstimate, k: usize) -> Result<u128, WalkError> {
    Ok(Strip::new(p, minus, plus)?.count(k))
}

fn convolve(a: &[u128], b: &[u128], cap: usize) -> Vec<u128> {
    let len = (a.len() + b.len() - 1).min(cap + 1);
    let mut out = vec![0u128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].saturating_add(x.saturating_mul(y));
        }
    }
    out
}

/// Greatest common prefix `g` of two normal forms up to commutation, and
/// the remainders `g⁻¹u`, `g⁻¹v`.
fn common_prefix(r: &Raag, u: &[Letter], v: &[Letter]) -> (Vec<Letter>, Vec<Letter>, Vec<Letter>) {
    if r.edges().is_empty() {
        let n = u.iter().zip(v).take_while(|(x, y)| x == y).count();
        return (u[..n].to_vec(), u[n..].to_vec(), v[n..].to_vec());
    }
    let (mut g, mut u, mut v) = (Vec::new(), u.to_vec(), v.to_vec());
    loop {
        let heads = first_letters(r, &u);
        let Some(&x) = first_letters(r, &v).iter().find(|x| heads.contains(x)) else {
            return (r.normalize(&g), u, v);
        };
        g.push(x);
        u = r.multiply(&[x.inverse()], &u);
        v = r.multiply(&[x.inverse()], &v);
    }
}

/// Letters of `w` that commute past everything before them.
fn first_letters(r: &Raag, w: &[Letter]) -> Vec<Letter> {
    let mut before = 0u64;
    let mut out = Vec::new();
    for &y in w {
        if before & !r.link(y.generator()) == 0 && !out.contains(&y) {
            out.push(y);
        }
        before |= y.bit();
    }
    out
}

/// A geodesic through the basepoint, `a` edges on one side and `b` on the other.
fn chain_counts(a: usize, b: usize) -> Vec<u128> {
    (0..=a.max(b))
        .map(|m| if m == 0 { 1 } else { (m <= a) as u128 + (m <= b) as u128 })
        .collect()
}

fn abelian_counts(r: &Raag, u: &[Letter], v: &[Letter]) -> Vec<u128> {
    let mut out = vec![1u128];
    for g in 0..r.rank() {
        let reach = |w: &[Letter]| w.iter().filter(|l| l.generator() == g).count();
        let c = chain_counts(reach(u), reach(v));
        out = convolve(&out, &c, usize::MAX - 1);
    }
    out
}

/// Breadth-first enumeration of `I(u, v)`, which contains the identity.
fn interval_counts(r: &Raag, u: &[Letter], v: &[Letter], budget: usize) -> Result<Vec<u128>, WalkError> {
    let d = r.between(u, v).len();
    let on = |z: &[Letter]| r.between(u, z).len() + r.between(z, v).len() == d;
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([Vec::new()]);
    let mut queue = VecDeque::from([Vec::new()]);
    let mut counts = vec![0u128; d + 1];
    while let Some(z) = queue.pop_front() {
        counts[z.len()] += 1;
        for g in 0..r.rank() {
            for inv in [false, true] {
                let y = r.multiply(&z, &[Letter::new(g, inv)]);
                if y.len() > z.len() && !seen.contains(&y) && on(&y) {
                    if seen.len() >= budget {
                        return Err(GroupError::TooLarge { budget }.into());
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub n: usize,
    /// Mean of `|ω′_n|_o` over the pairs.
    pub radius: f64,
    /// Mean of `(1/n)·ln #(strip ∩ B_{|ω′_n|})`.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripSeries {
    pub points: Vec<StripPoint>,
    pub pairs: usize,
    pub indistinct: usize,
    pub caveat: Option<String>,
}

/// Pairs forward run `i` (the `b₊` side, also supplying `|ω′_n|`) with
/// backward run `i` (the `b₋` side, sampled from the reflected measure).
pub fn strip_growth_check(
    p: &Preset,
    forward: &WalkBatch,
    forward_estimates: &[BoundaryEstimate],
    backward_estimates: &[BoundaryEstimate],
    schedule: &[usize],
) -> Result<StripSeries, WalkError> {
    let schedule: Vec<usize> = schedule
        .iter()
        .copied()
        .filter(|&n| n >= 1 && n <= forward.steps)
        .collect();
    let mut sums = vec![(0.0f64, 0.0f64); schedule.len()];
    let (mut pairs, mut indistinct) = (0, 0);
    for ((run, plus), minus) in forward.runs.iter().zip(forward_estimates).zip(backward_estimates) {
        let strip = match Strip::new(p, minus, plus) {
            Ok(s) => s,
            Err(WalkError::IndistinctEndpoints) => {
                indistinct += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        pairs += 1;
        for (slot, &n) in sums.iter_mut().zip(&schedule) {
            let k = run.norms[n] as usize;
            slot.0 += k as f64;
            slot.1 += (strip.count(k) as f64).ln() / n as f64;
        }
    }
    let points = schedule
        .iter()
        .zip(&sums)
        .map(|(&n, &(r, v))| StripPoint {
            n,
            radius: r / pairs.max(1) as f64,
            value: v / pairs.max(1) as f64,
        })
        .collect();
    let caveat = p.has_euclidean_factor().then(|| {
        "Euclidean factor: not a nonelementary action, strip series is a control only".to_string()
    });
    Ok(StripSeries {
        points,
        pairs,
        indistinct,
        caveat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn estimate(p: &Preset, word: &str) -> BoundaryEstimate {
        BoundaryEstimate {
            run: 0,
            window: 0,
            signs: Vec::new(),
            chains: vec![Vec::new(); p.factors().len()],
            stable: p.parse_element(word).unwrap(),
        }
    }

    #[test]
    fn tree_strip_is_a_geodesic() {
        let p = Preset::parse("f2").unwrap();
        let s = Strip::new(&p, &estimate(&p, "a.b.a.a.b"), &estimate(&p, "a.b.b.a")).unwrap();
        assert_eq!(p.format_element(&s.bridge), "a.b");
        // Rebased endpoints a.a.b and b.a: lengths 3 and 2.
        assert_eq!((0..6).map(|k| s.count(k)).collect::<Vec<_>>(), vec![1, 3, 5, 6, 6, 6]);
        let same = estimate(&p, "a.b");
        assert!(matches!(Strip::new(&p, &same, &same), Err(WalkError::IndistinctEndpoints)));
    }

    #[test]
    fn product_counts_convolve() {
        let p = Preset::parse("f2xf2").unwrap();
        let s = Strip::new(&p, &estimate(&p, "a.a.c.c"), &estimate(&p, "b.b.d.d")).unwrap();
        // Each factor is a 5-vertex geodesic; the strip is a 5 x 5 grid
        // and B_k meets it in the ℓ¹ diamond.
        assert_eq!(s.count(0), 1);
        assert_eq!(s.count(1), 5);
        assert_eq!(s.count(8), 25);
    }

    #[test]
    fn abelian_and_generic_counts_agree() {
        let z2 = Raag::abelian(vec!["a".into(), "b".into()]);
        let a = Letter::new(0, false);
        let b_inv = Letter::new(1, true);
        let u = vec![a, a];
        let v = vec![b_inv];
        assert_eq!(abelian_counts(&z2, &u, &v), interval_counts(&z2, &u, &v, 1000).unwrap());
        let (g, ru, rv) = common_prefix(&z2, &[a, a, Letter::new(1, false)], &[a, Letter::new(1, false)]);
        assert_eq!(g, vec![a, Letter::new(1, false)]);
        assert_eq!((ru, rv), (vec![a], vec![]));
    }
}
