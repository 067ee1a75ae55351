//! Finitely supported measures on vertices and their heavy, light and balanced walls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::MedianError;
use crate::pocset::{HalfSpaceId, Orientation, Pocset, Relation, WallId};

/// A probability vector on orientations with exact rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    support: Vec<(Orientation, BigRational)>,
}

impl Measure {
    /// Integer weights over their common sum.
    pub fn from_counts(support: Vec<(Orientation, u64)>) -> Result<Measure, MedianError> {
        let total: u64 = support.iter().map(|(_, c)| c).sum();
        if total == 0 {
            return Err(MedianError::NotAProbability);
        }
        let denom = BigInt::from(total);
        Ok(Measure {
            support: support
                .into_iter()
                .filter(|(_, c)| *c > 0)
                .map(|(o, c)| (o, BigRational::new(BigInt::from(c), denom.clone())))
                .collect(),
        })
    }

    /// Exact rationals that must sum to one.
    pub fn from_rationals(support: Vec<(Orientation, BigRational)>) -> Result<Measure, MedianError> {
        let total: BigRational = support.iter().map(|(_, w)| w.clone()).sum();
        if support.iter().any(|(_, w)| w.is_negative()) || !total.is_one() {
            return Err(MedianError::NotAProbability);
        }
        Ok(Measure {
            support: support.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        })
    }

    /// Float weights summing to one within `1e-12`. Each weight is taken
    /// exactly as its binary value and renormalized by the exact sum.
    pub fn from_f64(support: Vec<(Orientation, f64)>) -> Result<Measure, MedianError> {
        let sum: f64 = support.iter().map(|(_, w)| w).sum();
        if support.iter().any(|(_, w)| !w.is_finite() || *w < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(MedianError::NotAProbability);
        }
        let exact: Vec<(Orientation, BigRational)> = support
            .into_iter()
            .map(|(o, w)| (o, BigRational::from_float(w).expect("finite")))
            .collect();
        let total: BigRational = exact.iter().map(|(_, w)| w.clone()).sum();
        Ok(Measure {
            support: exact
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(o, w)| (o, w / &total))
                .collect(),
        })
    }

    pub fn dirac(o: Orientation) -> Measure {
        Measure {
            support: vec![(o, BigRational::one())],
        }
    }

    pub fn support(&self) -> &[(Orientation, BigRational)] {
        &self.support
    }

    /// `m(h)`: total weight of support points in `h`.
    pub fn mass(&self, h: HalfSpaceId) -> Result<BigRational, MedianError> {
        let mut m = BigRational::zero();
        for (o, w) in &self.support {
            match o.get(h.wall()) {
                None => return Err(MedianError::UnknownSigns(h.wall())),
                Some(s) if s == h.sign() => m += w,
                Some(_) => {}
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureClassification {
    /// Walls with `m(h) = 1/2`.
    pub balanced: Vec<WallId>,
    /// Half-spaces with `m(h) > 1/2`.
    pub heavy: Vec<HalfSpaceId>,
    /// Half-spaces with `m(h) < 1/2`.
    pub light: Vec<HalfSpaceId>,
}

pub fn classify_measure(p: &Pocset, m: &Measure) -> Result<MeasureClassification, MedianError> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = MeasureClassification {
        balanced: Vec::new(),
        heavy: Vec::new(),
        light: Vec::new(),
    };
    for w in p.wall_ids() {
        let plus = m.mass(w.plus())?;
        match plus.cmp(&half) {
            std::cmp::Ordering::Equal => out.balanced.push(w),
            std::cmp::Ordering::Greater => {
                out.heavy.push(w.plus());
                out.light.push(w.minus());
            }
            std::cmp::Ordering::Less => {
                out.heavy.push(w.minus());
                out.light.push(w.plus());
            }
        }
    }
    Ok(out)
}

/// Three half-spaces over distinct walls of `walls` with pairwise disjoint complements, if any.
pub fn facing_triple(p: &Pocset, walls: &[WallId]) -> Option<[HalfSpaceId; 3]> {
    let hs: Vec<HalfSpaceId> = walls.iter().flat_map(|w| [w.plus(), w.minus()]).collect();
    let faces = |a: HalfSpaceId, b: HalfSpaceId| p.relation_unchecked(a, b) == Relation::UnionAll;
    for (i, &a) in hs.iter().enumerate() {
        for (j, &b) in hs.iter().enumerate().skip(i + 1) {
            if a.wall() == b.wall() || !faces(a, b) {
                continue;
            }
            for &c in hs.iter().skip(j + 1) {
                if c.wall() != a.wall() && c.wall() != b.wall() && faces(a, c) && faces(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Minimal and maximal elements of `hs`, in input order.
///
/// `h` is minimal if every `k` in `hs` is transverse to `h` or satisfies
/// `h ⊆ k` or `h ⊆ k*`; `h` is maximal if `h*` is minimal.
pub fn terminal_elements(p: &Pocset, hs: &[HalfSpaceId]) -> Vec<HalfSpaceId> {
    let minimal = |h: HalfSpaceId| {
        hs.iter()
            .all(|&k| p.transverse(h, k) || p.leq(h, k) || p.leq(h, k.complement()))
    };
    let maximal = |h: HalfSpaceId| {
        hs.iter()
            .all(|&k| p.transverse(h, k) || p.leq(k, h) || p.leq(k.complement(), h))
    };
    hs.iter().copied().filter(|&h| minimal(h) || maximal(h)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite;

    #[test]
    fn dirac_heavy_set_is_the_ultrafilter() {
        let sp = finite::grid(3, 3);
        let v = sp.points[4].clone();
        let c = classify_measure(&sp.pocset, &Measure::dirac(v.clone())).unwrap();
        assert!(c.balanced.is_empty());
        let mut u: Vec<HalfSpaceId> = v.selected().collect();
        u.sort();
        let mut heavy = c.heavy.clone();
        heavy.sort();
        assert_eq!(heavy, u);
    }

    #[test]
    fn two_point_average_balances_separating_walls() {
        let sp = finite::grid(4, 4);
        let (u, v) = (sp.points[0].clone(), sp.points[9].clone());
        let m = Measure::from_counts(vec![(u.clone(), 1), (v.clone(), 1)]).unwrap();
        let c = classify_measure(&sp.pocset, &m).unwrap();
        assert_eq!(c.balanced, u.disagreeing_walls(&v));
    }

    #[test]
    fn odd_uniform_measure_has_no_balanced_walls() {
        let t = finite::path(5);
        let m = Measure::from_counts(vec![(t.points[0].clone(), 1), (t.points[2].clone(), 1), (t.points[4].clone(), 1)]).unwrap();
        assert!(classify_measure(&t.pocset, &m).unwrap().balanced.is_empty());
    }

    #[test]
    fn float_weights_must_sum_to_one() {
        let o = Orientation::parse("+").unwrap();
        assert_eq!(
            Measure::from_f64(vec![(o.clone(), 0.4)]).unwrap_err(),
            MedianError::NotAProbability
        );
        let m = Measure::from_f64(vec![(o.clone(), 0.5), (Orientation::parse("-").unwrap(), 0.5)]).unwrap();
        let p = finite::cube(1);
        assert_eq!(classify_measure(&p, &m).unwrap().balanced, vec![WallId::new(0)]);
    }

    #[test]
    fn unknown_signs_are_reported() {
        let m = Measure::dirac(Orientation::parse("+?").unwrap());
        assert_eq!(
            classify_measure(&finite::square(), &m).unwrap_err(),
            MedianError::UnknownSigns(WallId::new(1))
        );
    }

    #[test]
    fn terminal_examples() {
        let ch = finite::chain(3);
        let hs: Vec<HalfSpaceId> = (0..3).map(|i| WallId::new(i).plus()).collect();
        assert_eq!(terminal_elements(&ch, &hs), vec![hs[0], hs[2]]);
        let cube = finite::cube(3);
        let hs: Vec<HalfSpaceId> = (0..3).map(|i| WallId::new(i).plus()).collect();
        assert_eq!(terminal_elements(&cube, &hs), hs);
    }

    #[test]
    fn tripod_has_a_facing_triple() {
        let t = finite::tripod();
        let walls: Vec<WallId> = t.wall_ids().collect();
        assert!(facing_triple(&t, &walls).is_some());
        assert!(facing_triple(&finite::chain(3), &(0..3).map(WallId::new).collect::<Vec<_>>()).is_none());
    }
}
