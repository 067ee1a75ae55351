//! Combinatorial bridges, strong separation and the nesting count.

use serde::{Deserialize, Serialize};

use super::MedianError;
use crate::cubulation::MedianGraph;
use crate::pocset::{HalfSpaceId, Pocset, Relation, WallId};

/// Three-valued strong separation certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separation<W> {
    /// No wall is transverse to both.
    Yes,
    /// A wall transverse to both.
    No { witness: W },
    /// Nothing found within the searched radius.
    Unknown { radius: usize },
}

impl<W> Separation<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Separation::Yes)
    }
}

/// Exhaustive strong separation test in a finite pocset. Crossing walls
/// are never strongly separated; the witness is then `k`'s own wall.
pub fn strongly_separated(p: &Pocset, h: HalfSpaceId, k: HalfSpaceId) -> Result<Separation<WallId>, MedianError> {
    p.check(h)?;
    p.check(k)?;
    if p.transverse(h, k) {
        return Ok(Separation::No { witness: k.wall() });
    }
    let witness = p
        .transverse_walls(h.wall())
        .find(|&w| w != k.wall() && p.walls_transverse(w, k.wall()));
    Ok(match witness {
        Some(witness) => Separation::No { witness },
        None => Separation::Yes,
    })
}

/// `#{ℓ : h ⊆ ℓ ⊆ k*}` for disjoint `h`, `k`.
pub fn delta_count(p: &Pocset, h: HalfSpaceId, k: HalfSpaceId) -> Result<usize, MedianError> {
    p.check(h)?;
    p.check(k)?;
    let kc = k.complement();
    if h == kc || !p.leq(h, kc) {
        return Err(MedianError::NotDisjoint(h, k));
    }
    Ok(p.above(h).ones().filter(|&l| p.leq(HalfSpaceId::new(l), kc)).count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BridgeEndpoints {
    /// `B(h1, h2) = I(x1, x2)` with `x_i` the unique bridge vertex in `h_i`.
    Unique { x1: usize, x2: usize },
    /// The pair is not strongly separated; the bridge vertices in each `h_i` are listed.
    NotStronglySeparated {
        witness: WallId,
        in_h1: Vec<usize>,
        in_h2: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub beta: Vec<HalfSpaceId>,
    /// Graph vertices in every half-space of `beta`.
    pub vertices: Vec<usize>,
    pub endpoints: BridgeEndpoints,
}

/// `ĥ ⊂ h`: one side of `a`'s wall is a proper subset of `h`.
fn hat_below(p: &Pocset, a: HalfSpaceId, h: HalfSpaceId) -> bool {
    p.lt(a, h) || p.lt(a.complement(), h)
}

/// The bridge between disjoint half-spaces `h1 ⊊ h2*`.
pub fn bridge(p: &Pocset, g: &MedianGraph, h1: HalfSpaceId, h2: HalfSpaceId) -> Result<Bridge, MedianError> {
    p.check(h1)?;
    p.check(h2)?;
    if h1 == h2.complement() || p.relation(h1, h2)? != Relation::DisjointFrom {
        return Err(MedianError::NotDisjoint(h1, h2));
    }
    let beta: Vec<HalfSpaceId> = p
        .halfspaces()
        .filter(|&h| {
            let under1 = hat_below(p, h1, h);
            let under2 = hat_below(p, h2, h);
            (under1 && p.transverse(h2, h)) || (under2 && p.transverse(h1, h)) || (under1 && under2)
        })
        .collect();
    let vertices: Vec<usize> = (0..g.vertex_count())
        .filter(|&i| beta.iter().all(|&h| g.vertices()[i].contains(h)))
        .collect();
    let inside = |h: HalfSpaceId| -> Vec<usize> {
        vertices
            .iter()
            .copied()
            .filter(|&i| g.vertices()[i].contains(h))
            .collect()
    };
    let (in_h1, in_h2) = (inside(h1), inside(h2));
    let endpoints = match strongly_separated(p, h1, h2)? {
        Separation::No { witness } => BridgeEndpoints::NotStronglySeparated { witness, in_h1, in_h2 },
        _ => {
            assert!(
                in_h1.len() == 1 && in_h2.len() == 1,
                "strongly separated pair with non-unique bridge endpoints"
            );
            BridgeEndpoints::Unique {
                x1: in_h1[0],
                x2: in_h2[0],
            }
        }
    };
    Ok(Bridge {
        beta,
        vertices,
        endpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubulation::cubulate;
    use crate::finite;

    #[test]
    fn tree_bridge_between_walls_three_apart() {
        // Walls 0 and 3 of a path; the bridge is the geodesic from vertex 0 to 4.
        let t = finite::path(7);
        let g = cubulate(&t.pocset).unwrap();
        let h1 = WallId::new(0).minus();
        let h2 = WallId::new(3).plus();
        let b = bridge(&t.pocset, &g, h1, h2).unwrap();
        let mut vs: Vec<usize> = b.vertices.iter().map(|&i| t.points.iter().position(|p| *p == g.vertices()[i]).unwrap()).collect();
        vs.sort();
        assert_eq!(vs, vec![0, 1, 2, 3, 4]);
        assert_eq!(delta_count(&t.pocset, h1, h2).unwrap(), 4);
        let BridgeEndpoints::Unique { x1, x2 } = b.endpoints else { panic!() };
        assert_eq!(g.vertices()[x1], t.points[0]);
        assert_eq!(g.vertices()[x2], t.points[4]);
    }

    #[test]
    fn adjacent_walls() {
        let t = finite::path(5);
        let g = cubulate(&t.pocset).unwrap();
        let (h1, h2) = (WallId::new(1).minus(), WallId::new(2).plus());
        assert_eq!(delta_count(&t.pocset, h1, h2).unwrap(), 2);
        let b = bridge(&t.pocset, &g, h1, h2).unwrap();
        assert_eq!(b.vertices.len(), 3);
    }

    #[test]
    fn grid_parallel_walls_are_not_strongly_separated() {
        let sp = finite::grid(4, 3);
        let g = cubulate(&sp.pocset).unwrap();
        let h1 = finite::grid_vertical_wall(0).minus();
        let h2 = finite::grid_vertical_wall(2).plus();
        assert_eq!(delta_count(&sp.pocset, h1, h2).unwrap(), 3);
        let b = bridge(&sp.pocset, &g, h1, h2).unwrap();
        assert!(matches!(b.endpoints, BridgeEndpoints::NotStronglySeparated { .. }));
        assert!(matches!(
            strongly_separated(&sp.pocset, h1, h2).unwrap(),
            Separation::No { witness } if witness.index() >= 3
        ));
    }

    #[test]
    fn nondisjoint_input_is_rejected() {
        let t = finite::path(4);
        let g = cubulate(&t.pocset).unwrap();
        let h = WallId::new(0).plus();
        assert!(bridge(&t.pocset, &g, h, WallId::new(1).plus()).is_err());
        assert!(delta_count(&t.pocset, h, h.complement()).is_err());
    }
}
