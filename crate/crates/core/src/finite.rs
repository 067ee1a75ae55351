//! Small finite pocsets used as fixtures and as a test corpus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::pocset::{validate_pocset, Orientation, Pocset, PocsetSpec, Sign, WallId};

/// A pocset together with the points of the walled space it came from.
#[derive(Clone, Debug)]
pub struct WalledSpace {
    pub pocset: Pocset,
    /// `points[i]` is the orientation `U_i` of the i-th point.
    pub points: Vec<Orientation>,
}

impl WalledSpace {
    /// `plus_sides[w][x]` says whether point `x` is on the `Plus` side of wall `w`.
    pub fn new(points: usize, plus_sides: &[Vec<bool>], dimension_bound: usize) -> WalledSpace {
        let pocset = Pocset::from_walled_space(points, plus_sides, dimension_bound);
        let points = (0..points)
            .map(|x| {
                let signs: Vec<Sign> = plus_sides
                    .iter()
                    .map(|s| if s[x] { Sign::Plus } else { Sign::Minus })
                    .collect();
                Orientation::total(&signs)
            })
            .collect();
        WalledSpace { pocset, points }
    }
}

fn from_pairs(walls: usize, leq: &[[u32; 2]], dimension_bound: usize) -> Pocset {
    validate_pocset(&PocsetSpec {
        walls,
        leq: leq.to_vec(),
        dimension_bound,
    })
    .expect("fixture is valid")
    .0
}

/// Two transverse walls.
pub fn square() -> Pocset {
    cube(2)
}

/// `n` pairwise transverse walls.
pub fn cube(n: usize) -> Pocset {
    from_pairs(n, &[], n.max(1))
}

/// Walls `0..n` with `h_0⁺ ⊂ h_1⁺ ⊂ … ⊂ h_{n-1}⁺`; the dual graph is a path with `n + 1` vertices.
pub fn chain(n: usize) -> Pocset {
    let leq: Vec<[u32; 2]> = (1..n as u32).map(|i| [2 * (i - 1), 2 * i]).collect();
    from_pairs(n, &leq, 1)
}

/// Three walls around a degree-3 vertex. The `Plus` side of wall `i` is the leaf branch.
pub fn tripod() -> Pocset {
    star(3).pocset
}

/// A star with `k` leaves. Point 0 is the center, point `i + 1` is leaf `i`.
pub fn star(k: usize) -> WalledSpace {
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (0, i + 1)).collect();
    tree(k + 1, &edges)
}

/// The `a × b` grid of points `{0..a} × {0..b}` with its coordinate walls.
///
/// Walls `0..a-1` are vertical (`x > i` is `Plus`), walls `a-1..a+b-2` are
/// horizontal (`y > j` is `Plus`). Point `(x, y)` has index `x * b + y`.
pub fn grid(a: usize, b: usize) -> WalledSpace {
    let points = a * b;
    let mut sides = Vec::new();
    for i in 0..a.saturating_sub(1) {
        sides.push((0..points).map(|p| p / b > i).collect());
    }
    for j in 0..b.saturating_sub(1) {
        sides.push((0..points).map(|p| p % b > j).collect());
    }
    WalledSpace::new(points, &sides, 2)
}

/// Index of `(x, y)` in [`grid`].
pub fn grid_index(b: usize, x: usize, y: usize) -> usize {
    x * b + y
}

/// A tree on `n` vertices. Wall `i` is dual to `edges[i] = (u, v)`; its
/// `Plus` side is the component of `v` after removing the edge.
pub fn tree(n: usize, edges: &[(usize, usize)]) -> WalledSpace {
    assert_eq!(edges.len() + 1, n, "a tree on {n} vertices has {} edges", n - 1);
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let sides: Vec<Vec<bool>> = edges
        .iter()
        .enumerate()
        .map(|(i, &(_, v))| {
            let mut seen = vec![false; n];
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(x) = stack.pop() {
                for &(y, e) in &adj[x] {
                    if e != i && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    WalledSpace::new(n, &sides, 1)
}

/// A path with `n` vertices `0..n`; wall `i` separates `i` from `i + 1`.
pub fn path(n: usize) -> WalledSpace {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    tree(n, &edges)
}

/// A uniformly random recursive tree on `n` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> WalledSpace {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    tree(n, &edges)
}

/// A random pocset on `walls` walls built by adding random relations that
/// keep the axioms; `density` is the number of attempted insertions per wall.
pub fn random_pocset<R: Rng>(rng: &mut R, walls: usize, density: usize) -> Pocset {
    let mut leq: Vec<[u32; 2]> = Vec::new();
    let n = 2 * walls as u32;
    if walls < 2 {
        return from_pairs(walls, &leq, walls.max(1));
    }
    for _ in 0..density * walls {
        let h = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        if h >> 1 == k >> 1 {
            continue;
        }
        leq.push([h, k]);
        let ok = validate_pocset(&PocsetSpec {
            walls,
            leq: leq.clone(),
            dimension_bound: walls,
        })
        .is_ok();
        if !ok {
            leq.pop();
        }
    }
    from_pairs(walls, &leq, walls)
}

/// A random walled space: `walls` random nontrivial, pairwise distinct cuts of `points` points.
pub fn random_walled_space<R: Rng>(rng: &mut R, points: usize, walls: usize) -> WalledSpace {
    assert!(points >= 2);
    let mut sides: Vec<Vec<bool>> = Vec::new();
    let mut guard = 0;
    while sides.len() < walls && guard < 100 * walls + 100 {
        guard += 1;
        let mut s: Vec<bool> = (0..points).map(|_| rng.gen_bool(0.5)).collect();
        if s.iter().all(|&b| b) || s.iter().all(|&b| !b) {
            continue;
        }
        if !s[0] {
            s.iter_mut().for_each(|b| *b = !*b);
        }
        if !sides.contains(&s) {
            sides.push(s);
        }
    }
    sides.shuffle(rng);
    let d = sides.len().max(1);
    WalledSpace::new(points, &sides, d)
}

/// Sign vector of a grid point, for callers that only hold coordinates.
pub fn grid_vertex(a: usize, b: usize, x: usize, y: usize) -> Orientation {
    let mut signs = Vec::new();
    for i in 0..a.saturating_sub(1) {
        signs.push(if x > i { Sign::Plus } else { Sign::Minus });
    }
    for j in 0..b.saturating_sub(1) {
        signs.push(if y > j { Sign::Plus } else { Sign::Minus });
    }
    Orientation::total(&signs)
}

/// The vertical grid wall between columns `i` and `i + 1`.
pub fn grid_vertical_wall(i: usize) -> WallId {
    WallId::new(i)
}

/// The horizontal grid wall between rows `j` and `j + 1`.
pub fn grid_horizontal_wall(a: usize, j: usize) -> WallId {
    WallId::new(a - 1 + j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pocset::Relation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_points_match_coordinates() {
        let g = grid(4, 4);
        assert_eq!(g.pocset.walls(), 6);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(g.points[grid_index(4, x, y)], grid_vertex(4, 4, x, y));
            }
        }
    }

    #[test]
    fn tree_walls_are_nested_or_facing() {
        let t = path(5);
        let p = &t.pocset;
        for a in p.halfspaces() {
            for b in p.halfspaces() {
                if a.wall() != b.wall() {
                    assert_ne!(p.relation(a, b).unwrap(), Relation::Transverse);
                }
            }
        }
    }

    #[test]
    fn random_pocsets_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for w in 0..10 {
            let p = random_pocset(&mut rng, w, 2);
            assert!(validate_pocset(&p.to_spec()).is_ok());
        }
    }
}
