//! The dual median graph of a finite pocset.
//!
//! Vertices are the total consistent orientations, edges join orientations
//! that differ on a single wall, and cubes are families of pairwise
//! transverse walls that can be flipped independently at a vertex.

use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pocset::{HalfSpaceId, Orientation, Pocset, PocsetError, Sign, WallId};

pub const DEFAULT_WALL_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubulationError {
    #[error("{walls} walls exceed the enumeration cap of {cap}")]
    TooLarge { walls: usize, cap: usize },
    #[error("defect: dual graph has {components} components; the pocset is not valid")]
    Disconnected { components: usize },
}

#[derive(Clone, Debug)]
pub struct MedianGraph {
    walls: usize,
    vertices: Vec<Orientation>,
    index: HashMap<Orientation, usize>,
    edges: Vec<(usize, usize, WallId)>,
    adjacency: Vec<Vec<(usize, WallId)>>,
}

pub fn cubulate(p: &Pocset) -> Result<MedianGraph, CubulationError> {
    cubulate_with(p, DEFAULT_WALL_CAP)
}

/// Enumerates vertices by depth-first sign assignment: choosing a side
/// selects everything above it, so only free walls branch.
pub fn cubulate_with(p: &Pocset, cap: usize) -> Result<MedianGraph, CubulationError> {
    if p.walls() > cap {
        return Err(CubulationError::TooLarge {
            walls: p.walls(),
            cap,
        });
    }
    let mut out = Vec::new();
    let selected = FixedBitSet::with_capacity(p.halfspace_count());
    enumerate(p, 0, selected, &mut out);
    let vertices: Vec<Orientation> = out
        .into_iter()
        .map(|sel| {
            let signs: Vec<Sign> = (0..p.walls())
                .map(|w| {
                    if sel.contains(2 * w) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            Orientation::total(&signs)
        })
        .collect();
    let g = MedianGraph::from_vertices(p.walls(), vertices);
    let components = g.components();
    if components > 1 {
        return Err(CubulationError::Disconnected { components });
    }
    Ok(g)
}

fn enumerate(p: &Pocset, wall: usize, selected: FixedBitSet, out: &mut Vec<FixedBitSet>) {
    let mut w = wall;
    while w < p.walls() && (selected.contains(2 * w) || selected.contains(2 * w + 1)) {
        w += 1;
    }
    if w == p.walls() {
        out.push(selected);
        return;
    }
    for h in [2 * w, 2 * w + 1] {
        let up = p.above(HalfSpaceId::new(h));
        // Dead ends are impossible on a valid pocset; the guard keeps
        // enumeration sound if one is handed something weaker.
        if up.ones().any(|k| selected.contains(k ^ 1)) {
            continue;
        }
        let mut next = selected.clone();
        next.union_with(up);
        enumerate(p, w + 1, next, out);
    }
}

/// Outcome of an exhaustive or sampled median check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianReport {
    pub triples_checked: u64,
    pub passed: bool,
    pub counterexample: Option<MedianFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianFailure {
    pub triple: [usize; 3],
    /// Vertices lying on geodesics between all three pairs.
    pub candidates: Vec<usize>,
}

impl MedianGraph {
    /// Builds the graph on an explicit vertex set; edges join vertices at
    /// wall distance one. No consistency check is made, so this also
    /// produces negative controls.
    pub fn from_vertices(walls: usize, vertices: Vec<Orientation>) -> MedianGraph {
        let index: HashMap<Orientation, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            for w in (0..walls).map(WallId::new) {
                if let Some(&j) = index.get(&v.flipped(w)) {
                    adjacency[i].push((j, w));
                    if i < j {
                        edges.push((i, j, w));
                    }
                }
            }
        }
        MedianGraph {
            walls,
            vertices,
            index,
            edges,
            adjacency,
        }
    }

    pub fn walls(&self) -> usize {
        self.walls
    }

    pub fn vertices(&self) -> &[Orientation] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize, WallId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, WallId)] {
        &self.adjacency[v]
    }

    pub fn index_of(&self, o: &Orientation) -> Option<usize> {
        self.index.get(o).copied()
    }

    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    fn majority(&self, t: [usize; 3]) -> Orientation {
        let [u, v, w] = t.map(|i| &self.vertices[i]);
        let signs: Vec<Sign> = (0..self.walls)
            .map(|i| {
                let i = WallId::new(i);
                let plus = [u, v, w]
                    .iter()
                    .filter(|o| o.get(i) == Some(Sign::Plus))
                    .count();
                if plus >= 2 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        Orientation::total(&signs)
    }

    /// Checks every triple: the vertices on geodesics between all three
    /// pairs (by BFS distance) must be exactly the sign-majority vertex.
    pub fn verify_median(&self) -> MedianReport {
        let n = self.vertices.len();
        let dist: Vec<Vec<u32>> = (0..n).map(|s| self.bfs_distances(s)).collect();
        let mut intervals: Vec<FixedBitSet> = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let mut b = FixedBitSet::with_capacity(n);
                if dist[u][v] != u32::MAX {
                    for x in 0..n {
                        if dist[u][x].saturating_add(dist[x][v]) == dist[u][v] {
                            b.insert(x);
                        }
                    }
                }
                intervals.push(b);
            }
        }
        let mut checked = 0u64;
        for u in 0..n {
            for v in u..n {
                for w in v..n {
                    checked += 1;
                    let mut m = intervals[u * n + v].clone();
                    m.intersect_with(&intervals[v * n + w]);
                    m.intersect_with(&intervals[u * n + w]);
                    if let Some(f) = self.check_triple([u, v, w], &m) {
                        return MedianReport {
                            triples_checked: checked,
                            passed: false,
                            counterexample: Some(f),
                        };
                    }
                }
            }
        }
        MedianReport {
            triples_checked: checked,
            passed: true,
            counterexample: None,
        }
    }

    /// Random-triple version of [`verify_median`](Self::verify_median) for large graphs.
    pub fn verify_median_sampled<R: Rng>(&self, rng: &mut R, samples: usize) -> MedianReport {
        let n = self.vertices.len();
        let mut checked = 0u64;
        if n == 0 {
            return MedianReport {
                triples_checked: 0,
                passed: true,
                counterexample: None,
            };
        }
        for _ in 0..samples {
            let t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
            let d: Vec<Vec<u32>> = t.iter().map(|&s| self.bfs_distances(s)).collect();
            let mut m = FixedBitSet::with_capacity(n);
            for x in 0..n {
                let on = |a: usize, b: usize| {
                    d[a][x] != u32::MAX && d[a][x] + d[b][x] == d[a][t[b]]
                };
                if on(0, 1) && on(1, 2) && on(0, 2) {
                    m.insert(x);
                }
            }
            checked += 1;
            if let Some(f) = self.check_triple(t, &m) {
                return MedianReport {
                    triples_checked: checked,
                    passed: false,
                    counterexample: Some(f),
                };
            }
        }
        MedianReport {
            triples_checked: checked,
            passed: true,
            counterexample: None,
        }
    }

    fn check_triple(&self, t: [usize; 3], m: &FixedBitSet) -> Option<MedianFailure> {
        let candidates: Vec<usize> = m.ones().collect();
        let expected = self.index_of(&self.majority(t));
        if candidates.len() == 1 && expected == Some(candidates[0]) {
            None
        } else {
            Some(MedianFailure {
                triple: t,
                candidates,
            })
        }
    }

    /// Number of `k`-cubes for `k = 0..=max_dim` (trailing zeros trimmed,
    /// vertices always reported). Each cube is counted once, at the corner
    /// that is on the `Minus` side of all its walls.
    pub fn enumerate_cubes(&self, p: &Pocset, max_dim: usize) -> Vec<u64> {
        let mut census = vec![0u64; max_dim + 1];
        census[0] = self.vertices.len() as u64;
        if max_dim == 0 {
            return census;
        }
        for v in &self.vertices {
            let candidates: Vec<WallId> = (0..self.walls)
                .map(WallId::new)
                .filter(|&w| v.get(w) == Some(Sign::Minus) && self.index.contains_key(&v.flipped(w)))
                .collect();
            let mut corners = vec![v.clone()];
            let mut chosen = Vec::new();
            self.extend_cube(p, &candidates, 0, &mut chosen, &mut corners, &mut census, max_dim);
        }
        while census.len() > 1 && *census.last().unwrap() == 0 {
            census.pop();
        }
        census
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_cube(
        &self,
        p: &Pocset,
        candidates: &[WallId],
        from: usize,
        chosen: &mut Vec<WallId>,
        corners: &mut Vec<Orientation>,
        census: &mut [u64],
        max_dim: usize,
    ) {
        if chosen.len() == max_dim {
            return;
        }
        for i in from..candidates.len() {
            let w = candidates[i];
            if !chosen.iter().all(|&c| p.walls_transverse(c, w)) {
                continue;
            }
            let flipped: Vec<Orientation> = corners.iter().map(|c| c.flipped(w)).collect();
            if !flipped.iter().all(|c| self.index.contains_key(c)) {
                continue;
            }
            let before = corners.len();
            corners.extend(flipped);
            chosen.push(w);
            census[chosen.len()] += 1;
            self.extend_cube(p, candidates, i + 1, chosen, corners, census, max_dim);
            chosen.pop();
            corners.truncate(before);
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph median {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{}\"];\n", v.signs()));
        }
        for &(i, j, w) in &self.edges {
            s.push_str(&format!("  v{i} -- v{j} [label=\"{}\"];\n", w.0));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_export(&self, census: &[u64]) -> GraphExport {
        GraphExport {
            vertices: self.vertices.iter().map(Orientation::signs).collect(),
            edges: self.edges.iter().map(|&(i, j, w)| [i, j, w.index()]).collect(),
            cubes: census
                .iter()
                .enumerate()
                .map(|(d, &c)| (d.to_string(), c))
                .collect(),
        }
    }
}

/// JSON shape of an exported median graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 3]>,
    pub cubes: BTreeMap<String, u64>,
}

/// Extends a pairwise intersecting family to a vertex, or returns `None`
/// if two members are disjoint.
///
/// Walls left free after closing the family upward are set to `Minus`
/// first, each followed by its own upward closure. On a valid pocset such
/// an extension never fails.
pub fn helly_check(p: &Pocset, hs: &[HalfSpaceId]) -> Result<Option<Orientation>, PocsetError> {
    for &h in hs {
        p.check(h)?;
    }
    if !p.is_consistent_set(hs) {
        return Ok(None);
    }
    let mut selected = FixedBitSet::with_capacity(p.halfspace_count());
    for &h in hs {
        selected.union_with(p.above(h));
    }
    for w in p.wall_ids() {
        if selected.contains(w.plus().index()) || selected.contains(w.minus().index()) {
            continue;
        }
        selected.union_with(p.above(w.minus()));
    }
    let signs: Vec<Sign> = p
        .wall_ids()
        .map(|w| {
            if selected.contains(w.plus().index()) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    let o = Orientation::total(&signs);
    debug_assert!(p.is_consistent(&o));
    Ok(Some(o))
}
