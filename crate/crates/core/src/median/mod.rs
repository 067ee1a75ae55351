//! Medians, intervals, interval embeddings and lifting decompositions.

mod bridge;
mod measure;

pub use bridge::{bridge, delta_count, strongly_separated, Bridge, BridgeEndpoints, Separation};
pub use measure::{classify_measure, facing_triple, terminal_elements, Measure, MeasureClassification};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubulation::MedianGraph;
use crate::pocset::{HalfSpaceId, Orientation, Pocset, PocsetError, Sign, WallId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MedianError {
    #[error("orientations are not total over the same walls")]
    IncompatibleDomains,
    #[error("interval is a truncation and has no finite embedding")]
    NotFinite,
    #[error("kept walls and the lifting set do not partition the walls")]
    NotAPartition,
    #[error("lifting set is not consistent and upward closed")]
    InconsistentS,
    #[error("half-spaces {0} and {1} are not disjoint")]
    NotDisjoint(HalfSpaceId, HalfSpaceId),
    #[error("weights do not form a probability vector")]
    NotAProbability,
    #[error("a support point has no sign on wall {0}")]
    UnknownSigns(WallId),
    #[error(transparent)]
    Pocset(#[from] PocsetError),
}

/// Sign-majority vertex of three total orientations.
pub fn median(u: &Orientation, v: &Orientation, w: &Orientation) -> Result<Orientation, MedianError> {
    let n = u.walls();
    if v.walls() != n || w.walls() != n || !u.is_total() || !v.is_total() || !w.is_total() {
        return Err(MedianError::IncompatibleDomains);
    }
    let signs: Vec<Sign> = (0..n)
        .map(WallId::new)
        .map(|i| {
            let plus = [u, v, w].iter().filter(|o| o.get(i) == Some(Sign::Plus)).count();
            if plus >= 2 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    Ok(Orientation::total(&signs))
}

/// The interval `I(v, w)`: all points whose orientation contains `U_v ∩ U_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub v: Orientation,
    pub w: Orientation,
    /// Walls on which `v` and `w` disagree.
    pub separating: Vec<WallId>,
    /// `U_v ∩ U_w`, restricted to walls known in both endpoints.
    pub shared_plus: Vec<HalfSpaceId>,
    /// False when the endpoints are only known on part of the walls.
    pub finite: bool,
}

impl Interval {
    pub fn new(v: &Orientation, w: &Orientation) -> Result<Interval, MedianError> {
        if v.walls() != w.walls() || !v.is_total() || !w.is_total() {
            return Err(MedianError::IncompatibleDomains);
        }
        Ok(Self::build(v, w, true))
    }

    /// Interval between partially known endpoints; only walls known on both sides count.
    pub fn truncated(v: &Orientation, w: &Orientation) -> Result<Interval, MedianError> {
        if v.walls() != w.walls() {
            return Err(MedianError::IncompatibleDomains);
        }
        let total = v.is_total() && w.is_total();
        Ok(Self::build(v, w, total))
    }

    fn build(v: &Orientation, w: &Orientation, finite: bool) -> Interval {
        let mut separating = Vec::new();
        let mut shared_plus = Vec::new();
        for i in (0..v.walls()).map(WallId::new) {
            match (v.get(i), w.get(i)) {
                (Some(a), Some(b)) if a == b => shared_plus.push(i.half(a)),
                (Some(_), Some(_)) => separating.push(i),
                _ => {}
            }
        }
        Interval {
            v: v.clone(),
            w: w.clone(),
            separating,
            shared_plus,
            finite,
        }
    }

    pub fn contains(&self, x: &Orientation) -> bool {
        self.shared_plus.iter().all(|&h| x.contains(h))
    }

    /// Indices of the graph's vertices inside the interval.
    pub fn vertices(&self, g: &MedianGraph) -> Vec<usize> {
        (0..g.vertex_count())
            .filter(|&i| self.contains(&g.vertices()[i]))
            .collect()
    }

    /// Half-spaces containing `w` but not `v`.
    pub fn oriented_separating(&self) -> Vec<HalfSpaceId> {
        self.separating
            .iter()
            .map(|&i| i.half(self.w.get(i).expect("separating walls are known")))
            .collect()
    }

    /// Ordered vertex pairs `(x, y)` among `candidates` with `I(x, y) = I(v, w)`.
    /// For points of the interval this means `x` and `y` disagree on every separating wall.
    pub fn endpoint_pairs(&self, g: &MedianGraph, candidates: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in candidates {
            for &b in candidates {
                let (x, y) = (&g.vertices()[a], &g.vertices()[b]);
                if self.separating.iter().all(|&i| x.get(i) != y.get(i)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A minimum chain partition of the separating half-spaces and the
/// induced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    /// Each chain is increasing for `⊂`.
    pub chains: Vec<Vec<HalfSpaceId>>,
}

impl Embedding {
    pub fn dimension(&self) -> usize {
        self.chains.len()
    }

    /// Per-chain count of half-spaces containing `x`.
    pub fn coordinates(&self, x: &Orientation) -> Vec<u32> {
        self.chains
            .iter()
            .map(|c| c.iter().filter(|&&h| x.contains(h)).count() as u32)
            .collect()
    }
}

/// Partitions the separating half-spaces of a finite interval into the
/// minimum number of chains (Dilworth), via maximum bipartite matching on
/// the strict order. The number of chains is the width of the order.
pub fn dilworth_embed(p: &Pocset, i: &Interval) -> Result<Embedding, MedianError> {
    if !i.finite {
        return Err(MedianError::NotFinite);
    }
    let hs = i.oriented_separating();
    for &h in &hs {
        p.check(h)?;
    }
    let n = hs.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| p.lt(hs[a], hs[b])).collect())
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let mut seen = FixedBitSet::with_capacity(n);
        augment(a, &succ, &mut seen, &mut match_right);
    }
    let mut next = vec![None; n];
    let mut has_pred = vec![false; n];
    for (b, m) in match_right.iter().enumerate() {
        if let Some(a) = *m {
            next[a] = Some(b);
            has_pred[b] = true;
        }
    }
    let chains = (0..n)
        .filter(|&a| !has_pred[a])
        .map(|start| {
            let mut c = vec![hs[start]];
            let mut cur = start;
            while let Some(b) = next[cur] {
                c.push(hs[b]);
                cur = b;
            }
            c
        })
        .collect();
    Ok(Embedding { chains })
}

fn augment(a: usize, succ: &[Vec<usize>], seen: &mut FixedBitSet, match_right: &mut [Option<usize>]) -> bool {
    for &b in &succ[a] {
        if seen.contains(b) {
            continue;
        }
        seen.insert(b);
        if match_right[b].is_none() || augment(match_right[b].unwrap(), succ, seen, match_right) {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// The embedding of the complex on the kept walls into the full complex,
/// given by adding a fixed consistent set on the discarded walls.
#[derive(Clone, Debug)]
pub struct LiftedView {
    pub keep: Vec<WallId>,
    pub s: Vec<HalfSpaceId>,
    pub sub: Pocset,
    walls: usize,
}

/// Checks that `keep ⊔ walls(s)` partitions the walls and that `s` is
/// consistent and upward closed, then returns the view.
pub fn lifting_project(p: &Pocset, keep: &[WallId], s: &[HalfSpaceId]) -> Result<LiftedView, MedianError> {
    let mut owner = vec![0u8; p.walls()];
    for &w in keep {
        p.check_wall(w)?;
        owner[w.index()] += 1;
    }
    let mut set = FixedBitSet::with_capacity(p.halfspace_count());
    for &h in s {
        p.check(h)?;
        owner[h.wall().index()] += 1;
        set.insert(h.index());
    }
    if owner.iter().any(|&c| c != 1) {
        return Err(MedianError::NotAPartition);
    }
    if !p.is_consistent_set(s) || s.iter().any(|&h| !p.above(h).is_subset(&set)) {
        return Err(MedianError::InconsistentS);
    }
    Ok(LiftedView {
        keep: keep.to_vec(),
        s: s.to_vec(),
        sub: p.restrict(keep),
        walls: p.walls(),
    })
}

impl LiftedView {
    /// `U ↦ U ⊔ s`.
    pub fn lift(&self, o: &Orientation) -> Orientation {
        let mut out = Orientation::empty(self.walls);
        for (j, &w) in self.keep.iter().enumerate() {
            if let Some(sign) = o.get(WallId::new(j)) {
                out.set(w, sign);
            }
        }
        for &h in &self.s {
            out.set(h.wall(), h.sign());
        }
        out
    }

    /// Forgets the discarded walls.
    pub fn project(&self, o: &Orientation) -> Orientation {
        let mut out = Orientation::empty(self.keep.len());
        for (j, &w) in self.keep.iter().enumerate() {
            if let Some(sign) = o.get(w) {
                out.set(WallId::new(j), sign);
            }
        }
        out
    }

    /// Vertices of `g` lying in every half-space of `s`.
    pub fn image(&self, g: &MedianGraph) -> Vec<usize> {
        (0..g.vertex_count())
            .filter(|&i| self.s.iter().all(|&h| g.vertices()[i].contains(h)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubulation::cubulate;
    use crate::finite;

    #[test]
    fn median_with_repeat_is_the_repeat() {
        let a = Orientation::parse("+-+").unwrap();
        let b = Orientation::parse("--+").unwrap();
        assert_eq!(median(&a, &a, &b).unwrap(), a);
        assert_eq!(
            median(&a, &b, &Orientation::parse("+?+").unwrap()),
            Err(MedianError::IncompatibleDomains)
        );
    }

    #[test]
    fn grid_median_example() {
        let g = |x, y| finite::grid_vertex(4, 4, x, y);
        assert_eq!(median(&g(0, 0), &g(3, 1), &g(1, 3)).unwrap(), g(1, 1));
    }

    #[test]
    fn grid_interval_and_embedding() {
        let sp = finite::grid(4, 4);
        let graph = cubulate(&sp.pocset).unwrap();
        let i = Interval::new(&finite::grid_vertex(4, 4, 0, 0), &finite::grid_vertex(4, 4, 2, 3)).unwrap();
        let vs = i.vertices(&graph);
        assert_eq!(vs.len(), 12);
        let e = dilworth_embed(&sp.pocset, &i).unwrap();
        assert_eq!(e.dimension(), 2);
        let mut image: Vec<Vec<u32>> = vs.iter().map(|&v| e.coordinates(&graph.vertices()[v])).collect();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 12);
        assert_eq!(i.endpoint_pairs(&graph, &vs).len(), 4);
    }

    #[test]
    fn degenerate_interval() {
        let v = finite::grid_vertex(3, 3, 1, 1);
        let i = Interval::new(&v, &v).unwrap();
        assert!(i.separating.is_empty());
        let sp = finite::grid(3, 3);
        let graph = cubulate(&sp.pocset).unwrap();
        assert_eq!(i.vertices(&graph).len(), 1);
    }

    #[test]
    fn tree_interval_is_geodesic() {
        let t = finite::path(7);
        let g = cubulate(&t.pocset).unwrap();
        let i = Interval::new(&t.points[1], &t.points[6]).unwrap();
        assert_eq!(i.vertices(&g).len(), 6);
        let e = dilworth_embed(&t.pocset, &i).unwrap();
        assert_eq!(e.dimension(), 1);
        let coords: Vec<u32> = (1..7).map(|x| e.coordinates(&t.points[x])[0]).collect();
        assert_eq!(coords, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn square_diagonal_embeds_in_the_unit_square() {
        let p = finite::square();
        let i = Interval::new(&Orientation::parse("--").unwrap(), &Orientation::parse("++").unwrap()).unwrap();
        let e = dilworth_embed(&p, &i).unwrap();
        assert_eq!(e.dimension(), 2);
        assert_eq!(e.coordinates(&Orientation::parse("+-").unwrap()), vec![1, 0]);
    }

    #[test]
    fn truncated_interval_has_no_embedding() {
        let p = finite::square();
        let i = Interval::truncated(&Orientation::parse("-?").unwrap(), &Orientation::parse("+?").unwrap()).unwrap();
        assert_eq!(dilworth_embed(&p, &i), Err(MedianError::NotFinite));
    }

    #[test]
    fn lifting_examples() {
        let sq = finite::square();
        let g = cubulate(&sq).unwrap();
        let id = lifting_project(&sq, &[WallId::new(0), WallId::new(1)], &[]).unwrap();
        assert_eq!(id.image(&g).len(), 4);
        let edge = lifting_project(&sq, &[WallId::new(0)], &[WallId::new(1).plus()]).unwrap();
        assert_eq!(edge.image(&g).len(), 2);
        assert_eq!(edge.lift(&Orientation::parse("-").unwrap()).signs(), "-+");

        let grid = finite::grid(3, 3);
        let gg = cubulate(&grid.pocset).unwrap();
        let keep: Vec<WallId> = (0..2).map(finite::grid_vertical_wall).collect();
        let s: Vec<HalfSpaceId> = (0..2).map(|j| finite::grid_horizontal_wall(3, j).minus()).collect();
        let view = lifting_project(&grid.pocset, &keep, &s).unwrap();
        let line: Vec<usize> = (0..3).map(|x| gg.index_of(&finite::grid_vertex(3, 3, x, 0)).unwrap()).collect();
        let mut img = view.image(&gg);
        img.sort();
        let mut expect = line.clone();
        expect.sort();
        assert_eq!(img, expect);
    }

    #[test]
    fn lifting_rejects_bad_input() {
        let ch = finite::chain(2);
        assert_eq!(
            lifting_project(&ch, &[WallId::new(0)], &[]).unwrap_err(),
            MedianError::NotAPartition
        );
        // h1* selects h0* by upward closure, which is not kept.
        assert_eq!(
            lifting_project(&ch, &[WallId::new(0)], &[WallId::new(1).minus()]).unwrap_err(),
            MedianError::InconsistentS
        );
    }
}
