//! Half-space systems (pocsets).
//!
//! A pocset is a finite set of half-spaces with a fixed-point free,
//! order-reversing involution `h -> h*` and a containment partial order.
//! Half-space ids are dense: `2i` and `2i + 1` are the two sides of wall
//! `i`, so the involution is `id ^ 1`. The containment order is stored
//! transitively closed as one bitset per half-space, which makes every
//! relation query O(1).

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One side of a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfSpaceId(pub u32);

/// An unordered pair `{h, h*}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WallId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl HalfSpaceId {
    pub fn new(index: usize) -> Self {
        HalfSpaceId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn complement(self) -> Self {
        HalfSpaceId(self.0 ^ 1)
    }

    pub fn wall(self) -> WallId {
        WallId(self.0 >> 1)
    }

    /// `Plus` for the even member of the pair.
    pub fn sign(self) -> Sign {
        if self.0 & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for HalfSpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}{}", self.0 >> 1, self.sign().as_char())
    }
}

impl WallId {
    pub fn new(index: usize) -> Self {
        WallId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn half(self, sign: Sign) -> HalfSpaceId {
        match sign {
            Sign::Plus => HalfSpaceId(self.0 << 1),
            Sign::Minus => HalfSpaceId((self.0 << 1) | 1),
        }
    }

    pub fn plus(self) -> HalfSpaceId {
        self.half(Sign::Plus)
    }

    pub fn minus(self) -> HalfSpaceId {
        self.half(Sign::Minus)
    }
}

impl fmt::Display for WallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

/// How two half-spaces sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    /// `h ⊂ k`
    ContainedIn,
    /// `k ⊂ h`
    Contains,
    /// `h ⊂ k*`, i.e. `h ∩ k = ∅`. Also returned for `k = h*`.
    DisjointFrom,
    /// `h* ⊂ k`, i.e. `h ∪ k` is everything.
    UnionAll,
    Transverse,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PocsetError {
    #[error("unknown half-space {0}")]
    UnknownHalfSpace(HalfSpaceId),
    #[error("unknown wall {0}")]
    UnknownWall(WallId),
    #[error("orientation is not total")]
    PartialOrientation,
    #[error("orientation has {found} walls, pocset has {expected}")]
    WallCountMismatch { expected: usize, found: usize },
    #[error("invalid pocset: {}", format_violations(.0))]
    Violations(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A single failed pocset axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    UnknownId { id: u32 },
    NonPositiveDimension,
    BelowComplement { h: HalfSpaceId },
    Antisymmetry { h: HalfSpaceId, k: HalfSpaceId },
    TransverseWidth { bound: usize, witness: Vec<WallId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownId { id } => write!(f, "half-space id {id} out of range"),
            Violation::NonPositiveDimension => write!(f, "dimension bound must be positive"),
            Violation::BelowComplement { h } => {
                write!(f, "half-space below its complement: {h} <= {}", h.complement())
            }
            Violation::Antisymmetry { h, k } => {
                write!(f, "antisymmetry fails: {h} <= {k} and {k} <= {h}")
            }
            Violation::TransverseWidth { bound, witness } => write!(
                f,
                "{} pairwise transverse walls exceed dimension bound {bound}: {:?}",
                witness.len(),
                witness.iter().map(|w| w.0).collect::<Vec<_>>()
            ),
        }
    }
}

/// The on-disk pocset format: `{"walls": N, "leq": [[h,k],...], "dimension_bound": D}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PocsetSpec {
    pub walls: usize,
    #[serde(default)]
    pub leq: Vec<[u32; 2]>,
    pub dimension_bound: usize,
}

impl PocsetSpec {
    pub fn from_json(text: &str) -> Result<PocsetSpec, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of the transverse-antichain width check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WidthCheck {
    /// Exact size of the largest family of pairwise transverse walls.
    Exact(usize),
    /// Search budget ran out; the bound was not exceeded by anything found.
    Incomplete { largest_found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Strict relations present after closure but absent from the input.
    pub closure_added: usize,
    pub width: WidthCheck,
}

/// Recursion budget for the exact clique search in the transversality graph.
const CLIQUE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pocset {
    walls: usize,
    dimension_bound: usize,
    /// `above[h]` = `{k : h ≤ k}`, reflexive and transitively closed.
    above: Vec<FixedBitSet>,
    /// Wall-level transversality graph.
    transverse: Vec<FixedBitSet>,
}

/// Checks the pocset axioms, closes the order and returns the pocset.
///
/// Involution duals (`k* ≤ h*` for every `h ≤ k`) and transitive
/// consequences are added silently; every other axiom failure is
/// collected into [`PocsetError::Violations`].
pub fn validate_pocset(spec: &PocsetSpec) -> Result<(Pocset, ValidationReport), PocsetError> {
    let n = spec.walls * 2;
    let mut violations = Vec::new();
    if spec.dimension_bound == 0 && spec.walls > 0 {
        violations.push(Violation::NonPositiveDimension);
    }
    let mut above: Vec<FixedBitSet> = (0..n)
        .map(|h| {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert(h);
            b
        })
        .collect();
    let mut given = 0usize;
    let mut given_pairs = std::collections::HashSet::new();
    for &[h, k] in &spec.leq {
        if h as usize >= n || k as usize >= n {
            violations.push(Violation::UnknownId { id: h.max(k) });
            continue;
        }
        if h != k && given_pairs.insert((h, k)) {
            given += 1;
        }
        above[h as usize].insert(k as usize);
        above[(k ^ 1) as usize].insert((h ^ 1) as usize);
    }
    if !violations.is_empty() {
        return Err(PocsetError::Violations(violations));
    }
    // Warshall closure on bit rows.
    for k in 0..n {
        for h in 0..n {
            if h != k && above[h].contains(k) {
                let row = above[k].clone();
                above[h].union_with(&row);
            }
        }
    }
    let strict_pairs: usize = above.iter().map(|b| b.count_ones(..) - 1).sum();
    for h in 0..n {
        if above[h].contains(h ^ 1) {
            violations.push(Violation::BelowComplement {
                h: HalfSpaceId::new(h),
            });
        }
        for k in (h + 1)..n {
            if k != (h ^ 1) && above[h].contains(k) && above[k].contains(h) {
                violations.push(Violation::Antisymmetry {
                    h: HalfSpaceId::new(h),
                    k: HalfSpaceId::new(k),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(PocsetError::Violations(violations));
    }
    let transverse = transversality(spec.walls, &above);
    let width = transverse_width(&transverse, spec.dimension_bound);
    match &width {
        WidthOutcome::Exceeds(witness) => {
            return Err(PocsetError::Violations(vec![Violation::TransverseWidth {
                bound: spec.dimension_bound,
                witness: witness.iter().map(|&w| WallId::new(w)).collect(),
            }]))
        }
        WidthOutcome::Ok(_) => {}
    }
    let pocset = Pocset {
        walls: spec.walls,
        dimension_bound: spec.dimension_bound,
        above,
        transverse,
    };
    let report = ValidationReport {
        closure_added: strict_pairs.saturating_sub(given),
        width: match width {
            WidthOutcome::Ok(w) => w,
            WidthOutcome::Exceeds(_) => unreachable!(),
        },
    };
    Ok((pocset, report))
}

fn transversality(walls: usize, above: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut t: Vec<FixedBitSet> = (0..walls).map(|_| FixedBitSet::with_capacity(walls)).collect();
    for a in 0..walls {
        for b in (a + 1)..walls {
            let nested = [2 * a, 2 * a + 1]
                .iter()
                .any(|&h| above[h].contains(2 * b) || above[h].contains(2 * b + 1));
            if !nested {
                t[a].insert(b);
                t[b].insert(a);
            }
        }
    }
    t
}

enum WidthOutcome {
    Ok(WidthCheck),
    Exceeds(Vec<usize>),
}

/// Bron–Kerbosch with pivoting; stops as soon as a clique larger than `bound` appears.
fn transverse_width(graph: &[FixedBitSet], bound: usize) -> WidthOutcome {
    struct Search<'a> {
        graph: &'a [FixedBitSet],
        bound: usize,
        best: Vec<usize>,
        calls: usize,
        exhausted_budget: bool,
    }
    impl Search<'_> {
        fn run(&mut self, r: &mut Vec<usize>, p: FixedBitSet, x: FixedBitSet) -> bool {
            self.calls += 1;
            if self.calls > CLIQUE_BUDGET {
                self.exhausted_budget = true;
                return false;
            }
            if p.is_clear() && x.is_clear() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
                return r.len() > self.bound;
            }
            if r.len() + p.count_ones(..) <= self.best.len() {
                return false;
            }
            let pivot = p
                .ones()
                .chain(x.ones())
                .max_by_key(|&u| {
                    let mut c = p.clone();
                    c.intersect_with(&self.graph[u]);
                    c.count_ones(..)
                })
                .expect("p or x nonempty");
            let mut candidates = p.clone();
            candidates.difference_with(&self.graph[pivot]);
            let mut p = p;
            let mut x = x;
            for v in candidates.ones().collect::<Vec<_>>() {
                r.push(v);
                let mut p2 = p.clone();
                p2.intersect_with(&self.graph[v]);
                let mut x2 = x.clone();
                x2.intersect_with(&self.graph[v]);
                if self.run(r, p2, x2) {
                    return true;
                }
                r.pop();
                p.set(v, false);
                x.insert(v);
            }
            false
        }
    }
    let n = graph.len();
    if n == 0 {
        return WidthOutcome::Ok(WidthCheck::Exact(0));
    }
    let mut s = Search {
        graph,
        bound,
        best: Vec::new(),
        calls: 0,
        exhausted_budget: false,
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let exceeded = s.run(&mut Vec::new(), all, FixedBitSet::with_capacity(n));
    if exceeded {
        return WidthOutcome::Exceeds(s.best);
    }
    if s.exhausted_budget {
        WidthOutcome::Ok(WidthCheck::Incomplete {
            largest_found: s.best.len(),
        })
    } else {
        WidthOutcome::Ok(WidthCheck::Exact(s.best.len()))
    }
}

impl Pocset {
    /// Builds a pocset from a walled space: each wall is given by the set
    /// of points on its `Plus` side, as a subset of `0..points`. Containment
    /// of half-spaces is containment of point sets.
    ///
    /// Panics if a side is empty or two walls coincide; such input is not
    /// a walled space.
    pub fn from_walled_space(points: usize, plus_sides: &[Vec<bool>], dimension_bound: usize) -> Pocset {
        let n = plus_sides.len() * 2;
        let sides: Vec<Vec<bool>> = plus_sides
            .iter()
            .flat_map(|s| {
                assert_eq!(s.len(), points);
                assert!(s.iter().any(|&b| b) && s.iter().any(|&b| !b), "empty side");
                [s.clone(), s.iter().map(|&b| !b).collect()]
            })
            .collect();
        let mut leq = Vec::new();
        for h in 0..n {
            for k in 0..n {
                if h != k && sides[h].iter().zip(&sides[k]).all(|(&a, &b)| !a || b) {
                    leq.push([h as u32, k as u32]);
                }
            }
        }
        let spec = PocsetSpec {
            walls: plus_sides.len(),
            leq,
            dimension_bound,
        };
        validate_pocset(&spec).expect("walled space yields a valid pocset").0
    }

    pub fn walls(&self) -> usize {
        self.walls
    }

    pub fn halfspace_count(&self) -> usize {
        self.walls * 2
    }

    pub fn dimension_bound(&self) -> usize {
        self.dimension_bound
    }

    pub fn wall_ids(&self) -> impl Iterator<Item = WallId> {
        (0..self.walls).map(WallId::new)
    }

    pub fn halfspaces(&self) -> impl Iterator<Item = HalfSpaceId> {
        (0..self.walls * 2).map(HalfSpaceId::new)
    }

    pub fn check(&self, h: HalfSpaceId) -> Result<(), PocsetError> {
        if h.index() < self.walls * 2 {
            Ok(())
        } else {
            Err(PocsetError::UnknownHalfSpace(h))
        }
    }

    pub fn check_wall(&self, w: WallId) -> Result<(), PocsetError> {
        if w.index() < self.walls {
            Ok(())
        } else {
            Err(PocsetError::UnknownWall(w))
        }
    }

    /// `h ≤ k` (reflexive). Ids must be in range.
    pub fn leq(&self, h: HalfSpaceId, k: HalfSpaceId) -> bool {
        self.above[h.index()].contains(k.index())
    }

    /// `h ⊊ k`.
    pub fn lt(&self, h: HalfSpaceId, k: HalfSpaceId) -> bool {
        h != k && self.leq(h, k)
    }

    /// Everything above `h`, including `h`.
    pub fn above(&self, h: HalfSpaceId) -> &FixedBitSet {
        &self.above[h.index()]
    }

    pub fn walls_transverse(&self, a: WallId, b: WallId) -> bool {
        self.transverse[a.index()].contains(b.index())
    }

    pub fn transverse(&self, h: HalfSpaceId, k: HalfSpaceId) -> bool {
        self.walls_transverse(h.wall(), k.wall())
    }

    pub fn transverse_walls(&self, w: WallId) -> impl Iterator<Item = WallId> + '_ {
        self.transverse[w.index()].ones().map(WallId::new)
    }

    pub fn relation(&self, h: HalfSpaceId, k: HalfSpaceId) -> Result<Relation, PocsetError> {
        self.check(h)?;
        self.check(k)?;
        Ok(self.relation_unchecked(h, k))
    }

    pub(crate) fn relation_unchecked(&self, h: HalfSpaceId, k: HalfSpaceId) -> Relation {
        if h == k {
            Relation::Equal
        } else if h == k.complement() {
            Relation::DisjointFrom
        } else if self.leq(h, k) {
            Relation::ContainedIn
        } else if self.leq(k, h) {
            Relation::Contains
        } else if self.leq(h, k.complement()) {
            Relation::DisjointFrom
        } else if self.leq(h.complement(), k) {
            Relation::UnionAll
        } else {
            Relation::Transverse
        }
    }

    /// Consistency of a (possibly partial) orientation: no two selected
    /// half-spaces are disjoint. Within the domain this is the same as
    /// upward closure.
    pub fn is_consistent(&self, o: &Orientation) -> bool {
        if o.walls() != self.walls {
            return false;
        }
        let selected = o.selected_set();
        let mut complements = FixedBitSet::with_capacity(self.walls * 2);
        for h in selected.ones() {
            complements.insert(h ^ 1);
        }
        selected
            .ones()
            .all(|h| self.above[h].is_disjoint(&complements))
    }

    /// Whether a set of half-spaces is consistent (no disjoint pair, no complementary pair).
    pub fn is_consistent_set(&self, hs: &[HalfSpaceId]) -> bool {
        hs.iter().all(|&h| {
            hs.iter()
                .all(|&k| !matches!(self.relation_unchecked(h, k), Relation::DisjointFrom))
        })
    }

    /// True iff the complements of `hs` are pairwise disjoint.
    pub fn is_facing(&self, hs: &[HalfSpaceId]) -> Result<bool, PocsetError> {
        for &h in hs {
            self.check(h)?;
        }
        for (i, &h) in hs.iter().enumerate() {
            for &k in &hs[i + 1..] {
                if self.relation_unchecked(h, k) != Relation::UnionAll {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Number of walls on which two total orientations disagree.
    pub fn wall_pseudo_distance(&self, u: &Orientation, v: &Orientation) -> Result<usize, PocsetError> {
        for o in [u, v] {
            if o.walls() != self.walls {
                return Err(PocsetError::WallCountMismatch {
                    expected: self.walls,
                    found: o.walls(),
                });
            }
            if !o.is_total() {
                return Err(PocsetError::PartialOrientation);
            }
        }
        Ok(u.disagreements(v))
    }

    /// Exports the closed order in the file format (strict pairs only).
    pub fn to_spec(&self) -> PocsetSpec {
        let mut leq = Vec::new();
        for h in 0..self.walls * 2 {
            for k in self.above[h].ones() {
                if k != h {
                    leq.push([h as u32, k as u32]);
                }
            }
        }
        PocsetSpec {
            walls: self.walls,
            leq,
            dimension_bound: self.dimension_bound,
        }
    }

    /// Induced pocset on a subset of walls, re-indexed in the given order.
    pub fn restrict(&self, keep: &[WallId]) -> Pocset {
        let n = keep.len() * 2;
        let ids: Vec<usize> = keep
            .iter()
            .flat_map(|w| [w.plus().index(), w.minus().index()])
            .collect();
        let above = ids
            .iter()
            .map(|&h| {
                let mut b = FixedBitSet::with_capacity(n);
                for (j, &k) in ids.iter().enumerate() {
                    if self.above[h].contains(k) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        let transverse = keep
            .iter()
            .map(|a| {
                let mut b = FixedBitSet::with_capacity(keep.len());
                for (j, c) in keep.iter().enumerate() {
                    if self.walls_transverse(*a, *c) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        Pocset {
            walls: keep.len(),
            dimension_bound: self.dimension_bound,
            above,
            transverse,
        }
    }
}

/// A partial or total sign assignment on walls. `Plus` selects `2i`,
/// `Minus` selects `2i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    known: FixedBitSet,
    plus: FixedBitSet,
}

impl Orientation {
    pub fn empty(walls: usize) -> Self {
        Orientation {
            known: FixedBitSet::with_capacity(walls),
            plus: FixedBitSet::with_capacity(walls),
        }
    }

    pub fn total(signs: &[Sign]) -> Self {
        let mut o = Orientation::empty(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            o.set(WallId::new(i), s);
        }
        o
    }

    /// Parses `"+-?+"`; `?` (or `.`) leaves a wall unassigned.
    pub fn parse(s: &str) -> Option<Self> {
        let mut o = Orientation::empty(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '+' => o.set(WallId::new(i), Sign::Plus),
                '-' => o.set(WallId::new(i), Sign::Minus),
                '?' | '.' => {}
                _ => return None,
            }
        }
        Some(o)
    }

    pub fn walls(&self) -> usize {
        self.known.len()
    }

    pub fn get(&self, w: WallId) -> Option<Sign> {
        if !self.known.contains(w.index()) {
            None
        } else if self.plus.contains(w.index()) {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    pub fn set(&mut self, w: WallId, s: Sign) {
        self.known.insert(w.index());
        self.plus.set(w.index(), s == Sign::Plus);
    }

    pub fn clear(&mut self, w: WallId) {
        self.known.set(w.index(), false);
        self.plus.set(w.index(), false);
    }

    pub fn flip(&mut self, w: WallId) {
        if let Some(s) = self.get(w) {
            self.set(w, s.flip());
        }
    }

    pub fn flipped(&self, w: WallId) -> Self {
        let mut o = self.clone();
        o.flip(w);
        o
    }

    pub fn is_total(&self) -> bool {
        self.known.is_full()
    }

    pub fn domain(&self) -> impl Iterator<Item = WallId> + '_ {
        self.known.ones().map(WallId::new)
    }

    /// Whether `h` is the selected side of its wall.
    pub fn contains(&self, h: HalfSpaceId) -> bool {
        self.get(h.wall()) == Some(h.sign())
    }

    pub fn selected(&self) -> impl Iterator<Item = HalfSpaceId> + '_ {
        self.known.ones().map(|w| {
            let w = WallId::new(w);
            w.half(if self.plus.contains(w.index()) {
                Sign::Plus
            } else {
                Sign::Minus
            })
        })
    }

    /// The selected half-spaces as a bitset over `0..2N`.
    pub fn selected_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.walls() * 2);
        for h in self.selected() {
            s.insert(h.index());
        }
        s
    }

    /// Walls known in both orientations with differing signs.
    pub fn disagreements(&self, other: &Orientation) -> usize {
        let mut both = self.known.clone();
        both.intersect_with(&other.known);
        let mut diff = self.plus.clone();
        diff.symmetric_difference_with(&other.plus);
        diff.intersect_with(&both);
        diff.count_ones(..)
    }

    pub fn disagreeing_walls(&self, other: &Orientation) -> Vec<WallId> {
        (0..self.walls().min(other.walls()))
            .map(WallId::new)
            .filter(|&w| matches!((self.get(w), other.get(w)), (Some(a), Some(b)) if a != b))
            .collect()
    }

    pub fn signs(&self) -> String {
        (0..self.walls())
            .map(|i| self.get(WallId::new(i)).map_or('?', Sign::as_char))
            .collect()
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation({})", self.signs())
    }
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.signs())
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Orientation::parse(&s).ok_or_else(|| serde::de::Error::custom("expected a string over +-?"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite;

    fn h(i: u32) -> HalfSpaceId {
        HalfSpaceId(i)
    }

    #[test]
    fn involution_pairs_even_and_odd() {
        for i in 0..20 {
            let x = h(i);
            assert_eq!(x.complement().complement(), x);
            assert_ne!(x.complement(), x);
            assert_eq!(x.wall(), x.complement().wall());
        }
    }

    #[test]
    fn two_walls_without_order_are_transverse() {
        let (p, report) = validate_pocset(&PocsetSpec {
            walls: 2,
            leq: vec![],
            dimension_bound: 2,
        })
        .unwrap();
        assert_eq!(report.width, WidthCheck::Exact(2));
        assert_eq!(p.relation(h(0), h(2)).unwrap(), Relation::Transverse);
        assert_eq!(p.relation(h(1), h(3)).unwrap(), Relation::Transverse);
    }

    #[test]
    fn closure_adds_involution_duals() {
        let (p, report) = validate_pocset(&PocsetSpec {
            walls: 2,
            leq: vec![[0, 2]],
            dimension_bound: 1,
        })
        .unwrap();
        assert_eq!(report.closure_added, 1);
        assert!(p.leq(h(3), h(1)));
    }

    #[test]
    fn below_complement_is_rejected() {
        let err = validate_pocset(&PocsetSpec {
            walls: 1,
            leq: vec![[0, 1]],
            dimension_bound: 1,
        })
        .unwrap_err();
        let PocsetError::Violations(v) = err else { panic!() };
        assert!(v.iter().any(|x| matches!(x, Violation::BelowComplement { .. })));
        assert!(v[0].to_string().contains("half-space below its complement"));
    }

    #[test]
    fn antisymmetry_failures_are_reported_not_repaired() {
        let err = validate_pocset(&PocsetSpec {
            walls: 2,
            leq: vec![[0, 2], [2, 0]],
            dimension_bound: 1,
        })
        .unwrap_err();
        let PocsetError::Violations(v) = err else { panic!() };
        assert!(v.iter().any(|x| matches!(x, Violation::Antisymmetry { .. })));
    }

    #[test]
    fn width_above_bound_is_rejected() {
        let err = validate_pocset(&PocsetSpec {
            walls: 3,
            leq: vec![],
            dimension_bound: 2,
        })
        .unwrap_err();
        let PocsetError::Violations(v) = err else { panic!() };
        assert!(matches!(&v[0], Violation::TransverseWidth { witness, .. } if witness.len() == 3));
    }

    #[test]
    fn out_of_range_ids_are_rejected() {
        assert!(validate_pocset(&PocsetSpec {
            walls: 1,
            leq: vec![[0, 7]],
            dimension_bound: 1,
        })
        .is_err());
    }

    #[test]
    fn chain_relations() {
        let p = finite::chain(2);
        let (a, b) = (h(0), h(2));
        assert_eq!(p.relation(a, b).unwrap(), Relation::ContainedIn);
        assert_eq!(p.relation(b, a).unwrap(), Relation::Contains);
        assert_eq!(p.relation(a, b.complement()).unwrap(), Relation::DisjointFrom);
        assert_eq!(p.relation(a.complement(), b).unwrap(), Relation::UnionAll);
        assert_eq!(p.relation(a, a.complement()).unwrap(), Relation::DisjointFrom);
        assert_eq!(p.relation(a, a).unwrap(), Relation::Equal);
        assert!(matches!(p.relation(a, h(9)), Err(PocsetError::UnknownHalfSpace(_))));
    }

    #[test]
    fn consistency_examples() {
        let sq = finite::square();
        assert!(sq.is_consistent(&Orientation::parse("++").unwrap()));
        assert!(sq.is_consistent(&Orientation::empty(2)));
        let ch = finite::chain(2);
        // h0 ⊂ h2: selecting h0 and h2* is inconsistent.
        assert!(!ch.is_consistent(&Orientation::parse("+-").unwrap()));
        assert!(ch.is_consistent(&Orientation::parse("++").unwrap()));
        assert!(ch.is_consistent(&Orientation::parse("-+").unwrap()));
        assert!(ch.is_consistent(&Orientation::parse("--").unwrap()));
        assert!(!ch.is_consistent(&Orientation::parse("+?").unwrap().tap_set(1, Sign::Minus)));
    }

    trait TapSet {
        fn tap_set(self, w: usize, s: Sign) -> Self;
    }
    impl TapSet for Orientation {
        fn tap_set(mut self, w: usize, s: Sign) -> Self {
            self.set(WallId::new(w), s);
            self
        }
    }

    #[test]
    fn facing_examples() {
        let tri = finite::tripod();
        let inward: Vec<_> = (0..3).map(|w| WallId::new(w).minus()).collect();
        assert!(tri.is_facing(&inward).unwrap());
        let sq = finite::square();
        assert!(!sq.is_facing(&[h(0), h(2)]).unwrap());
        let ch = finite::chain(2);
        assert!(!ch.is_facing(&[h(0), h(2)]).unwrap());
    }

    #[test]
    fn distance_examples() {
        let sq = finite::square();
        let pp = Orientation::parse("++").unwrap();
        let mp = Orientation::parse("-+").unwrap();
        assert_eq!(sq.wall_pseudo_distance(&pp, &pp).unwrap(), 0);
        assert_eq!(sq.wall_pseudo_distance(&pp, &mp).unwrap(), 1);
        let cube = finite::cube(3);
        let a = Orientation::parse("+++").unwrap();
        let b = Orientation::parse("---").unwrap();
        assert_eq!(cube.wall_pseudo_distance(&a, &b).unwrap(), 3);
        assert_eq!(
            sq.wall_pseudo_distance(&pp, &Orientation::parse("+?").unwrap()),
            Err(PocsetError::PartialOrientation)
        );
    }

    #[test]
    fn restrict_keeps_induced_order() {
        let g = finite::grid(3, 2).pocset;
        let cols: Vec<WallId> = (0..2).map(WallId::new).collect();
        let sub = g.restrict(&cols);
        assert_eq!(sub.walls(), 2);
        assert_eq!(sub.relation(h(0), h(2)).unwrap(), g.relation(h(0), h(2)).unwrap());
    }

    #[test]
    fn orientation_json_is_a_sign_string() {
        let o = Orientation::parse("+-?").unwrap();
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(s, "\"+-?\"");
        let back: Orientation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, o);
    }
}
