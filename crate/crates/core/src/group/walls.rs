//! Hyperplanes of the Salvetti universal cover and their half-spaces.
//!
//! The hyperplane dual to the edge `(g, g·s)` (with `s` a positive
//! generator) is keyed by `s` and the shortest representative of the coset
//! `g⟨lk s⟩`. Its `Plus` side is the side containing `g·s`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::preset::{Element, Preset, Step};
use super::raag::{Letter, Raag};
use super::GroupError;
use crate::median::Separation;
use crate::pocset::{Relation, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wall {
    pub factor: usize,
    pub generator: usize,
    /// Shortest element of the coset `g⟨lk s⟩`, in normal form.
    pub coset: Vec<Letter>,
}

impl Wall {
    /// Deterministic order: by factor, coset length, coset word, generator.
    pub fn sort_key(&self) -> (usize, usize, &[Letter], usize) {
        (self.factor, self.coset.len(), &self.coset, self.generator)
    }

    pub fn half(&self, sign: Sign) -> HalfSpace {
        HalfSpace {
            wall: self.clone(),
            sign,
        }
    }
}

impl PartialOrd for Wall {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Wall {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfSpace {
    pub wall: Wall,
    pub sign: Sign,
}

impl HalfSpace {
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            wall: self.wall.clone(),
            sign: self.sign.flip(),
        }
    }
}

/// Default cap on the number of elements a ball or search may visit.
pub const DEFAULT_BUDGET: usize = 2_000_000;

impl Preset {
    /// The wall crossed by the edge `(tail, tail·s)` in one factor, `s` positive.
    pub fn wall_at(&self, factor: usize, tail: &[Letter], generator: usize) -> Wall {
        let r = self.factor(factor);
        Wall {
            factor,
            generator,
            coset: r.strip_suffix_in(tail, r.link(generator)),
        }
    }

    /// The half-space entered by stepping from `x` to `x·s`.
    pub fn crossed(&self, x: &Element, s: Step) -> HalfSpace {
        let g = s.letter.generator();
        if s.letter.is_inverse() {
            let mut tail = x.parts[s.factor].clone();
            self.factor(s.factor).push_letter(&mut tail, s.letter);
            self.wall_at(s.factor, &tail, g).half(Sign::Minus)
        } else {
            self.wall_at(s.factor, &x.parts[s.factor], g).half(Sign::Plus)
        }
    }

    /// The wall dual to the edge from the identity along generator `g` of `factor`.
    pub fn unit_wall(&self, factor: usize, generator: usize) -> Wall {
        self.wall_at(factor, &[], generator)
    }

    /// Side of `x` relative to `w`.
    pub fn side(&self, x: &Element, w: &Wall) -> Sign {
        side_in(self.factor(w.factor), &x.parts[w.factor], w)
    }

    pub fn contains(&self, h: &HalfSpace, x: &Element) -> bool {
        self.side(x, &h.wall) == h.sign
    }

    pub fn translate(&self, gamma: &Element, w: &Wall) -> Wall {
        let r = self.factor(w.factor);
        let tail = r.multiply(&gamma.parts[w.factor], &w.coset);
        self.wall_at(w.factor, &tail, w.generator)
    }

    pub fn translate_half(&self, gamma: &Element, h: &HalfSpace) -> HalfSpace {
        self.translate(gamma, &h.wall).half(h.sign)
    }

    /// Whether `h ∩ k` contains a vertex.
    pub fn intersects(&self, h: &HalfSpace, k: &HalfSpace) -> bool {
        if h.wall.factor != k.wall.factor {
            return true;
        }
        if h.wall == k.wall {
            return h.sign == k.sign;
        }
        let r = self.factor(h.wall.factor);
        // A vertex of k next to its wall; if it misses h, its gate onto h
        // lies on every geodesic into h and is in k iff h ∩ k is nonempty.
        let b = boundary_vertex(r, k);
        if side_in(r, &b, &h.wall) == h.sign {
            return true;
        }
        let base = boundary_vertex(r, h);
        let gate = gate_onto(r, &base, r.link(h.wall.generator), &b);
        side_in(r, &gate, &k.wall) == k.sign
    }

    pub fn relation(&self, h: &HalfSpace, k: &HalfSpace) -> Relation {
        if h.wall == k.wall {
            return if h.sign == k.sign {
                Relation::Equal
            } else {
                Relation::DisjointFrom
            };
        }
        let (hc, kc) = (h.complement(), k.complement());
        if !self.intersects(h, &kc) {
            Relation::ContainedIn
        } else if !self.intersects(&hc, k) {
            Relation::Contains
        } else if !self.intersects(h, k) {
            Relation::DisjointFrom
        } else if !self.intersects(&hc, &kc) {
            Relation::UnionAll
        } else {
            Relation::Transverse
        }
    }

    pub fn walls_transverse(&self, a: &Wall, b: &Wall) -> bool {
        a != b && self.relation(&a.half(Sign::Plus), &b.half(Sign::Plus)) == Relation::Transverse
    }

    /// Elements with `|γ|_o ≤ k`, in breadth-first order.
    pub fn ball(&self, k: usize, budget: usize) -> Result<Vec<Element>, GroupError> {
        self.bfs(&self.steps().iter().map(|&s| self.step_element(s)).collect::<Vec<_>>(), k, budget)
            .map(|(v, _)| v)
    }

    /// Breadth-first enumeration of words of length at most `k` in `gens`
    /// (which should be closed under inverses). The flag reports whether the
    /// orbit was exhausted before depth `k`.
    pub fn bfs(&self, gens: &[Element], k: usize, budget: usize) -> Result<(Vec<Element>, bool), GroupError> {
        let mut seen: HashSet<Element> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut frontier = VecDeque::from([self.identity()]);
        let mut exhausted = false;
        for _ in 0..k {
            let mut next = VecDeque::new();
            while let Some(x) = frontier.pop_front() {
                for g in gens {
                    let y = self.multiply(&x, g);
                    if seen.insert(y.clone()) {
                        if out.len() >= budget {
                            return Err(GroupError::TooLarge { budget });
                        }
                        out.push(y.clone());
                        next.push_back(y);
                    }
                }
            }
            if next.is_empty() {
                exhausted = true;
                break;
            }
            frontier = next;
        }
        Ok((out, exhausted))
    }

    /// Walls dual to edges with both endpoints in `B_r`, sorted.
    pub fn walls_within(&self, r: usize, budget: usize) -> Result<Vec<Wall>, GroupError> {
        let ball = self.ball(r, budget)?;
        let mut walls = HashSet::new();
        for x in &ball {
            for s in self.steps() {
                if s.letter.is_inverse() {
                    continue;
                }
                let mut y = x.clone();
                self.push(&mut y, s);
                if self.norm(&y) <= r {
                    walls.insert(self.wall_at(s.factor, &x.parts[s.factor], s.letter.generator()));
                }
            }
        }
        let mut v: Vec<Wall> = walls.into_iter().collect();
        v.sort();
        Ok(v)
    }

    /// Distance from `x` to the closest vertex outside `h`; zero if `x ∉ h`.
    pub fn depth(&self, x: &Element, h: &HalfSpace) -> usize {
        if !self.contains(h, x) {
            return 0;
        }
        let r = self.factor(h.wall.factor);
        let other = boundary_vertex(r, &h.complement());
        let g = gate_onto(r, &other, r.link(h.wall.generator), &x.parts[h.wall.factor]);
        r.between(&x.parts[h.wall.factor], &g).len()
    }

    /// Strong separation of two walls of the same factor. Crossing walls
    /// are never strongly separated; the witness is then `b`.
    ///
    /// Walls crossing the `s`-wall at `gA_{lk s}` are the `u`-walls at
    /// `gxA_{lk u}` with `u ∈ lk s` and `x ∈ A_{lk s}`. So a `u`-wall crosses
    /// both walls iff `g⁻¹k ∈ A_{lk s}·A_{lk u}·A_{lk t}`, which is decided
    /// by reducing `g⁻¹k` to its shortest double coset representative. RAAG
    /// presets are therefore always decided; `_radius` exists for parity
    /// with searches in lazily explored complexes.
    pub fn strongly_separated(&self, a: &Wall, b: &Wall, _radius: usize) -> Result<Separation<Wall>, GroupError> {
        if a.factor != b.factor {
            return Err(GroupError::DifferentFactors);
        }
        if a == b {
            return Err(GroupError::SameWall);
        }
        if self.walls_transverse(a, b) {
            return Ok(Separation::No { witness: b.clone() });
        }
        let r = self.factor(a.factor);
        let (s, t) = (a.generator, b.generator);
        let mut common = r.link(s) & r.link(t);
        if common == 0 {
            return Ok(Separation::Yes);
        }
        let (x, rest) = r.split_prefix_in(&r.between(&a.coset, &b.coset), r.link(s));
        let core = r.strip_suffix_in(&rest, r.link(t));
        while common != 0 {
            let u = common.trailing_zeros() as usize;
            common &= common - 1;
            if Raag::within(&core, r.link(u)) {
                let witness = self.wall_at(a.factor, &r.multiply(&a.coset, &x), u);
                debug_assert!(self.walls_transverse(&witness, a) && self.walls_transverse(&witness, b));
                return Ok(Separation::No { witness });
            }
        }
        Ok(Separation::Yes)
    }
}

/// Side of the vertex `x` (a factor word) relative to `w`: compares the
/// distances from `x` to the two ends of the dual edge.
pub(crate) fn side_in(r: &Raag, x: &[Letter], w: &Wall) -> Sign {
    let mut v = r.between(x, &w.coset);
    match r.push_letter(&mut v, Letter::new(w.generator, false)) {
        super::raag::Edit::Removed(_) => Sign::Plus,
        super::raag::Edit::Inserted(_) => Sign::Minus,
    }
}

/// Base point of the carrier of `h` on its own side: the coset
/// representative `t` for `Minus`, `t·s` for `Plus`.
pub(crate) fn boundary_vertex(r: &Raag, h: &HalfSpace) -> Vec<Letter> {
    match h.sign {
        Sign::Minus => h.wall.coset.clone(),
        Sign::Plus => r.multiply(&h.wall.coset, &[Letter::new(h.wall.generator, false)]),
    }
}

/// Nearest point of the coset `c⟨mask⟩` to `b`.
pub(crate) fn gate_onto(r: &Raag, c: &[Letter], mask: u64, b: &[Letter]) -> Vec<Letter> {
    let u = r.between(c, b);
    let (p, _) = r.split_prefix_in(&u, mask);
    r.multiply(c, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Preset {
        Preset::parse("f2").unwrap()
    }

    #[test]
    fn unit_wall_sides() {
        let p = f2();
        let w = p.unit_wall(0, 0);
        assert_eq!(p.side(&p.identity(), &w), Sign::Minus);
        assert_eq!(p.side(&p.parse_element("a").unwrap(), &w), Sign::Plus);
        assert_eq!(p.side(&p.parse_element("a.b").unwrap(), &w), Sign::Plus);
        assert_eq!(p.side(&p.parse_element("b.a").unwrap(), &w), Sign::Minus);
    }

    #[test]
    fn z2_side_is_a_coordinate_comparison() {
        let p = Preset::parse("z2").unwrap();
        let w = p.unit_wall(0, 0);
        assert_eq!(p.side(&p.parse_element("a^3.b^5").unwrap(), &w), Sign::Plus);
        assert_eq!(p.side(&p.parse_element("b^5").unwrap(), &w), Sign::Minus);
        // The wall x = 0.5 is the same for every edge (b^k, a.b^k).
        let slid = p.wall_at(0, &p.parse_element("b^4").unwrap().parts[0], 0);
        assert_eq!(slid, w);
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(f2().ball(1, DEFAULT_BUDGET).unwrap().len(), 5);
        assert_eq!(f2().ball(3, DEFAULT_BUDGET).unwrap().len(), 53);
        assert_eq!(Preset::parse("z2").unwrap().ball(2, DEFAULT_BUDGET).unwrap().len(), 13);
        assert!(matches!(f2().ball(6, 100), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn tree_relations() {
        let p = f2();
        let wa = p.unit_wall(0, 0).half(Sign::Plus);
        let deeper = p.crossed(&p.parse_element("a").unwrap(), Step { factor: 0, letter: Letter::new(1, false) });
        assert_eq!(p.relation(&deeper, &wa), Relation::ContainedIn);
        let wb = p.unit_wall(0, 1).half(Sign::Plus);
        assert_eq!(p.relation(&wa, &wb), Relation::DisjointFrom);
        assert_eq!(p.relation(&wa.complement(), &wb.complement()), Relation::UnionAll);
    }

    #[test]
    fn grid_walls_cross() {
        let p = Preset::parse("z2").unwrap();
        let a = p.unit_wall(0, 0);
        let b = p.unit_wall(0, 1);
        assert!(p.walls_transverse(&a, &b));
        let a2 = p.translate(&p.parse_element("a^2").unwrap(), &a);
        assert_eq!(p.relation(&a2.half(Sign::Plus), &a.half(Sign::Plus)), Relation::ContainedIn);
        assert!(matches!(
            p.strongly_separated(&a, &a2, 4).unwrap(),
            Separation::No { witness } if witness.generator == 1
        ));
    }

    #[test]
    fn depth_counts_edges_to_the_far_side() {
        let p = f2();
        let h = p.unit_wall(0, 0).half(Sign::Plus);
        assert_eq!(p.depth(&p.parse_element("a^3").unwrap(), &h), 3);
        assert_eq!(p.depth(&p.identity(), &h), 0);
        assert_eq!(p.depth(&p.identity(), &h.complement()), 1);
    }
}
