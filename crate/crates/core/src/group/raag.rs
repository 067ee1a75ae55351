//! Right-angled Artin groups and their shortlex normal forms.
//!
//! Letters are ordered `a < a⁻¹ < b < b⁻¹ < …` following generator order.
//! A word is in normal form when it is reduced and lexicographically least
//! among the words obtained from it by swapping adjacent commuting letters.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

pub const MAX_GENERATORS: usize = 64;

/// A generator or its inverse, encoded as `2 * generator + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter(((generator as u16) << 1) | inverse as u16)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn bit(self) -> u64 {
        1u64 << self.generator()
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.generator(), if self.is_inverse() { "'" } else { "" })
    }
}

/// What [`Raag::push_letter`] did to the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edit {
    /// The letter cancelled against the letter formerly at this index.
    Removed(usize),
    /// The letter was inserted at this index.
    Inserted(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raag {
    names: Vec<String>,
    /// `commute[s]` has bit `t` set iff `s ≠ t` commute; this is the link of `s`.
    commute: Vec<u64>,
}

impl Raag {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Raag, GroupError> {
        if names.len() > MAX_GENERATORS {
            return Err(GroupError::InvalidPreset(format!(
                "at most {MAX_GENERATORS} generators per factor"
            )));
        }
        let mut commute = vec![0u64; names.len()];
        for &(a, b) in edges {
            if a >= names.len() || b >= names.len() || a == b {
                return Err(GroupError::InvalidPreset(format!("bad commutation edge ({a}, {b})")));
            }
            commute[a] |= 1 << b;
            commute[b] |= 1 << a;
        }
        Ok(Raag { names, commute })
    }

    /// Builds from generator names and commuting name pairs.
    pub fn from_graph(vertices: &[String], edges: &[[String; 2]]) -> Result<Raag, GroupError> {
        let find = |n: &str| {
            vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| GroupError::UnknownGenerator(n.to_string()))
        };
        let mut pairs = Vec::new();
        for [a, b] in edges {
            pairs.push((find(a)?, find(b)?));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GroupError::InvalidPreset(format!("duplicate generator {v}")));
            }
        }
        Raag::new(vertices.to_vec(), &pairs)
    }

    pub fn free(names: Vec<String>) -> Raag {
        Raag::new(names, &[]).expect("edgeless graph")
    }

    pub fn abelian(names: Vec<String>) -> Raag {
        let n = names.len();
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        Raag::new(names, &edges).expect("complete graph")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.rank() {
            for b in (a + 1)..self.rank() {
                if self.commutes(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commute[a] >> b & 1 == 1
    }

    /// Bit mask of the generators commuting with `s`, excluding `s`.
    pub fn link(&self, s: usize) -> u64 {
        self.commute[s]
    }

    pub fn all_mask(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    /// Every pair of generators commutes.
    pub fn is_abelian(&self) -> bool {
        (0..self.rank()).all(|s| self.commute[s] | (1 << s) == self.all_mask())
    }

    /// Right-multiplies a normal form by one letter, keeping it normal.
    pub fn push_letter(&self, w: &mut Vec<Letter>, x: Letter) -> Edit {
        let g = x.generator();
        let mut stop = None;
        for i in (0..w.len()).rev() {
            let y = w[i];
            if y == x.inverse() {
                w.remove(i);
                return Edit::Removed(i);
            }
            if y.generator() == g || !self.commutes(y.generator(), g) {
                stop = Some(i);
                break;
            }
        }
        let start = stop.map_or(0, |j| j + 1);
        let pos = (start..w.len()).find(|&k| w[k] > x).unwrap_or(w.len());
        w.insert(pos, x);
        Edit::Inserted(pos)
    }

    pub fn normalize(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut w = Vec::with_capacity(letters.len());
        for &x in letters {
            self.push_letter(&mut w, x);
        }
        w
    }

    pub fn multiply(&self, u: &[Letter], v: &[Letter]) -> Vec<Letter> {
        let mut w = u.to_vec();
        for &x in v {
            self.push_letter(&mut w, x);
        }
        w
    }

    pub fn inverse(&self, w: &[Letter]) -> Vec<Letter> {
        let rev: Vec<Letter> = w.iter().rev().map(|x| x.inverse()).collect();
        self.normalize(&rev)
    }

    /// `u⁻¹ v` in normal form.
    pub fn between(&self, u: &[Letter], v: &[Letter]) -> Vec<Letter> {
        let mut w = self.inverse(u);
        for &x in v {
            self.push_letter(&mut w, x);
        }
        w
    }

    /// Removes the largest suffix (up to commutation) with letters in `mask`.
    /// The result is the shortest representative of the coset `w⟨mask⟩`.
    pub fn strip_suffix_in(&self, w: &[Letter], mask: u64) -> Vec<Letter> {
        let mut blocked = 0u64;
        let mut keep = vec![true; w.len()];
        for i in (0..w.len()).rev() {
            let y = w[i];
            let s = y.generator();
            if mask & y.bit() != 0 && blocked & !self.commute[s] == 0 {
                keep[i] = false;
            } else {
                blocked |= y.bit();
                if self.blocks_all(blocked, mask) {
                    break;
                }
            }
        }
        w.iter().zip(&keep).filter(|(_, &k)| k).map(|(&y, _)| y).collect()
    }

    /// Whether every generator in `mask` fails to commute with something in `blocked`.
    pub(crate) fn blocks_all(&self, blocked: u64, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let s = m.trailing_zeros() as usize;
            m &= m - 1;
            if blocked & !self.commute[s] == 0 {
                return false;
            }
        }
        true
    }

    /// Splits `w = p · r` where `p` is the largest prefix (up to commutation)
    /// with letters in `mask`. Both parts are normal forms.
    pub fn split_prefix_in(&self, w: &[Letter], mask: u64) -> (Vec<Letter>, Vec<Letter>) {
        let mut blocked = 0u64;
        let mut prefix = Vec::new();
        let mut rest = Vec::new();
        for &y in w {
            let s = y.generator();
            if mask & y.bit() != 0 && blocked & !self.commute[s] == 0 {
                prefix.push(y);
            } else {
                blocked |= y.bit();
                rest.push(y);
            }
        }
        (self.normalize(&prefix), self.normalize(&rest))
    }

    /// Whether every letter of `w` lies in `mask`.
    pub fn within(w: &[Letter], mask: u64) -> bool {
        w.iter().all(|y| mask & y.bit() != 0)
    }

    pub fn letter_name(&self, x: Letter) -> String {
        let n = &self.names[x.generator()];
        if x.is_inverse() {
            format!("{n}^-1")
        } else {
            n.clone()
        }
    }

    pub fn format(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&x| self.letter_name(x)).collect::<Vec<_>>().join(".")
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Splits a token such as `a`, `a^-1` or `b^3` into a name and an exponent.
pub(crate) fn parse_power(token: &str) -> Result<(&str, i64), GroupError> {
    match token.split_once('^') {
        None => Ok((token, 1)),
        Some((name, e)) => e
            .parse::<i64>()
            .map(|e| (name, e))
            .map_err(|_| GroupError::UnknownGenerator(token.to_string())),
    }
}
