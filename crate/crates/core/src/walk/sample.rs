use std::collections::HashMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{StepDistribution, WalkError};
use crate::group::{Edit, Element, Letter, Preset, Raag, Wall, DEFAULT_BUDGET};
use crate::pocset::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub steps: usize,
    pub paths: usize,
    pub seed: u64,
    /// Walls dual to edges of the ball of this radius are monitored.
    pub monitor_radius: usize,
}

/// Final state of one monitored wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    /// Side holding the final position.
    pub sign: Sign,
    /// Step of the last crossing, 0 if never crossed.
    pub last_change: u32,
    pub crossings: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRun {
    pub index: usize,
    pub steps: usize,
    /// `|ω′_k|_o` for `k = 0..=steps`.
    pub norms: Vec<u32>,
    pub position: Element,
    /// Per factor, the last crossing step of the wall dual to each edge
    /// of the final normal form, read from the basepoint outward.
    pub edge_last: Vec<Vec<u32>>,
    /// Aligned with [`WalkBatch::monitored`].
    pub monitored: Vec<WallRecord>,
    /// Number of distinct walls crossed.
    pub walls_crossed: usize,
}

impl WalkRun {
    pub fn final_norm(&self) -> usize {
        self.norms[self.steps] as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkBatch {
    pub steps: usize,
    pub seed: u64,
    pub stream: u64,
    pub monitored: Vec<Wall>,
    pub runs: Vec<WalkRun>,
}

const ROOT: u32 = 0;

/// Prefix tree of normal forms, so that words are identified by a node id.
#[derive(Default)]
struct Trie {
    children: HashMap<(u32, Letter), u32>,
    len: u32,
}

impl Trie {
    fn new() -> Trie {
        Trie {
            children: HashMap::new(),
            len: 1,
        }
    }

    fn child(&mut self, node: u32, l: Letter) -> u32 {
        let next = self.len;
        let id = *self.children.entry((node, l)).or_insert(next);
        if id == next {
            self.len += 1;
        }
        id
    }

    fn find(&self, word: &[Letter]) -> Option<u32> {
        word.iter()
            .try_fold(ROOT, |node, &l| self.children.get(&(node, l)).copied())
    }
}

/// One factor's normal form with the trie node of every prefix. Abelian
/// factors keep an exponent vector instead, and a wall's coset is then
/// determined by the exponent of its own generator.
struct FactorWalk<'a> {
    raag: &'a Raag,
    word: Vec<Letter>,
    nodes: Vec<u32>,
    trie: Trie,
    exponents: Option<Vec<i64>>,
}

/// Interleaves signs so that exponents become node ids.
fn zigzag(e: i64) -> u32 {
    ((e << 1) ^ (e >> 63)) as u32
}

fn exponent_of(word: &[Letter], generator: usize) -> i64 {
    word.iter()
        .filter(|l| l.generator() == generator)
        .map(|l| if l.is_inverse() { -1 } else { 1 })
        .sum()
}

impl<'a> FactorWalk<'a> {
    fn new(raag: &'a Raag) -> Self {
        FactorWalk {
            raag,
            word: Vec::new(),
            nodes: Vec::new(),
            trie: Trie::new(),
            exponents: raag.is_abelian().then(|| vec![0; raag.rank()]),
        }
    }

    fn len(&self) -> usize {
        match &self.exponents {
            Some(e) => e.iter().map(|x| x.unsigned_abs() as usize).sum(),
            None => self.word.len(),
        }
    }

    /// Crosses the wall dual to the edge from the current vertex along
    /// `l`; returns the wall's node and the side entered.
    fn step(&mut self, l: Letter) -> (u32, Sign) {
        let g = l.generator();
        if let Some(e) = &mut self.exponents {
            return if l.is_inverse() {
                e[g] -= 1;
                (zigzag(e[g]), Sign::Minus)
            } else {
                e[g] += 1;
                (zigzag(e[g] - 1), Sign::Plus)
            };
        }
        if l.is_inverse() {
            self.push(l);
            (self.coset_node(self.word.len(), g), Sign::Minus)
        } else {
            let node = self.coset_node(self.word.len(), g);
            self.push(l);
            (node, Sign::Plus)
        }
    }

    /// Materializes the normal form of an abelian factor.
    fn finish(&mut self) {
        if let Some(e) = &self.exponents {
            self.word = e
                .iter()
                .enumerate()
                .flat_map(|(g, &x)| std::iter::repeat_n(Letter::new(g, x < 0), x.unsigned_abs() as usize))
                .collect();
        }
    }

    /// Node of the wall with coset representative `coset`, if ever crossed.
    fn find(&self, coset: &[Letter], generator: usize) -> Option<u32> {
        match self.exponents {
            Some(_) => Some(zigzag(exponent_of(coset, generator))),
            None => self.trie.find(coset),
        }
    }

    /// Node of the wall dual to edge `i` of the final normal form.
    fn edge_node(&mut self, i: usize) -> u32 {
        let l = self.word[i];
        let len = if l.is_inverse() { i + 1 } else { i };
        match self.exponents {
            Some(_) => zigzag(exponent_of(&self.word[..len], l.generator())),
            None => self.coset_node(len, l.generator()),
        }
    }

    fn push(&mut self, l: Letter) {
        let from = match self.raag.push_letter(&mut self.word, l) {
            Edit::Removed(i) | Edit::Inserted(i) => i,
        };
        self.nodes.truncate(from);
        let mut node = if from == 0 { ROOT } else { self.nodes[from - 1] };
        for &y in &self.word[from..] {
            node = self.trie.child(node, y);
            self.nodes.push(node);
        }
    }

    /// Node of the coset representative of `word[..len]·⟨lk s⟩`; mirrors
    /// `Raag::strip_suffix_in` but only scans the stripped tail.
    fn coset_node(&mut self, len: usize, generator: usize) -> u32 {
        let r = self.raag;
        let mask = r.link(generator);
        let mut blocked = 0u64;
        let mut kept = Vec::new();
        let mut base = None;
        for i in (0..len).rev() {
            let y = self.word[i];
            if mask & y.bit() != 0 && blocked & !r.link(y.generator()) == 0 {
                continue;
            }
            blocked |= y.bit();
            if r.blocks_all(blocked, mask) {
                base = Some(i);
                break;
            }
            kept.push(y);
        }
        let mut node = base.map_or(ROOT, |i| self.nodes[i]);
        for &y in kept.iter().rev() {
            node = self.trie.child(node, y);
        }
        node
    }
}

#[derive(Clone, Copy)]
struct Crossing {
    last: u32,
    count: u32,
    sign: Sign,
}

fn wall_key(factor: usize, generator: usize, node: u32) -> u64 {
    (factor as u64) << 56 | (generator as u64) << 48 | node as u64
}

/// Samples `paths` independent runs. Run `i` draws from the ChaCha8 stream
/// `(stream << 32) | i` of `seed`, so results do not depend on scheduling.
pub fn sample_paths(p: &Preset, mu: &StepDistribution, cfg: &WalkConfig) -> Result<WalkBatch, WalkError> {
    sample_paths_with_stream(p, mu, cfg, 0)
}

pub fn sample_paths_with_stream(
    p: &Preset,
    mu: &StepDistribution,
    cfg: &WalkConfig,
    stream: u64,
) -> Result<WalkBatch, WalkError> {
    let weights: Vec<f64> = mu.support().iter().map(|(_, w)| *w).collect();
    let index = WeightedIndex::new(&weights).map_err(|e| WalkError::InvalidDistribution(e.to_string()))?;
    let atoms: Vec<Vec<(usize, Letter)>> = mu
        .support()
        .iter()
        .map(|(x, _)| {
            x.parts
                .iter()
                .enumerate()
                .flat_map(|(f, w)| w.iter().map(move |&l| (f, l)))
                .collect()
        })
        .collect();
    let monitored = p.walls_within(cfg.monitor_radius, DEFAULT_BUDGET)?;
    let runs = (0..cfg.paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(stream << 32 | i as u64);
            run_one(p, &atoms, &index, &mut rng, cfg.steps, &monitored, i)
        })
        .collect();
    Ok(WalkBatch {
        steps: cfg.steps,
        seed: cfg.seed,
        stream,
        monitored,
        runs,
    })
}

fn run_one(
    p: &Preset,
    atoms: &[Vec<(usize, Letter)>],
    index: &WeightedIndex<f64>,
    rng: &mut ChaCha8Rng,
    steps: usize,
    monitored: &[Wall],
    run_index: usize,
) -> WalkRun {
    let mut factors: Vec<FactorWalk> = p.factors().iter().map(FactorWalk::new).collect();
    let mut crossings: HashMap<u64, Crossing> = HashMap::new();
    let mut norms = Vec::with_capacity(steps + 1);
    norms.push(0u32);
    let mut norm = 0usize;
    for k in 1..=steps as u32 {
        for &(f, l) in &atoms[index.sample(rng)] {
            let fw = &mut factors[f];
            let before = fw.len();
            let (node, sign) = fw.step(l);
            norm = norm + fw.len() - before;
            crossings
                .entry(wall_key(f, l.generator(), node))
                .and_modify(|c| {
                    c.last = k;
                    c.count += 1;
                    c.sign = sign;
                })
                .or_insert(Crossing { last: k, count: 1, sign });
        }
        norms.push(norm as u32);
    }

    let mut edge_last = Vec::with_capacity(factors.len());
    for (f, fw) in factors.iter_mut().enumerate() {
        fw.finish();
        let mut lasts = Vec::with_capacity(fw.word.len());
        for i in 0..fw.word.len() {
            let node = fw.edge_node(i);
            let g = fw.word[i].generator();
            lasts.push(crossings.get(&wall_key(f, g, node)).map_or(0, |c| c.last));
        }
        edge_last.push(lasts);
    }

    let o = p.identity();
    let records = monitored
        .iter()
        .map(|w| {
            let fw = &factors[w.factor];
            fw.find(&w.coset, w.generator)
                .and_then(|node| crossings.get(&wall_key(w.factor, w.generator, node)))
                .map_or(
                    WallRecord {
                        sign: p.side(&o, w),
                        last_change: 0,
                        crossings: 0,
                    },
                    |c| WallRecord {
                        sign: c.sign,
                        last_change: c.last,
                        crossings: c.count,
                    },
                )
        })
        .collect();

    WalkRun {
        index: run_index,
        steps,
        norms,
        position: Element {
            parts: factors.iter().map(|fw| fw.word.clone()).collect(),
        },
        edge_last,
        monitored: records,
        walls_crossed: crossings.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(steps: usize, paths: usize, seed: u64) -> WalkConfig {
        WalkConfig {
            steps,
            paths,
            seed,
            monitor_radius: 2,
        }
    }

    #[test]
    fn zero_steps_stay_home() {
        let p = Preset::parse("f2").unwrap();
        let b = sample_paths(&p, &StepDistribution::uniform(&p), &cfg(0, 5, 1)).unwrap();
        assert!(b.runs.iter().all(|r| p.is_identity(&r.position) && r.norms == vec![0]));
    }

    #[test]
    fn tracked_signs_match_direct_computation() {
        for preset in ["f2", "z2", "f2xz1"] {
            let p = Preset::parse(preset).unwrap();
            let b = sample_paths(&p, &StepDistribution::uniform(&p), &cfg(300, 4, 9)).unwrap();
            for run in &b.runs {
                assert_eq!(run.final_norm(), p.norm(&run.position));
                for (w, rec) in b.monitored.iter().zip(&run.monitored) {
                    assert_eq!(rec.sign, p.side(&run.position, w), "{preset}");
                    assert_eq!(rec.crossings % 2 == 1, p.side(&p.identity(), w) != rec.sign);
                }
            }
        }
    }

    #[test]
    fn edge_walls_were_crossed_last_at_the_recorded_step() {
        let p = Preset::parse("z2").unwrap();
        let b = sample_paths(&p, &StepDistribution::uniform(&p), &cfg(200, 3, 4)).unwrap();
        for run in &b.runs {
            for (f, lasts) in run.edge_last.iter().enumerate() {
                assert_eq!(lasts.len(), run.position.parts[f].len());
                assert!(lasts.iter().all(|&t| t >= 1 && t as usize <= run.steps));
            }
        }
    }
}
