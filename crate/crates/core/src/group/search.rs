//! Searches over group balls: essentiality, flipping, skewering, facing
//! tuples and ping-pong tables. Every returned element is checked with the
//! relation oracle first.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::preset::{Element, Preset};
use super::walls::{HalfSpace, Wall};
use super::GroupError;
use crate::pocset::{Relation, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Essentiality {
    Trivial,
    HalfEssential,
    Essential,
    Unknown { radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialityReport {
    pub class: Essentiality,
    /// Deepest orbit point found on the `Plus` side, and its depth.
    pub plus: Option<(String, usize)>,
    pub minus: Option<(String, usize)>,
    pub orbit_size: usize,
    pub exhausted: bool,
}

fn closed_generators(p: &Preset, subgroup: Option<&[Element]>) -> Vec<Element> {
    match subgroup {
        None => p.steps().into_iter().map(|s| p.step_element(s)).collect(),
        Some(gens) => {
            let mut out: Vec<Element> = Vec::new();
            for g in gens {
                for x in [g.clone(), p.inverse(g)] {
                    if !p.is_identity(&x) && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
            out
        }
    }
}

/// Breadth-first search over words of length `≤ radius` in `gens`,
/// returning the first element accepted by `pred`.
fn first_match<F>(p: &Preset, gens: &[Element], radius: usize, budget: usize, mut pred: F) -> Result<Option<Element>, GroupError>
where
    F: FnMut(&Element) -> bool,
{
    let mut seen: HashSet<Element> = HashSet::from([p.identity()]);
    let mut layer = vec![p.identity()];
    if pred(&layer[0]) {
        return Ok(Some(p.identity()));
    }
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for g in gens {
                let y = p.multiply(x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > budget {
                        return Err(GroupError::TooLarge { budget });
                    }
                    if pred(&y) {
                        return Ok(Some(y));
                    }
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(None)
}

/// Classifies `w` by the depth of orbit points on each side, over words of
/// length `≤ radius` in the subgroup generators (the whole group by default).
/// A side counts as deep when some orbit point is more than `radius / 2`
/// away from the other side.
pub fn essentiality(
    p: &Preset,
    w: &Wall,
    radius: usize,
    subgroup: Option<&[Element]>,
    budget: usize,
) -> Result<EssentialityReport, GroupError> {
    let gens = closed_generators(p, subgroup);
    let (orbit, exhausted) = p.bfs(&gens, radius, budget)?;
    let mut best: [Option<(usize, &Element)>; 2] = [None, None];
    for x in &orbit {
        for (i, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
            let d = p.depth(x, &w.half(sign));
            if d > 0 && best[i].is_none_or(|(b, _)| d > b) {
                best[i] = Some((d, x));
            }
        }
    }
    let deep = |b: &Option<(usize, &Element)>| b.is_some_and(|(d, _)| 2 * d > radius);
    let class = match (deep(&best[0]), deep(&best[1])) {
        (true, true) => Essentiality::Essential,
        (true, false) | (false, true) => Essentiality::HalfEssential,
        _ if exhausted => Essentiality::Trivial,
        _ => Essentiality::Unknown { radius },
    };
    let fmt = |b: Option<(usize, &Element)>| b.map(|(d, x)| (p.format_element(x), d));
    Ok(EssentialityReport {
        class,
        plus: fmt(best[0]),
        minus: fmt(best[1]),
        orbit_size: orbit.len(),
        exhausted,
    })
}

/// Finds `γ` with `h* ⊊ γh`.
pub fn flip_search(
    p: &Preset,
    h: &HalfSpace,
    radius: usize,
    subgroup: Option<&[Element]>,
    budget: usize,
) -> Result<Option<Element>, GroupError> {
    let gens = closed_generators(p, subgroup);
    let hc = h.complement();
    first_match(p, &gens, radius, budget, |g| {
        p.relation(&hc, &p.translate_half(g, h)) == Relation::ContainedIn
    })
}

/// For `h ⊊ k`, finds `γ` with `γk ⊊ h`.
pub fn double_skewer_search(
    p: &Preset,
    h: &HalfSpace,
    k: &HalfSpace,
    radius: usize,
    subgroup: Option<&[Element]>,
    budget: usize,
) -> Result<Option<Element>, GroupError> {
    if p.relation(h, k) != Relation::ContainedIn {
        return Err(GroupError::NotNested);
    }
    let gens = closed_generators(p, subgroup);
    first_match(p, &gens, radius, budget, |g| {
        p.relation(&p.translate_half(g, k), h) == Relation::ContainedIn
    })
}

/// Searches walls dual to edges in `B_r`, for `r = 1..=radius`, for `n`
/// half-spaces with pairwise disjoint complements (optionally pairwise
/// strongly separated with certificate `Yes`). Restricted to one factor
/// when `factor` is given. Sides containing the basepoint are tried first.
pub fn facing_tuple_search(
    p: &Preset,
    n: usize,
    radius: usize,
    require_strong_separation: bool,
    factor: Option<usize>,
    budget: usize,
) -> Result<Option<Vec<HalfSpace>>, GroupError> {
    assert!(n >= 2, "facing tuples have at least two members");
    let o = p.identity();
    for r in 1..=radius {
        let walls: Vec<Wall> = p
            .walls_within(r, budget)?
            .into_iter()
            .filter(|w| factor.is_none_or(|f| w.factor == f))
            .collect();
        let cands: Vec<HalfSpace> = walls
            .iter()
            .flat_map(|w| {
                let near = p.side(&o, w);
                [w.half(near), w.half(near.flip())]
            })
            .collect();
        let m = cands.len();
        let mut ok = vec![vec![false; m]; m];
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = (&cands[i], &cands[j]);
                let mut good = a.wall != b.wall && p.relation(a, b) == Relation::UnionAll;
                if good && require_strong_separation {
                    good = a.wall.factor == b.wall.factor
                        && p.strongly_separated(&a.wall, &b.wall, radius)?.is_yes();
                }
                ok[i][j] = good;
                ok[j][i] = good;
            }
        }
        let mut chosen = Vec::new();
        if clique(&ok, n, 0, &mut chosen) {
            return Ok(Some(chosen.into_iter().map(|i| cands[i].clone()).collect()));
        }
    }
    Ok(None)
}

fn clique(ok: &[Vec<bool>], n: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == n {
        return true;
    }
    for i in from..ok.len() {
        if chosen.iter().all(|&c| ok[c][i]) {
            chosen.push(i);
            if clique(ok, n, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Half-spaces `A, aA*, B, bB*` and the elements `a, b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongTable {
    pub a_side: HalfSpace,
    pub a_image: HalfSpace,
    pub b_side: HalfSpace,
    pub b_image: HalfSpace,
    pub a: Element,
    pub b: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeReport {
    pub a: String,
    pub b: String,
    pub max_length: usize,
    pub words_checked: u64,
    /// Reduced words that were trivial or fixed the basepoint.
    pub failures: Vec<String>,
    pub min_norm: usize,
    /// The inclusions the table rests on, as checked.
    pub table: Vec<String>,
}

impl FreeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the table premises, then that no reduced word of length
/// `1..=max_length` in `a, b` is trivial or fixes the basepoint.
pub fn ping_pong_verify(p: &Preset, t: &PingPongTable, max_length: usize) -> Result<FreeReport, GroupError> {
    if p.is_identity(&t.a) || p.is_identity(&t.b) {
        return Err(GroupError::TableInvalid("a generator is trivial".into()));
    }
    if t.a == t.b {
        return Err(GroupError::TableInvalid("a = b".into()));
    }
    let four = [&t.a_side, &t.a_image, &t.b_side, &t.b_image];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if four[i].wall == four[j].wall || p.relation(four[i], four[j]) != Relation::UnionAll {
                return Err(GroupError::TableInvalid(format!(
                    "half-spaces {i} and {j} of the table are not facing"
                )));
            }
        }
    }
    if p.translate_half(&t.a, &t.a_side.complement()) != t.a_image {
        return Err(GroupError::TableInvalid("a does not map A* to aA*".into()));
    }
    if p.translate_half(&t.b, &t.b_side.complement()) != t.b_image {
        return Err(GroupError::TableInvalid("b does not map B* to bB*".into()));
    }
    let table = vec![
        "A*, (aA*)*, B*, (bB*)* pairwise disjoint".to_string(),
        "a(A) = (aA*)*".to_string(),
        "a^-1((aA*)) = A*".to_string(),
        "b(B) = (bB*)*".to_string(),
        "b^-1((bB*)) = B*".to_string(),
    ];
    let gens = [t.a.clone(), p.inverse(&t.a), t.b.clone(), p.inverse(&t.b)];
    let names = ["a", "a^-1", "b", "b^-1"];
    let mut report = FreeReport {
        a: p.format_element(&t.a),
        b: p.format_element(&t.b),
        max_length,
        words_checked: 0,
        failures: Vec::new(),
        min_norm: usize::MAX,
        table,
    };
    let mut word = Vec::new();
    words(p, &gens, &names, &p.identity(), None, max_length, &mut word, &mut report);
    if report.words_checked == 0 {
        report.min_norm = 0;
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn words(
    p: &Preset,
    gens: &[Element; 4],
    names: &[&str; 4],
    x: &Element,
    last: Option<usize>,
    remaining: usize,
    word: &mut Vec<usize>,
    report: &mut FreeReport,
) {
    if remaining == 0 {
        return;
    }
    for i in 0..4 {
        if last == Some(i ^ 1) {
            continue;
        }
        let y = p.multiply(x, &gens[i]);
        word.push(i);
        report.words_checked += 1;
        let norm = p.norm(&y);
        report.min_norm = report.min_norm.min(norm);
        if (p.is_identity(&y) || norm == 0) && report.failures.len() < 16 {
            report
                .failures
                .push(word.iter().map(|&j| names[j]).collect::<Vec<_>>().join("."));
        }
        words(p, gens, names, &y, Some(i), remaining - 1, word, report);
        word.pop();
    }
}

/// Builds a table in one factor: a facing quadruple `h1..h4`, then
/// `a` with `a·h1 ⊊ h2*` and `b` with `b·h3 ⊊ h4*`.
pub fn construct_ping_pong(
    p: &Preset,
    factor: usize,
    radius: usize,
    budget: usize,
) -> Result<Option<PingPongTable>, GroupError> {
    let Some(h) = facing_tuple_search(p, 4, radius, false, Some(factor), budget)? else {
        return Ok(None);
    };
    let Some(a) = double_skewer_search(p, &h[1].complement(), &h[0], radius, None, budget)? else {
        return Ok(None);
    };
    let Some(b) = double_skewer_search(p, &h[3].complement(), &h[2], radius, None, budget)? else {
        return Ok(None);
    };
    Ok(Some(PingPongTable {
        a_image: p.translate_half(&a, &h[0].complement()),
        a_side: h[0].clone(),
        b_image: p.translate_half(&b, &h[2].complement()),
        b_side: h[2].clone(),
        a,
        b,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::walls::DEFAULT_BUDGET;

    #[test]
    fn free_group_walls_are_essential() {
        let p = Preset::parse("f2").unwrap();
        let w = p.unit_wall(0, 0);
        let r = essentiality(&p, &w, 6, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.class, Essentiality::Essential);
        let trivial = essentiality(&p, &w, 6, Some(&[]), DEFAULT_BUDGET).unwrap();
        assert_eq!(trivial.class, Essentiality::Trivial);
    }

    #[test]
    fn flips_in_the_tree() {
        let p = Preset::parse("f2").unwrap();
        let h = p.unit_wall(0, 0).half(Sign::Plus);
        let g = flip_search(&p, &h, 4, None, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(p.format_element(&g), "a.b.a^-1");
        let g = flip_search(&p, &h.complement(), 4, None, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(p.norm(&g), 1);
    }

    #[test]
    fn no_flips_in_the_plane() {
        let p = Preset::parse("z2").unwrap();
        let h = p.unit_wall(0, 0).half(Sign::Plus);
        assert!(flip_search(&p, &h, 6, None, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn skewering_on_the_line() {
        let p = Preset::parse("z1").unwrap();
        let k = p.unit_wall(0, 0).half(Sign::Plus);
        let h = p.translate_half(&p.parse_element("a^2").unwrap(), &k);
        assert!(matches!(
            double_skewer_search(&p, &k, &h, 5, None, DEFAULT_BUDGET),
            Err(GroupError::NotNested)
        ));
        let g = double_skewer_search(&p, &h, &k, 5, None, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(p.format_element(&g), "a.a.a");
        assert!(double_skewer_search(&p, &h, &k, 2, None, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn tree_facing_tuples() {
        let p = Preset::parse("f2").unwrap();
        let four = facing_tuple_search(&p, 4, 3, true, None, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(four.iter().all(|h| p.contains(h, &p.identity())));
        assert!(four.iter().all(|h| h.wall.coset.len() <= 1));
        let z2 = Preset::parse("z2").unwrap();
        assert!(facing_tuple_search(&z2, 3, 4, true, None, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn free_group_ping_pong() {
        let p = Preset::parse("f2").unwrap();
        let t = construct_ping_pong(&p, 0, 8, DEFAULT_BUDGET).unwrap().unwrap();
        let r = ping_pong_verify(&p, &t, 8).unwrap();
        assert!(r.passed());
        assert_eq!(r.words_checked, 4 * (3u64.pow(8) - 1) / 2);
        let mut bad = t.clone();
        bad.b = bad.a.clone();
        assert!(matches!(ping_pong_verify(&p, &bad, 8), Err(GroupError::TableInvalid(_))));
    }

    #[test]
    fn pentagon_ping_pong() {
        let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let edges: Vec<[String; 2]> = (0..5).map(|i| [names[i].clone(), names[(i + 1) % 5].clone()]).collect();
        let spec = crate::group::PresetSpec::Raag {
            graph: crate::group::GraphSpec { vertices: names, edges },
        };
        let p = Preset::from_spec(&spec).unwrap();
        // Unit walls of a and c share the transverse b-wall, so no facing
        // quadruple at radius 1 is pairwise strongly separated.
        assert!(facing_tuple_search(&p, 4, 1, true, None, DEFAULT_BUDGET).unwrap().is_none());
        let four = facing_tuple_search(&p, 4, 1, false, None, DEFAULT_BUDGET).unwrap().unwrap();
        let gens: Vec<usize> = four.iter().map(|h| h.wall.generator).collect();
        assert!(four.iter().all(|h| p.contains(h, &p.identity())));
        assert_eq!(gens.iter().filter(|&&g| g == 0).count(), 2);
        let t = construct_ping_pong(&p, 0, 8, DEFAULT_BUDGET).unwrap().unwrap();
        let r = ping_pong_verify(&p, &t, 8).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.min_norm > 0);
    }
}
