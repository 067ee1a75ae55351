//! Group presets: products of right-angled Artin groups.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::raag::{parse_power, Letter, Raag};
use super::GroupError;

/// Preset description as it appears in config files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PresetSpec {
    Free { rank: usize },
    Abelian { rank: usize },
    Raag { graph: GraphSpec },
    Product { factors: Vec<PresetSpec> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

impl PresetSpec {
    /// Parses `f2`, `z3`, `f2xf2`, `raag:<file>` and `x`-joined products of these.
    pub fn parse_shorthand(s: &str) -> Result<PresetSpec, GroupError> {
        if let Some(path) = s.strip_prefix("raag:") {
            return Self::load_graph(Path::new(path));
        }
        let parts: Vec<&str> = s.split('x').collect();
        let mut factors = Vec::new();
        for p in &parts {
            let bad = || GroupError::InvalidPreset(format!("unrecognized preset '{s}'"));
            let (kind, rank) = p.split_at(1.min(p.len()));
            let rank: usize = rank.parse().map_err(|_| bad())?;
            if rank == 0 {
                return Err(bad());
            }
            factors.push(match kind {
                "f" => PresetSpec::Free { rank },
                "z" => PresetSpec::Abelian { rank },
                _ => return Err(bad()),
            });
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            PresetSpec::Product { factors }
        })
    }

    /// Reads either a bare graph `{"vertices": …, "edges": …}` or a full preset document.
    pub fn load_graph(path: &Path) -> Result<PresetSpec, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::InvalidPreset(format!("{}: {e}", path.display())))?;
        if let Ok(spec) = serde_json::from_str::<PresetSpec>(&text) {
            return Ok(spec);
        }
        let graph: GraphSpec = serde_json::from_str(&text)
            .map_err(|e| GroupError::InvalidPreset(format!("{}: {e}", path.display())))?;
        Ok(PresetSpec::Raag { graph })
    }

    fn flatten(&self, out: &mut Vec<PresetSpec>) {
        match self {
            PresetSpec::Product { factors } => factors.iter().for_each(|f| f.flatten(out)),
            other => out.push(other.clone()),
        }
    }
}

/// A product of right-angled Artin groups acting on the product of their
/// Salvetti universal covers. Nested products are flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    factors: Vec<Raag>,
}

/// A group element: one normal form per factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    pub parts: Vec<Vec<Letter>>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:?})", self.parts)
    }
}

/// A positive generator or its inverse in a given factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub factor: usize,
    pub letter: Letter,
}

fn generated_names(start: usize, count: usize) -> Vec<String> {
    (start..start + count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

impl Preset {
    pub fn from_spec(spec: &PresetSpec) -> Result<Preset, GroupError> {
        let mut flat = Vec::new();
        spec.flatten(&mut flat);
        let mut factors = Vec::new();
        let mut next_name = 0;
        for f in &flat {
            let raag = match f {
                PresetSpec::Free { rank } => Raag::free(generated_names(next_name, *rank)),
                PresetSpec::Abelian { rank } => Raag::abelian(generated_names(next_name, *rank)),
                PresetSpec::Raag { graph } => Raag::from_graph(&graph.vertices, &graph.edges)?,
                PresetSpec::Product { .. } => unreachable!("flattened"),
            };
            if raag.rank() == 0 {
                return Err(GroupError::InvalidPreset("a factor has no generators".into()));
            }
            next_name += raag.rank();
            factors.push(raag);
        }
        let all: Vec<&String> = factors.iter().flat_map(|f| f.names()).collect();
        for (i, n) in all.iter().enumerate() {
            if all[..i].contains(n) {
                return Err(GroupError::InvalidPreset(format!("generator name {n} used twice")));
            }
        }
        Ok(Preset { factors })
    }

    pub fn parse(shorthand: &str) -> Result<Preset, GroupError> {
        Preset::from_spec(&PresetSpec::parse_shorthand(shorthand)?)
    }

    pub fn factors(&self) -> &[Raag] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Raag {
        &self.factors[i]
    }

    pub fn identity(&self) -> Element {
        Element {
            parts: vec![Vec::new(); self.factors.len()],
        }
    }

    /// All generators and inverses in order `a, a⁻¹, b, b⁻¹, …`, factor by factor.
    pub fn steps(&self) -> Vec<Step> {
        let mut out = Vec::new();
        for (factor, r) in self.factors.iter().enumerate() {
            for g in 0..r.rank() {
                for inv in [false, true] {
                    out.push(Step {
                        factor,
                        letter: Letter::new(g, inv),
                    });
                }
            }
        }
        out
    }

    pub fn step_element(&self, s: Step) -> Element {
        let mut e = self.identity();
        e.parts[s.factor].push(s.letter);
        e
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        Element {
            parts: self
                .factors
                .iter()
                .enumerate()
                .map(|(i, r)| r.multiply(&x.parts[i], &y.parts[i]))
                .collect(),
        }
    }

    pub fn push(&self, x: &mut Element, s: Step) {
        self.factors[s.factor].push_letter(&mut x.parts[s.factor], s.letter);
    }

    pub fn inverse(&self, x: &Element) -> Element {
        Element {
            parts: self
                .factors
                .iter()
                .enumerate()
                .map(|(i, r)| r.inverse(&x.parts[i]))
                .collect(),
        }
    }

    /// `|x|_o`, the combinatorial distance from `x·o` to `o`.
    pub fn norm(&self, x: &Element) -> usize {
        x.parts.iter().map(Vec::len).sum()
    }

    pub fn distance(&self, x: &Element, y: &Element) -> usize {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, r)| r.between(&x.parts[i], &y.parts[i]).len())
            .sum()
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        x.parts.iter().all(Vec::is_empty)
    }

    fn find_generator(&self, name: &str) -> Option<(usize, usize)> {
        self.factors
            .iter()
            .enumerate()
            .find_map(|(f, r)| r.generator_index(name).map(|g| (f, g)))
    }

    /// Parses words like `a.b^-1.a^2`; `1` or the empty string is the identity.
    pub fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let mut e = self.identity();
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(e);
        }
        for token in s.split(['.', ' ', '*']).filter(|t| !t.is_empty()) {
            let (name, exp) = parse_power(token)?;
            let (factor, g) = self
                .find_generator(name)
                .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
            let letter = Letter::new(g, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                self.push(&mut e, Step { factor, letter });
            }
        }
        Ok(e)
    }

    pub fn format_element(&self, x: &Element) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| !x.parts[*i].is_empty())
            .map(|(i, r)| r.format(&x.parts[i]))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(".")
        }
    }

    pub fn format_step(&self, s: Step) -> String {
        self.factors[s.factor].letter_name(s.letter)
    }

    /// True when some factor is abelian: such factors are Euclidean and
    /// carry no strongly separated pairs.
    pub fn has_euclidean_factor(&self) -> bool {
        self.factors.iter().any(Raag::is_abelian)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_presets() {
        let p = Preset::parse("f2xf2").unwrap();
        assert_eq!(p.factors().len(), 2);
        assert_eq!(p.factor(1).names(), &["c".to_string(), "d".to_string()]);
        assert!(Preset::parse("q2").is_err());
        assert!(Preset::parse("f0").is_err());
        assert!(Preset::parse("z2").unwrap().has_euclidean_factor());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let p = Preset::parse("f2").unwrap();
        let e = p.parse_element("a.b^-1.a^2").unwrap();
        assert_eq!(p.format_element(&e), "a.b^-1.a.a");
        assert_eq!(p.norm(&e), 4);
        assert!(p.is_identity(&p.parse_element("a.a^-1").unwrap()));
        assert!(matches!(p.parse_element("q"), Err(GroupError::UnknownGenerator(_))));
    }

    #[test]
    fn abelian_word() {
        let p = Preset::parse("z2").unwrap();
        let e = p.parse_element("a.b.a").unwrap();
        assert_eq!(p.format_element(&e), "a.a.b");
        assert_eq!(p.norm(&e), 3);
    }

    #[test]
    fn json_spec_round_trip() {
        let spec: PresetSpec = serde_json::from_str(
            r#"{"kind":"raag","graph":{"vertices":["a","b","c"],"edges":[["a","b"]]}}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<PresetSpec>(&text).unwrap(), spec);
        let p = Preset::from_spec(&spec).unwrap();
        assert!(p.factor(0).commutes(0, 1));
        assert!(!p.factor(0).commutes(0, 2));
    }
}
