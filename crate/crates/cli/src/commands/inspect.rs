use roller_core::group::{essentiality, Essentiality, Preset, DEFAULT_BUDGET};
use roller_core::median::{self, bridge, delta_count, dilworth_embed, BridgeEndpoints, Interval, Separation};
use roller_core::pocset::ValidationReport;
use roller_core::{cubulate, HalfSpaceId, Orientation, Pocset, Relation};
use serde::Serialize;

use super::{group_error, half_label, load_pocset, start};
use crate::config::{Command, ExperimentConfig};
use crate::CliError;

#[derive(Serialize)]
struct WallSummary {
    wall: usize,
    below_plus: usize,
    below_minus: usize,
    transverse: usize,
}

#[derive(Serialize)]
struct IntervalReport {
    v: String,
    w: String,
    separating: Vec<usize>,
    vertices: usize,
    chains: Vec<Vec<u32>>,
    dimension: usize,
    endpoint_pairs: usize,
}

#[derive(Serialize)]
struct BridgeReport {
    h1: u32,
    h2: u32,
    beta: Vec<u32>,
    vertices: Vec<String>,
    endpoints: BridgeEndpoints,
    delta: usize,
    strongly_separated: Separation<u32>,
}

#[derive(Serialize)]
struct PocsetReport {
    walls: usize,
    dimension_bound: usize,
    validation: ValidationReport,
    wall_summary: Vec<WallSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<IntervalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bridge: Option<BridgeReport>,
}

#[derive(Serialize)]
struct UnitWall {
    wall: String,
    essentiality: Essentiality,
}

#[derive(Serialize)]
struct PairSeparation {
    first: String,
    second: String,
    relation: Relation,
    strongly_separated: String,
}

#[derive(Serialize)]
struct FactorReport {
    factor: usize,
    generators: Vec<String>,
    edges: Vec<[String; 2]>,
    abelian: bool,
}

#[derive(Serialize)]
struct PresetReport {
    factors: Vec<FactorReport>,
    radius: usize,
    walls_within_radius: usize,
    unit_walls: Vec<UnitWall>,
    unit_pairs: Vec<PairSeparation>,
}

fn sign_pair(s: &str) -> Result<(Orientation, Orientation), CliError> {
    let bad = || CliError::Input(format!("expected two sign strings like '+-,--', got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((Orientation::parse(a.trim()).ok_or_else(bad)?, Orientation::parse(b.trim()).ok_or_else(bad)?))
}

fn id_pair(p: &Pocset, s: &str) -> Result<(HalfSpaceId, HalfSpaceId), CliError> {
    let bad = || CliError::Input(format!("expected two half-space ids like '0,7', got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let parse = |t: &str| -> Result<HalfSpaceId, CliError> {
        let h = HalfSpaceId(t.trim().parse().map_err(|_| bad())?);
        p.check(h).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(h)
    };
    Ok((parse(a)?, parse(b)?))
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn inspect_pocset(p: &Pocset, validation: ValidationReport, interval: Option<&str>, bridge_ids: Option<&str>) -> Result<PocsetReport, CliError> {
    let wall_summary = p
        .wall_ids()
        .map(|w| WallSummary {
            wall: w.index(),
            below_plus: p.halfspaces().filter(|&h| h != w.plus() && p.leq(h, w.plus())).count(),
            below_minus: p.halfspaces().filter(|&h| h != w.minus() && p.leq(h, w.minus())).count(),
            transverse: p.transverse_walls(w).count(),
        })
        .collect();
    let needs_graph = interval.is_some() || bridge_ids.is_some();
    let g = if needs_graph { Some(cubulate(p).map_err(input)?) } else { None };
    let interval = match interval {
        None => None,
        Some(s) => {
            let g = g.as_ref().unwrap();
            let (v, w) = sign_pair(s)?;
            for o in [&v, &w] {
                if o.walls() != p.walls() || !p.is_consistent(o) {
                    return Err(CliError::Input(format!("{} is not a vertex", o.signs())));
                }
            }
            let i = Interval::new(&v, &w).map_err(input)?;
            let e = dilworth_embed(p, &i).map_err(input)?;
            let inside = i.vertices(g);
            IntervalReport {
                v: v.signs(),
                w: w.signs(),
                separating: i.separating.iter().map(|x| x.index()).collect(),
                vertices: inside.len(),
                chains: e.chains.iter().map(|c| c.iter().map(|h| h.0).collect()).collect(),
                dimension: e.dimension(),
                endpoint_pairs: i.endpoint_pairs(g, &inside).len(),
            }
            .into()
        }
    };
    let bridge = match bridge_ids {
        None => None,
        Some(s) => {
            let g = g.as_ref().unwrap();
            let (h1, h2) = id_pair(p, s)?;
            let b = bridge(p, g, h1, h2).map_err(input)?;
            let sep = match median::strongly_separated(p, h1, h2).map_err(input)? {
                Separation::Yes => Separation::Yes,
                Separation::No { witness } => Separation::No { witness: witness.0 },
                Separation::Unknown { radius } => Separation::Unknown { radius },
            };
            BridgeReport {
                h1: h1.0,
                h2: h2.0,
                beta: b.beta.iter().map(|h| h.0).collect(),
                vertices: b.vertices.iter().map(|&v| g.vertices()[v].signs()).collect(),
                endpoints: b.endpoints,
                delta: delta_count(p, h1, h2).map_err(input)?,
                strongly_separated: sep,
            }
            .into()
        }
    };
    Ok(PocsetReport {
        walls: p.walls(),
        dimension_bound: p.dimension_bound(),
        validation,
        wall_summary,
        interval,
        bridge,
    })
}

fn inspect_preset(p: &Preset, radius: usize) -> Result<PresetReport, CliError> {
    let factors = p
        .factors()
        .iter()
        .enumerate()
        .map(|(f, r)| FactorReport {
            factor: f,
            generators: r.names().to_vec(),
            edges: r.edges().iter().map(|&(a, b)| [r.names()[a].clone(), r.names()[b].clone()]).collect(),
            abelian: r.is_abelian(),
        })
        .collect();
    let units: Vec<_> = p
        .steps()
        .into_iter()
        .filter(|s| !s.letter.is_inverse())
        .map(|s| p.unit_wall(s.factor, s.letter.generator()))
        .collect();
    let mut unit_walls = Vec::new();
    for w in &units {
        let r = essentiality(p, w, radius, None, DEFAULT_BUDGET).map_err(group_error)?;
        unit_walls.push(UnitWall {
            wall: half_label(p, &w.half(roller_core::Sign::Plus)),
            essentiality: r.class,
        });
    }
    let mut unit_pairs = Vec::new();
    for (i, a) in units.iter().enumerate() {
        for b in units.iter().skip(i + 1).filter(|b| b.factor == a.factor) {
            let sep = p.strongly_separated(a, b, radius).map_err(group_error)?;
            let (ha, hb) = (a.half(roller_core::Sign::Plus), b.half(roller_core::Sign::Plus));
            unit_pairs.push(PairSeparation {
                first: half_label(p, &ha),
                second: half_label(p, &hb),
                relation: p.relation(&ha, &hb),
                strongly_separated: match sep {
                    Separation::Yes => "yes".into(),
                    Separation::No { witness } => format!("no: {}", half_label(p, &witness.half(roller_core::Sign::Plus))),
                    Separation::Unknown { radius } => format!("unknown within radius {radius}"),
                },
            });
        }
    }
    Ok(PresetReport {
        factors,
        radius,
        walls_within_radius: p.walls_within(radius.min(6), DEFAULT_BUDGET).map_err(group_error)?.len(),
        unit_walls,
        unit_pairs,
    })
}

pub fn inspect(cfg: ExperimentConfig, interval: Option<&str>, bridge_ids: Option<&str>) -> Result<(), CliError> {
    if cfg.pocset.is_some() {
        let (p, validation, text) = load_pocset(&cfg)?;
        let run = start(Command::Inspect, &cfg, Some(&text))?;
        let report = inspect_pocset(&p, validation, interval, bridge_ids)?;
        return run.emit(vec![run.json("inspect.json", &report)]);
    }
    if interval.is_some() || bridge_ids.is_some() {
        return Err(CliError::Input("--interval and --bridge need --pocset".into()));
    }
    let run = start(Command::Inspect, &cfg, None)?;
    let (p, _) = cfg.preset()?;
    let report = inspect_preset(&p, cfg.radius())?;
    run.emit(vec![run.json("inspect.json", &report)])
}
