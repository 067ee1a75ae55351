use std::collections::BTreeMap;

use roller_core::group::{Preset, DEFAULT_BUDGET};
use roller_core::walk::{
    boundary_estimate, distinct_limits, drift, hitting_measure, moment_report, sample_paths_with_stream,
    stable_prefix, strip_growth_check, BoundaryEstimate, CertificateOptions, Distinctness, DriftEstimate, Generation,
    HittingEstimate, MomentReport, StepDistribution, StripSeries, WalkBatch, WalkConfig, WalkError,
};
use serde::Serialize;

use super::{group_error, half_label, start};
use crate::config::{Command, ExperimentConfig};
use crate::CliError;

const MOMENT_STEPS: usize = 6;
const MOMENT_SUPPORT: usize = 100_000;
const STRIP_POINTS: usize = 20;

fn walk_error(e: WalkError) -> CliError {
    match e {
        WalkError::Group(g) => group_error(g),
        other => CliError::Input(other.to_string()),
    }
}

#[derive(Serialize)]
struct Hitting {
    half_space: String,
    estimate: Option<HittingEstimate>,
}

#[derive(Serialize)]
struct ChainStats {
    factor: usize,
    generators: Vec<String>,
    euclidean: bool,
    runs: usize,
    min: usize,
    max: usize,
    mean: f64,
    at_least_5: usize,
    at_least_10: usize,
}

#[derive(Serialize)]
struct WalkSummary {
    mu: BTreeMap<String, f64>,
    generating: Generation,
    moments: MomentReport,
    runs: usize,
    steps: usize,
    window: usize,
    monitored_walls: usize,
    mean_stabilized_walls: Option<f64>,
    drift: Option<DriftEstimate>,
    hitting: Vec<Hitting>,
    chains: Vec<ChainStats>,
    caveats: Vec<String>,
}

#[derive(Serialize)]
struct Separations {
    pairs: usize,
    separated: usize,
    not_separated: usize,
    signs_differ: usize,
}

#[derive(Serialize)]
struct CertifySummary {
    runs: usize,
    steps: usize,
    window: usize,
    max_chain: usize,
    radius: usize,
    chains: Vec<ChainStats>,
    distinct_limits: Separations,
    strip: StripSeries,
    caveats: Vec<String>,
}

fn caveats(p: &Preset) -> Vec<String> {
    p.factors()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_abelian())
        .map(|(i, r)| {
            let mut c = format!(
                "factor {i} ({}) is Euclidean: the walk is diffusive with no linear drift and the action is elementary",
                r.names().join(",")
            );
            if r.rank() > 1 {
                c.push_str("; it has no strongly separated walls, so chains of length at most 1 are the expected negative result");
            }
            c
        })
        .collect()
}

fn chain_stats(p: &Preset, estimates: &[BoundaryEstimate]) -> Vec<ChainStats> {
    p.factors()
        .iter()
        .enumerate()
        .map(|(f, r)| {
            let lens: Vec<usize> = estimates.iter().map(|e| e.chains[f].len()).collect();
            ChainStats {
                factor: f,
                generators: r.names().to_vec(),
                euclidean: r.is_abelian() && r.rank() > 1,
                runs: lens.len(),
                min: lens.iter().copied().min().unwrap_or(0),
                max: lens.iter().copied().max().unwrap_or(0),
                mean: if lens.is_empty() {
                    0.0
                } else {
                    lens.iter().sum::<usize>() as f64 / lens.len() as f64
                },
                at_least_5: lens.iter().filter(|&&l| l >= 5).count(),
                at_least_10: lens.iter().filter(|&&l| l >= 10).count(),
            }
        })
        .collect()
}

fn estimates(p: &Preset, batch: &WalkBatch, opts: &CertificateOptions) -> Result<Vec<BoundaryEstimate>, CliError> {
    batch
        .runs
        .iter()
        .map(|r| boundary_estimate(p, batch, r, opts))
        .collect::<Result<_, _>>()
        .map_err(walk_error)
}

/// Shared by `walk` and `certify`: both sample the forward batch from
/// stream 0 of the seed; `certify` adds the reflected walk on stream 1.
pub fn walk(cfg: ExperimentConfig, command: Command) -> Result<(), CliError> {
    let run = start(command, &cfg, None)?;
    let (p, _) = cfg.preset()?;
    let mu = match &cfg.mu {
        Some(table) => StepDistribution::parse(&p, table).map_err(walk_error)?,
        None => StepDistribution::uniform(&p),
    };
    let (steps, window) = (cfg.steps(), cfg.window());
    if window > steps {
        return Err(CliError::Input(format!("window {window} exceeds the {steps} steps")));
    }
    let walk_cfg = WalkConfig {
        steps,
        paths: cfg.paths(),
        seed: cfg.seed(),
        monitor_radius: cfg.monitor_radius(),
    };
    let opts = CertificateOptions {
        window,
        max_chain: cfg.max_chain(),
        radius: cfg.radius(),
    };
    let forward = sample_paths_with_stream(&p, &mu, &walk_cfg, 0).map_err(walk_error)?;
    let tracked = !forward.monitored.is_empty();
    let forward_estimates = if tracked {
        estimates(&p, &forward, &opts)?
    } else {
        Vec::new()
    };

    let rows: Vec<Vec<String>> = forward
        .runs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = vec![
                cfg.seed().to_string(),
                r.index.to_string(),
                steps.to_string(),
                r.final_norm().to_string(),
            ];
            match forward_estimates.get(i) {
                Some(e) => {
                    row.push(e.signs.iter().filter(|s| s.is_some()).count().to_string());
                    row.extend(e.chains.iter().map(|c| c.len().to_string()));
                }
                None => row.extend(std::iter::repeat_n(String::new(), 1 + p.factors().len())),
            }
            row
        })
        .collect();
    let mut header: Vec<String> = ["seed", "run", "n", "final_norm", "stabilized_walls"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..p.factors().len()).map(|f| format!("chain_factor_{f}")));

    if command == Command::Walk {
        let hitting = p
            .steps()
            .into_iter()
            .map(|s| {
                let h = p.crossed(&p.identity(), s);
                let estimate = if tracked && window <= steps {
                    hitting_measure(&forward, &h, window).ok()
                } else {
                    None
                };
                Hitting {
                    half_space: half_label(&p, &h),
                    estimate,
                }
            })
            .collect();
        let stabilized: Vec<usize> = forward_estimates
            .iter()
            .map(|e| e.signs.iter().filter(|s| s.is_some()).count())
            .collect();
        let summary = WalkSummary {
            mu: mu.to_table(&p),
            generating: mu.generating(&p, cfg.radius(), DEFAULT_BUDGET),
            moments: moment_report(&p, &mu, MOMENT_STEPS, MOMENT_SUPPORT),
            runs: forward.runs.len(),
            steps,
            window,
            monitored_walls: forward.monitored.len(),
            mean_stabilized_walls: (!stabilized.is_empty())
                .then(|| stabilized.iter().sum::<usize>() as f64 / stabilized.len() as f64),
            drift: drift(&forward),
            hitting,
            chains: chain_stats(&p, &forward_estimates),
            caveats: caveats(&p),
        };
        return run.emit(vec![run.json("summary.json", &summary), run.csv("runs.csv", &rows, &header)]);
    }

    let backward_estimates = if tracked {
        let backward = sample_paths_with_stream(&p, &mu.reflected(&p), &walk_cfg, 1).map_err(walk_error)?;
        estimates(&p, &backward, &opts)?
    } else {
        Vec::new()
    };
    let mut separations = Separations {
        pairs: 0,
        separated: 0,
        not_separated: 0,
        signs_differ: 0,
    };
    for pair in forward_estimates.chunks_exact(2) {
        separations.pairs += 1;
        match distinct_limits(&p, &pair[0], &pair[1], cfg.radius()).map_err(walk_error)? {
            Distinctness::Separated { .. } => separations.separated += 1,
            Distinctness::NotSeparated { signs_differ } => {
                separations.not_separated += 1;
                separations.signs_differ += signs_differ as usize;
            }
        }
    }
    let stride = (steps / STRIP_POINTS).max(1);
    let schedule: Vec<usize> = (1..=steps / stride).map(|k| k * stride).collect();
    let strip =
        strip_growth_check(&p, &forward, &forward_estimates, &backward_estimates, &schedule).map_err(walk_error)?;
    let strip_rows: Vec<[String; 3]> = strip
        .points
        .iter()
        .map(|pt| [pt.n.to_string(), pt.radius.to_string(), pt.value.to_string()])
        .collect();

    let mut cert_rows: Vec<[String; 4]> = Vec::new();
    for (r, e) in forward.runs.iter().zip(&forward_estimates) {
        for (f, chain) in e.chains.iter().enumerate() {
            let prefix = stable_prefix(r, f, window).map_err(walk_error)?;
            cert_rows.push([r.index.to_string(), f.to_string(), chain.len().to_string(), prefix.to_string()]);
        }
    }
    let summary = CertifySummary {
        runs: forward.runs.len(),
        steps,
        window,
        max_chain: opts.max_chain,
        radius: opts.radius,
        chains: chain_stats(&p, &forward_estimates),
        distinct_limits: separations,
        strip,
        caveats: caveats(&p),
    };
    run.emit(vec![
        run.json("certify.json", &summary),
        run.csv(
            "certificates.csv",
            &cert_rows,
            &["run".into(), "factor".into(), "chain_length".into(), "stable_prefix".into()],
        ),
        run.csv("strip.csv", &strip_rows, &["n".into(), "mean_norm".into(), "log_strip_over_n".into()]),
        run.csv("runs.csv", &rows, &header),
    ])
}
