use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roller_core::cubulation::{CubulationError, GraphExport, MedianReport};
use roller_core::pocset::ValidationReport;
use roller_core::cubulate as build;
use serde::Serialize;

use super::{load_pocset, start};
use crate::config::{Command, ExperimentConfig};
use crate::CliError;

/// Exhaustive median checks above this many vertices switch to sampling.
const EXHAUSTIVE_LIMIT: usize = 200;
const MEDIAN_SAMPLES: usize = 100_000;

#[derive(Serialize)]
struct Summary {
    walls: usize,
    dimension_bound: usize,
    validation: ValidationReport,
    graph: GraphExport,
    median: MedianReport,
    median_check: &'static str,
    passed: bool,
}

pub fn cubulate(cfg: ExperimentConfig) -> Result<(), CliError> {
    let (p, validation, text) = load_pocset(&cfg)?;
    let run = start(Command::Cubulate, &cfg, Some(&text))?;
    let g = build(&p).map_err(|e| match e {
        CubulationError::TooLarge { .. } => CliError::Input(e.to_string()),
        CubulationError::Disconnected { .. } => CliError::Failed(e.to_string()),
    })?;
    let census = g.enumerate_cubes(&p, p.dimension_bound());
    let (median, median_check) = if g.vertex_count() <= EXHAUSTIVE_LIMIT {
        (g.verify_median(), "exhaustive")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
        (g.verify_median_sampled(&mut rng, MEDIAN_SAMPLES), "sampled")
    };
    let passed = median.passed;
    let vertices: Vec<[String; 3]> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| [i.to_string(), v.signs(), g.neighbors(i).len().to_string()])
        .collect();
    let summary = Summary {
        walls: p.walls(),
        dimension_bound: p.dimension_bound(),
        validation,
        graph: g.to_export(&census),
        median,
        median_check,
        passed,
    };
    run.emit(vec![
        run.json("graph.json", &summary),
        run.dot("graph.dot", &g.to_dot()),
        run.csv("vertices.csv", &vertices, &["vertex".into(), "signs".into(), "degree".into()]),
    ])?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed("median verification failed".into()))
    }
}
