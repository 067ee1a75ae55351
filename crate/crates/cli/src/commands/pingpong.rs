use roller_core::group::{construct_ping_pong, ping_pong_verify, FreeReport, DEFAULT_BUDGET};
use serde::Serialize;

use super::{group_error, half_label, start};
use crate::config::{Command, ExperimentConfig};
use crate::CliError;

#[derive(Serialize)]
struct Table {
    a: String,
    b: String,
    a_side: String,
    a_image: String,
    b_side: String,
    b_image: String,
}

#[derive(Serialize)]
struct FactorResult {
    factor: usize,
    generators: Vec<String>,
    table: Option<Table>,
    verification: Option<FreeReport>,
}

#[derive(Serialize)]
struct Report {
    radius: usize,
    length: usize,
    factors: Vec<FactorResult>,
    found: bool,
    passed: bool,
}

pub fn pingpong(cfg: ExperimentConfig) -> Result<(), CliError> {
    let run = start(Command::Pingpong, &cfg, None)?;
    let (p, _) = cfg.preset()?;
    let (radius, length) = (cfg.radius(), cfg.length());
    let mut factors = Vec::new();
    for (f, r) in p.factors().iter().enumerate() {
        let table = construct_ping_pong(&p, f, radius, DEFAULT_BUDGET).map_err(group_error)?;
        let verification = match &table {
            Some(t) => Some(ping_pong_verify(&p, t, length).map_err(group_error)?),
            None => None,
        };
        factors.push(FactorResult {
            factor: f,
            generators: r.names().to_vec(),
            table: table.map(|t| Table {
                a: p.format_element(&t.a),
                b: p.format_element(&t.b),
                a_side: half_label(&p, &t.a_side),
                a_image: half_label(&p, &t.a_image),
                b_side: half_label(&p, &t.b_side),
                b_image: half_label(&p, &t.b_image),
            }),
            verification,
        });
    }
    let found = factors.iter().any(|f| f.table.is_some());
    let passed = found
        && factors
            .iter()
            .filter_map(|f| f.verification.as_ref())
            .all(FreeReport::passed);
    let report = Report {
        radius,
        length,
        factors,
        found,
        passed,
    };
    run.emit(vec![run.json("pingpong.json", &report)])?;
    if !found {
        Err(CliError::Exhausted(format!(
            "no ping-pong table within radius {radius}: no facing quadruple with double skewering elements"
        )))
    } else if !passed {
        Err(CliError::Failed("a constructed table failed verification".into()))
    } else {
        Ok(())
    }
}
