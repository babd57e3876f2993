//! Command execution. Everything is computed in memory first so that a
//! failing run writes nothing.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;

use discordlab_core::transitions::{trajectory_point, uniform_grid};
use discordlab_core::{
    apply_two_qubit, chen_classify, classical_correlation, density_to_xparams, detect_transitions_with, random_survey,
    scan_basis, sudden_capable, TrajectoryPoint, TransitionKind, TransitionReport,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::format::{self, ClassifyRow};

/// Rendered results of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// Row data: written to the output path, or stdout when none is set.
    pub csv: Option<String>,
    /// JSON summary, always printed on stdout.
    pub summary: Option<String>,
}

/// Trajectory points on `grid`, evaluated in parallel and returned in grid order.
fn points(config: &RunConfig, grid: &[f64]) -> Result<Vec<TrajectoryPoint>, CliError> {
    let rho = config.state.density()?;
    let ch = config.channel()?;
    grid.par_iter().map(|&nu| trajectory_point(&rho, &ch, nu)).collect::<Result<Vec<_>, _>>().map_err(CliError::from)
}

#[derive(Serialize)]
struct EventSummary {
    nu_left: f64,
    nu_right: f64,
    kind: &'static str,
    theta_jump: f64,
    refinement_depth: usize,
    slope_left: f64,
    slope_right: f64,
}

#[derive(Serialize)]
struct DetectSummary {
    n_sudden: usize,
    n_continuous: usize,
    n_indeterminate: usize,
    derivative_gap: f64,
    max_adjacent_jump: f64,
    n_samples: usize,
    events: Vec<EventSummary>,
}

fn kind_str(kind: TransitionKind) -> &'static str {
    match kind {
        TransitionKind::Sudden => "sudden",
        TransitionKind::Continuous => "continuous",
        TransitionKind::Indeterminate => "indeterminate",
    }
}

fn detect_summary(r: &TransitionReport) -> String {
    let summary = DetectSummary {
        n_sudden: r.count(TransitionKind::Sudden),
        n_continuous: r.count(TransitionKind::Continuous),
        n_indeterminate: r.count(TransitionKind::Indeterminate),
        derivative_gap: r.derivative_gap,
        max_adjacent_jump: r.max_adjacent_jump,
        n_samples: r.samples.len(),
        events: r
            .events
            .iter()
            .map(|e| EventSummary {
                nu_left: e.nu_interval.0,
                nu_right: e.nu_interval.1,
                kind: kind_str(e.kind),
                theta_jump: e.theta_jump,
                refinement_depth: e.refinement_depth,
                slope_left: e.slope_left,
                slope_right: e.slope_right,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&summary).expect("finite report values serialize")
}

pub fn execute(config: &RunConfig) -> Result<Output, CliError> {
    config.validate()?;
    let command = config.command.expect("validated");
    match command {
        Command::Evolve => {
            let grid = uniform_grid(config.nu_max, config.steps)?;
            Ok(Output { csv: Some(format::trajectory_csv(&points(config, &grid)?)), summary: None })
        }
        Command::Detect => {
            let rho = config.state.density()?;
            let ch = config.channel()?;
            let report = detect_transitions_with(
                &rho,
                &ch,
                config.nu_max,
                config.initial_step,
                config.max_depth,
                config.detection_settings(),
            )?;
            let csv = match config.out {
                Some(_) => {
                    let grid: Vec<f64> = report.samples.iter().map(|s| s.0).collect();
                    Some(format::trajectory_csv(&points(config, &grid)?))
                }
                None => None,
            };
            Ok(Output { csv, summary: Some(detect_summary(&report)) })
        }
        Command::ScanBasis => {
            let rho = config.state.density()?;
            let ch = config.channel()?;
            let n = config.theta_steps;
            let thetas: Vec<f64> = (0..=n).map(|i| FRAC_PI_2 * i as f64 / n as f64).collect();
            let blocks = config
                .nu
                .iter()
                .map(|&nu| Ok((nu, scan_basis(&apply_two_qubit(&ch, &rho, nu)?, &thetas))))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Output { csv: Some(format::scan_csv(&blocks)), summary: None })
        }
        Command::Classify => {
            let rho = config.state.density()?;
            let ch = config.channel()?;
            let tol = config.survey_tol();
            let rows = config
                .nu
                .iter()
                .map(|&nu| {
                    let state = apply_two_qubit(&ch, &rho, nu)?;
                    let p = density_to_xparams(&state)?;
                    let (classical, basis) = classical_correlation(&state);
                    Ok(ClassifyRow {
                        nu,
                        params: [p.p00, p.p11, p.p22, p.p33, p.r12, p.r03],
                        class: chen_classify(&p)?,
                        sudden_capable: sudden_capable(&p, tol),
                        theta_star: basis.theta(),
                        classical,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Output { csv: Some(format::classify_csv(&rows)), summary: None })
        }
        Command::Survey => {
            let report = random_survey(config.n, config.seed, config.survey_tol())?;
            Ok(Output { csv: Some(format::survey_csv(&report)), summary: None })
        }
    }
}

/// Executes `config` and writes its outputs.
pub fn run(config: &RunConfig, stdout: &mut impl Write) -> Result<(), CliError> {
    let output = execute(config)?;
    if let Some(csv) = &output.csv {
        match &config.out {
            Some(path) => fs::write(path, csv).map_err(|e| CliError::io(path, e))?,
            None => stdout.write_all(csv.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
        }
    }
    if let Some(summary) = &output.summary {
        writeln!(stdout, "{summary}").map_err(|e| CliError::io("<stdout>", e))?;
    }
    Ok(())
}
