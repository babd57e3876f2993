//! Run configuration: JSON file plus command-line overrides.

use std::fmt;
use std::path::PathBuf;

use discordlab_core::{
    bds_to_density, perturbed_bds_to_density, xstate_to_density, BellDiagonalParams, DensityMatrix4, DephasingChannel,
    DetectionSettings, PerturbedBDSParams, XStateParams,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Evolve,
    ScanBasis,
    Detect,
    Classify,
    Survey,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Evolve => "evolve",
            Command::ScanBasis => "scan-basis",
            Command::Detect => "detect",
            Command::Classify => "classify",
            Command::Survey => "survey",
        })
    }
}

/// Initial state, tagged by `type`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateDescriptor {
    Bds { c1: f64, c2: f64, c3: f64 },
    Perturbed { c1: f64, c2: f64, c3: f64, epsilon: f64 },
    X { p00: f64, p11: f64, p22: f64, p33: f64, r12: f64, r03: f64 },
}

impl Default for StateDescriptor {
    fn default() -> Self {
        StateDescriptor::Bds { c1: 1.0, c2: -0.6, c3: 0.6 }
    }
}

impl StateDescriptor {
    pub fn density(&self) -> discordlab_core::Result<DensityMatrix4> {
        match *self {
            StateDescriptor::Bds { c1, c2, c3 } => bds_to_density(&BellDiagonalParams::new(c1, c2, c3)?),
            StateDescriptor::Perturbed { c1, c2, c3, epsilon } => {
                perturbed_bds_to_density(&PerturbedBDSParams { c1, c2, c3, epsilon })
            }
            StateDescriptor::X { p00, p11, p22, p33, r12, r03 } => {
                xstate_to_density(&XStateParams { p00, p11, p22, p33, r12, r03 })
            }
        }
    }

    /// Applies `--c1/--c2/--c3/--epsilon`. A BDS becomes a perturbed state
    /// when ε is given; X states take no coefficient overrides.
    fn override_coefficients(
        self,
        c1: Option<f64>,
        c2: Option<f64>,
        c3: Option<f64>,
        eps: Option<f64>,
    ) -> Result<Self, CliError> {
        if c1.is_none() && c2.is_none() && c3.is_none() && eps.is_none() {
            return Ok(self);
        }
        let (b1, b2, b3, be) = match self {
            StateDescriptor::Bds { c1, c2, c3 } => (c1, c2, c3, None),
            StateDescriptor::Perturbed { c1, c2, c3, epsilon } => (c1, c2, c3, Some(epsilon)),
            StateDescriptor::X { .. } => {
                return Err(CliError::Validation("--c1/--c2/--c3/--epsilon do not apply to an X state".into()))
            }
        };
        let (c1, c2, c3) = (c1.unwrap_or(b1), c2.unwrap_or(b2), c3.unwrap_or(b3));
        Ok(match eps.or(be) {
            Some(epsilon) => StateDescriptor::Perturbed { c1, c2, c3, epsilon },
            None => StateDescriptor::Bds { c1, c2, c3 },
        })
    }
}

/// Threshold overrides. Unset fields keep the library defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub survey_tol: Option<f64>,
    pub detect_jump: Option<f64>,
    pub continuity_jump: Option<f64>,
    pub nu_floor: Option<f64>,
    pub slope_step: Option<f64>,
}

/// Everything a run needs. Field names match the JSON config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub state: StateDescriptor,
    pub a: f64,
    pub tau: f64,
    pub nu_max: f64,
    pub steps: usize,
    /// ν values for `scan-basis` and `classify`.
    pub nu: Vec<f64>,
    /// Number of θ intervals on [0, π/2] for `scan-basis`.
    pub theta_steps: usize,
    pub initial_step: f64,
    pub max_depth: usize,
    pub n: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            state: StateDescriptor::default(),
            a: 1.0,
            tau: 5.0,
            nu_max: 3.0,
            steps: 3000,
            nu: vec![0.0],
            theta_steps: 720,
            initial_step: 1e-3,
            max_depth: 64,
            n: 100_000,
            seed: 42,
            tolerances: Tolerances::default(),
            out: None,
        }
    }
}

/// Command-line values that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub a: Option<f64>,
    pub tau: Option<f64>,
    pub nu_max: Option<f64>,
    pub steps: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub nu: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn apply(mut self, command: Command, o: Overrides) -> Result<Self, CliError> {
        if let Some(c) = self.command {
            if c != command {
                return Err(CliError::Validation(format!("config is for `{c}` but `{command}` was requested")));
            }
        }
        self.command = Some(command);
        self.state = self.state.override_coefficients(o.c1, o.c2, o.c3, o.epsilon)?;
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = o.$field { self.$field = v; })* };
        }
        set!(a, tau, nu_max, steps, n, seed, nu);
        if o.tol.is_some() {
            self.tolerances.survey_tol = o.tol;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        Ok(self)
    }

    pub fn channel(&self) -> Result<DephasingChannel, CliError> {
        Ok(DephasingChannel::new(self.a, self.tau)?)
    }

    pub fn detection_settings(&self) -> DetectionSettings {
        let d = DetectionSettings::default();
        let t = &self.tolerances;
        DetectionSettings {
            detect_jump: t.detect_jump.unwrap_or(d.detect_jump),
            continuity_jump: t.continuity_jump.unwrap_or(d.continuity_jump),
            nu_floor: t.nu_floor.unwrap_or(d.nu_floor),
            slope_step: t.slope_step.unwrap_or(d.slope_step),
        }
    }

    pub fn survey_tol(&self) -> f64 {
        self.tolerances.survey_tol.unwrap_or(1e-9)
    }

    /// Checks every field the selected command uses before any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Validation(msg));
        let command = self.command.ok_or_else(|| CliError::Validation("no command".into()))?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                bad(format!("{name} must be a finite number > 0, got {v}"))
            }
        };
        let t = &self.tolerances;
        for (name, v) in [
            ("survey_tol", t.survey_tol),
            ("detect_jump", t.detect_jump),
            ("continuity_jump", t.continuity_jump),
            ("nu_floor", t.nu_floor),
            ("slope_step", t.slope_step),
        ] {
            if let Some(v) = v {
                positive(name, v)?;
            }
        }
        match command {
            Command::Survey => {
                if self.n < 1 {
                    return bad("n must be >= 1".into());
                }
            }
            _ => {
                self.state.density()?;
                self.channel()?;
            }
        }
        match command {
            Command::Evolve => {
                positive("nu_max", self.nu_max)?;
                if self.steps < 2 {
                    return bad(format!("steps must be >= 2, got {}", self.steps));
                }
            }
            Command::Detect => {
                positive("nu_max", self.nu_max)?;
                positive("initial_step", self.initial_step)?;
                if self.max_depth < 1 {
                    return bad("max_depth must be >= 1".into());
                }
                let s = self.detection_settings();
                if s.continuity_jump > s.detect_jump {
                    return bad("continuity_jump must not exceed detect_jump".into());
                }
            }
            Command::ScanBasis | Command::Classify => {
                if self.nu.is_empty() {
                    return bad("nu list is empty".into());
                }
                if let Some(v) = self.nu.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                    return bad(format!("nu values must be finite and >= 0, got {v}"));
                }
                if command == Command::ScanBasis && self.theta_steps < 1 {
                    return bad("theta_steps must be >= 1".into());
                }
            }
            Command::Survey => {}
        }
        Ok(())
    }
}
