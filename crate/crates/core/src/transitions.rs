//! Correlation trajectories under the dephasing channel and classification of
//! optimal-basis switches as sudden or continuous.
//!
//! The detector tracks the optimal measurement θ*(ν). A coarse step whose θ*
//! jump exceeds [`DetectionSettings::detect_jump`] is bisected until either
//! the intermediate θ* values fill the gap (continuous passage) or the jump
//! survives down to the ν floor (sudden switch).

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
#[allow(unused_imports)] // resolved inherently when std is in the build graph
use num_traits::Float;

use crate::channel::{apply_with_envelope, lambda_envelope, DephasingChannel};
use crate::correlations::{classical_correlation, classical_correlation_at, quantum_discord, MeasurementBasis};
use crate::error::{Error, Result};
use crate::matcore::DensityMatrix4;
use crate::states::{xstate_to_density, SampleSeed, XStateParams};

/// Angular tolerance for the σx / σz labels.
pub const LABEL_TOL: f64 = 1e-3;

/// Which measurement family the optimum sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// θ* = π/4: an equatorial axis (σx, or σy when φ* = π/2).
    SigmaX,
    /// θ* ∈ {0, π/2}: the σz axis.
    SigmaZ,
    Intermediate,
}

impl BasisLabel {
    pub fn of_theta(theta: f64) -> Self {
        if (theta - FRAC_PI_4).abs() <= LABEL_TOL {
            BasisLabel::SigmaX
        } else if theta.min((FRAC_PI_2 - theta).abs()) <= LABEL_TOL {
            BasisLabel::SigmaZ
        } else {
            BasisLabel::Intermediate
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            BasisLabel::SigmaX => "sigma_x",
            BasisLabel::SigmaZ => "sigma_z",
            BasisLabel::Intermediate => "intermediate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub nu: f64,
    pub discord: f64,
    pub classical: f64,
    pub mutual_info: f64,
    pub theta_star: f64,
    pub phi_star: f64,
    pub basis_label: BasisLabel,
}

/// The evolved state and its correlation breakdown at one ν.
pub fn trajectory_point(state0: &DensityMatrix4, ch: &DephasingChannel, nu: f64) -> Result<TrajectoryPoint> {
    let rho = evolve(state0, ch, nu)?;
    let b = quantum_discord(&rho);
    let theta = b.optimal_basis.theta();
    Ok(TrajectoryPoint {
        nu,
        discord: b.discord,
        classical: b.classical,
        mutual_info: b.mutual_info,
        theta_star: theta,
        phi_star: b.optimal_basis.phi(),
        basis_label: BasisLabel::of_theta(theta),
    })
}

fn evolve(state0: &DensityMatrix4, ch: &DephasingChannel, nu: f64) -> Result<DensityMatrix4> {
    Ok(apply_with_envelope(state0, lambda_envelope(ch, nu)?))
}

fn check_grid(nu_grid: &[f64]) -> Result<()> {
    match nu_grid.first() {
        None => return Err(Error::invalid_argument("time grid is empty")),
        Some(&first) if first != 0.0 => return Err(Error::invalid_argument("time grid must start at 0")),
        _ => {}
    }
    if nu_grid.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(core::cmp::Ordering::Greater) || !w[1].is_finite()) {
        return Err(Error::invalid_argument("time grid must be strictly increasing"));
    }
    Ok(())
}

/// Discord, classical correlation and optimal basis at each grid time. The
/// grid must start at 0 and increase strictly.
pub fn evolve_trajectory(
    state0: &DensityMatrix4,
    ch: &DephasingChannel,
    nu_grid: &[f64],
) -> Result<Vec<TrajectoryPoint>> {
    check_grid(nu_grid)?;
    nu_grid.iter().map(|&nu| trajectory_point(state0, ch, nu)).collect()
}

/// `n` points spaced uniformly on [0, nu_max], both ends included.
pub fn uniform_grid(nu_max: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(nu_max.is_finite() && nu_max > 0.0) {
        return Err(Error::invalid_argument("uniform grid needs nu_max > 0 and at least 2 points"));
    }
    let h = nu_max / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { nu_max } else { i as f64 * h }).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionKind {
    Sudden,
    Continuous,
    /// Final jump between the continuity and detection thresholds.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEvent {
    /// Narrowest interval holding the largest remaining θ* jump for sudden
    /// events; the flagged coarse step otherwise.
    pub nu_interval: (f64, f64),
    pub kind: TransitionKind,
    /// Largest adjacent θ* jump left after refinement.
    pub theta_jump: f64,
    pub refinement_depth: usize,
    /// dD/dν just left and right of `nu_interval`.
    pub slope_left: f64,
    pub slope_right: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub events: Vec<TransitionEvent>,
    /// Largest |slope_left − slope_right| over the events (0 with no events).
    pub derivative_gap: f64,
    /// Largest θ* jump between adjacent samples of the refined path.
    pub max_adjacent_jump: f64,
    /// Every (ν, θ*, φ*) evaluated, sorted by ν.
    pub samples: Vec<(f64, f64, f64)>,
}

impl TransitionReport {
    pub fn count(&self, kind: TransitionKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

/// Thresholds for [`detect_transitions_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionSettings {
    /// Coarse jumps above this are examined as events.
    pub detect_jump: f64,
    /// Refinement stops once adjacent jumps fall below this.
    pub continuity_jump: f64,
    /// Narrowest ν interval the bisection will produce. Continuous passages of
    /// weakly perturbed states can be only ~1e-10 wide, so this sits well
    /// below that.
    pub nu_floor: f64,
    /// Half-width of the central differences for discord slopes.
    pub slope_step: f64,
}

impl Default for DetectionSettings {
    fn default() -> Self {
        Self { detect_jump: 0.1, continuity_jump: 0.05, nu_floor: 1e-14, slope_step: 1e-5 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    nu: f64,
    basis: MeasurementBasis,
}

struct Leaf {
    left: Sample,
    right: Sample,
    jump: f64,
    depth: usize,
}

struct Detector<'a> {
    state0: &'a DensityMatrix4,
    ch: &'a DephasingChannel,
    settings: DetectionSettings,
    max_depth: usize,
    samples: Vec<Sample>,
}

impl Detector<'_> {
    fn sample(&mut self, nu: f64) -> Sample {
        let rho = apply_with_envelope(self.state0, self.ch.envelope(nu));
        let (_, basis) = classical_correlation(&rho);
        let s = Sample { nu, basis };
        self.samples.push(s);
        s
    }

    fn refine(&mut self, left: Sample, right: Sample, depth: usize, leaves: &mut Vec<Leaf>) {
        let jump = left.basis.distance(&right.basis);
        let width = right.nu - left.nu;
        if jump < self.settings.continuity_jump || depth >= self.max_depth || width <= self.settings.nu_floor {
            leaves.push(Leaf { left, right, jump, depth });
            return;
        }
        let mid = self.sample(0.5 * (left.nu + right.nu));
        self.refine(left, mid, depth + 1, leaves);
        self.refine(mid, right, depth + 1, leaves);
    }

    fn discord(&self, nu: f64) -> f64 {
        let rho = apply_with_envelope(self.state0, self.ch.envelope(nu.max(0.0)));
        quantum_discord(&rho).discord
    }

    /// Central-difference slopes centred one step outside [l, r].
    fn slopes(&self, l: f64, r: f64) -> (f64, f64) {
        let h = self.settings.slope_step;
        let lc = (l - h).max(h);
        let left = (self.discord(lc + h) - self.discord(lc - h)) / (2.0 * h);
        let rc = r + h;
        let right = (self.discord(rc + h) - self.discord(rc - h)) / (2.0 * h);
        (left, right)
    }
}

/// [`detect_transitions_with`] using the default thresholds.
pub fn detect_transitions(
    state0: &DensityMatrix4,
    ch: &DephasingChannel,
    nu_max: f64,
    initial_step: f64,
    max_depth: usize,
) -> Result<TransitionReport> {
    detect_transitions_with(state0, ch, nu_max, initial_step, max_depth, DetectionSettings::default())
}

pub fn detect_transitions_with(
    state0: &DensityMatrix4,
    ch: &DephasingChannel,
    nu_max: f64,
    initial_step: f64,
    max_depth: usize,
    settings: DetectionSettings,
) -> Result<TransitionReport> {
    if !(nu_max.is_finite() && nu_max > 0.0) {
        return Err(Error::invalid_argument("nu_max must be > 0"));
    }
    if !(initial_step.is_finite() && initial_step > 0.0) {
        return Err(Error::invalid_argument("initial_step must be > 0"));
    }
    if max_depth < 1 {
        return Err(Error::invalid_argument("max_depth must be >= 1"));
    }
    let steps = ((nu_max / initial_step).round() as usize).max(1);
    let h = nu_max / steps as f64;
    let mut det = Detector { state0, ch, settings, max_depth, samples: Vec::new() };
    let coarse: Vec<Sample> = (0..=steps).map(|i| det.sample(if i == steps { nu_max } else { i as f64 * h })).collect();

    let mut events = Vec::new();
    let mut max_adjacent_jump = 0.0_f64;
    for pair in coarse.windows(2) {
        let (l, r) = (pair[0], pair[1]);
        let coarse_jump = l.basis.distance(&r.basis);
        let mut leaves = Vec::new();
        det.refine(l, r, 0, &mut leaves);
        let worst = leaves.iter().max_by(|a, b| a.jump.total_cmp(&b.jump)).expect("at least one leaf");
        max_adjacent_jump = max_adjacent_jump.max(worst.jump);
        if coarse_jump <= settings.detect_jump {
            continue;
        }
        let depth = leaves.iter().map(|leaf| leaf.depth).max().unwrap_or(0);
        let kind = if worst.jump >= settings.detect_jump {
            TransitionKind::Sudden
        } else if worst.jump < settings.continuity_jump {
            TransitionKind::Continuous
        } else {
            TransitionKind::Indeterminate
        };
        let nu_interval = match kind {
            TransitionKind::Sudden => (worst.left.nu, worst.right.nu),
            _ => (l.nu, r.nu),
        };
        let (slope_left, slope_right) = det.slopes(nu_interval.0, nu_interval.1);
        events.push(TransitionEvent {
            nu_interval,
            kind,
            theta_jump: worst.jump,
            refinement_depth: depth,
            slope_left,
            slope_right,
        });
    }

    let derivative_gap = events.iter().map(|e| (e.slope_left - e.slope_right).abs()).fold(0.0, f64::max);
    let mut samples: Vec<(f64, f64, f64)> =
        det.samples.iter().map(|s| (s.nu, s.basis.theta(), s.basis.phi())).collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    samples.dedup_by(|a, b| a.0 == b.0);
    Ok(TransitionReport { events, derivative_gap, max_adjacent_jump, samples })
}

/// Objective at φ = 0 for each θ in `theta_grid`.
pub fn scan_basis(state: &DensityMatrix4, theta_grid: &[f64]) -> Vec<(f64, f64)> {
    theta_grid.iter().map(|&t| (t, classical_correlation_at(state, &MeasurementBasis::from_angles(t, 0.0)))).collect()
}

/// Outcome of the two sufficient conditions for σz / σx optimality of a
/// real X state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChenLabel {
    SigmaZOptimal,
    SigmaXOptimal,
    Both,
    Neither,
}

impl ChenLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChenLabel::SigmaZOptimal => "sigma_z",
            ChenLabel::SigmaXOptimal => "sigma_x",
            ChenLabel::Both => "both",
            ChenLabel::Neither => "neither",
        }
    }
}

/// Both inequality sides as evaluated.
///
/// The conditions are written for a measurement on B, so the σz side pairs
/// each population with the one sharing B's index: ρ₀₀ with ρ₂₂, ρ₃₃ with ρ₁₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChenClass {
    pub label: ChenLabel,
    /// (|ρ₁₂| + |ρ₀₃|)²
    pub z_lhs: f64,
    /// (ρ₀₀ − ρ₂₂)(ρ₃₃ − ρ₁₁)
    pub z_rhs: f64,
    /// |√(ρ₀₀ρ₃₃) − √(ρ₁₁ρ₂₂)|
    pub x_lhs: f64,
    /// |ρ₁₂| + |ρ₀₃|
    pub x_rhs: f64,
    /// ρ₀₃ was negated to satisfy |ρ₁₂ + ρ₀₃| ≥ |ρ₁₂ − ρ₀₃|. The flip is the
    /// local phase diag(1, i) ⊗ diag(1, i) and leaves both conditions unchanged.
    pub r03_flipped: bool,
}

impl ChenClass {
    pub fn sigma_z_holds(&self) -> bool {
        self.z_lhs <= self.z_rhs
    }

    pub fn sigma_x_holds(&self) -> bool {
        self.x_lhs <= self.x_rhs
    }
}

pub fn chen_classify(p: &XStateParams) -> Result<ChenClass> {
    p.validate()?;
    let r03_flipped = (p.r12 + p.r03).abs() < (p.r12 - p.r03).abs();
    let coherence = p.r12.abs() + p.r03.abs();
    let z_lhs = coherence * coherence;
    let z_rhs = (p.p00 - p.p22) * (p.p33 - p.p11);
    let x_lhs = ((p.p00 * p.p33).sqrt() - (p.p11 * p.p22).sqrt()).abs();
    let x_rhs = coherence;
    let label = match (z_lhs <= z_rhs, x_lhs <= x_rhs) {
        (true, true) => ChenLabel::Both,
        (true, false) => ChenLabel::SigmaZOptimal,
        (false, true) => ChenLabel::SigmaXOptimal,
        (false, false) => ChenLabel::Neither,
    };
    Ok(ChenClass { label, z_lhs, z_rhs, x_lhs, x_rhs, r03_flipped })
}

/// |ρ₀₀ρ₁₁ − ρ₂₂ρ₃₃| ≤ tol: the two condition boundaries of
/// [`chen_classify`] coincide, so the populations allow a truly sudden
/// σx ↔ σz switch. Dephasing leaves populations fixed, so this is constant in time.
pub fn sudden_capable(p: &XStateParams, tol: f64) -> bool {
    population_gap(p) <= tol
}

pub fn population_gap(p: &XStateParams) -> f64 {
    (p.p00 * p.p11 - p.p22 * p.p33).abs()
}

/// Number of decade bins in [`SurveyReport::gap_histogram`].
pub const GAP_HISTOGRAM_BINS: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub seed: u64,
    pub n: usize,
    pub n_sudden_capable: usize,
    pub n_sigma_z: usize,
    pub n_sigma_x: usize,
    pub n_both: usize,
    pub n_neither: usize,
    /// Counts of log₁₀ |ρ₀₀ρ₁₁ − ρ₂₂ρ₃₃| by decade: bin 0 holds gaps below
    /// 1e-12 (including 0), bin k holds [10^(k−13), 10^(k−12)), and the last
    /// bin holds everything from 1e-1 up.
    pub gap_histogram: [usize; GAP_HISTOGRAM_BINS],
}

fn gap_bin(gap: f64) -> usize {
    if gap < 1e-12 {
        return 0;
    }
    let decade = gap.log10().floor() as i64;
    (decade + 13).clamp(1, GAP_HISTOGRAM_BINS as i64 - 1) as usize
}

/// Draws `n` random real X states from stream 0 of `seed` and tallies the
/// sudden-capability predicate and the σx/σz condition labels.
pub fn random_survey(n: usize, seed: u64, tol: f64) -> Result<SurveyReport> {
    if n < 1 {
        return Err(Error::invalid_argument("survey needs n >= 1"));
    }
    let mut report = SurveyReport {
        seed,
        n,
        n_sudden_capable: 0,
        n_sigma_z: 0,
        n_sigma_x: 0,
        n_both: 0,
        n_neither: 0,
        gap_histogram: [0; GAP_HISTOGRAM_BINS],
    };
    for x in SampleSeed::new(seed, 0).rng().take(n) {
        if sudden_capable(&x, tol) {
            report.n_sudden_capable += 1;
        }
        report.gap_histogram[gap_bin(population_gap(&x))] += 1;
        match chen_classify(&x)?.label {
            ChenLabel::SigmaZOptimal => report.n_sigma_z += 1,
            ChenLabel::SigmaXOptimal => report.n_sigma_x += 1,
            ChenLabel::Both => report.n_both += 1,
            ChenLabel::Neither => report.n_neither += 1,
        }
    }
    Ok(report)
}

/// Convenience: the density matrix of `p` evolved to ν.
pub fn evolve_xstate(p: &XStateParams, ch: &DephasingChannel, nu: f64) -> Result<DensityMatrix4> {
    evolve(&xstate_to_density(p)?, ch, nu)
}
