//! Mutual information, measurement-optimised classical correlation, and
//! quantum discord, with the projective measurement always performed on
//! subsystem B.
//!
//! A measurement basis is the orthonormal pair
//! |π₁⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩ and |π₂⟩ = sin θ|0⟩ − e^{iφ} cos θ|1⟩.
//! Shifting θ by π/2 only swaps and re-phases the pair, so the objective is
//! π/2-periodic in θ and the search runs over θ ∈ [0, π/2).
//!
//! For real X states the objective at fixed θ is largest at φ = 0 when
//! |ρ₀₃ + ρ₁₂| ≥ |ρ₁₂ − ρ₀₃| and at φ = π/2 otherwise, so those states only
//! need a one-dimensional search. The θ-curve of an X state is also mirror
//! symmetric, f(θ) = f(π/2 − θ); ties between mirror images are reported on
//! the θ ≥ π/4 side.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
#[allow(unused_imports)] // resolved inherently when std is in the build graph
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matcore::{binary_entropy, partial_trace, ComplexMatrix, DensityMatrix4, Subsystem, C64};
use crate::search::{golden_max, top_k, wrap};
use crate::states::density_to_xparams;

/// Outcomes with probability at or below this are dropped from the average.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-12;
/// Coarse θ grid spacing (π/360).
pub const THETA_GRID_STEP: f64 = PI / 360.0;
/// Coarse φ grid spacing (π/18) used by the full two-angle scan.
pub const PHI_GRID_STEP: f64 = PI / 18.0;
/// Golden-section bracket width at which refinement stops.
pub const REFINE_XTOL: f64 = 1e-10;
/// Objective slack under which two bases count as tied.
pub const TIE_TOL: f64 = 1e-10;
const RESTARTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    /// θ ∈ [0, π], φ ∈ [0, 2π].
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid_argument(alloc::format!("theta {theta} outside [0, pi]")));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::invalid_argument(alloc::format!("phi {phi} outside [0, 2pi]")));
        }
        Ok(Self { theta, phi })
    }

    /// Unchecked angles. Every real (θ, φ) names a valid projector pair.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn sigma_z() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn sigma_x() -> Self {
        Self { theta: FRAC_PI_4, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// (|π₁⟩, |π₂⟩) as amplitude pairs on |0⟩, |1⟩.
    pub fn kets(&self) -> [[C64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        [[C64::new(c, 0.0), e * s], [C64::new(s, 0.0), -e * c]]
    }

    /// Bloch axis of |π₁⟩: (sin 2θ cos φ, sin 2θ sin φ, cos 2θ).
    pub fn axis(&self) -> [f64; 3] {
        let (s2, c2) = (2.0 * self.theta).sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [s2 * cp, s2 * sp, c2]
    }

    /// Angular separation of two measurements in θ units: half the angle
    /// between their Bloch axes, with antipodal axes identified. Lies in
    /// [0, π/4]; for equal φ it is the π/2-periodic distance between θ values.
    pub fn distance(&self, other: &Self) -> f64 {
        let a = self.axis();
        let b = other.axis();
        let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).abs();
        let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        0.5 * cross_norm.atan2(dot)
    }
}

/// Result of one projective outcome on B: probability and the normalised
/// post-measurement state of A (I/2 when the outcome is impossible).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalOutcome {
    pub k: usize,
    pub probability: f64,
    pub state: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationBreakdown {
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub optimal_basis: MeasurementBasis,
    /// Grid cells the refinement started from and the bases it converged to,
    /// with their objective values.
    pub optimizer_trace: Vec<(MeasurementBasis, f64)>,
}

/// S(ρ_A) + S(ρ_B) − S(ρ_AB).
pub fn mutual_information(rho: &DensityMatrix4) -> f64 {
    let sa = qubit_entropy(&partial_trace(rho, Subsystem::A));
    let sb = qubit_entropy(&partial_trace(rho, Subsystem::B));
    sa + sb - rho.entropy()
}

/// Entropy of a unit-trace 2×2 operator from its Bloch length.
fn qubit_entropy(m: &ComplexMatrix) -> f64 {
    let tr = m.get(0, 0).re + m.get(1, 1).re;
    qubit_entropy_unnormalised(m, tr)
}

/// Entropy of m/tr for a positive 2×2 m with trace `tr > 0`.
fn qubit_entropy_unnormalised(m: &ComplexMatrix, tr: f64) -> f64 {
    let d = m.get(0, 0).re - m.get(1, 1).re;
    let off = m.get(0, 1).norm();
    let r = (d.hypot(2.0 * off) / tr).min(1.0);
    binary_entropy(0.5 * (1.0 + r))
}

/// Unnormalised Tr_B[(I ⊗ |π⟩⟨π|) ρ (I ⊗ |π⟩⟨π|)] for one ket |π⟩.
fn conditional_block(rho: &ComplexMatrix, ket: &[C64; 2]) -> ComplexMatrix {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (b, kb) in ket.iter().enumerate() {
                for (bp, kbp) in ket.iter().enumerate() {
                    acc += kb.conj() * rho.get(2 * i + b, 2 * j + bp) * kbp;
                }
            }
            *v = acc;
        }
    }
    ComplexMatrix::from_rows2(out)
}

#[allow(non_snake_case)]
pub fn measure_on_B(rho: &DensityMatrix4, basis: &MeasurementBasis) -> [ConditionalOutcome; 2] {
    let kets = basis.kets();
    let m = rho.matrix();
    let mut outcomes = [0, 1].map(|idx| {
        let block = conditional_block(m, &kets[idx]);
        let p = block.get(0, 0).re + block.get(1, 1).re;
        ConditionalOutcome { k: idx + 1, probability: p, state: block }
    });
    for o in outcomes.iter_mut() {
        o.state = if o.probability > MIN_OUTCOME_PROBABILITY {
            o.state.scale_real(1.0 / o.probability)
        } else {
            ComplexMatrix::identity2().scale_real(0.5)
        };
    }
    outcomes
}

/// Σ_k p_k S(ρ_A|k) for the given basis.
fn conditional_entropy(m: &ComplexMatrix, basis: &MeasurementBasis) -> f64 {
    basis
        .kets()
        .iter()
        .map(|ket| {
            let block = conditional_block(m, ket);
            let p = block.get(0, 0).re + block.get(1, 1).re;
            if p > MIN_OUTCOME_PROBABILITY {
                p * qubit_entropy_unnormalised(&block, p)
            } else {
                0.0
            }
        })
        .sum()
}

/// S(ρ_A) − Σ_k p_k S(ρ_A|k) for one basis.
pub fn classical_correlation_at(rho: &DensityMatrix4, basis: &MeasurementBasis) -> f64 {
    let sa = qubit_entropy(&partial_trace(rho, Subsystem::A));
    sa - conditional_entropy(rho.matrix(), basis)
}

/// Search settings for [`classical_correlation_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OptimizerOptions {
    /// Scan φ on a grid even when the state is a real X state.
    pub full_phase_scan: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalOptimum {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub trace: Vec<(MeasurementBasis, f64)>,
}

/// Maximum of [`classical_correlation_at`] over all bases, with its basis.
pub fn classical_correlation(rho: &DensityMatrix4) -> (f64, MeasurementBasis) {
    let opt = classical_correlation_with(rho, OptimizerOptions::default());
    (opt.value, opt.basis)
}

pub fn classical_correlation_with(rho: &DensityMatrix4, options: OptimizerOptions) -> ClassicalOptimum {
    let sa = qubit_entropy(&partial_trace(rho, Subsystem::A));
    let m = *rho.matrix();
    let objective = |theta: f64, phi: f64| sa - conditional_entropy(&m, &MeasurementBasis::from_angles(theta, phi));

    let fixed_phi =
        if options.full_phase_scan {
            None
        } else {
            density_to_xparams(rho).ok().map(|x| {
                if (x.r03 + x.r12).abs() >= (x.r12 - x.r03).abs() {
                    0.0
                } else {
                    FRAC_PI_2
                }
            })
        };

    let mut opt = match fixed_phi {
        Some(phi) => search_theta(|t| objective(t, phi), phi),
        None => search_theta_phi(&objective),
    };
    canonicalise(&mut opt, &objective);
    opt
}

fn search_theta(f: impl Fn(f64) -> f64, phi: f64) -> ClassicalOptimum {
    let n = (FRAC_PI_2 / THETA_GRID_STEP).round() as usize;
    let values: Vec<f64> = (0..=n).map(|i| f(i as f64 * THETA_GRID_STEP)).collect();
    let mut trace = Vec::with_capacity(2 * RESTARTS);
    let mut best = (0.0, f64::NEG_INFINITY);
    for idx in top_k::<RESTARTS>(&values).into_iter().filter(|&i| i != usize::MAX) {
        let t0 = idx as f64 * THETA_GRID_STEP;
        trace.push((MeasurementBasis::from_angles(t0, phi), values[idx]));
        // Keep the grid value when refinement does not beat it.
        let mut cand = (t0, values[idx]);
        let refined = golden_max(&f, t0 - THETA_GRID_STEP, t0 + THETA_GRID_STEP, REFINE_XTOL);
        if refined.1 > cand.1 {
            cand = refined;
        }
        trace.push((MeasurementBasis::from_angles(wrap(cand.0, FRAC_PI_2), phi), cand.1));
        if cand.1 > best.1 {
            best = cand;
        }
    }
    ClassicalOptimum { value: best.1, basis: MeasurementBasis::from_angles(wrap(best.0, FRAC_PI_2), phi), trace }
}

fn search_theta_phi(f: &impl Fn(f64, f64) -> f64) -> ClassicalOptimum {
    let nt = (FRAC_PI_2 / THETA_GRID_STEP).round() as usize;
    let np = (2.0 * PI / PHI_GRID_STEP).round() as usize;
    let mut values = Vec::with_capacity((nt + 1) * np);
    for i in 0..=nt {
        for j in 0..np {
            values.push(f(i as f64 * THETA_GRID_STEP, j as f64 * PHI_GRID_STEP));
        }
    }
    let mut trace = Vec::with_capacity(2 * RESTARTS);
    let mut best: Option<(f64, f64, f64)> = None;
    for idx in top_k::<RESTARTS>(&values).into_iter().filter(|&i| i != usize::MAX) {
        let (mut t, mut p) = ((idx / np) as f64 * THETA_GRID_STEP, (idx % np) as f64 * PHI_GRID_STEP);
        let mut v = values[idx];
        trace.push((MeasurementBasis::from_angles(t, p), v));
        // Coordinate ascent with golden-section line searches.
        for _ in 0..100 {
            let before = v;
            let (nt_, vt) = golden_max(|x| f(x, p), t - THETA_GRID_STEP, t + THETA_GRID_STEP, REFINE_XTOL);
            if vt > v {
                t = nt_;
                v = vt;
            }
            let (np_, vp) = golden_max(|y| f(t, y), p - PHI_GRID_STEP, p + PHI_GRID_STEP, REFINE_XTOL);
            if vp > v {
                p = np_;
                v = vp;
            }
            if v - before < 1e-15 {
                break;
            }
        }
        let (t, p) = (wrap(t, FRAC_PI_2), wrap(p, 2.0 * PI));
        trace.push((MeasurementBasis::from_angles(t, p), v));
        if best.is_none_or(|b| v > b.2) {
            best = Some((t, p, v));
        }
    }
    let (t, p, v) = best.expect("grid is non-empty");
    ClassicalOptimum { value: v, basis: MeasurementBasis::from_angles(t, p), trace }
}

/// Reports a tied mirror image θ → π/2 − θ on the upper side.
fn canonicalise(opt: &mut ClassicalOptimum, f: &impl Fn(f64, f64) -> f64) {
    let (t, p) = (opt.basis.theta, opt.basis.phi);
    if t < FRAC_PI_4 {
        let mirror = FRAC_PI_2 - t;
        let fm = f(mirror, p);
        if fm >= opt.value - TIE_TOL {
            opt.basis = MeasurementBasis::from_angles(mirror, p);
            opt.value = opt.value.max(fm);
        }
    }
}

/// D = I − J with the full breakdown.
pub fn quantum_discord(rho: &DensityMatrix4) -> CorrelationBreakdown {
    quantum_discord_with(rho, OptimizerOptions::default())
}

pub fn quantum_discord_with(rho: &DensityMatrix4, options: OptimizerOptions) -> CorrelationBreakdown {
    let mutual_info = mutual_information(rho);
    let opt = classical_correlation_with(rho, options);
    CorrelationBreakdown {
        mutual_info,
        classical: opt.value,
        discord: mutual_info - opt.value,
        optimal_basis: opt.basis,
        optimizer_trace: opt.trace,
    }
}
