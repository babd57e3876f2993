//! Colored-noise dephasing driven by random telegraph noise along z.
//!
//! A single qubit's coherence is multiplied by the envelope Λ(ν), where
//! ν = t/2τ, and the two-qubit map is the product of identical local channels
//! with Kraus operators M₁ = √((1+Λ)/2)·I and M₂ = √((1−Λ)/2)·σ₃.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // resolved inherently when std is in the build graph
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matcore::{kron, ComplexMatrix, DensityMatrix4};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingChannel {
    a: f64,
    tau: f64,
}

/// Damping regime selected by 4aτ relative to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// 4aτ > 1: damped oscillation with frequency µ = √((4aτ)² − 1).
    Oscillatory,
    /// 4aτ = 1.
    Critical,
    /// 4aτ < 1: monotone decay with rate spread κ = √(1 − (4aτ)²).
    Overdamped,
}

impl DephasingChannel {
    /// `a` is the noise amplitude (inverse time), `tau` the telegraph
    /// correlation time.
    pub fn new(a: f64, tau: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::invalid_argument(format!("noise amplitude must be >= 0, got {a}")));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::invalid_argument(format!("correlation time must be > 0, got {tau}")));
        }
        Ok(Self { a, tau })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// The dimensionless product 4aτ that selects the regime.
    pub fn memory_ratio(&self) -> f64 {
        4.0 * self.a * self.tau
    }

    pub fn regime(&self) -> Regime {
        let r = self.memory_ratio();
        if r > 1.0 {
            Regime::Oscillatory
        } else if r == 1.0 {
            Regime::Critical
        } else {
            Regime::Overdamped
        }
    }

    /// µ = √((4aτ)² − 1); `None` unless the channel is oscillatory.
    pub fn mu(&self) -> Option<f64> {
        let r = self.memory_ratio();
        (r > 1.0).then(|| (r * r - 1.0).sqrt())
    }

    pub fn nu_of_time(&self, t: f64) -> f64 {
        t / (2.0 * self.tau)
    }

    pub fn time_of_nu(&self, nu: f64) -> f64 {
        2.0 * self.tau * nu
    }

    /// Λ(ν) without argument validation.
    pub(crate) fn envelope(&self, nu: f64) -> f64 {
        let r = self.memory_ratio();
        let decay = (-nu).exp();
        if r > 1.0 {
            let mu = (r * r - 1.0).sqrt();
            let x = mu * nu;
            decay * (x.cos() + x.sin() / mu)
        } else if r == 1.0 {
            decay * (1.0 + nu)
        } else {
            // e^{-ν}[cosh κν + sinh κν / κ] written with decaying exponentials only.
            let kappa = (1.0 - r * r).sqrt();
            let slow = (-(1.0 - kappa) * nu).exp();
            let fast = (-(1.0 + kappa) * nu).exp();
            0.5 * ((1.0 + 1.0 / kappa) * slow + (1.0 - 1.0 / kappa) * fast)
        }
    }
}

/// ν = t/2τ, non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessTime(f64);

impl DimensionlessTime {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(Error::invalid_argument(format!("dimensionless time must be >= 0, got {nu}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Coherence envelope Λ(ν) ∈ [−1, 1] with Λ(0) = 1.
pub fn lambda_envelope(ch: &DephasingChannel, nu: f64) -> Result<f64> {
    let nu = DimensionlessTime::new(nu)?;
    Ok(ch.envelope(nu.value()))
}

/// Single-qubit Kraus pair (M₁, M₂) at time ν.
pub fn kraus_ops(ch: &DephasingChannel, nu: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let lambda = lambda_envelope(ch, nu)?;
    Ok(kraus_from_envelope(lambda))
}

pub(crate) fn kraus_from_envelope(lambda: f64) -> (ComplexMatrix, ComplexMatrix) {
    let keep = (0.5 * (1.0 + lambda)).max(0.0).sqrt();
    let flip = (0.5 * (1.0 - lambda)).max(0.0).sqrt();
    (ComplexMatrix::identity2().scale_real(keep), ComplexMatrix::sigma_z().scale_real(flip))
}

/// ρ(ν) = Σᵢⱼ (Mᵢ ⊗ Mⱼ) ρ₀ (Mᵢ ⊗ Mⱼ)†.
pub fn apply_two_qubit(ch: &DephasingChannel, rho0: &DensityMatrix4, nu: f64) -> Result<DensityMatrix4> {
    let lambda = lambda_envelope(ch, nu)?;
    Ok(apply_with_envelope(rho0, lambda))
}

pub(crate) fn apply_with_envelope(rho0: &DensityMatrix4, lambda: f64) -> DensityMatrix4 {
    let (m1, m2) = kraus_from_envelope(lambda);
    let ops = [m1, m2];
    let rho = rho0.matrix();
    let mut out = ComplexMatrix::zeros(4).expect("dimension 4");
    for mi in &ops {
        for mj in &ops {
            let k = kron(mi, mj).expect("2x2 Kraus operators");
            out = out + rho.conjugate_by(&k).expect("4x4 operands");
        }
    }
    DensityMatrix4::new_unchecked(out)
}

/// Integrates the single-qubit memory equation
/// dρ₀₁/dt = −4a² ∫₀ᵗ e^{−(t−s)/τ} ρ₀₁(s) ds
/// through its exact ODE reduction y′ = −4a²z, z′ = −z/τ + y with RK4.
/// Returns samples (t, ρ₀₁(t)/ρ₀₁(0)) on a uniform grid whose step is the
/// largest value ≤ `dt` that divides `t_max`.
pub fn volterra_coherence(ch: &DephasingChannel, t_max: f64, dt: f64) -> Result<Vec<(f64, f64)>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid_argument(format!("step must be > 0, got {dt}")));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::invalid_argument(format!("t_max must be > 0, got {t_max}")));
    }
    let steps = (t_max / dt).ceil() as usize;
    let h = t_max / steps as f64;
    let k2 = 4.0 * ch.a * ch.a;
    let inv_tau = 1.0 / ch.tau;
    let rhs = |y: f64, z: f64| (-k2 * z, -inv_tau * z + y);

    let mut out = Vec::with_capacity(steps + 1);
    let (mut y, mut z) = (1.0, 0.0);
    out.push((0.0, y));
    for i in 1..=steps {
        let (ky1, kz1) = rhs(y, z);
        let (ky2, kz2) = rhs(y + 0.5 * h * ky1, z + 0.5 * h * kz1);
        let (ky3, kz3) = rhs(y + 0.5 * h * ky2, z + 0.5 * h * kz2);
        let (ky4, kz4) = rhs(y + h * ky3, z + h * kz3);
        y += h / 6.0 * (ky1 + 2.0 * ky2 + 2.0 * ky3 + ky4);
        z += h / 6.0 * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
        out.push((i as f64 * h, y));
    }
    Ok(out)
}
