//! Parametric two-qubit state families: Bell-diagonal, perturbed Bell-diagonal
//! and real X states, plus a seeded sampler of random X states.

#[allow(unused_imports)] // resolved inherently when std is in the build graph
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Violation};
use crate::matcore::{largest_off_x_entry, validate_density, ComplexMatrix, DensityMatrix4, C64, X_SHAPE_TOL};

/// Slack allowed on the Bell-diagonal eigenvalue formulas and X-state bounds.
pub const PARAM_TOL: f64 = 1e-12;

/// ¼(I + Σ c_j σ_j ⊗ σ_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let p = Self { c1, c2, c3 };
        p.validate()?;
        Ok(p)
    }

    /// Validity is non-negativity of the four closed-form eigenvalues.
    pub fn validate(&self) -> Result<()> {
        for c in [self.c1, self.c2, self.c3] {
            if !c.is_finite() || c.abs() > 1.0 + PARAM_TOL {
                return Err(Error::invalid_argument("Bell-diagonal coefficients must lie in [-1, 1]"));
            }
        }
        let min = bds_eigenvalues(self).into_iter().fold(f64::INFINITY, f64::min);
        if min < -PARAM_TOL {
            return Err(Error::invalid_state(Violation::NegativeEigenvalue, min));
        }
        Ok(())
    }
}

/// λ₁,₂ = ¼(1 ± c₁ ± c₂ − c₃), λ₃,₄ = ¼(1 ± c₁ ∓ c₂ + c₃), in that order.
pub fn bds_eigenvalues(p: &BellDiagonalParams) -> [f64; 4] {
    let BellDiagonalParams { c1, c2, c3 } = *p;
    [0.25 * (1.0 + c1 + c2 - c3), 0.25 * (1.0 - c1 - c2 - c3), 0.25 * (1.0 + c1 - c2 + c3), 0.25 * (1.0 - c1 + c2 + c3)]
}

pub fn bds_to_density(p: &BellDiagonalParams) -> Result<DensityMatrix4> {
    p.validate()?;
    let x = XStateParams {
        p00: 0.25 * (1.0 + p.c3),
        p11: 0.25 * (1.0 - p.c3),
        p22: 0.25 * (1.0 - p.c3),
        p33: 0.25 * (1.0 + p.c3),
        r12: 0.25 * (p.c1 + p.c2),
        r03: 0.25 * (p.c1 - p.c2),
    };
    Ok(DensityMatrix4::new_unchecked(x.to_matrix()))
}

/// Bell-diagonal state shifted by ε(I ⊗ σ₃ + σ₃ ⊗ I) with c′₁ = c₁ − ε,
/// c′₂ = c₂ + ε, c′₃ = c₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedBDSParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub epsilon: f64,
}

impl PerturbedBDSParams {
    pub fn primed(&self) -> (f64, f64, f64) {
        (self.c1 - self.epsilon, self.c2 + self.epsilon, self.c3)
    }

    fn xparams(&self) -> XStateParams {
        let (c1, c2, c3) = self.primed();
        let e = self.epsilon;
        XStateParams {
            p00: 0.25 * (1.0 + c3 + 2.0 * e),
            p11: 0.25 * (1.0 - c3),
            p22: 0.25 * (1.0 - c3),
            p33: 0.25 * (1.0 + c3 - 2.0 * e),
            r12: 0.25 * (c1 + c2),
            r03: 0.25 * (c1 - c2),
        }
    }
}

pub fn perturbed_bds_to_density(p: &PerturbedBDSParams) -> Result<DensityMatrix4> {
    if !(p.c1.is_finite() && p.c2.is_finite() && p.c3.is_finite() && p.epsilon.is_finite()) {
        return Err(Error::invalid_argument("perturbed state parameters must be finite"));
    }
    if p.epsilon == 0.0 {
        return bds_to_density(&BellDiagonalParams { c1: p.c1, c2: p.c2, c3: p.c3 });
    }
    let m = p.xparams().to_matrix();
    let v = validate_density(&m)?;
    Ok(v)
}

/// Real X state:
///
/// ```text
/// ⎡p00  0    0    r03⎤
/// ⎢0    p11  r12  0  ⎥
/// ⎢0    r12  p22  0  ⎥
/// ⎣r03  0    0    p33⎦
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub p00: f64,
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub r12: f64,
    pub r03: f64,
}

impl XStateParams {
    pub fn validate(&self) -> Result<()> {
        let diag = [self.p00, self.p11, self.p22, self.p33];
        if diag.iter().chain([&self.r12, &self.r03]).any(|v| !v.is_finite()) {
            return Err(Error::invalid_argument("X-state parameters must be finite"));
        }
        let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
        if min < 0.0 {
            return Err(Error::invalid_state(Violation::Probabilities, min));
        }
        let dev = (diag.iter().sum::<f64>() - 1.0).abs();
        if dev > PARAM_TOL {
            return Err(Error::invalid_state(Violation::Probabilities, dev));
        }
        let excess_03 = self.r03.abs() - (self.p00 * self.p33).sqrt();
        let excess_12 = self.r12.abs() - (self.p11 * self.p22).sqrt();
        let excess = excess_03.max(excess_12);
        if excess > PARAM_TOL {
            return Err(Error::invalid_state(Violation::CoherenceBound, excess));
        }
        Ok(())
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.p00, self.p11, self.p22, self.p33]
    }

    pub(crate) fn to_matrix(self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_diagonal(&self.diagonal()).expect("dimension 4");
        let r03 = C64::new(self.r03, 0.0);
        let r12 = C64::new(self.r12, 0.0);
        m.set(0, 3, r03);
        m.set(3, 0, r03);
        m.set(1, 2, r12);
        m.set(2, 1, r12);
        m
    }
}

pub fn xstate_to_density(p: &XStateParams) -> Result<DensityMatrix4> {
    p.validate()?;
    Ok(DensityMatrix4::new_unchecked(p.to_matrix()))
}

/// Reads the five real X parameters back out of a density matrix. Entries
/// outside the X pattern and imaginary parts of ρ₀₃, ρ₁₂ must be ≤ 1e-10.
pub fn density_to_xparams(rho: &DensityMatrix4) -> Result<XStateParams> {
    let m = rho.matrix();
    if let Some((row, col, magnitude)) = largest_off_x_entry(m).filter(|e| e.2 > X_SHAPE_TOL) {
        return Err(Error::NotXShaped { row, col, magnitude });
    }
    for (row, col) in [(0, 3), (1, 2)] {
        let im = m.get(row, col).im.abs();
        if im > X_SHAPE_TOL {
            return Err(Error::NotXShaped { row, col, magnitude: im });
        }
    }
    Ok(XStateParams {
        p00: m.get(0, 0).re,
        p11: m.get(1, 1).re,
        p22: m.get(2, 2).re,
        p33: m.get(3, 3).re,
        r12: m.get(1, 2).re,
        r03: m.get(0, 3).re,
    })
}

/// Whether the matrix has only diagonal and anti-diagonal entries (to 1e-10)
/// and real coherences.
pub fn is_real_x(rho: &DensityMatrix4) -> bool {
    density_to_xparams(rho).is_ok()
}

/// Seed and stream selector for the ChaCha8 sampler. Distinct streams under
/// one seed are independent, so parallel workers take disjoint streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSeed {
    pub seed: u64,
    pub stream: u64,
}

impl SampleSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> XStateSampler {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        XStateSampler { rng }
    }
}

/// Iterator over random X states. Populations are uniform on the simplex;
/// each coherence is a uniform fraction of its positivity bound with a random sign.
#[derive(Debug, Clone)]
pub struct XStateSampler {
    rng: ChaCha8Rng,
}

impl XStateSampler {
    pub fn sample(&mut self) -> XStateParams {
        // Normalised unit exponentials are Dirichlet(1, 1, 1, 1).
        let mut e = [0.0; 4];
        for v in e.iter_mut() {
            let u: f64 = self.rng.random();
            *v = -(1.0 - u).ln();
        }
        let total: f64 = e.iter().sum();
        let mut p = e.map(|v| v / total);
        // Put any rounding residue on the largest entry so the sum is 1 to ~1 ulp.
        let residue = 1.0 - p.iter().sum::<f64>();
        let imax = (0..4).max_by(|&i, &j| p[i].total_cmp(&p[j])).unwrap_or(0);
        p[imax] += residue;

        let mut coherence = |bound: f64| {
            let u: f64 = self.rng.random();
            let sign = if self.rng.random::<bool>() { 1.0 } else { -1.0 };
            sign * u * bound
        };
        let r03 = coherence((p[0] * p[3]).sqrt());
        let r12 = coherence((p[1] * p[2]).sqrt());
        XStateParams { p00: p[0], p11: p[1], p22: p[2], p33: p[3], r12, r03 }
    }
}

impl Iterator for XStateSampler {
    type Item = XStateParams;

    fn next(&mut self) -> Option<XStateParams> {
        Some(self.sample())
    }
}

/// First sample of the stream selected by `seed`.
pub fn sample_random_xstate(seed: SampleSeed) -> XStateParams {
    seed.rng().sample()
}
