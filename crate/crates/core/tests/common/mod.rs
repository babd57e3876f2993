//! Independent oracles for the integration and acceptance tests. Nothing here
//! calls the crate's optimizer or measurement code.

#![allow(dead_code, clippy::needless_range_loop)]

use discordlab_core::{validate_density, ComplexMatrix, DensityMatrix4, C64};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

pub fn rng(seed: u64) -> SmallRng {
    SmallRng::seed_from_u64(seed)
}

/// Λ(ν) for 4aτ > 1, written out directly.
pub fn lambda_oscillatory(a: f64, tau: f64, nu: f64) -> f64 {
    let mu = ((4.0 * a * tau).powi(2) - 1.0).sqrt();
    (-nu).exp() * ((mu * nu).cos() + (mu * nu).sin() / mu)
}

/// Plain bisection for a sign change of `f` on [lo, hi].
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// Entropy of a qubit with Bloch-vector length `r`.
fn qubit_entropy(r: f64) -> f64 {
    h2(0.5 * (1.0 + r.min(1.0)))
}

/// Pauli decomposition ρ = ¼(I + a·σ⊗I + I⊗b·σ + Σ Tᵢⱼ σᵢ⊗σⱼ).
pub struct Bloch {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

fn pauli(k: usize) -> [[C64; 2]; 2] {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        _ => [[o, z], [z, -o]],
    }
}

/// Tr[ρ (σⱼ ⊗ σₖ)] by explicit index sums.
fn expectation(rho: &DensityMatrix4, j: usize, k: usize) -> f64 {
    let (sa, sb) = (pauli(j), pauli(k));
    let mut acc = C64::new(0.0, 0.0);
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    acc += rho.get(2 * a1 + b1, 2 * a2 + b2) * sa[a2][a1] * sb[b2][b1];
                }
            }
        }
    }
    acc.re
}

impl Bloch {
    pub fn of(rho: &DensityMatrix4) -> Self {
        let mut out = Bloch { a: [0.0; 3], b: [0.0; 3], t: [[0.0; 3]; 3] };
        for i in 0..3 {
            out.a[i] = expectation(rho, i + 1, 0);
            out.b[i] = expectation(rho, 0, i + 1);
            for j in 0..3 {
                out.t[i][j] = expectation(rho, i + 1, j + 1);
            }
        }
        out
    }

    /// Classical correlation for a projective measurement of B along the
    /// unit axis `n`.
    pub fn j_axis(&self, n: [f64; 3]) -> f64 {
        let bn: f64 = (0..3).map(|i| self.b[i] * n[i]).sum();
        let tn: Vec<f64> = (0..3).map(|i| (0..3).map(|j| self.t[i][j] * n[j]).sum()).collect();
        let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let mut cond = 0.0;
        for s in [1.0, -1.0] {
            let p = 0.5 * (1.0 + s * bn);
            if p < 1e-14 {
                continue;
            }
            let r = [
                (self.a[0] + s * tn[0]) / (2.0 * p),
                (self.a[1] + s * tn[1]) / (2.0 * p),
                (self.a[2] + s * tn[2]) / (2.0 * p),
            ];
            cond += p * qubit_entropy(norm(r));
        }
        qubit_entropy(norm(self.a)) - cond
    }

    /// Same objective in the (θ, φ) parametrisation of the basis ket
    /// cos θ|0⟩ + e^{iφ} sin θ|1⟩.
    pub fn j_angles(&self, theta: f64, phi: f64) -> f64 {
        let (s2, c2) = (2.0 * theta).sin_cos();
        self.j_axis([s2 * phi.cos(), s2 * phi.sin(), c2])
    }

    /// Dense-grid maximum over θ ∈ [0, π/2] (`n_theta` intervals, so 0,
    /// π/4 and π/2 are on the grid when `n_theta` is a multiple of 4) and
    /// φ ∈ [0, π) (`n_phi` points).
    pub fn brute_force(&self, n_theta: usize, n_phi: usize) -> (f64, f64, f64) {
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for k in 0..n_phi {
            let phi = PI * k as f64 / n_phi as f64;
            for i in 0..=n_theta {
                let theta = 0.5 * PI * i as f64 / n_theta as f64;
                let v = self.j_angles(theta, phi);
                if v > best.0 {
                    best = (v, theta, phi);
                }
            }
        }
        best
    }
}

pub fn ket(c: [C64; 2]) -> [C64; 2] {
    let n = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
    [c[0] / n, c[1] / n]
}

pub fn random_c64(r: &mut SmallRng) -> C64 {
    C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

/// ρ = GG†/Tr(GG†) for a random complex 4×4 G.
pub fn random_density(r: &mut SmallRng) -> DensityMatrix4 {
    let mut g = [[C64::new(0.0, 0.0); 4]; 4];
    for row in g.iter_mut() {
        for x in row.iter_mut() {
            *x = random_c64(r);
        }
    }
    let g = ComplexMatrix::from_rows4(g);
    let m = g * g.adjoint();
    let tr = m.trace().re;
    validate_density(&m.scale_real(1.0 / tr)).unwrap()
}

/// Random single-qubit unitary from three angles and a phase.
pub fn random_unitary2(r: &mut SmallRng) -> ComplexMatrix {
    let (t, ph) = (r.random_range(0.0..PI), r.random_range(0.0..2.0 * PI));
    let (al, be) = (r.random_range(0.0..2.0 * PI), r.random_range(0.0..2.0 * PI));
    let e = |x: f64| C64::from_polar(1.0, x);
    let (c, s) = (t.cos(), t.sin());
    ComplexMatrix::from_rows2([[e(al) * c, -e(al + ph) * s], [e(be - ph) * s, e(be) * c]])
}

pub fn random_qubit_density(r: &mut SmallRng) -> ComplexMatrix {
    let v: [f64; 3] = [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1.0);
    let h = C64::new(0.5, 0.0);
    ComplexMatrix::from_rows2([
        [h * (1.0 + v[2] / n), C64::new(v[0] / n, -v[1] / n) * 0.5],
        [C64::new(v[0] / n, v[1] / n) * 0.5, h * (1.0 - v[2] / n)],
    ])
}

/// Random 4×4 unitary by Gram–Schmidt on random complex columns.
pub fn random_unitary4(r: &mut SmallRng) -> ComplexMatrix {
    let mut cols: Vec<[C64; 4]> = Vec::new();
    while cols.len() < 4 {
        let mut v = [C64::new(0.0, 0.0); 4];
        for x in v.iter_mut() {
            *x = random_c64(r);
        }
        for c in &cols {
            let dot: C64 = (0..4).map(|i| c[i].conj() * v[i]).sum();
            for i in 0..4 {
                v[i] -= dot * c[i];
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            cols.push(v.map(|x| x / n));
        }
    }
    let mut rows = [[C64::new(0.0, 0.0); 4]; 4];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..4 {
            rows[i][j] = c[i];
        }
    }
    ComplexMatrix::from_rows4(rows)
}
