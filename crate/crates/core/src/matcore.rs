//! Dense complex matrices for one and two qubits.
//!
//! Storage is a fixed 4×4 array regardless of dimension so every value is
//! `Copy` and nothing here allocates. Two-qubit operators use the basis order
//! |00⟩, |01⟩, |10⟩, |11⟩ with subsystem A as the left (slow) factor.

use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // resolved inherently when std is in the build graph
use num_traits::Float;

use crate::error::{Error, Result, Violation};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Elementwise tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on |tr ρ - 1| for a validated two-qubit state.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [[C64; 4]; 4],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, data: [[ZERO; 4]; 4] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i][i] = ONE;
        }
        Ok(m)
    }

    pub fn from_rows2(rows: [[C64; 2]; 2]) -> Self {
        let mut data = [[ZERO; 4]; 4];
        for i in 0..2 {
            data[i][..2].copy_from_slice(&rows[i]);
        }
        Self { dim: 2, data }
    }

    pub fn from_rows4(rows: [[C64; 4]; 4]) -> Self {
        Self { dim: 4, data: rows }
    }

    /// Real diagonal matrix; `diag.len()` must be 2 or 4.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i][i] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    pub fn identity2() -> Self {
        Self::from_rows2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn identity4() -> Self {
        let mut m = Self { dim: 4, data: [[ZERO; 4]; 4] };
        for i in 0..4 {
            m.data[i][i] = ONE;
        }
        m
    }

    pub fn sigma_x() -> Self {
        Self::from_rows2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> Self {
        let i = C64::new(0.0, 1.0);
        Self::from_rows2([[ZERO, -i], [i, ZERO]])
    }

    pub fn sigma_z() -> Self {
        Self::from_rows2([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// Pauli matrix σ_k for k = 1, 2, 3.
    pub fn pauli(k: usize) -> Result<Self> {
        match k {
            1 => Ok(Self::sigma_x()),
            2 => Ok(Self::sigma_y()),
            3 => Ok(Self::sigma_z()),
            _ => Err(Error::invalid_argument("Pauli index must be 1, 2 or 3")),
        }
    }

    /// |ψ⟩⟨ψ| for a normalised single-qubit ket.
    pub fn projector2(ket: [C64; 2]) -> Self {
        let mut m = Self { dim: 2, data: [[ZERO; 4]; 4] };
        for i in 0..2 {
            for j in 0..2 {
                m.data[i][j] = ket[i] * ket[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row][col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.data[row][col] = value;
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i][i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] = self.data[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = *self;
        for row in out.data.iter_mut().take(self.dim) {
            for v in row.iter_mut().take(self.dim) {
                *v *= factor;
            }
        }
        out
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// Largest |m_ij - conj(m_ji)| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.data[i][j] - self.data[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest elementwise modulus of `self - other`; `inf` on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.data[i][j] - other.data[i][j]).norm());
            }
        }
        worst
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::invalid_argument("matrix product of mismatched dimensions"));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = Self { dim: n, data: [[ZERO; 4]; 4] };
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        out
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[i][j] = f(self.data[i][j], rhs.data[i][j]);
            }
        }
        out
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        Ok(unitary.try_mul(self)?.mul_unchecked(&unitary.adjoint()))
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

/// Panics on mismatched dimensions; use [`ComplexMatrix::try_mul`] when the
/// dimensions are not known statically.
impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.mul_unchecked(&rhs)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::invalid_argument("matrix dimension must be 2 or 4"))
    }
}

/// Tensor product `a ⊗ b` of two single-qubit operators.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::invalid_argument("kron expects two 2x2 operands"));
    }
    let mut out = ComplexMatrix { dim: 4, data: [[ZERO; 4]; 4] };
    for (ia, ja, ib, jb) in index_quads() {
        out.data[2 * ia + ib][2 * ja + jb] = a.data[ia][ja] * b.data[ib][jb];
    }
    Ok(out)
}

fn index_quads() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|k| ((k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1))
}

/// Subsystem label for partial traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced operator on `keep`, for any 4×4 operator (normalised or not).
pub fn partial_trace_operator(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if m.dim != 4 {
        return Err(Error::invalid_argument("partial trace expects a 4x4 operator"));
    }
    let mut out = ComplexMatrix { dim: 2, data: [[ZERO; 4]; 4] };
    for i in 0..2 {
        for j in 0..2 {
            out.data[i][j] = match keep {
                Subsystem::A => m.data[2 * i][2 * j] + m.data[2 * i + 1][2 * j + 1],
                Subsystem::B => m.data[i][j] + m.data[2 + i][2 + j],
            };
        }
    }
    Ok(out)
}

pub fn partial_trace(rho: &DensityMatrix4, keep: Subsystem) -> ComplexMatrix {
    partial_trace_operator(&rho.0, keep).expect("density matrix is 4x4")
}

/// Real eigenvalues of a Hermitian matrix, sorted in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalues {
    values: [f64; 4],
    len: usize,
}

impl Eigenvalues {
    fn from_unsorted(mut values: [f64; 4], len: usize) -> Self {
        values[..len].sort_unstable_by(|a, b| b.total_cmp(a));
        Self { values, len }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.len]
    }

    pub fn min(&self) -> f64 {
        self.as_slice().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sum(&self) -> f64 {
        self.as_slice().iter().sum()
    }
}

/// Eigenvalues by cyclic complex Jacobi rotations.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Eigenvalues> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::invalid_argument(alloc::format!(
            "eigensolver needs a Hermitian matrix (defect {defect:e})"
        )));
    }
    let n = m.dim;
    let mut a = *m;
    for i in 0..n {
        a.data[i][i] = C64::new(a.data[i][i].re, 0.0);
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    let mut values = [0.0; 4];
    for (i, v) in values.iter_mut().enumerate().take(n) {
        *v = a.data[i][i].re;
    }
    Ok(Eigenvalues::from_unsorted(values, n))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.dim {
        for j in 0..a.dim {
            if i != j {
                s += a.data[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates a_pq with the unitary U = D R, where D removes the phase of
/// a_pq and R is the real symmetric Jacobi rotation; a ← U† a U.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.data[p][q];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let phase = apq / g;
    let app = a.data[p][p].re;
    let aqq = a.data[q][q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns p and q of U: U_pp = c, U_qp = -s e^{-iα}, U_pq = s, U_qq = c e^{-iα}.
    let phase_c = phase.conj();
    let u_pp = C64::new(c, 0.0);
    let u_qp = -phase_c * s;
    let u_pq = C64::new(s, 0.0);
    let u_qq = phase_c * c;

    let n = a.dim;
    // a ← a U (columns p, q)
    for k in 0..n {
        let akp = a.data[k][p];
        let akq = a.data[k][q];
        a.data[k][p] = akp * u_pp + akq * u_qp;
        a.data[k][q] = akp * u_pq + akq * u_qq;
    }
    // a ← U† a (rows p, q)
    for k in 0..n {
        let apk = a.data[p][k];
        let aqk = a.data[q][k];
        a.data[p][k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a.data[q][k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a.data[p][q] = ZERO;
    a.data[q][p] = ZERO;
    a.data[p][p] = C64::new(a.data[p][p].re, 0.0);
    a.data[q][q] = C64::new(a.data[q][q].re, 0.0);
}

/// Closed-form eigenvalues of a Hermitian 2×2 matrix.
pub fn eig_hermitian_2x2(m: &ComplexMatrix) -> Result<Eigenvalues> {
    if m.dim != 2 {
        return Err(Error::invalid_argument("expected a 2x2 matrix"));
    }
    let (l0, l1) = block_eigenvalues(m.data[0][0].re, m.data[1][1].re, m.data[0][1]);
    Ok(Eigenvalues::from_unsorted([l0, l1, 0.0, 0.0], 2))
}

fn block_eigenvalues(d0: f64, d1: f64, off: C64) -> (f64, f64) {
    let mean = 0.5 * (d0 + d1);
    let half_gap = 0.5 * (d0 - d1);
    let r = half_gap.hypot(off.norm());
    (mean + r, mean - r)
}

/// Closed-form eigenvalues for an X-shaped 4×4 matrix: the {|00⟩,|11⟩} and
/// {|01⟩,|10⟩} blocks diagonalise independently. Fails with `NotXShaped` if
/// any entry off the diagonal and anti-diagonal exceeds `1e-10`.
pub fn eig_x_shaped(m: &ComplexMatrix) -> Result<Eigenvalues> {
    if m.dim != 4 {
        return Err(Error::invalid_argument("expected a 4x4 matrix"));
    }
    if let Some((row, col, magnitude)) = largest_off_x_entry(m).filter(|e| e.2 > X_SHAPE_TOL) {
        return Err(Error::NotXShaped { row, col, magnitude });
    }
    if m.hermiticity_defect() > HERMITIAN_TOL {
        return Err(Error::invalid_argument("eigensolver needs a Hermitian matrix"));
    }
    let (a, b) = block_eigenvalues(m.data[0][0].re, m.data[3][3].re, m.data[0][3]);
    let (c, d) = block_eigenvalues(m.data[1][1].re, m.data[2][2].re, m.data[1][2]);
    Ok(Eigenvalues::from_unsorted([a, b, c, d], 4))
}

/// Magnitude bound on entries outside the X pattern.
pub const X_SHAPE_TOL: f64 = 1e-10;

/// Largest entry outside the diagonal and anti-diagonal of a 4×4 matrix.
pub(crate) fn largest_off_x_entry(m: &ComplexMatrix) -> Option<(usize, usize, f64)> {
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let mag = m.data[i][j].norm();
            if worst.is_none_or(|w| mag > w.2) {
                worst = Some((i, j, mag));
            }
        }
    }
    worst
}

/// −Σ λ log₂ λ with 0·log 0 = 0. Eigenvalues in [−1e-10, 0) count as zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -PSD_TOL {
            return Err(Error::invalid_state(Violation::NegativeEigenvalue, l));
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy in bits of a unit-trace positive semidefinite matrix.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let tr = m.trace();
    let dev = (tr - ONE).norm();
    if dev > 1e-10 {
        return Err(Error::invalid_state(Violation::Trace, dev));
    }
    let eig = if m.dim == 2 { eig_hermitian_2x2(m)? } else { eig_hermitian(m)? };
    entropy_of_spectrum(eig.as_slice())
}

/// Binary entropy H₂(p) in bits, with H₂(0) = H₂(1) = 0.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(ComplexMatrix);

impl DensityMatrix4 {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0.get(row, col)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4(ComplexMatrix::identity4().scale_real(0.25))
    }

    /// Wraps a matrix the caller has already proven valid (channel outputs
    /// of validated inputs, closed-form constructors).
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert_eq!(m.dim, 4);
        DensityMatrix4(m)
    }

    pub fn eigenvalues(&self) -> Eigenvalues {
        eig_hermitian(&self.0).expect("validated state is Hermitian")
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_spectrum(self.eigenvalues().as_slice()).unwrap_or(0.0)
    }
}

impl From<DensityMatrix4> for ComplexMatrix {
    fn from(rho: DensityMatrix4) -> Self {
        rho.0
    }
}

/// Checks trace, Hermiticity and positivity; the error carries the first
/// failed invariant and the measured deviation.
pub fn validate_density(m: &ComplexMatrix) -> Result<DensityMatrix4> {
    if m.dim != 4 {
        return Err(Error::invalid_state(Violation::Dimension, m.dim as f64));
    }
    let herm = m.hermiticity_defect();
    if herm > HERMITIAN_TOL {
        return Err(Error::invalid_state(Violation::Hermiticity, herm));
    }
    let tr_dev = (m.trace() - ONE).norm();
    if tr_dev > TRACE_TOL {
        return Err(Error::invalid_state(Violation::Trace, tr_dev));
    }
    let min_eig = eig_hermitian(m)?.min();
    if min_eig < -PSD_TOL {
        return Err(Error::invalid_state(Violation::NegativeEigenvalue, min_eig));
    }
    Ok(DensityMatrix4(*m))
}
