//! Quantum discord of two qubits under colored-noise dephasing.
//!
//! The crate is `no_std` and needs only `alloc`. Modules, bottom up:
//!
//! - [`matcore`]: 2×2 / 4×4 complex matrices, partial traces, Jacobi
//!   eigenvalues, von Neumann entropy, density-matrix validation.
//! - [`states`]: Bell-diagonal, perturbed Bell-diagonal and real X states, and
//!   a seeded random X-state sampler.
//! - [`channel`]: the decoherence envelope Λ(ν), Kraus operators, the
//!   two-qubit map, and an integro-differential cross-check of Λ.
//! - [`correlations`]: mutual information, classical correlation maximised
//!   over projective measurements on B, and discord.
//! - [`transitions`]: trajectories, sudden/continuous switch detection, the
//!   σx/σz optimality conditions for X states, and random-state surveys.

#![no_std]

extern crate alloc;

pub mod channel;
pub mod correlations;
pub mod error;
pub mod matcore;
pub mod search;
pub mod states;
pub mod transitions;

pub use channel::{
    apply_two_qubit, kraus_ops, lambda_envelope, volterra_coherence, DephasingChannel, DimensionlessTime, Regime,
};
pub use correlations::{
    classical_correlation, classical_correlation_at, classical_correlation_with, measure_on_B, mutual_information,
    quantum_discord, quantum_discord_with, ConditionalOutcome, CorrelationBreakdown, MeasurementBasis,
    OptimizerOptions,
};
pub use error::{Error, Result, Violation};
pub use matcore::{
    eig_hermitian, eig_x_shaped, kron, partial_trace, validate_density, von_neumann_entropy, ComplexMatrix,
    DensityMatrix4, Eigenvalues, Subsystem, C64,
};
pub use states::{
    bds_eigenvalues, bds_to_density, density_to_xparams, perturbed_bds_to_density, sample_random_xstate,
    xstate_to_density, BellDiagonalParams, PerturbedBDSParams, SampleSeed, XStateParams,
};
pub use transitions::{
    chen_classify, detect_transitions, detect_transitions_with, evolve_trajectory, random_survey, scan_basis,
    sudden_capable, BasisLabel, ChenClass, ChenLabel, DetectionSettings, SurveyReport, TrajectoryPoint,
    TransitionEvent, TransitionKind, TransitionReport,
};
