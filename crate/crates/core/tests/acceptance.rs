//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use common::{bisect, lambda_oscillatory, random_density, random_qubit_density, rng, Bloch};
use discordlab_core::transitions::uniform_grid;
use discordlab_core::*;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::{Duration, Instant};

const DEPTH: usize = 64;

type Criterion = (&'static str, fn() -> (bool, String));

fn bds(c1: f64, c2: f64, c3: f64) -> DensityMatrix4 {
    bds_to_density(&BellDiagonalParams::new(c1, c2, c3).unwrap()).unwrap()
}

fn reference_bds() -> DensityMatrix4 {
    bds(1.0, -0.6, 0.6)
}

fn channel(tau: f64) -> DephasingChannel {
    DephasingChannel::new(1.0, tau).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn markovian_single_transition() -> (bool, String) {
    let (rep, took) = timed(|| detect_transitions(&reference_bds(), &channel(0.5), 3.0, 1e-3, DEPTH).unwrap());
    let root = bisect(|nu| lambda_oscillatory(1.0, 0.5, nu).powi(2) - 0.6, 0.0, 1.0, 1e-10);
    let sudden: Vec<_> = rep.events.iter().filter(|e| e.kind == TransitionKind::Sudden).collect();
    let brackets = sudden.len() == 1 && {
        let (l, r) = sudden[0].nu_interval;
        l - 1e-10 <= root && root <= r + 1e-10
    };
    let ok = rep.events.len() == 1 && brackets && took < Duration::from_secs(60);
    let interval = sudden.first().map(|e| e.nu_interval);
    (
        ok,
        format!(
            "events={} sudden={} interval={interval:?} root={root:.12} took={took:.2?}",
            rep.events.len(),
            sudden.len()
        ),
    )
}

fn non_markovian_triple_transition() -> (bool, String) {
    let (rep, took) = timed(|| detect_transitions(&reference_bds(), &channel(5.0), 3.0, 1e-3, DEPTH).unwrap());
    let sudden = rep.count(TransitionKind::Sudden);
    let ok = sudden == 3 && rep.events.len() == 3 && took < Duration::from_secs(300);
    let at: Vec<f64> = rep.events.iter().map(|e| e.nu_interval.0).collect();
    (ok, format!("events={} sudden={sudden} at={at:.6?} took={took:.2?}", rep.events.len()))
}

fn continuity_under_perturbation() -> (bool, String) {
    let rho = perturbed_bds_to_density(&PerturbedBDSParams { c1: 1.0, c2: -0.6, c3: 0.6, epsilon: 0.02 }).unwrap();
    let rep = detect_transitions(&rho, &channel(5.0), 3.0, 1e-3, DEPTH).unwrap();
    let sudden = rep.count(TransitionKind::Sudden);
    let mut intermediate: Vec<f64> = rep
        .samples
        .iter()
        .map(|s| s.1)
        .filter(|&t| BasisLabel::of_theta(t) == BasisLabel::Intermediate && t > FRAC_PI_4 && t < FRAC_PI_2)
        .collect();
    intermediate.sort_by(f64::total_cmp);
    intermediate.dedup();
    let ok = sudden == 0 && rep.max_adjacent_jump < 0.05 && intermediate.len() >= 5;
    (
        ok,
        format!(
            "events={} sudden={sudden} max_adjacent_jump={:.4} distinct_intermediate={}",
            rep.events.len(),
            rep.max_adjacent_jump,
            intermediate.len()
        ),
    )
}

fn channel_correctness() -> (bool, String) {
    let ch = channel(5.0);
    let samples = volterra_coherence(&ch, 30.0, 1e-3).unwrap();
    let volterra_err =
        samples.iter().map(|&(t, y)| (y - lambda_envelope(&ch, ch.nu_of_time(t)).unwrap()).abs()).fold(0.0, f64::max);

    let mut r = rng(4);
    let (mut completeness, mut trace) = (0.0_f64, 0.0_f64);
    for i in 0..1000 {
        let ch = channel(if i % 2 == 0 { 5.0 } else { 0.5 });
        let nu = r.random_range(0.0..3.0);
        let (m1, m2) = kraus_ops(&ch, nu).unwrap();
        let sum = m1.adjoint() * m1 + m2.adjoint() * m2;
        completeness = completeness.max(sum.max_abs_diff(&ComplexMatrix::identity2()));
        let out = apply_two_qubit(&ch, &random_density(&mut r), nu).unwrap();
        trace = trace.max((out.matrix().trace() - C64::new(1.0, 0.0)).norm());
    }
    let ok = volterra_err <= 1e-6 && completeness <= 1e-12 && trace <= 1e-12;
    (ok, format!("volterra_max_err={volterra_err:.3e} kraus_completeness={completeness:.3e} trace_err={trace:.3e}"))
}

fn spectrum_formulas() -> (bool, String) {
    let mut r = rng(5);
    let (mut n, mut worst) = (0, 0.0_f64);
    while n < 1000 {
        let c = [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)];
        let Ok(p) = BellDiagonalParams::new(c[0], c[1], c[2]) else { continue };
        let mut closed = bds_eigenvalues(&p);
        closed.sort_by(f64::total_cmp);
        let rho = bds_to_density(&p).unwrap();
        let mut numeric = eig_hermitian(rho.matrix()).unwrap().as_slice().to_vec();
        numeric.sort_by(f64::total_cmp);
        for (a, b) in closed.iter().zip(&numeric) {
            worst = worst.max((a - b).abs());
        }
        n += 1;
    }
    (worst <= 1e-12, format!("samples={n} max_err={worst:.3e}"))
}

fn discord_sanity() -> (bool, String) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi_plus = {
        let mut m = ComplexMatrix::zeros(4).unwrap();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m.set(i, j, C64::new(s * s, 0.0));
        }
        validate_density(&m).unwrap()
    };
    let bell = quantum_discord(&phi_plus).discord;

    let mut r = rng(6);
    let mut product = 0.0_f64;
    for _ in 0..200 {
        let m = kron(&random_qubit_density(&mut r), &random_qubit_density(&mut r)).unwrap();
        product = product.max(quantum_discord(&validate_density(&m).unwrap()).discord.abs());
    }

    let rho = reference_bds();
    let b = quantum_discord(&rho);
    let oracle = Bloch::of(&rho);
    let (brute_j, _, _) = oracle.brute_force(3600, 36);
    let brute_d = b.mutual_info - brute_j;
    let ok = (bell - 1.0).abs() <= 1e-6
        && product <= 1e-9
        && (b.discord - 0.278072).abs() <= 1e-5
        && (brute_d - 0.278072).abs() <= 1e-5;
    (
        ok,
        format!(
            "bell={bell:.9} product_max={product:.3e} bds: I={:.6} J={:.6} D={:.6} brute_force_D={brute_d:.6}",
            b.mutual_info, b.classical, b.discord
        ),
    )
}

fn chen_oracle_agreement() -> (bool, String) {
    let mut sampler = SampleSeed::new(7, 1).rng();
    let (mut labelled, mut label_worst, mut label_bad) = (0, 0.0_f64, 0);
    let (mut neither, mut neither_bad, mut neither_bf_boundary) = (0, 0, 0);
    let near_boundary =
        |t: f64| (0..=4).map(|k| (t - k as f64 * FRAC_PI_4).abs()).fold(f64::INFINITY, f64::min) <= 1e-3;
    for _ in 0..1000 {
        let p = sampler.sample();
        let rho = xstate_to_density(&p).unwrap();
        let oracle = Bloch::of(&rho);
        let (brute, bt, _) = oracle.brute_force(2000, 12);
        let jz = oracle.j_angles(0.0, 0.0);
        let jx = oracle.j_angles(FRAC_PI_4, 0.0).max(oracle.j_angles(FRAC_PI_4, FRAC_PI_2));
        let gap = match chen_classify(&p).unwrap().label {
            ChenLabel::SigmaZOptimal => Some(brute - jz),
            ChenLabel::SigmaXOptimal => Some(brute - jx),
            ChenLabel::Both => Some((brute - jz).max(brute - jx)),
            ChenLabel::Neither => {
                neither += 1;
                if near_boundary(classical_correlation(&rho).1.theta()) {
                    neither_bad += 1;
                }
                if near_boundary(bt) {
                    neither_bf_boundary += 1;
                }
                None
            }
        };
        if let Some(g) = gap {
            labelled += 1;
            label_worst = label_worst.max(g);
            if g > 1e-6 {
                label_bad += 1;
            }
        }
    }
    let ok = label_bad == 0 && neither_bad == 0;
    (
        ok,
        format!(
            "labelled={labelled} label_mismatches={label_bad} worst_gap={label_worst:.3e} neither={neither} \
             neither_with_boundary_theta={neither_bad} (brute force agrees on {neither_bf_boundary})"
        ),
    )
}

fn survey() -> (bool, String) {
    let (a, took) = timed(|| random_survey(100_000, 42, 1e-9).unwrap());
    let b = random_survey(100_000, 42, 1e-9).unwrap();
    let ok = a.n_sudden_capable == 0 && a == b && took < Duration::from_secs(600);
    (
        ok,
        format!(
            "n={} sudden_capable={} sigma_z={} sigma_x={} both={} neither={} deterministic={} took={took:.2?}",
            a.n,
            a.n_sudden_capable,
            a.n_sigma_z,
            a.n_sigma_x,
            a.n_both,
            a.n_neither,
            a == b
        ),
    )
}

fn trajectory_continuity() -> (bool, String) {
    let rho = reference_bds();
    let mut ok = true;
    let mut detail = Vec::new();
    for tau in [0.5, 5.0] {
        let ch = channel(tau);
        let mut maxima = Vec::new();
        for n in [3000, 6000, 12000] {
            let traj = evolve_trajectory(&rho, &ch, &uniform_grid(3.0, n).unwrap()).unwrap();
            ok &= (traj[0].discord - 0.278072).abs() <= 1e-5;
            let m = traj.windows(2).map(|w| (w[1].discord - w[0].discord).abs()).fold(0.0, f64::max);
            maxima.push(m);
        }
        let ratios: Vec<f64> = maxima.windows(2).map(|w| w[0] / w[1]).collect();
        ok &= ratios.iter().all(|&q| q >= 2.0);
        detail.push(format!("tau={tau}: max_dD={maxima:.3?} ratios={ratios:.5?}"));
    }
    (ok, detail.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("markovian single sudden transition", markovian_single_transition),
        ("non-markovian triple sudden transition", non_markovian_triple_transition),
        ("continuity under perturbation", continuity_under_perturbation),
        ("channel correctness", channel_correctness),
        ("spectrum formulas", spectrum_formulas),
        ("discord sanity", discord_sanity),
        ("sigma_x/sigma_z condition oracle agreement", chen_oracle_agreement),
        ("random survey", survey),
        ("trajectory continuity", trajectory_continuity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        if !ok {
            failed += 1;
        }
        println!("criterion {}: {} - {name}: {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
