//! Shared verification suites: each check re-derives a closed-form result
//! through an independent numerical route and reports the measured residual.
//! The command-line `verify` front end and the acceptance tests both run
//! these.

use std::time::Instant;

use num_complex::Complex64 as C64;

use crate::amplifier::{
    eigenfunction, energy, hamiltonian_matrix, oscillator_wavefunction, tilt_parameters,
    AmplifierParams, PolarPoint,
};
use crate::berry::{
    berry_phase_closed, berry_phase_quadrature, integrate_auxiliary, invariant_from_generators,
    schrodinger_geometric_phase, AuxiliaryState, DriveProfile,
};
use crate::error::Error;
use crate::fock::{bargmann_index, QuantumNumbers, SectorBasis, SuGenerators};
use crate::numerics::{hermitian_eigen, ComplexMatrix, OdeSpec, QuadratureSpec};
use crate::photon_stats::{brute_force_j0, brute_force_q, q_a_params, q_b_params, Mode};
use crate::polar::{norm_quadrature, overlap_quadrature, PolarGrid, PolarOp};
use crate::su11::{
    displacement_from_generators, pncs_coefficients, similarity_coefficients,
    similarity_coefficients_timedep, GeneratorKind, IrrepLabel, SimilarityCoefficients, TiltParams,
};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    pub fn residual(suite: &'static str, name: impl Into<String>, measured: f64, tol: f64) -> Self {
        Self { suite, name: name.into(), measured, tolerance: tol, passed: measured.abs() <= tol }
    }

    pub fn flag(suite: &'static str, name: impl Into<String>, passed: bool) -> Self {
        Self {
            suite,
            name: name.into(),
            measured: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed,
        }
    }
}

/// All suite names, in the order they are normally run.
pub const SUITE_NAMES: [&str; 10] = [
    "spectrum",
    "diagonalization",
    "similarity",
    "coherent",
    "berry",
    "dynamics",
    "invariant",
    "mandel",
    "wavefunction",
    "orbit",
];

/// Run one suite by name. `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<CheckResult>> {
    match name {
        "spectrum" => Some(spectrum_suite(1e-8)),
        "diagonalization" => Some(diagonalization_suite(1e-8)),
        "similarity" => Some(similarity_suite(1e-8)),
        "coherent" => Some(coherent_suite()),
        "berry" => Some(berry_suite()),
        "dynamics" => Some(dynamics_suite()),
        "invariant" => Some(invariant_suite()),
        "mandel" => Some(mandel_suite(1e-8)),
        "wavefunction" => Some(wavefunction_suite()),
        "orbit" => Some(orbit_suite()),
        _ => None,
    }
}

/// Grid shared by the spectrum and diagonalization suites.
fn acceptance_grid() -> (Vec<(f64, f64)>, Vec<f64>, Vec<i32>) {
    (
        vec![(1.0, 1.0), (1.2, 0.8), (1.5, 0.5)],
        vec![0.0, 0.3, 0.6, 0.9],
        (0..=4).collect(),
    )
}

/// Largest prefix of eigenpairs whose truncation-boundary weight keeps the
/// expected eigenvalue contamination below `tol` (interior in the
/// tolerance-adaptive sense). The factor 50 was calibrated against measured
/// errors and leaves roughly an order of magnitude of headroom.
pub fn converged_eigen_prefix(vectors: &ComplexMatrix, tol: f64) -> usize {
    let dim = vectors.rows();
    let mut prefix = 0;
    for j in 0..dim {
        let boundary: f64 = (dim.saturating_sub(2)..dim).map(|r| vectors[(r, j)].norm_sqr()).sum();
        if boundary * 50.0 > tol {
            break;
        }
        prefix = j + 1;
    }
    prefix
}

/// Same rule for displacement columns.
fn interior_column_prefix(d: &ComplexMatrix, tol: f64) -> usize {
    let dim = d.rows();
    let mut prefix = 0;
    for j in 0..dim {
        let boundary: f64 = (dim.saturating_sub(2)..dim).map(|r| d[(r, j)].norm_sqr()).sum();
        if boundary * 50.0 > tol {
            break;
        }
        prefix = j + 1;
    }
    prefix
}

/// Criterion: interior sector eigenvalues against the closed-form spectrum.
pub fn spectrum_suite(tol: f64) -> Vec<CheckResult> {
    let started = Instant::now();
    let (pairs, chis, ms) = acceptance_grid();
    let mut out = Vec::new();
    let mut total_states = 0usize;
    for &(w1, w2) in &pairs {
        for &chi in &chis {
            for &m in &ms {
                let p = AmplifierParams::new(w1, w2, chi, 0.0).unwrap();
                let basis = SectorBasis::new(m, 60).unwrap();
                let gens = SuGenerators::on_sector(&basis);
                let h = hamiltonian_matrix(&p, &gens);
                // Interior in the tolerance-adaptive sense; the deepest grid
                // corner (chi = 0.9, high m) has no converged states at all
                // at this truncation, and reports an empty comparison.
                let (vals, vecs) = hermitian_eigen(&h).expect("sector Hamiltonian is Hermitian");
                let prefix = converged_eigen_prefix(&vecs, tol);
                total_states += prefix;
                let mut worst = 0.0_f64;
                for (j, q) in basis.states().iter().enumerate().take(prefix) {
                    let closed = energy(&p, *q).unwrap();
                    worst = worst.max((vals[j] - closed).abs());
                }
                out.push(CheckResult::residual(
                    "spectrum",
                    format!("w=({w1},{w2}) chi={chi} m={m} [{prefix} interior states]"),
                    worst,
                    tol,
                ));
            }
        }
    }
    out.push(CheckResult::flag(
        "spectrum",
        format!("interior coverage: {total_states} states compared"),
        total_states >= 300,
    ));
    out.push(CheckResult::residual(
        "spectrum",
        "runtime (s)",
        started.elapsed().as_secs_f64(),
        30.0,
    ));
    out
}

/// Criterion: off-diagonal residue of D^dag H D on the interior block.
pub fn diagonalization_suite(tol: f64) -> Vec<CheckResult> {
    let (pairs, chis, ms) = acceptance_grid();
    let mut out = Vec::new();
    let mut total_cols = 0usize;
    for &(w1, w2) in &pairs {
        for &chi in &chis {
            for &m in &ms {
                let p = AmplifierParams::new(w1, w2, chi, 0.0).unwrap();
                let basis = SectorBasis::new(m, 60).unwrap();
                let gens = SuGenerators::on_sector(&basis);
                let h = hamiltonian_matrix(&p, &gens);
                let tilt = tilt_parameters(&p).unwrap();
                let d = displacement_from_generators(&tilt, &gens).unwrap();
                let tilted = d.dagger().mul(&h).mul(&d);
                let prefix = interior_column_prefix(&d, tol);
                total_cols += prefix;
                let off = tilted.leading_block(prefix).max_offdiag();
                out.push(CheckResult::residual(
                    "diagonalization",
                    format!("w=({w1},{w2}) chi={chi} m={m} [{prefix} interior cols]"),
                    off,
                    tol,
                ));
            }
        }
    }
    out.push(CheckResult::flag(
        "diagonalization",
        format!("interior coverage: {total_cols} columns compared"),
        total_cols >= 300,
    ));
    out
}

/// Residual of one similarity transform against dense conjugation.
pub fn similarity_point_residual(
    gens: &SuGenerators,
    d: &ComplexMatrix,
    which: GeneratorKind,
    coeffs: &SimilarityCoefficients,
    interior: usize,
) -> f64 {
    let x = match which {
        GeneratorKind::KPlus => &gens.kp,
        GeneratorKind::KMinus => &gens.km,
        GeneratorKind::K0 => &gens.k0,
    };
    let conjugated = d.dagger().mul(x).mul(d);
    conjugated.sub(&coeffs.assemble(gens)).leading_block(interior).max_abs()
}

/// Criterion: both written forms of the similarity transforms against matrix
/// conjugation at pseudo-random (theta, gamma) points.
pub fn similarity_suite(tol: f64) -> Vec<CheckResult> {
    let basis = SectorBasis::new(0, 240).unwrap();
    let gens = SuGenerators::on_sector(&basis);
    let interior = 20;
    let mut out = Vec::new();
    let mut x = 0.61_f64;
    for point in 0..20 {
        x = (x * 997.0).fract();
        let theta = 1.2 * (0.05 + 0.95 * x);
        x = (x * 997.0).fract();
        let gamma = 2.0 * std::f64::consts::PI * x;
        let tp = TiltParams::new(theta, gamma);
        let d = displacement_from_generators(&tp, &gens).unwrap();
        let mut worst = 0.0_f64;
        for which in [GeneratorKind::KPlus, GeneratorKind::KMinus, GeneratorKind::K0] {
            for coeffs in [
                similarity_coefficients(&tp, which),
                similarity_coefficients_timedep(&tp, which),
            ] {
                worst = worst.max(similarity_point_residual(&gens, &d, which, &coeffs, interior));
            }
        }
        out.push(CheckResult::residual(
            "similarity",
            format!("point {point}: theta={theta:.4} gamma={gamma:.4}"),
            worst,
            tol,
        ));
    }
    out
}

/// Criterion: number-coherent-state coefficients against displacement-matrix
/// columns, plus normalization.
pub fn coherent_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &m in &[0i32, 1, 2, 4] {
        for &(mag, phase) in &[(0.3, 0.7), (0.6, 2.4)] {
            let zeta = C64::from_polar(mag, phase);
            let tp = TiltParams::from_zeta(zeta).unwrap();
            let basis = SectorBasis::new(m, 180 + m.unsigned_abs()).unwrap();
            let gens = SuGenerators::on_sector(&basis);
            let d = displacement_from_generators(&tp, &gens).unwrap();
            let k = IrrepLabel::new(bargmann_index(m)).unwrap();
            let mut column_worst = 0.0_f64;
            let mut norm_worst = 0.0_f64;
            for n in 0..=5u32 {
                let coeffs = pncs_coefficients(k, n, zeta, basis.dim()).unwrap();
                let col = d.column(n as usize);
                let dev = coeffs
                    .iter()
                    .zip(&col)
                    .take(basis.dim() - 20)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                column_worst = column_worst.max(dev);
                let norm: f64 =
                    pncs_coefficients(k, n, zeta, 90).unwrap().iter().map(|z| z.norm_sqr()).sum();
                norm_worst = norm_worst.max((norm - 1.0).abs());
            }
            out.push(CheckResult::residual(
                "coherent",
                format!("m={m} |zeta|={mag}: columns n<=5"),
                column_worst,
                1e-9,
            ));
            out.push(CheckResult::residual(
                "coherent",
                format!("m={m} |zeta|={mag}: normalization"),
                norm_worst,
                1e-8,
            ));
        }
    }
    out
}

/// Criterion: geometric-phase quadrature against the closed form, exact zero
/// at chi = 0, and linearity in (N+1).
pub fn berry_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let period = 7.0;
    let quad = QuadratureSpec::new(0.0, period, 2_000).unwrap();
    for &chi in &[0.0, 0.3, 0.6, 0.9] {
        let d = DriveProfile::constant(2.0, 0.4, chi, 0.2, 1, period).unwrap();
        let mut worst = 0.0_f64;
        for n in [0u32, 1, 3] {
            let by_quad = berry_phase_quadrature(&d, n, &quad).unwrap();
            let closed = berry_phase_closed(n, 2.0, chi).unwrap();
            worst = worst.max((by_quad - closed).abs());
        }
        out.push(CheckResult::residual(
            "berry",
            format!("chi={chi}: quadrature vs closed form"),
            worst,
            1e-8,
        ));
    }

    let zero = berry_phase_closed(4, 2.0, 0.0).unwrap();
    out.push(CheckResult::flag("berry", "chi=0 gives exactly zero", zero == 0.0));

    let base = berry_phase_closed(0, 2.0, 0.6).unwrap();
    let mut worst = 0.0_f64;
    for n in [1u32, 2, 3, 5] {
        let scaled = berry_phase_closed(n, 2.0, 0.6).unwrap();
        worst = worst.max((scaled / (n as f64 + 1.0) / base - 1.0).abs());
    }
    out.push(CheckResult::residual("berry", "linearity in N+1", worst, 1e-15));
    out
}

/// Criterion: geometric phase extracted from full Schrödinger evolution
/// converges to the closed form as the drive slows down.
pub fn dynamics_suite() -> Vec<CheckResult> {
    let started = Instant::now();
    let target = berry_phase_closed(0, 2.0, 0.6).unwrap();
    let q = QuantumNumbers::new(0, 0).unwrap();
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for &period in &[50.0_f64, 100.0, 200.0, 400.0] {
        let steps = (period / 0.01) as usize;
        let extracted = schrodinger_geometric_phase(2.0, 0.4, 0.6, q, period, steps).unwrap();
        let err = (extracted - target).abs();
        errors.push(err);
        out.push(CheckResult::residual(
            "dynamics",
            format!("T={period}: |extracted - pi/4|"),
            err,
            if period == 400.0 { 5e-3 } else { f64::INFINITY },
        ));
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    out.push(CheckResult::flag("dynamics", "error decreases monotonically with T", monotone));
    out.push(CheckResult::residual(
        "dynamics",
        "runtime (s)",
        started.elapsed().as_secs_f64(),
        120.0,
    ));
    out
}

/// Criterion: the invariant equation i dI/dt + [I, H] = 0 along integrated
/// trajectories (finite-difference dI/dt).
pub fn invariant_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &(m, theta0) in &[(0i32, 0.5), (1, 0.7)] {
        let (omega, delta, chi, period) = (2.0, 0.4, 0.55, 12.0);
        let d = DriveProfile::constant(omega, delta, chi, 0.2, 1, period).unwrap();
        let aux0 = AuxiliaryState { theta: theta0, gamma: -0.2 };
        let steps = 48_000;
        let spec = OdeSpec::new(0.0, period, steps).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();

        let basis = SectorBasis::new(m, 48 + m.unsigned_abs()).unwrap();
        let gens = SuGenerators::on_sector(&basis);
        let interior = basis.dim() / 3;
        let h = traj.step();
        let mut worst = 0.0_f64;
        for &i in &[steps / 4, steps / 2, 3 * steps / 4] {
            let before = invariant_from_generators(&traj.state(i - 1), &gens);
            let after = invariant_from_generators(&traj.state(i + 1), &gens);
            let didt = after.sub(&before).scale(C64::new(1.0 / (2.0 * h), 0.0));
            let t = traj.time(i);
            let p = AmplifierParams::new(
                (d.omega(t) + d.delta_omega(t)) / 2.0,
                (d.omega(t) - d.delta_omega(t)) / 2.0,
                d.chi(t),
                d.psi(t),
            )
            .unwrap();
            let ham = hamiltonian_matrix(&p, &gens);
            let inv = invariant_from_generators(&traj.state(i), &gens);
            let residual = didt
                .scale(C64::new(0.0, 1.0))
                .add(&inv.commutator(&ham))
                .leading_block(interior)
                .max_abs();
            worst = worst.max(residual);
        }
        out.push(CheckResult::residual(
            "invariant",
            format!("m={m}: max |i dI/dt + [I,H]| along trajectory"),
            worst,
            1e-6,
        ));
    }
    out
}

/// Criterion: closed-form Mandel parameters against the brute-force Fock
/// computation, number-state limit, and the a/b symmetry at m = 0.
pub fn mandel_suite(tol: f64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let states = [(0u32, 0i32), (2, 0), (3, 1), (4, 2), (5, 5)];
    let n_max = 60;
    for &chi in &[0.0, 0.2, 0.4, 0.6, 0.8] {
        let p = AmplifierParams::new(1.0, 1.0, chi, 0.3).unwrap();
        let mut worst = 0.0_f64;
        let mut consistent = true;
        for &(n, m) in &states {
            let q = QuantumNumbers::new(n, m).unwrap();
            for (mode, closed) in [(Mode::A, q_a_params(&p, q)), (Mode::B, q_b_params(&p, q))] {
                let brute = brute_force_q(mode, &p, q, n_max);
                match (closed, brute) {
                    (Ok(c), Ok(b)) => worst = worst.max((c.q - b.q).abs()),
                    (Err(Error::DenominatorVanishes(_)), Err(Error::DenominatorVanishes(_))) => {}
                    (c, b) => {
                        consistent = false;
                        out.push(CheckResult::flag(
                            "mandel",
                            format!("chi={chi} (N={n}, m={m}): outcome mismatch {c:?} vs {b:?}"),
                            false,
                        ));
                    }
                }
            }
        }
        out.push(CheckResult::residual(
            "mandel",
            format!("chi={chi}: closed vs brute force"),
            worst,
            tol,
        ));
        if chi == 0.0 {
            // theta = 0: occupied modes are exact number states.
            let q = QuantumNumbers::new(2, 0).unwrap();
            let exact = q_a_params(&p, q).unwrap().q == -1.0
                && brute_force_q(Mode::A, &p, q, 40).unwrap().q == -1.0;
            out.push(CheckResult::flag("mandel", "chi=0 gives exactly -1", exact));
        }
        let _ = consistent;
    }

    // Q_a = Q_b identically at m = 0.
    let p = AmplifierParams::new(1.0, 1.0, 0.6, 0.0).unwrap();
    let mut worst = 0.0_f64;
    for n in [0u32, 2, 4, 6] {
        let q = QuantumNumbers::new(n, 0).unwrap();
        let a = q_a_params(&p, q).unwrap().q;
        let b = q_b_params(&p, q).unwrap().q;
        worst = worst.max((a - b).abs());
    }
    out.push(CheckResult::residual("mandel", "Q_a = Q_b at m = 0", worst, 0.0));

    // J0 conservation of the displaced states.
    let mut worst = 0.0_f64;
    for &(n, m) in &[(0u32, 0i32), (3, 1), (4, 2)] {
        let q = QuantumNumbers::new(n, m).unwrap();
        let j0 = brute_force_j0(&p, q, 40).unwrap();
        worst = worst.max((j0 - m as f64 / 2.0).abs());
    }
    out.push(CheckResult::residual("mandel", "<J0> of displaced states", worst, 1e-10));
    out
}

/// Criterion: wavefunction normalization/orthogonality quadratures and the
/// polar-operator eigenvalue checks.
///
/// The Casimir check asserts the eigenvalue k(k-1) = (m^2 - 1)/4 that the
/// exact identity K^2 = J0^2 - 1/4 forces.
pub fn wavefunction_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let osc = |n_r: u32, m: i32| {
        move |r: f64, phi: f64| {
            let q = QuantumNumbers::new(2 * n_r + m.unsigned_abs(), m).unwrap();
            oscillator_wavefunction(q, PolarPoint::new(r, phi).unwrap()).unwrap()
        }
    };

    let mut worst = 0.0_f64;
    for (n, m) in [(0u32, 0i32), (1, 0), (0, 2), (2, 1)] {
        let norm = norm_quadrature(osc(n, m), 10.0, 160, 32);
        worst = worst.max((norm - 1.0).abs());
    }
    let p = AmplifierParams::new(1.2, 0.8, 0.6, 0.3).unwrap();
    for (n, m) in [(1u32, 1u32), (2, 0)] {
        let f = |r: f64, phi: f64| eigenfunction(&p, n, m, PolarPoint::new(r, phi).unwrap()).unwrap();
        let norm = norm_quadrature(f, 12.0, 200, 64);
        worst = worst.max((norm - 1.0).abs());
    }
    out.push(CheckResult::residual("wavefunction", "normalization quadratures", worst, 1e-6));

    let ortho = overlap_quadrature(osc(0, 0), osc(1, 0), 10.0, 160, 32).norm();
    out.push(CheckResult::residual("wavefunction", "orthogonality <0,0|1,0>", ortho, 1e-6));

    let grid = PolarGrid::new(600, 64, 12.0).unwrap();

    let field = grid.sample(osc(1, 0));
    let applied = grid.apply(PolarOp::K0, &field).unwrap();
    let dev = grid.relative_deviation(&applied, &field, C64::new(1.5, 0.0));
    out.push(CheckResult::residual("wavefunction", "K0 eigenvalue (N+1)/2", dev, 1e-4));

    let field = grid.sample(osc(1, 2));
    let applied = grid.apply(PolarOp::J0, &field).unwrap();
    let dev = grid.relative_deviation(&applied, &field, C64::new(1.0, 0.0));
    out.push(CheckResult::residual("wavefunction", "J0 eigenvalue m/2", dev, 1e-4));

    let field = grid.sample(osc(1, 1));
    let applied = grid.apply(PolarOp::Casimir, &field).unwrap();
    let dev = grid.relative_deviation(&applied, &field, C64::new(0.0, 0.0));
    out.push(CheckResult::residual(
        "wavefunction",
        "Casimir eigenvalue k(k-1) at m=1",
        dev,
        1e-4,
    ));
    let field = grid.sample(osc(0, 3));
    let applied = grid.apply(PolarOp::Casimir, &field).unwrap();
    let k = bargmann_index(3);
    let dev = grid.relative_deviation(&applied, &field, C64::new(k * (k - 1.0), 0.0));
    out.push(CheckResult::residual(
        "wavefunction",
        "Casimir eigenvalue k(k-1) at m=3",
        dev,
        1e-4,
    ));
    out
}

/// Criterion: the exact linear-drive orbit holds theta constant.
pub fn orbit_suite() -> Vec<CheckResult> {
    let (omega, chi, period) = (2.0_f64, 0.6_f64, 20.0_f64);
    let rate = 2.0 * std::f64::consts::PI / period;
    let d = DriveProfile::constant(omega, 0.4, chi, 0.3, 1, period).unwrap();
    let theta0 = (2.0 * chi / (omega + rate)).atanh();
    let aux0 = AuxiliaryState { theta: theta0, gamma: -0.3 };
    let spec = OdeSpec::new(0.0, period, 10_000).unwrap();
    let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();
    let max_dev =
        (0..traj.len()).map(|i| (traj.state(i).theta - theta0).abs()).fold(0.0, f64::max);
    vec![CheckResult::residual(
        "orbit",
        "max |theta(t) - theta0| over one period, 10^4 steps",
        max_dev,
        1e-8,
    )]
}
