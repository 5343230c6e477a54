//! Time-dependent machinery: drive profiles, the auxiliary system behind the
//! Lewis invariant, phase decomposition into dynamical and geometric parts,
//! the closed-form geometric phase, and a direct Schrödinger-evolution
//! oracle on a fixed-m sector.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{QuantumNumbers, SectorBasis, SuGenerators};
use crate::numerics::quad::integrate_samples;
use crate::numerics::{ode_solve, ComplexMatrix, OdeSpec, QuadratureSpec};
use crate::su11::{pncs_coefficients, IrrepLabel, TiltParams};

type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Time-dependent amplifier parameters over one drive period.
#[derive(Clone)]
pub struct DriveProfile {
    omega: TimeFn,
    delta_omega: TimeFn,
    chi: TimeFn,
    psi: TimeFn,
    psi_dot: TimeFn,
    period: f64,
}

impl DriveProfile {
    /// Fully general profile; the caller supplies psi together with its
    /// analytic derivative.
    pub fn new(
        omega: impl Fn(f64) -> f64 + Send + Sync + 'static,
        delta_omega: impl Fn(f64) -> f64 + Send + Sync + 'static,
        chi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        psi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        psi_dot: impl Fn(f64) -> f64 + Send + Sync + 'static,
        period: f64,
    ) -> Result<Self> {
        if !(period > 0.0) {
            return Err(Error::InvalidParams(format!("period must be positive, got {period}")));
        }
        Ok(Self {
            omega: Arc::new(omega),
            delta_omega: Arc::new(delta_omega),
            chi: Arc::new(chi),
            psi: Arc::new(psi),
            psi_dot: Arc::new(psi_dot),
            period,
        })
    }

    /// The default family: constant Omega, DeltaOmega, chi and a linearly
    /// winding pump phase psi(t) = psi0 + winding * 2 pi t / T.
    pub fn constant(
        omega: f64,
        delta_omega: f64,
        chi: f64,
        psi0: f64,
        winding: i32,
        period: f64,
    ) -> Result<Self> {
        let rate = winding as f64 * 2.0 * std::f64::consts::PI / period;
        Self::new(
            move |_| omega,
            move |_| delta_omega,
            move |_| chi,
            move |t| psi0 + rate * t,
            move |_| rate,
            period,
        )
    }

    pub fn omega(&self, t: f64) -> f64 {
        (self.omega)(t)
    }

    pub fn delta_omega(&self, t: f64) -> f64 {
        (self.delta_omega)(t)
    }

    pub fn chi(&self, t: f64) -> f64 {
        (self.chi)(t)
    }

    pub fn psi(&self, t: f64) -> f64 {
        (self.psi)(t)
    }

    pub fn psi_dot(&self, t: f64) -> f64 {
        (self.psi_dot)(t)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Adiabatic tilt angle artanh(2 chi / Omega) at time t.
    pub fn adiabatic_theta(&self, t: f64) -> Result<f64> {
        let ratio = 2.0 * self.chi(t) / self.omega(t);
        if !(ratio < 1.0) {
            return Err(Error::UnstableRegime { twice_chi: 2.0 * self.chi(t), omega: self.omega(t) });
        }
        Ok(ratio.atanh())
    }
}

/// Auxiliary displacement parameters (theta, gamma) along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryState {
    pub theta: f64,
    pub gamma: f64,
}

/// Right-hand side of the auxiliary system:
///   theta_dot = -2 chi sin(psi + gamma)
///   gamma_dot = Omega - 2 chi coth(theta) cos(psi + gamma)
///
/// The coth makes theta = 0 a genuine singularity; trajectories must start
/// away from it.
pub fn auxiliary_rhs(t: f64, s: &AuxiliaryState, d: &DriveProfile) -> Result<(f64, f64)> {
    if s.theta.abs() < 1e-9 {
        return Err(Error::SinhSingularity(s.theta.abs()));
    }
    let chi = d.chi(t);
    let phase = d.psi(t) + s.gamma;
    let theta_dot = -2.0 * chi * phase.sin();
    let gamma_dot = d.omega(t) - 2.0 * chi * (s.theta.cosh() / s.theta.sinh()) * phase.cos();
    Ok((theta_dot, gamma_dot))
}

/// Integrated auxiliary trajectory on a uniform time grid.
#[derive(Debug, Clone)]
pub struct AuxTrajectory {
    t0: f64,
    step: f64,
    states: Vec<AuxiliaryState>,
}

impl AuxTrajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.step
    }

    pub fn state(&self, i: usize) -> AuxiliaryState {
        self.states[i]
    }

    pub fn last(&self) -> AuxiliaryState {
        *self.states.last().expect("trajectories are never empty")
    }
}

/// Integrate the auxiliary system with fixed-step RK4.
pub fn integrate_auxiliary(
    d: &DriveProfile,
    initial: AuxiliaryState,
    spec: &OdeSpec,
) -> Result<AuxTrajectory> {
    let traj = ode_solve(
        |t, y, dy| {
            let s = AuxiliaryState { theta: y[0], gamma: y[1] };
            let (td, gd) = auxiliary_rhs(t, &s, d)?;
            dy[0] = td;
            dy[1] = gd;
            Ok(())
        },
        &[initial.theta, initial.gamma],
        spec,
    )?;
    Ok(AuxTrajectory {
        t0: spec.t0(),
        step: spec.step(),
        states: traj
            .into_iter()
            .map(|(_, y)| AuxiliaryState { theta: y[0], gamma: y[1] })
            .collect(),
    })
}

/// Lewis invariant I = cosh(theta) K0 + (sinh(theta)/2) e^{-i gamma} K+
/// + (sinh(theta)/2) e^{i gamma} K-, as a sector matrix.
pub fn invariant_matrix(s: &AuxiliaryState, basis: &SectorBasis) -> ComplexMatrix {
    let gens = SuGenerators::on_sector(basis);
    invariant_from_generators(s, &gens)
}

pub fn invariant_from_generators(s: &AuxiliaryState, gens: &SuGenerators) -> ComplexMatrix {
    let ch = s.theta.cosh();
    let sh = s.theta.sinh();
    gens.k0
        .scale(C64::new(ch, 0.0))
        .add(&gens.kp.scale(C64::from_polar(sh / 2.0, -s.gamma)))
        .add(&gens.km.scale(C64::from_polar(sh / 2.0, s.gamma)))
}

/// Decomposed Lewis phase: alpha = geometric - dynamical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub alpha_n: f64,
    pub dynamical: f64,
    pub geometric: f64,
}

fn check_grid(trajectory: &AuxTrajectory, spec: &QuadratureSpec) -> Result<()> {
    let expected = spec.subdivisions() + 1;
    if trajectory.len() != expected {
        return Err(Error::GridMismatch(format!(
            "trajectory has {} samples, quadrature grid expects {expected}",
            trajectory.len()
        )));
    }
    if (trajectory.time(0) - spec.lower()).abs() > 1e-12
        || (trajectory.step() - spec.step()).abs() > 1e-12 * spec.step().abs()
    {
        return Err(Error::GridMismatch("trajectory nodes differ from quadrature nodes".into()));
    }
    Ok(())
}

/// Total Lewis phase of D(xi)|N, m> along an integrated trajectory, by
/// Simpson quadrature of
///   (N+1)/2 [(gamma_dot - Omega)(cosh theta - 1)
///            + 2 chi cos(gamma + psi) sinh theta - Omega]
///   - DeltaOmega m/2 + Omega/2.
pub fn nonadiabatic_phase(
    d: &DriveProfile,
    trajectory: &AuxTrajectory,
    q: QuantumNumbers,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(phase_decomposition(d, trajectory, q, spec)?.alpha_n)
}

/// Dynamical and geometric kernels integrated separately on the same grid.
pub fn phase_decomposition(
    d: &DriveProfile,
    trajectory: &AuxTrajectory,
    q: QuantumNumbers,
    spec: &QuadratureSpec,
) -> Result<PhaseResult> {
    if q.angular() < 0 {
        return Err(Error::NegativeM(q.angular()));
    }
    check_grid(trajectory, spec)?;
    let level = (q.principal() as f64 + 1.0) / 2.0;
    let m_half = q.angular() as f64 / 2.0;

    let mut geo = Vec::with_capacity(trajectory.len());
    let mut dyn_ = Vec::with_capacity(trajectory.len());
    for i in 0..trajectory.len() {
        let t = trajectory.time(i);
        let s = trajectory.state(i);
        let (_, gamma_dot) = auxiliary_rhs(t, &s, d)?;
        let ch = s.theta.cosh();
        let sh = s.theta.sinh();
        let omega = d.omega(t);
        let cospg = (s.gamma + d.psi(t)).cos();
        geo.push(level * gamma_dot * (ch - 1.0));
        dyn_.push(
            level * (omega * ch - 2.0 * d.chi(t) * cospg * sh) - omega / 2.0
                + d.delta_omega(t) * m_half,
        );
    }
    let geometric = integrate_samples(&geo, trajectory.step())?;
    let dynamical = integrate_samples(&dyn_, trajectory.step())?;
    Ok(PhaseResult { alpha_n: geometric - dynamical, dynamical, geometric })
}

/// Adiabatic limit of the phase:
///   -int [ (N+1)/2 sqrt(Omega^2 - 4 chi^2) + DeltaOmega m/2 - Omega/2 ] dt.
pub fn adiabatic_phase(d: &DriveProfile, q: QuantumNumbers, spec: &QuadratureSpec) -> Result<f64> {
    if q.angular() < 0 {
        return Err(Error::NegativeM(q.angular()));
    }
    let level = (q.principal() as f64 + 1.0) / 2.0;
    let m_half = q.angular() as f64 / 2.0;
    let mut samples = Vec::with_capacity(spec.subdivisions() + 1);
    for t in spec.nodes() {
        let omega = d.omega(t);
        let chi = d.chi(t);
        let dressed_sq = omega * omega - 4.0 * chi * chi;
        if dressed_sq <= 0.0 {
            return Err(Error::UnstableRegime { twice_chi: 2.0 * chi, omega });
        }
        samples.push(level * dressed_sq.sqrt() + d.delta_omega(t) * m_half - omega / 2.0);
    }
    Ok(-integrate_samples(&samples, spec.step())?)
}

/// Closed-form geometric phase over one winding period:
///   Gamma_N = pi (N+1) (Omega - sqrt(Omega^2 - 4 chi^2)) / sqrt(Omega^2 - 4 chi^2).
pub fn berry_phase_closed(n: u32, omega: f64, chi: f64) -> Result<f64> {
    let dressed_sq = omega * omega - 4.0 * chi * chi;
    if dressed_sq <= 0.0 {
        return Err(Error::UnstableRegime { twice_chi: 2.0 * chi, omega });
    }
    let dressed = dressed_sq.sqrt();
    Ok(std::f64::consts::PI * (n as f64 + 1.0) * (omega - dressed) / dressed)
}

/// Geometric phase by quadrature of the adiabatic kernel,
///   (N+1)/2 int (cosh theta_ad - 1) psi_dot dt,
/// for drives whose pump phase winds by exactly +2 pi over the period.
pub fn berry_phase_quadrature(
    d: &DriveProfile,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // Winding gate.
    let psi_dot_samples: Vec<f64> = spec.nodes().map(|t| d.psi_dot(t)).collect();
    let winding = integrate_samples(&psi_dot_samples, spec.step())?;
    if (winding - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
        return Err(Error::NonWindingDrive(winding));
    }
    let mut samples = Vec::with_capacity(spec.subdivisions() + 1);
    for t in spec.nodes() {
        let theta = d.adiabatic_theta(t)?;
        samples.push((theta.cosh() - 1.0) * d.psi_dot(t));
    }
    Ok((n as f64 + 1.0) / 2.0 * integrate_samples(&samples, spec.step())?)
}

/// Result of a sector Schrödinger evolution.
pub struct Evolution {
    /// State at the final time.
    pub final_state: Vec<C64>,
    /// Continuously unwrapped arg of the overlap with the co-moving Lewis
    /// eigenstate D(xi(t)) |N, m>.
    pub overlap_phase: f64,
    /// Magnitude of the final overlap (1 up to integrator error when the
    /// initial state is the Lewis eigenstate).
    pub final_overlap_magnitude: f64,
    /// Largest norm deviation |  ||psi|| - 1 | observed along the run.
    pub norm_error: f64,
    /// The auxiliary trajectory integrated alongside the state.
    pub trajectory: AuxTrajectory,
}

/// Evolve a normalized sector state under H(t) with fixed-step RK4, tracking
/// the phase of its overlap with the co-moving invariant eigenstate.
///
/// The auxiliary system is integrated on the same grid; the overlap phase is
/// accumulated step to step so windings beyond pi are kept.
pub fn schrodinger_evolve(
    d: &DriveProfile,
    basis: &SectorBasis,
    initial: &[C64],
    q: QuantumNumbers,
    aux0: AuxiliaryState,
    spec: &OdeSpec,
) -> Result<Evolution> {
    if initial.len() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "initial state length {} vs sector dimension {}",
            initial.len(),
            basis.dim()
        )));
    }
    let norm0: f64 = initial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm0 - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidParams(format!("initial state norm {norm0} is not 1")));
    }
    if q.angular() != basis.m() {
        return Err(Error::DimensionMismatch(format!(
            "reference state m = {} does not label the sector m = {}",
            q.angular(),
            basis.m()
        )));
    }

    let gens = SuGenerators::on_sector(basis);
    let dim = basis.dim();
    // Structured sector application: H(t) v without rebuilding matrices.
    let k0_diag: Vec<f64> = (0..dim).map(|i| gens.k0[(i, i)].re).collect();
    let kp_sub: Vec<f64> = (0..dim - 1).map(|i| gens.kp[(i + 1, i)].re).collect();
    let m_half = basis.m() as f64 / 2.0;
    let apply_h = |t: f64, v: &[C64], out: &mut [C64]| {
        let omega = d.omega(t);
        let delta = d.delta_omega(t);
        let coupling = C64::from_polar(d.chi(t), d.psi(t));
        for i in 0..dim {
            let mut acc = v[i] * (omega * (k0_diag[i] - 0.5) + delta * m_half);
            if i > 0 {
                acc += coupling * kp_sub[i - 1] * v[i - 1];
            }
            if i + 1 < dim {
                acc += coupling.conj() * kp_sub[i] * v[i + 1];
            }
            out[i] = acc;
        }
    };

    let h = spec.step();
    let minus_i = C64::new(0.0, -1.0);
    let mut psi = initial.to_vec();
    let mut k1 = vec![C64::new(0.0, 0.0); dim];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();

    // Auxiliary trajectory on the same grid.
    let aux = integrate_auxiliary(d, aux0, spec)?;

    let k_label = IrrepLabel::new(basis.bargmann_index())?;
    let level = q.radial();
    let reference = |s: &AuxiliaryState| -> Result<Vec<C64>> {
        let tp = TiltParams::new(s.theta, s.gamma);
        pncs_coefficients(k_label, level, tp.zeta(), dim)
    };

    let overlap_with = |coeffs: &[C64], state: &[C64]| -> C64 {
        coeffs.iter().zip(state).map(|(c, s)| c.conj() * s).sum()
    };

    let mut ref_state = reference(&aux.state(0))?;
    let mut prev_overlap = overlap_with(&ref_state, &psi);
    let mut phase = prev_overlap.arg();
    let mut norm_error = (norm0 - 1.0).abs();

    for step in 0..spec.steps() {
        let t = spec.t0() + step as f64 * h;
        apply_h(t, &psi, &mut k1);
        for i in 0..dim {
            tmp[i] = psi[i] + minus_i * k1[i] * (0.5 * h);
        }
        apply_h(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = psi[i] + minus_i * k2[i] * (0.5 * h);
        }
        apply_h(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = psi[i] + minus_i * k3[i] * h;
        }
        apply_h(t + h, &tmp, &mut k4);
        for i in 0..dim {
            psi[i] += minus_i * (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }

        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        norm_error = norm_error.max((norm - 1.0).abs());
        if norm_error > 1e-6 {
            return Err(Error::NormDrift(norm_error));
        }

        ref_state = reference(&aux.state(step + 1))?;
        let overlap = overlap_with(&ref_state, &psi);
        // Accumulate the phase increment; steps are small enough that each
        // increment stays well inside (-pi, pi).
        let increment = (overlap / prev_overlap).arg();
        phase += increment;
        prev_overlap = overlap;
    }

    Ok(Evolution {
        final_state: psi,
        overlap_phase: phase,
        final_overlap_magnitude: prev_overlap.norm(),
        norm_error,
        trajectory: aux,
    })
}

/// Build the normalized Lewis eigenstate D(xi)|N, m> on a sector.
pub fn lewis_eigenstate(
    basis: &SectorBasis,
    q: QuantumNumbers,
    s: &AuxiliaryState,
) -> Result<Vec<C64>> {
    if q.angular() != basis.m() {
        return Err(Error::DimensionMismatch(format!(
            "state m = {} does not label the sector m = {}",
            q.angular(),
            basis.m()
        )));
    }
    let k = IrrepLabel::new(basis.bargmann_index())?;
    let tp = TiltParams::new(s.theta, s.gamma);
    pncs_coefficients(k, q.radial(), tp.zeta(), basis.dim())
}

/// Geometric phase extracted from a full quantum evolution around the drive
/// loop, antisymmetrized over the loop orientation.
///
/// For each orientation the trajectory starts on the exact auxiliary orbit
/// (theta held at artanh(2 chi/(Omega + psi_dot)), psi + gamma = 0) and the
/// geometric part is overlap phase plus the dynamical quadrature; reversing
/// the loop flips the geometric part and leaves the dynamical residue even,
/// so the half-difference cancels the leading finite-speed error.
pub fn schrodinger_geometric_phase(
    omega: f64,
    delta_omega: f64,
    chi: f64,
    q: QuantumNumbers,
    period: f64,
    steps: usize,
) -> Result<f64> {
    let mut per_orientation = [0.0_f64; 2];
    for (slot, winding) in [(0usize, -1i32), (1, 1)] {
        let d = DriveProfile::constant(omega, delta_omega, chi, 0.0, winding, period)?;
        let rate = winding as f64 * 2.0 * std::f64::consts::PI / period;
        let theta0 = (2.0 * chi / (omega + rate)).atanh();
        let aux0 = AuxiliaryState { theta: theta0, gamma: 0.0 };

        // Basis sized so the displaced reference state is fully interior.
        let n_max = q.principal() + 2 * 20 + q.angular().unsigned_abs();
        let basis = SectorBasis::new(q.angular(), n_max)?;
        let initial = lewis_eigenstate(&basis, q, &aux0)?;

        let spec = OdeSpec::new(0.0, period, steps)?;
        let evolution = schrodinger_evolve(&d, &basis, &initial, q, aux0, &spec)?;

        let quad = QuadratureSpec::new(0.0, period, steps)?;
        let phases = phase_decomposition(&d, &evolution.trajectory, q, &quad)?;
        per_orientation[slot] = evolution.overlap_phase + phases.dynamical;
    }
    Ok((per_orientation[0] - per_orientation[1]) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplifier::{energy, hamiltonian_matrix, AmplifierParams};
    use crate::numerics::hermitian_eigen;
    use crate::su11::displacement_from_generators;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    fn qn(n: u32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, m).unwrap()
    }

    #[test]
    fn auxiliary_rhs_limits() {
        let d = DriveProfile::constant(2.0, 0.4, 0.0, 0.0, 1, 10.0).unwrap();
        let s = AuxiliaryState { theta: 0.8, gamma: 0.3 };
        let (td, gd) = auxiliary_rhs(0.0, &s, &d).unwrap();
        assert_eq!(td, 0.0);
        assert!((gd - 2.0).abs() < 1e-15);

        // psi + gamma = pi/2 kills the coth term.
        let d = DriveProfile::constant(2.0, 0.0, 0.6, 0.0, 1, 10.0).unwrap();
        let s = AuxiliaryState { theta: 0.8, gamma: std::f64::consts::FRAC_PI_2 };
        let (td, gd) = auxiliary_rhs(0.0, &s, &d).unwrap();
        assert!((td + 1.2).abs() < 1e-14);
        assert!((gd - 2.0).abs() < 1e-12);

        let s = AuxiliaryState { theta: 1e-10, gamma: 0.0 };
        assert!(matches!(auxiliary_rhs(0.0, &s, &d), Err(Error::SinhSingularity(_))));
    }

    #[test]
    fn adiabatic_fixed_point_is_stationary() {
        // Static drive, psi = -gamma, tanh(theta) = 2 chi / Omega.
        let (omega, chi, psi0) = (2.0_f64, 0.6_f64, 0.9_f64);
        let d = DriveProfile::constant(omega, 0.4, chi, psi0, 0, 10.0).unwrap();
        let s = AuxiliaryState { theta: (2.0 * chi / omega).atanh(), gamma: -psi0 };
        let (td, gd) = auxiliary_rhs(0.0, &s, &d).unwrap();
        assert_eq!(td, 0.0);
        assert!(gd.abs() < 1e-12, "gamma_dot {gd:.3e}");
    }

    #[test]
    fn linear_drive_orbit_holds_theta_constant() {
        let (omega, chi, period) = (2.0_f64, 0.6_f64, 20.0_f64);
        let rate = TAU / period;
        let d = DriveProfile::constant(omega, 0.4, chi, 0.3, 1, period).unwrap();
        let theta0 = (2.0 * chi / (omega + rate)).atanh();
        let aux0 = AuxiliaryState { theta: theta0, gamma: -0.3 };
        let spec = OdeSpec::new(0.0, period, 10_000).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();
        let max_dev = (0..traj.len())
            .map(|i| (traj.state(i).theta - theta0).abs())
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-8, "theta wandered by {max_dev:.3e}");
        // gamma advances at -rate on the orbit.
        let expect_gamma = -0.3 - rate * period;
        assert!((traj.last().gamma - expect_gamma).abs() < 1e-7);
    }

    #[test]
    fn invariant_reduces_to_k0_and_has_equally_spaced_spectrum() {
        let basis = SectorBasis::new(0, 60).unwrap();
        let s = AuxiliaryState { theta: 0.0, gamma: 1.0 };
        let gens = SuGenerators::on_sector(&basis);
        assert!(invariant_matrix(&s, &basis).sub(&gens.k0).max_abs() < 1e-15);

        let basis = SectorBasis::new(0, 80).unwrap();
        let s = AuxiliaryState { theta: 0.7, gamma: 2.1 };
        let inv = invariant_matrix(&s, &basis);
        let (vals, _) = hermitian_eigen(&inv).unwrap();
        for (j, v) in vals.iter().take(basis.dim() / 4).enumerate() {
            let expect = 0.5 + j as f64;
            assert!((v - expect).abs() < 1e-8, "eigenvalue {j}: {v}");
        }
    }

    #[test]
    fn invariant_satisfies_its_defining_equation_along_a_trajectory() {
        let (omega, chi, period) = (2.0_f64, 0.55_f64, 12.0_f64);
        let d = DriveProfile::constant(omega, 0.3, chi, 0.2, 1, period).unwrap();
        let aux0 = AuxiliaryState { theta: 0.5, gamma: -0.2 };
        let steps = 48_000; // fine grid keeps the finite-difference dI/dt clean
        let spec = OdeSpec::new(0.0, period, steps).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();

        let basis = SectorBasis::new(0, 48).unwrap();
        let gens = SuGenerators::on_sector(&basis);
        let p_of = |t: f64| AmplifierParams::new(
            (d.omega(t) + d.delta_omega(t)) / 2.0,
            (d.omega(t) - d.delta_omega(t)) / 2.0,
            d.chi(t),
            d.psi(t),
        )
        .unwrap();

        let h = traj.step();
        let interior = basis.dim() / 3;
        for &i in &[steps / 4, steps / 2, 3 * steps / 4] {
            let before = invariant_from_generators(&traj.state(i - 1), &gens);
            let after = invariant_from_generators(&traj.state(i + 1), &gens);
            let didt = after.sub(&before).scale(C64::new(1.0 / (2.0 * h), 0.0));
            let ham = hamiltonian_matrix(&p_of(traj.time(i)), &gens);
            let inv = invariant_from_generators(&traj.state(i), &gens);
            let residual = didt
                .scale(C64::new(0.0, 1.0))
                .add(&inv.commutator(&ham))
                .leading_block(interior)
                .max_abs();
            assert!(residual < 1e-6, "invariance residual {residual:.3e}");
        }
    }

    #[test]
    fn static_drive_phase_equals_adiabatic_form() {
        let (omega, delta, chi, psi0, period) = (2.0, 0.4, 0.6, 0.7, 5.0);
        let d = DriveProfile::constant(omega, delta, chi, psi0, 0, period).unwrap();
        let aux0 =
            AuxiliaryState { theta: (2.0 * chi / omega).atanh(), gamma: -psi0 };
        let spec = OdeSpec::new(0.0, period, 2_000).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();
        let quad = QuadratureSpec::new(0.0, period, 2_000).unwrap();
        for q in [qn(0, 0), qn(3, 1), qn(4, 2)] {
            let full = nonadiabatic_phase(&d, &traj, q, &quad).unwrap();
            let adiab = adiabatic_phase(&d, q, &quad).unwrap();
            assert!((full - adiab).abs() < 1e-9, "{full} vs {adiab}");
        }
    }

    #[test]
    fn exact_orbit_phase_matches_the_reduced_integrand() {
        let (omega, delta, chi, period) = (2.0_f64, 0.4_f64, 0.6_f64, 16.0_f64);
        let rate = TAU / period;
        let d = DriveProfile::constant(omega, delta, chi, 0.0, 1, period).unwrap();
        let theta0 = (2.0 * chi / (omega + rate)).atanh();
        let aux0 = AuxiliaryState { theta: theta0, gamma: 0.0 };
        let spec = OdeSpec::new(0.0, period, 4_000).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();
        let quad = QuadratureSpec::new(0.0, period, 4_000).unwrap();

        for q in [qn(0, 0), qn(2, 0), qn(3, 1)] {
            let level = (q.principal() as f64 + 1.0) / 2.0;
            let constant = level
                * (2.0 * chi * (theta0.cosh() - 1.0) / theta0.sinh() - omega)
                - delta * q.angular() as f64 / 2.0
                + omega / 2.0;
            let phase = nonadiabatic_phase(&d, &traj, q, &quad).unwrap();
            assert!(
                (phase - constant * period).abs() < 1e-8,
                "{phase} vs {}",
                constant * period
            );
        }
    }

    #[test]
    fn phase_is_affine_in_level_and_angular_number() {
        let d = DriveProfile::constant(2.0, 0.4, 0.5, 0.1, 1, 9.0).unwrap();
        let aux0 = AuxiliaryState { theta: 0.61, gamma: -0.1 };
        let spec = OdeSpec::new(0.0, 9.0, 1_000).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();
        let quad = QuadratureSpec::new(0.0, 9.0, 1_000).unwrap();
        let alpha = |q: QuantumNumbers| nonadiabatic_phase(&d, &traj, q, &quad).unwrap();

        // Linear in (N+1) at fixed m.
        let delta_a = alpha(qn(2, 0)) - alpha(qn(0, 0));
        let delta_b = alpha(qn(4, 0)) - alpha(qn(2, 0));
        assert!((delta_a - delta_b).abs() < 1e-10);

        // The m-dependence is exactly -DeltaOmega m/2 integrated.
        let diff = alpha(qn(2, 2)) - alpha(qn(2, 0));
        assert!((diff + 0.4 * 9.0).abs() < 1e-10);
    }

    #[test]
    fn adiabatic_phase_examples() {
        // Constant drive: alpha = -T * E(q).
        let (omega1, omega2, chi, period) = (1.2, 0.8, 0.6, 3.0);
        let p = AmplifierParams::new(omega1, omega2, chi, 0.0).unwrap();
        let d = DriveProfile::constant(2.0, 0.4, chi, 0.0, 0, period).unwrap();
        let quad = QuadratureSpec::new(0.0, period, 400).unwrap();
        for q in [qn(0, 0), qn(2, 0), qn(3, 1)] {
            let phase = adiabatic_phase(&d, q, &quad).unwrap();
            let expect = -period * energy(&p, q).unwrap();
            assert!((phase - expect).abs() < 1e-10);
        }

        // chi = 0, DeltaOmega = 0, Omega = 2, T = 1, N = 0: zero.
        let d = DriveProfile::constant(2.0, 0.0, 0.0, 0.0, 0, 1.0).unwrap();
        let quad = QuadratureSpec::new(0.0, 1.0, 100).unwrap();
        assert!(adiabatic_phase(&d, qn(0, 0), &quad).unwrap().abs() < 1e-13);

        // Omega = 2, chi = 0.6: -(0.8 - 1) = 0.2.
        let d = DriveProfile::constant(2.0, 0.0, 0.6, 0.0, 0, 1.0).unwrap();
        let phase = adiabatic_phase(&d, qn(0, 0), &quad).unwrap();
        assert!((phase - 0.2).abs() < 1e-12);
    }

    #[test]
    fn closed_form_berry_phase_values() {
        assert_eq!(berry_phase_closed(0, 2.0, 0.0).unwrap(), 0.0);
        let quarter = berry_phase_closed(0, 2.0, 0.6).unwrap();
        assert!((quarter - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        let n3 = berry_phase_closed(3, 2.0, 0.6).unwrap();
        assert!((n3 - std::f64::consts::PI).abs() < 1e-14);
        assert!(matches!(berry_phase_closed(0, 2.0, 1.0), Err(Error::UnstableRegime { .. })));
    }

    #[test]
    fn quadrature_matches_closed_form_for_constant_drives() {
        for &chi in &[0.0, 0.3, 0.6, 0.9] {
            let d = DriveProfile::constant(2.0, 0.4, chi, 0.2, 1, 7.0).unwrap();
            let quad = QuadratureSpec::new(0.0, 7.0, 2_000).unwrap();
            for n in [0u32, 1, 3] {
                let by_quad = berry_phase_quadrature(&d, n, &quad).unwrap();
                let closed = berry_phase_closed(n, 2.0, chi).unwrap();
                assert!(
                    (by_quad - closed).abs() < 1e-8,
                    "chi={chi} n={n}: {by_quad} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn quadrature_rejects_non_winding_drives() {
        let d = DriveProfile::constant(2.0, 0.0, 0.5, 0.0, 2, 7.0).unwrap();
        let quad = QuadratureSpec::new(0.0, 7.0, 500).unwrap();
        assert!(matches!(
            berry_phase_quadrature(&d, 0, &quad),
            Err(Error::NonWindingDrive(_))
        ));
    }

    #[test]
    fn quadrature_self_converges_for_modulated_coupling() {
        let period = 11.0;
        let make = || {
            DriveProfile::new(
                |_| 2.0,
                |_| 0.0,
                move |t| 0.6 + 0.1 * (TAU * t / period).sin(),
                move |t| TAU * t / period,
                move |_| TAU / period,
                period,
            )
            .unwrap()
        };
        let coarse = berry_phase_quadrature(
            &make(),
            1,
            &QuadratureSpec::new(0.0, period, 1_000).unwrap(),
        )
        .unwrap();
        let dense = berry_phase_quadrature(
            &make(),
            1,
            &QuadratureSpec::new(0.0, period, 10_000).unwrap(),
        )
        .unwrap();
        assert!((coarse - dense).abs() < 1e-7, "{coarse} vs {dense}");
    }

    #[test]
    fn quadrature_is_reparameterization_invariant() {
        let period = 13.0;
        let linear = DriveProfile::constant(2.0, 0.1, 0.6, 0.0, 1, period).unwrap();
        // Smoothed-step winding with the same endpoints and total winding.
        let warped = DriveProfile::new(
            |_| 2.0,
            |_| 0.1,
            |_| 0.6,
            move |t| TAU * (t / period - (TAU * t / period).sin() / TAU),
            move |t| TAU / period * (1.0 - (TAU * t / period).cos()),
            period,
        )
        .unwrap();
        let quad = QuadratureSpec::new(0.0, period, 4_000).unwrap();
        let a = berry_phase_quadrature(&linear, 2, &quad).unwrap();
        let b = berry_phase_quadrature(&warped, 2, &quad).unwrap();
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn time_derivative_transform_matches_closed_form() {
        // Finite-difference D^dag(t) (i d/dt) D(t) against
        // gamma_dot (cosh-1) K0 - (e^{-i gamma}/2)(gamma_dot sinh + i theta_dot) K+
        //                      - (e^{+i gamma}/2)(gamma_dot sinh - i theta_dot) K-.
        let (omega, chi, period) = (2.0_f64, 0.5_f64, 10.0_f64);
        let d = DriveProfile::constant(omega, 0.3, chi, 0.4, 1, period).unwrap();
        let aux0 = AuxiliaryState { theta: 0.52, gamma: -0.4 };
        let steps = 20_000;
        let spec = OdeSpec::new(0.0, period, steps).unwrap();
        let traj = integrate_auxiliary(&d, aux0, &spec).unwrap();

        let basis = SectorBasis::new(0, 80).unwrap();
        let gens = SuGenerators::on_sector(&basis);
        let interior = basis.dim() / 4;
        let h = traj.step();
        for &i in &[steps / 3, 2 * steps / 3] {
            let disp = |s: AuxiliaryState| {
                displacement_from_generators(&TiltParams::new(s.theta, s.gamma), &gens).unwrap()
            };
            let d_mid = disp(traj.state(i));
            let d_plus = disp(traj.state(i + 1));
            let d_minus = disp(traj.state(i - 1));
            let ddot = d_plus.sub(&d_minus).scale(C64::new(0.0, 1.0 / (2.0 * h)));
            let fd = d_mid.dagger().mul(&ddot);

            let s = traj.state(i);
            let (theta_dot, gamma_dot) = auxiliary_rhs(traj.time(i), &s, &d).unwrap();
            let ch = s.theta.cosh();
            let sh = s.theta.sinh();
            let cp = -C64::from_polar(0.5, -s.gamma)
                * C64::new(gamma_dot * sh, theta_dot);
            let cm = -C64::from_polar(0.5, s.gamma)
                * C64::new(gamma_dot * sh, -theta_dot);
            let closed = gens
                .k0
                .scale(C64::new(gamma_dot * (ch - 1.0), 0.0))
                .add(&gens.kp.scale(cp))
                .add(&gens.km.scale(cm));
            let defect = fd.sub(&closed).leading_block(interior).max_abs();
            assert!(defect < 1e-5, "transform defect {defect:.3e}");
        }
    }

    #[test]
    fn stationary_state_accumulates_minus_energy_times_time() {
        let (omega1, omega2, chi, psi0) = (1.2, 0.8, 0.6, 0.4);
        let p = AmplifierParams::new(omega1, omega2, chi, psi0).unwrap();
        let d = DriveProfile::constant(2.0, 0.4, chi, psi0, 0, 6.0).unwrap();
        let basis = SectorBasis::new(0, 44).unwrap();
        let q = qn(0, 0);
        let aux0 = AuxiliaryState { theta: (2.0 * chi / 2.0).atanh(), gamma: -psi0 };
        let initial = lewis_eigenstate(&basis, q, &aux0).unwrap();
        let spec = OdeSpec::new(0.0, 6.0, 6_000).unwrap();
        let evolution = schrodinger_evolve(&d, &basis, &initial, q, aux0, &spec).unwrap();

        let expect = -energy(&p, q).unwrap() * 6.0;
        assert!(
            (evolution.overlap_phase - expect).abs() < 1e-7,
            "phase {} vs {expect}",
            evolution.overlap_phase
        );
        assert!((evolution.final_overlap_magnitude - 1.0).abs() < 1e-7);
        assert!(evolution.norm_error < 1e-8);
    }

    #[test]
    fn overlap_phase_reproduces_the_lewis_phase_quadrature() {
        // Driven (non-adiabatic) evolution: the measured overlap phase must
        // equal the alpha quadrature along the same trajectory.
        let (omega, delta, chi, period) = (2.0, 0.4, 0.6, 14.0);
        let d = DriveProfile::constant(omega, delta, chi, 0.0, 1, period).unwrap();
        let rate = TAU / period;
        let theta0 = (2.0 * chi / (omega + rate)).atanh();
        let aux0 = AuxiliaryState { theta: theta0, gamma: 0.0 };
        let basis = SectorBasis::new(0, 44).unwrap();
        let q = qn(0, 0);
        let initial = lewis_eigenstate(&basis, q, &aux0).unwrap();
        let steps = 14_000;
        let spec = OdeSpec::new(0.0, period, steps).unwrap();
        let evolution = schrodinger_evolve(&d, &basis, &initial, q, aux0, &spec).unwrap();

        let quad = QuadratureSpec::new(0.0, period, steps).unwrap();
        let alpha = nonadiabatic_phase(&d, &evolution.trajectory, q, &quad).unwrap();
        assert!(
            (evolution.overlap_phase - alpha).abs() < 1e-6,
            "overlap {} vs quadrature {alpha}",
            evolution.overlap_phase
        );
        assert!((evolution.final_overlap_magnitude - 1.0).abs() < 1e-7);
    }

    #[test]
    fn norm_drift_is_flagged_for_unstable_steps
    () {
        let d = DriveProfile::constant(2.0, 0.0, 0.3, 0.0, 0, 10.0).unwrap();
        let basis = SectorBasis::new(0, 80).unwrap();
        let q = qn(0, 0);
        let aux0 = AuxiliaryState { theta: 0.31, gamma: 0.0 };
        let initial = lewis_eigenstate(&basis, q, &aux0).unwrap();
        // Far too few steps: RK4 is unstable at h * ||H|| >> 1.
        let spec = OdeSpec::new(0.0, 10.0, 5).unwrap();
        assert!(matches!(
            schrodinger_evolve(&d, &basis, &initial, q, aux0, &spec),
            Err(Error::NormDrift(_))
        ));
    }

    #[test]
    fn geometric_phase_extraction_approaches_the_closed_form() {
        let extracted = schrodinger_geometric_phase(2.0, 0.4, 0.6, qn(0, 0), 50.0, 5_000).unwrap();
        let target = berry_phase_closed(0, 2.0, 0.6).unwrap();
        assert!(
            (extracted - target).abs() < 0.03,
            "extracted {extracted} vs {target}"
        );
    }
}
