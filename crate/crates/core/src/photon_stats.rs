//! Mandel Q-parameters of the displaced number states, in closed form and by
//! brute-force expectation values on the truncated two-mode Fock space.

use num_complex::Complex64 as C64;

use crate::amplifier::{tilt_parameters, AmplifierParams};
use crate::error::{Error, Result};
use crate::fock::{
    boson_matrices, embed_sector_vector, jordan_schwinger_kplus, FullBasis, QuantumNumbers,
    SectorBasis,
};
use crate::numerics::matrix::expm_apply;
use crate::numerics::ComplexMatrix;

/// Photon-statistics classification per the sign of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsClass {
    SuperPoissonian,
    Poissonian,
    SubPoissonian,
    NumberState,
}

impl StatsClass {
    pub fn label(&self) -> &'static str {
        match self {
            StatsClass::SuperPoissonian => "super-Poissonian",
            StatsClass::Poissonian => "Poissonian",
            StatsClass::SubPoissonian => "sub-Poissonian",
            StatsClass::NumberState => "number-state",
        }
    }
}

/// Classification thresholds: a number state at |q + 1| < 1e-12, Poissonian
/// at |q| < 1e-12, otherwise by sign.
pub fn classify(q: f64) -> StatsClass {
    if (q + 1.0).abs() < 1e-12 {
        StatsClass::NumberState
    } else if q.abs() < 1e-12 {
        StatsClass::Poissonian
    } else if q > 0.0 {
        StatsClass::SuperPoissonian
    } else {
        StatsClass::SubPoissonian
    }
}

/// Mandel Q value plus its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MandelResult {
    pub q: f64,
    pub class: StatsClass,
}

impl MandelResult {
    fn new(q: f64) -> Self {
        Self { q, class: classify(q) }
    }
}

/// Diagonal expectation values on |N, m>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationTable {
    pub k0: f64,
    pub j0: f64,
    pub kpkm: f64,
    pub kmkp: f64,
}

/// `<K0>` = (N+1)/2, `<J0>` = m/2, `<K+K->` = (N^2-m^2)/4,
/// `<K-K+>` = (N^2-m^2)/4 + N + 1.
pub fn expectations(q: QuantumNumbers) -> ExpectationTable {
    let n = q.principal() as f64;
    let m = q.angular() as f64;
    let kpkm = (n * n - m * m) / 4.0;
    ExpectationTable { k0: (n + 1.0) / 2.0, j0: m / 2.0, kpkm, kmkp: kpkm + n + 1.0 }
}

/// Which mode's photon statistics to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

fn q_from_theta(theta: f64, q: QuantumNumbers, mode: Mode) -> Result<MandelResult> {
    if q.angular() < 0 {
        return Err(Error::NegativeM(q.angular()));
    }
    let n = q.principal() as f64;
    let m = q.angular() as f64;
    let ch = theta.cosh();
    let sh = theta.sinh();
    let denominator = match mode {
        Mode::A => ch * (n + 1.0) + m - 1.0,
        Mode::B => ch * (n + 1.0) - m - 1.0,
    };
    if denominator.abs() < 1e-12 {
        return Err(Error::DenominatorVanishes(if matches!(mode, Mode::A) { 'a' } else { 'b' }));
    }
    let value = sh * sh / 4.0 * (n * n - m * m + 2.0 * n + 2.0) / denominator - 1.0;
    Ok(MandelResult::new(value))
}

/// Q_a in terms of the tilt angle:
/// Q_a = (sinh^2 theta / 4) (N^2 - m^2 + 2N + 2) / (cosh(theta)(N+1) + m - 1) - 1.
pub fn q_a(theta: f64, q: QuantumNumbers) -> Result<MandelResult> {
    q_from_theta(theta, q, Mode::A)
}

/// Q_b with the conjugate denominator cosh(theta)(N+1) - m - 1.
pub fn q_b(theta: f64, q: QuantumNumbers) -> Result<MandelResult> {
    q_from_theta(theta, q, Mode::B)
}

fn q_from_params(p: &AmplifierParams, q: QuantumNumbers, mode: Mode) -> Result<MandelResult> {
    if q.angular() < 0 {
        return Err(Error::NegativeM(q.angular()));
    }
    let dressed = p.dressed_frequency()?;
    let n = q.principal() as f64;
    let m = q.angular() as f64;
    let omega = p.omega();
    let chi = p.chi();
    let denominator = match mode {
        Mode::A => omega * (n + 1.0) + (m - 1.0) * dressed,
        Mode::B => omega * (n + 1.0) - (m + 1.0) * dressed,
    };
    if denominator.abs() < 1e-12 {
        return Err(Error::DenominatorVanishes(if matches!(mode, Mode::A) { 'a' } else { 'b' }));
    }
    let value = chi * chi / dressed * (n * n - m * m + 2.0 * n + 2.0) / denominator - 1.0;
    Ok(MandelResult::new(value))
}

/// Q_a written through the physical parameters:
/// chi^2/sqrt(Omega^2-4chi^2) (N^2-m^2+2N+2) / (Omega(N+1) + (m-1) sqrt(...)) - 1.
pub fn q_a_params(p: &AmplifierParams, q: QuantumNumbers) -> Result<MandelResult> {
    q_from_params(p, q, Mode::A)
}

/// Q_b through the physical parameters, with (m+1) sqrt(...) subtracted in
/// the denominator.
pub fn q_b_params(p: &AmplifierParams, q: QuantumNumbers) -> Result<MandelResult> {
    q_from_params(p, q, Mode::B)
}

/// Brute-force Mandel parameter: embeds |N, m> into the full two-mode basis,
/// displaces it with the Jordan-Schwinger K+- matrices, and evaluates
/// `<n>`, `<n^2>` with the boson ladder matrices.
pub fn brute_force_q(
    mode: Mode,
    p: &AmplifierParams,
    q: QuantumNumbers,
    n_max: u32,
) -> Result<MandelResult> {
    if q.angular() < 0 {
        return Err(Error::NegativeM(q.angular()));
    }
    if q.principal() + 10 > n_max {
        return Err(Error::InvalidSpec(format!(
            "state N = {} too close to the truncation N_max = {n_max}",
            q.principal()
        )));
    }
    let tilt = tilt_parameters(p)?;
    let full = FullBasis::new(n_max);
    let sector = SectorBasis::new(q.angular(), n_max)?;

    // |Psi> = D(xi) |N, m>, displaced with the full-basis generators.
    let mut sector_vec = vec![C64::new(0.0, 0.0); sector.dim()];
    sector_vec[sector.index_of(q.principal()).expect("state lies inside the sector")] =
        C64::new(1.0, 0.0);
    let embedded = embed_sector_vector(&sector, &full, &sector_vec)?;
    let psi = {
        let kp = jordan_schwinger_kplus(&full);
        let xi = tilt.xi();
        let arg = kp.scale(xi).sub(&kp.dagger().scale(xi.conj()));
        expm_apply(&arg, &embedded)
    };

    // Truncation check: weight on the two outermost N shells.
    let boundary: f64 = full
        .states()
        .iter()
        .zip(&psi)
        .filter(|(&(na, nb), _)| na + nb + 1 >= n_max)
        .map(|(_, z)| z.norm_sqr())
        .sum();
    if boundary > 1e-10 {
        return Err(Error::TruncationUnsafe(boundary));
    }

    let ops = boson_matrices(&full);
    let (lower, raise): (&ComplexMatrix, &ComplexMatrix) = match mode {
        Mode::A => (&ops.a, &ops.a_dag),
        Mode::B => (&ops.b, &ops.b_dag),
    };
    let lowered = lower.matvec(&psi);
    let n_psi = raise.matvec(&lowered);
    let mean: f64 = psi.iter().zip(&n_psi).map(|(a, b)| (a.conj() * b).re).sum();
    let mean_sq: f64 = n_psi.iter().map(|z| z.norm_sqr()).sum();
    if mean.abs() < 1e-12 {
        return Err(Error::DenominatorVanishes(if matches!(mode, Mode::A) { 'a' } else { 'b' }));
    }
    Ok(MandelResult::new((mean_sq - mean * mean) / mean - 1.0))
}

/// `<J0>` of the displaced state; conserved because J0 commutes with the
/// displacement.
pub fn brute_force_j0(p: &AmplifierParams, q: QuantumNumbers, n_max: u32) -> Result<f64> {
    let tilt = tilt_parameters(p)?;
    let full = FullBasis::new(n_max);
    let sector = SectorBasis::new(q.angular(), n_max)?;
    let mut sector_vec = vec![C64::new(0.0, 0.0); sector.dim()];
    sector_vec[sector.index_of(q.principal()).expect("state lies inside the sector")] =
        C64::new(1.0, 0.0);
    let embedded = embed_sector_vector(&sector, &full, &sector_vec)?;
    let kp = jordan_schwinger_kplus(&full);
    let xi = tilt.xi();
    let arg = kp.scale(xi).sub(&kp.dagger().scale(xi.conj()));
    let psi = expm_apply(&arg, &embedded);
    // J0 is diagonal in the occupation basis.
    Ok(full
        .states()
        .iter()
        .zip(&psi)
        .map(|(&(na, nb), z)| (na as f64 - nb as f64) / 2.0 * z.norm_sqr())
        .sum())
}
