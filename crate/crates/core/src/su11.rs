//! Abstract su(1,1) discrete-series machinery: ladder actions on |k, n>,
//! the displacement operator and its normal form, Perelomov (number)
//! coherent-state coefficients, and the closed-form similarity transforms
//! used to diagonalize amplifier Hamiltonians.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{SectorBasis, SuGenerators};
use crate::numerics::special::ln_gamma;
use crate::numerics::{unitary_exp, ComplexMatrix};

/// Bargmann index labelling a positive discrete-series irrep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrrepLabel(f64);

impl IrrepLabel {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParams(format!("Bargmann index must be positive, got {k}")));
        }
        Ok(Self(k))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Displacement-operator parameters.
///
/// The displacement is D(xi) = exp(xi K+ - xi* K-) with xi = -(theta/2)
/// e^{-i gamma}. Negative theta is folded into gamma (theta, gamma) ->
/// (-theta, gamma + pi), which leaves xi unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltParams {
    theta: f64,
    gamma: f64,
}

impl TiltParams {
    pub fn new(theta: f64, gamma: f64) -> Self {
        let (theta, gamma) = if theta < 0.0 {
            (-theta, gamma + std::f64::consts::PI)
        } else {
            (theta, gamma)
        };
        Self { theta, gamma: gamma.rem_euclid(2.0 * std::f64::consts::PI) }
    }

    /// Recover (theta, gamma) from zeta = -tanh(theta/2) e^{-i gamma}.
    pub fn from_zeta(zeta: C64) -> Result<Self> {
        let mag = zeta.norm();
        if mag >= 1.0 {
            return Err(Error::DomainError(mag));
        }
        if mag == 0.0 {
            return Ok(Self::new(0.0, 0.0));
        }
        let theta = 2.0 * mag.atanh();
        let gamma = -(-zeta).arg();
        Ok(Self::new(theta, gamma))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// xi = -(theta/2) e^{-i gamma}
    pub fn xi(&self) -> C64 {
        -C64::from_polar(self.theta / 2.0, -self.gamma)
    }

    /// zeta = -tanh(theta/2) e^{-i gamma}
    pub fn zeta(&self) -> C64 {
        -C64::from_polar((self.theta / 2.0).tanh(), -self.gamma)
    }

    /// eta = ln(1 - |zeta|^2) <= 0
    pub fn eta(&self) -> f64 {
        (1.0 - self.zeta().norm_sqr()).ln()
    }

    /// alpha = sinh(2|xi|) = sinh(theta)
    pub fn alpha(&self) -> f64 {
        self.theta.sinh()
    }

    /// beta = (cosh(2|xi|) - 1)/2
    pub fn beta(&self) -> f64 {
        (self.theta.cosh() - 1.0) / 2.0
    }

    pub fn cosh_theta(&self) -> f64 {
        self.theta.cosh()
    }

    pub fn sinh_theta(&self) -> f64 {
        self.theta.sinh()
    }
}

/// The four operators acting within an irrep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuOp {
    KPlus,
    KMinus,
    K0,
    Casimir,
}

/// Action of an su(1,1) operator on |k, n>: returns the coefficient and the
/// resulting level. Lowering the lowest weight yields a zero coefficient.
pub fn irrep_action(k: IrrepLabel, n: u32, op: SuOp) -> (f64, u32) {
    let kk = k.value();
    let nf = n as f64;
    match op {
        SuOp::KPlus => (((nf + 1.0) * (2.0 * kk + nf)).sqrt(), n + 1),
        SuOp::KMinus => {
            if n == 0 {
                (0.0, 0)
            } else {
                ((nf * (2.0 * kk + nf - 1.0)).sqrt(), n - 1)
            }
        }
        SuOp::K0 => (kk + nf, n),
        SuOp::Casimir => (kk * (kk - 1.0), n),
    }
}

/// D(xi) = exp(xi K+ - xi* K-) realized on a fixed-m sector.
pub fn displacement_matrix(tp: &TiltParams, basis: &SectorBasis) -> Result<ComplexMatrix> {
    let gens = SuGenerators::on_sector(basis);
    displacement_from_generators(tp, &gens)
}

/// Same, from pre-built generators (sector or full basis).
pub fn displacement_from_generators(
    tp: &TiltParams,
    gens: &SuGenerators,
) -> Result<ComplexMatrix> {
    let xi = tp.xi();
    let arg = gens.kp.scale(xi).sub(&gens.km.scale(xi.conj()));
    unitary_exp(&arg)
}

/// Expansion coefficients of the Perelomov coherent state D(xi)|k,0> over
/// |k,n>, n = 0..n_terms.
pub fn pcs_coefficients(k: IrrepLabel, zeta: C64, n_terms: usize) -> Result<Vec<C64>> {
    let mag = zeta.norm();
    if mag >= 1.0 {
        return Err(Error::DomainError(mag));
    }
    let kk = k.value();
    let ln_norm = kk * (1.0 - mag * mag).ln();
    let ln_gamma_2k = ln_gamma(2.0 * kk);
    let mut out = Vec::with_capacity(n_terms);
    let mut zeta_pow = C64::new(1.0, 0.0);
    for n in 0..n_terms {
        let nf = n as f64;
        let ln_mag =
            ln_norm + 0.5 * (ln_gamma(nf + 2.0 * kk) - ln_gamma(nf + 1.0) - ln_gamma_2k);
        out.push(zeta_pow * ln_mag.exp());
        zeta_pow *= zeta;
    }
    Ok(out)
}

/// Expansion coefficients of the Perelomov number coherent state D(xi)|k,n>
/// over |k,p>, p = 0..n_terms.
///
/// Evaluates the disentangled double sum with all Gamma-function ratios taken
/// through log-gamma differences.
pub fn pncs_coefficients(
    k: IrrepLabel,
    n: u32,
    zeta: C64,
    n_terms: usize,
) -> Result<Vec<C64>> {
    let mag = zeta.norm();
    if mag >= 1.0 {
        return Err(Error::DomainError(mag));
    }
    if mag == 0.0 {
        let mut out = vec![C64::new(0.0, 0.0); n_terms];
        if (n as usize) < n_terms {
            out[n as usize] = C64::new(1.0, 0.0);
        }
        return Ok(out);
    }

    let kk = k.value();
    let eta = (1.0 - mag * mag).ln();
    let ln_mag_zeta = mag.ln();
    let phase_zeta = zeta / mag;
    let neg_conj = -zeta.conj();
    let phase_neg_conj = neg_conj / mag;

    let ln_gamma_2k_n = ln_gamma(2.0 * kk + n as f64);
    let ln_fact_n = ln_gamma(n as f64 + 1.0);

    let mut out = Vec::with_capacity(n_terms);
    for p in 0..n_terms as i64 {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..=n as i64 {
            let s = p - n as i64 + j;
            if s < 0 {
                continue;
            }
            let q = (n as i64 - j) as f64; // n - j
            let ln_term = eta * (kk + q)
                + (s as f64 + j as f64) * ln_mag_zeta
                + 0.5 * (ln_gamma_2k_n + ln_gamma(2.0 * kk + p as f64))
                - ln_gamma(2.0 * kk + q)
                + 0.5 * (ln_fact_n + ln_gamma(p as f64 + 1.0))
                - ln_gamma(q + 1.0)
                - ln_gamma(s as f64 + 1.0)
                - ln_gamma(j as f64 + 1.0);
            let phase = phase_zeta.powi(s as i32) * phase_neg_conj.powi(j as i32);
            acc += phase * ln_term.exp();
        }
        out.push(acc);
    }
    Ok(out)
}

/// Which generator a similarity transform acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    KPlus,
    KMinus,
    K0,
}

/// Coefficients (c0, cp, cm) of K0, K+, K- in D^dag(xi) X D(xi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityCoefficients {
    pub c0: C64,
    pub cp: C64,
    pub cm: C64,
}

impl SimilarityCoefficients {
    /// Assemble c0 K0 + cp K+ + cm K- as a matrix.
    pub fn assemble(&self, gens: &SuGenerators) -> ComplexMatrix {
        gens.k0.scale(self.c0).add(&gens.kp.scale(self.cp)).add(&gens.km.scale(self.cm))
    }
}

/// Closed-form similarity transform written through xi, alpha = sinh(2|xi|)
/// and beta = (cosh(2|xi|) - 1)/2.
pub fn similarity_coefficients(tp: &TiltParams, which: GeneratorKind) -> SimilarityCoefficients {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    if tp.theta() == 0.0 {
        // Identity transform; the xi/|xi| phases are the continuity limit.
        return match which {
            GeneratorKind::KPlus => SimilarityCoefficients { c0: zero, cp: one, cm: zero },
            GeneratorKind::KMinus => SimilarityCoefficients { c0: zero, cp: zero, cm: one },
            GeneratorKind::K0 => SimilarityCoefficients { c0: one, cp: zero, cm: zero },
        };
    }
    let xi = tp.xi();
    let unit = xi / xi.norm(); // xi/|xi|
    let alpha = C64::new(tp.alpha(), 0.0);
    let beta = C64::new(tp.beta(), 0.0);
    match which {
        GeneratorKind::KPlus => SimilarityCoefficients {
            c0: unit.conj() * alpha,
            cp: beta + 1.0,
            cm: beta * (unit.conj() / unit),
        },
        GeneratorKind::KMinus => SimilarityCoefficients {
            c0: unit * alpha,
            cp: beta * (unit / unit.conj()),
            cm: beta + 1.0,
        },
        GeneratorKind::K0 => SimilarityCoefficients {
            c0: C64::new(2.0, 0.0) * beta + 1.0,
            cp: alpha * unit / 2.0,
            cm: alpha * unit.conj() / 2.0,
        },
    }
}

/// The same transforms written directly through cosh(theta), sinh(theta) and
/// e^{i gamma}, as they appear in the time-dependent construction.
pub fn similarity_coefficients_timedep(
    tp: &TiltParams,
    which: GeneratorKind,
) -> SimilarityCoefficients {
    let c = tp.cosh_theta();
    let s = tp.sinh_theta();
    let eig = C64::from_polar(1.0, tp.gamma());
    match which {
        GeneratorKind::KPlus => SimilarityCoefficients {
            c0: -eig * s,
            cp: C64::new((c + 1.0) / 2.0, 0.0),
            cm: eig * eig * ((c - 1.0) / 2.0),
        },
        GeneratorKind::KMinus => SimilarityCoefficients {
            c0: -eig.conj() * s,
            cp: eig.conj() * eig.conj() * ((c - 1.0) / 2.0),
            cm: C64::new((c + 1.0) / 2.0, 0.0),
        },
        GeneratorKind::K0 => SimilarityCoefficients {
            c0: C64::new(c, 0.0),
            cp: -eig.conj() * (s / 2.0),
            cm: -eig * (s / 2.0),
        },
    }
}
