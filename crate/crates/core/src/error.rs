use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H - H^dag| = {0:.3e}")]
    NotHermitian(f64),
    #[error("matrix is not anti-Hermitian: max |A + A^dag| = {0:.3e}")]
    NotAntiHermitian(f64),
    #[error("eigensolver failed to converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("state became non-finite at t = {0}")]
    NonFiniteState(f64),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quantum numbers: N = {n}, m = {m}")]
    InvalidQuantumNumbers { n: u32, m: i32 },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("coherent-state parameter outside the unit disk: |zeta| = {0}")]
    DomainError(f64),
    #[error("unstable regime: 2*chi = {twice_chi} >= omega1 + omega2 = {omega}")]
    UnstableRegime { twice_chi: f64, omega: f64 },
    #[error("negative angular quantum number m = {0}; use the mode-swap symmetry")]
    NegativeM(i32),
    #[error("degenerate tilt (chi = 0): eigenfunction reduces to the bare oscillator")]
    DegenerateTilt,
    #[error("polar grid too coarse: edge amplitude {0:.3e} exceeds 1e-8")]
    GridTooCoarse(f64),
    #[error("auxiliary system singular: |theta| = {0:.3e} < 1e-9")]
    SinhSingularity(f64),
    #[error("trajectory samples do not match the quadrature grid: {0}")]
    GridMismatch(String),
    #[error("drive does not wind by 2*pi: winding integral = {0}")]
    NonWindingDrive(f64),
    #[error("norm drifted by {0:.3e} during evolution")]
    NormDrift(f64),
    #[error("Mandel denominator vanishes: <n> = 0 for mode {0}")]
    DenominatorVanishes(char),
    #[error("truncation unsafe: boundary weight {0:.3e} exceeds 1e-10")]
    TruncationUnsafe(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
