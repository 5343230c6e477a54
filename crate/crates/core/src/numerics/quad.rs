//! Composite Simpson quadrature and Gauss-Legendre nodes.

use crate::error::{Error, Result};

/// Definite-integral specification: interval plus an even subdivision count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    lower: f64,
    upper: f64,
    subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(lower: f64, upper: f64, subdivisions: usize) -> Result<Self> {
        if !(lower < upper) {
            return Err(Error::InvalidSpec(format!("lower {lower} must be below upper {upper}")));
        }
        if subdivisions < 2 || !subdivisions.is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!(
                "subdivisions must be an even integer >= 2, got {subdivisions}"
            )));
        }
        Ok(Self { lower, upper, subdivisions })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    pub fn step(&self) -> f64 {
        (self.upper - self.lower) / self.subdivisions as f64
    }

    /// Sample points `lower + k*h`, `k = 0..=subdivisions`.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..=self.subdivisions).map(move |k| self.lower + k as f64 * h)
    }
}

/// Composite Simpson estimate of the integral of `f` over the spec interval.
pub fn integrate(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> f64 {
    let samples: Vec<f64> = spec.nodes().map(f).collect();
    integrate_samples(&samples, spec.step()).expect("spec guarantees an even sample count")
}

/// Composite Simpson rule over uniformly spaced samples (even interval count).
pub fn integrate_samples(samples: &[f64], step: f64) -> Result<f64> {
    let n = samples.len();
    if n < 3 || !(n - 1).is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!(
            "Simpson needs an odd sample count >= 3, got {n}"
        )));
    }
    let mut sum = samples[0] + samples[n - 1];
    for (k, &s) in samples.iter().enumerate().take(n - 1).skip(1) {
        sum += if k % 2 == 1 { 4.0 * s } else { 2.0 * s };
    }
    Ok(sum * step / 3.0)
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&wi| wi * half).collect(),
    )
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
