//! Classical fixed-step fourth-order Runge-Kutta integration.

use crate::error::{Error, Result};

/// Time interval and fixed step count for an initial-value problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSpec {
    t0: f64,
    t1: f64,
    steps: usize,
}

impl OdeSpec {
    pub fn new(t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if !(t0 < t1) {
            return Err(Error::InvalidSpec(format!("t0 {t0} must be below t1 {t1}")));
        }
        if steps == 0 {
            return Err(Error::InvalidSpec("steps must be positive".into()));
        }
        Ok(Self { t0, t1, steps })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&self) -> f64 {
        (self.t1 - self.t0) / self.steps as f64
    }
}

/// Integrated states at `steps + 1` uniformly spaced times.
pub type Trajectory = Vec<(f64, Vec<f64>)>;

/// Fixed-step RK4. `f(t, y, dy)` writes the derivative of `y` into `dy`.
pub fn ode_solve(
    f: impl Fn(f64, &[f64], &mut [f64]) -> Result<()>,
    y0: &[f64],
    spec: &OdeSpec,
) -> Result<Trajectory> {
    let dim = y0.len();
    let h = spec.step();
    let mut out = Vec::with_capacity(spec.steps + 1);
    let mut y = y0.to_vec();
    out.push((spec.t0, y.clone()));

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for step in 0..spec.steps {
        let t = spec.t0 + step as f64 * h;
        f(t, &y, &mut k1)?;
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        f(t + 0.5 * h, &tmp, &mut k2)?;
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        f(t + 0.5 * h, &tmp, &mut k3)?;
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        f(t + h, &tmp, &mut k4)?;
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = spec.t0 + (step + 1) as f64 * h;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState(t_next));
        }
        out.push((t_next, y.clone()));
    }
    Ok(out)
}
