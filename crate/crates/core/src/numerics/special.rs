//! Log-gamma and associated Laguerre polynomials.

use num_complex::Complex64 as C64;

/// Lanczos coefficients (g = 7, n = 9), good to ~15 significant digits.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // Reflection keeps the Lanczos argument in its accurate range.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// ln n!
pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Associated Laguerre polynomial L_n^m(x) by the three-term recurrence in n.
///
/// The recurrence is stable upward; the series form cancels catastrophically
/// once x exceeds n.
pub fn laguerre(n: u32, m: u32, x: f64) -> f64 {
    let alpha = m as f64;
    let mut prev = 1.0; // L_0
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x; // L_1
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Same recurrence over complex arguments.
pub fn laguerre_complex(n: u32, m: u32, x: C64) -> C64 {
    let alpha = m as f64;
    let one = C64::new(1.0, 0.0);
    let mut prev = one;
    if n == 0 {
        return prev;
    }
    let mut cur = one + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((C64::new(2.0 * kf + alpha + 1.0, 0.0) - x) * cur - (kf + alpha) * prev)
            / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
