//! Gamma function for positive real arguments.
//!
//! Lanczos approximation with `g = 7` and nine coefficients, relative error
//! around `1e-15` for the arguments used here; integer arguments below 171
//! go through an exact factorial table instead.

use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

const G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published coefficients, kept verbatim
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z is the argument minus one
    let mut x = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    x
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn as_small_positive_integer(x: f64) -> Option<u32> {
    if (1.0..171.0).contains(&x) && x == x.trunc() {
        Some(x as u32)
    } else {
        None
    }
}

/// `Γ(x)`. Uses reflection below `1/2`; poles return NaN.
pub fn gamma(x: f64) -> f64 {
    if let Some(n) = as_small_positive_integer(x) {
        return factorial(n - 1);
    }
    if x <= 0.0 && x == x.trunc() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if let Some(n) = as_small_positive_integer(x) {
        return factorial(n - 1).ln();
    }
    if x < 0.5 {
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}
