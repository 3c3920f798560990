use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Above this argument Γ overflows binary64.
const GAMMA_OVERFLOW: f64 = 171.0;

/// Returns `2x` if `x` is a positive half-integer.
fn doubled(x: f64) -> Option<u64> {
    let t = 2.0 * x;
    (t > 0.0 && t.fract() == 0.0 && t < 9.0e15).then_some(t as u64)
}

/// `Γ(x)` for `x ∈ {1/2, 1, 3/2, …}`, by the exact product from `Γ(1) = 1`
/// or `Γ(1/2) = √π`. Returns `+∞` past the binary64 range; use
/// [`ln_half_integer_gamma`] there.
pub fn half_integer_gamma(x: f64) -> Result<f64> {
    let two_x = doubled(x).ok_or_else(|| Error::domain(format!("{x} is not a positive half-integer")))?;
    if x > GAMMA_OVERFLOW {
        return Ok(f64::INFINITY);
    }
    let (mut acc, mut k) = if two_x % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while k < x {
        acc *= k;
        k += 1.0;
    }
    Ok(acc)
}

/// `ln Γ(x)` for positive half-integers, as a sum of logarithms.
pub fn ln_half_integer_gamma(x: f64) -> Result<f64> {
    let two_x = doubled(x).ok_or_else(|| Error::domain(format!("{x} is not a positive half-integer")))?;
    if x <= GAMMA_OVERFLOW {
        return Ok(half_integer_gamma(x)?.ln());
    }
    let (mut acc, mut k) = if two_x % 2 == 0 {
        (0.0, 1.0)
    } else {
        (0.5 * PI.ln(), 0.5)
    };
    // Chunked products keep the number of logarithms small.
    let mut prod = 1.0f64;
    while k < x {
        prod *= k;
        if prod > 1e250 {
            acc += prod.ln();
            prod = 1.0;
        }
        k += 1.0;
    }
    Ok(acc + prod.ln())
}

/// `ln Γ(x)` for `x > 0`: exact half-integer path where it applies, Lanczos
/// (statrs) for other real arguments.
pub fn ln_gamma(x: f64) -> f64 {
    match doubled(x) {
        Some(_) => ln_half_integer_gamma(x).expect("checked half-integer"),
        None => statrs::function::gamma::ln_gamma(x),
    }
}

/// `(ln |Γ(x)|, sign Γ(x))` for `x > −1`, `x ≠ 0`.
pub(crate) fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        Ok((ln_gamma(x), 1.0))
    } else if x > -1.0 && x < 0.0 {
        Ok((ln_gamma(x + 1.0) - (-x).ln(), -1.0))
    } else {
        Err(Error::domain(format!("Γ({x}) outside supported range")))
    }
}

/// `c(a,b) = Γ(a+b+2) / (Γ(a+1) Γ(b+1))`, the inverse of
/// `∫₀^π (sin r/2)^{2a+1} (cos r/2)^{2b+1} dr`.
pub fn c_ab(a: f64, b: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::domain(format!("c(a,b) needs a, b > −1, got ({a}, {b})")));
    }
    Ok((ln_gamma(a + b + 2.0) - ln_gamma(a + 1.0) - ln_gamma(b + 1.0)).exp())
}
