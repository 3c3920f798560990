//! Jacobi polynomials `P_m^{(α,β)}` on `[−1, 1]`.

use std::f64::consts::PI;

use serde::Serialize;

use super::gamma::{ln_gamma, ln_gamma_signed};
use crate::error::{Error, Result};

/// Arguments may exceed `[−1, 1]` by this much before being rejected.
pub const X_TOLERANCE: f64 = 1e-12;

/// Smallest distance from `0` and `π` accepted by [`jacobi_asymptotic`].
pub const ASYMPTOTIC_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::domain(format!(
                "Jacobi parameters need α, β > −1, got ({alpha}, {beta})"
            )));
        }
        Ok(JacobiParams { alpha, beta })
    }
}

/// Precomputed three-term recurrence
/// `P_{n+1}(x) = (A_n x + B_n) P_n(x) − C_n P_{n−1}(x)` for `n ≥ 1`,
/// with `P_0 = 1` and `P_1(x) = (α+1) + (α+β+2)(x−1)/2`.
#[derive(Debug, Clone)]
pub struct JacobiRecurrence {
    params: JacobiParams,
    /// `(A_n, B_n, C_n)` at index `n`; index 0 unused.
    coeffs: Vec<[f64; 3]>,
}

impl JacobiRecurrence {
    /// Coefficients for degrees up to `m_max`.
    pub fn new(params: JacobiParams, m_max: usize) -> Self {
        let JacobiParams { alpha: a, beta: b } = params;
        let mut coeffs = vec![[0.0; 3]; m_max.max(1)];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            let n = n as f64;
            let s = 2.0 * n + a + b;
            let a1 = 2.0 * (n + 1.0) * (n + a + b + 1.0) * s;
            let a2 = (s + 1.0) * (a * a - b * b);
            let a3 = s * (s + 1.0) * (s + 2.0);
            let a4 = 2.0 * (n + a) * (n + b) * (s + 2.0);
            *c = [a3 / a1, a2 / a1, a4 / a1];
        }
        JacobiRecurrence { params, coeffs }
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    /// Highest degree this recurrence can reach.
    pub fn max_degree(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn p1(&self, x: f64) -> f64 {
        let JacobiParams { alpha: a, beta: b } = self.params;
        (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    }

    /// `(A_n, B_n, C_n)` for `1 ≤ n < max_degree()`.
    #[inline]
    pub fn coeffs(&self, n: usize) -> [f64; 3] {
        self.coeffs[n]
    }

    /// Fills `out` with `P_0(x) … P_{out.len()−1}(x)`.
    pub fn fill(&self, x: f64, out: &mut [f64]) {
        assert!(out.len() <= self.max_degree() + 1);
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = self.p1(x);
        for n in 1..out.len() - 1 {
            let [a, b, c] = self.coeffs[n];
            out[n + 1] = (a * x + b) * out[n] - c * out[n - 1];
        }
    }
}

pub(crate) fn check_x(x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 + X_TOLERANCE) {
        return Err(Error::domain(format!("Jacobi argument {x} outside [−1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `[P_0(x), …, P_{m_max}(x)]` by the three-term recurrence.
pub fn jacobi_eval(params: JacobiParams, m_max: usize, x: f64) -> Result<Vec<f64>> {
    let x = check_x(x)?;
    let rec = JacobiRecurrence::new(params, m_max);
    let mut out = vec![0.0; m_max + 1];
    rec.fill(x, &mut out);
    Ok(out)
}

/// `P_m^{(α,β)}(1) = C(m+α, m) = ∏_{k=1}^{m} (k+α)/k`.
pub fn jacobi_at_one(params: JacobiParams, m: usize) -> f64 {
    let a = params.alpha;
    let mut acc = 1.0;
    for k in 1..=m {
        let k = k as f64;
        acc *= (k + a) / k;
    }
    acc
}

/// Main term of the Darboux–Szegő asymptotic for `r ∈ (0, π)`:
/// `m^{−1/2} π^{−1/2} (sin r/2)^{−α−1/2} (cos r/2)^{−β−1/2}
///  cos((m + (α+β+1)/2) r − (2α+1)π/4)`.
pub fn jacobi_asymptotic(params: JacobiParams, m: usize, r: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("asymptotic main term needs m ≥ 1"));
    }
    if !(ASYMPTOTIC_MARGIN..=PI - ASYMPTOTIC_MARGIN).contains(&r) {
        return Err(Error::domain(format!(
            "r = {r} too close to 0 or π for the asymptotic form"
        )));
    }
    let JacobiParams { alpha: a, beta: b } = params;
    let mf = m as f64;
    let (s, c) = (r / 2.0).sin_cos();
    let amp = (mf * PI).sqrt().recip() * s.powf(-a - 0.5) * c.powf(-b - 0.5);
    let phase = (mf + (a + b + 1.0) / 2.0) * r - (2.0 * a + 1.0) * PI / 4.0;
    Ok(amp * phase.cos())
}

/// Gegenbauer `P_m^λ(x) = Γ(λ+1/2)Γ(m+2λ) / (Γ(2λ)Γ(m+λ+1/2)) · P_m^{(λ−1/2, λ−1/2)}(x)`.
pub fn gegenbauer_eval(lambda: f64, m: usize, x: f64) -> Result<f64> {
    if !(lambda > -0.5) || lambda == 0.0 {
        return Err(Error::domain(format!(
            "Gegenbauer λ must be > −1/2 and nonzero, got {lambda}"
        )));
    }
    let x = check_x(x)?;
    if m == 0 {
        return Ok(1.0);
    }
    let params = JacobiParams::new(lambda - 0.5, lambda - 0.5)?;
    let mf = m as f64;
    let (l2, sign) = ln_gamma_signed(2.0 * lambda)?;
    let ln_factor = ln_gamma(lambda + 0.5) + ln_gamma(mf + 2.0 * lambda) - l2 - ln_gamma(mf + lambda + 0.5);
    let p = jacobi_eval(params, m, x)?[m];
    Ok(sign * ln_factor.exp() * p)
}

/// `∫₀^π P_m(cos r)² (sin r/2)^{2α+1} (cos r/2)^{2β+1} dr
///   = Γ(m+α+1)Γ(m+β+1) / ((2m+α+β+1) Γ(m+1) Γ(m+α+β+1))`.
pub fn jacobi_l2_norm_sq(params: JacobiParams, m: usize) -> f64 {
    let JacobiParams { alpha: a, beta: b } = params;
    if m == 0 {
        // The m = 0 form stays finite at α+β+1 = 0.
        return (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
    }
    let mf = m as f64;
    (ln_gamma(mf + a + 1.0) + ln_gamma(mf + b + 1.0)
        - ln_gamma(mf + 1.0)
        - ln_gamma(mf + a + b + 1.0)
        - (2.0 * mf + a + b + 1.0).ln())
    .exp()
}
