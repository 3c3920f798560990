//! Special functions: Jacobi and Gegenbauer polynomials, their asymptotics,
//! half-integer Γ, the incomplete beta function, and the Laplace–Beltrami
//! spectrum `(λ_m, d_m)` of each space.

mod beta;
mod gamma;
mod jacobi;

pub use beta::reg_inc_beta;
pub use gamma::{c_ab, half_integer_gamma, ln_gamma, ln_half_integer_gamma};
pub use jacobi::{
    gegenbauer_eval, jacobi_asymptotic, jacobi_at_one, jacobi_eval, jacobi_l2_norm_sq, JacobiParams, JacobiRecurrence,
    ASYMPTOTIC_MARGIN, X_TOLERANCE,
};

use serde::Serialize;

use crate::spaces::{Space, SpaceParams};

/// One eigenspace of the Laplace–Beltrami operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub m: usize,
    pub eigenvalue: f64,
    pub dim: f64,
}

/// `λ_m = m(m+a+b+1)`.
pub fn eigenvalue(space: &Space, m: usize) -> f64 {
    let p = space.params();
    let mf = m as f64;
    mf * (mf + p.a() + p.b() + 1.0)
}

/// `d_0 … d_{m_max}` by the multiplicative recurrence
/// `E_m = E_{m−1} (m+a+b)(m+a) / ((m+b) m)`, `E_1 = (a+1)/(b+1)`,
/// `d_m = (2m+a+b+1) E_m`, `d_0 = 1`.
pub fn eigenspace_dims(params: &SpaceParams, m_max: usize) -> Vec<f64> {
    let (a, b) = (params.a(), params.b());
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(1.0);
    let mut e = (a + 1.0) / (b + 1.0);
    for m in 1..=m_max {
        let mf = m as f64;
        if m > 1 {
            e *= (mf + a + b) * (mf + a) / ((mf + b) * mf);
        }
        out.push((2.0 * mf + a + b + 1.0) * e);
    }
    out
}

pub fn eigenspace_dim(space: &Space, m: usize) -> f64 {
    eigenspace_dims(&space.params(), m)[m]
}

/// The first `m_max + 1` entries of the spectrum.
pub fn spectrum(space: &Space, m_max: usize) -> Vec<SpectrumEntry> {
    eigenspace_dims(&space.params(), m_max)
        .into_iter()
        .enumerate()
        .map(|(m, dim)| SpectrumEntry {
            m,
            eigenvalue: eigenvalue(space, m),
            dim,
        })
        .collect()
}
