use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const MAX_ITER: usize = 200;
const EPS: f64 = 1e-14;
const TINY: f64 = 1e-300;

/// Regularized incomplete beta `I_s(p, q)`.
///
/// Continued fraction (modified Lentz), evaluated on whichever side of the
/// symmetry `I_s(p,q) = 1 − I_{1−s}(q,p)` converges faster.
pub fn reg_inc_beta(s: f64, p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::domain(format!("I_s(p,q) needs p, q > 0, got ({p}, {q})")));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain(format!("I_s(p,q) needs s ∈ [0,1], got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    if s == 1.0 {
        return Ok(1.0);
    }
    let v = if s < (p + 1.0) / (p + q + 2.0) {
        front(s, p, q)? * continued_fraction(s, p, q)? / p
    } else {
        1.0 - front(1.0 - s, q, p)? * continued_fraction(1.0 - s, q, p)? / q
    };
    Ok(v.clamp(0.0, 1.0))
}

/// `s^p (1−s)^q / B(p,q)`.
fn front(s: f64, p: f64, q: f64) -> Result<f64> {
    let ln_beta = ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q);
    Ok((p * s.ln() + q * (1.0 - s).ln() - ln_beta).exp())
}

fn continued_fraction(s: f64, p: f64, q: f64) -> Result<f64> {
    let qab = p + q;
    let qap = p + 1.0;
    let qam = p - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * s / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (q - m) * s / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(p + m) * (qab + m) * s / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        what: format!("incomplete beta continued fraction at s={s}, p={p}, q={q}"),
        estimate: h,
    })
}
