use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spaces::Space;
use crate::specfun::{c_ab, jacobi_at_one, JacobiParams, JacobiRecurrence};

/// `φ_1(r) … φ_L(r)` at `x = cos r`, where
/// `φ_m(r) = c(a,b) / (m P_m^{(a,b)}(1)) · P_{m−1}^{(a+1,b+1)}(x) · s^{a+1} (1−s)^{b+1}`
/// and `s = (1−x)/2 = sin²(r/2)`.
pub fn ball_coefficients_at_cos(space: &Space, count: usize, x: f64) -> Result<Vec<f64>> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("cos r = {x} outside [−1, 1]")));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let sp = space.params();
    let (a, b) = (sp.a(), sp.b());
    let shifted = JacobiParams::new(a + 1.0, b + 1.0)?;
    let mut p = vec![0.0; count];
    JacobiRecurrence::new(shifted, count).fill(x, &mut p);
    let s = (1.0 - x) / 2.0;
    let weight = c_ab(a, b)? * s.powf(a + 1.0) * (1.0 - s).powf(b + 1.0);
    let mut at_one = 1.0;
    let mut out = Vec::with_capacity(count);
    for (i, pm) in p.iter().enumerate() {
        let m = (i + 1) as f64;
        at_one *= (m + a) / m;
        out.push(weight * pm / (m * at_one));
    }
    Ok(out)
}

/// `φ_m(r) = d_m^{−1} ∫_{B_r(o)} Z_o^m dμ` for `m ≥ 1`, `r ∈ [0, π]`.
pub fn ball_coefficient(space: &Space, m: usize, r: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("ball coefficients start at m = 1"));
    }
    if !(0.0..=PI).contains(&r) {
        return Err(Error::domain(format!("radius {r} outside [0, π]")));
    }
    let sp = space.params();
    let (a, b) = (sp.a(), sp.b());
    let x = r.cos();
    let mut p = vec![0.0; m];
    JacobiRecurrence::new(JacobiParams::new(a + 1.0, b + 1.0)?, m).fill(x, &mut p);
    let (sh, ch) = (r / 2.0).sin_cos();
    let at_one = jacobi_at_one(JacobiParams::new(a, b)?, m);
    Ok(c_ab(a, b)? * p[m - 1] * sh.powf(2.0 * a + 2.0) * ch.powf(2.0 * b + 2.0) / (m as f64 * at_one))
}
