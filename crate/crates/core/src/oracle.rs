//! Independent checks of the spectral engine: Monte Carlo over ball centers,
//! Monte Carlo ball volumes, and adaptive quadrature of ball coefficients.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointsets::PointSet;
use crate::spaces::{self, cos_distance_raw, Space};
use crate::specfun::{c_ab, jacobi_at_one, JacobiParams, JacobiRecurrence};

pub const MIN_SAMPLES: usize = 100;
/// Samples per counter-based substream.
pub const BATCH: usize = 4096;

pub const QUAD_TOLERANCE: f64 = 1e-11;
pub const QUAD_MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0.0 {
            return o;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n / n,
            m2: self.m2 + o.m2 + d * d * self.n * o.n / n,
        }
    }
}

/// Draws `samples` values of `f(x)` at uniform `x`, batch `i` from ChaCha
/// stream `i` of `seed`, merged in batch order.
fn sample_mean<F>(space: &Space, samples: usize, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(Error::domain(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let len = space.coord_len()?;
    let batches = samples.div_ceil(BATCH);
    let parts: Vec<Moments> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = BATCH.min(samples - b * BATCH);
            let mut m = Moments::default();
            for _ in 0..count {
                let x = spaces::sample_point(len, &mut rng);
                m.push(f(x.coords()));
            }
            m
        })
        .collect();
    let m = parts.into_iter().fold(Moments::default(), Moments::merge);
    Ok(McEstimate {
        estimate: m.mean,
        stderr: (m.m2 / (m.n - 1.0) / m.n).sqrt(),
        samples,
        seed,
    })
}

/// Mean of `D_r(x)² = (Σ_j a_j [ρ(x, x_j) < r] − μ(B_r))²` over uniform
/// centers `x`.
pub fn mc_discrepancy(set: &PointSet, radius: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    let space = set.space();
    let field = space.field()?;
    let volume = spaces::ball_volume(&space, radius)?;
    let cos_r = radius.cos();
    let pts: Vec<&[f64]> = set.points().iter().map(|p| p.coords()).collect();
    let w = set.weights();
    sample_mean(&space, samples, seed, |x| {
        let mut mass = 0.0;
        for (p, a) in pts.iter().zip(w) {
            if inside(cos_distance_raw(field, x, p), cos_r, radius) {
                mass += a;
            }
        }
        let d = mass - volume;
        d * d
    })
}

/// `ρ < r`, with every point inside once `r ≥ π`.
#[inline]
fn inside(cos_rho: f64, cos_r: f64, r: f64) -> bool {
    r >= PI || cos_rho > cos_r
}

/// Fraction of uniform points within distance `r` of the pole.
pub fn mc_ball_volume(space: &Space, r: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    if !(0.0..=PI).contains(&r) {
        return Err(Error::domain(format!("radius {r} outside [0, π]")));
    }
    let field = space.field()?;
    let pole = space.pole()?;
    let cos_r = r.cos();
    sample_mean(space, samples, seed, |x| {
        f64::from(u8::from(inside(cos_distance_raw(field, x, pole.coords()), cos_r, r)))
    })
}

/// Adaptive Simpson on `[lo, hi]`, split first into `panels` pieces with
/// tolerance shared in proportion to width. Returns `(value, error estimate)`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    panels: usize,
    tol: f64,
    max_depth: u32,
) -> Result<(f64, f64)> {
    let width = (hi - lo) / panels as f64;
    let (mut total, mut err) = (0.0, 0.0);
    let mut failed = false;
    for i in 0..panels {
        let a = lo + width * i as f64;
        let b = if i + 1 == panels { hi } else { a + width };
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let (v, e, ok) = simpson_step(f, a, b, fa, fm, fb, whole, tol / panels as f64, max_depth);
        total += v;
        err += e;
        failed |= !ok;
    }
    if failed {
        return Err(Error::Convergence {
            what: format!("adaptive Simpson on [{lo}, {hi}] hit depth {max_depth}"),
            estimate: total,
        });
    }
    Ok((total, err))
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64, bool) {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0, true);
    }
    if depth == 0 {
        return (left + right + delta / 15.0, delta.abs() / 15.0, false);
    }
    let (lv, le, lok) = simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
    let (rv, re, rok) = simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    (lv + rv, le + re, lok && rok)
}

/// `(1 / P_m^{(a,b)}(1)) ∫₀^r P_m^{(a,b)}(cos t) A(t) dt` by adaptive
/// quadrature, the quadrature route to the ball coefficient `φ_m(r)`.
pub fn quad_ball_coefficient(space: &Space, m: usize, r: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("ball coefficients start at m = 1"));
    }
    if !(0.0..=PI).contains(&r) {
        return Err(Error::domain(format!("radius {r} outside [0, π]")));
    }
    let sp = space.params();
    let params = JacobiParams::new(sp.a(), sp.b())?;
    let rec = JacobiRecurrence::new(params, m);
    let c = c_ab(sp.a(), sp.b())?;
    let (ea, eb) = (2.0 * sp.a() + 1.0, 2.0 * sp.b() + 1.0);
    let integrand = |t: f64| {
        let mut p = vec![0.0; m + 1];
        rec.fill(t.cos(), &mut p);
        let (s, co) = (t / 2.0).sin_cos();
        p[m] * c * s.powf(ea) * co.powf(eb)
    };
    // One panel per half-oscillation keeps the first Simpson estimates honest.
    let panels = 2 * m + 4;
    let (v, _) = adaptive_simpson(&integrand, 0.0, r, panels, QUAD_TOLERANCE, QUAD_MAX_DEPTH)?;
    Ok(v / jacobi_at_one(params, m))
}
