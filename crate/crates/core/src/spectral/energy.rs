use rayon::prelude::*;

use super::gram::PairGram;
use crate::error::{Error, Result};
use crate::spaces::Space;
use crate::specfun::{eigenspace_dims, JacobiParams, JacobiRecurrence};
use crate::sum::Neumaier;

/// Energies this far below zero, relative to `max(1, d_m)`, are roundoff and
/// clamped to zero. Anything lower is an error.
pub const CLAMP_TOLERANCE: f64 = 1e-10;

/// Target number of matrix entries per work unit.
const UNIT_ENTRIES: usize = 4096;
/// Units evaluated in parallel before their partial sums are folded in.
const WAVE: usize = 64;
const LANES: usize = 8;

/// Harmonic energies `q_1 … q_L` of a weighted point set.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicEnergies {
    space: Space,
    n_points: usize,
    q: Vec<f64>,
    dims: Vec<f64>,
    sum_sq_weights: f64,
    clamped: usize,
}

impl HarmonicEnergies {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn max_degree(&self) -> usize {
        self.q.len()
    }

    /// `q_m` for `0 ≤ m ≤ max_degree()`; `q_0 = 1`.
    pub fn q(&self, m: usize) -> f64 {
        if m == 0 {
            1.0
        } else {
            self.q[m - 1]
        }
    }

    /// `q_1 … q_L`.
    pub fn values(&self) -> &[f64] {
        &self.q
    }

    /// `d_0 … d_L`.
    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn sum_sq_weights(&self) -> f64 {
        self.sum_sq_weights
    }

    /// Number of slightly negative energies that were set to zero.
    pub fn clamped(&self) -> usize {
        self.clamped
    }

    /// `Σ_{m=lo}^{hi} q_m`.
    pub fn cm_sum(&self, lo: usize, hi: usize) -> Result<f64> {
        if lo > hi {
            return Err(Error::domain(format!("empty degree range {lo}..={hi}")));
        }
        if hi > self.max_degree() {
            return Err(Error::domain(format!(
                "degree {hi} beyond computed maximum {}",
                self.max_degree()
            )));
        }
        let mut acc = Neumaier::default();
        (lo..=hi).for_each(|m| acc.add(self.q(m)));
        Ok(acc.value())
    }
}

/// Recurrence for `R_m = P_m^{(a,b)} / P_m^{(a,b)}(1)`, which stays in
/// `[−1, 1]` and so never overflows.
struct Normalized {
    r1: [f64; 2],
    coeffs: Vec<[f64; 3]>,
}

impl Normalized {
    fn new(params: JacobiParams, m_max: usize) -> Self {
        let rec = JacobiRecurrence::new(params, m_max);
        let alpha = params.alpha;
        // P_n(1) / P_{n+1}(1)
        let ratio = |n: usize| (n + 1) as f64 / (n as f64 + 1.0 + alpha);
        let mut coeffs = vec![[0.0; 3]; m_max.max(1)];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            let [a, b, cc] = rec.coeffs(n);
            let rn = ratio(n);
            *c = [a * rn, b * rn, cc * rn * ratio(n - 1)];
        }
        let p1_at_one = alpha + 1.0;
        // P_1(x) = (α+1) + (α+β+2)(x−1)/2 = u + v x
        let v = (alpha + params.beta + 2.0) / 2.0;
        let u = alpha + 1.0 - v;
        Normalized {
            r1: [u / p1_at_one, v / p1_at_one],
            coeffs,
        }
    }
}

/// `Σ_e w_e R_m(t_e)` for `m = 1..=out.len()`. `t` and `w` are padded to a
/// multiple of `LANES` with zero weights.
fn unit_sums(rec: &Normalized, t: &[f64], w: &[f64], out: &mut [f64]) {
    let len = t.len();
    let mut prev = vec![1.0; len];
    let mut cur: Vec<f64> = t.iter().map(|x| rec.r1[0] + rec.r1[1] * x).collect();
    out[0] = lane_dot(w, &cur);
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let [a, b, c] = rec.coeffs[n];
        let mut acc = [0.0; LANES];
        for (((tc, wc), pc), cc) in t
            .chunks_exact(LANES)
            .zip(w.chunks_exact(LANES))
            .zip(prev.chunks_exact_mut(LANES))
            .zip(cur.chunks_exact(LANES))
        {
            let tc: &[f64; LANES] = tc.try_into().unwrap();
            let wc: &[f64; LANES] = wc.try_into().unwrap();
            let cc: &[f64; LANES] = cc.try_into().unwrap();
            let pc: &mut [f64; LANES] = pc.try_into().unwrap();
            for l in 0..LANES {
                let next = (a * tc[l] + b) * cc[l] - c * pc[l];
                pc[l] = next;
                acc[l] += wc[l] * next;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
        *slot = fold_lanes(&acc);
    }
}

fn lane_dot(w: &[f64], x: &[f64]) -> f64 {
    let mut acc = [0.0; LANES];
    for (wc, xc) in w.chunks_exact(LANES).zip(x.chunks_exact(LANES)) {
        for l in 0..LANES {
            acc[l] += wc[l] * xc[l];
        }
    }
    fold_lanes(&acc)
}

fn fold_lanes(a: &[f64; LANES]) -> f64 {
    ((a[0] + a[1]) + (a[2] + a[3])) + ((a[4] + a[5]) + (a[6] + a[7]))
}

/// A band of rows of one stored tile.
#[derive(Clone, Copy)]
struct Unit {
    tile: usize,
    row_lo: usize,
    row_hi: usize,
}

fn units(gram: &PairGram) -> Vec<Unit> {
    let mut out = Vec::new();
    for (i, tile) in gram.tiles().iter().enumerate() {
        let band = (UNIT_ENTRIES / tile.cols.max(1)).max(1);
        let mut lo = 0;
        while lo < tile.rows {
            let hi = (lo + band).min(tile.rows);
            out.push(Unit {
                tile: i,
                row_lo: lo,
                row_hi: hi,
            });
            lo = hi;
        }
    }
    out
}

/// Strictly upper-triangular entries of a unit with weights `2 a_j a_k`.
fn gather(gram: &PairGram, u: Unit) -> (Vec<f64>, Vec<f64>) {
    let tile = &gram.tiles()[u.tile];
    let a = gram.weights();
    let mut t = Vec::with_capacity((u.row_hi - u.row_lo) * tile.cols + LANES);
    let mut w = Vec::with_capacity(t.capacity());
    for r in u.row_lo..u.row_hi {
        let j = tile.row0 + r;
        let first = if tile.is_diagonal() { r + 1 } else { 0 };
        for c in first..tile.cols {
            t.push(tile.cos[r * tile.cols + c]);
            w.push(2.0 * a[j] * a[tile.col0 + c]);
        }
    }
    while t.len() % LANES != 0 {
        t.push(0.0);
        w.push(0.0);
    }
    (t, w)
}

/// `q_m = Σ_{j,k} a_j a_k (d_m / P_m(1)) P_m^{(a,b)}(t_{jk})` for
/// `m = 1..=m_max`, by the addition theorem. The diagonal contributes
/// `d_m Σ a_j²` exactly. Partial sums are reduced in a fixed unit order,
/// so the result does not depend on the number of threads.
pub fn harmonic_energy(gram: &PairGram, m_max: usize) -> Result<HarmonicEnergies> {
    if m_max == 0 {
        return Err(Error::domain("m_max must be at least 1"));
    }
    let space = gram.space();
    let sp = space.params();
    let dims = eigenspace_dims(&sp, m_max);
    if let Some(m) = dims.iter().position(|d| !d.is_finite()) {
        return Err(Error::NumericOverflow(format!(
            "eigenspace dimension d_{m} of {} exceeds binary64",
            space.id()
        )));
    }
    let rec = Normalized::new(JacobiParams::new(sp.a(), sp.b())?, m_max);
    let work = units(gram);
    let mut acc = vec![Neumaier::default(); m_max];
    for wave in work.chunks(WAVE) {
        let partial: Vec<Vec<f64>> = wave
            .par_iter()
            .map(|&u| {
                let (t, w) = gather(gram, u);
                let mut out = vec![0.0; m_max];
                if !t.is_empty() {
                    unit_sums(&rec, &t, &w, &mut out);
                }
                out
            })
            .collect();
        for p in &partial {
            acc.iter_mut().zip(p).for_each(|(a, x)| a.add(*x));
        }
    }
    let diag = gram.sum_sq_weights();
    let mut clamped = 0;
    let mut q = Vec::with_capacity(m_max);
    for (m, a) in acc.iter().enumerate() {
        let d = dims[m + 1];
        let mut s = Neumaier::default();
        s.add(diag);
        s.add(a.value());
        let mut v = d * s.value();
        if v < 0.0 {
            if v >= -CLAMP_TOLERANCE * d.max(1.0) {
                v = 0.0;
                clamped += 1;
            } else {
                return Err(Error::Numeric(format!("harmonic energy q_{} = {v:e} < 0", m + 1)));
            }
        }
        q.push(v);
    }
    Ok(HarmonicEnergies {
        space,
        n_points: gram.n(),
        q,
        dims,
        sum_sq_weights: diag,
        clamped,
    })
}

/// `Σ_{m=lo}^{hi} q_m` with `q_0 = 1`.
pub fn cm_sum(gram: &PairGram, lo: usize, hi: usize) -> Result<f64> {
    if lo > hi {
        return Err(Error::domain(format!("empty degree range {lo}..={hi}")));
    }
    if hi == 0 {
        return Ok(1.0);
    }
    harmonic_energy(gram, hi)?.cm_sum(lo, hi)
}
