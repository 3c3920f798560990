//! Experiment drivers: decay-rate fits, the prime-radius scan, and scans of
//! Jacobi values and ball coefficients at fixed radii.

use std::f64::consts::PI;

use serde::Serialize;

use crate::admissibility::{prime_radius_sequence, space_radius_admissible, RadiusPQ};
use crate::error::{Error, Result};
use crate::pointsets::{generate, Generator, PointSet};
use crate::spaces::Space;
use crate::specfun::{jacobi_asymptotic, JacobiParams, JacobiRecurrence};
use crate::spectral::{
    auto_truncation, ball_coefficients_at_cos, discrepancy_from_energies, harmonic_energy, PairGram, Radius,
};

/// Ordinary least squares `y = slope·x + intercept`.
pub fn slope_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension(format!("{} xs for {} ys", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(Error::domain("a fit needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::domain("degenerate abscissae"));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Parses `"lo:hi:xk"` (geometric, factor k), `"lo:hi:+k"` (arithmetic) or a
/// comma-separated list.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad N list {spec:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    let out = match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let mut out = Vec::new();
            let mut n = lo;
            if let Some(k) = step.strip_prefix('x') {
                let k = num(k)?;
                if k < 2 || lo == 0 {
                    return Err(bad());
                }
                while n <= hi {
                    out.push(n);
                    n = n.checked_mul(k).ok_or_else(bad)?;
                }
            } else {
                let k = num(step.strip_prefix('+').unwrap_or(step))?;
                if k == 0 {
                    return Err(bad());
                }
                while n <= hi {
                    out.push(n);
                    n += k;
                }
            }
            out
        }
        [list] => list.split(',').map(num).collect::<Result<_>>()?,
        _ => return Err(bad()),
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub value: f64,
    #[serde(rename = "L")]
    pub truncation: usize,
    pub tail: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateStudyResult {
    pub space: Space,
    pub generator: String,
    pub radius: RadiusPQ,
    pub admissible: bool,
    /// Independent sets averaged per size (random generators only).
    pub replicates: usize,
    pub rows: Vec<RateRow>,
    pub fitted_exponent: f64,
    pub fitted_intercept: f64,
    pub warnings: Vec<String>,
}

impl RateStudyResult {
    /// Rows as CSV with header `N,value,L,tail,seed`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Spectral discrepancy of `generator` point sets at each `N`, with a least
/// squares fit of `log value` against `log N`.
///
/// For random generators each row averages `replicates` sets drawn with
/// seeds `seed, seed+1, …`; a single random set fluctuates too much for a
/// stable slope. Deterministic generators always use one set.
pub fn rate_study(
    space: Space,
    generator: Generator,
    radius: RadiusPQ,
    ns: &[usize],
    seed: u64,
    replicates: usize,
) -> Result<RateStudyResult> {
    if replicates == 0 {
        return Err(Error::domain("need at least one replicate"));
    }
    let replicates = if generator.is_random() { replicates } else { 1 };
    if ns.len() < 4 {
        return Err(Error::domain("a rate study needs at least four sizes"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::domain("sizes must be positive and strictly increasing"));
    }
    let admissible = space_radius_admissible(&space, radius)?;
    let mut warnings = Vec::new();
    if !admissible {
        warnings.push(format!("radius {radius} is not admissible on {}", space.id()));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let l = auto_truncation(&space, n);
        let (mut value, mut tail) = (0.0, 0.0);
        for k in 0..replicates {
            let set = generate(space, generator, n, seed.wrapping_add(k as u64))?;
            let energies = harmonic_energy(&PairGram::new(&set)?, l)?;
            let rep = discrepancy_from_energies(&energies, radius.into(), l, false)?;
            value += rep.value;
            tail += rep.tail_estimate;
        }
        rows.push(RateRow {
            n,
            value: value / replicates as f64,
            truncation: l,
            tail: tail / replicates as f64,
            seed,
        });
    }
    if let Some(row) = rows.iter().find(|r| !(r.value > 0.0)) {
        return Err(Error::Numeric(format!(
            "zero discrepancy at N = {}; cannot fit logs",
            row.n
        )));
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.value.ln()).collect();
    let (slope, intercept) = slope_fit(&xs, &ys)?;
    Ok(RateStudyResult {
        space,
        generator: generator.name().to_string(),
        radius,
        admissible,
        replicates,
        rows,
        fitted_exponent: slope,
        fitted_intercept: intercept,
        warnings,
    })
}

/// `⌈c_H log N / log log N⌉`.
pub fn scan_length(n_points: usize, c_h: f64) -> Result<usize> {
    if n_points < 3 {
        return Err(Error::domain("the prime scan needs N ≥ 3"));
    }
    if !(c_h > 0.0) {
        return Err(Error::domain("scan constant must be positive"));
    }
    let ln = (n_points as f64).ln();
    Ok((c_h * ln / ln.ln()).ceil() as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub space: Space,
    pub n_points: usize,
    #[serde(rename = "L")]
    pub truncation: usize,
    pub radii: Vec<RadiusPQ>,
    pub values: Vec<f64>,
    /// 1-based index of the largest value.
    pub argmax: usize,
    pub max: f64,
    /// `max · N^{1+1/d} · log⁴N / log log N`.
    pub score: f64,
    pub warnings: Vec<String>,
}

/// Discrepancy at the first `H` prime radii `p_n π / q_n`.
pub fn prime_scan(set: &PointSet, ratio_margin: f64, c_h: f64) -> Result<ScanResult> {
    let space = set.space();
    let n = set.len();
    let h = scan_length(n, c_h)?;
    let radii = prime_radius_sequence(ratio_margin, h)?;
    let mut warnings = Vec::new();
    let d = space.params().d;
    if d % 4 != 1 {
        warnings.push(format!("dimension {d} of {} is not 1 mod 4", space.id()));
    }
    let l = auto_truncation(&space, n);
    let energies = harmonic_energy(&PairGram::new(set)?, l)?;
    let values = radii
        .iter()
        .map(|r| Ok(discrepancy_from_energies(&energies, Radius::Exact(*r), l, false)?.value))
        .collect::<Result<Vec<f64>>>()?;
    let (idx, max) =
        values.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, v)| if v > best.1 { (i, v) } else { best },
        );
    let nf = n as f64;
    let score = max * nf.powf(1.0 + 1.0 / f64::from(d)) * nf.ln().powi(4) / nf.ln().ln();
    Ok(ScanResult {
        space,
        n_points: n,
        truncation: l,
        radii,
        values,
        argmax: idx + 1,
        max,
        score,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiScan {
    /// `min m^{1/2} |P_m(cos r)|` over the range.
    pub min_scaled: f64,
    pub argmin: usize,
    pub max_scaled: f64,
}

/// Scans `m^{1/2} |P_m^{(α,β)}(cos(pπ/q))|` for `m_min ≤ m ≤ m_max`.
pub fn jacobadly_scan(params: JacobiParams, radius: RadiusPQ, m_min: usize, m_max: usize) -> Result<JacobiScan> {
    if !(1 <= m_min && m_min < m_max) {
        return Err(Error::domain(format!("need 1 ≤ m_min < m_max, got {m_min}, {m_max}")));
    }
    let mut p = vec![0.0; m_max + 1];
    JacobiRecurrence::new(params, m_max).fill(radius.cos(), &mut p);
    let mut out = JacobiScan {
        min_scaled: f64::INFINITY,
        argmin: m_min,
        max_scaled: 0.0,
    };
    for (m, v) in p.iter().enumerate().take(m_max + 1).skip(m_min) {
        let s = (m as f64).sqrt() * v.abs();
        if s < out.min_scaled {
            out.min_scaled = s;
            out.argmin = m;
        }
        out.max_scaled = out.max_scaled.max(s);
    }
    Ok(out)
}

/// `π^{−1/2} (sin r/2)^{−α−1/2} (cos r/2)^{−β−1/2}`, the amplitude of the
/// leading asymptotic term after scaling by `m^{1/2}`.
pub fn szego_envelope(params: JacobiParams, r: f64) -> f64 {
    let (s, c) = (r / 2.0).sin_cos();
    PI.sqrt().recip() * s.powf(-params.alpha - 0.5) * c.powf(-params.beta - 0.5)
}

/// `max m^{3/2} |P_m(cos r) − main term|` over `m_min ≤ m ≤ m_max`.
pub fn szego_error(params: JacobiParams, r: f64, m_min: usize, m_max: usize) -> Result<f64> {
    if !(1 <= m_min && m_min <= m_max) {
        return Err(Error::domain(format!("need 1 ≤ m_min ≤ m_max, got {m_min}, {m_max}")));
    }
    let mut p = vec![0.0; m_max + 1];
    JacobiRecurrence::new(params, m_max).fill(r.cos(), &mut p);
    let mut worst: f64 = 0.0;
    for (m, v) in p.iter().enumerate().skip(m_min) {
        let main = jacobi_asymptotic(params, m, r)?;
        worst = worst.max((m as f64).powf(1.5) * (v - main).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientScale {
    pub min: f64,
    pub argmin: usize,
    pub max: f64,
}

/// Range of `m^{a+3/2} |φ_m(r)|` over `m_min ≤ m ≤ m_max`.
pub fn coefficient_scale_scan(space: &Space, radius: Radius, m_min: usize, m_max: usize) -> Result<CoefficientScale> {
    if !(1 <= m_min && m_min <= m_max) {
        return Err(Error::domain(format!("need 1 ≤ m_min ≤ m_max, got {m_min}, {m_max}")));
    }
    let a = space.params().a();
    let phi = ball_coefficients_at_cos(space, m_max, radius.cos())?;
    let mut out = CoefficientScale {
        min: f64::INFINITY,
        argmin: m_min,
        max: 0.0,
    };
    for m in m_min..=m_max {
        let s = (m as f64).powf(a + 1.5) * phi[m - 1].abs();
        if s < out.min {
            out.min = s;
            out.argmin = m;
        }
        out.max = out.max.max(s);
    }
    Ok(out)
}
