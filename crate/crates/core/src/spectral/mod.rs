//! The discrepancy engine.
//!
//! `‖D_r‖² = Σ_{m≥1} q_m φ_m(r)²`, truncated at `L`. Energies do not
//! depend on the radius, so studies that scan radii compute them once and
//! call [`discrepancy_from_energies`] per radius.

mod energy;
mod gram;
mod series;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use energy::{cm_sum, harmonic_energy, HarmonicEnergies, CLAMP_TOLERANCE};
pub use gram::{PairGram, Tile, DEFAULT_TILE_SIZE};
pub use series::{ball_coefficient, ball_coefficients_at_cos};

use crate::admissibility::RadiusPQ;
use crate::error::{Error, Result};
use crate::pointsets::PointSet;
use crate::spaces::Space;
use crate::sum::Neumaier;

pub const MIN_TRUNCATION: usize = 512;
pub const MAX_TRUNCATION: usize = 50_000;
/// Degrees per unit of `N^{1/d}` in [`auto_truncation`].
pub const TRUNCATION_SCALE: f64 = 32.0;

/// A ball radius: exact `pπ/q`, or a plain real for oracle comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Radius {
    Exact(RadiusPQ),
    Real { real: f64 },
}

impl Radius {
    pub fn real(r: f64) -> Self {
        Radius::Real { real: r }
    }

    pub fn value(&self) -> f64 {
        match self {
            Radius::Exact(pq) => pq.value(),
            Radius::Real { real } => *real,
        }
    }

    /// `cos r`; exact at the special rational points.
    pub fn cos(&self) -> f64 {
        match self {
            Radius::Exact(pq) => pq.cos(),
            Radius::Real { real } => real.cos(),
        }
    }

    fn check_open(&self) -> Result<()> {
        let r = self.value();
        if !(r > 0.0 && r < PI) {
            return Err(Error::domain(format!("radius {r} outside (0, π)")));
        }
        Ok(())
    }
}

impl From<RadiusPQ> for Radius {
    fn from(r: RadiusPQ) -> Self {
        Radius::Exact(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub m: usize,
    pub q_m: f64,
    pub phi_m: f64,
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub space: Space,
    pub radius: Radius,
    #[serde(rename = "L")]
    pub truncation: usize,
    pub value: f64,
    pub tail_estimate: f64,
    pub n_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub clamped_terms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<SeriesTerm>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Truncation degree; [`auto_truncation`] when absent.
    pub truncation: Option<usize>,
    pub keep_terms: bool,
    pub tile_size: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            truncation: None,
            keep_terms: false,
            tile_size: DEFAULT_TILE_SIZE,
        }
    }
}

impl SeriesOptions {
    pub fn truncation(l: usize) -> Self {
        SeriesOptions {
            truncation: Some(l),
            ..Default::default()
        }
    }
}

/// `L = clamp(⌈32 N^{1/d}⌉, 512, 50000)`.
pub fn auto_truncation(space: &Space, n_points: usize) -> usize {
    let d = f64::from(space.params().d);
    let raw = TRUNCATION_SCALE * (n_points.max(1) as f64).powf(1.0 / d);
    // Absorb roundoff in the root, so perfect powers land exactly.
    let l = (raw * (1.0 - 1e-12)).ceil() as usize;
    l.clamp(MIN_TRUNCATION, MAX_TRUNCATION)
}

/// Tail model `term_m ≤ κ m^{−2}`, with `κ` the largest `m² term_m` over the
/// last quarter of the computed terms; returns `κ / L`.
pub fn tail_estimate(terms: &[f64]) -> f64 {
    let l = terms.len();
    if l == 0 {
        return 0.0;
    }
    let start = l - l.div_ceil(4);
    let kappa = terms[start..]
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let m = (start + i + 1) as f64;
            m * m * t
        })
        .fold(0.0, f64::max);
    kappa / l as f64
}

/// Sums the series at one radius from precomputed energies, using the first
/// `truncation` of them.
pub fn discrepancy_from_energies(
    energies: &HarmonicEnergies,
    radius: Radius,
    truncation: usize,
    keep_terms: bool,
) -> Result<DiscrepancyReport> {
    radius.check_open()?;
    if truncation == 0 || truncation > energies.max_degree() {
        return Err(Error::domain(format!(
            "truncation {truncation} outside 1..={}",
            energies.max_degree()
        )));
    }
    let space = energies.space();
    let phi = ball_coefficients_at_cos(&space, truncation, radius.cos())?;
    let q = &energies.values()[..truncation];
    let terms: Vec<f64> = q.iter().zip(&phi).map(|(q, f)| q * f * f).collect();
    let mut acc = Neumaier::default();
    terms.iter().for_each(|t| acc.add(*t));
    Ok(DiscrepancyReport {
        space,
        radius,
        truncation,
        value: acc.value().max(0.0),
        tail_estimate: tail_estimate(&terms),
        n_points: energies.n_points(),
        seed: None,
        clamped_terms: energies.clamped(),
        terms: keep_terms.then(|| {
            (0..truncation)
                .map(|i| SeriesTerm {
                    m: i + 1,
                    q_m: q[i],
                    phi_m: phi[i],
                    term: terms[i],
                })
                .collect()
        }),
    })
}

/// `∫ |D_r(x)|² dμ(x)` for a weighted point set, truncated at degree `L`.
pub fn discrepancy_l2(set: &PointSet, radius: Radius, options: &SeriesOptions) -> Result<DiscrepancyReport> {
    radius.check_open()?;
    let space = set.space();
    let l = options.truncation.unwrap_or_else(|| auto_truncation(&space, set.len()));
    if l == 0 {
        return Err(Error::domain("truncation must be at least 1"));
    }
    let gram = PairGram::with_tile_size(set, options.tile_size)?;
    let energies = harmonic_energy(&gram, l)?;
    let mut report = discrepancy_from_energies(&energies, radius, l, options.keep_terms)?;
    report.seed = set.provenance().and_then(|p| p.seed);
    Ok(report)
}

#[cfg(test)]
mod tests;
