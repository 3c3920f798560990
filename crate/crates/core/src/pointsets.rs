//! Weighted point configurations: generators and the JSON points file.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{self, Point, Space};

/// Weight sums within this distance of 1 are renormalized; beyond, rejected.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-6;

/// Default angular radius of [`Generator::CapCluster`].
pub const DEFAULT_CAP_RADIUS: f64 = PI / 10.0;

/// How a point set was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
    pub n: usize,
}

/// Points on a space with positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    space: Space,
    points: Vec<Point>,
    weights: Vec<f64>,
    provenance: Option<Provenance>,
}

/// Fills in equal weights or checks and renormalizes the given ones.
pub fn normalize_weights(weights: Option<Vec<f64>>, n: usize) -> Result<Vec<f64>> {
    let Some(mut w) = weights else {
        return Ok(vec![1.0 / n as f64; n]);
    };
    if w.len() != n {
        return Err(Error::Dimension(format!("{} weights for {n} points", w.len())));
    }
    if let Some(bad) = w.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Weights(format!("weight {bad} is not positive")));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::Weights(format!("weights sum to {sum}, not 1")));
    }
    w.iter_mut().for_each(|x| *x /= sum);
    Ok(w)
}

impl PointSet {
    pub fn new(space: Space, points: Vec<Point>, weights: Option<Vec<f64>>) -> Result<Self> {
        let len = space.coord_len()?;
        if points.is_empty() {
            return Err(Error::domain("a point set needs at least one point"));
        }
        if let Some(p) = points.iter().find(|p| p.coords().len() != len) {
            return Err(Error::Dimension(format!(
                "point with {} coordinates on {} (expected {len})",
                p.coords().len(),
                space.id()
            )));
        }
        let weights = normalize_weights(weights, points.len())?;
        Ok(PointSet {
            space,
            points,
            weights,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = PointsFile {
            space: self.space,
            points: self.points.iter().map(|p| p.coords().to_vec()).collect(),
            weights: Some(self.weights.clone()),
            provenance: self.provenance.clone(),
            _manifest: None,
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PointsFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("points file: {e}")))?;
        let points = file
            .points
            .into_iter()
            .map(|c| file.space.point(c))
            .collect::<Result<Vec<_>>>()?;
        let set = PointSet::new(file.space, points, file.weights)?;
        Ok(match file.provenance {
            Some(p) => set.with_provenance(p),
            None => set,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    space: Space,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
    /// Run metadata written by the CLI; ignored on read.
    #[serde(default, skip_serializing, rename = "manifest")]
    _manifest: Option<serde::de::IgnoredAny>,
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    let text = fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    PointSet::from_json(&text)
}

pub fn write_points(path: impl AsRef<Path>, set: &PointSet) -> Result<()> {
    fs::write(path.as_ref(), set.to_json()? + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// Independent samples from the normalized measure.
    Uniform,
    /// Golden-angle lattice with equal-area heights; `S²` only.
    Fibonacci,
    /// Rakhmanov–Saff–Zhou generalized spiral; `S²` only.
    Spiral,
    /// Uniform samples conditioned on the ball of the given radius about
    /// the pole `e₀`.
    CapCluster { cap_radius: f64 },
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::Uniform => "uniform",
            Generator::Fibonacci => "fibonacci",
            Generator::Spiral => "spiral",
            Generator::CapCluster { .. } => "cap_cluster",
        }
    }

    /// Whether the output depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, Generator::Uniform | Generator::CapCluster { .. })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Generator::Uniform),
            "fibonacci" | "fib" => Ok(Generator::Fibonacci),
            "spiral" => Ok(Generator::Spiral),
            "cap_cluster" | "cap-cluster" => Ok(Generator::CapCluster {
                cap_radius: DEFAULT_CAP_RADIUS,
            }),
            _ => Err(Error::Parse(format!("unknown generator {s:?}"))),
        }
    }
}

/// Generates `n` equally weighted points. Random generators draw point `i`
/// from its own ChaCha stream, so the output does not depend on scheduling.
pub fn generate(space: Space, generator: Generator, n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::domain("need at least one point"));
    }
    let len = space.coord_len()?;
    let coords: Vec<Vec<f64>> = match generator {
        Generator::Fibonacci | Generator::Spiral if space != Space::Sphere(2) => {
            return Err(Error::domain(format!(
                "{generator} points exist only on s2, not {}",
                space.id()
            )));
        }
        Generator::Fibonacci => fibonacci(n),
        Generator::Spiral => spiral(n),
        Generator::Uniform => (0..n)
            .into_par_iter()
            .map(|i| spaces::sample_point(len, &mut point_rng(seed, i)).into_coords())
            .collect(),
        Generator::CapCluster { cap_radius } => {
            if !(cap_radius > 0.0 && cap_radius <= PI) {
                return Err(Error::domain(format!("cap radius {cap_radius} outside (0, π]")));
            }
            let cap_volume = spaces::ball_volume(&space, cap_radius)?;
            (0..n)
                .into_par_iter()
                .map(|i| cap_point(&space, cap_radius, cap_volume, &mut point_rng(seed, i)))
                .collect::<Result<_>>()?
        }
    };
    let points = coords.into_iter().map(|c| space.point(c)).collect::<Result<Vec<_>>>()?;
    Ok(PointSet::new(space, points, None)?.with_provenance(Provenance {
        generator: generator.name().to_string(),
        seed: generator.is_random().then_some(seed),
        n,
    }))
}

fn point_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn fibonacci(n: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * i as f64).sin_cos();
            vec![rho * c, rho * s, z]
        })
        .collect()
}

fn spiral(n: usize) -> Vec<Vec<f64>> {
    if n == 1 {
        return vec![vec![0.0, 0.0, 1.0]];
    }
    let step = 3.6 / (n as f64).sqrt();
    let mut phi = 0.0f64;
    (0..n)
        .map(|k| {
            let h = -1.0 + 2.0 * k as f64 / (n - 1) as f64;
            let rho = (1.0 - h * h).max(0.0).sqrt();
            if k == 0 || k == n - 1 {
                phi = 0.0;
            } else {
                phi = (phi + step / rho).rem_euclid(2.0 * PI);
            }
            let (s, c) = phi.sin_cos();
            vec![rho * c, rho * s, h]
        })
        .collect()
}

/// Radial part by inverting `μ(B_ρ)` on `[0, μ(B_cap)]`, angular part uniform
/// on the unit vectors orthogonal to `e₀` over the base field.
fn cap_point(space: &Space, cap: f64, cap_volume: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    use rand::Rng;
    let len = space.coord_len()?;
    let width = space.field()?.width();
    let target = rng.random::<f64>() * cap_volume;
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if spaces::ball_volume(space, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    let u = spaces::sample_point(len - width, rng).into_coords();
    // Geodesics leave e₀ at unit speed on the sphere and at half speed in
    // the projective representative.
    let angle = if matches!(space, Space::Sphere(_)) {
        rho
    } else {
        rho / 2.0
    };
    let (s, c) = angle.sin_cos();
    let mut x = vec![0.0; len];
    x[0] = c;
    x[width..].iter_mut().zip(&u).for_each(|(xi, ui)| *xi = s * ui);
    Ok(x)
}
