//! Compact two-point homogeneous spaces: spectral parameters, coordinate
//! models, distances, uniform sampling and ball volumes.
//!
//! Metrics are normalized so that the diameter is `π` and the Riemannian
//! measure is a probability measure. Points of the projective spaces are
//! unit vectors over the base field, taken as representatives of their
//! class; the cosine of the distance between two classes is
//! `2|⟨x, y⟩|² − 1`, i.e. `ρ = 2 arccos |⟨x, y⟩|`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::specfun;

/// Tolerance on the Euclidean norm of incoming coordinates.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A compact connected two-point homogeneous space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// The sphere `S^d`, `d ≥ 1`.
    Sphere(u32),
    /// Real projective space `P^n(ℝ)`, `n ≥ 2`.
    ProjReal(u32),
    /// Complex projective space `P^n(ℂ)`, `n ≥ 2`.
    ProjComplex(u32),
    /// Quaternionic projective space `P^n(ℍ)`, `n ≥ 2`.
    ProjQuat(u32),
    /// The octonionic projective plane. Parameters only.
    ProjOct,
}

/// Base field of the coordinate model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// Sphere: plain Euclidean inner product, no projectivization.
    Sphere,
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real components per field element.
    pub fn width(self) -> usize {
        match self {
            Field::Sphere | Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }
}

/// Spectral data `(d, d₀, n, a, b)` of a space, with `a = (d−2)/2` and
/// `b = (d₀−2)/2`. The half-integers are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceParams {
    pub d: u32,
    pub d0: u32,
    pub n: u32,
    pub two_a: i32,
    pub two_b: i32,
}

impl SpaceParams {
    pub fn a(&self) -> f64 {
        f64::from(self.two_a) / 2.0
    }

    pub fn b(&self) -> f64 {
        f64::from(self.two_b) / 2.0
    }
}

impl Space {
    /// Checked constructor from a kind and its dimension or rank.
    pub fn sphere(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("sphere dimension must be at least 1"));
        }
        Ok(Space::Sphere(d))
    }

    fn projective(kind: fn(u32) -> Space, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("projective rank must be at least 2"));
        }
        Ok(kind(n))
    }

    pub fn params(&self) -> SpaceParams {
        let (d, d0, n) = match *self {
            Space::Sphere(d) => (d, d, 1),
            Space::ProjReal(n) => (n, 1, n),
            Space::ProjComplex(n) => (2 * n, 2, n),
            Space::ProjQuat(n) => (4 * n, 4, n),
            Space::ProjOct => (16, 8, 2),
        };
        SpaceParams {
            d,
            d0,
            n,
            two_a: d as i32 - 2,
            two_b: d0 as i32 - 2,
        }
    }

    /// The coordinate model, or an error for the octonionic plane.
    pub fn field(&self) -> Result<Field> {
        match self {
            Space::Sphere(_) => Ok(Field::Sphere),
            Space::ProjReal(_) => Ok(Field::Real),
            Space::ProjComplex(_) => Ok(Field::Complex),
            Space::ProjQuat(_) => Ok(Field::Quaternion),
            Space::ProjOct => Err(Error::UnsupportedSpace(self.id())),
        }
    }

    pub fn supports_points(&self) -> bool {
        !matches!(self, Space::ProjOct)
    }

    /// Number of real coordinates of a point.
    pub fn coord_len(&self) -> Result<usize> {
        let field = self.field()?;
        Ok(match *self {
            Space::Sphere(d) => d as usize + 1,
            Space::ProjReal(n) | Space::ProjComplex(n) | Space::ProjQuat(n) => (n as usize + 1) * field.width(),
            Space::ProjOct => unreachable!(),
        })
    }

    pub fn id(&self) -> String {
        match self {
            Space::Sphere(d) => format!("s{d}"),
            Space::ProjReal(n) => format!("rp{n}"),
            Space::ProjComplex(n) => format!("cp{n}"),
            Space::ProjQuat(n) => format!("hp{n}"),
            Space::ProjOct => "op2".to_string(),
        }
    }

    /// Validate and renormalize raw coordinates into a point of this space.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        let len = self.coord_len()?;
        if coords.len() != len {
            return Err(Error::Dimension(format!(
                "{} expects {len} coordinates, got {}",
                self.id(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("non-finite coordinate"));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::domain(format!(
                "coordinates have norm {norm}, expected 1 within {NORM_TOLERANCE:e}"
            )));
        }
        Ok(Point::normalized(coords))
    }

    /// The base point `(1, 0, …, 0)`, used as the pole of zonal quantities.
    pub fn pole(&self) -> Result<Point> {
        let mut coords = vec![0.0; self.coord_len()?];
        coords[0] = 1.0;
        Ok(Point { coords })
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "op2" {
            return Ok(Space::ProjOct);
        }
        let bad = || Error::Parse(format!("unknown space id {s:?}"));
        let (kind, digits): (fn(u32) -> Result<Space>, &str) = if let Some(rest) = s.strip_prefix("rp") {
            (|n| Space::projective(Space::ProjReal, n), rest)
        } else if let Some(rest) = s.strip_prefix("cp") {
            (|n| Space::projective(Space::ProjComplex, n), rest)
        } else if let Some(rest) = s.strip_prefix("hp") {
            (|n| Space::projective(Space::ProjQuat, n), rest)
        } else if let Some(rest) = s.strip_prefix('s') {
            (Space::sphere, rest)
        } else {
            return Err(bad());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        kind(n)
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A unit coordinate vector. For projective spaces, one representative of
/// the class.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    fn normalized(mut coords: Vec<f64>) -> Self {
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        coords.iter_mut().for_each(|c| *c /= norm);
        Point { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// `cos ρ(x, y)` on raw coordinate slices. No validation.
#[inline]
pub(crate) fn cos_distance_raw(field: Field, x: &[f64], y: &[f64]) -> f64 {
    let c = match field {
        Field::Sphere => x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>(),
        Field::Real => {
            let ip = x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
            2.0 * ip * ip - 1.0
        }
        Field::Complex => {
            // Σ conj(x_i) y_i
            let (mut re, mut im) = (0.0, 0.0);
            for (u, v) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
                re += u[0] * v[0] + u[1] * v[1];
                im += u[0] * v[1] - u[1] * v[0];
            }
            2.0 * (re * re + im * im) - 1.0
        }
        Field::Quaternion => {
            // Σ conj(x_i) y_i with right scalar multiplication as the gauge.
            let mut acc = [0.0f64; 4];
            for (p, q) in x.chunks_exact(4).zip(y.chunks_exact(4)) {
                acc[0] += p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
                acc[1] += p[0] * q[1] - q[0] * p[1] - (p[2] * q[3] - p[3] * q[2]);
                acc[2] += p[0] * q[2] - q[0] * p[2] - (p[3] * q[1] - p[1] * q[3]);
                acc[3] += p[0] * q[3] - q[0] * p[3] - (p[1] * q[2] - p[2] * q[1]);
            }
            2.0 * acc.iter().map(|c| c * c).sum::<f64>() - 1.0
        }
    };
    c.clamp(-1.0, 1.0)
}

fn check_pair(space: &Space, x: &Point, y: &Point) -> Result<Field> {
    let field = space.field()?;
    let len = space.coord_len()?;
    if x.coords.len() != len || y.coords.len() != len {
        return Err(Error::Dimension(format!("points do not belong to {}", space.id())));
    }
    Ok(field)
}

/// Cosine of the geodesic distance, in `[−1, 1]`.
pub fn cos_distance(space: &Space, x: &Point, y: &Point) -> Result<f64> {
    let field = check_pair(space, x, y)?;
    Ok(cos_distance_raw(field, &x.coords, &y.coords))
}

/// Geodesic distance in `[0, π]`.
pub fn distance(space: &Space, x: &Point, y: &Point) -> Result<f64> {
    Ok(cos_distance(space, x, y)?.acos())
}

/// Draws one uniformly distributed point: a standard Gaussian vector over
/// the base field, normalized.
pub(crate) fn sample_point<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Point {
    loop {
        let coords: Vec<f64> = (0..len).map(|_| StandardNormal.sample(rng)).collect();
        let norm2: f64 = coords.iter().map(|c| c * c).sum();
        if norm2 > 1e-300 {
            return Point::normalized(coords);
        }
    }
}

/// `count` points distributed by the normalized Riemannian measure,
/// deterministic in `seed`.
pub fn sample_uniform(space: &Space, seed: u64, count: usize) -> Result<Vec<Point>> {
    let len = space.coord_len()?;
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| sample_point(len, &mut rng)).collect())
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&r) {
        return Err(Error::domain(format!("radius {r} outside [0, π]")));
    }
    Ok(())
}

/// `μ(B_r) = I_{sin²(r/2)}(a+1, b+1)`.
pub fn ball_volume(space: &Space, r: f64) -> Result<f64> {
    check_radius(r)?;
    let p = space.params();
    let s = (r / 2.0).sin().powi(2);
    specfun::reg_inc_beta(s, p.a() + 1.0, p.b() + 1.0)
}

/// Radial density `A(r) = c(a,b) (sin r/2)^{2a+1} (cos r/2)^{2b+1}`.
pub fn density(space: &Space, r: f64) -> Result<f64> {
    check_radius(r)?;
    let p = space.params();
    let c = specfun::c_ab(p.a(), p.b())?;
    let (s, co) = (r / 2.0).sin_cos();
    Ok(c * s.powi(p.two_a + 1) * co.powi(p.two_b + 1))
}

/// Spaces exercised by the property tests: every kind, including the
/// `d ≡ 1 (mod 4)` cases.
pub const CATALOG: &[Space] = &[
    Space::Sphere(1),
    Space::Sphere(2),
    Space::Sphere(3),
    Space::Sphere(4),
    Space::Sphere(5),
    Space::Sphere(9),
    Space::ProjReal(2),
    Space::ProjReal(3),
    Space::ProjReal(5),
    Space::ProjComplex(2),
    Space::ProjComplex(3),
    Space::ProjQuat(2),
    Space::ProjQuat(3),
    Space::ProjOct,
];
