//! Exact rational admissibility of radii `r = pπ/q`.
//!
//! A radius is admissible for Jacobi parameters `(α, β)` when
//! `γp + δq ∉ ℤ` with `γ = (α+β+1)/2` and `δ = −(2α−1)/4`; for a space the
//! relevant parameters are `(a+1, b+1) = (d/2, d₀/2)`, which turns the test
//! into `(d+d₀+2)p − (d−1)q ≢ 0 (mod 4)`. Everything here is integer
//! arithmetic with overflow checks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::Space;

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn ovf(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("zero denominator"));
        }
        if num == i64::MIN || den == i64::MIN {
            return Err(ovf("fraction component"));
        }
        let g = gcd(num, den).max(1);
        let s = den.signum();
        Ok(Frac {
            num: s * num / g,
            den: s * den / g,
        })
    }

    pub fn int(n: i64) -> Self {
        Frac { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(self, o: Frac) -> Result<Frac> {
        let g = gcd(self.den, o.den);
        let l = (self.den / g).checked_mul(o.den).ok_or_else(|| ovf("add"))?;
        let a = self.num.checked_mul(l / self.den).ok_or_else(|| ovf("add"))?;
        let b = o.num.checked_mul(l / o.den).ok_or_else(|| ovf("add"))?;
        Frac::new(a.checked_add(b).ok_or_else(|| ovf("add"))?, l)
    }

    pub fn checked_sub(self, o: Frac) -> Result<Frac> {
        self.checked_add(o.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Frac> {
        Ok(Frac {
            num: self.num.checked_neg().ok_or_else(|| ovf("neg"))?,
            den: self.den,
        })
    }

    pub fn checked_mul(self, o: Frac) -> Result<Frac> {
        let g1 = gcd(self.num, o.den).max(1);
        let g2 = gcd(o.num, self.den).max(1);
        let n = (self.num / g1).checked_mul(o.num / g2).ok_or_else(|| ovf("mul"))?;
        let d = (self.den / g2).checked_mul(o.den / g1).ok_or_else(|| ovf("mul"))?;
        Frac::new(n, d)
    }

    pub fn checked_div(self, o: Frac) -> Result<Frac> {
        if o.num == 0 {
            return Err(Error::domain("division by zero"));
        }
        self.checked_mul(Frac::new(o.den, o.num)?)
    }

    pub fn checked_mul_int(self, k: i64) -> Result<Frac> {
        self.checked_mul(Frac::int(k))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (i128::from(self.num) * i128::from(other.den)).cmp(&(i128::from(other.num) * i128::from(self.den)))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Frac {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed fraction {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Frac::int(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Frac::new(n, d)
            }
        }
    }
}

/// A rational radius `pπ/q` with `0 < p < q` coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPQ")]
pub struct RadiusPQ {
    p: i64,
    q: i64,
}

#[derive(Deserialize)]
struct RawPQ {
    p: i64,
    q: i64,
}

impl TryFrom<RawPQ> for RadiusPQ {
    type Error = Error;
    fn try_from(r: RawPQ) -> Result<Self> {
        RadiusPQ::new(r.p, r.q)
    }
}

impl RadiusPQ {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if !(0 < p && p < q) {
            return Err(Error::domain(format!("radius {p}/{q}: need 0 < p < q")));
        }
        if gcd(p, q) != 1 {
            return Err(Error::domain(format!("radius {p}/{q}: p and q must be coprime")));
        }
        Ok(RadiusPQ { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The radius `pπ/q`.
    pub fn value(&self) -> f64 {
        std::f64::consts::PI * self.p as f64 / self.q as f64
    }

    /// `cos(pπ/q)`, exact at the ratios `1/2`, `1/3` and `2/3`.
    pub fn cos(&self) -> f64 {
        match (self.p, self.q) {
            (1, 2) => 0.0,
            (1, 3) => 0.5,
            (2, 3) => -0.5,
            _ => self.value().cos(),
        }
    }

    pub fn ratio(&self) -> Frac {
        Frac {
            num: self.p,
            den: self.q,
        }
    }
}

impl fmt::Display for RadiusPQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RadiusPQ {
    type Err = Error;

    /// Parses `"p/q"`; the pair must already be reduced.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("radius must look like p/q, got {s:?}")))?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        RadiusPQ::new(p, q)
    }
}

/// The residue `((d+d₀+2)p − (d−1)q) mod 4` in `0..4`.
pub fn space_residue(space: &Space, radius: RadiusPQ) -> Result<i64> {
    let sp = space.params();
    let (d, d0) = (i64::from(sp.d), i64::from(sp.d0));
    let lhs = (d + d0 + 2).checked_mul(radius.p).ok_or_else(|| ovf("residue"))?;
    let rhs = (d - 1).checked_mul(radius.q).ok_or_else(|| ovf("residue"))?;
    Ok(lhs.checked_sub(rhs).ok_or_else(|| ovf("residue"))?.rem_euclid(4))
}

/// `(d+d₀+2)p − (d−1)q ≢ 0 (mod 4)`.
pub fn space_radius_admissible(space: &Space, radius: RadiusPQ) -> Result<bool> {
    Ok(space_residue(space, radius)? != 0)
}

/// `γp + δq ∉ ℤ`.
pub fn jacobadly_condition(gamma: Frac, delta: Frac, radius: RadiusPQ) -> Result<bool> {
    let h = gamma
        .checked_mul_int(radius.p)?
        .checked_add(delta.checked_mul_int(radius.q)?)?;
    Ok(!h.is_integer())
}

/// `(γ, δ) = ((α+β+1)/2, −(2α−1)/4)`.
pub fn gamma_delta(alpha: Frac, beta: Frac) -> Result<(Frac, Frac)> {
    if alpha <= Frac::int(-1) || beta <= Frac::int(-1) {
        return Err(Error::domain("Jacobi parameters need α, β > −1"));
    }
    let gamma = alpha
        .checked_add(beta)?
        .checked_add(Frac::int(1))?
        .checked_mul(Frac::new(1, 2)?)?;
    let delta = alpha
        .checked_mul_int(2)?
        .checked_sub(Frac::int(1))?
        .checked_mul(Frac::new(-1, 4)?)?;
    Ok((gamma, delta))
}

pub fn jacobadly_from_alpha_beta(alpha: Frac, beta: Frac, radius: RadiusPQ) -> Result<bool> {
    let (g, d) = gamma_delta(alpha, beta)?;
    jacobadly_condition(g, d, radius)
}

/// Jacobi parameters `(a+1, b+1)` of a space's ball polynomial, exactly.
pub fn ball_alpha_beta(space: &Space) -> (Frac, Frac) {
    let p = space.params();
    (
        Frac::new(i64::from(p.two_a) + 2, 2).expect("nonzero"),
        Frac::new(i64::from(p.two_b) + 2, 2).expect("nonzero"),
    )
}

/// What is known about `(γ, δ)`. Irrational values are symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GammaDeltaSpec {
    BothRational {
        gamma: Frac,
        delta: Frac,
    },
    /// `γ, δ` irrational with `j₁γ + j₂δ + j₃ = 0`, `gcd(j₁,j₂,j₃) = 1`.
    IrrationalWithRelation {
        j1: i64,
        j2: i64,
        j3: i64,
    },
    /// Exactly one of `γ, δ` rational.
    OneRational {
        which: Which,
        value: Frac,
    },
    /// `1, γ, δ` linearly independent over ℚ.
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Gamma,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Classification {
    /// The condition holds for every coprime `(p, q)`.
    All,
    /// Holds except at the reduced ratio `p/q = j₁/j₂`.
    AllExcept { exceptional_ratio: Frac },
    /// Holds for no `(p, q)`.
    None,
    /// Holds for some `(p, q)`; `witness` is the first found.
    Some { witness: RadiusPQ },
}

fn validate(spec: &GammaDeltaSpec) -> Result<()> {
    if let GammaDeltaSpec::IrrationalWithRelation { j1, j2, j3 } = *spec {
        if j1 == 0 || j2 == 0 {
            return Err(Error::domain(
                "with γ and δ irrational a relation needs j₁ ≠ 0 and j₂ ≠ 0",
            ));
        }
        if gcd(gcd(j1, j2), j3) != 1 {
            return Err(Error::domain("relation coefficients must have gcd 1"));
        }
    }
    Ok(())
}

/// Classify all coprime radii for the given `(γ, δ)`.
pub fn classify(spec: &GammaDeltaSpec) -> Result<Classification> {
    validate(spec)?;
    Ok(match *spec {
        GammaDeltaSpec::Independent | GammaDeltaSpec::OneRational { .. } => Classification::All,
        GammaDeltaSpec::IrrationalWithRelation { j1, j2, .. } => {
            if gcd(j1, j2) > 1 {
                Classification::All
            } else {
                Classification::AllExcept {
                    exceptional_ratio: Frac::new(j1, j2)?,
                }
            }
        }
        GammaDeltaSpec::BothRational { gamma, delta } => {
            if gamma.is_integer() && delta.is_integer() {
                Classification::None
            } else {
                Classification::Some {
                    witness: find_witness(gamma, delta)?,
                }
            }
        }
    })
}

/// First coprime `(p, q)`, ordered by `q` then `p`, with `γp + δq ∉ ℤ`.
/// The condition depends on `p mod den(γ)` and `q mod den(δ)`, so a bound
/// of `4·den(γ)·den(δ)` on `q` makes the search complete.
fn find_witness(gamma: Frac, delta: Frac) -> Result<RadiusPQ> {
    let bound = gamma
        .den
        .checked_mul(delta.den)
        .and_then(|x| x.checked_mul(4))
        .ok_or_else(|| ovf("witness bound"))?
        .max(2);
    for q in 2..=bound {
        for p in 1..q {
            if gcd(p, q) != 1 {
                continue;
            }
            let r = RadiusPQ { p, q };
            if jacobadly_condition(gamma, delta, r)? {
                return Ok(r);
            }
        }
    }
    Err(Error::Convergence {
        what: format!("no witness for γ={gamma}, δ={delta} with q ≤ {bound}"),
        estimate: f64::NAN,
    })
}

/// Per-radius form of [`classify`].
pub fn condition_holds(spec: &GammaDeltaSpec, radius: RadiusPQ) -> Result<bool> {
    validate(spec)?;
    match *spec {
        GammaDeltaSpec::Independent | GammaDeltaSpec::OneRational { .. } => Ok(true),
        GammaDeltaSpec::BothRational { gamma, delta } => jacobadly_condition(gamma, delta, radius),
        GammaDeltaSpec::IrrationalWithRelation { j1, j2, j3 } => {
            // p/q = j₁/j₂ compared by cross-multiplication; p, q > 0.
            let same = i128::from(radius.p) * i128::from(j2) == i128::from(radius.q) * i128::from(j1);
            if !same {
                return Ok(true);
            }
            let h = gcd(j1, j2);
            if h == 1 {
                Ok(false)
            } else {
                Ok(!Frac::new(-j3, h)?.is_integer())
            }
        }
    }
}

/// Gegenbauer parameter, rational or symbolically irrational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda {
    Rational(Frac),
    Irrational,
}

/// `λp − (λ−1)q/2 ∉ ℤ`; for irrational `λ`, every ratio but `1/2`.
pub fn gegenbadly(lambda: Lambda, radius: RadiusPQ) -> Result<bool> {
    match lambda {
        Lambda::Irrational => Ok(!(radius.p == 1 && radius.q == 2)),
        Lambda::Rational(l) => {
            if l <= Frac::new(-1, 2)? {
                return Err(Error::domain(format!("Gegenbauer λ = {l} must exceed −1/2")));
            }
            let v = l
                .checked_mul_int(radius.p)?
                .checked_sub(l.checked_sub(Frac::int(1))?.checked_mul(Frac::new(radius.q, 2)?)?)?;
            Ok(!v.is_integer())
        }
    }
}

/// Sieve of Eratosthenes: all primes `≤ limit`.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    // p_n < n(ln n + ln ln n) for n ≥ 6
    let n = count.max(6) as f64;
    let limit = (n * (n.ln() + n.ln().ln())).ceil() as usize + 1;
    let mut ps = primes_up_to(limit);
    ps.truncate(count);
    ps
}

/// Radii `p_n π / q_n` with `q_n` the n-th prime and `p_n = max(1, ⌊q_n/2⌋)`,
/// checked against `margin ≤ p_n/q_n ≤ 1 − margin`.
pub fn prime_radius_sequence(ratio_margin: f64, count: usize) -> Result<Vec<RadiusPQ>> {
    if !(ratio_margin > 0.0 && ratio_margin <= 0.5) {
        return Err(Error::domain(format!(
            "ratio margin {ratio_margin} must lie in (0, 1/2]"
        )));
    }
    if count == 0 {
        return Err(Error::domain("need at least one radius"));
    }
    first_primes(count)
        .into_iter()
        .map(|q| {
            let q = q as i64;
            let p = (q / 2).max(1);
            let ratio = p as f64 / q as f64;
            if ratio < ratio_margin || ratio > 1.0 - ratio_margin {
                return Err(Error::domain(format!(
                    "radius {p}/{q} violates ratio margin {ratio_margin}"
                )));
            }
            RadiusPQ::new(p, q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> RadiusPQ {
        RadiusPQ::new(p, q).unwrap()
    }

    fn f(n: i64, d: i64) -> Frac {
        Frac::new(n, d).unwrap()
    }

    #[test]
    fn frac_basics() {
        assert_eq!(f(6, -4), f(-3, 2));
        assert_eq!(f(-3, 2).den(), 2);
        assert_eq!("3/6".parse::<Frac>().unwrap(), f(1, 2));
        assert_eq!("-7".parse::<Frac>().unwrap(), Frac::int(-7));
        assert!("1/0".parse::<Frac>().is_err());
        assert!("a/2".parse::<Frac>().is_err());
        assert_eq!(f(1, 2).checked_add(f(1, 3)).unwrap(), f(5, 6));
        assert_eq!(f(3, 4).checked_mul(f(2, 9)).unwrap(), f(1, 6));
        assert!(Frac::int(i64::MAX).checked_add(Frac::int(1)).is_err());
        assert!(Frac::int(i64::MAX / 2 + 1).checked_mul_int(2).is_err());
    }

    #[test]
    fn radius_validation() {
        assert!(RadiusPQ::new(2, 4).is_err());
        assert!(RadiusPQ::new(0, 3).is_err());
        assert!(RadiusPQ::new(3, 3).is_err());
        assert!("2/4".parse::<RadiusPQ>().is_err());
        assert!("1-3".parse::<RadiusPQ>().is_err());
        assert_eq!("1/3".parse::<RadiusPQ>().unwrap(), r(1, 3));
        assert_eq!(r(1, 2).cos(), 0.0);
    }

    #[test]
    fn space_test_anchors() {
        let s2 = Space::Sphere(2);
        assert!(!space_radius_admissible(&s2, r(1, 2)).unwrap());
        assert!(space_radius_admissible(&s2, r(1, 3)).unwrap());
        assert_eq!(space_residue(&s2, r(1, 3)).unwrap(), 3);
        for q in 2..=50 {
            for p in 1..q {
                if gcd(p, q) != 1 {
                    continue;
                }
                assert!(!space_radius_admissible(&Space::Sphere(5), r(p, q)).unwrap());
                assert_eq!(space_radius_admissible(&Space::Sphere(3), r(p, q)).unwrap(), q % 2 == 1);
            }
        }
    }

    #[test]
    fn jacobadly_anchors() {
        let (g, d) = (f(3, 2), f(-1, 4));
        assert!(jacobadly_condition(g, d, r(1, 3)).unwrap());
        assert!(!jacobadly_condition(g, d, r(1, 2)).unwrap());
        assert!(!jacobadly_condition(Frac::int(2), Frac::int(-1), r(3, 7)).unwrap());
        let one = Frac::int(1);
        assert!(!jacobadly_from_alpha_beta(one, one, r(1, 2)).unwrap());
        assert!(jacobadly_from_alpha_beta(one, one, r(1, 4)).unwrap());
        assert!(!jacobadly_from_alpha_beta(Frac::int(2), one, r(1, 4)).unwrap());
        assert!(!space_radius_admissible(&Space::ProjComplex(2), r(1, 4)).unwrap());
        assert!(jacobadly_from_alpha_beta(Frac::int(-1), one, r(1, 4)).is_err());
    }

    #[test]
    fn classification_cases() {
        let c = |s| classify(&s).unwrap();
        assert_eq!(
            c(GammaDeltaSpec::BothRational {
                gamma: Frac::int(2),
                delta: Frac::int(-1)
            }),
            Classification::None
        );
        assert_eq!(
            c(GammaDeltaSpec::BothRational {
                gamma: f(3, 2),
                delta: f(-1, 4)
            }),
            Classification::Some { witness: r(1, 3) }
        );
        assert_eq!(
            c(GammaDeltaSpec::IrrationalWithRelation { j1: 2, j2: 4, j3: 1 }),
            Classification::All
        );
        assert_eq!(c(GammaDeltaSpec::Independent), Classification::All);
        assert_eq!(
            c(GammaDeltaSpec::OneRational {
                which: Which::Delta,
                value: f(1, 3)
            }),
            Classification::All
        );
        assert_eq!(
            c(GammaDeltaSpec::IrrationalWithRelation { j1: 1, j2: 3, j3: 5 }),
            Classification::AllExcept {
                exceptional_ratio: f(1, 3)
            }
        );
        assert!(classify(&GammaDeltaSpec::IrrationalWithRelation { j1: 2, j2: 4, j3: 6 }).is_err());
        assert!(classify(&GammaDeltaSpec::IrrationalWithRelation { j1: 0, j2: 1, j3: 1 }).is_err());
    }

    #[test]
    fn relation_queries() {
        let s = GammaDeltaSpec::IrrationalWithRelation { j1: 1, j2: 3, j3: 5 };
        assert!(!condition_holds(&s, r(1, 3)).unwrap());
        assert!(condition_holds(&s, r(2, 3)).unwrap());
        // j₁/j₂ negative: never attained by 0 < p < q
        let s = GammaDeltaSpec::IrrationalWithRelation { j1: -1, j2: 3, j3: 5 };
        assert!(condition_holds(&s, r(1, 3)).unwrap());
        let s = GammaDeltaSpec::IrrationalWithRelation { j1: -1, j2: -3, j3: 5 };
        assert!(!condition_holds(&s, r(1, 3)).unwrap());
        // h = 2, −j₃/h = −1/2 ∉ ℤ
        let s = GammaDeltaSpec::IrrationalWithRelation { j1: 2, j2: 4, j3: 1 };
        assert!(condition_holds(&s, r(1, 2)).unwrap());
    }

    #[test]
    fn gegenbadly_cases() {
        let rat = |n, d| Lambda::Rational(f(n, d));
        for q in 2..30 {
            for p in 1..q {
                if gcd(p, q) == 1 {
                    assert!(!gegenbadly(rat(3, 1), r(p, q)).unwrap());
                    assert_eq!(gegenbadly(Lambda::Irrational, r(p, q)).unwrap(), (p, q) != (1, 2));
                }
            }
        }
        assert!(gegenbadly(rat(3, 2), r(1, 3)).unwrap());
        assert!(gegenbadly(rat(-1, 2), r(1, 3)).is_err());
    }

    #[test]
    fn gegenbadly_matches_jacobi_form() {
        // α = β = λ − 1/2
        for ln in -1..12 {
            let lambda = f(ln, 4);
            if lambda <= f(-1, 2) {
                continue;
            }
            let ab = lambda.checked_sub(f(1, 2)).unwrap();
            for q in 2..25 {
                for p in 1..q {
                    if gcd(p, q) == 1 {
                        assert_eq!(
                            gegenbadly(Lambda::Rational(lambda), r(p, q)).unwrap(),
                            jacobadly_from_alpha_beta(ab, ab, r(p, q)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn prime_sequence() {
        assert_eq!(
            prime_radius_sequence(1.0 / 3.0, 3).unwrap(),
            vec![r(1, 2), r(1, 3), r(2, 5)]
        );
        assert!(prime_radius_sequence(0.6, 3).is_err());
        assert!(prime_radius_sequence(0.4, 2).is_err());
        let seq = prime_radius_sequence(1.0 / 3.0, 10_000).unwrap();
        assert_eq!(seq.last().unwrap().q(), 104_729);
        for (i, rad) in seq.iter().enumerate() {
            assert_eq!(gcd(rad.p(), rad.q()), 1);
            let n = (i + 1) as f64;
            if i >= 1 {
                assert!((rad.q() as f64) <= 2.0 * n * (n + 1.0).ln(), "n={n}");
            }
        }
    }

    #[test]
    fn sieve_small() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
    }

    proptest! {
        #[test]
        fn both_rational_none_iff_integers(gn in -40i64..40, gd in 1i64..9, dn in -40i64..40, dd in 1i64..9) {
            let (g, d) = (f(gn, gd), f(dn, dd));
            let c = classify(&GammaDeltaSpec::BothRational { gamma: g, delta: d }).unwrap();
            prop_assert_eq!(c == Classification::None, g.is_integer() && d.is_integer());
            if let Classification::Some { witness } = c {
                prop_assert!(jacobadly_condition(g, d, witness).unwrap());
            }
        }
    }
}
