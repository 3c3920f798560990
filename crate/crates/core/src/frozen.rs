//! Regression constants, fixed from a validated run of the studies and set
//! somewhat below (or above, for upper bounds) the observed values. The
//! theorems they track only assert existence of such constants.

/// Lower bound on `min_{2≤m≤5000} m^{1/2} |P_m^{(1,1)}(cos pπ/q)|` at
/// `p/q ∈ {1/3, 1/4, 2/5}`. Observed minimum 0.182 (at 2/5).
pub const C_JB: f64 = 0.1;

/// Upper bound on `m^{3/2} |P_m − main term|` over `m ∈ [100, 2000]`, for the
/// pairs `(a, b)` and `(a+1, b+1)` of every catalog space at
/// `r ∈ {π/3, π/2, 2π/3}`. Observed maximum 1.22e4 (`op2`, `(8, 4)`, π/3).
pub const SZEGO_BOUND: f64 = 2e4;

/// Lower bound on `N^{3/2} ‖D_{π/3}‖²` for the three rate-study generators on
/// `S²`, `128 ≤ N ≤ 4096`. Observed minimum 0.1006 (Fibonacci, N = 1024).
pub const C_LOWER: f64 = 0.05;

/// Lower bound on the normalized prime-scan score on `S⁵`, uniform sets with
/// `N ∈ {128, 512}`, seeds 1–5. Observed minimum 115.8 (N = 128, seed 4).
pub const C_SCAN: f64 = 50.0;

/// Fibonacci points: minimum separation at least this over `√n`
/// (`n = 1000`).
pub const FIB_MIN_DIST: f64 = 1.5;

/// Window for `‖D_{π/3}‖²` of 256 uniform points on `S²`. Seeds 1–10 gave
/// values in `[3.2e−4, 2.2e−3]`.
pub const UNIFORM_WINDOW: (f64, f64) = (1e-5, 1e-2);

/// Lower bound on `min_{10≤m≤5000} m^{3/2} |φ_m(π/3)|` on `S²`. Observed
/// 0.0847.
pub const C_COEFF_S2: f64 = 0.05;

/// At inadmissible radii the scaled coefficient minimum falls below this
/// fraction of its maximum. Observed at most 5e−4 on `S⁵`, against at least
/// 0.13 at admissible radii on `S²`.
pub const DEGENERATE_RATIO: f64 = 0.01;
