use super::*;
use crate::pointsets::{generate, Generator};
use crate::spaces::{ball_volume, cos_distance, CATALOG};
use crate::specfun::{eigenspace_dim, jacobi_at_one, jacobi_eval, JacobiParams};

fn s2() -> Space {
    Space::Sphere(2)
}

fn antipodal() -> PointSet {
    let s = s2();
    PointSet::new(
        s,
        vec![
            s.point(vec![0.0, 0.0, 1.0]).unwrap(),
            s.point(vec![0.0, 0.0, -1.0]).unwrap(),
        ],
        None,
    )
    .unwrap()
}

fn one_point(space: Space) -> PointSet {
    PointSet::new(space, vec![space.pole().unwrap()], None).unwrap()
}

fn pq(p: i64, q: i64) -> Radius {
    Radius::Exact(RadiusPQ::new(p, q).unwrap())
}

fn supported() -> impl Iterator<Item = Space> {
    CATALOG.iter().copied().filter(Space::supports_points)
}

#[test]
fn gram_trivial_cases() {
    let g = PairGram::new(&one_point(s2())).unwrap();
    assert_eq!(g.n(), 1);
    assert_eq!(g.get(0, 0), 1.0);
    assert_eq!(g.weights(), &[1.0]);
    let g = PairGram::new(&antipodal()).unwrap();
    assert_eq!(g.get(0, 1), -1.0);
    assert_eq!(g.get(1, 0), -1.0);
}

#[test]
fn gram_tiles_cover_symmetric_matrix() {
    for space in supported() {
        let set = generate(space, Generator::Uniform, 10, 4).unwrap();
        let big = PairGram::new(&set).unwrap();
        let small = PairGram::with_tile_size(&set, 3).unwrap();
        assert_eq!(small.tiles().len(), 10);
        for j in 0..10 {
            assert_eq!(big.get(j, j), 1.0);
            for k in 0..10 {
                let t = big.get(j, k);
                assert_eq!(t, big.get(k, j));
                assert_eq!(t, small.get(j, k));
                assert!(t.abs() <= 1.0);
                if j != k {
                    let direct = cos_distance(&space, &set.points()[j], &set.points()[k]).unwrap();
                    assert_eq!(t, direct);
                }
            }
        }
    }
}

#[test]
fn ball_coefficient_closed_forms() {
    for r in [0.3, 1.0, 2.0, 3.0] {
        let phi = ball_coefficient(&s2(), 1, r).unwrap();
        assert!((phi - r.sin().powi(2) / 4.0).abs() < 1e-15);
    }
    for space in CATALOG {
        for m in 1..20 {
            assert!(ball_coefficient(space, m, PI).unwrap().abs() < 1e-14);
        }
    }
    for m in (2..100).step_by(2) {
        let phi = ball_coefficients_at_cos(&s2(), m, 0.0).unwrap();
        assert_eq!(phi[m - 1], 0.0);
    }
    assert!(ball_coefficient(&s2(), 0, 1.0).is_err());
}

#[test]
fn batch_matches_single() {
    for space in CATALOG {
        let r: f64 = 1.1;
        let batch = ball_coefficients_at_cos(space, 40, r.cos()).unwrap();
        for m in 1..=40 {
            let single = ball_coefficient(space, m, r).unwrap();
            assert!(
                (batch[m - 1] - single).abs() <= 1e-14 * single.abs().max(1e-3),
                "{space} m={m}"
            );
        }
    }
}

#[test]
fn single_point_energy_is_dimension() {
    for space in supported() {
        let e = harmonic_energy(&PairGram::new(&one_point(space)).unwrap(), 300).unwrap();
        for m in 1..=300 {
            assert_eq!(e.q(m), eigenspace_dim(&space, m), "{space} m={m}");
        }
        assert_eq!(e.q(0), 1.0);
    }
}

#[test]
fn antipodal_energies_alternate() {
    let e = harmonic_energy(&PairGram::new(&antipodal()).unwrap(), 400).unwrap();
    for m in 1..=400 {
        let d = (2 * m + 1) as f64;
        let expect = if m % 2 == 0 { d } else { 0.0 };
        assert!((e.q(m) - expect).abs() <= 1e-12 * d, "m={m}: {}", e.q(m));
    }
}

/// Double sum with unnormalized Jacobi values, one pair at a time.
fn naive_energies(set: &PointSet, m_max: usize) -> Vec<f64> {
    let space = set.space();
    let sp = space.params();
    let params = JacobiParams::new(sp.a(), sp.b()).unwrap();
    let mut q = vec![0.0; m_max + 1];
    for (j, x) in set.points().iter().enumerate() {
        for (k, y) in set.points().iter().enumerate() {
            let t = cos_distance(&space, x, y).unwrap();
            let p = jacobi_eval(params, m_max, t).unwrap();
            let w = set.weights()[j] * set.weights()[k];
            for m in 0..=m_max {
                q[m] += w * p[m] / jacobi_at_one(params, m);
            }
        }
    }
    (0..=m_max).map(|m| q[m] * eigenspace_dim(&space, m)).collect()
}

#[test]
fn energies_match_naive_double_sum() {
    for space in supported() {
        let set = generate(space, Generator::Uniform, 12, 8).unwrap();
        let e = harmonic_energy(&PairGram::with_tile_size(&set, 5).unwrap(), 60).unwrap();
        let naive = naive_energies(&set, 60);
        assert!((naive[0] - 1.0).abs() < 1e-14);
        for m in 1..=60 {
            let scale = eigenspace_dim(&space, m);
            assert!((e.q(m) - naive[m]).abs() <= 1e-11 * scale, "{space} m={m}");
        }
    }
}

#[test]
fn energy_bounds_on_random_sets() {
    for space in supported() {
        for (n, seed) in [(1, 1), (2, 2), (10, 3), (100, 4)] {
            let set = generate(space, Generator::Uniform, n, seed).unwrap();
            let e = harmonic_energy(&PairGram::new(&set).unwrap(), 200).unwrap();
            for m in 1..=200 {
                let d = e.dims()[m];
                assert!(e.q(m) >= 0.0);
                assert!(e.q(m) <= d * (1.0 + 1e-9), "{space} n={n} m={m}");
            }
        }
    }
}

#[test]
fn tile_size_does_not_change_energies() {
    let set = generate(Space::ProjComplex(2), Generator::Uniform, 50, 2).unwrap();
    let a = harmonic_energy(&PairGram::with_tile_size(&set, 7).unwrap(), 100).unwrap();
    let b = harmonic_energy(&PairGram::new(&set).unwrap(), 100).unwrap();
    for m in 1..=100 {
        assert!((a.q(m) - b.q(m)).abs() <= 1e-12 * a.dims()[m]);
    }
}

#[test]
fn cm_sum_cases() {
    let g = PairGram::new(&one_point(s2())).unwrap();
    assert_eq!(cm_sum(&g, 0, 0).unwrap(), 1.0);
    assert_eq!(cm_sum(&g, 0, 3).unwrap(), 16.0);
    assert!(cm_sum(&g, 3, 2).is_err());
    for space in supported() {
        let set = generate(space, Generator::Uniform, 30, 5).unwrap();
        let g = PairGram::new(&set).unwrap();
        let total: f64 = crate::specfun::eigenspace_dims(&space.params(), 50).iter().sum();
        assert!(cm_sum(&g, 0, 50).unwrap() <= total);
    }
}

#[test]
fn auto_truncation_examples() {
    assert_eq!(auto_truncation(&s2(), 1), 512);
    assert_eq!(auto_truncation(&s2(), 4096), 2048);
    assert_eq!(auto_truncation(&Space::Sphere(5), 100_000), 512);
    assert_eq!(auto_truncation(&Space::Sphere(1), 10_000), 50_000);
    assert_eq!(auto_truncation(&s2(), 1000), 1012);
}

#[test]
fn single_point_closed_form() {
    // Tail of the single-point series is about κ/L; L = 4000 keeps it
    // below 1e−4 on every space.
    for space in supported() {
        for r in [pq(1, 3), pq(1, 2), pq(3, 4)] {
            let rep = discrepancy_l2(&one_point(space), r, &SeriesOptions::truncation(4000)).unwrap();
            let mu = ball_volume(&space, r.value()).unwrap();
            let exact = mu * (1.0 - mu);
            assert!(rep.value <= exact + 1e-12);
            assert!(
                exact - rep.value < 2.0 * rep.tail_estimate + 1e-6,
                "{space} {r:?}: {} vs {exact}",
                rep.value
            );
        }
    }
}

#[test]
fn antipodal_pair_vanishes_at_right_angle() {
    let rep = discrepancy_l2(&antipodal(), pq(1, 2), &SeriesOptions::truncation(5000)).unwrap();
    assert!(rep.value <= 1e-12, "{}", rep.value);
}

#[test]
fn value_monotone_in_truncation() {
    let set = generate(Space::Sphere(3), Generator::Uniform, 40, 1).unwrap();
    let e = harmonic_energy(&PairGram::new(&set).unwrap(), 800).unwrap();
    let mut last = 0.0;
    for l in [1, 10, 100, 400, 800] {
        let v = discrepancy_from_energies(&e, pq(1, 3), l, false).unwrap().value;
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn terms_are_consistent() {
    let set = generate(s2(), Generator::Fibonacci, 64, 0).unwrap();
    let opts = SeriesOptions {
        truncation: Some(300),
        keep_terms: true,
        ..Default::default()
    };
    let rep = discrepancy_l2(&set, pq(1, 3), &opts).unwrap();
    let terms = rep.terms.as_ref().unwrap();
    assert_eq!(terms.len(), 300);
    let sum: f64 = terms.iter().map(|t| t.term).sum();
    assert!((sum - rep.value).abs() <= 1e-14);
    for t in terms {
        assert!(t.term >= 0.0);
        assert_eq!(t.term, t.q_m * t.phi_m * t.phi_m);
    }
    assert!(rep.tail_estimate >= 0.0);
}

#[test]
fn identical_across_thread_counts() {
    let set = generate(Space::ProjQuat(2), Generator::Uniform, 300, 3).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| discrepancy_l2(&set, pq(2, 5), &SeriesOptions::default()).unwrap())
    };
    let one = run(1);
    assert_eq!(
        serde_json::to_string(&one).unwrap(),
        serde_json::to_string(&run(4)).unwrap()
    );
}

#[test]
fn radius_validation_and_json() {
    let set = one_point(s2());
    assert!(discrepancy_l2(&set, Radius::real(0.0), &SeriesOptions::default()).is_err());
    assert!(discrepancy_l2(&set, Radius::real(PI), &SeriesOptions::default()).is_err());
    let rep = discrepancy_l2(&set, pq(1, 3), &SeriesOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["space"], "s2");
    assert_eq!(v["radius"]["p"], 1);
    assert_eq!(v["radius"]["q"], 3);
    assert_eq!(v["L"], 512);
    let back: DiscrepancyReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, rep);
    let real = serde_json::to_value(Radius::real(0.5)).unwrap();
    assert_eq!(real["real"], 0.5);
}
