use expmetrics::cylinder::RadiusLadder;
use expmetrics::estimate::{self, NmRange, OneSidedConfig, WindowRule};
use expmetrics::measure::Measure;
use expmetrics::metric::MetricParams;
use expmetrics::relations::{verify_identities, Bundle, BundleConfig, Tolerances};
use expmetrics::shift::ShiftSpace;
use expmetrics::Error;
use proptest::prelude::*;

fn p13() -> MetricParams {
    MetricParams::new(1.3, 1.3).unwrap()
}

#[test]
fn box_dimension_is_linear_in_log_alphabet() {
    let ladder = estimate::default_ladder();
    let slopes: Vec<f64> = (2..=4)
        .map(|m| estimate::box_dimension(&ShiftSpace::full(m).unwrap(), &p13(), &ladder).unwrap().slope)
        .collect();
    for (i, s) in slopes.iter().enumerate() {
        let m = (i + 2) as f64;
        assert!((s / (m.ln() * p13().k()) - 1.0).abs() < 0.02, "M = {m}: {s}");
    }
    // ratios follow ln M
    assert!((slopes[2] / slopes[0] - 2.0).abs() < 0.01);
}

#[test]
fn unequal_rates_box_dimension() {
    let p = MetricParams::new(1.3, 1.9).unwrap();
    let e = estimate::box_dimension(&ShiftSpace::full(2).unwrap(), &p, &estimate::default_ladder()).unwrap();
    assert!(e.rel_error().unwrap() < 0.02, "{} vs {:?}", e.slope, e.target);
}

#[test]
fn regression_is_stable_under_deeper_ladders() {
    let gm = ShiftSpace::golden_mean();
    for p in [p13(), MetricParams::new(1.3, 1.9).unwrap()] {
        let short = estimate::box_dimension(&gm, &p, &RadiusLadder::dyadic(8, 40).unwrap()).unwrap();
        let long = estimate::box_dimension(&gm, &p, &RadiusLadder::dyadic(8, 80).unwrap()).unwrap();
        assert!(
            (short.slope - long.slope).abs() < short.residual_rms,
            "{} vs {} (rms {})",
            short.slope,
            long.slope,
            short.residual_rms
        );
    }
}

#[test]
fn neutralized_slope_is_monotone_in_r() {
    let full = ShiftSpace::full(2).unwrap();
    let range = NmRange::default_entropy();
    let mut prev = 0.0;
    for i in 1..=35 {
        let r = 0.01 * i as f64;
        let e = estimate::neutralized_topological(&full, &p13(), r, &range).unwrap();
        assert!(e.slope >= prev * 0.98, "r = {r}: {} < {prev}", e.slope);
        assert!(e.rel_error().unwrap() < 0.02, "r = {r}: {} vs {:?}", e.slope, e.target);
        prev = e.slope;
    }
}

#[test]
fn neutralized_uniform_measure_every_point() {
    let full = ShiftSpace::full(2).unwrap();
    let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
    let target = (1.0 + 0.05 * p13().k()) * 2f64.ln();
    for x in estimate::typical_points(&u, 10, 400, 8) {
        let e = estimate::neutralized_brin_katok(&u, std::slice::from_ref(&x), &p13(), 0.05, &NmRange::default_entropy()).unwrap();
        assert!((e.slope / target - 1.0).abs() < 0.03);
    }
}

#[test]
fn markov_brin_katok_ensemble() {
    let gm = ShiftSpace::golden_mean();
    let mu = Measure::markov(&gm, vec![vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
    let pts = estimate::typical_points(&mu, 100, 400, 21);
    let e = estimate::brin_katok(&mu, &pts, &p13(), WindowRule::Bowen { r1: 0.9 }, &NmRange::default_entropy()).unwrap();
    assert!((e.slope / 0.462098 - 1.0).abs() < 0.05, "{}", e.slope);
    let n = estimate::neutralized_brin_katok(&mu, &pts, &p13(), 0.05, &NmRange::default_entropy()).unwrap();
    assert!((n.slope / (1.38115 * 0.462098) - 1.0).abs() < 0.05, "{}", n.slope);
}

#[test]
fn single_point_brin_katok_long_range() {
    let full = ShiftSpace::full(2).unwrap();
    let mu = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
    let x = mu.sample_typical(400, 5);
    let e = estimate::brin_katok_local(&mu, &x, &p13(), 0.9, &NmRange::diagonal(20, 760, 20).unwrap()).unwrap();
    assert!((e.slope / 0.610864 - 1.0).abs() < 0.10, "{}", e.slope);
}

#[test]
fn atypical_point_is_reported_as_seen() {
    let full = ShiftSpace::full(2).unwrap();
    let mu = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
    let ones = expmetrics::shift::Point::from_window(&full, -400, vec![1; 801]).unwrap();
    let e = estimate::pointwise_dimension(&mu, &ones, &p13(), &estimate::default_ladder()).unwrap();
    assert!((e.slope / (-(0.7f64).ln() * p13().k()) - 1.0).abs() < 0.02);
}

#[test]
fn katok_delta_invariance_and_closed_form() {
    let full = ShiftSpace::full(2).unwrap();
    let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
    let e = estimate::katok_entropy(&u, 0.1, &p13(), 0.9, &NmRange::diagonal(2, 60, 2).unwrap()).unwrap();
    assert!((e.slope / 2f64.ln() - 1.0).abs() < 0.02);
    let b = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
    let s: Vec<f64> = [0.1, 0.25, 0.4]
        .iter()
        .map(|&d| estimate::katok_entropy(&b, d, &p13(), 0.9, &NmRange::default_katok()).unwrap().slope)
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            assert!((s[i] / s[j] - 1.0).abs() < 0.02, "{s:?}");
        }
    }
}

#[test]
fn alpha_measure_matches_unequal_rate_split() {
    let p = MetricParams::new(1.3, 1.9).unwrap();
    let full = ShiftSpace::full(2).unwrap();
    let range = NmRange::alpha_split(2, 60, 2, 0.15, &p).unwrap();
    let e = estimate::alpha_topological(&full, &p, 0.15, 0.9, &range).unwrap();
    assert!(e.rel_error().unwrap() < 0.02, "{} vs {:?}", e.slope, e.target);
}

#[test]
fn one_sided_suite_values() {
    let full = ShiftSpace::full(2).unwrap();
    let p = MetricParams::one_sided(1.3).unwrap();
    let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
    let pts = estimate::typical_points(&u, 20, 400, 2);
    for alpha in [0.0, 0.1] {
        let cfg = OneSidedConfig {
            mu: Some(&u),
            points: &pts,
            alpha,
            r1: 0.9,
            r3: 0.9,
            range: NmRange::forward(2, 60, 2).unwrap(),
            ladder: estimate::default_ladder(),
        };
        let s = estimate::one_sided_suite(&full, &p, &cfg).unwrap();
        assert!((s.entropy.slope - 2f64.ln()).abs() < 1e-9);
        assert!((s.dimension.slope / (2f64.ln() / 1.3f64.ln()) - 1.0).abs() < 0.02);
        if alpha == 0.0 {
            assert!((s.dimension.slope / 2.6420 - 1.0).abs() < 0.02);
        }
        assert!((s.alpha_entropy.slope / s.alpha_target - 1.0).abs() < 0.02);
        let m = s.alpha_measure.unwrap();
        // the uniform measure sees every cylinder with equal mass
        assert!((m.slope - s.alpha_entropy.slope).abs() < 1e-9);
    }
}

#[test]
fn bundles_pass_and_mismatches_are_caught() {
    let gm = ShiftSpace::golden_mean();
    let b = Bundle::compute(&gm, None, &p13(), &BundleConfig::default()).unwrap();
    for r in verify_identities(&b, &Tolerances::default()).unwrap() {
        assert!(r.pass, "{r:?}");
    }
    let full = ShiftSpace::full(2).unwrap();
    let mu = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
    assert!(matches!(
        Bundle::compute(&gm, Some(&mu), &p13(), &BundleConfig::default()),
        Err(Error::IncompatibleInputs(_))
    ));
    let one = MetricParams::one_sided(1.3).unwrap();
    let b = Bundle::compute(&full, None, &one, &BundleConfig::default()).unwrap();
    for r in verify_identities(&b, &Tolerances::default()).unwrap() {
        assert!(r.pass, "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spanning_slope_ignores_r1(r1 in 0.05f64..0.95) {
        let full = ShiftSpace::full(3).unwrap();
        let e = estimate::topological_entropy_spanning(&full, &p13(), r1, &NmRange::default_entropy()).unwrap();
        prop_assert!((e.slope - 3f64.ln()).abs() < 1e-9);
        prop_assert!(e.residual_rms >= 0.0);
    }

    #[test]
    fn uniform_brin_katok_exact(m in 2usize..5, seed in 0u64..1000, a in 1.1f64..3.0, b in 1.1f64..3.0) {
        let full = ShiftSpace::full(m).unwrap();
        let u = Measure::bernoulli(&full, vec![1.0 / m as f64; m]).unwrap();
        let p = MetricParams::new(a, b).unwrap();
        let x = u.sample_typical(300, seed);
        let e = estimate::brin_katok_local(&u, &x, &p, 0.9, &NmRange::default_entropy()).unwrap();
        prop_assert!((e.slope - (m as f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn ordering_chain(w in 0.15f64..0.45, r in 0.02f64..0.2) {
        let full = ShiftSpace::full(2).unwrap();
        let mu = Measure::bernoulli(&full, vec![w, 1.0 - w]).unwrap();
        let pts = estimate::typical_points(&mu, 30, 400, 1);
        let range = NmRange::default_entropy();
        let top = estimate::neutralized_topological(&full, &p13(), r, &range).unwrap().slope;
        let k = estimate::neutralized_katok(&mu, 0.2, &p13(), r, &NmRange::diagonal(100, 500, 100).unwrap()).unwrap().slope;
        let bk = estimate::neutralized_brin_katok(&mu, &pts, &p13(), r, &range).unwrap().slope;
        prop_assert!(k <= top * 1.02, "{k} > {top}");
        prop_assert!(bk <= k * 1.02, "{bk} > {k}");
    }
}
