mod common;

use std::f64::consts::FRAC_PI_4;

use common::rng;
use dexspace::kinematics::{build_prrrr_chain, forward_kinematics, DhRow, JointState, LinkLengths};
use dexspace::sampling::{beta_params, draw_beta, draw_uniform, sample_prrrr, SamplerConfig, SamplingScheme};
use proptest::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF};

fn revolute_90() -> DhRow {
    DhRow::revolute(0.0, 0.0, 0.0, 0.0, -FRAC_PI_4, FRAC_PI_4)
}

/// Two-sided one-sample KS statistic against `cdf`.
fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

#[test]
fn beta_variates_pass_ks_at_one_percent() {
    let row = revolute_90();
    let cfg = SamplerConfig::default();
    let (a, b) = beta_params(&row, &cfg);
    assert!((a - 0.40).abs() < 1e-15 && (b - 0.40).abs() < 1e-15);

    let n = 10_000;
    let q = draw_beta(&row, n, &cfg, &mut rng(21)).unwrap();
    let u: Vec<f64> = q.iter().map(|v| (v - row.q_min) / (row.q_max - row.q_min)).collect();
    let law = Beta::new(0.4, 0.4).unwrap();
    let d = ks_statistic(u, |x| law.cdf(x));
    // asymptotic 1% critical value
    let crit = 1.628 / (n as f64).sqrt();
    assert!(d < crit, "D = {d:.5}, critical {crit:.5}");
}

#[test]
fn uniform_draws_center_on_zero() {
    let row = revolute_90();
    let q = draw_uniform(&row, 100_000, &mut rng(22));
    let mean = q.iter().sum::<f64>() / q.len() as f64;
    assert!(mean.abs() < 0.5_f64.to_radians(), "mean {mean}");
    assert!(q.iter().all(|&v| (row.q_min..=row.q_max).contains(&v)));
}

#[test]
fn beta_draws_are_symmetric() {
    let row = revolute_90();
    let q = draw_beta(&row, 100_000, &SamplerConfig::default(), &mut rng(23)).unwrap();
    let u_mean = q.iter().map(|v| (v - row.q_min) / (row.q_max - row.q_min)).sum::<f64>() / q.len() as f64;
    assert!((u_mean - 0.5).abs() < 0.01, "mean {u_mean}");
}

#[test]
fn prismatic_draws_respect_stroke() {
    let xi = LinkLengths::from_mm(3.0, 8.0, 34.0);
    let chain = build_prrrr_chain(xi).unwrap();
    let row = &chain.rows[0];
    assert_eq!(
        beta_params(row, &SamplerConfig::default()),
        beta_params(&revolute_90(), &SamplerConfig::default())
    );
    let d = draw_beta(row, 50_000, &SamplerConfig::default(), &mut rng(24)).unwrap();
    assert!(d.iter().all(|&v| (0.0..=0.010).contains(&v)));
}

#[test]
fn headline_cloud_stays_within_reach() {
    let xi = LinkLengths::from_mm(3.0, 8.0, 34.0);
    let cloud = sample_prrrr(
        xi,
        &SamplerConfig {
            seed: 5,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(cloud.len(), 500_000);
    let reach = xi.total() + 0.010;
    let worst = cloud.points.iter().map(|p| p.to_vector().norm()).fold(0.0, f64::max);
    assert!(worst <= reach + 1e-12, "farthest point {worst} m");
}

#[test]
fn stored_states_reproduce_points() {
    let xi = LinkLengths::from_mm(5.0, 8.0, 18.0);
    let cfg = SamplerConfig {
        n_samples: 9_000,
        scheme: SamplingScheme::Uniform,
        seed: 6,
        ..Default::default()
    };
    let cloud = sample_prrrr(xi, &cfg).unwrap();
    for i in (0..cloud.len()).step_by(97) {
        let q = JointState::validated(&cloud.chain, cloud.joint_state(i).to_vec()).unwrap();
        assert_eq!(forward_kinematics(&cloud.chain, &q).unwrap(), cloud.points[i]);
    }
}

#[test]
fn seeds_separate_clouds() {
    let xi = LinkLengths::from_mm(3.0, 8.0, 34.0);
    let cfg = |seed| SamplerConfig {
        n_samples: 5_000,
        seed,
        ..Default::default()
    };
    let a = sample_prrrr(xi, &cfg(1)).unwrap();
    let b = sample_prrrr(xi, &cfg(1)).unwrap();
    let c = sample_prrrr(xi, &cfg(2)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.points, c.points);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_cloud_respects_limits(seed in any::<u64>(), n in 1usize..3000, beta in any::<bool>()) {
        let cfg = SamplerConfig {
            n_samples: n,
            seed,
            scheme: if beta { SamplingScheme::Beta } else { SamplingScheme::Uniform },
            ..Default::default()
        };
        let cloud = sample_prrrr(LinkLengths::from_mm(3.0, 8.0, 34.0), &cfg).unwrap();
        prop_assert_eq!(cloud.len(), n);
        for i in 0..n {
            prop_assert!(cloud.chain.check_limits(cloud.joint_state(i)).is_ok());
        }
    }
}
