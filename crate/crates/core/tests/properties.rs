use num_complex::Complex64;
use proptest::prelude::*;
use qpath_core::channels::{random_channel_with, CPTP_TOLERANCE};
use qpath_core::dtqw::run_walk;
use qpath_core::measurement::{measure_control, ControlBasis};
use qpath_core::numerics::{
    haar_unitary_with, partial_trace, random_density_with, tensor, trace_distance, Keep,
};
use qpath_core::supermaps::{apply_joint, quantum_switch, spatial_superposition};
use qpath_core::walk_hybrid::hop_channel;
use qpath_core::{CoinOperator, ComplexMatrix, KrausChannel, VacuumExtendedChannel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rows: usize, cols: usize, r: &mut ChaCha8Rng) -> ComplexMatrix {
    let u = haar_unitary_with(rows.max(cols), r);
    ComplexMatrix::from_fn(rows, cols, |i, j| u[(i, j)] * 3.0)
}

fn random_extension(dim: usize, k: usize, r: &mut ChaCha8Rng) -> VacuumExtendedChannel {
    let ch = random_channel_with(dim, k, r);
    let u = haar_unitary_with(k, r);
    VacuumExtendedChannel::new(ch, (0..k).map(|i| u[(i, 0)]).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..3) {
        let mut r = rng(seed);
        let (a, b, c) = (random_matrix(da, da, &mut r), random_matrix(db, db + 1, &mut r), random_matrix(dc, dc, &mut r));
        prop_assert!(tensor(&tensor(&a, &b), &c).max_abs_diff(&tensor(&a, &tensor(&b, &c))) <= 1e-12);
        // integer entries multiply exactly, so the index convention must agree bit for bit
        let round = |m: &ComplexMatrix| ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            Complex64::new((m[(i, j)].re * 4.0).round(), (m[(i, j)].im * 4.0).round())
        });
        let (a, b, c) = (round(&a), round(&b), round(&c));
        prop_assert_eq!(tensor(&tensor(&a, &b), &c), tensor(&a, &tensor(&b, &c)));
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let rho = random_matrix(da, da, &mut r);
        let sigma = random_matrix(db, db, &mut r);
        let t = tensor(&rho, &sigma);
        let first = partial_trace(&t, da, db, Keep::First).unwrap();
        prop_assert!(first.max_abs_diff(&rho.scale(sigma.trace())) <= 1e-12);
        let second = partial_trace(&t, da, db, Keep::Second).unwrap();
        prop_assert!(second.max_abs_diff(&sigma.scale(rho.trace())) <= 1e-12);
    }

    #[test]
    fn trace_distance_metric(seed in any::<u64>(), dim in 1usize..5) {
        let mut r = rng(seed);
        let a = random_density_with(dim, &mut r);
        let b = random_density_with(dim, &mut r);
        let c = random_density_with(dim, &mut r);
        let ab = trace_distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() <= 1e-12);
        prop_assert!(ab <= trace_distance(&a, &c).unwrap() + trace_distance(&c, &b).unwrap() + 1e-10);
    }

    #[test]
    fn apply_yields_valid_states(seed in any::<u64>(), dim in 1usize..5, k in 1usize..5) {
        let mut r = rng(seed);
        let ch = random_channel_with(dim, k, &mut r);
        let rho = random_density_with(dim, &mut r);
        // apply re-validates Hermiticity, PSD and trace within 1e-10
        let out = ch.apply(&rho).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn compose_matches_sequential(seed in any::<u64>(), dim in 1usize..4) {
        let mut r = rng(seed);
        let a = random_channel_with(dim, 2, &mut r);
        let b = random_channel_with(dim, 3, &mut r);
        let rho = random_density_with(dim, &mut r);
        let composed = KrausChannel::compose(&a, &b).unwrap().apply(&rho).unwrap();
        let sequential = a.apply(&b.apply(&rho).unwrap()).unwrap();
        prop_assert!(composed.matrix().max_abs_diff(sequential.matrix()) <= 1e-12);
    }

    #[test]
    fn supermaps_close(seed in any::<u64>(), dim in 1usize..4, ke in 1usize..4, kd in 1usize..4) {
        let mut r = rng(seed);
        let e = random_extension(dim, ke, &mut r);
        let d = random_extension(dim, kd, &mut r);
        let s = spatial_superposition(&e, &d).unwrap();
        prop_assert!(s.closure_residual() <= CPTP_TOLERANCE);
        prop_assert!(quantum_switch(e.channel(), d.channel()).unwrap().closure_residual() <= CPTP_TOLERANCE);
        let coin = CoinOperator::new(haar_unitary_with(2, &mut r)).unwrap();
        prop_assert!(hop_channel(&s, &coin).unwrap().closure_residual() <= CPTP_TOLERANCE);
    }

    #[test]
    fn one_hop_diagonal_blocks(seed in any::<u64>(), dim in 1usize..4) {
        let mut r = rng(seed);
        let e = random_extension(dim, 2, &mut r);
        let d = random_extension(dim, 3, &mut r);
        let rho = random_density_with(dim, &mut r);
        let out = apply_joint(&spatial_superposition(&e, &d).unwrap(), &rho, &qpath_core::DensityMatrix::plus()).unwrap();
        let e_rho = e.channel().apply(&rho).unwrap().into_matrix().scale_real(0.5);
        let d_rho = d.channel().apply(&rho).unwrap().into_matrix().scale_real(0.5);
        prop_assert!(out.control_block(0, 0).max_abs_diff(&e_rho) <= 1e-10);
        prop_assert!(out.control_block(1, 1).max_abs_diff(&d_rho) <= 1e-10);
    }

    #[test]
    fn measurement_consistency(seed in any::<u64>(), dim in 1usize..4) {
        let mut r = rng(seed);
        let joint = random_density_with(dim * 2, &mut r);
        let js = qpath_core::JointState::new(dim, joint).unwrap();
        let u = haar_unitary_with(2, &mut r);
        let basis = ControlBasis::new(
            [[u[(0, 0)], u[(1, 0)]], [u[(0, 1)], u[(1, 1)]]],
            ["a".into(), "b".into()],
        ).unwrap();
        let outcomes = measure_control(&js, &basis);
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        let mut average = ComplexMatrix::zeros(dim, dim);
        for o in &outcomes {
            if let Some(post) = &o.post_state {
                average = &average + &post.matrix().scale_real(o.probability);
            }
        }
        prop_assert!(average.max_abs_diff(js.carrier_marginal().matrix()) <= 1e-10);
    }

    #[test]
    fn walk_norm_and_parity(steps in 0usize..25, theta in 0.0f64..std::f64::consts::PI, phi in 0.0f64..6.3) {
        let start = [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phi)];
        let dist = run_walk(steps, start, &CoinOperator::hadamard()).unwrap();
        prop_assert!((dist.total() - 1.0).abs() <= 1e-10);
        for (x, p) in &dist.0 {
            if (x - steps as i64).rem_euclid(2) != 0 {
                prop_assert!(*p == 0.0);
            }
        }
    }
}

#[test]
fn balanced_walk_symmetric() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let start = [Complex64::new(h, 0.0), Complex64::new(0.0, h)];
    for steps in 0..=20 {
        let dist = run_walk(steps, start, &CoinOperator::hadamard()).unwrap();
        for x in 0..=steps as i64 {
            assert!((dist.probability(x) - dist.probability(-x)).abs() <= 1e-10, "n {steps} x {x}");
        }
    }
}
