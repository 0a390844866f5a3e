use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use signkernel::solvers::{response, EXACT_MAX_COLS};
use signkernel::{
    best_response, exact_d1, local_search_d1, objective, seesaw, seesaw_restarts,
    stationarity_residual, SeesawInit, SeesawOptions, Side, SignKernel, SignMatrix,
    UnitVectorField, TWO_OVER_PI,
};

fn matrix_from_bits(rows: usize, cols: usize, mask: u32) -> SignMatrix {
    let entries = (0..rows * cols)
        .map(|k| if mask >> k & 1 == 1 { 1 } else { -1 })
        .collect();
    SignMatrix::new(rows, cols, entries).unwrap()
}

fn arb_matrix() -> impl Strategy<Value = SignMatrix> {
    (1usize..10, 1usize..10, any::<u128>()).prop_map(|(n, m, bits)| {
        let entries = (0..n * m)
            .map(|k| if bits >> k & 1 == 1 { 1 } else { -1 })
            .collect();
        SignMatrix::new(n, m, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn best_response_never_decreases_objective(a in arb_matrix(), d in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = UnitVectorField::random(a.rows(), d, &mut rng).unwrap();
        let h = UnitVectorField::random(a.cols(), d, &mut rng).unwrap();
        let before = objective(&a, &g, &h).unwrap();
        let (g2, _) = best_response(&a, &h, Side::Row, &g).unwrap();
        let mid = objective(&a, &g2, &h).unwrap();
        prop_assert!(mid >= before - 1e-12);
        let (h2, _) = best_response(&a, &g2, Side::Col, &h).unwrap();
        prop_assert!(objective(&a, &g2, &h2).unwrap() >= mid - 1e-12);
    }

    #[test]
    fn values_bounded_and_sign_symmetric(a in arb_matrix(), d in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = UnitVectorField::random(a.rows(), d, &mut rng).unwrap();
        let h = UnitVectorField::random(a.cols(), d, &mut rng).unwrap();
        let v = objective(&a, &g, &h).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
        let flipped = objective(&a, &g.negated(), &h.negated()).unwrap();
        prop_assert!((flipped - v).abs() < 1e-12);
        let neg = objective(&a.negated(), &g, &h).unwrap();
        prop_assert!((neg + v).abs() < 1e-12);
    }

    #[test]
    fn d1_values_never_exceed_exact(a in arb_matrix(), seed in any::<u64>()) {
        let exact = exact_d1(&a).unwrap();
        prop_assert_eq!(exact.stationarity, 0.0);
        let ls = local_search_d1(&a, 2, seed).unwrap();
        prop_assert!(ls.value <= exact.value + 1e-12);
        prop_assert!(ls.max_trace_decrease() <= 1e-12);
        let ss = seesaw(&a, 1, SeesawInit::Seed(seed), SeesawOptions::default()).unwrap();
        prop_assert!(ss.value <= exact.value + 1e-12);
        prop_assert!(ss.max_trace_decrease() <= 1e-12);
    }

    #[test]
    fn report_value_matches_objective(a in arb_matrix(), d in 1usize..4, seed in any::<u64>()) {
        let r = seesaw(&a, d, SeesawInit::Seed(seed), SeesawOptions::default()).unwrap();
        prop_assert!((r.value - objective(&a, &r.g, &r.h).unwrap()).abs() <= 1e-12);
        prop_assert!((r.stationarity - stationarity_residual(&a, &r.g, &r.h).unwrap()).abs() == 0.0);
    }
}

#[test]
fn local_search_matches_exact_on_all_small_matrices() {
    for (rows, cols) in [(2usize, 2usize), (3, 3)] {
        for mask in 0..1u32 << (rows * cols) {
            let a = matrix_from_bits(rows, cols, mask);
            let exact = exact_d1(&a).unwrap().value;
            let ls = local_search_d1(&a, 8, 2024).unwrap().value;
            assert_eq!(ls, exact, "{rows}x{cols} mask {mask:#b}");
        }
    }
}

#[test]
fn exact_guard_message_points_to_local_search() {
    let a = SignKernel::HalfPlane.discretize(EXACT_MAX_COLS + 1).unwrap();
    let msg = exact_d1(&a).unwrap_err().to_string();
    assert!(msg.contains("local_search_d1"), "{msg}");
}

#[test]
fn seesaw_d1_from_ones_matches_local_search_at_64() {
    let a = SignKernel::HalfPlane.discretize(64).unwrap();
    let ones = UnitVectorField::constant(64, 1).unwrap();
    let ss = seesaw(&a, 1, SeesawInit::Fields(ones.clone(), ones), SeesawOptions::default()).unwrap();
    let ls = local_search_d1(&a, 16, 3).unwrap();
    assert_eq!(ss.value, ls.value);
    assert_eq!(ss.value, 0.5);
}

#[test]
fn seesaw_rank_two_values_near_two_over_pi() {
    for k in [SignKernel::HalfPlane, SignKernel::CircleBand] {
        let a = k.discretize(256).unwrap();
        let r = seesaw(&a, 2, SeesawInit::Seed(17), SeesawOptions::default()).unwrap();
        assert!(r.value >= 0.62 && r.value <= TWO_OVER_PI + 0.01, "{}: {}", k.name(), r.value);
        assert!(r.stationarity <= 1e-6);
    }
}

#[test]
fn rank_monotonicity_small_grid() {
    let a = SignKernel::CircleBand.discretize(48).unwrap();
    let opts = SeesawOptions::default();
    let values: Vec<f64> = (1..=4)
        .map(|d| seesaw_restarts(&a, d, 4, 5, opts).unwrap().value)
        .collect();
    for w in values.windows(2) {
        assert!(w[1] >= w[0] - 1e-9, "{values:?}");
    }
}

#[test]
fn embedded_rank_d_solution_stays_stationary_in_higher_rank() {
    let a = SignKernel::HalfPlane.discretize(40).unwrap();
    let r2 = seesaw(&a, 2, SeesawInit::Seed(8), SeesawOptions::default()).unwrap();
    let (g3, h3) = (r2.g.embed(3).unwrap(), r2.h.embed(3).unwrap());
    let v3 = objective(&a, &g3, &h3).unwrap();
    assert!((v3 - r2.value).abs() < 1e-12);
    let r3 = seesaw(&a, 3, SeesawInit::Fields(g3, h3), SeesawOptions::default()).unwrap();
    assert!(r3.value >= r2.value - 1e-12);
}

#[test]
fn response_density_gives_objective_as_mean_norm() {
    let a = SignKernel::CircleBand.discretize(64).unwrap();
    let r = seesaw(&a, 2, SeesawInit::Seed(2), SeesawOptions::default()).unwrap();
    let resp = response(&a, &r.h, Side::Row).unwrap();
    let mean: f64 = (0..resp.len())
        .map(|i| resp.density_row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
        .sum::<f64>()
        / resp.len() as f64;
    // near a fixed point g_i = G_i/|G_i|, so value = sum_i |G_i| = mean |G(x_i)|
    assert!((mean - r.value).abs() < 1e-6);
}
