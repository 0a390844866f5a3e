use proptest::prelude::*;
use signkernel::{load_matrix, SignKernel, SignMatrix};

proptest! {
    #[test]
    fn discretization_is_sign_valued_with_unit_mass(n in 1usize..80) {
        for k in [SignKernel::HalfPlane, SignKernel::CircleBand] {
            let a = k.discretize(n).unwrap();
            prop_assert!(a.entries().iter().all(|&e| e == 1 || e == -1));
            prop_assert!((a.cell_weight() * (n * n) as f64 - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn circle_band_symmetries(half in 1usize..40) {
        let n = 2 * half;
        let a = SignKernel::CircleBand.discretize(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(a.get(i, j), a.get(j, i));
                prop_assert_eq!(a.get((i + half) % n, (j + half) % n), a.get(i, j));
            }
        }
    }

    #[test]
    fn half_plane_antisymmetric_off_diagonal(n in 1usize..60) {
        let a = SignKernel::HalfPlane.discretize(n).unwrap();
        for i in 0..n {
            prop_assert_eq!(a.get(i, i), -1);
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(a.get(i, j), -a.get(j, i));
                }
            }
        }
    }

    #[test]
    fn text_round_trip(rows in 1usize..12, cols in 1usize..12, bits in proptest::collection::vec(any::<bool>(), 144)) {
        let entries: Vec<i8> = bits[..rows * cols].iter().map(|&b| if b { 1 } else { -1 }).collect();
        let a = SignMatrix::new(rows, cols, entries).unwrap();
        let back = load_matrix(a.to_text().as_bytes()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn custom_kernel_round_trips_through_discretize() {
    let a = SignKernel::CircleBand.discretize(12).unwrap();
    let k = SignKernel::CustomMatrix(a.clone());
    assert_eq!(k.discretize(12).unwrap(), a);
}
