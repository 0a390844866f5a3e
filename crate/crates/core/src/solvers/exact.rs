use super::field::UnitVectorField;
use super::report::{SolveReport, SolverKind};
use super::{objective, stationarity_residual};
use crate::error::{Error, Result};
use crate::kernels::SignMatrix;

/// Column limit for exhaustive enumeration (`2^23` sign vectors).
pub const EXACT_MAX_COLS: usize = 24;

/// Global `d = 1` optimum by enumerating `c in {-1, 1}^m` with `c_0 = +1`.
///
/// For fixed `c` the best `b` is `sgn(A c)`, worth `w * sum_i |(A c)_i|`.
/// Columns are visited in Gray-code order so each step flips one sign and
/// updates `A c` in `O(n)`. Zero row sums pick `b_i = +1`.
///
/// `value_trace` lists the successive record values met during enumeration.
pub fn exact_d1(a: &SignMatrix) -> Result<SolveReport> {
    let (n, m) = (a.rows(), a.cols());
    if m > EXACT_MAX_COLS {
        return Err(Error::Capacity {
            cols: m,
            max: EXACT_MAX_COLS,
        });
    }
    let columns = a.transpose();

    // c starts at all +1
    let mut c = vec![1i8; m];
    let mut ac: Vec<i64> = (0..n)
        .map(|i| a.row(i).iter().map(|&e| e as i64).sum())
        .collect();
    let score = |ac: &[i64]| ac.iter().map(|v| v.abs()).sum::<i64>();

    let mut best = score(&ac);
    let mut best_c = c.clone();
    let mut records = vec![best];

    let steps: u64 = 1 << (m - 1);
    for step in 1..steps {
        let j = step.trailing_zeros() as usize + 1;
        let old = c[j] as i64;
        for (v, &e) in ac.iter_mut().zip(columns.row(j)) {
            *v -= 2 * e as i64 * old;
        }
        c[j] = -c[j];
        let s = score(&ac);
        if s > best {
            best = s;
            best_c.copy_from_slice(&c);
            records.push(s);
        }
    }

    let b: Vec<i8> = (0..n)
        .map(|i| {
            let r: i64 = a
                .row(i)
                .iter()
                .zip(&best_c)
                .map(|(&e, &cj)| (e * cj) as i64)
                .sum();
            if r >= 0 {
                1
            } else {
                -1
            }
        })
        .collect();

    let g = UnitVectorField::from_signs(&b)?;
    let h = UnitVectorField::from_signs(&best_c)?;
    let value = objective(a, &g, &h)?;
    let stationarity = stationarity_residual(a, &g, &h)?;
    let w = a.cell_weight();
    Ok(SolveReport {
        solver: SolverKind::ExactD1,
        value,
        g,
        h,
        iterations: steps as usize,
        value_trace: records.iter().map(|&s| s as f64 * w).collect(),
        stationarity,
        seed: None,
        restarts: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{Sign, SignKernel};

    /// Brute force over both b and c, independent of the Gray-code path.
    fn brute_force(a: &SignMatrix) -> f64 {
        let (n, m) = (a.rows(), a.cols());
        let mut best = i64::MIN;
        for bm in 0..1u32 << n {
            for cm in 0..1u32 << m {
                let mut s = 0i64;
                for i in 0..n {
                    let bi = if bm >> i & 1 == 1 { 1 } else { -1 };
                    for j in 0..m {
                        let cj = if cm >> j & 1 == 1 { 1 } else { -1 };
                        s += (a.get(i, j) as i64) * bi * cj;
                    }
                }
                best = best.max(s);
            }
        }
        best as f64 * a.cell_weight()
    }

    #[test]
    fn single_cell() {
        let a = SignMatrix::filled(1, 1, Sign::Plus).unwrap();
        let r = exact_d1(&a).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.g.as_slice(), &[1.0]);
        assert_eq!(r.h.as_slice(), &[1.0]);
    }

    #[test]
    fn half_plane_small_grids() {
        for n in [2, 4] {
            let a = SignKernel::HalfPlane.discretize(n).unwrap();
            let r = exact_d1(&a).unwrap();
            assert_eq!(r.value, 0.5, "n = {n}");
            assert_eq!(brute_force(&a), 0.5);
            assert_eq!(r.stationarity, 0.0);
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..=6 {
            for k in [SignKernel::HalfPlane, SignKernel::CircleBand] {
                let a = k.discretize(n).unwrap();
                let r = exact_d1(&a).unwrap();
                assert_eq!(r.value, brute_force(&a), "{} n={n}", k.name());
                assert_eq!(r.stationarity, 0.0);
            }
        }
        let rect = SignMatrix::from_rows(&[vec![1, -1, 1], vec![-1, -1, 1]]).unwrap();
        assert_eq!(exact_d1(&rect).unwrap().value, brute_force(&rect));
    }

    #[test]
    fn record_trace_is_increasing() {
        let a = SignKernel::CircleBand.discretize(10).unwrap();
        let r = exact_d1(&a).unwrap();
        assert!(r.value_trace.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*r.value_trace.last().unwrap(), r.value);
    }

    #[test]
    fn capacity_guard() {
        let a = SignMatrix::filled(2, 25, Sign::Plus).unwrap();
        assert!(matches!(exact_d1(&a), Err(Error::Capacity { cols: 25, .. })));
    }
}
