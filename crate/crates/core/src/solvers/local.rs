use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::UnitVectorField;
use super::report::{SolveReport, SolverKind};
use super::{objective, stationarity_residual};
use crate::error::{invalid, Result};
use crate::kernels::SignMatrix;

struct Run {
    b: Vec<i8>,
    c: Vec<i8>,
    score: i64,
    trace: Vec<i64>,
}

/// Alternating sign updates `b <- sgn(A c)`, `c <- sgn(A^T b)` from
/// `restarts` random starts; returns the best fixed point found.
///
/// A zero sum keeps the previous sign, so every flip strictly raises the
/// objective and each restart terminates. Runs are reproducible for a seed.
pub fn local_search_d1(a: &SignMatrix, restarts: usize, seed: u64) -> Result<SolveReport> {
    if restarts == 0 {
        return Err(invalid("restarts must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Run> = None;
    for _ in 0..restarts {
        let b: Vec<i8> = (0..a.rows()).map(|_| random_sign(&mut rng)).collect();
        let c: Vec<i8> = (0..a.cols()).map(|_| random_sign(&mut rng)).collect();
        let run = descend(a, b, c);
        if best.as_ref().is_none_or(|r| run.score > r.score) {
            best = Some(run);
        }
    }
    let run = best.expect("at least one restart");

    let g = UnitVectorField::from_signs(&run.b)?;
    let h = UnitVectorField::from_signs(&run.c)?;
    let w = a.cell_weight();
    Ok(SolveReport {
        solver: SolverKind::LocalSearchD1,
        value: objective(a, &g, &h)?,
        stationarity: stationarity_residual(a, &g, &h)?,
        iterations: run.trace.len() - 1,
        value_trace: run.trace.iter().map(|&s| s as f64 * w).collect(),
        g,
        h,
        seed: Some(seed),
        restarts,
    })
}

fn random_sign<R: Rng>(rng: &mut R) -> i8 {
    if rng.random::<bool>() {
        1
    } else {
        -1
    }
}

fn descend(a: &SignMatrix, mut b: Vec<i8>, mut c: Vec<i8>) -> Run {
    let (n, m) = (a.rows(), a.cols());
    let mut trace = vec![bilinear(a, &b, &c)];
    let mut col_sums = vec![0i64; m];
    loop {
        let mut changed = false;
        for (i, bi) in b.iter_mut().enumerate() {
            let s: i64 = a
                .row(i)
                .iter()
                .zip(&c)
                .map(|(&e, &cj)| (e * cj) as i64)
                .sum();
            changed |= update_sign(bi, s);
        }
        col_sums.iter_mut().for_each(|v| *v = 0);
        for i in 0..n {
            let bi = b[i] as i64;
            for (acc, &e) in col_sums.iter_mut().zip(a.row(i)) {
                *acc += e as i64 * bi;
            }
        }
        for (cj, &s) in c.iter_mut().zip(&col_sums) {
            changed |= update_sign(cj, s);
        }
        // after the column update, the objective is sum_j |(A^T b)_j| on nonzero sums
        let score = c.iter().zip(&col_sums).map(|(&cj, &s)| cj as i64 * s).sum();
        trace.push(score);
        if !changed {
            break;
        }
    }
    let score = *trace.last().expect("nonempty trace");
    Run { b, c, score, trace }
}

fn update_sign(v: &mut i8, sum: i64) -> bool {
    let next = match sum.signum() {
        1 => 1,
        -1 => -1,
        _ => *v,
    };
    let changed = next != *v;
    *v = next;
    changed
}

fn bilinear(a: &SignMatrix, b: &[i8], c: &[i8]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &bi)| {
            let s: i64 = a
                .row(i)
                .iter()
                .zip(c)
                .map(|(&e, &cj)| (e * cj) as i64)
                .sum();
            bi as i64 * s
        })
        .sum()
}
