//! Solvers for the discretized problem
//! `max w * sum_ij a_ij <g_i, h_j>` over unit-vector rows `g_i`, `h_j` in `R^d`.
//!
//! Every solver is built on the same primitive: for a fixed partner field,
//! the best field is the normalized response `g_i = G_i / |G_i|`. The solvers
//! differ in how they search:
//!
//! * [`exact_d1`] enumerates every sign vector (global optimum, `d = 1`).
//! * [`local_search_d1`] alternates sign updates from random starts.
//! * [`seesaw`] alternates normalized responses in any dimension `d`.

mod exact;
mod field;
mod local;
mod report;
mod seesaw;

pub use exact::{exact_d1, EXACT_MAX_COLS};
pub use field::{ResponseField, UnitVectorField, UNIT_NORM_TOL};
pub use local::local_search_d1;
pub use report::{ReportDocument, SolveReport, SolverKind};
pub use seesaw::{seesaw, seesaw_restarts, SeesawInit, SeesawOptions};

use crate::error::{mismatch, Result};
use crate::kernels::SignMatrix;

pub(crate) use field::dot;

/// Which side of the matrix a response is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `G_i = w * sum_j a_ij h_j`, one entry per matrix row.
    Row,
    /// `H_j = w * sum_i a_ij g_i`, one entry per matrix column.
    Col,
}

/// Unweighted response sums, row-major `len x d`.
fn raw_response(a: &SignMatrix, partner: &UnitVectorField, side: Side) -> Result<Vec<f64>> {
    let d = partner.dim();
    match side {
        Side::Row => {
            if partner.len() != a.cols() {
                return Err(mismatch(format!(
                    "partner field has {} rows, matrix has {} columns",
                    partner.len(),
                    a.cols()
                )));
            }
            let mut out = vec![0.0; a.rows() * d];
            for (i, acc) in out.chunks_exact_mut(d).enumerate() {
                for (&s, h) in a.row(i).iter().zip(partner.rows()) {
                    if s > 0 {
                        acc.iter_mut().zip(h).for_each(|(o, v)| *o += v);
                    } else {
                        acc.iter_mut().zip(h).for_each(|(o, v)| *o -= v);
                    }
                }
            }
            Ok(out)
        }
        Side::Col => {
            if partner.len() != a.rows() {
                return Err(mismatch(format!(
                    "partner field has {} rows, matrix has {} rows",
                    partner.len(),
                    a.rows()
                )));
            }
            let mut out = vec![0.0; a.cols() * d];
            for (i, g) in partner.rows().enumerate() {
                for (&s, acc) in a.row(i).iter().zip(out.chunks_exact_mut(d)) {
                    if s > 0 {
                        acc.iter_mut().zip(g).for_each(|(o, v)| *o += v);
                    } else {
                        acc.iter_mut().zip(g).for_each(|(o, v)| *o -= v);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// The response field of `partner` over `side`, carrying the cell weight.
pub fn response(a: &SignMatrix, partner: &UnitVectorField, side: Side) -> Result<ResponseField> {
    let w = a.cell_weight();
    let mut raw = raw_response(a, partner, side)?;
    raw.iter_mut().for_each(|v| *v *= w);
    Ok(ResponseField::from_rows(partner.dim(), raw))
}

/// `w * sum_ij a_ij <g_i, h_j>`.
///
/// The cell weight is applied once, after summation, so `d = 1` sign fields
/// produce exactly `w * k` for an integer `k`.
pub fn objective(a: &SignMatrix, g: &UnitVectorField, h: &UnitVectorField) -> Result<f64> {
    check_pair(a, g, h)?;
    let raw = raw_response(a, h, Side::Row)?;
    let total: f64 = g
        .rows()
        .zip(raw.chunks_exact(h.dim()))
        .map(|(gi, si)| dot(gi, si))
        .sum();
    Ok(total * a.cell_weight())
}

/// Normalized response to `partner` on `side`.
///
/// Rows with an exactly zero response keep the corresponding row of
/// `previous`, so the update is deterministic and never lowers the objective.
pub fn best_response(
    a: &SignMatrix,
    partner: &UnitVectorField,
    side: Side,
    previous: &UnitVectorField,
) -> Result<(UnitVectorField, ResponseField)> {
    let resp = response(a, partner, side)?;
    if previous.len() != resp.len() || previous.dim() != partner.dim() {
        return Err(mismatch(format!(
            "previous field is {}x{}, response is {}x{}",
            previous.len(),
            previous.dim(),
            resp.len(),
            partner.dim()
        )));
    }
    let mut next = previous.clone();
    for i in 0..resp.len() {
        let r = resp.norm(i);
        if r > 0.0 {
            let row = next.row_mut(i);
            row.iter_mut()
                .zip(resp.row(i))
                .for_each(|(o, v)| *o = v / r);
        }
    }
    Ok((next, resp))
}

/// Largest distance between a row and its normalized response, over both
/// sides and all rows with nonzero response. Zero for a stationary pair.
pub fn stationarity_residual(
    a: &SignMatrix,
    g: &UnitVectorField,
    h: &UnitVectorField,
) -> Result<f64> {
    check_pair(a, g, h)?;
    let gr = response(a, h, Side::Row)?;
    let hr = response(a, g, Side::Col)?;
    Ok(side_residual(g, &gr).max(side_residual(h, &hr)))
}

fn side_residual(field: &UnitVectorField, resp: &ResponseField) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, (v, r)) in field.rows().zip(resp.rows()).enumerate() {
        let len = resp.norm(i);
        if len > 0.0 {
            let dist: f64 = v
                .iter()
                .zip(r)
                .map(|(x, y)| (x - y / len).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(dist);
        }
    }
    worst
}

fn check_pair(a: &SignMatrix, g: &UnitVectorField, h: &UnitVectorField) -> Result<()> {
    if g.len() != a.rows() || h.len() != a.cols() {
        return Err(mismatch(format!(
            "fields have {} and {} rows for a {}x{} matrix",
            g.len(),
            h.len(),
            a.rows(),
            a.cols()
        )));
    }
    if g.dim() != h.dim() {
        return Err(mismatch(format!("field dimensions {} and {}", g.dim(), h.dim())));
    }
    Ok(())
}
