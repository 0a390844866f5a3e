//! Continuous analysis of the two examples.
//!
//! For `d = 1` the stationarity conditions become planar dynamics whose
//! orbits are the squares `|G| + |H| = c`. The boundary conditions only admit
//! the levels `c = 1/(2k+1)`, each worth `c/2`; [`integrate_square_dynamics`]
//! follows an orbit exactly and [`admissible_periods`] tabulates the levels.
//! [`ClosedFormField`] holds the explicit optimizers for `d = 1` and `d = 2`.

mod closed_form;
mod dynamics;

pub use closed_form::{
    closed_form, closed_form_response, quadrature_objective, response_norm_profile,
    ClosedFormField, NormProfile, Role,
};
pub use dynamics::{integrate_square_dynamics, Breakpoint, Trajectory, START_TOL};

/// An admissible orbit level `c = 1/(2k+1)` and its objective value `c/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissiblePeriod {
    pub k: u32,
    pub c: f64,
    pub value: f64,
}

impl AdmissiblePeriod {
    pub fn new(k: u32) -> Self {
        let c = 1.0 / (2 * k + 1) as f64;
        Self { k, c, value: c / 2.0 }
    }
}

/// Levels for `k = 0..=kmax`, in decreasing order; the first is the maximizer.
pub fn admissible_periods(kmax: u32) -> Vec<AdmissiblePeriod> {
    (0..=kmax).map(AdmissiblePeriod::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_table() {
        let t = admissible_periods(2);
        let c: Vec<f64> = t.iter().map(|p| p.c).collect();
        let v: Vec<f64> = t.iter().map(|p| p.value).collect();
        assert_eq!(c, vec![1.0, 1.0 / 3.0, 1.0 / 5.0]);
        assert_eq!(v, vec![0.5, 1.0 / 6.0, 0.1]);

        let t = admissible_periods(0);
        assert_eq!(t, vec![AdmissiblePeriod { k: 0, c: 1.0, value: 0.5 }]);

        let last = *admissible_periods(4).last().unwrap();
        assert_eq!(last.c, 1.0 / 9.0);
        assert_eq!(last.value, 1.0 / 18.0);
    }
}
