//! Shared fixtures for the criterion benches.

use signkernel::continuum::ClosedFormField;
use signkernel::solvers::response;
use signkernel::{Example, Side, SignMatrix, UnitVectorField};

/// Discretized kernel with the sampled rotating closed-form pair.
pub fn rotating_pair(example: Example, n: usize) -> (SignMatrix, UnitVectorField, UnitVectorField) {
    let a = example.kernel().discretize(n).expect("valid grid size");
    let (g, h) = ClosedFormField::pair(example, 2).expect("d = 2 closed form");
    (a, g.sample(n).expect("n > 0"), h.sample(n).expect("n > 0"))
}

/// Response density of the rotating pair, as fed to the spectral bound.
pub fn response_samples(example: Example, n: usize) -> Vec<Vec<f64>> {
    let (a, _, h) = rotating_pair(example, n);
    response(&a, &h, Side::Row).expect("shapes agree").density()
}

#[cfg(test)]
mod tests {
    use super::*;
    use signkernel::bounds::mean_norm;

    #[test]
    fn fixtures_are_near_the_optimum() {
        let s = response_samples(Example::CircleBand, 128);
        assert_eq!(s.len(), 128);
        assert!((mean_norm(&s) - signkernel::TWO_OVER_PI).abs() < 1e-3);
    }
}
