use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, mismatch, Error, Result};

/// Tolerance on `| |v| - 1 |` for every row of a [`UnitVectorField`].
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// `n` unit vectors in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVectorField {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl UnitVectorField {
    pub fn new(n: usize, d: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(invalid("field needs at least one row and one dimension"));
        }
        if data.len() != n * d {
            return Err(mismatch(format!("{} values for {n} rows of dimension {d}", data.len())));
        }
        let field = Self { n, d, data };
        for i in 0..n {
            let norm = norm(field.row(i));
            if !((norm - 1.0).abs() <= UNIT_NORM_TOL) {
                return Err(Error::InvalidNorm { row: i, norm });
            }
        }
        Ok(field)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(mismatch("rows of unequal dimension"));
        }
        Self::new(rows.len(), d, rows.concat())
    }

    /// Scalar (`d = 1`) field from a sign pattern; nonnegative entries map to `+1`.
    pub fn from_signs<T: Into<f64> + Copy>(signs: &[T]) -> Result<Self> {
        let data = signs
            .iter()
            .map(|&s| if s.into() >= 0.0 { 1.0 } else { -1.0 })
            .collect();
        Self::new(signs.len(), 1, data)
    }

    /// Every row equal to the first basis vector.
    pub fn constant(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(invalid("field needs at least one row and one dimension"));
        }
        let mut data = vec![0.0; n * d];
        for i in 0..n {
            data[i * d] = 1.0;
        }
        Ok(Self { n, d, data })
    }

    /// Rows drawn uniformly on the sphere `S^{d-1}` by normalizing Gaussians.
    pub fn random<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(invalid("field needs at least one row and one dimension"));
        }
        let mut data = vec![0.0; n * d];
        for row in data.chunks_exact_mut(d) {
            loop {
                for v in row.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
                let r = norm(row);
                if r > 1e-300 {
                    row.iter_mut().for_each(|v| *v /= r);
                    break;
                }
            }
        }
        Ok(Self { n, d, data })
    }

    /// Builds a field by evaluating `f` at each index; rows are normalized.
    pub fn from_fn<F>(n: usize, d: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize) -> Vec<f64>,
    {
        let mut data = Vec::with_capacity(n * d);
        for i in 0..n {
            let v = f(i);
            if v.len() != d {
                return Err(mismatch(format!("row {i} has dimension {}, expected {d}", v.len())));
            }
            data.extend(v);
        }
        Self::new(n, d, data)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Pads every row with zeros up to dimension `d`.
    pub fn embed(&self, d: usize) -> Result<Self> {
        if d < self.d {
            return Err(invalid(format!("cannot embed dimension {} into {d}", self.d)));
        }
        let mut data = vec![0.0; self.n * d];
        for (i, row) in self.rows().enumerate() {
            data[i * d..i * d + self.d].copy_from_slice(row);
        }
        Ok(Self { n: self.n, d, data })
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            d: self.d,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.d..(i + 1) * self.d]
    }

    /// Replaces row `i` with `v`, which must already be a unit vector.
    pub fn set_row(&mut self, i: usize, v: &[f64]) -> Result<()> {
        if v.len() != self.d {
            return Err(mismatch("row dimension"));
        }
        let r = norm(v);
        if !((r - 1.0).abs() <= UNIT_NORM_TOL) {
            return Err(Error::InvalidNorm { row: i, norm: r });
        }
        self.row_mut(i).copy_from_slice(v);
        Ok(())
    }
}

/// Integrated response of one side, e.g. `G_i = w * sum_j a_ij h_j`, with
/// the per-row norms.
///
/// Values carry the matrix cell weight `w = 1 / (n m)`, so that the objective
/// is `sum_i <g_i, G_i>`. The continuum response `G(x_i) = integral f(x_i, y) h(y) dy`
/// is recovered by [`ResponseField::density_row`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseField {
    d: usize,
    rows: Vec<f64>,
    norms: Vec<f64>,
}

impl ResponseField {
    pub(crate) fn from_rows(d: usize, rows: Vec<f64>) -> Self {
        let norms = rows.chunks_exact(d).map(norm).collect();
        Self { d, rows, norms }
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.chunks_exact(self.d)
    }

    pub fn norm(&self, i: usize) -> f64 {
        self.norms[i]
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// Row `i` rescaled to the continuum density (multiplied by the row count).
    pub fn density_row(&self, i: usize) -> Vec<f64> {
        let scale = self.len() as f64;
        self.row(i).iter().map(|v| v * scale).collect()
    }

    /// All rows as continuum densities.
    pub fn density(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.density_row(i)).collect()
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_non_unit_rows() {
        let err = UnitVectorField::new(2, 2, vec![1.0, 0.0, 0.5, 0.5]).unwrap_err();
        assert!(matches!(err, Error::InvalidNorm { row: 1, .. }));
        assert!(UnitVectorField::new(1, 1, vec![f64::NAN]).is_err());
        assert!(UnitVectorField::new(2, 1, vec![1.0]).is_err());
    }

    #[test]
    fn random_rows_are_unit_and_reproducible() {
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        let a = UnitVectorField::random(50, 4, &mut r1).unwrap();
        let b = UnitVectorField::random(50, 4, &mut r2).unwrap();
        assert_eq!(a, b);
        for row in a.rows() {
            assert!((norm(row) - 1.0).abs() <= UNIT_NORM_TOL);
        }
    }

    #[test]
    fn embed_pads_with_zeros() {
        let f = UnitVectorField::from_signs(&[1i8, -1]).unwrap();
        let e = f.embed(3).unwrap();
        assert_eq!(e.row(1), &[-1.0, 0.0, 0.0]);
        assert!(f.embed(0).is_err());
    }

    #[test]
    fn response_norms_match_rows() {
        let r = ResponseField::from_rows(2, vec![3.0, 4.0, 0.0, 0.0]);
        assert_eq!(r.norms(), &[5.0, 0.0]);
        assert_eq!(r.density_row(0), vec![6.0, 8.0]);
    }
}
