//! Spectral certificate for the `2/π` upper bound.
//!
//! A response field with `G(x + T/2) = -G(x)` has only odd Fourier
//! harmonics, so its Rayleigh quotient `∫|G'|² / ∫|G|²` is at least the
//! square of the base frequency `β` (`π` for example 1 after extension to
//! `[0, 2]`, `2π` for example 2). Since `|G'|` equals a constant speed `s`
//! almost everywhere, `∫|G| <= (∫|G|²)^½ <= s / β = 2/π`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, mismatch, Result};
use crate::fmt::sig;
use crate::kernels::Example;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 8;

/// Magnitude below which an even-frequency coefficient counts as zero.
pub const EVEN_COEFF_TOL: f64 = 1e-9;

/// Base angular frequency `β` of the Fourier series.
pub fn base_frequency(example: Example) -> f64 {
    match example {
        Example::HalfPlane => PI,
        Example::CircleBand => 2.0 * PI,
    }
}

/// Poincaré constant `β²` for antiperiodic fields.
pub fn poincare_constant(example: Example) -> f64 {
    base_frequency(example).powi(2)
}

/// `|G'|` along optimal dynamics: 2 for example 1, 4 for example 2.
pub fn response_speed(example: Example) -> f64 {
    match example {
        Example::HalfPlane => 2.0,
        Example::CircleBand => 4.0,
    }
}

/// Fourier coefficients `a_k in C^d` over `k = -M/2 .. M/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCoefficients {
    pub example: Example,
    /// Base angular frequency `β`; the series is `sum_k a_k e^{i β k x}`.
    pub base: f64,
    pub frequencies: Vec<i64>,
    /// One `d`-vector per entry of `frequencies`.
    pub coefficients: Vec<Vec<Complex64>>,
}

impl SpectrumCoefficients {
    pub fn dim(&self) -> usize {
        self.coefficients.first().map_or(0, Vec::len)
    }

    pub fn coefficient(&self, k: i64) -> Option<&[Complex64]> {
        self.frequencies
            .iter()
            .position(|&f| f == k)
            .map(|p| self.coefficients[p].as_slice())
    }

    /// `|a_k|`, the Euclidean norm over components.
    pub fn magnitude(&self, k: i64) -> f64 {
        self.coefficient(k)
            .map_or(0.0, |a| a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    }

    /// `sum_k |a_k|²`, equal to the mean square of the field.
    pub fn energy(&self) -> f64 {
        self.coefficients
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// `sum_k (β k)² |a_k|²`, equal to the mean square of `G'`.
    pub fn derivative_energy(&self) -> f64 {
        self.frequencies
            .iter()
            .zip(&self.coefficients)
            .map(|(&k, a)| {
                let w = (self.base * k as f64).powi(2);
                w * a.iter().map(|z| z.norm_sqr()).sum::<f64>()
            })
            .sum()
    }

    /// Largest `|a_k|` over even `k` (zero for antiperiodic fields).
    pub fn max_even_magnitude(&self) -> f64 {
        self.frequencies
            .iter()
            .filter(|&&k| k % 2 == 0)
            .map(|&k| self.magnitude(k))
            .fold(0.0, f64::max)
    }

    pub fn is_odd(&self) -> bool {
        self.max_even_magnitude() < EVEN_COEFF_TOL
    }

    /// CSV `k,re_1..re_d,im_1..im_d,magnitude`.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::from("k");
        for c in 1..=d {
            let _ = write!(out, ",re_{c}");
        }
        for c in 1..=d {
            let _ = write!(out, ",im_{c}");
        }
        out.push_str(",magnitude\n");
        for (&k, a) in self.frequencies.iter().zip(&self.coefficients) {
            let _ = write!(out, "{k}");
            for z in a {
                let _ = write!(out, ",{}", sig(z.re));
            }
            for z in a {
                let _ = write!(out, ",{}", sig(z.im));
            }
            let _ = writeln!(out, ",{}", sig(self.magnitude(k)));
        }
        out
    }
}

fn check_samples(samples: &[Vec<f64>]) -> Result<usize> {
    let d = samples.first().map_or(0, Vec::len);
    if d == 0 {
        return Err(invalid("samples must be nonempty d-vectors"));
    }
    if samples.iter().any(|s| s.len() != d) {
        return Err(mismatch("samples of unequal dimension"));
    }
    Ok(d)
}

/// Fourier coefficients of a field sampled uniformly on `[0, 1)`.
///
/// For example 1 the samples are first extended to `[0, 2)` by
/// `G(1 + x) = -G(x)`, giving base frequency `π`; for example 2 they are
/// transformed directly with base frequency `2π`. The sample count must be
/// a power of two, at least [`MIN_SAMPLES`].
pub fn odd_spectrum(samples: &[Vec<f64>], example: Example) -> Result<SpectrumCoefficients> {
    let n = samples.len();
    if n < MIN_SAMPLES || !n.is_power_of_two() {
        return Err(invalid(format!(
            "sample count must be a power of two >= {MIN_SAMPLES}, got {n}"
        )));
    }
    let d = check_samples(samples)?;

    let len = match example {
        Example::HalfPlane => 2 * n,
        Example::CircleBand => n,
    };
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let scale = 1.0 / len as f64;

    // coefficient q of component c, in FFT order
    let mut spectra: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for c in 0..d {
        let mut buf: Vec<Complex64> = (0..len)
            .map(|j| {
                let v = if j < n { samples[j][c] } else { -samples[j - n][c] };
                Complex64::new(v, 0.0)
            })
            .collect();
        fft.process(&mut buf);
        buf.iter_mut().for_each(|z| *z *= scale);
        spectra.push(buf);
    }

    let half = (len / 2) as i64;
    let frequencies: Vec<i64> = (-half..half).collect();
    let coefficients = frequencies
        .iter()
        .map(|&k| {
            let q = k.rem_euclid(len as i64) as usize;
            spectra.iter().map(|s| s[q]).collect()
        })
        .collect();

    Ok(SpectrumCoefficients {
        example,
        base: base_frequency(example),
        frequencies,
        coefficients,
    })
}

/// Spectral Rayleigh quotient `sum (β k)² |a_k|² / sum |a_k|²`, i.e.
/// `∫|G'|² / ∫|G|²` computed without differencing.
pub fn poincare_ratio(samples: &[Vec<f64>], example: Example) -> Result<f64> {
    let spec = odd_spectrum(samples, example)?;
    let energy = spec.energy();
    if !(energy > 0.0) {
        return Err(invalid("field is identically zero"));
    }
    Ok(spec.derivative_energy() / energy)
}

/// `speed / sqrt(lambda)`: with `|G'| = speed` a.e. and Poincaré constant
/// `lambda`, this bounds `∫|G|` and hence the objective.
pub fn certified_upper_bound(speed: f64, lambda: f64) -> Result<f64> {
    if !(speed > 0.0) || !(lambda > 0.0) {
        return Err(invalid(format!(
            "speed and lambda must be positive, got {speed} and {lambda}"
        )));
    }
    Ok(speed / lambda.sqrt())
}

/// The bound for one of the built-in examples (`2/π` for both).
pub fn example_upper_bound(example: Example) -> f64 {
    certified_upper_bound(response_speed(example), poincare_constant(example))
        .expect("positive constants")
}

/// `max_j |G_{j + N/2} + G_j|` over a full period of `N` samples.
pub fn verify_antiperiodicity(samples: &[Vec<f64>]) -> Result<f64> {
    let n = samples.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(invalid(format!("need an even, nonzero sample count, got {n}")));
    }
    check_samples(samples)?;
    let half = n / 2;
    Ok((0..half)
        .map(|j| {
            samples[j]
                .iter()
                .zip(&samples[j + half])
                .map(|(a, b)| (a + b).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max))
}

/// `mean |G|` over the samples.
pub fn mean_norm(samples: &[Vec<f64>]) -> f64 {
    let total: f64 = samples
        .iter()
        .map(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt())
        .sum();
    total / samples.len() as f64
}

/// `sqrt(mean |G|²)` over the samples.
pub fn rms_norm(samples: &[Vec<f64>]) -> f64 {
    let total: f64 = samples
        .iter()
        .map(|v| v.iter().map(|c| c * c).sum::<f64>())
        .sum();
    (total / samples.len() as f64).sqrt()
}
