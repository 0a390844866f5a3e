use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::fmt::sig;
use crate::kernels::{Example, SignKernel};
use crate::solvers::UnitVectorField;

/// Which field of an optimal pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    G,
    H,
    /// `h~(x) = h(x + 0.25)`, the partner in the shifted coordinates used for
    /// example 2. Not defined for example 1.
    ShiftedH,
}

/// A known optimal field for one of the two examples, `d = 1` (step
/// functions) or `d = 2` (rotating unit vectors).
///
/// Step functions take their right limit at jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormField {
    pub example: Example,
    pub d: usize,
    pub role: Role,
}

impl ClosedFormField {
    pub fn new(example: Example, d: usize, role: Role) -> Result<Self> {
        if d != 1 && d != 2 {
            return Err(invalid(format!("closed forms exist for d = 1 or 2, got {d}")));
        }
        if example == Example::HalfPlane && role == Role::ShiftedH {
            return Err(invalid("the shifted partner is only defined for example 2"));
        }
        Ok(Self { example, d, role })
    }

    /// The optimal `(g, h)` pair.
    pub fn pair(example: Example, d: usize) -> Result<(Self, Self)> {
        Ok((
            Self::new(example, d, Role::G)?,
            Self::new(example, d, Role::H)?,
        ))
    }

    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        match self.example {
            Example::HalfPlane => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::Domain { x, y: f64::NAN });
                }
                Ok(match (self.d, self.role) {
                    (1, Role::G) => vec![if x < 0.5 { 1.0 } else { -1.0 }],
                    (1, _) => vec![1.0],
                    (_, Role::G) => vec![(PI * x).cos(), (PI * x).sin()],
                    (_, _) => vec![(PI * x).sin(), -(PI * x).cos()],
                })
            }
            Example::CircleBand => {
                if !x.is_finite() {
                    return Err(Error::Domain { x, y: f64::NAN });
                }
                let t = match self.role {
                    Role::ShiftedH => (x + 0.25).rem_euclid(1.0),
                    _ => x.rem_euclid(1.0),
                };
                Ok(match self.d {
                    1 => vec![if !(0.25..0.75).contains(&t) { 1.0 } else { -1.0 }],
                    // g = h, and h~(x) = h(x + 0.25) = (-sin 2πx, -cos 2πx)
                    _ => {
                        let phase = 2.0 * PI * t;
                        vec![phase.cos(), -phase.sin()]
                    }
                })
            }
        }
    }

    /// Samples at the `n` cell centers `(i + 0.5) / n`.
    pub fn sample(&self, n: usize) -> Result<UnitVectorField> {
        if n == 0 {
            return Err(invalid("need at least one sample"));
        }
        UnitVectorField::from_fn(n, self.d, |i| {
            self.eval((i as f64 + 0.5) / n as f64)
                .expect("cell centers lie in the domain")
        })
    }

    /// CSV `x,v1..vd` at the `n` cell centers.
    pub fn to_csv(&self, n: usize) -> Result<String> {
        let mut out = String::from("x");
        for k in 1..=self.d {
            let _ = write!(out, ",v{k}");
        }
        out.push('\n');
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            let v = self.eval(x)?;
            out.push_str(&sig(x));
            for c in v {
                out.push(',');
                out.push_str(&sig(c));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Free-function form of [`ClosedFormField::eval`].
pub fn closed_form(example: Example, d: usize, role: Role, x: f64) -> Result<Vec<f64>> {
    ClosedFormField::new(example, d, role)?.eval(x)
}

/// Midpoint product rule for `∬ f(x,y) <g(x), h(y)> dx dy` on an `n x n` grid.
///
/// The kernel is sampled with [`SignKernel::discretize`], so grid points on
/// the discontinuity follow the same tie rule as the discrete solvers.
pub fn quadrature_objective(
    kernel: &SignKernel,
    g: &ClosedFormField,
    h: &ClosedFormField,
    n: usize,
) -> Result<f64> {
    let example = kernel
        .as_example()
        .ok_or_else(|| invalid("closed forms need a built-in kernel"))?;
    if g.example != example || h.example != example {
        return Err(invalid(format!(
            "fields belong to examples {} and {}, kernel is example {}",
            g.example.number(),
            h.example.number(),
            example.number()
        )));
    }
    if g.d != h.d {
        return Err(crate::error::mismatch("field dimensions differ"));
    }
    let a = kernel.discretize(n)?;
    let gs = g.sample(n)?;
    let hs = h.sample(n)?;
    let mut total = 0.0;
    for (i, gi) in gs.rows().enumerate() {
        let mut row = 0.0;
        for (&s, hj) in a.row(i).iter().zip(hs.rows()) {
            let ip: f64 = gi.iter().zip(hj).map(|(p, q)| p * q).sum();
            row += s as f64 * ip;
        }
        total += row;
    }
    Ok(total / (n as f64 * n as f64))
}

/// Analytic response `G(x)` of the `d = 2` closed-form pair.
pub fn closed_form_response(example: Example, x: f64) -> [f64; 2] {
    let amp = 2.0 / PI;
    match example {
        Example::HalfPlane => [amp * (PI * x).cos(), amp * (PI * x).sin()],
        Example::CircleBand => [amp * (2.0 * PI * x).cos(), -amp * (2.0 * PI * x).sin()],
    }
}

/// `|G(x)|` of the `d = 2` closed-form response on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormProfile {
    /// `|G(0)|`.
    pub value: f64,
    /// Largest `| |G(x)| - |G(0)| |` over the grid.
    pub max_deviation: f64,
}

/// Evaluates `|G|` for the `d = 2` closed-form response at `samples` points
/// of the domain; the profile is constant `2/π`.
pub fn response_norm_profile(example: Example, samples: usize) -> NormProfile {
    let norm = |x: f64| {
        let [a, b] = closed_form_response(example, x);
        a.hypot(b)
    };
    let value = norm(0.0);
    let max_deviation = (0..samples)
        .map(|k| k as f64 / samples.max(1) as f64)
        .map(|x| (norm(x) - value).abs())
        .fold(0.0, f64::max);
    NormProfile {
        value,
        max_deviation,
    }
}
