use std::fmt::Write as _;

use crate::error::{invalid, Result};
use crate::fmt::sig;
use crate::kernels::Example;

/// Tolerance on the starting point lying on the level set `|G| + |H| = c`.
pub const START_TOL: f64 = 1e-12;

/// A state of the scalar optimality dynamics at an event (corner) or endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub x: f64,
    pub g: f64,
    pub h: f64,
}

/// Scalar (`d = 1`) solution of the response dynamics on `[0, 1]`.
///
/// For example 1 the second coordinate is `H`; for example 2 it is the shifted
/// field `H~(x) = H(x + 0.25)`. Between breakpoints the motion is linear, so
/// [`Trajectory::eval`] is exact up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub example: Example,
    /// Conserved level `|G| + |H|`.
    pub c: f64,
    pub x: Vec<f64>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    breakpoints: Vec<Breakpoint>,
}

/// Coordinate speeds `(G' = a sgn H, H' = b sgn G)` for each example.
fn speeds(example: Example) -> (f64, f64) {
    match example {
        Example::HalfPlane => (-2.0, 2.0),
        Example::CircleBand => (4.0, -4.0),
    }
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Integrates the scalar dynamics exactly from `(g0, h0)` over `[0, 1]`,
/// sampling `samples` equally spaced points including both endpoints.
///
/// Velocities are piecewise constant, so each corner (a coordinate reaching
/// zero) is found by solving a linear equation. At a corner the undefined sign
/// of the vanishing coordinate is taken as the sign it acquires immediately
/// afterwards, which keeps the orbit on the square `|G| + |H| = c`.
pub fn integrate_square_dynamics(
    example: Example,
    c: f64,
    g0: f64,
    h0: f64,
    samples: usize,
) -> Result<Trajectory> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(invalid(format!("level c must be positive, got {c}")));
    }
    if ((g0.abs() + h0.abs()) - c).abs() > START_TOL {
        return Err(invalid(format!(
            "start ({g0}, {h0}) is not on the level |G| + |H| = {c}"
        )));
    }
    if samples < 2 {
        return Err(invalid("need at least 2 samples"));
    }
    let (a, b) = speeds(example);

    let mut x = 0.0;
    let (mut g, mut h) = (g0, h0);
    let mut breakpoints = vec![Breakpoint { x, g, h }];
    while x < 1.0 {
        let sg = if g != 0.0 { sgn(g) } else { sgn(a * sgn(h)) };
        let sh = if h != 0.0 { sgn(h) } else { sgn(b * sg) };
        let (vg, vh) = (a * sh, b * sg);

        let hit_g = if g * vg < 0.0 { g.abs() / vg.abs() } else { f64::INFINITY };
        let hit_h = if h * vh < 0.0 { h.abs() / vh.abs() } else { f64::INFINITY };
        let dt = hit_g.min(hit_h);

        if x + dt >= 1.0 {
            let rest = 1.0 - x;
            g += vg * rest;
            h += vh * rest;
            x = 1.0;
        } else {
            x += dt;
            if hit_g <= hit_h {
                g = 0.0;
                h = sgn(h + vh * dt) * c;
            } else {
                h = 0.0;
                g = sgn(g + vg * dt) * c;
            }
        }
        breakpoints.push(Breakpoint { x, g, h });
    }

    let mut traj = Trajectory {
        example,
        c,
        x: Vec::with_capacity(samples),
        g: Vec::with_capacity(samples),
        h: Vec::with_capacity(samples),
        breakpoints,
    };
    for k in 0..samples {
        let xk = k as f64 / (samples - 1) as f64;
        let (gk, hk) = traj.eval(xk);
        traj.x.push(xk);
        traj.g.push(gk);
        traj.h.push(hk);
    }
    Ok(traj)
}

impl Trajectory {
    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// Interior corner positions (where one coordinate is zero).
    pub fn events(&self) -> Vec<f64> {
        let n = self.breakpoints.len();
        self.breakpoints[1..n - 1].iter().map(|b| b.x).collect()
    }

    /// `(G(x), H(x))` for `x` clamped to `[0, 1]`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let x = x.clamp(0.0, 1.0);
        let bps = &self.breakpoints;
        let k = bps.partition_point(|b| b.x <= x);
        if k == 0 {
            return (bps[0].g, bps[0].h);
        }
        if k >= bps.len() {
            let last = bps[bps.len() - 1];
            return (last.g, last.h);
        }
        let (p, q) = (bps[k - 1], bps[k]);
        let t = (x - p.x) / (q.x - p.x);
        (p.g + t * (q.g - p.g), p.h + t * (q.h - p.h))
    }

    /// Right-hand side of the dynamics at `x` (undefined at corners).
    pub fn velocity(&self, x: f64) -> (f64, f64) {
        let (g, h) = self.eval(x);
        let (a, b) = speeds(self.example);
        (a * sgn(h), b * sgn(g))
    }

    /// Unshifted partner response `H(x)`. For example 2 this is
    /// `H~(x - 0.25)` read periodically on `[0, 1)`; for example 1 it is `H`.
    pub fn unshifted_h(&self, x: f64) -> f64 {
        match self.example {
            Example::HalfPlane => self.eval(x).1,
            Example::CircleBand => self.eval((x - 0.25).rem_euclid(1.0)).1,
        }
    }

    /// Largest deviation of `|G| + |H|` from `c` over breakpoints and samples.
    pub fn conservation_error(&self) -> f64 {
        let bp = self.breakpoints.iter().map(|b| (b.g, b.h));
        let samples = self.g.iter().copied().zip(self.h.iter().copied());
        bp.chain(samples)
            .map(|(g, h)| (g.abs() + h.abs() - self.c).abs())
            .fold(0.0, f64::max)
    }

    /// Shift imposed by the boundary condition: `1` for example 1
    /// (`G(0) + G(1) = 0`), `0.5` for example 2 (`G(x + 0.5) = -G(x)`).
    pub fn boundary_shift(&self) -> f64 {
        match self.example {
            Example::HalfPlane => 1.0,
            Example::CircleBand => 0.5,
        }
    }

    /// Half of the orbit period: `c` for example 1, `c / 2` for example 2.
    pub fn half_period(&self) -> f64 {
        match self.example {
            Example::HalfPlane => self.c,
            Example::CircleBand => self.c / 2.0,
        }
    }

    /// `max |F(x + s) + F(x)|` over `x in [0, 1 - s]` and both coordinates.
    ///
    /// The expression is piecewise linear in `x`, so checking breakpoints
    /// (and breakpoints shifted back by `s`) gives the exact maximum.
    pub fn shift_residual(&self, s: f64) -> f64 {
        if s > 1.0 {
            return 0.0;
        }
        let top = 1.0 - s;
        let mut points: Vec<f64> = vec![0.0, top];
        for b in &self.breakpoints {
            for p in [b.x, b.x - s] {
                if (0.0..=top).contains(&p) {
                    points.push(p);
                }
            }
        }
        points
            .into_iter()
            .map(|x| {
                let (g0, h0) = self.eval(x);
                let (g1, h1) = self.eval(x + s);
                (g1 + g0).abs().max((h1 + h0).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Residual of the boundary condition that selects admissible levels.
    pub fn antiperiodicity_residual(&self) -> f64 {
        self.shift_residual(self.boundary_shift())
    }

    /// Residual of the orbit's own half-period antisymmetry.
    pub fn orbit_residual(&self) -> f64 {
        self.shift_residual(self.half_period())
    }

    /// CSV with header `x,G1,H1,normG,normH`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,G1,H1,normG,normH\n");
        for k in 0..self.x.len() {
            let (g, h) = (self.g[k], self.h[k]);
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                sig(self.x[k]),
                sig(g),
                sig(h),
                sig(g.abs()),
                sig(h.abs())
            );
        }
        out
    }
}
