use std::f64::consts::PI;

use signkernel::continuum::{
    admissible_periods, closed_form_response, integrate_square_dynamics, quadrature_objective,
    ClosedFormField, Role,
};
use signkernel::solvers::response;
use signkernel::{objective, stationarity_residual, Example, Side, TWO_OVER_PI};

const EXAMPLES: [Example; 2] = [Example::HalfPlane, Example::CircleBand];

fn start_on_square(c: f64, t: f64) -> (f64, f64) {
    // t in [0, 4) walks the four sides
    let s = t.fract() * c;
    match t as u32 {
        0 => (c - s, s),
        1 => (-s, c - s),
        2 => (s - c, -s),
        _ => (s, s - c),
    }
}

#[test]
fn conservation_and_quantization() {
    for ex in EXAMPLES {
        for (c, admissible) in [
            (1.0, true),
            (0.5, false),
            (1.0 / 3.0, true),
            (0.25, false),
            (0.2, true),
        ] {
            for t in [0.0, 0.3, 1.5, 2.75, 3.9] {
                let (g0, h0) = start_on_square(c, t);
                let tr = integrate_square_dynamics(ex, c, g0, h0, 257).unwrap();
                assert!(tr.conservation_error() < 1e-9);
                let res = tr.antiperiodicity_residual();
                if admissible {
                    assert!(res < 1e-9, "{ex:?} c={c} t={t}: {res}");
                    assert!(tr.orbit_residual() < 1e-9);
                } else {
                    assert!(res > 0.1, "{ex:?} c={c} t={t}: {res}");
                }
            }
        }
    }
}

#[test]
fn derivative_law_by_finite_differences() {
    for ex in EXAMPLES {
        let tr = integrate_square_dynamics(ex, 1.0 / 3.0, 0.1, 1.0 / 3.0 - 0.1, 3).unwrap();
        let events = tr.events();
        let step = 1e-7;
        for k in 1..200 {
            let x = k as f64 / 200.0;
            if events.iter().any(|e| (e - x).abs() < 2.0 * step) {
                continue;
            }
            let (g1, h1) = tr.eval(x + step);
            let (g0, h0) = tr.eval(x - step);
            let (vg, vh) = tr.velocity(x);
            assert!(((g1 - g0) / (2.0 * step) - vg).abs() < 1e-6);
            assert!(((h1 - h0) / (2.0 * step) - vh).abs() < 1e-6);
        }
    }
}

#[test]
fn period_table_maximizer() {
    let table = admissible_periods(4);
    let best = table
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .unwrap();
    assert_eq!(best.c, 1.0);
    assert_eq!(table[0], *best);
}

#[test]
fn quadrature_values_at_1000() {
    for ex in EXAMPLES {
        for (d, want) in [(1, 0.5), (2, TWO_OVER_PI)] {
            let (g, h) = ClosedFormField::pair(ex, d).unwrap();
            let v = quadrature_objective(&ex.kernel(), &g, &h, 1000).unwrap();
            assert!((v - want).abs() < 1e-3, "{ex:?} d={d}: {v}");
        }
    }
}

#[test]
fn quadrature_agrees_with_discrete_objective() {
    for ex in EXAMPLES {
        for d in [1, 2] {
            for n in [16, 50, 128] {
                let (g, h) = ClosedFormField::pair(ex, d).unwrap();
                let q = quadrature_objective(&ex.kernel(), &g, &h, n).unwrap();
                let a = ex.kernel().discretize(n).unwrap();
                let o = objective(&a, &g.sample(n).unwrap(), &h.sample(n).unwrap()).unwrap();
                assert!((q - o).abs() < 1e-12, "{ex:?} d={d} n={n}");
            }
        }
    }
}

#[test]
fn step_forms_are_stationary_on_grids_divisible_by_four() {
    for ex in EXAMPLES {
        for n in [4, 8, 64, 100] {
            let (g, h) = ClosedFormField::pair(ex, 1).unwrap();
            let a = ex.kernel().discretize(n).unwrap();
            let r = stationarity_residual(&a, &g.sample(n).unwrap(), &h.sample(n).unwrap()).unwrap();
            assert!(r <= 1e-9, "{ex:?} n={n}: {r}");
        }
    }
}

#[test]
fn rotating_forms_stationarity() {
    // circle band: the discretized kernel is circulant, so the sampled
    // rotation is an exact eigenvector and the pair is stationary
    let ex = Example::CircleBand;
    let (g, h) = ClosedFormField::pair(ex, 2).unwrap();
    let a = ex.kernel().discretize(64).unwrap();
    let r = stationarity_residual(&a, &g.sample(64).unwrap(), &h.sample(64).unwrap()).unwrap();
    assert!(r <= 1e-9, "{r}");

    // half plane: the -1 diagonal tie rotates every discrete response by
    // π/(2n) (geometric-sum identity), giving residual 2 sin(π/(4n))
    let ex = Example::HalfPlane;
    let (g, h) = ClosedFormField::pair(ex, 2).unwrap();
    for n in [16, 64, 256] {
        let a = ex.kernel().discretize(n).unwrap();
        let r = stationarity_residual(&a, &g.sample(n).unwrap(), &h.sample(n).unwrap()).unwrap();
        let want = 2.0 * (PI / (4.0 * n as f64)).sin();
        assert!((r - want).abs() < 1e-12, "n={n}: {r} vs {want}");
    }
}

#[test]
fn discrete_response_approaches_analytic_response() {
    for ex in EXAMPLES {
        let n = 512;
        let (_, h) = ClosedFormField::pair(ex, 2).unwrap();
        let a = ex.kernel().discretize(n).unwrap();
        let resp = response(&a, &h.sample(n).unwrap(), Side::Row).unwrap();
        for i in (0..n).step_by(37) {
            let x = (i as f64 + 0.5) / n as f64;
            let want = closed_form_response(ex, x);
            let got = resp.density_row(i);
            let err = ((got[0] - want[0]).powi(2) + (got[1] - want[1]).powi(2)).sqrt();
            assert!(err < 10.0 / n as f64, "{ex:?} x={x}: {err}");
        }
    }
}

#[test]
fn shifted_partner_is_quarter_translate() {
    for d in [1, 2] {
        let (_, h) = ClosedFormField::pair(Example::CircleBand, d).unwrap();
        let ht = ClosedFormField::new(Example::CircleBand, d, Role::ShiftedH).unwrap();
        for k in 0..40 {
            let x = (k as f64 + 0.5) / 40.0;
            let a = ht.eval(x).unwrap();
            let b = h.eval((x + 0.25).fract()).unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() < 1e-12, "d={d} x={x}");
            }
        }
    }
}
