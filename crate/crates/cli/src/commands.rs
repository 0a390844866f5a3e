//! Single-experiment subcommands.

use std::fs::File;

use anyhow::{bail, ensure, Context, Result};
use signkernel::bounds::{
    certified_upper_bound, mean_norm, odd_spectrum, poincare_constant, poincare_ratio,
    response_speed, rms_norm,
};
use signkernel::continuum::{admissible_periods, integrate_square_dynamics, quadrature_objective};
use signkernel::continuum::{AdmissiblePeriod, ClosedFormField};
use signkernel::fmt::sig;
use signkernel::solvers::response;
use signkernel::{
    exact_d1, load_matrix, local_search_d1, seesaw_restarts, Example, SeesawOptions, Side,
    SignKernel, SignMatrix, SolveReport,
};

use crate::output::{field_csv, read_field_csv, OutDir};
use crate::{
    BoundArgs, ClosedFormArgs, KernelArgs, KernelSource, Method, OdeArgs, OutputFormat, SolveArgs,
};

/// Relative slack for the spectral Poincaré check.
pub const POINCARE_REL_TOL: f64 = 1e-9;

/// Tolerance for `|G| + |H| = c` along an integrated trajectory.
pub const CONSERVATION_TOL: f64 = 1e-9;

fn example_tag(e: Example) -> String {
    format!("ex{}", e.number())
}

fn build_matrix(source: &KernelSource, n: Option<usize>) -> Result<(String, SignMatrix)> {
    match (source.example, &source.matrix) {
        (Some(e), _) => {
            let n = n.context("--n is required for a built-in kernel")?;
            ensure!(n > 0, "--n must be positive");
            Ok((example_tag(e), e.kernel().discretize(n)?))
        }
        (None, Some(path)) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let a = load_matrix(file).with_context(|| format!("in {}", path.display()))?;
            let a = match n {
                Some(n) => SignKernel::CustomMatrix(a).discretize(n)?,
                None => a,
            };
            Ok(("custom".into(), a))
        }
        (None, None) => bail!("one of --example or --matrix is required"),
    }
}

pub fn kernel(out: &OutDir, args: &KernelArgs) -> Result<bool> {
    let (tag, a) = build_matrix(&args.source, args.n)?;
    let path = out.write(&format!("kernel_{tag}_n{}.txt", a.rows()), &a.to_text())?;
    println!("wrote {}", path.display());
    Ok(true)
}

fn seesaw_options(tol: Option<f64>, max_iter: Option<usize>) -> Result<SeesawOptions> {
    let mut opts = SeesawOptions::default();
    if let Some(t) = tol {
        ensure!(t > 0.0 && t.is_finite(), "--tol must be positive");
        opts.tol = t;
    }
    if let Some(m) = max_iter {
        ensure!(m > 0, "--max-iter must be positive");
        opts.max_iter = m;
    }
    Ok(opts)
}

fn run_solver(a: &SignMatrix, args: &SolveArgs) -> Result<SolveReport> {
    ensure!(args.d > 0, "--d must be positive");
    ensure!(args.restarts > 0, "--restarts must be positive");
    match args.method {
        Method::Exact | Method::LocalSearch if args.d != 1 => {
            bail!("the {:?} method solves d = 1 only; use --method seesaw", args.method)
        }
        Method::Exact => Ok(exact_d1(a)?),
        Method::LocalSearch => Ok(local_search_d1(a, args.restarts, args.seed)?),
        Method::Seesaw => {
            let opts = seesaw_options(args.tol, args.max_iter)?;
            Ok(seesaw_restarts(a, args.d, args.restarts, args.seed, opts)?)
        }
    }
}

pub fn solve(out: &OutDir, args: &SolveArgs) -> Result<bool> {
    let (tag, a) = build_matrix(&args.source, args.n)?;
    let report = run_solver(&a, args)?;
    let stem = format!(
        "solve_{}_{tag}_n{}_d{}",
        report.solver.as_str(),
        a.rows(),
        args.d
    );
    match args.format {
        OutputFormat::Report => {
            let path = out.write(&format!("{stem}.txt"), &report.to_text(args.fields))?;
            println!("wrote {}", path.display());
        }
        OutputFormat::Csv => {
            for (name, field) in [("g", &report.g), ("h", &report.h)] {
                let rows: Vec<&[f64]> = field.rows().collect();
                let path = out.write(&format!("{stem}_{name}.csv"), &field_csv(&rows))?;
                println!("wrote {}", path.display());
            }
        }
    }
    println!("value = {}", sig(report.value));
    println!("stationarity = {}", sig(report.stationarity));
    println!("iterations = {}", report.iterations);
    Ok(check_expected(report.value, args.expect, args.within))
}

fn check_expected(value: f64, expect: Option<f64>, within: f64) -> bool {
    match expect {
        Some(target) => {
            let ok = (value - target).abs() <= within;
            println!(
                "check |value - {}| <= {}: {}",
                sig(target),
                sig(within),
                if ok { "PASS" } else { "FAIL" }
            );
            ok
        }
        None => true,
    }
}

pub fn period_table_csv(table: &[AdmissiblePeriod]) -> String {
    let mut out = String::from("k,c,value\n");
    for p in table {
        out.push_str(&format!("{},{},{}\n", p.k, sig(p.c), sig(p.value)));
    }
    out
}

pub fn ode(out: &OutDir, args: &OdeArgs) -> Result<bool> {
    let (g0, h0) = args.start;
    let tr = integrate_square_dynamics(args.example, args.c, g0, h0, args.samples)?;
    let tag = example_tag(args.example);
    let path = out.write(&format!("ode_{tag}_c{}.csv", sig(args.c)), &tr.to_csv())?;
    println!("wrote {}", path.display());
    let table = admissible_periods(args.kmax);
    let path = out.write("admissible_periods.csv", &period_table_csv(&table))?;
    println!("wrote {}", path.display());

    let (g_end, h_end) = tr.eval(1.0);
    let conservation = tr.conservation_error();
    println!("G(0) = {}, H(0) = {}", sig(g0), sig(h0));
    println!("G(1) = {}, H(1) = {}", sig(g_end), sig(h_end));
    println!("events = {}", tr.events().len());
    println!("conservation_error = {}", sig(conservation));
    println!("boundary_residual = {}", sig(tr.antiperiodicity_residual()));
    println!("orbit_residual = {}", sig(tr.orbit_residual()));
    let ok = conservation <= CONSERVATION_TOL;
    println!(
        "check conservation <= {}: {}",
        sig(CONSERVATION_TOL),
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(ok)
}

pub fn closed_form(out: &OutDir, args: &ClosedFormArgs) -> Result<bool> {
    ensure!(args.n > 0, "--n must be positive");
    let (g, h) = ClosedFormField::pair(args.example, args.d)?;
    let stem = format!("closed_form_{}_d{}", example_tag(args.example), args.d);
    for (name, field) in [("g", &g), ("h", &h)] {
        let path = out.write(&format!("{stem}_{name}.csv"), &field.to_csv(args.n)?)?;
        println!("wrote {}", path.display());
    }
    let value = quadrature_objective(&args.example.kernel(), &g, &h, args.n)?;
    println!("value = {}", sig(value));
    Ok(check_expected(value, args.expect, args.within))
}

pub fn bound(out: &OutDir, args: &BoundArgs) -> Result<bool> {
    let tag = example_tag(args.example);
    let samples = match &args.field {
        Some(path) => read_field_csv(path)?,
        None => {
            let a = args.example.kernel().discretize(args.n)?;
            let report = seesaw_restarts(
                &a,
                args.d,
                args.restarts,
                args.seed,
                SeesawOptions::default(),
            )?;
            println!("seesaw value = {}", sig(report.value));
            let density = response(&a, &report.h, Side::Row)?.density();
            let path = out.write(&format!("bound_field_{tag}_n{}.csv", args.n), &field_csv(&density))?;
            println!("wrote {}", path.display());
            density
        }
    };

    let spectrum = odd_spectrum(&samples, args.example)?;
    let path = out.write(&format!("spectrum_{tag}.csv"), &spectrum.to_csv())?;
    println!("wrote {}", path.display());

    let speed = response_speed(args.example);
    let lambda = poincare_constant(args.example);
    let ratio = poincare_ratio(&samples, args.example)?;
    println!("speed = {}", sig(speed));
    println!("poincare_constant = {}", sig(lambda));
    println!("certified_bound = {}", sig(certified_upper_bound(speed, lambda)?));
    println!("mean_norm = {}", sig(mean_norm(&samples)));
    println!("rms_norm = {}", sig(rms_norm(&samples)));
    println!("max_even_magnitude = {}", sig(spectrum.max_even_magnitude()));
    println!("poincare_ratio = {}", sig(ratio));
    let ok = ratio >= lambda * (1.0 - POINCARE_REL_TOL);
    println!("check poincare_ratio >= constant: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}
