use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use rayon::prelude::*;
use rjspectral::oracle_shooting::shoot;
use rjspectral::{
    solve, EyringPowell64, FluidParams64, ShootingConfig64, SolverConfig64, SpectralSolution64,
};

use crate::args::{LdiagArgs, OracleArgs, SolveArgs, SweepArgs, SweepParam, TablesArgs};
use crate::output::{csv_writer, fmt, sidecar_path, sink, RunMeta, RunRecord};

/// Whether every solve in the command converged.
pub type Converged = bool;

fn run(cfg: &SolverConfig64) -> Result<SpectralSolution64> {
    solve(cfg).with_context(|| {
        format!(
            "solve failed (n_basis = {}, L = {})",
            cfg.n_basis, cfg.map_scale
        )
    })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<Converged> {
    let cfg = args.solver.fluid_defaults_config();
    let xs = args.eval.points()?;
    let start = Instant::now();
    let sol = run(&cfg)?;
    let wall = start.elapsed().as_secs_f64();
    let record = RunRecord::new(cfg, &sol, &xs)?;
    let mut out = sink(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &record)?;
    writeln!(out)?;
    if let Some(path) = &args.out {
        let meta = RunMeta {
            record: path.clone(),
            wall_time_s: wall,
        };
        fs::write(
            sidecar_path(path),
            serde_json::to_string_pretty(&meta)? + "\n",
        )?;
    }
    if !sol.converged {
        log::warn!(
            "last coefficient update {:e} did not reach the tolerance",
            last_delta(&sol)
        );
    }
    Ok(sol.converged)
}

fn last_delta(sol: &SpectralSolution64) -> f64 {
    sol.reports.last().map_or(f64::NAN, |r| r.coeff_delta_norm)
}

const TABLE_BASES: [usize; 4] = [10, 15, 25, 50];

fn table_abscissae() -> Vec<f64> {
    (0..=10).map(|i| i as f64 * 0.5).collect()
}

pub fn cmd_tables(args: &TablesArgs) -> Result<Converged> {
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let base = args.solver.fluid_defaults_config();
    let shooting = ShootingConfig64::default();
    let model = EyringPowell64::new(FluidParams64::new(base.epsilon, base.delta)?);
    let (solutions, oracle) = rayon::join(
        || {
            TABLE_BASES
                .par_iter()
                .map(|&n| {
                    run(&SolverConfig64 {
                        n_basis: n,
                        ..base.clone()
                    })
                })
                .collect::<Result<Vec<_>>>()
        },
        || shoot(&model, &shooting),
    );
    let solutions = solutions?;
    let oracle = oracle.context("RK4 shooting failed")?;

    let xs = table_abscissae();
    let mut w = csv_writer(Some(&args.out.join("table2.csv")))?;
    w.write_record(["quantity", "x", "n10", "n15", "n25", "n50"])?;
    for (k, name) in ["f", "fp", "fpp"].iter().enumerate() {
        for &x in &xs {
            let mut rec = vec![name.to_string(), fmt(x)];
            for sol in &solutions {
                rec.push(fmt(sol.eval(x, k)?));
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()?;

    let presented = &solutions[0];
    let mut w = csv_writer(Some(&args.out.join("table3.csv")))?;
    w.write_record(["x", "presented_n10", "rk4"])?;
    for i in 0..=5 {
        let x = i as f64;
        let rk4 = oracle
            .trajectory
            .sample(x)
            .context("abscissa beyond the shooting interval")?[1];
        w.write_record([fmt(x), fmt(presented.eval(x, 1)?), fmt(rk4)])?;
    }
    w.flush()?;
    Ok(solutions.iter().all(|s| s.converged))
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Converged> {
    ensure!(!args.values.is_empty(), "sweep needs at least one value");
    let (name, fixed_eps, fixed_delta) = match args.param {
        SweepParam::Epsilon => {
            if args.solver.epsilon.is_some() {
                log::warn!("--epsilon is ignored in an epsilon sweep");
            }
            ("epsilon", 0.0, 0.2)
        }
        SweepParam::Delta => {
            if args.solver.delta.is_some() {
                log::warn!("--delta is ignored in a delta sweep");
            }
            ("delta", 0.1, 0.0)
        }
    };
    let mut values = args.values.clone();
    values.sort_by(f64::total_cmp);
    let xs = args.eval.points()?;
    let results: Vec<_> = values
        .par_iter()
        .map(|&v| {
            let mut cfg = args.solver.config(fixed_eps, fixed_delta);
            match args.param {
                SweepParam::Epsilon => cfg.epsilon = v,
                SweepParam::Delta => cfg.delta = v,
            }
            solve(&cfg)
        })
        .collect();

    let mut w = csv_writer(args.out.as_deref())?;
    w.write_record(["param", "value", "x", "fp", "fpp", "status"])?;
    let mut all = true;
    for (&v, res) in values.iter().zip(&results) {
        match res {
            Ok(sol) => {
                let status = if sol.converged { "ok" } else { "unconverged" };
                all &= sol.converged;
                for &x in &xs {
                    let d = sol.derivatives(x)?;
                    w.write_record([name, &fmt(v), &fmt(x), &fmt(d[1]), &fmt(d[2]), status])?;
                }
            }
            Err(e) => {
                all = false;
                log::error!("{name} = {v}: {e}");
                for &x in &xs {
                    w.write_record([name, &fmt(v), &fmt(x), "", "", "failed"])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(all)
}

pub fn cmd_ldiag(args: &LdiagArgs) -> Result<Converged> {
    ensure!(
        !args.l_values.is_empty(),
        "ldiag needs at least one L value"
    );
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let base = args.solver.fluid_defaults_config();
    let results: Vec<_> = args
        .l_values
        .par_iter()
        .map(|&l| {
            solve(&SolverConfig64 {
                map_scale: l,
                ..base.clone()
            })
        })
        .collect();

    let mut coeffs = csv_writer(Some(&args.out.join("ldiag_coefficients.csv")))?;
    coeffs.write_record(["L", "j", "log10_abs_a"])?;
    let mut resid = csv_writer(Some(&args.out.join("ldiag_residuals.csv")))?;
    resid.write_record(["L", "max_abs_res", "status"])?;
    let mut all = true;
    for (&l, res) in args.l_values.iter().zip(&results) {
        match res {
            Ok(sol) => {
                all &= sol.converged;
                for (j, a) in sol.coefficients().as_slice().iter().enumerate() {
                    coeffs.write_record([fmt(l), j.to_string(), fmt(a.abs().log10())])?;
                }
                let r = sol.reports.last().map_or(f64::NAN, |r| r.residual_norm);
                let status = if sol.converged { "ok" } else { "unconverged" };
                resid.write_record([fmt(l), format!("{r:.10e}"), status.to_string()])?;
            }
            Err(e) => {
                all = false;
                log::error!("L = {l}: {e}");
                resid.write_record([fmt(l), String::new(), "failed".into()])?;
            }
        }
    }
    coeffs.flush()?;
    resid.flush()?;
    Ok(all)
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<Converged> {
    let cfg = ShootingConfig64 {
        x_max: args.x_max,
        step: args.step,
        bracket: (args.bracket_lo, args.bracket_hi),
        tol_far: args.tol_far,
        max_iter: args.max_iter,
    };
    let model = EyringPowell64::new(FluidParams64::new(args.epsilon, args.delta)?);
    let xs = args.eval.points()?;
    ensure!(
        xs.last().is_none_or(|&x| x <= cfg.x_max),
        "--x-max-eval exceeds the shooting length --x-max"
    );
    let shot = shoot(&model, &cfg)?;
    log::info!("s* = {} after {} iterations", shot.s_star, shot.iterations);
    write_oracle(
        args.out.as_deref(),
        &xs,
        |x| shot.trajectory.sample(x),
        shot.s_star,
    )?;
    Ok(true)
}

fn write_oracle<F: Fn(f64) -> Option<[f64; 3]>>(
    out: Option<&Path>,
    xs: &[f64],
    sample: F,
    s_star: f64,
) -> Result<()> {
    let mut w = csv_writer(out)?;
    w.write_record(["x", "f", "fp", "fpp", "s_star"])?;
    for &x in xs {
        let y = sample(x).context("abscissa outside the trajectory")?;
        w.write_record([fmt(x), fmt(y[0]), fmt(y[1]), fmt(y[2]), fmt(s_star)])?;
    }
    w.flush()?;
    Ok(())
}
