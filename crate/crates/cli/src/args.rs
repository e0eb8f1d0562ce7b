use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rjspectral::{InitialIterate, SolverConfig64};

#[derive(Debug, Parser)]
#[command(
    name = "rjspectral",
    version,
    about = "Rational Jacobi collocation for the Eyring-Powell boundary layer"
)]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve once and write a JSON run record.
    Solve(SolveArgs),
    /// Reproduce the N-comparison and RK4-comparison tables as CSV.
    Tables(TablesArgs),
    /// Solve over a list of epsilon or delta values.
    Sweep(SweepArgs),
    /// Coefficient magnitudes and residuals for several map scales.
    Ldiag(LdiagArgs),
    /// RK4 shooting reference solution.
    Oracle(OracleArgs),
}

/// Accepts a positive count or `tol` (run to tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iters {
    Fixed(usize),
    ToTolerance,
}

fn parse_iters(s: &str) -> Result<Iters, String> {
    if s.eq_ignore_ascii_case("tol") {
        return Ok(Iters::ToTolerance);
    }
    match s.parse::<usize>() {
        Ok(0) => Err("iteration count must be at least 1".into()),
        Ok(n) => Ok(Iters::Fixed(n)),
        Err(_) => Err(format!("expected a positive integer or `tol`, got `{s}`")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    ConstantOne,
    ZeroTrial,
}

impl From<InitArg> for InitialIterate {
    fn from(a: InitArg) -> Self {
        match a {
            InitArg::ConstantOne => InitialIterate::ConstantOne,
            InitArg::ZeroTrial => InitialIterate::ZeroTrial,
        }
    }
}

/// Solver knobs shared by the solving subcommands.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Number of basis functions (and collocation points).
    #[arg(long, default_value_t = 50)]
    pub n_basis: usize,
    /// Map scale L.
    #[arg(long, default_value_t = 15.0)]
    pub map_l: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Fluid parameter epsilon [default: 0.3; sweep: 0.1].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Fluid parameter delta [default: 0.1; sweep: 0.2].
    #[arg(long)]
    pub delta: Option<f64>,
    /// QLM iterations, or `tol` to stop on the update tolerance.
    #[arg(long, default_value = "15", value_parser = parse_iters)]
    pub iters: Iters,
    /// Max-norm tolerance on the coefficient update.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Iteration cap when running to tolerance.
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    /// Starting iterate.
    #[arg(long, value_enum, default_value_t = InitArg::ConstantOne)]
    pub init: InitArg,
}

impl SolverArgs {
    pub fn config(&self, epsilon: f64, delta: f64) -> SolverConfig64 {
        SolverConfig64 {
            n_basis: self.n_basis,
            map_scale: self.map_l,
            alpha: self.alpha,
            beta: self.beta,
            epsilon: self.epsilon.unwrap_or(epsilon),
            delta: self.delta.unwrap_or(delta),
            iters: match self.iters {
                Iters::Fixed(n) => Some(n),
                Iters::ToTolerance => None,
            },
            tol: self.tol,
            max_iter: self.max_iter,
            init: self.init.into(),
        }
    }

    /// Config with the default fluid parameters.
    pub fn fluid_defaults_config(&self) -> SolverConfig64 {
        self.config(0.3, 0.1)
    }
}

/// Output abscissae `0, step, …, x_max`.
#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Largest output abscissa.
    #[arg(long, default_value_t = 5.0)]
    pub x_max_eval: f64,
    /// Spacing of output abscissae.
    #[arg(long, default_value_t = 0.5)]
    pub x_step: f64,
}

impl EvalArgs {
    pub fn points(&self) -> anyhow::Result<Vec<f64>> {
        anyhow::ensure!(
            self.x_step > 0.0 && self.x_max_eval >= 0.0 && self.x_max_eval.is_finite(),
            "need --x-step > 0 and a finite --x-max-eval >= 0"
        );
        let n = (self.x_max_eval / self.x_step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| i as f64 * self.x_step).collect())
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    /// JSON output path (stdout if absent); timing goes to `<out>.meta.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Directory for table2.csv and table3.csv.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Epsilon,
    Delta,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to vary.
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Comma-separated parameter values.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub values: Vec<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    /// CSV output path (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LdiagArgs {
    /// Comma-separated map scales L.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "15")]
    pub l_values: Vec<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Directory for ldiag_coefficients.csv and ldiag_residuals.csv.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 0.3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Truncation length for the far boundary.
    #[arg(long, default_value_t = 20.0)]
    pub x_max: f64,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    pub bracket_lo: f64,
    #[arg(long, default_value_t = -0.1, allow_negative_numbers = true)]
    pub bracket_hi: f64,
    /// Tolerance on |f'(x_max)|.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_far: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    #[command(flatten)]
    pub eval: EvalArgs,
    /// CSV output path (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iters_parsing() {
        assert_eq!(parse_iters("15"), Ok(Iters::Fixed(15)));
        assert_eq!(parse_iters("TOL"), Ok(Iters::ToTolerance));
        assert!(parse_iters("0").is_err());
        assert!(parse_iters("-3").is_err());
        assert!(parse_iters("ten").is_err());
    }

    #[test]
    fn eval_points() {
        let e = EvalArgs {
            x_max_eval: 5.0,
            x_step: 0.5,
        };
        let p = e.points().unwrap();
        assert_eq!(p.len(), 11);
        assert_eq!(p[10], 5.0);
        let e = EvalArgs {
            x_max_eval: 1.0,
            x_step: 0.3,
        };
        assert_eq!(e.points().unwrap().len(), 4);
        let bad = EvalArgs {
            x_max_eval: 1.0,
            x_step: 0.0,
        };
        assert!(bad.points().is_err());
    }

    #[test]
    fn command_tree_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
