//! Command-line front end: configuration, the pipeline per subcommand, and
//! report emission.

use std::path::PathBuf;

use cell_complex::Q;
use clap::{Args, Parser, Subcommand, ValueEnum};
use exact_linalg::{Field, FieldKind, PrimeField, Rationals};
use kernel_builder::{
    assemble, slice_check, t0_check, verify_ss_profile, Assembly, KernelError, Model, Options, Report, SliceCheck, Space,
};

#[derive(Debug, Parser)]
#[command(name = "gks", about = "Sheaf kernels of geodesic flows on S^1 and CP^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build the kernel and run every check.
    BuildKernel,
    /// Ext ranks of consecutive regions and of (K-, K+).
    VerifyExt,
    /// Direction profiles against the expected Lagrangian (circle model).
    VerifySs,
    /// Stalk ranks of the kernel on a time slice.
    Slice {
        /// Time of the slice in units of π, e.g. `2` or `1/2`.
        #[arg(long, default_value = "0")]
        t: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Sphere,
    Projective,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "sphere", global = true)]
    pub space: SpaceArg,
    #[arg(long, default_value_t = 1, global = true)]
    pub n: usize,
    /// `f2`, `fp:p` or `rational`.
    #[arg(long, default_value = "f2", global = true)]
    pub field: String,
    /// Lattice subdivisions per π (at least 4).
    #[arg(long, default_value_t = 12, global = true)]
    pub mesh: usize,
    /// Window multiple `w`: the time window is `[−T, T]` with `T = wπ + π/(2·mesh)`.
    #[arg(long, default_value_t = 2, global = true)]
    pub window: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Report path; without it the JSON report goes to standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Allow `--space projective --n 2`.
    #[arg(long, global = true)]
    pub feature_cp2: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(Space, FieldKind, Q), CliError> {
        if self.mesh < 4 {
            return Err(CliError::Config(format!("mesh must be at least 4, got {}", self.mesh)));
        }
        if self.window < 1 {
            return Err(CliError::Config("window multiple must be at least 1".into()));
        }
        if self.n < 1 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        let field = FieldKind::parse(&self.field).map_err(|e| CliError::Config(e.to_string()))?;
        let space = match self.space {
            SpaceArg::Sphere => Space::Sphere(self.n),
            SpaceArg::Projective => Space::Projective(self.n),
        };
        if space == Space::Projective(2) && !self.feature_cp2 {
            return Err(CliError::Config("CP^2 needs --feature-cp2".into()));
        }
        Ok((space, field, self.t_max()))
    }

    /// `T = wπ + π/(2·mesh)`, in units of π.
    pub fn t_max(&self) -> Q {
        Q::from(self.window as i64) + Q::new(1, 2 * self.mesh as i64)
    }
}

/// Runs a subcommand and returns its report; `report.passed` decides the exit code.
pub fn run(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let (space, field, t_max) = cfg.validate()?;
    match field {
        FieldKind::Prime(p) => {
            let f = PrimeField::new(p as u64).map_err(|e| CliError::Config(e.to_string()))?;
            run_with(command, cfg, space, f, t_max)
        }
        FieldKind::Rational => run_with(command, cfg, space, Rationals, t_max),
    }
}

fn parse_time(s: &str) -> Result<Q, CliError> {
    let bad = || CliError::Config(format!("bad slice time `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => Ok(Q::from(s.trim().parse::<i64>().map_err(|_| bad())?)),
    }
}

fn run_with<F: Field>(command: &Command, cfg: &RunConfig, space: Space, field: F, t_max: Q) -> Result<Report, CliError> {
    let slice_t = match command {
        Command::Slice { t } => Some(parse_time(t)?),
        _ => None,
    };
    let model = Model::new(space, cfg.mesh, t_max)?;
    let a = assemble(model, field.clone(), &Options::default())?;
    let t0 = t0_check(&a)?;
    let mut mismatches = Vec::new();
    let mut samples = 0;
    let mut slices = Vec::new();
    match command {
        Command::VerifyExt => {}
        Command::VerifySs => (mismatches, samples) = verify_ss_profile(&a, cfg.seed, cfg.jobs)?,
        Command::Slice { .. } => slices.push(slice_check(&a, slice_t.expect("parsed above"))?),
        Command::BuildKernel => {
            if a.model.is_lattice() {
                (mismatches, samples) = verify_ss_profile(&a, cfg.seed, cfg.jobs)?;
            }
            slices = even_slices(&a)?;
        }
    }
    let passed = t0 && mismatches.is_empty() && slices.iter().all(|s| s.constant);
    Ok(Report {
        space: space.name().to_string(),
        n: space.n(),
        field: field.kind().token(),
        mesh: cfg.mesh,
        window: [(-t_max).to_string(), t_max.to_string()],
        ext_table: a.ext_table.clone(),
        ss_mismatches: mismatches,
        t0_check: t0,
        slice_checks: slices,
        seed: cfg.seed,
        ss_samples: samples,
        passed,
    })
}

/// Slices `t = 2kπ` for every `k ≥ 0` inside the window.
fn even_slices<F: Field>(a: &Assembly<F>) -> Result<Vec<SliceCheck>, CliError> {
    let mut out = Vec::new();
    let mut k = 0;
    while Q::from(2 * k) < a.model.t_max {
        out.push(slice_check(a, Q::from(2 * k))?);
        k += 1;
    }
    Ok(out)
}

/// Short human-readable summary.
pub fn summary(r: &Report) -> String {
    let mut s = format!("{} n={} field={} mesh={} window=[{}, {}]\n", r.space, r.n, r.field, r.mesh, r.window[0], r.window[1]);
    for row in &r.ext_table {
        s += &format!("  Ext({}, {}) = {:?}\n", row.source, row.target, row.ranks);
    }
    s += &format!("  t0_check: {}\n", r.t0_check);
    if r.ss_samples > 0 {
        s += &format!("  ss: {} mismatches over {} vertices\n", r.ss_mismatches.len(), r.ss_samples);
    }
    for c in &r.slice_checks {
        s += &format!("  slice t={}: diagonal {:?}, off-diagonal {:?}, constant {}\n", c.t, c.diagonal, c.off_diagonal, c.constant);
    }
    s += if r.passed { "PASS\n" } else { "FAIL\n" };
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Cli {
        let mut v = vec!["gks"];
        v.extend_from_slice(args);
        Cli::try_parse_from(v).unwrap()
    }

    #[test]
    fn parses_flags_and_validates() {
        let c = cfg(&["build-kernel", "--mesh", "3"]);
        assert!(matches!(c.config.validate(), Err(CliError::Config(_))));
        let c = cfg(&["verify-ext", "--field", "fp:7", "--window", "1"]);
        let (space, field, t) = c.config.validate().unwrap();
        assert_eq!((space, field), (Space::Sphere(1), FieldKind::Prime(7)));
        assert_eq!(t, Q::new(25, 24));
        let c = cfg(&["slice", "--t", "1/2", "--space", "projective", "--n", "2"]);
        assert!(c.config.validate().is_err());
        assert!(cfg(&["verify-ss", "--field", "fp:9"]).config.validate().is_err());
        assert_eq!(parse_time("-3/4").unwrap(), Q::new(-3, 4));
        assert!(parse_time("x").is_err());
    }
}
