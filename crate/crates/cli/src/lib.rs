//! Command-line front end: theorem batteries, limit experiments, distances and
//! plot data.

mod output;

use chabauty_core::catalog::{descriptor_from_json, sample, Family, SubgroupDescriptor};
use chabauty_core::config::ExperimentConfig;
use chabauty_core::experiment::analyze;
use chabauty_core::metric::{chabauty_distance, sig9};
use chabauty_core::verify::{verify_theorem, Profile, Theorem};
use chabauty_core::{Error, Window};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "chabauty", version, about = "Limits of conjugates of subgroups of SL(2,R) x R^2")]
struct Cli {
    /// Worker threads; 0 uses every logical core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct WindowArgs {
    #[arg(long, default_value_t = 3.0)]
    radius: f64,
    #[arg(long, default_value_t = 0.05)]
    mesh: f64,
}

impl WindowArgs {
    fn window(self) -> Result<Window, Error> {
        Window::new(self.radius, self.mesh)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the experiment battery of one or more theorems (1.1 to 1.5).
    Verify {
        #[arg(required = true)]
        theorems: Vec<String>,
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value = "reports")]
        out_dir: PathBuf,
    },
    /// Classify the limit of the sequence described by an experiment config.
    Limit {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value = "reports")]
        out_dir: PathBuf,
    },
    /// Windowed Hausdorff distance between two subgroups.
    Distance {
        /// Descriptor JSON, a path to one, or a bare family tag.
        first: String,
        second: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Print the window samples of a subgroup as CSV.
    Sample {
        descriptor: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Write plot-ready CSVs for an experiment config: the trace and the samples
    /// of every conjugate and of the fitted limit.
    EmitPlot {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value = "plots")]
        out_dir: PathBuf,
    },
}

/// Command-line values that replace the config's own.
#[derive(Args)]
struct Overrides {
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    mesh: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    indices: Option<Vec<u64>>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_config(path: &Path, o: &Overrides) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let w = Window::new(o.radius.unwrap_or(cfg.window.radius), o.mesh.unwrap_or(cfg.window.mesh))?;
    cfg.window = w;
    if let Some(t) = o.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidConfig { field: "tol".into(), message: "must be positive".into() }.into());
        }
        cfg.tol = t;
    }
    if let Some(ix) = &o.indices {
        chabauty_core::metric::validate_indices(ix)?;
        cfg.indices = ix.clone();
    }
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

/// Inline JSON, a file holding JSON, or a family tag without parameters.
fn load_descriptor(arg: &str) -> Result<SubgroupDescriptor, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return Ok(descriptor_from_json(arg)?);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
        return Ok(descriptor_from_json(&text)?);
    }
    Ok(SubgroupDescriptor::new(Family::from_tag(arg, &[])?))
}

/// A failure outranks an inconclusive verdict.
fn worse(a: u8, b: u8) -> u8 {
    if a == EXIT_FAIL || b == EXIT_FAIL {
        EXIT_FAIL
    } else {
        a.max(b)
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Verify { theorems, profile, seed, tol, window, out_dir } => {
            let ids = theorems.iter().map(|s| s.parse::<Theorem>()).collect::<Result<Vec<_>, _>>()?;
            let profile: Profile = profile.parse()?;
            let w = window.window()?;
            let mut code = 0;
            for t in ids {
                let report = verify_theorem(t, profile, seed, &w, tol)?;
                let dir = out_dir.join(format!("theorem_{t}"));
                output::write_verify(&dir, &report, cli.jobs)?;
                for c in &report.cases {
                    println!("{} {:<13} {:<40} {}", t, output::status_str(c.status), c.id, c.detail);
                }
                for id in report.failing() {
                    eprintln!("FAIL {t} {id}");
                }
                for id in report.inconclusive() {
                    eprintln!("INCONCLUSIVE {t} {id}");
                }
                code = worse(code, report.exit_code() as u8);
                println!("{t}: reports in {}", dir.display());
            }
            Ok(code)
        }
        Cmd::Limit { config, overrides, out_dir } => {
            let cfg = load_config(&config, &overrides)?;
            let report = analyze(&cfg.base, &cfg.schema, &cfg.window, &cfg.indices, cfg.tol)?;
            output::write_limit(&out_dir, &cfg, &report, cli.jobs)?;
            let c = &report.classification;
            println!("family {} residual {} verdict {}", c.descriptor, sig9(c.residual), report.trace.verdict.as_str());
            if report.is_inconclusive() {
                eprintln!("limit unresolved: definitive {}, settled {}", c.definitive, report.settled);
                Ok(EXIT_INCONCLUSIVE)
            } else {
                Ok(0)
            }
        }
        Cmd::Distance { first, second, window } => {
            let (a, b) = (load_descriptor(&first)?, load_descriptor(&second)?);
            let e = chabauty_distance(&a, &b, &window.window()?);
            println!("value {}\nforward {}\nbackward {}", sig9(e.value), sig9(e.forward), sig9(e.backward));
            Ok(0)
        }
        Cmd::Sample { descriptor, window } => {
            let d = load_descriptor(&descriptor)?;
            print!("{}", output::samples_csv(&sample(&d, &window.window()?)));
            Ok(0)
        }
        Cmd::EmitPlot { config, overrides, out_dir } => {
            let cfg = load_config(&config, &overrides)?;
            let report = analyze(&cfg.base, &cfg.schema, &cfg.window, &cfg.indices, cfg.tol)?;
            output::write_plot(&out_dir, &cfg, &report)?;
            println!("plot data in {}", out_dir.display());
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command on a pool of
/// `--jobs` threads. Returns the process exit code.
pub fn run_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { EXIT_USAGE } else { 0 };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| run(cli)) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(p, e)) => {
            eprintln!("error: {}: {e}", p.display());
            EXIT_IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_tags_parse_as_descriptors() {
        assert_eq!(load_descriptor("Borel").unwrap(), SubgroupDescriptor::new(Family::Borel));
        assert!(load_descriptor("NotAFamily").is_err());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [0, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_IO];
        let set: std::collections::BTreeSet<_> = codes.iter().collect();
        assert_eq!(set.len(), codes.len());
    }
}
