use std::path::PathBuf;
use std::process::ExitCode;

use billiards_cli::config::ScenarioConfig;
use billiards_cli::drivers::{
    grid, run_cross_check, run_mirror, run_period, run_render, run_simulate, run_simulate_batch, run_tachyon_scan,
    Outcome,
};
use billiards_cli::error::{CliError, ConfigError, EXIT_OK, EXIT_VALIDATION};
use billiards_cli::estimate::{self, G_METRES_PER_KG};
use billiards_core::mirror::{MirrorParams, DEFAULT_B_MAX, DEFAULT_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "billiards", version, about = "Relativistic billiards on a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArithmeticFlag {
    Float,
    Rational,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the arithmetic mode of the file.
    #[arg(long, value_enum)]
    arithmetic: Option<ArithmeticFlag>,
    /// Overrides the stop condition with an event limit.
    #[arg(long)]
    events: Option<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl ScenarioArgs {
    fn load(&self) -> Result<ScenarioConfig, CliError> {
        let config = ScenarioConfig::load(&self.config)?;
        Ok(apply_overrides(config, self.arithmetic, self.events))
    }
}

fn apply_overrides(
    mut config: ScenarioConfig,
    arithmetic: Option<ArithmeticFlag>,
    events: Option<usize>,
) -> ScenarioConfig {
    if let Some(a) = arithmetic {
        config.arithmetic = Some(
            match a {
                ArithmeticFlag::Float => "float",
                ArithmeticFlag::Rational => "rational",
            }
            .to_string(),
        );
    }
    match events {
        Some(n) => config.with_event_limit(n),
        None => config,
    }
}

#[derive(Subcommand)]
enum Command {
    /// Event-driven simulation of a scenario; several files run concurrently.
    Simulate {
        /// Scenario files (TOML).
        #[arg(long, required = true, num_args = 1..)]
        config: Vec<PathBuf>,
        #[arg(long, value_enum)]
        arithmetic: Option<ArithmeticFlag>,
        #[arg(long)]
        events: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Reduced-map trajectory and analysis of a mirror scenario.
    Mirror(ScenarioArgs),
    /// Compares the four-particle simulation with the reduced map.
    CrossCheck(ScenarioArgs),
    /// Detects a rational rotation number and the period of the solutions.
    Period {
        /// Mirror scenario supplying mu, E and the motion constant.
        #[arg(long, conflicts_with_all = ["mu", "energy", "k"])]
        config: Option<PathBuf>,
        #[arg(long, requires_all = ["energy", "k"])]
        mu: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
        /// Motion constant `x_1 E_2 / sigma_1`.
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_B_MAX)]
        b_max: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Tachyonic classification against counting over a parameter grid.
    TachyonScan {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mu: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        energy: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        sigma: Vec<f64>,
        /// Map steps counted in each time direction.
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Length scale `2 G m` of tachyonic collisions for a particle mass.
    Estimate {
        /// Mass in kilograms.
        #[arg(long, allow_negative_numbers = true)]
        mass: f64,
        /// Gravitational constant in metres per kilogram.
        #[arg(long, default_value_t = G_METRES_PER_KG)]
        g: f64,
    },
    /// Spacetime diagram of an `events.csv`.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn period_command(
    config: Option<PathBuf>,
    mu: Option<f64>,
    energy: Option<f64>,
    k: Option<f64>,
    b_max: u64,
    tol: f64,
) -> Result<Outcome, CliError> {
    let (params, k, sigma1) = match (config, mu, energy, k) {
        (Some(path), ..) => {
            let setup = ScenarioConfig::load(&path)?.mirror_setup::<f64>()?;
            let k = setup.initial.motion_constant();
            (setup.params, k, Some(setup.initial.sigma1))
        }
        (None, Some(mu), Some(energy), Some(k)) => (
            MirrorParams::new(mu, energy).map_err(|e| ConfigError::new("mu", e.to_string()))?,
            k,
            None,
        ),
        _ => return Err(ConfigError::new("period", "give --config or all of --mu, --energy, --k").into()),
    };
    let report = run_period(&params, k, b_max, tol, sigma1)?;
    Ok(Outcome {
        text: report.text(),
        exit: EXIT_OK,
        files: Vec::new(),
    })
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Simulate {
            config,
            arithmetic,
            events,
            out,
        } => {
            if config.len() == 1 {
                let cfg = apply_overrides(ScenarioConfig::load(&config[0])?, arithmetic, events);
                return run_simulate(&cfg, &out);
            }
            let mut text = String::new();
            let mut exit = EXIT_OK;
            let mut files = Vec::new();
            for (path, result) in run_simulate_batch(&config, &out, |c| apply_overrides(c, arithmetic, events)) {
                match result {
                    Ok(o) => {
                        text.push_str(&format!("== {}\n{}", path.display(), o.text));
                        files.extend(o.files);
                    }
                    Err(e) => {
                        text.push_str(&format!("== {}\nerror: {e}\n", path.display()));
                        exit = exit.max(e.exit_code());
                    }
                }
            }
            Ok(Outcome { text, exit, files })
        }
        Command::Mirror(args) => run_mirror(&args.load()?, &args.out),
        Command::CrossCheck(args) => run_cross_check(&args.load()?),
        Command::Period {
            config,
            mu,
            energy,
            k,
            b_max,
            tol,
        } => period_command(config, mu, energy, k, b_max, tol),
        Command::TachyonScan {
            mu,
            energy,
            sigma,
            steps,
            out,
        } => run_tachyon_scan(&grid(&mu, &energy, &sigma), steps, &out),
        Command::Estimate { mass, g } => Ok(Outcome {
            text: estimate::report(mass, g)?,
            exit: EXIT_OK,
            files: Vec::new(),
        }),
        Command::Render { input, out } => run_render(&input, &out),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for degenerate simulations here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_VALIDATION as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
