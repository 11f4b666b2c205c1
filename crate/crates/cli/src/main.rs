use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sklyanin_cli::cache::{Cache, Entry};
use sklyanin_cli::commands::{cmd_blowup, cmd_example, cmd_rr, cmd_sklyanin, cmd_veff, parse_params};
use sklyanin_cli::config::{divisor_json, Config, Div, Format};
use sklyanin_cli::output::render;
use sklyanin_core::divisor::Divisor;
use sklyanin_core::report::Report;
use sklyanin_core::virtual_blowup::X2Mode;
use sklyanin_core::{Error, Result};

/// Exact computations in twisted homogeneous coordinate rings of an elliptic
/// curve, their blowups, and the three-generator Sklyanin algebra.
///
/// Every command prints expected-versus-computed rows and exits with 0 iff
/// all of them agree (1 on a mismatch, 2 on an error).
#[derive(Parser, Debug)]
#[command(name = "sklyanin", version)]
struct Cli {
    /// TOML configuration; the built-in default curve is used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `engine.max_degree`.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Overrides `engine.format`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for commands that draw a random divisor when none is given.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for cached output, shared safely between processes.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riemann-Roch basis and dimension of L(D).
    Rr {
        /// JSON list of {"point": [x, y] | "infinity" | name, "coeff": k}.
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Virtual effectiveness, decomposition and normalized divisor.
    Veff {
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Blowup S(d) at an effective divisor of degree <= 2.
    Blowup {
        #[arg(long)]
        divisor: String,
    },
    /// The virtual-blowup example U = k<X_1, X_2, X_3>.
    Example {
        /// Point name, e.g. `p` or `4t`.
        #[arg(long, default_value = "p")]
        point: String,
        /// Replace X_2 by the whole subtracted piece (expected to fail).
        #[arg(long)]
        full_piece: bool,
    },
    /// Graded dimensions, central cubic and S/gS for given parameters.
    Sklyanin {
        #[arg(long, default_value = "1,2,3", allow_hyphen_values = true)]
        params: String,
    },
}

fn random_divisor(cfg: &Config, seed: u64, effective: bool) -> Div {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Divisor::zero();
    let base = cfg.points.values().next().cloned().unwrap_or_else(|| cfg.sigma.multiple_of_t(4));
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let p = cfg.sigma.twist_point(&base, rng.gen_range(-3..=3));
        if cfg.curve().is_two_torsion(&p) {
            continue;
        }
        let c = if effective { rng.gen_range(1..=2) } else { rng.gen_range(-2..=2) };
        d.add_term(p, c);
    }
    d
}

fn divisor_arg(cfg: &Config, arg: Option<&str>, seed: Option<u64>, effective: bool) -> Result<Div> {
    match (arg, seed) {
        (Some(s), _) => cfg.parse_divisor(s),
        (None, Some(seed)) => Ok(random_divisor(cfg, seed, effective)),
        (None, None) => Err(Error::Input("pass --divisor, or --seed to draw one".into())),
    }
}

fn run(cli: &Cli, cfg: &Config, max_degree: usize) -> Result<(&'static str, Report)> {
    Ok(match &cli.command {
        Command::Rr { divisor } => ("rr", cmd_rr(cfg, &divisor_arg(cfg, divisor.as_deref(), cli.seed, true)?)?),
        Command::Veff { divisor } => ("veff", cmd_veff(cfg, &divisor_arg(cfg, divisor.as_deref(), cli.seed, false)?)?),
        Command::Blowup { divisor } => ("blowup", cmd_blowup(cfg, &cfg.parse_divisor(divisor)?, max_degree)?),
        Command::Example { point, full_piece } => {
            let mode = if *full_piece { X2Mode::FullPiece } else { X2Mode::Product };
            ("example", cmd_example(cfg, point, max_degree, mode)?)
        }
        Command::Sklyanin { params } => ("sklyanin", cmd_sklyanin(&parse_params(params)?, max_degree.min(7))?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => Config::from_file(path),
        None => Ok(Config::default()),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let max_degree = cli.max_degree.unwrap_or(cfg.max_degree);
    let format = cli.format.unwrap_or(cfg.format);

    let cache = match cli.cache.as_deref().map(Cache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cache: {e}");
            return ExitCode::from(2);
        }
    };
    let config_text = cli.config.as_deref().map(std::fs::read_to_string).transpose().ok().flatten().unwrap_or_default();
    let key = Cache::key(&[&format!("{:?}", cli.command), &config_text, &max_degree.to_string(), &format!("{format:?}"), &format!("{:?}", cli.seed)]);
    if let Some(entry) = cache.as_ref().and_then(|c| c.get(&key)) {
        print!("{}", entry.output);
        return if entry.pass { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }

    match run(&cli, &cfg, max_degree) {
        Ok((name, report)) => {
            let entry = Entry { pass: report.all_pass(), output: render(name, &report, format) };
            print!("{}", entry.output);
            if let Some(c) = &cache {
                if let Err(e) = c.put(&key, &entry) {
                    eprintln!("warning: cache: {e}");
                }
            }
            if let Some(d) = seed_divisor(&cli, &cfg) {
                eprintln!("divisor drawn from seed: {d}");
            }
            if entry.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn seed_divisor(cli: &Cli, cfg: &Config) -> Option<serde_json::Value> {
    let (divisor, effective) = match &cli.command {
        Command::Rr { divisor } => (divisor, true),
        Command::Veff { divisor } => (divisor, false),
        _ => return None,
    };
    match (divisor, cli.seed) {
        (None, Some(seed)) => Some(divisor_json(&random_divisor(cfg, seed, effective))),
        _ => None,
    }
}
