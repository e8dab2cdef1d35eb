use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fluxatom::constants::{apply_overrides, parse_config, ConfigValue};
use fluxatom::reference::{load_experimental, load_species, Registry};
use fluxatom::{EnergyUnit, Half, Level};
use fluxatom_cli::{cmd_hyperfine, cmd_levels, cmd_spin_orbit, cmd_verify, cmd_zeeman, Context, Format, Model, Regime, Report, Suite};

#[derive(Debug, Parser)]
#[command(name = "fluxatom", version, about = "Flux-quantized Sommerfeld atom: levels, splittings and oracle checks")]
struct Cli {
    /// key=value file overriding physical constants
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    /// Electron spin g-factor: a number or `codata`
    #[arg(long = "g-s", global = true)]
    g_s: Option<String>,
    /// Species table replacing the built-in one (name,Z,A,I,g_I)
    #[arg(long, global = true)]
    species_file: Option<PathBuf>,
    /// Experimental values replacing the built-in ones (key,value,unit,source)
    #[arg(long, global = true)]
    experimental_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Significant digits in table and csv output
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    /// Energy unit: J, eV, MHz or 1/cm
    #[arg(long, global = true, value_parser = parse_unit)]
    unit: Option<EnergyUnit>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gross-structure energies W(n)
    Levels {
        #[arg(long, default_value_t = 1)]
        z: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Magnetic sublevels in a uniform field
    Zeeman {
        /// State such as 2p3/2
        state: Level,
        /// Field strength, T
        #[arg(long = "B", visible_alias = "b", allow_negative_numbers = true)]
        b_field: f64,
        #[arg(long, value_enum)]
        regime: Regime,
        #[arg(long, default_value_t = 1)]
        z: u32,
    },
    /// Hyperfine constant, F levels and interval
    Hyperfine {
        state: Level,
        species: String,
        #[arg(long, value_enum)]
        model: Model,
        /// Tilt of the nuclear moment (simple model, default 2/3)
        #[arg(long, allow_negative_numbers = true)]
        cos_beta: Option<f64>,
        #[arg(long)]
        experimental_key: Option<String>,
    },
    /// Oracle residuals; exits with 2 on failure
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Focal-moment spin-orbit shift against the standard formula
    SpinOrbit {
        state: Level,
        /// Default 1
        #[arg(long, allow_negative_numbers = true)]
        cos_beta: Option<f64>,
        /// Default l
        #[arg(long)]
        n_phi: Option<Half>,
        #[arg(long, default_value_t = 1)]
        z: u32,
    },
}

fn parse_unit(s: &str) -> Result<EnergyUnit, String> {
    EnergyUnit::from_symbol(s).ok_or_else(|| format!("unknown unit `{s}`; expected J, eV, MHz or 1/cm"))
}

fn context(cli: &Cli) -> fluxatom::Result<Context> {
    let mut pairs = match &cli.constants {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => Vec::new(),
    };
    if let Some(g) = &cli.g_s {
        let value = if g.eq_ignore_ascii_case("codata") {
            ConfigValue::Codata
        } else {
            ConfigValue::Number(g.parse().map_err(|_| fluxatom::Error::Parse {
                line: 0,
                message: format!("--g-s expects a number or `codata`, got `{g}`"),
            })?)
        };
        pairs.retain(|(k, _)| k != "g_s");
        pairs.push(("g_s".into(), value));
    }
    let consts = apply_overrides(pairs.iter().map(|(k, v)| (k.as_str(), *v)))?;
    let mut registry = Registry::builtin();
    if let Some(path) = &cli.species_file {
        registry = registry.with_species(load_species(path)?);
    }
    if let Some(path) = &cli.experimental_file {
        registry = registry.with_experimental(load_experimental(path)?);
    }
    let constants_source = match &cli.constants {
        Some(path) => path.display().to_string(),
        None => "CODATA-2018".into(),
    };
    Ok(Context { consts, registry, unit: cli.unit, constants_source })
}

fn run(cli: &Cli) -> fluxatom::Result<Report> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Levels { z, n_max } => cmd_levels(&ctx, *z, *n_max),
        Command::Zeeman { state, b_field, regime, z } => cmd_zeeman(&ctx, *state, *b_field, *regime, *z),
        Command::Hyperfine { state, species, model, cos_beta, experimental_key } => {
            cmd_hyperfine(&ctx, *state, species, *model, *cos_beta, experimental_key.as_deref())
        }
        Command::Verify { suite, tol } => cmd_verify(&ctx, *suite, *tol),
        Command::SpinOrbit { state, cos_beta, n_phi, z } => cmd_spin_orbit(&ctx, *state, *cos_beta, *n_phi, *z),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format, cli.digits));
            if cli.format != Format::Table {
                for e in &report.errors {
                    eprintln!("error: {e}");
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
