//! Batch front end for the biphoton library.
//!
//! Five subcommands cover the library surface: `table1` prints lineshape
//! coefficient references, `shg-sweep` compares coherent and incoherent
//! upconversion under pump asymmetry, `jsa` builds a photon-pair
//! amplitude and reports its exchange decomposition and purity, `hom`
//! traces the coincidence dip with visibility and delay-estimation
//! bounds, and `validate` runs numerical self-checks.
//!
//! Every run resolves its parameters through the same layering (preset,
//! then config file, then flags) and, when given `--out`, emits a
//! manifest recording the complete resolved set. Feeding that manifest
//! back via `--config` reproduces the run byte for byte.

mod commands;
mod config;
mod output;
mod presets;
mod scenario;

use clap::{Args, Parser, Subcommand};
use config::{usage, CliError, ScenarioConfig};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "biphoton",
    version,
    about = "Photon-pair spectra, two-photon interference, and pump-coherence comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate power-integral ratios for reference lineshapes
    Table1(CommonArgs),
    /// Sweep pump asymmetry and compare both upconversion spectra
    #[command(name = "shg-sweep")]
    ShgSweep(CommonArgs),
    /// Build a pair amplitude; report exchange weights and purity
    Jsa(CommonArgs),
    /// Trace the coincidence dip; report visibility and Fisher information
    Hom(CommonArgs),
    /// Run numerical self-checks and emit a machine-readable report
    Validate(ValidateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Directory for output files; primary data goes to stdout when omitted
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// JSON parameter file, or a manifest emitted by a previous run
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed for stochastic scenarios
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per joint-frequency axis (odd count)
    #[arg(long)]
    grid_count: Option<usize>,
    /// Named parameter bundle for a published scenario
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Monte-Carlo realizations for the convergence check (at least 100)
    #[arg(long)]
    realizations: Option<u64>,
    #[arg(long, hide = true)]
    corrupt_normalization: bool,
}

/// Builds the layered parameter set for one command: preset values first,
/// then the config file, then explicit flags. The preset may be named on
/// the command line or inside the config file (a re-run manifest carries
/// it in its parameters).
fn resolve_config(
    common: &CommonArgs,
    command: &str,
    extra_flags: &[(&str, String)],
) -> Result<ScenarioConfig, CliError> {
    let file_params = match &common.config {
        Some(path) => {
            let manifest = biphoton::io::read_manifest(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            Some(manifest.parameters)
        }
        None => None,
    };

    let preset_name = common
        .preset
        .clone()
        .or_else(|| file_params.as_ref().and_then(|p| p.get("preset").cloned()));

    let mut layers = Vec::new();
    if let Some(name) = &preset_name {
        let preset = presets::find(name).ok_or_else(|| {
            let mut msg = format!("unknown preset {name}; presets for {command}:");
            let known = presets::names_for(command);
            if known.is_empty() {
                msg.push_str(" none");
            }
            for candidate in known {
                let p = presets::find(candidate).expect("names_for returns known names");
                msg.push_str(&format!("\n  {:<18} {}", p.name, p.summary));
            }
            usage(msg)
        })?;
        if !preset.commands.contains(&command) {
            return Err(usage(format!(
                "preset {name} applies to {}, not {command}",
                preset.commands.join(", ")
            )));
        }
        layers.push(preset.to_map());
    }
    if let Some(params) = file_params {
        layers.push(params);
    }

    let mut flag_layer = BTreeMap::new();
    if let Some(seed) = common.seed {
        flag_layer.insert("seed".to_string(), seed.to_string());
    }
    if let Some(count) = common.grid_count {
        flag_layer.insert("grid_count".to_string(), count.to_string());
    }
    for (key, value) in extra_flags {
        flag_layer.insert((*key).to_string(), value.clone());
    }
    layers.push(flag_layer);

    let cfg = ScenarioConfig::from_layers(layers);
    if let Some(name) = preset_name {
        cfg.note("preset", name);
    }
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table1(c) => {
            let cfg = resolve_config(&c, "table1", &[])?;
            commands::table1::run(&cfg, c.out)
        }
        Command::ShgSweep(c) => {
            let cfg = resolve_config(&c, "shg-sweep", &[])?;
            commands::sweep::run(&cfg, c.out)
        }
        Command::Jsa(c) => {
            let cfg = resolve_config(&c, "jsa", &[])?;
            commands::jsa::run(&cfg, c.out)
        }
        Command::Hom(c) => {
            let cfg = resolve_config(&c, "hom", &[])?;
            commands::hom::run(&cfg, c.out)
        }
        Command::Validate(v) => {
            let mut extra = Vec::new();
            if let Some(r) = v.realizations {
                extra.push(("realizations", r.to_string()));
            }
            let cfg = resolve_config(&v.common, "validate", &extra)?;
            commands::validate::run(&cfg, v.common.out, v.corrupt_normalization)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
