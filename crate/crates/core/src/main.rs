use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use raman_slab::scenario::{
    preset, run_scenario, sweep_control_field, ConfigDocument, Overrides, ScenarioError, SweepTable, PRESETS,
};

#[derive(Parser)]
#[command(name = "raman-slab", version, about = "Pulse delays through a Raman-gain doped slab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a JSON config and write spectra, time series and summary.
    Run {
        /// Preset name (see list-presets) or path to a JSON config.
        target: String,
        /// Output directory [default: out/<scenario name>]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Control-field Rabi frequency, units of γ.
        #[arg(long)]
        omega_c: Option<f64>,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Carrier phase times over a list of control-field strengths.
    Sweep {
        /// Comma-separated control-field values, units of γ.
        #[arg(long, value_delimiter = ',', required = true)]
        omega_c: Vec<f64>,
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Print the table as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Resolve and validate a JSON config; prints the resolved scenario.
    Validate { config: PathBuf },
    /// List the built-in scenario presets.
    ListPresets,
}

#[derive(Args, Default)]
struct OverrideArgs {
    /// Thickness rule: resonant or anti-resonant.
    #[arg(long)]
    thickness: Option<String>,
    /// Thickness order m.
    #[arg(long)]
    m: Option<i64>,
    /// Explicit slab thickness in meters.
    #[arg(long)]
    thickness_m: Option<f64>,
    /// Background dielectric constant.
    #[arg(long)]
    eps_b: Option<f64>,
    /// Pump Rabi frequency, units of γ.
    #[arg(long)]
    omega_1: Option<f64>,
    /// Coupling prefactor β, units of γ.
    #[arg(long)]
    beta: Option<f64>,
    /// Pulse width t₀ in seconds.
    #[arg(long)]
    t0: Option<f64>,
    /// Samples on the pulse frequency and time grids.
    #[arg(long)]
    n_samples: Option<usize>,
    #[arg(long)]
    name: Option<String>,
}

impl OverrideArgs {
    fn into_overrides(self, omega_c: Option<f64>) -> Overrides {
        Overrides {
            name: self.name,
            omega_c_over_gamma: omega_c,
            omega_1_over_gamma: self.omega_1,
            beta_over_gamma: self.beta,
            eps_b: self.eps_b,
            thickness_rule: self.thickness,
            m: self.m,
            thickness_m: self.thickness_m,
            t0_seconds: self.t0,
            n_samples: self.n_samples,
            ..Overrides::default()
        }
    }
}

fn document_for(target: &str) -> Result<ConfigDocument, ScenarioError> {
    if preset(target).is_some() {
        return Ok(ConfigDocument {
            preset: Some(target.to_string()),
            ..ConfigDocument::default()
        });
    }
    let path = PathBuf::from(target);
    if !path.exists() {
        return Err(ScenarioError::UnknownPreset(target.to_string()));
    }
    raman_slab::scenario::load_config_document(&path)
}

fn print_table(table: &SweepTable) {
    println!(
        "# scenario {} ({} thickness), d/c = {:.6e} /gamma",
        table.scenario, table.thickness, table.transit_time_gamma
    );
    println!(
        "{:>10} {:>16} {:>16} {:>12} {:>12}",
        "omega_c", "tau_r_gamma", "tau_t_gamma", "refl", "trans"
    );
    let regime = |s: bool| if s { "superluminal" } else { "subluminal" };
    for row in &table.rows {
        println!(
            "{:>10} {:>16.6e} {:>16.6e} {:>12} {:>12}",
            row.omega_c,
            row.tau_r_gamma,
            row.tau_t_gamma,
            regime(row.reflection_superluminal),
            regime(row.transmission_superluminal)
        );
    }
    for t in &table.transitions {
        println!(
            "# {:?} becomes {} between omega_c = {} and {}",
            t.channel,
            regime(t.to_superluminal),
            t.omega_c_from,
            t.omega_c_to
        );
    }
}

fn run(cli: Cli) -> Result<(), ScenarioError> {
    match cli.command {
        Command::Run {
            target,
            out,
            omega_c,
            overrides,
        } => {
            let scenario = document_for(&target)?.resolve(&overrides.into_overrides(omega_c))?;
            let out = out.unwrap_or_else(|| PathBuf::from("out").join(&scenario.name));
            let summary = run_scenario(&scenario, &out)?;
            if let Some(p) = &summary.phase_times {
                println!(
                    "{}: tau_r = {:.6e} /gamma, tau_t = {:.6e} /gamma -> {}",
                    summary.scenario,
                    p.tau_r_gamma,
                    p.tau_t_gamma,
                    out.display()
                );
            } else {
                println!("{} -> {}", summary.scenario, out.display());
            }
        }
        Command::Sweep {
            omega_c,
            preset,
            config,
            json,
            overrides,
        } => {
            let doc = match (preset, config) {
                (_, Some(path)) => raman_slab::scenario::load_config_document(&path)?,
                (Some(name), None) => ConfigDocument {
                    preset: Some(name),
                    ..ConfigDocument::default()
                },
                (None, None) => ConfigDocument::default(),
            };
            let scenario = doc.resolve(&overrides.into_overrides(None))?;
            let table = sweep_control_field(&scenario, &omega_c)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&table).expect("serializable table"));
            } else {
                print_table(&table);
            }
        }
        Command::Validate { config } => {
            let scenario = raman_slab::scenario::load_config(&config)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&scenario).expect("serializable scenario")
            );
        }
        Command::ListPresets => {
            for p in PRESETS {
                println!("{:<6} {}", p.name, p.description);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(2)
        }
    }
}
