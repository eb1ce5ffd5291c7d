//! `attoqs` command-line front end.
//!
//! Every value may come from a flag or from a flat `key = value` file given
//! with `--config`; flags win. Each run echoes its resolved settings into
//! its output.

pub mod commands;
pub mod config;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "attoqs",
    version,
    about = "Tunnel-ionization delays, superluminality quotients and TDSE attoclock runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delays, barrier geometry and quotients at one (Z, F) point.
    Delays,
    /// Figure preset or explicit (Z, F, zeta) grid written to a file.
    Scan,
    /// Switching value at which the intermediate channel turns superluminal.
    ZetaQs,
    /// F_a, F_c and F_zeta=1 for one system.
    CriticalFields,
    /// Pulse propagation, momentum spectra and offset angle.
    Tdse,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Delays => "delays",
            Command::Scan => "scan",
            Command::ZetaQs => "zeta-qs",
            Command::CriticalFields => "critical-fields",
            Command::Tdse => "tdse",
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct Options {
    /// Flat key = value file; flags override its entries.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Nuclear charge (scan: list a,b,c or range start:stop:count, log:start:stop:count).
    #[arg(long = "Z", global = true, value_name = "Z")]
    pub z: Option<String>,
    /// Effective charge; defaults to Z.
    #[arg(long = "Zeff", global = true)]
    pub zeff: Option<String>,
    /// Dirac 1s ionization potential.
    #[arg(long, global = true)]
    pub rel: bool,
    /// Field strength in a.u. (scan: list or range).
    #[arg(long = "F", global = true, value_name = "F")]
    pub f: Option<String>,
    /// Scan axis: field as a fraction of F_a.
    #[arg(long = "F-over-Fa", global = true)]
    pub f_over_fa: Option<String>,
    /// Laser angular frequency in a.u.
    #[arg(long, global = true)]
    pub omega: Option<String>,
    /// Switching parameter in [0, 1] (scan: list or range).
    #[arg(long, global = true)]
    pub zeta: Option<String>,
    /// Barrier treatment: exact|thick.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Named figure scan.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Output file (delays, scan) or directory (tdse).
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// text|csv|json (delays), csv|json (scan).
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// TDSE radial step.
    #[arg(long, global = true)]
    pub dr: Option<String>,
    /// TDSE box radius.
    #[arg(long = "r-max", global = true)]
    pub r_max: Option<String>,
    /// TDSE highest partial wave.
    #[arg(long = "L-max", global = true)]
    pub l_max: Option<String>,
    /// TDSE time step.
    #[arg(long, global = true)]
    pub dt: Option<String>,
    /// TDSE pulse amplitude.
    #[arg(long = "F0", global = true)]
    pub f0: Option<String>,
    /// TDSE ellipticity.
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// TDSE carrier phase offset.
    #[arg(long, global = true)]
    pub cep: Option<String>,
    /// TDSE stepper: triple-jump|crank-nicolson.
    #[arg(long, global = true)]
    pub scheme: Option<String>,
    /// TDSE fixed-point tolerance.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// TDSE fixed-point iteration limit.
    #[arg(long = "max-iter", global = true)]
    pub max_iter: Option<String>,
    /// TDSE memory guard on the (l, m) channel count.
    #[arg(long = "max-channels", global = true)]
    pub max_channels: Option<String>,
    /// Spectrum momentum cutoff.
    #[arg(long = "p-max", global = true)]
    pub p_max: Option<String>,
    /// Spectrum momentum points.
    #[arg(long = "n-p", global = true)]
    pub n_p: Option<String>,
    /// Spectrum angle points.
    #[arg(long = "n-phi", global = true)]
    pub n_phi: Option<String>,
    /// Validate and report the TDSE configuration without propagating.
    #[arg(long = "dry-run", global = true)]
    pub dry_run: bool,
}

impl Options {
    /// Flag values as config entries.
    pub fn to_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new();
        let pairs: [(&str, &Option<String>); 24] = [
            ("Z", &self.z),
            ("Zeff", &self.zeff),
            ("F", &self.f),
            ("F_over_Fa", &self.f_over_fa),
            ("omega", &self.omega),
            ("zeta", &self.zeta),
            ("mode", &self.mode),
            ("preset", &self.preset),
            ("out", &self.out),
            ("format", &self.format),
            ("dr", &self.dr),
            ("r_max", &self.r_max),
            ("L_max", &self.l_max),
            ("dt", &self.dt),
            ("F0", &self.f0),
            ("epsilon", &self.epsilon),
            ("cep", &self.cep),
            ("scheme", &self.scheme),
            ("tol", &self.tol),
            ("max_iter", &self.max_iter),
            ("max_channels", &self.max_channels),
            ("p_max", &self.p_max),
            ("n_p", &self.n_p),
            ("n_phi", &self.n_phi),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cfg.set(k, v.trim())?;
            }
        }
        if self.rel {
            cfg.set("rel", "true")?;
        }
        if self.dry_run {
            cfg.set("dry_run", "true")?;
        }
        Ok(cfg)
    }
}

/// Merges the config file with the flags and dispatches.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.options.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::new(),
    };
    cfg.override_with(&cli.options.to_config()?);
    match cli.command {
        Command::Delays => commands::delays(&cfg),
        Command::Scan => commands::scan(&cfg),
        Command::ZetaQs => commands::zeta_qs(&cfg),
        Command::CriticalFields => commands::critical_fields(&cfg),
        Command::Tdse => commands::tdse(&cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_map_to_keys() {
        let cli = Cli::parse_from(["attoqs", "delays", "--Z", "18", "--F", "1", "--rel", "--L-max", "4"]);
        let cfg = cli.options.to_config().unwrap();
        assert_eq!(cfg.get("Z"), Some("18"));
        assert_eq!(cfg.get("L_max"), Some("4"));
        assert!(cfg.bool("rel").unwrap());
        assert_eq!(cli.command.name(), "delays");
    }
}
