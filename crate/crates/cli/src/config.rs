//! Flat `key = value` run configuration. Flags and config-file entries
//! share one key namespace; flags override the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Environment variable that redirects relative output paths.
pub const OUT_DIR_ENV: &str = "ATTOQS_OUT_DIR";

/// Every accepted key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("Z", "nuclear charge (scan: value, list a,b,c or range start:stop:count / log:start:stop:count)"),
    ("Zeff", "effective charge; defaults to Z"),
    ("rel", "relativistic (Dirac 1s) ionization potential: true|false"),
    ("F", "field strength in a.u. (scan: value, list or range)"),
    ("F_over_Fa", "scan axis: field as a fraction of F_a"),
    ("omega", "laser angular frequency in a.u."),
    ("zeta", "switching parameter in [0, 1] (scan: value, list or range)"),
    ("mode", "barrier treatment for intermediate quotients: exact|thick"),
    ("preset", "named figure scan"),
    ("out", "output file (scan, delays) or directory (tdse)"),
    ("format", "text|csv|json (delays); csv|json (scan)"),
    ("dr", "TDSE radial step"),
    ("r_max", "TDSE box radius"),
    ("L_max", "TDSE highest partial wave"),
    ("dt", "TDSE time step; default min(0.02, 0.02/Zeff^2)"),
    ("F0", "TDSE pulse amplitude"),
    ("epsilon", "TDSE ellipticity"),
    ("cep", "TDSE carrier phase offset"),
    ("scheme", "TDSE stepper: triple-jump|crank-nicolson"),
    ("tol", "TDSE fixed-point tolerance"),
    ("max_iter", "TDSE fixed-point iteration limit"),
    ("max_channels", "TDSE memory guard: maximum (l,m) channel count"),
    ("p_max", "spectrum momentum cutoff"),
    ("n_p", "spectrum momentum points"),
    ("n_phi", "spectrum angle points"),
    ("dry_run", "tdse: resolve and validate only: true|false"),
];

fn known(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), CliError> {
        if !known(key) {
            return Err(CliError::Config(format!("unknown key '{key}'")));
        }
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value, got '{line}'", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if cfg.values.contains_key(k) {
                return Err(CliError::Config(format!("line {}: key '{k}' given twice", n + 1)));
            }
            cfg.set(k, v).map_err(|e| CliError::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Entries of `other` replace those of `self`.
    pub fn override_with(&mut self, other: &RunConfig) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn bad(key: &str, value: &str, what: &str) -> CliError {
        CliError::Config(format!("{key} = '{value}' is not {what}"))
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| Self::bad(key, v, "a finite number"))
            })
            .transpose()
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        self.f64(key)?.ok_or_else(|| missing(key))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.get(key).map(|v| v.parse::<usize>().map_err(|_| Self::bad(key, v, "a non-negative integer"))).transpose()
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(Self::bad(key, v, "a boolean (true|false)")),
        }
    }
}

pub fn missing(key: &str) -> CliError {
    CliError::Config(format!(
        "missing required value: pass --{} or set '{key} = ...' in the config file",
        flag_name(key)
    ))
}

/// Command-line spelling of a key.
pub fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

/// Fully resolved settings of one run, in a fixed order, for echoing
/// into outputs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Resolved {
    pub command: String,
    pub entries: Vec<(String, String)>,
}

impl Resolved {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// Re-loadable config text.
    pub fn to_config_text(&self) -> String {
        let mut s = format!("# attoqs {}\n", self.command);
        for (k, v) in &self.entries {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    /// The same lines, each prefixed with `# `.
    pub fn to_comment_block(&self) -> String {
        self.to_config_text()
            .lines()
            .map(|l| if l.starts_with('#') { format!("{l}\n") } else { format!("# {l}\n") })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.clone().into());
        }
        serde_json::Value::Object(map)
    }
}

/// Resolves an output path: relative paths go under `$ATTOQS_OUT_DIR`
/// when it is set.
pub fn output_path(requested: &str) -> PathBuf {
    let p = PathBuf::from(requested);
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(p),
        _ => p,
    }
}
