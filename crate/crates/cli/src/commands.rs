use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use attoqs_core::constants::{au_to_as, intensity_w_cm2};
use attoqs_core::scan::{self, Axis, AxisKind, FixedParams, ScanGrid, TableFormat, ZetaSpec};
use attoqs_core::superluminal::{self as qs, light_time};
use attoqs_core::{AtomicSystem, QsMode, ZetaMode};
use attoqs_tdse::grid::RadialGrid;
use attoqs_tdse::propagate::{self, check_size, run_pulse, RunOptions, Scheme};
use attoqs_tdse::pulse::Pulse;
use attoqs_tdse::spectra::{self, NO_IONIZATION_THRESHOLD};

use crate::config::{output_path, Resolved, RunConfig};
use crate::error::{sig, CliError};

/// Keys each subcommand reads; anything else is rejected.
const DELAYS_KEYS: &[&str] = &["Z", "Zeff", "rel", "F", "omega", "zeta", "mode", "out", "format"];
const SCAN_KEYS: &[&str] = &["Z", "Zeff", "rel", "F", "F_over_Fa", "omega", "zeta", "mode", "preset", "out", "format"];
const ZETA_KEYS: &[&str] = &["Z", "Zeff", "rel", "F", "mode"];
const CRITICAL_KEYS: &[&str] = &["Z", "Zeff", "rel"];
const TDSE_KEYS: &[&str] = &[
    "Z",
    "Zeff",
    "F0",
    "omega",
    "epsilon",
    "cep",
    "dr",
    "r_max",
    "L_max",
    "dt",
    "scheme",
    "tol",
    "max_iter",
    "max_channels",
    "p_max",
    "n_p",
    "n_phi",
    "out",
    "dry_run",
];

fn check_keys(cfg: &RunConfig, command: &str, allowed: &[&str]) -> Result<(), CliError> {
    for (key, _) in crate::config::KEYS {
        if cfg.get(key).is_some() && !allowed.contains(key) {
            return Err(CliError::Config(format!(
                "'{key}' is not used by '{command}' (accepted: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

fn bool_text(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn system_from(cfg: &RunConfig, res: &mut Resolved, with_rel: bool) -> Result<AtomicSystem, CliError> {
    let z = cfg.require_f64("Z")?;
    let z_eff = cfg.f64("Zeff")?.unwrap_or(z);
    let rel = with_rel && cfg.bool("rel")?;
    res.push("Z", z);
    res.push("Zeff", z_eff);
    if with_rel {
        res.push("rel", bool_text(rel));
    }
    Ok(AtomicSystem::new(z, z_eff, rel)?)
}

fn parse_mode(cfg: &RunConfig) -> Result<QsMode, CliError> {
    cfg.get("mode").unwrap_or("exact").parse::<QsMode>().map_err(CliError::Config)
}

fn write_or_print(out: Option<&str>, text: &str) -> Result<Option<PathBuf>, CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(None)
        }
        Some(o) => {
            let path = output_path(o);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            Ok(Some(path))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DelaysFormat {
    Text,
    Csv,
    Json,
}

/// Single-point delays and superluminality quotients.
pub fn delays(cfg: &RunConfig) -> Result<(), CliError> {
    check_keys(cfg, "delays", DELAYS_KEYS)?;
    let mut res = Resolved::new("delays");
    let system = system_from(cfg, &mut res, true)?;
    let field = cfg.require_f64("F")?;
    res.push("F", field);
    let omega = cfg.f64("omega")?;
    let zeta = cfg.f64("zeta")?;
    let mode = parse_mode(cfg)?;
    if let Some(w) = omega {
        res.push("omega", w);
    }
    if let Some(z) = zeta {
        res.push("zeta", z);
        res.push("mode", mode.name());
    }
    let format = match cfg.get("format").unwrap_or("text") {
        "text" => DelaysFormat::Text,
        "csv" => DelaysFormat::Csv,
        "json" => DelaysFormat::Json,
        other => return Err(CliError::Config(format!("unknown format '{other}' (expected text|csv|json)"))),
    };
    res.push("format", cfg.get("format").unwrap_or("text"));
    if let Some(o) = cfg.get("out") {
        res.push("out", o);
    }

    let d = system.delay_set(field)?;
    let geo = system.barrier_geometry(field)?;
    let f_a = system.atomic_field();

    let mut times: Vec<(&str, f64)> = vec![
        ("tau_a", d.tau_a),
        ("tau_Ti", d.tau_ti),
        ("tau_Ad", d.tau_ad),
        ("tau_dion", d.tau_dion),
        ("tau_dB", d.tau_db),
        ("tau_backr", d.tau_backr),
        ("tau_c_Ad", light_time(geo.width)),
        ("tau_c_Nad", light_time(geo.x_top)),
    ];
    let mut quotients: Vec<(&str, f64)> =
        vec![("Q_dB", qs::q_db(&system)), ("Q_ad", qs::q_ad_thick(&system)), ("Q_Nad", qs::q_nad(&system, field)?)];
    if let Some(z) = zeta {
        let imed = qs::intermediate_with(&system, field, z, mode)?;
        times.push(("tau_imed", imed.tau_imed));
        times.push(("tau_c_imed", imed.light_time()));
        quotients.push(("Q_imed_a", qs::q_imed_a(&system, z)));
        quotients.push(("Q_imed_b", qs::q_imed_b(&system, field, z, mode)?));
    }
    let mut extra: Vec<(&str, f64)> = Vec::new();
    if let Some(w) = omega {
        let ph = system.photon_absorption_delay(field, w)?;
        times.push(("tau_1ph", ph.tau_1ph));
        times.push(("tau_nph", ph.tau_nph));
        extra.push(("photons", ph.n));
        extra.push(("gamma_K", system.keldysh_gamma(field, w)?));
    }
    let scalars: Vec<(&str, f64)> = vec![
        ("I_p_hartree", system.ip()),
        ("F_au", field),
        ("intensity_W_cm2", intensity_w_cm2(field)),
        ("F_a_au", f_a),
        ("F_over_Fa", field / f_a),
        ("delta_z_hartree", geo.delta_z),
        ("x_entry_bohr", geo.x_entry),
        ("x_exit_bohr", geo.x_exit),
        ("x_m_bohr", geo.x_top),
        ("d_B_bohr", geo.width),
    ];

    let text = match format {
        DelaysFormat::Json => {
            let mut root = serde_json::Map::new();
            root.insert("config".into(), res.to_json());
            let mut sys = serde_json::Map::new();
            for (k, v) in scalars.iter().chain(&extra) {
                sys.insert((*k).into(), (*v).into());
            }
            root.insert("parameters".into(), sys.into());
            let mut t = serde_json::Map::new();
            for (k, v) in &times {
                t.insert((*k).into(), serde_json::json!({ "au": v, "as": au_to_as(*v) }));
            }
            root.insert("delays".into(), t.into());
            let mut q = serde_json::Map::new();
            for (k, v) in &quotients {
                q.insert((*k).into(), serde_json::json!({ "value": v, "superluminal": *v < 1.0 }));
            }
            root.insert("quotients".into(), q.into());
            let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(root)).expect("json");
            s.push('\n');
            s
        }
        DelaysFormat::Csv => {
            let mut s = res.to_comment_block();
            s.push_str("quantity,value,value_as\n");
            for (k, v) in scalars.iter().chain(&extra) {
                let _ = writeln!(s, "{k},{v:e},");
            }
            for (k, v) in &times {
                let _ = writeln!(s, "{k},{v:e},{:e}", au_to_as(*v));
            }
            for (k, v) in &quotients {
                let _ = writeln!(s, "{k},{v:e},");
            }
            s
        }
        DelaysFormat::Text => {
            let mut s = res.to_comment_block();
            let _ = writeln!(
                s,
                "system   Z = {}, Z_eff = {}, I_p = {} hartree{}",
                system.z(),
                system.z_eff(),
                sig(system.ip()),
                if system.is_relativistic() { " (Dirac 1s)" } else { "" }
            );
            let _ = writeln!(
                s,
                "field    F = {} a.u. ({} W/cm^2), F_a = {} a.u., F/F_a = {}",
                sig(field),
                sig(intensity_w_cm2(field)),
                sig(f_a),
                sig(field / f_a)
            );
            let _ = writeln!(
                s,
                "barrier  delta_z = {} hartree, x_entry = {} bohr, x_exit = {} bohr, x_m = {} bohr, d_B = {} bohr",
                sig(geo.delta_z),
                sig(geo.x_entry),
                sig(geo.x_exit),
                sig(geo.x_top),
                sig(geo.width)
            );
            for (k, v) in &extra {
                let _ = writeln!(s, "{k:<8} {}", sig(*v));
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "{:<12} {:>14} {:>14}", "delay", "a.u.", "as");
            for (k, v) in &times {
                let _ = writeln!(s, "{k:<12} {:>14} {:>14}", sig(*v), sig(au_to_as(*v)));
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "{:<12} {:>14} {:>14}", "quotient", "value", "superluminal");
            for (k, v) in &quotients {
                let _ = writeln!(s, "{k:<12} {:>14} {:>14}", sig(*v), if *v < 1.0 { "yes" } else { "no" });
            }
            s
        }
    };
    if let Some(path) = write_or_print(cfg.get("out"), &text)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Parses `a`, `a,b,c`, `start:stop:count` or `log:start:stop:count`.
/// `Ok(None)` for a plain scalar.
pub fn parse_axis(kind: AxisKind, key: &str, value: &str) -> Result<Option<Axis>, CliError> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Config(format!("{key}: '{s}' is not a finite number")))
    };
    let count =
        |s: &str| s.trim().parse::<usize>().map_err(|_| CliError::Config(format!("{key}: '{s}' is not a point count")));
    let axis = if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        match parts.as_slice() {
            ["log", a, b, n] => Axis::log(kind, num(a)?, num(b)?, count(n)?),
            [a, b, n] => Axis::linear(kind, num(a)?, num(b)?, count(n)?),
            _ => {
                return Err(CliError::Config(format!(
                    "{key} = '{value}': expected start:stop:count or log:start:stop:count"
                )))
            }
        }
    } else if value.contains(',') {
        Axis::list(kind, value.split(',').map(num).collect::<Result<_, _>>()?)
    } else {
        num(value)?;
        return Ok(None);
    };
    axis.validate()?;
    Ok(Some(axis))
}

/// Figure preset or explicit grid sweep written to a CSV/JSON file.
pub fn scan(cfg: &RunConfig) -> Result<(), CliError> {
    check_keys(cfg, "scan", SCAN_KEYS)?;
    let mut res = Resolved::new("scan");
    let grid_keys = ["Z", "Zeff", "rel", "F", "F_over_Fa", "omega", "zeta", "mode"];
    let grid = if let Some(name) = cfg.get("preset") {
        if let Some(k) = grid_keys.iter().find(|k| cfg.get(k).is_some()) {
            return Err(CliError::Config(format!(
                "'{k}' cannot be combined with a preset; presets fix their own grid"
            )));
        }
        res.push("preset", name);
        scan::preset(name)?
    } else {
        let mut fixed = FixedParams::default();
        let mut axes = Vec::new();
        let kinds = [
            ("Z", AxisKind::Z),
            ("F", AxisKind::Field),
            ("F_over_Fa", AxisKind::FieldFraction),
            ("zeta", AxisKind::Zeta),
        ];
        for (key, kind) in kinds {
            let Some(v) = cfg.get(key) else { continue };
            res.push(key, v);
            match parse_axis(kind, key, v)? {
                Some(axis) => axes.push(axis),
                None if kind == AxisKind::FieldFraction => axes.push(Axis::list(kind, vec![cfg.require_f64(key)?])),
                None => {
                    let x = cfg.require_f64(key)?;
                    match kind {
                        AxisKind::Z => fixed.z = x,
                        AxisKind::Field => fixed.field = x,
                        _ => fixed.zeta = ZetaSpec::Value(x),
                    }
                }
            }
        }
        if let Some(z_eff) = cfg.f64("Zeff")? {
            fixed.z_eff = Some(z_eff);
            res.push("Zeff", z_eff);
        }
        fixed.relativistic = cfg.bool("rel")?;
        res.push("rel", bool_text(fixed.relativistic));
        fixed.omega = cfg.f64("omega")?;
        if let Some(w) = fixed.omega {
            res.push("omega", w);
        }
        fixed.mode = parse_mode(cfg)?;
        res.push("mode", fixed.mode.name());
        ScanGrid::new(axes, fixed)
    };
    grid.validate()?;
    let format: TableFormat = cfg.get("format").unwrap_or("csv").parse().map_err(CliError::Config)?;
    let ext = match format {
        TableFormat::Csv => "csv",
        TableFormat::Json => "json",
    };
    res.push("format", ext);
    let requested = cfg
        .get("out")
        .map(str::to_string)
        .unwrap_or_else(|| format!("{}.{ext}", grid.preset.as_deref().unwrap_or("scan")));
    res.push("out", &requested);

    let records = scan::run_scan(&grid)?;
    let path = output_path(&requested);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    scan::emit_table(&records, &grid.columns, format, &path)?;
    let sidecar = sidecar_path(&path);
    fs::write(&sidecar, res.to_config_text()).map_err(|e| CliError::io(&sidecar, e))?;
    let flagged = records.iter().filter(|r| r.invalid).count();
    println!("wrote {} rows to {}", records.len(), path.display());
    println!("config: {}", sidecar.display());
    if flagged > 0 {
        eprintln!("warning: {flagged} rows lie outside the model domain and carry NaN values");
    }
    Ok(())
}

/// `<out>.run.cfg`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(".run.cfg");
    PathBuf::from(s)
}

/// Switching value where the intermediate channel turns superluminal.
pub fn zeta_qs(cfg: &RunConfig) -> Result<(), CliError> {
    check_keys(cfg, "zeta-qs", ZETA_KEYS)?;
    let mut res = Resolved::new("zeta-qs");
    let system = system_from(cfg, &mut res, true)?;
    let field = cfg.f64("F")?;
    let mode = match field {
        None => {
            if cfg.get("mode").is_some() {
                return Err(CliError::Config("mode applies only when F is given".into()));
            }
            ZetaMode::SmallField
        }
        Some(_) => match parse_mode(cfg)? {
            QsMode::Exact => ZetaMode::Exact,
            QsMode::Thick => ZetaMode::Thick,
        },
    };
    if let Some(f) = field {
        res.push("F", f);
        res.push("mode", mode.name());
    }
    print!("{}", res.to_comment_block());
    let root = qs::zeta_qs(&system, field.unwrap_or(0.0), mode)?;
    let cf = qs::critical_fields(&system)?;
    match root {
        Some(r) => {
            println!("zeta_QS = {:.4}", r.zeta);
            println!("mode = {}", mode.name());
            println!("residual |Q_imed_b - 1| = {:.3e}", r.residual);
        }
        None => {
            println!("no root: subluminal for all ζ ∈ [0,1]");
            println!("mode = {}", mode.name());
        }
    }
    println!(
        "window [F_c, F_a] = [{}, {}] a.u.{}",
        sig(cf.f_c),
        sig(cf.f_a),
        if cf.window_open() { "" } else { " (closed)" }
    );
    Ok(())
}

/// `F_a`, `F_c` and `F_{zeta=1}` for one system.
pub fn critical_fields(cfg: &RunConfig) -> Result<(), CliError> {
    check_keys(cfg, "critical-fields", CRITICAL_KEYS)?;
    let mut res = Resolved::new("critical-fields");
    let system = system_from(cfg, &mut res, true)?;
    let cf = qs::critical_fields(&system)?;
    print!("{}", res.to_comment_block());
    println!("I_p      = {} hartree", sig(system.ip()));
    let row = |name: &str, f: f64| println!("{name:<8} = {} a.u. ({} W/cm^2)", sig(f), sig(intensity_w_cm2(f)));
    row("F_a", cf.f_a);
    row("F_c", cf.f_c);
    match cf.f_zeta1 {
        Some(f) => row("F_zeta=1", f),
        None => println!("F_zeta=1 = none (Q_imed_b(zeta=1) >= 1 for every tunneling field)"),
    }
    println!("superluminal window {}", if cf.window_open() { "open: F_c < F_a" } else { "closed: F_c >= F_a" });
    Ok(())
}

/// Settings of one TDSE run after defaults are applied.
struct TdseSettings {
    system: AtomicSystem,
    grid: RadialGrid,
    pulse: Pulse,
    l_max: usize,
    options: RunOptions,
    p_max: f64,
    n_p: usize,
    n_phi: usize,
    out: String,
    dry_run: bool,
}

fn tdse_settings(cfg: &RunConfig, res: &mut Resolved) -> Result<TdseSettings, CliError> {
    let z = cfg.f64("Z")?.unwrap_or(1.0);
    let z_eff = cfg.f64("Zeff")?.unwrap_or(z);
    let system = AtomicSystem::new(z, z_eff, false)?;
    let f0 = cfg.f64("F0")?.unwrap_or(0.5);
    let omega = cfg.f64("omega")?.unwrap_or(0.8);
    let epsilon = cfg.f64("epsilon")?.unwrap_or(1.0);
    let cep = cfg.f64("cep")?.unwrap_or(0.0);
    let dr = cfg.f64("dr")?.unwrap_or(0.1);
    let r_max = cfg.f64("r_max")?.unwrap_or(60.0);
    let l_max = cfg.usize("L_max")?.unwrap_or(8);
    let dt = cfg.f64("dt")?.unwrap_or_else(|| propagate::default_dt(z_eff));
    let scheme: Scheme = cfg.get("scheme").unwrap_or("triple-jump").parse().map_err(CliError::Config)?;
    let tol = cfg.f64("tol")?.unwrap_or(propagate::DEFAULT_TOLERANCE);
    let max_iter = cfg.usize("max_iter")?.unwrap_or(propagate::DEFAULT_MAX_ITER);
    let max_channels = cfg.usize("max_channels")?.unwrap_or(propagate::DEFAULT_MAX_CHANNELS);
    let pulse = Pulse::new(f0, omega, epsilon)?.with_cep(cep);
    let p_max = cfg.f64("p_max")?.unwrap_or_else(|| spectra::default_p_max(&pulse));
    let n_p = cfg.usize("n_p")?.unwrap_or(200);
    let n_phi = cfg.usize("n_phi")?.unwrap_or(720);
    if n_phi < 3 {
        return Err(CliError::Config(format!("n_phi must be at least 3, got {n_phi}")));
    }
    let out = cfg.get("out").unwrap_or("tdse_out").to_string();
    let dry_run = cfg.bool("dry_run")?;
    let grid = RadialGrid::new(dr, r_max)?;
    spectra::momentum_grid(p_max, n_p)?;

    for (k, v) in [
        ("Z", z.to_string()),
        ("Zeff", z_eff.to_string()),
        ("F0", f0.to_string()),
        ("omega", omega.to_string()),
        ("epsilon", epsilon.to_string()),
        ("cep", cep.to_string()),
        ("dr", dr.to_string()),
        ("r_max", r_max.to_string()),
        ("L_max", l_max.to_string()),
        ("dt", dt.to_string()),
        ("scheme", scheme.name().to_string()),
        ("tol", tol.to_string()),
        ("max_iter", max_iter.to_string()),
        ("max_channels", max_channels.to_string()),
        ("p_max", p_max.to_string()),
        ("n_p", n_p.to_string()),
        ("n_phi", n_phi.to_string()),
        ("out", out.clone()),
    ] {
        res.push(k, v);
    }
    Ok(TdseSettings {
        system,
        grid,
        pulse,
        l_max,
        options: RunOptions { dt: Some(dt), scheme, tol, max_iter, max_channels },
        p_max,
        n_p,
        n_phi,
        out,
        dry_run,
    })
}

/// Pulse propagation followed by the attoclock analysis.
pub fn tdse(cfg: &RunConfig) -> Result<(), CliError> {
    check_keys(cfg, "tdse", TDSE_KEYS)?;
    let mut res = Resolved::new("tdse");
    let s = tdse_settings(cfg, &mut res)?;
    let desk_scale = check_size(&s.grid, s.l_max, s.options.max_channels)?;

    if s.dry_run {
        print!("{}", res.to_comment_block());
        let channels = (s.l_max + 1) * (s.l_max + 1);
        println!("channels = {channels}, radial points = {}", s.grid.len());
        println!(
            "pulse duration = {} a.u., steps = {}",
            sig(s.pulse.duration()),
            (s.pulse.duration() / s.options.dt.unwrap_or(1.0)).ceil()
        );
        if !desk_scale {
            eprintln!("warning: not desk scale: {channels} channels x {} radial points", s.grid.len());
        }
        if !s.grid.resolves(s.system.z_eff()) {
            eprintln!("warning: dr = {} exceeds the recommended 0.2/Z_eff = {}", s.grid.dr(), 0.2 / s.system.z_eff());
        }
        println!("dry run: configuration accepted, nothing propagated");
        return Ok(());
    }

    let report = run_pulse(&s.system, s.grid, &s.pulse, s.l_max, s.options)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let momenta = spectra::momentum_grid(s.p_max, s.n_p)?;
    let table = spectra::project_scattering_states(&report.state, s.system.z_eff(), &momenta)?;
    let dist = spectra::momentum_distribution(&table, &spectra::angle_grid(s.n_phi))?;
    let angular = spectra::radial_integrate(&dist);
    let ionized = table.ionized_probability();
    let no_ionization = ionized < NO_IONIZATION_THRESHOLD;
    let offset = if no_ionization { None } else { Some(spectra::offset_angle_and_delay(&angular, &s.pulse)?) };

    let mut results: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| results.push((k.to_string(), v));
    put("ground_energy", format!("{:e}", report.ground_energy));
    put("dt_used", format!("{:e}", report.dt));
    put("steps", report.steps.to_string());
    put("norm_initial", format!("{:e}", report.norm_initial));
    put("norm_final", format!("{:e}", report.norm_final));
    put("max_norm_drift", format!("{:e}", report.max_norm_drift));
    put("tail_population", format!("{:e}", report.tail_population));
    put("max_iterations", report.max_iterations.to_string());
    put("desk_scale", bool_text(report.desk_scale).to_string());
    put("bound_population", format!("{:e}", table.bound_population()));
    put("ionized_probability", format!("{:e}", ionized));
    match &offset {
        None => put("offset", "undefined (no ionization)".to_string()),
        Some(o) => {
            put("phi_max", format!("{:e}", o.phi_max));
            put("theta", format!("{:e}", o.theta));
            put("tau_au", format!("{:e}", o.tau_au));
            put("tau_as", format!("{:e}", o.tau_as));
            put("streaking_delay_au", format!("{:e}", o.streaking_delay_au));
            put("streaking_delay_as", format!("{:e}", au_to_as(o.streaking_delay_au)));
            put("multimodal", bool_text(o.multimodal).to_string());
        }
    }
    put("warnings", report.warnings.len().to_string());

    let dir = output_path(&s.out);
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let state_path = dir.join("state.bin");
    report.state.write_checkpoint(&state_path)?;

    let mut meta: Vec<(String, String)> = res.entries.clone();
    meta.extend(spectra::convention_metadata());
    let write_csv =
        |name: &str, f: &dyn Fn(&mut dyn std::io::Write) -> std::io::Result<()>| -> Result<PathBuf, CliError> {
            let path = dir.join(name);
            let mut buf = Vec::new();
            f(&mut buf).map_err(|e| CliError::io(&path, e))?;
            fs::write(&path, buf).map_err(|e| CliError::io(&path, e))?;
            Ok(path)
        };
    write_csv("momentum.csv", &|w| spectra::write_momentum_csv(&dist, &meta, w))?;
    write_csv("angular.csv", &|w| spectra::write_angular_csv(&angular, &meta, w))?;

    let mut text = res.to_comment_block();
    for (k, v) in spectra::convention_metadata() {
        let _ = writeln!(text, "# {k}: {v}");
    }
    for (k, v) in &results {
        let _ = writeln!(text, "{k} = {v}");
    }
    for w in &report.warnings {
        let _ = writeln!(text, "# warning: {w}");
    }
    let report_path = dir.join("report.txt");
    fs::write(&report_path, &text).map_err(|e| CliError::io(&report_path, e))?;
    let cfg_path = dir.join("run.cfg");
    fs::write(&cfg_path, res.to_config_text()).map_err(|e| CliError::io(&cfg_path, e))?;

    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "norm drift = {:.3e}, ground energy = {:.6}", report.max_norm_drift, report.ground_energy);
    let _ = writeln!(stdout, "bound = {:.6}, ionized = {:.6}", table.bound_population(), ionized);
    match &offset {
        None => {
            let _ = writeln!(stdout, "no ionization: ionized probability {ionized:.3e} below {NO_IONIZATION_THRESHOLD:e}; offset angle undefined");
        }
        Some(o) => {
            let _ = writeln!(
                stdout,
                "theta = {:.6} rad, tau = {:.6} a.u. = {:.4} as, streaking delay = {:.6} a.u.{}",
                o.theta,
                o.tau_au,
                o.tau_as,
                o.streaking_delay_au,
                if o.multimodal { " (multimodal)" } else { "" }
            );
        }
    }
    let _ = writeln!(stdout, "wrote {}", dir.display());
    Ok(())
}
