//! Command implementations behind the `gridmodal` binary.
//!
//! Each command takes a validated [`Scenario`], writes its machine-readable
//! CSV (and optional SVG) into the output directory and returns the
//! human-readable report for stdout. All output goes through the
//! deterministic formatting of [`crate::report`].

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::modal::{analyze, sweep, ModeSet, SweepOptions, SweepResult};
use crate::models::{
    build_single_gcsg, gfm_filter_time_constant, MachineKind, StateSpaceModel,
};
use crate::operating::{single_load_sensitivity, solve_single_load};
use crate::report;
use crate::scenario::{
    fixture, parse_scenario, Magnitude, Scenario, SimSettings, SweepSettings, SystemBlock,
    FIXTURES,
};
use crate::sim::{instantaneous_rocof, rocof_study, step_response, TimeSeries};
use crate::system::SolvedSystem;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "GRIDMODAL_OUT";

#[derive(Clone, Debug)]
pub struct OutputOptions {
    pub out_dir: PathBuf,
    pub svg: bool,
}

impl OutputOptions {
    /// Explicit directory, else `$GRIDMODAL_OUT`, else the working
    /// directory.
    pub fn resolve(out: Option<PathBuf>, svg: bool) -> Self {
        let out_dir = out
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        OutputOptions { out_dir, svg }
    }
}

/// What a command produced: the stdout report and the files written.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub stdout: String,
    pub files: Vec<PathBuf>,
}

/// Loads a scenario from a file path, falling back to the bundled fixture
/// of that name.
pub fn load_scenario(arg: &str) -> Result<Scenario> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        return parse_scenario(&text, stem);
    }
    if let Some(text) = fixture(arg) {
        return parse_scenario(text, arg);
    }
    let names: Vec<&str> = FIXTURES.iter().map(|(n, _)| *n).collect();
    Err(Error::InvalidParams(format!(
        "'{arg}' is neither a file nor a bundled scenario (bundled: {})",
        names.join(", ")
    )))
}

fn write_file(out: &OutputOptions, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(&out.out_dir)?;
    let path = out.out_dir.join(name);
    fs::write(&path, content)?;
    Ok(path)
}

fn require_system(sc: &Scenario) -> Result<&SystemBlock> {
    sc.system.as_ref().ok_or_else(|| {
        Error::InvalidParams(format!(
            "scenario '{}' has no [network]/[[machine]] system block",
            sc.name
        ))
    })
}

/// Model plus, where applicable, the solved equilibrium and load resistance.
fn build_model(block: &SystemBlock) -> Result<(StateSpaceModel, Option<SolvedSystem>, f64)> {
    match block {
        SystemBlock::TwoMachine(sys) => {
            let solved = sys.solve()?;
            let model = sys.model_at(&solved)?;
            Ok((model, Some(solved), solved.op.r_ld))
        }
        SystemBlock::SingleMachine(single) => {
            let r_ld0 = solve_single_load(single.v1, single.x, single.p_ref)?;
            let d1 = single_load_sensitivity(single.v1, single.x, r_ld0);
            let model = build_single_gcsg(&single.machine, d1, &single.base)?;
            Ok((model, None, r_ld0))
        }
    }
}

/// `op`: equilibrium report plus a key/value CSV.
pub fn cmd_op(sc: &Scenario, out: &OutputOptions) -> Result<CommandOutput> {
    let block = require_system(sc)?;
    let mut stdout = format!("operating point: {}\n", sc.name);
    let pairs: Vec<(&str, f64)> = match block {
        SystemBlock::TwoMachine(sys) => {
            let s = sys.solve()?;
            vec![
                ("scr", sys.scr()),
                ("r_ld", s.op.r_ld),
                ("v3", s.op.v3),
                ("delta12_deg", s.op.delta12.to_degrees()),
                ("delta13_deg", s.op.delta13.to_degrees()),
                ("delta23_deg", s.op.delta23.to_degrees()),
                ("pe1", s.op.pe1),
                ("pe2", s.op.pe2),
                ("klin1", s.lin.k_lin1),
                ("klin2", s.lin.k_lin2),
                ("d1", s.lin.d1),
                ("d2", s.lin.d2),
            ]
        }
        SystemBlock::SingleMachine(single) => {
            let r_ld0 = solve_single_load(single.v1, single.x, single.p_ref)?;
            let d1 = single_load_sensitivity(single.v1, single.x, r_ld0);
            vec![
                ("scr", 1.0 / single.x),
                ("r_ld", r_ld0),
                ("pe1", single.p_ref),
                ("d1", d1),
            ]
        }
    };
    let units = |k: &str| match k {
        "scr" => "",
        k if k.ends_with("_deg") => " deg",
        "klin1" | "klin2" => " pu/rad",
        "d1" | "d2" => " pu/pu",
        _ => " pu",
    };
    for (k, v) in &pairs {
        stdout.push_str(&format!("  {:12} {}{}\n", k, report::g6(*v), units(k)));
    }
    let file = write_file(out, &format!("{}_op.csv", sc.name), &report::kv_csv(&pairs))?;
    Ok(CommandOutput { stdout, files: vec![file] })
}

fn gfm_notes(block: &SystemBlock) -> String {
    let SystemBlock::TwoMachine(sys) = block else { return String::new() };
    let mut out = String::new();
    for (i, m) in [&sys.m1, &sys.m2].iter().enumerate() {
        if let MachineKind::Gfm { h_virtual, r_droop_pu } = m.kind {
            out.push_str(&format!(
                "  gfm machine {}: droop {} pu, D_virtual {} pu, implied Tf {} s\n",
                i + 1,
                report::g6(r_droop_pu),
                report::g6(1.0 / r_droop_pu),
                report::g6(gfm_filter_time_constant(h_virtual, r_droop_pu)),
            ));
        }
    }
    out
}

/// `modal`: mode table on stdout, machine-readable CSV next to it.
pub fn cmd_modal(sc: &Scenario, out: &OutputOptions) -> Result<CommandOutput> {
    let block = require_system(sc)?;
    let (model, _, _) = build_model(block)?;
    let set = analyze(&model)?;
    let mut stdout = report::modal_table(&sc.name, &set);
    stdout.push_str(&gfm_notes(block));
    if let SystemBlock::SingleMachine(single) = block {
        if let MachineKind::GcSg { h, r_pu, tg, .. } = single.machine.kind {
            let s = crate::models::turbine_governor_summary(h, r_pu, tg);
            stdout.push_str(&format!(
                "  turbine-governor approximation: fn {} Hz, zeta {}, critically damped: {}\n",
                report::g6(s.fn_hz),
                report::g6(s.zeta),
                s.critically_damped
            ));
        }
    }
    let file = write_file(out, &format!("{}_modal.csv", sc.name), &report::modal_csv(&set))?;
    Ok(CommandOutput { stdout, files: vec![file] })
}

/// Command-line overrides for the sweep settings.
#[derive(Clone, Debug, Default)]
pub struct SweepArgs {
    pub param: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: Option<usize>,
    pub log: bool,
}

fn merge_sweep(sc: &Scenario, args: &SweepArgs) -> Result<SweepSettings> {
    let base = sc.sweep;
    let parameter = match &args.param {
        Some(p) => p.parse()?,
        None => {
            base.ok_or_else(|| {
                Error::InvalidParams(
                    "no [sweep] block in the scenario; pass --param/--from/--to/--points".into(),
                )
            })?
            .parameter
        }
    };
    let pick = |cli: Option<f64>, block: Option<f64>, name: &str| -> Result<f64> {
        cli.or(block).ok_or_else(|| Error::InvalidParams(format!("sweep needs --{name}")))
    };
    let from = pick(args.from, base.map(|b| b.from), "from")?;
    let to = pick(args.to, base.map(|b| b.to), "to")?;
    let points = match (args.points, base.map(|b| b.points)) {
        (Some(p), _) => p,
        (None, Some(p)) => p,
        (None, None) => return Err(Error::InvalidParams("sweep needs --points".into())),
    };
    if points < 2 {
        return Err(Error::InvalidParams(format!("sweep needs at least 2 points, got {points}")));
    }
    let log = args.log || base.map(|b| b.log).unwrap_or(false);
    if log && (from <= 0.0 || to <= 0.0) {
        return Err(Error::InvalidParams("log spacing needs positive bounds".into()));
    }
    Ok(SweepSettings { parameter, from, to, points, log })
}

/// `sweep`: root locus of one parameter over a grid.
pub fn cmd_sweep(sc: &Scenario, args: &SweepArgs, out: &OutputOptions) -> Result<CommandOutput> {
    let block = require_system(sc)?;
    let SystemBlock::TwoMachine(sys) = block else {
        return Err(Error::InvalidParams("sweep requires a two-machine scenario".into()));
    };
    let settings = merge_sweep(sc, args)?;
    let grid = settings.grid();
    let result = sweep(sys, settings.parameter, &grid, &SweepOptions::default());

    let solved: Vec<(f64, &ModeSet)> = result
        .points
        .iter()
        .filter_map(|p| p.modes.as_ref().ok().map(|m| (p.value, m)))
        .collect();
    let failures: Vec<String> = result
        .points
        .iter()
        .filter_map(|p| p.modes.as_ref().err().map(|e| format!("  {}: {}", report::g6(p.value), e)))
        .collect();

    let mut stdout = format!(
        "sweep: {} over {} in [{}, {}], {} points{}\n",
        sc.name,
        settings.parameter,
        report::g6(settings.from),
        report::g6(settings.to),
        settings.points,
        if settings.log { " (log)" } else { "" },
    );
    for t in &result.trajectories {
        let first = t.samples.first().expect("non-empty trajectory");
        let last = t.samples.last().expect("non-empty trajectory");
        stdout.push_str(&format!(
            "  {}: {} -> {} | freq {} -> {} Hz | zeta {} -> {}\n",
            t.label,
            report::g6(first.value),
            report::g6(last.value),
            report::g6(first.freq_hz),
            report::g6(last.freq_hz),
            report::g6(first.zeta),
            report::g6(last.zeta),
        ));
    }
    if !failures.is_empty() {
        stdout.push_str(&format!("skipped {} grid points:\n{}\n", failures.len(), failures.join("\n")));
    }

    let param_name = settings.parameter.to_string();
    let csv = report::sweep_csv(&param_name, &solved);
    let mut files = vec![write_file(out, &format!("{}_sweep.csv", sc.name), &csv)?];
    if out.svg {
        let svg = root_locus_svg(sc, &result);
        files.push(write_file(out, &format!("{}_sweep.svg", sc.name), &svg)?);
    }
    Ok(CommandOutput { stdout, files })
}

fn root_locus_svg(sc: &Scenario, result: &SweepResult) -> String {
    let series: Vec<(String, Vec<(f64, f64)>)> = result
        .trajectories
        .iter()
        .enumerate()
        .map(|(i, t)| {
            (
                format!("{} #{}", t.label, i),
                t.samples.iter().map(|s| (s.lambda.re, s.lambda.im)).collect(),
            )
        })
        .collect();
    report::svg_plot(
        &format!("{}: root locus over {}", sc.name, result.parameter),
        "Re(lambda) (1/s)",
        "Im(lambda) (rad/s)",
        &series,
        false,
    )
}

/// Command-line overrides for the simulation settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct SimArgs {
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
}

/// `sim`: step response on the configured input channel.
pub fn cmd_sim(sc: &Scenario, args: &SimArgs, out: &OutputOptions) -> Result<CommandOutput> {
    let block = require_system(sc)?;
    let settings = sc.sim.clone().unwrap_or_default();
    let settings = SimSettings {
        dt: args.dt.unwrap_or(settings.dt),
        t_end: args.t_end.unwrap_or(settings.t_end),
        ..settings
    };
    let (model, _, r_ld0) = build_model(block)?;
    let magnitude = match settings.magnitude {
        Magnitude::Absolute(m) => m,
        Magnitude::RelativeToLoad(f) => f * r_ld0,
    };
    let ts = step_response(&model, &settings.input, magnitude, settings.t_end, settings.dt)?;

    let mut stdout = format!(
        "sim: {} | step {} on {} | t_end {} s, dt {} s\n",
        sc.name,
        report::g6(magnitude),
        settings.input,
        report::g6(settings.t_end),
        report::g6(settings.dt),
    );
    for (name, data) in &ts.channels {
        let extremum = data.iter().fold(0.0_f64, |m, v| if v.abs() > m.abs() { *v } else { m });
        stdout.push_str(&format!(
            "  {}: extremum {}, final {}\n",
            name,
            report::g6(extremum),
            report::g6(*data.last().expect("non-empty series")),
        ));
    }

    let mut files =
        vec![write_file(out, &format!("{}_sim.csv", sc.name), &report::time_series_csv(&ts))?];
    if out.svg {
        let svg = time_series_svg(&sc.name, &ts);
        files.push(write_file(out, &format!("{}_sim.svg", sc.name), &svg)?);
    }
    Ok(CommandOutput { stdout, files })
}

fn time_series_svg(name: &str, ts: &TimeSeries) -> String {
    let series: Vec<(String, Vec<(f64, f64)>)> = ts
        .channels
        .iter()
        .map(|(n, data)| (n.clone(), ts.t.iter().copied().zip(data.iter().copied()).collect()))
        .collect();
    report::svg_plot(&format!("{name}: step response"), "t (s)", "deviation", &series, false)
}

/// `rocof`: windowed RoCoF and nadir of the single-bus aggregate.
pub fn cmd_rocof(sc: &Scenario, windows: Option<&[f64]>, out: &OutputOptions) -> Result<CommandOutput> {
    let settings = sc.rocof.ok_or_else(|| {
        Error::InvalidParams(format!("scenario '{}' has no [rocof] block", sc.name))
    })?;
    let windows = windows.unwrap_or_else(|| settings.windows());
    let (metrics, ts) = rocof_study(
        &settings.system,
        settings.dp,
        windows,
        settings.t_end,
        settings.dt,
        &sc.base,
    )?;
    let inst = instantaneous_rocof(settings.system.h_eq, settings.dp, sc.base.f0);

    let mut stdout = format!(
        "rocof study: {} | generation loss {} pu on H = {} s\n",
        sc.name,
        report::g6(settings.dp),
        report::g6(settings.system.h_eq),
    );
    stdout.push_str(&format!("  inertial RoCoF      {} Hz/s\n", report::g6(inst)));
    let mut pairs: Vec<(String, f64)> = vec![("rocof_inst".into(), inst)];
    for &(w, r) in &metrics.rocof_w {
        stdout.push_str(&format!(
            "  RoCoF {:>5} ms      {} Hz/s\n",
            report::g6(w * 1e3),
            report::g6(r)
        ));
        pairs.push((format!("rocof_{}ms", report::g6(w * 1e3)), r));
    }
    stdout.push_str(&format!(
        "  nadir               {} Hz at {} s\n",
        report::g6(metrics.nadir_hz),
        report::g6(metrics.t_nadir_s)
    ));
    pairs.push(("nadir".into(), metrics.nadir_hz));
    pairs.push(("t_nadir".into(), metrics.t_nadir_s));

    let pair_refs: Vec<(&str, f64)> = pairs.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let files = vec![
        write_file(out, &format!("{}_rocof_metrics.csv", sc.name), &report::kv_csv(&pair_refs))?,
        write_file(out, &format!("{}_rocof.csv", sc.name), &report::time_series_csv(&ts))?,
    ];
    Ok(CommandOutput { stdout, files })
}
