//! Scenario files: the TOML schema, validation, and the bundled fixtures.
//!
//! A scenario describes either a one- or two-machine study system
//! (`[network]`, `[dispatch]`, `[[machine]]`), a single-bus RoCoF study
//! (`[rocof]`), or both. Optional `[sim]` and `[sweep]` blocks carry
//! time-domain and root-locus settings. Unknown keys are rejected;
//! semantic violations are collected and reported together with their key
//! paths rather than one at a time.
//!
//! TOML is the one structured format the toolkit reads. The schema is
//! normative; see the bundled fixtures for one file per study case.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::models::MachineParams;
use crate::operating::Dispatch;
use crate::perunit::{x_from_scr, BaseSystem};
use crate::sim::{AggregateSystem, Primary};
use crate::system::{SweepParameter, TwoMachineSystem};

/// Default integral gain of the secondary regulator, pu/(pu s). Slow
/// against the nadir timescale; the RoCoF metrics are insensitive to it.
pub const DEFAULT_SECONDARY_KI: f64 = 0.1;

const DEFAULT_F0: f64 = 50.0;
const DEFAULT_SIM_T_END: f64 = 10.0;
const DEFAULT_SIM_DT: f64 = 1e-3;
const DEFAULT_ROCOF_DT: f64 = 1e-3;

/// Fixtures shipped with the toolkit, one per study case.
pub const FIXTURES: &[(&str, &str)] = &[
    ("case1a", include_str!("../fixtures/case1a.toml")),
    ("case1b", include_str!("../fixtures/case1b.toml")),
    ("case1c", include_str!("../fixtures/case1c.toml")),
    ("case2a", include_str!("../fixtures/case2a.toml")),
    ("case2b", include_str!("../fixtures/case2b.toml")),
    ("case2d", include_str!("../fixtures/case2d.toml")),
    ("govmode", include_str!("../fixtures/govmode.toml")),
    ("swing-scr", include_str!("../fixtures/swing-scr.toml")),
    ("rocof-conventional", include_str!("../fixtures/rocof-conventional.toml")),
    ("rocof-lowH", include_str!("../fixtures/rocof-lowH.toml")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    base: Option<RawBase>,
    network: Option<RawNetwork>,
    dispatch: Option<RawDispatch>,
    machine: Option<Vec<RawMachine>>,
    sim: Option<RawSim>,
    sweep: Option<RawSweep>,
    rocof: Option<RawRocof>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBase {
    f0: Option<f64>,
    sbase: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    scr: Option<f64>,
    x: Option<f64>,
    k: Option<f64>,
    v1: Option<f64>,
    v2: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDispatch {
    pref1: f64,
    pref2: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMachine {
    kind: String,
    s: f64,
    h: f64,
    d: Option<f64>,
    r: Option<f64>,
    tg: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSim {
    t_end: Option<f64>,
    dt: Option<f64>,
    input: Option<String>,
    magnitude: Option<f64>,
    magnitude_rel: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    from: f64,
    to: f64,
    points: usize,
    log: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRocof {
    h: f64,
    r_natural: f64,
    dp: f64,
    windows: Vec<f64>,
    t_end: Option<f64>,
    dt: Option<f64>,
    primary: Option<RawPrimary>,
    secondary: Option<RawSecondary>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrimary {
    r: f64,
    tg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSecondary {
    ki: Option<f64>,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub base: BaseSystem,
    pub system: Option<SystemBlock>,
    pub sim: Option<SimSettings>,
    pub sweep: Option<SweepSettings>,
    pub rocof: Option<RocofSettings>,
}

#[derive(Clone, Debug)]
pub enum SystemBlock {
    TwoMachine(TwoMachineSystem),
    /// Single governor-controlled machine feeding the load directly.
    SingleMachine(SingleMachine),
}

#[derive(Clone, Copy, Debug)]
pub struct SingleMachine {
    pub base: BaseSystem,
    pub x: f64,
    pub v1: f64,
    pub machine: MachineParams,
    pub p_ref: f64,
}

#[derive(Clone, Debug)]
pub struct SimSettings {
    pub t_end: f64,
    pub dt: f64,
    pub input: String,
    pub magnitude: Magnitude,
}

/// Step size, either absolute in channel units or relative to the solved
/// load resistance (only meaningful on the `r_ld` channel).
#[derive(Clone, Copy, Debug)]
pub enum Magnitude {
    Absolute(f64),
    RelativeToLoad(f64),
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            t_end: DEFAULT_SIM_T_END,
            dt: DEFAULT_SIM_DT,
            input: "r_ld".to_string(),
            magnitude: Magnitude::RelativeToLoad(-0.01),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepSettings {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepSettings {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points.max(2);
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp()
                } else {
                    self.from + t * (self.to - self.from)
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RocofSettings {
    pub system: AggregateSystem,
    pub dp: f64,
    pub windows: [f64; 8],
    pub n_windows: usize,
    pub t_end: f64,
    pub dt: f64,
}

impl RocofSettings {
    pub fn windows(&self) -> &[f64] {
        &self.windows[..self.n_windows]
    }
}

/// Parses and fully validates a scenario document. Syntax and unknown-key
/// errors surface with the TOML location; semantic violations are all
/// collected into one [`Error::Validation`].
pub fn parse_scenario(text: &str, fallback_name: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut errors: Vec<String> = Vec::new();

    let name = raw.name.clone().unwrap_or_else(|| fallback_name.to_string());
    let base = validate_base(&raw, &mut errors);
    let system = validate_system(&raw, base, &mut errors);
    let sim = raw.sim.as_ref().map(|s| validate_sim(s, &mut errors));
    let sweep = raw.sweep.as_ref().and_then(|s| validate_sweep(s, &mut errors));
    let rocof = raw.rocof.as_ref().and_then(|r| validate_rocof(r, &mut errors));

    if raw.rocof.is_none() && raw.network.is_none() && raw.machine.is_none() {
        errors.push("scenario: needs a [network]/[[machine]] system or a [rocof] block".into());
    }

    if errors.is_empty() {
        Ok(Scenario { name, base, system, sim, sweep, rocof })
    } else {
        Err(Error::Validation(errors))
    }
}

fn validate_base(raw: &RawScenario, errors: &mut Vec<String>) -> BaseSystem {
    let f0 = raw.base.as_ref().and_then(|b| b.f0).unwrap_or(DEFAULT_F0);
    let s_base = raw.base.as_ref().and_then(|b| b.sbase).unwrap_or(1.0);
    if !(f0 > 0.0) {
        errors.push(format!("base.f0: must be > 0, got {f0}"));
    }
    if !(s_base > 0.0) {
        errors.push(format!("base.sbase: must be > 0, got {s_base}"));
    }
    BaseSystem { f0: f0.max(f64::MIN_POSITIVE), s_base: s_base.max(f64::MIN_POSITIVE), v_base: 1.0 }
}

fn validate_machine(i: usize, m: &RawMachine, errors: &mut Vec<String>) -> Option<MachineParams> {
    let path = format!("machine[{i}]");
    if !(m.s > 0.0 && m.s <= 1.0) {
        errors.push(format!("{path}.s: rating fraction must lie in (0,1], got {}", m.s));
    }
    if m.h < 0.0 {
        errors.push(format!("{path}.h: inertia constant must be >= 0, got {}", m.h));
    }
    match m.kind.as_str() {
        "gcsg" => {
            let mut missing = Vec::new();
            if m.d.is_none() {
                missing.push("d");
            }
            if m.r.is_none() {
                missing.push("r");
            }
            if m.tg.is_none() {
                missing.push("tg");
            }
            if !missing.is_empty() {
                errors.push(format!("{path}: gcsg requires {}", missing.join(", ")));
                return None;
            }
            let (d, r, tg) = (m.d.unwrap(), m.r.unwrap(), m.tg.unwrap());
            if d < 0.0 {
                errors.push(format!("{path}.d: must be >= 0, got {d}"));
            }
            if !(r > 0.0) {
                errors.push(format!("{path}.r: droop must be > 0, got {r}"));
            }
            if !(tg > 0.0) {
                errors.push(format!("{path}.tg: governor time constant must be > 0, got {tg}"));
            }
            Some(MachineParams::gcsg(m.s, m.h, d, r, tg))
        }
        "gfm" => {
            if m.tg.is_some() {
                errors.push(format!("{path}.tg: a grid-forming machine has no governor lag"));
            }
            // parameterized by either the droop or the virtual damping
            let r_droop = match (m.r, m.d) {
                (Some(r), None) => r,
                (None, Some(d)) if d > 0.0 => 1.0 / d,
                (None, Some(d)) => {
                    errors.push(format!("{path}.d: virtual damping must be > 0, got {d}"));
                    return None;
                }
                (Some(_), Some(_)) => {
                    errors.push(format!("{path}: give either r (droop) or d (= 1/r), not both"));
                    return None;
                }
                (None, None) => {
                    errors.push(format!("{path}: gfm requires r (droop) or d (virtual damping)"));
                    return None;
                }
            };
            if !(r_droop > 0.0) {
                errors.push(format!("{path}.r: droop must be > 0, got {r_droop}"));
                return None;
            }
            Some(MachineParams::gfm(m.s, m.h, r_droop))
        }
        other => {
            errors.push(format!("{path}.kind: expected \"gcsg\" or \"gfm\", got \"{other}\""));
            None
        }
    }
}

fn validate_system(
    raw: &RawScenario,
    base: BaseSystem,
    errors: &mut Vec<String>,
) -> Option<SystemBlock> {
    let (net, machines) = match (&raw.network, &raw.machine) {
        (None, None) => return None,
        (Some(n), Some(m)) => (n, m),
        (Some(_), None) => {
            errors.push("machine: at least one [[machine]] block is required".into());
            return None;
        }
        (None, Some(_)) => {
            errors.push("network: a [network] block is required".into());
            return None;
        }
    };
    if machines.is_empty() {
        errors.push("machine: at least one machine".into());
        return None;
    }
    if machines.len() > 2 {
        errors.push(format!("machine: at most two machines, got {}", machines.len()));
        return None;
    }

    let v1 = net.v1.unwrap_or(1.0);
    let v2 = net.v2.unwrap_or(1.0);
    if !(v1 > 0.0) {
        errors.push(format!("network.v1: must be > 0, got {v1}"));
    }
    if !(v2 > 0.0) {
        errors.push(format!("network.v2: must be > 0, got {v2}"));
    }

    let two = machines.len() == 2;
    let k = if two {
        match net.k {
            Some(k) if k > 0.0 && k < 1.0 => k,
            Some(k) => {
                errors.push(format!("network.k: must lie in (0,1), got {k}"));
                0.5
            }
            None => {
                errors.push("network.k: required for a two-machine network".into());
                0.5
            }
        }
    } else {
        if net.k.is_some() {
            errors.push("network.k: meaningless for a single-machine network".into());
        }
        0.5
    };

    let x = match (net.x, net.scr) {
        (Some(x), None) if x > 0.0 => x,
        (Some(x), None) => {
            errors.push(format!("network.x: must be > 0, got {x}"));
            1.0
        }
        (None, Some(s)) if s > 0.0 => {
            if two {
                x_from_scr(s, k)
            } else {
                1.0 / s
            }
        }
        (None, Some(s)) => {
            errors.push(format!("network.scr: must be > 0, got {s}"));
            1.0
        }
        (Some(_), Some(_)) => {
            errors.push("network: give either x or scr, not both".into());
            1.0
        }
        (None, None) => {
            errors.push("network: one of x or scr is required".into());
            1.0
        }
    };

    let parsed: Vec<Option<MachineParams>> =
        machines.iter().enumerate().map(|(i, m)| validate_machine(i, m, errors)).collect();

    let dispatch = match &raw.dispatch {
        Some(d) => d,
        None => {
            errors.push("dispatch: required".into());
            return None;
        }
    };
    if dispatch.pref1 < 0.0 {
        errors.push(format!("dispatch.pref1: must be >= 0, got {}", dispatch.pref1));
    }

    if two {
        let p2 = match dispatch.pref2 {
            Some(p) if p >= 0.0 => p,
            Some(p) => {
                errors.push(format!("dispatch.pref2: must be >= 0, got {p}"));
                0.0
            }
            None => {
                errors.push("dispatch.pref2: required for two machines".into());
                0.0
            }
        };
        if dispatch.pref1 + p2 <= 0.0 {
            errors.push("dispatch: total dispatch must be positive".into());
        }
        let (Some(m1), Some(m2)) = (parsed[0], parsed[1]) else { return None };
        if !errors.is_empty() {
            return None;
        }
        Some(SystemBlock::TwoMachine(TwoMachineSystem {
            base,
            x,
            k,
            v1,
            v2,
            m1,
            m2,
            dispatch: Dispatch { p_ref1: dispatch.pref1, p_ref2: p2 },
        }))
    } else {
        if dispatch.pref2.is_some() {
            errors.push("dispatch.pref2: meaningless for a single machine".into());
        }
        if dispatch.pref1 <= 0.0 {
            errors.push("dispatch.pref1: must be > 0 for a single machine".into());
        }
        let machine = parsed[0]?;
        if !matches!(machine.kind, crate::models::MachineKind::GcSg { .. }) {
            errors.push("machine[0]: the single-machine study models a gcsg".into());
            return None;
        }
        if !errors.is_empty() {
            return None;
        }
        Some(SystemBlock::SingleMachine(SingleMachine {
            base,
            x,
            v1,
            machine,
            p_ref: dispatch.pref1,
        }))
    }
}

fn validate_sim(raw: &RawSim, errors: &mut Vec<String>) -> SimSettings {
    let defaults = SimSettings::default();
    let t_end = raw.t_end.unwrap_or(defaults.t_end);
    let dt = raw.dt.unwrap_or(defaults.dt);
    if !(t_end > 0.0) {
        errors.push(format!("sim.t_end: must be > 0, got {t_end}"));
    }
    if !(dt > 0.0) || dt > t_end / 10.0 {
        errors.push(format!("sim.dt: need 0 < dt <= t_end/10, got {dt}"));
    }
    let input = raw.input.clone().unwrap_or_else(|| defaults.input.clone());
    let magnitude = match (raw.magnitude, raw.magnitude_rel) {
        (Some(_), Some(_)) => {
            errors.push("sim: give either magnitude or magnitude_rel, not both".into());
            defaults.magnitude
        }
        (Some(m), None) => Magnitude::Absolute(m),
        (None, Some(m)) => {
            if input != "r_ld" {
                errors.push(format!(
                    "sim.magnitude_rel: only defined for the r_ld input, not '{input}'"
                ));
            }
            Magnitude::RelativeToLoad(m)
        }
        (None, None) => defaults.magnitude,
    };
    SimSettings { t_end, dt, input, magnitude }
}

fn validate_sweep(raw: &RawSweep, errors: &mut Vec<String>) -> Option<SweepSettings> {
    let parameter = match raw.parameter.parse::<SweepParameter>() {
        Ok(p) => p,
        Err(e) => {
            errors.push(format!("sweep.parameter: {e}"));
            return None;
        }
    };
    if raw.points < 2 {
        errors.push(format!("sweep.points: need at least 2 grid points, got {}", raw.points));
    }
    let log = raw.log.unwrap_or(false);
    if log && (raw.from <= 0.0 || raw.to <= 0.0) {
        errors.push("sweep: log spacing needs positive bounds".into());
    }
    if raw.from == raw.to {
        errors.push("sweep: from and to must differ".into());
    }
    Some(SweepSettings { parameter, from: raw.from, to: raw.to, points: raw.points, log })
}

fn validate_rocof(raw: &RawRocof, errors: &mut Vec<String>) -> Option<RocofSettings> {
    if !(raw.h > 0.0) {
        errors.push(format!("rocof.h: must be > 0, got {}", raw.h));
    }
    if !(raw.r_natural > 0.0) {
        errors.push(format!("rocof.r_natural: must be > 0, got {}", raw.r_natural));
    }
    if !(raw.dp > 0.0) {
        errors.push(format!("rocof.dp: must be > 0, got {}", raw.dp));
    }
    let t_end = raw.t_end.unwrap_or(DEFAULT_SIM_T_END);
    let dt = raw.dt.unwrap_or(DEFAULT_ROCOF_DT);
    if !(t_end > 0.0) || !(dt > 0.0) || dt > t_end / 10.0 {
        errors.push(format!("rocof: need 0 < dt <= t_end/10, got dt={dt}, t_end={t_end}"));
    }
    if raw.windows.is_empty() || raw.windows.len() > 8 {
        errors.push(format!("rocof.windows: between 1 and 8 windows, got {}", raw.windows.len()));
        return None;
    }
    for &w in &raw.windows {
        if !(w > 0.0 && w < t_end) {
            errors.push(format!("rocof.windows: window {w} s must lie inside (0, {t_end})"));
        }
    }
    if let Some(p) = &raw.primary {
        if !(p.r > 0.0) || !(p.tg > 0.0) {
            errors.push(format!("rocof.primary: r and tg must be > 0, got r={}, tg={}", p.r, p.tg));
        }
    }
    let mut windows = [0.0; 8];
    windows[..raw.windows.len()].copy_from_slice(&raw.windows);
    Some(RocofSettings {
        system: AggregateSystem {
            h_eq: raw.h,
            r_natural_pu: raw.r_natural,
            primary: raw.primary.as_ref().map(|p| Primary { r_pu: p.r, tg: p.tg }),
            secondary_ki: raw
                .secondary
                .as_ref()
                .map(|s| s.ki.unwrap_or(DEFAULT_SECONDARY_KI)),
        },
        dp: raw.dp,
        windows,
        n_windows: raw.windows.len(),
        t_end,
        dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1a_fixture_matches_table_column() {
        let sc = parse_scenario(fixture("case1a").unwrap(), "case1a").unwrap();
        assert_eq!(sc.name, "case1a");
        assert_eq!(sc.base.f0, 50.0);
        let Some(SystemBlock::TwoMachine(sys)) = sc.system else { panic!("two-machine") };
        assert_eq!(sys.x, 1.0); // SCR 4 at k = 0.5
        assert_eq!(sys.k, 0.5);
        assert_eq!(sys.dispatch.p_ref1, 0.5);
        assert_eq!(sys.m1, MachineParams::gcsg(0.5, 4.0, 0.01, 0.05, 0.25));
        assert_eq!(sys.m2, sys.m1);
        assert!(sc.sweep.is_some());
    }

    #[test]
    fn gfm_fixture_converts_damping_to_droop() {
        let sc = parse_scenario(fixture("case1c").unwrap(), "case1c").unwrap();
        let Some(SystemBlock::TwoMachine(sys)) = sc.system else { panic!("two-machine") };
        assert_eq!(sys.m1, MachineParams::gfm(0.5, 4.0, 0.01));
        assert_eq!(sys.m1.damping_pu(), 100.0);
    }

    #[test]
    fn rocof_fixtures() {
        let sc = parse_scenario(fixture("rocof-lowH").unwrap(), "rocof-lowH").unwrap();
        assert!(sc.system.is_none());
        let r = sc.rocof.unwrap();
        assert_eq!(r.system.h_eq, 0.5);
        assert!(r.system.primary.is_none());
        assert_eq!(r.system.secondary_ki, Some(0.1));
        assert_eq!(r.windows(), &[0.05, 0.5]);
        let sc2 = parse_scenario(fixture("rocof-conventional").unwrap(), "x").unwrap();
        assert!(sc2.rocof.unwrap().system.primary.is_some());
    }

    #[test]
    fn all_fixtures_parse() {
        for (name, text) in FIXTURES {
            parse_scenario(text, name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn empty_machine_list_is_an_error() {
        let text = r#"
machine = []
[network]
scr = 4.0
k = 0.5
[dispatch]
pref1 = 0.5
pref2 = 0.5
"#;
        let err = parse_scenario(text, "t").unwrap_err();
        assert!(err.to_string().contains("at least one machine"), "{err}");
    }

    #[test]
    fn range_violation_names_the_key() {
        let text = r#"
[network]
scr = 4.0
k = 1.2
[dispatch]
pref1 = 0.5
pref2 = 0.5
[[machine]]
kind = "gcsg"
s = 0.5
h = 4.0
d = 0.01
r = 0.05
tg = 0.25
[[machine]]
kind = "gcsg"
s = 0.5
h = 4.0
d = 0.01
r = 0.05
tg = 0.25
"#;
        let err = parse_scenario(text, "t").unwrap_err();
        assert!(err.to_string().contains("network.k"), "{err}");
    }

    #[test]
    fn all_semantic_errors_are_collected() {
        let text = r#"
[network]
scr = -4.0
k = 1.2
[dispatch]
pref1 = -0.5
pref2 = 0.5
[[machine]]
kind = "gcsg"
s = 2.5
h = 4.0
d = 0.01
r = 0.05
tg = 0.25
[[machine]]
kind = "bogus"
s = 0.5
h = 4.0
"#;
        let Err(Error::Validation(errors)) = parse_scenario(text, "t") else {
            panic!("expected validation failure")
        };
        assert!(errors.len() >= 4, "collected {errors:?}");
        assert!(errors.iter().any(|e| e.contains("network.scr")));
        assert!(errors.iter().any(|e| e.contains("network.k")));
        assert!(errors.iter().any(|e| e.contains("machine[0].s")));
        assert!(errors.iter().any(|e| e.contains("machine[1].kind")));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_scenario("[network]\nscr = 4.0\nfoo = 1\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn sweep_grid_spacing() {
        let s = SweepSettings {
            parameter: SweepParameter::H1,
            from: 1.0,
            to: 4.0,
            points: 3,
            log: true,
        };
        let g = s.grid();
        assert!((g[1] - 2.0).abs() < 1e-12); // geometric midpoint
        let lin = SweepSettings { log: false, ..s };
        assert!((lin.grid()[1] - 2.5).abs() < 1e-12);
    }
}
