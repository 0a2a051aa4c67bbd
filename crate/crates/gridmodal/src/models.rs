//! Linearized state-space models.
//!
//! Three assemblies: the single governor-controlled synchronous generator
//! (two states), its droop-based grid-forming equivalent, and the generic
//! two-machine system with any mix of the two kinds.
//!
//! For the two-machine system the state vector is
//! `[delta12, omega1, (pm1), omega2, (pm2)]` with the mechanical-power
//! state present only for governor-controlled machines; a grid-forming
//! converter applies its droop law instantly and contributes only virtual
//! inertia `Tf/R` and virtual damping `1/R` on its speed state. Inputs are
//! always `[pref1, pref2, omega_ref1, omega_ref2, r_ld]` and the default
//! outputs `[omega1, omega2, pe1]`.
//!
//! Speeds are rad/s internally; reports convert to Hz.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::operating::LinCoeffs;
use crate::perunit::{damping_si, droop_si, momentum, BaseSystem};

/// Machine kind with its per-unit control parameters (machine base).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MachineKind {
    /// Governor-controlled synchronous generator: physical inertia and
    /// damping plus a first-order speed-droop governor.
    GcSg { h: f64, d_pu: f64, r_pu: f64, tg: f64 },
    /// Droop-based grid-forming converter. The droop constant fixes the
    /// virtual damping (`D = 1/R`); the virtual inertia is a free knob.
    Gfm { h_virtual: f64, r_droop_pu: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MachineParams {
    pub kind: MachineKind,
    /// Rating as a fraction of the system base.
    pub s_pu: f64,
}

impl MachineParams {
    pub fn gcsg(s_pu: f64, h: f64, d_pu: f64, r_pu: f64, tg: f64) -> Self {
        MachineParams { kind: MachineKind::GcSg { h, d_pu, r_pu, tg }, s_pu }
    }

    pub fn gfm(s_pu: f64, h_virtual: f64, r_droop_pu: f64) -> Self {
        MachineParams { kind: MachineKind::Gfm { h_virtual, r_droop_pu }, s_pu }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_pu > 0.0 && self.s_pu <= 1.0) {
            return Err(Error::InvalidParams(format!("s_pu must lie in (0,1], got {}", self.s_pu)));
        }
        match self.kind {
            MachineKind::GcSg { h, d_pu, r_pu, tg } => {
                if h < 0.0 || d_pu < 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "gcsg requires h >= 0 and d >= 0, got h={h}, d={d_pu}"
                    )));
                }
                if !(r_pu > 0.0) || !(tg > 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "gcsg requires r > 0 and tg > 0, got r={r_pu}, tg={tg}"
                    )));
                }
            }
            MachineKind::Gfm { h_virtual, r_droop_pu } => {
                if h_virtual < 0.0 || !(r_droop_pu > 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "gfm requires h >= 0 and r > 0, got h={h_virtual}, r={r_droop_pu}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn inertia_constant(&self) -> f64 {
        match self.kind {
            MachineKind::GcSg { h, .. } => h,
            MachineKind::Gfm { h_virtual, .. } => h_virtual,
        }
    }

    /// Effective damping on the machine base: the physical coefficient for
    /// a synchronous machine, `1/R` for a grid-forming converter.
    pub fn damping_pu(&self) -> f64 {
        match self.kind {
            MachineKind::GcSg { d_pu, .. } => d_pu,
            MachineKind::Gfm { r_droop_pu, .. } => 1.0 / r_droop_pu,
        }
    }
}

/// Labeled state-space model `x' = A x + B u`, `y = C x + D u`.
#[derive(Clone, Debug)]
pub struct StateSpaceModel {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
    pub state_labels: Vec<String>,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
}

impl StateSpaceModel {
    pub fn n_states(&self) -> usize {
        self.a.nrows()
    }

    pub fn input_index(&self, name: &str) -> Result<usize> {
        self.input_labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownChannel {
            name: name.to_string(),
            available: self.input_labels.join(", "),
        })
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.state_labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownChannel {
            name: name.to_string(),
            available: self.state_labels.join(", "),
        })
    }

    fn check_dims(self) -> Result<Self> {
        let (n, m, p) = (self.a.nrows(), self.b.ncols(), self.c.nrows());
        let ok = self.a.ncols() == n
            && self.b.nrows() == n
            && self.c.ncols() == n
            && self.d.nrows() == p
            && self.d.ncols() == m
            && self.state_labels.len() == n
            && self.input_labels.len() == m
            && self.output_labels.len() == p
            && self.a.iter().all(|v| v.is_finite())
            && self.b.iter().all(|v| v.is_finite())
            && self.c.iter().all(|v| v.is_finite())
            && self.d.iter().all(|v| v.is_finite());
        if ok {
            Ok(self)
        } else {
            Err(Error::Assembly(format!("inconsistent dimensions: n={n}, m={m}, p={p}")))
        }
    }
}

/// Frequency and damping of the turbine-governor mode in the approximation
/// `2H >> D_pu`, plus the critical-damping test `R_pu > Tg/H`.
#[derive(Clone, Copy, Debug)]
pub struct SecondOrderSummary {
    pub fn_hz: f64,
    pub zeta: f64,
    pub critically_damped: bool,
}

/// Approximate natural frequency and damping ratio of a governor-controlled
/// machine: `fn = sqrt(1/(2 H R Tg))/2pi`, `zeta = sqrt(H R / (2 Tg))`.
pub fn turbine_governor_summary(h: f64, r_pu: f64, tg: f64) -> SecondOrderSummary {
    SecondOrderSummary {
        fn_hz: (1.0 / (2.0 * h * r_pu * tg)).sqrt() / (2.0 * std::f64::consts::PI),
        zeta: (h * r_pu / (2.0 * tg)).sqrt(),
        critically_damped: r_pu > tg / h,
    }
}

/// Virtual inertia and damping delivered by a droop law with filter time
/// constant `tf` and droop `r`: `M = Tf/R`, `D = 1/R` (per-unit).
pub fn gfm_equivalence(tf: f64, r_droop_pu: f64) -> (f64, f64) {
    (tf / r_droop_pu, 1.0 / r_droop_pu)
}

/// Filter time constant implied by a virtual inertia constant:
/// `M = Tf/R = 2 H Sn / wb` with `R` converted to the same base gives
/// `Tf = 2 H R_pu`.
pub fn gfm_filter_time_constant(h_virtual: f64, r_droop_pu: f64) -> f64 {
    2.0 * h_virtual * r_droop_pu
}

/// Inverse map: the virtual inertia constant realised by a filter `tf`.
pub fn gfm_inertia_from_filter(tf: f64, r_droop_pu: f64) -> f64 {
    tf / (2.0 * r_droop_pu)
}

/// Single governor-controlled machine feeding a resistive load.
///
/// States `[omega1, pm1]`, inputs `[pref1, omega_ref1, r_ld]`, outputs
/// `[omega1, pm1, pe1]` with `pe1 = d1 * r_ld` pure feedthrough:
///
/// ```text
/// A = [ -D/M    1/M  ]      B = [ 0     0        -d1/M ]
///     [ -1/RTg  -1/Tg]          [ 1/Tg  1/(R Tg)  0    ]
/// ```
pub fn build_single_gcsg(
    m: &MachineParams,
    d1: f64,
    base: &BaseSystem,
) -> Result<StateSpaceModel> {
    m.validate()?;
    let MachineKind::GcSg { h, d_pu, r_pu, tg } = m.kind else {
        return Err(Error::Assembly("single-machine model requires a gcsg machine".into()));
    };
    let mm = momentum(h, m.s_pu, base);
    let dd = damping_si(d_pu, m.s_pu, base);
    let rr = droop_si(r_pu, m.s_pu, base);
    let a = DMatrix::from_row_slice(2, 2, &[-dd / mm, 1.0 / mm, -1.0 / (rr * tg), -1.0 / tg]);
    let b = DMatrix::from_row_slice(
        2,
        3,
        &[0.0, 0.0, -d1 / mm, 1.0 / tg, 1.0 / (rr * tg), 0.0],
    );
    let c = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    let mut d = DMatrix::zeros(3, 3);
    d[(2, 2)] = d1;
    StateSpaceModel {
        a,
        b,
        c,
        d,
        state_labels: vec!["omega1".into(), "pm1".into()],
        input_labels: vec!["pref1".into(), "omega_ref1".into(), "r_ld".into()],
        output_labels: vec!["omega1".into(), "pm1".into(), "pe1".into()],
    }
    .check_dims()
}

/// Generic two-machine model.
///
/// For two governor-controlled machines this reproduces the displayed
/// five-state matrices entry by entry. Each grid-forming machine removes
/// its mechanical-power state structurally; its reference inputs act
/// directly on the speed equation (`pref` with `1/M`, `omega_ref` with
/// `D/M`), which is the instantaneous droop law.
pub fn build_two_machine(
    m1: &MachineParams,
    m2: &MachineParams,
    lin: &LinCoeffs,
    base: &BaseSystem,
) -> Result<StateSpaceModel> {
    m1.validate()?;
    m2.validate()?;

    let mut state_labels = vec!["delta12".to_string()];
    let mut omega_idx = [0usize; 2];
    let mut pm_idx = [None::<usize>; 2];
    for (i, m) in [m1, m2].iter().enumerate() {
        omega_idx[i] = state_labels.len();
        state_labels.push(format!("omega{}", i + 1));
        if matches!(m.kind, MachineKind::GcSg { .. }) {
            pm_idx[i] = Some(state_labels.len());
            state_labels.push(format!("pm{}", i + 1));
        }
    }
    let n = state_labels.len();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::zeros(n, 5);
    a[(0, omega_idx[0])] = 1.0;
    a[(0, omega_idx[1])] = -1.0;

    let pref_col = [0usize, 1];
    let wref_col = [2usize, 3];
    const RLD_COL: usize = 4;

    for (i, m) in [m1, m2].iter().enumerate() {
        let mm = momentum(m.inertia_constant(), m.s_pu, base);
        if mm <= 0.0 {
            return Err(Error::Assembly(format!(
                "machine {} has zero angular momentum; inertia must be positive",
                i + 1
            )));
        }
        let dd = damping_si(m.damping_pu(), m.s_pu, base);
        let (k_lin, d_load) = if i == 0 { (lin.k_lin1, lin.d1) } else { (lin.k_lin2, lin.d2) };
        let iw = omega_idx[i];
        a[(iw, 0)] = -k_lin / mm;
        a[(iw, iw)] = -dd / mm;
        b[(iw, RLD_COL)] = -d_load / mm;
        match m.kind {
            MachineKind::GcSg { r_pu, tg, .. } => {
                let rr = droop_si(r_pu, m.s_pu, base);
                let ip = pm_idx[i].expect("gcsg allocates a pm state");
                a[(iw, ip)] = 1.0 / mm;
                a[(ip, iw)] = -1.0 / (rr * tg);
                a[(ip, ip)] = -1.0 / tg;
                b[(ip, pref_col[i])] = 1.0 / tg;
                b[(ip, wref_col[i])] = 1.0 / (rr * tg);
            }
            MachineKind::Gfm { .. } => {
                b[(iw, pref_col[i])] = 1.0 / mm;
                b[(iw, wref_col[i])] = dd / mm;
            }
        }
    }

    let mut c = DMatrix::zeros(3, n);
    c[(0, omega_idx[0])] = 1.0;
    c[(1, omega_idx[1])] = 1.0;
    c[(2, 0)] = lin.k_lin1;
    let mut d = DMatrix::zeros(3, 5);
    d[(2, RLD_COL)] = lin.d1;

    StateSpaceModel {
        a,
        b,
        c,
        d,
        state_labels,
        input_labels: vec![
            "pref1".into(),
            "pref2".into(),
            "omega_ref1".into(),
            "omega_ref2".into(),
            "r_ld".into(),
        ],
        output_labels: vec!["omega1".into(), "omega2".into(), "pe1".into()],
    }
    .check_dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn base() -> BaseSystem {
        BaseSystem::pu(50.0)
    }

    fn case1a_machine() -> MachineParams {
        MachineParams::gcsg(0.5, 4.0, 0.01, 0.05, 0.25)
    }

    fn benchmark_lin() -> LinCoeffs {
        let k = 0.9330127018922194;
        LinCoeffs { k_lin1: k, k_lin2: -k, d1: -0.4641016151377548, d2: -0.4641016151377548 }
    }

    #[test]
    fn single_gcsg_matches_characteristic_polynomial() {
        // eigenvalues equal the roots of
        // l^2 + (D/2H + 1/Tg) l + (D/(2H Tg) + 1/(2H R Tg)) = 0
        let m = MachineParams::gcsg(1.0, 4.0, 0.01, 0.05, 0.25);
        let model = build_single_gcsg(&m, -0.5, &base()).unwrap();
        let (h, d, r, tg) = (4.0, 0.01, 0.05, 0.25);
        let p1 = d / (2.0 * h) + 1.0 / tg;
        let p0 = d / (2.0 * h * tg) + 1.0 / (2.0 * h * r * tg);
        assert_relative_eq!(model.a.trace(), -p1, max_relative = 1e-12);
        assert_relative_eq!(model.a.determinant(), p0, max_relative = 1e-12);
        let eigs = model.a.complex_eigenvalues();
        let disc = nalgebra::Complex::new(p1 * p1 - 4.0 * p0, 0.0).sqrt();
        let root = (nalgebra::Complex::new(-p1, 0.0) + disc) / 2.0;
        assert!(eigs.iter().any(|e| (e - root).norm() < 1e-10));
    }

    #[test]
    fn single_gcsg_broken_loop_eigenvalues() {
        // D = 0 and 1/R = 0 decouple speed from the governor: {0, -1/Tg}
        let m = MachineParams::gcsg(1.0, 4.0, 0.0, 1e18, 0.25);
        let model = build_single_gcsg(&m, 0.0, &base()).unwrap();
        let mut eigs: Vec<f64> = model.a.complex_eigenvalues().iter().map(|e| e.re).collect();
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs[0], -4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(eigs[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn single_gcsg_load_channel_gain() {
        let m = case1a_machine();
        let d1 = -0.83;
        let model = build_single_gcsg(&m, d1, &base()).unwrap();
        let mm = momentum(4.0, 0.5, &base());
        assert_relative_eq!(model.b[(0, 2)], -d1 / mm, max_relative = 1e-14);
        assert_eq!(model.d[(2, 2)], d1);
    }

    #[test]
    fn turbine_governor_summary_values() {
        // case 1a machine: zeta = sqrt(0.2/0.5)
        let s = turbine_governor_summary(4.0, 0.05, 0.25);
        assert_relative_eq!(s.zeta, 0.632455532, epsilon = 1e-8);
        assert!(!s.critically_damped);
        // critical-damping boundary R = Tg/H gives zeta = 1/sqrt(2)
        let b = turbine_governor_summary(4.0, 0.25 / 4.0, 0.25);
        assert_relative_eq!(b.zeta, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
        assert!(!b.critically_damped);
        let above = turbine_governor_summary(4.0, 0.0626, 0.25);
        assert!(above.critically_damped);
    }

    #[test]
    fn gfm_equivalence_values() {
        let (m, d) = gfm_equivalence(1.0, 0.05);
        assert_eq!((m, d), (20.0, 20.0));
        // halving R doubles both for fixed Tf
        let (m2, d2) = gfm_equivalence(1.0, 0.025);
        assert_eq!((m2, d2), (2.0 * m, 2.0 * d));
        // case 1b: droop 0.05 carried over to D = 20 pu
        assert_eq!(MachineParams::gfm(0.5, 4.0, 0.05).damping_pu(), 20.0);
        // H <-> Tf round trip
        let tf = gfm_filter_time_constant(4.0, 0.05);
        assert_relative_eq!(tf, 0.4);
        assert_relative_eq!(gfm_inertia_from_filter(tf, 0.05), 4.0);
    }

    #[test]
    fn two_machine_case1a_matrix_entries() {
        // hand-assembled oracle for the displayed 5x5 matrices
        let m = case1a_machine();
        let lin = benchmark_lin();
        let model = build_two_machine(&m, &m, &lin, &base()).unwrap();
        assert_eq!(model.state_labels, vec!["delta12", "omega1", "pm1", "omega2", "pm2"]);
        let mm = momentum(4.0, 0.5, &base());
        let dd = damping_si(0.01, 0.5, &base());
        let rr = droop_si(0.05, 0.5, &base());
        let tg = 0.25;
        #[rustfmt::skip]
        let expect = DMatrix::from_row_slice(5, 5, &[
            0.0,               1.0,      0.0,        0.0,                -1.0_f64,
            -lin.k_lin1 / mm,  -dd / mm, 1.0 / mm,   0.0,                0.0,
            0.0,               -1.0 / (rr * tg), -1.0 / tg, 0.0,         0.0,
            -lin.k_lin2 / mm,  0.0,      0.0,        -dd / mm,           1.0 / mm,
            0.0,               0.0,      0.0,        -1.0 / (rr * tg),   -1.0 / tg,
        ]);
        // the delta row is [0 1 0 -1 0] in state order
        for i in 0..5 {
            for j in 0..5 {
                let e = if i == 0 {
                    [0.0, 1.0, 0.0, -1.0, 0.0][j]
                } else {
                    expect[(i, j)]
                };
                assert_abs_diff_eq!(model.a[(i, j)], e, epsilon = 1e-12 * (1.0 + e.abs()));
            }
        }
        assert_relative_eq!(model.a[(2, 1)], -1.0 / (rr * tg), max_relative = 1e-14);
        // B, C, D as displayed
        assert_relative_eq!(model.b[(1, 4)], -lin.d1 / mm, max_relative = 1e-14);
        assert_relative_eq!(model.b[(2, 0)], 1.0 / tg);
        assert_relative_eq!(model.b[(2, 2)], 1.0 / (rr * tg), max_relative = 1e-14);
        assert_eq!(model.c[(2, 0)], lin.k_lin1);
        assert_eq!(model.d[(2, 4)], lin.d1);
        assert_eq!(model.b[(0, 4)], 0.0);
    }

    #[test]
    fn gfm_machine_removes_governor_state() {
        let m1 = MachineParams::gfm(0.5, 4.0, 0.01);
        let m2 = case1a_machine();
        let model = build_two_machine(&m1, &m2, &benchmark_lin(), &base()).unwrap();
        assert_eq!(model.state_labels, vec!["delta12", "omega1", "omega2", "pm2"]);
        assert_eq!(model.n_states(), 4);
        let mm = momentum(4.0, 0.5, &base());
        let dd = damping_si(100.0, 0.5, &base());
        assert_relative_eq!(model.a[(1, 1)], -dd / mm, max_relative = 1e-14);
        // droop-law reference inputs act on the speed equation
        assert_relative_eq!(model.b[(1, 0)], 1.0 / mm, max_relative = 1e-14);
        assert_relative_eq!(model.b[(1, 2)], dd / mm, max_relative = 1e-14);
    }

    #[test]
    fn gfm_matches_large_droop_governor_limit() {
        // the structural model equals the R -> infinity surrogate with the
        // vanished governor state removed
        let lin = benchmark_lin();
        let gfm = MachineParams::gfm(0.5, 4.0, 0.05);
        let m2 = case1a_machine();
        let reduced = build_two_machine(&gfm, &m2, &lin, &base()).unwrap();
        // surrogate: gcsg with the virtual damping as physical D and a
        // gigantic droop to break the governor loop
        let surrogate = MachineParams::gcsg(0.5, 4.0, 20.0, 1e9, 0.25);
        let full = build_two_machine(&surrogate, &m2, &lin, &base()).unwrap();
        let mut red_eigs: Vec<_> = reduced.a.complex_eigenvalues().iter().cloned().collect();
        // the surrogate has one extra eigenvalue near -1/Tg from the idle governor
        let mut full_eigs: Vec<_> = full.a.complex_eigenvalues().iter().cloned().collect();
        full_eigs.sort_by(|a, b| (a.re, a.im.abs()).partial_cmp(&(b.re, b.im.abs())).unwrap());
        red_eigs.sort_by(|a, b| (a.re, a.im.abs()).partial_cmp(&(b.re, b.im.abs())).unwrap());
        for r in red_eigs {
            let best = full_eigs.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-6 * (1.0 + r.norm()), "eig {r} unmatched, best {best}");
        }
    }

    #[test]
    fn decoupled_machines_give_block_spectrum() {
        let m = case1a_machine();
        let lin = LinCoeffs { k_lin1: 0.0, k_lin2: 0.0, d1: 0.0, d2: 0.0 };
        let model = build_two_machine(&m, &m, &lin, &base()).unwrap();
        let single = build_single_gcsg(
            &MachineParams::gcsg(0.5, 4.0, 0.01, 0.05, 0.25),
            0.0,
            &base(),
        )
        .unwrap();
        let pair = single.a.complex_eigenvalues();
        let eigs = model.a.complex_eigenvalues();
        // spectrum = union of the two single-machine pairs plus the free
        // integrator of delta12
        assert!(eigs.iter().any(|e| e.norm() < 1e-12));
        for p in pair.iter() {
            let hits = eigs.iter().filter(|e| (*e - p).norm() < 1e-9).count();
            assert!(hits >= 2, "expected doubled eigenvalue {p}");
        }
    }

    #[test]
    fn sbase_rescaling_is_a_diagonal_similarity() {
        // scaling Sbase (and the power coefficients with it) turns A into
        // P A P^-1 with P = diag(1, 1, s, 1, s) on the pm states, so the
        // spectrum is untouched
        let lin1 = benchmark_lin();
        let base1 = BaseSystem::pu(50.0);
        let base2 = BaseSystem { f0: 50.0, s_base: 7.7e8, v_base: 2.4e4 };
        let lin2 = LinCoeffs {
            k_lin1: lin1.k_lin1 * base2.s_base,
            k_lin2: lin1.k_lin2 * base2.s_base,
            d1: lin1.d1 * base2.s_base,
            d2: lin1.d2 * base2.s_base,
        };
        let m1 = case1a_machine();
        let m2 = case1a_machine();
        let a1 = build_two_machine(&m1, &m2, &lin1, &base1).unwrap().a;
        let a2 = build_two_machine(&m1, &m2, &lin2, &base2).unwrap().a;
        let s = base2.s_base;
        let p = [0.0, 0.0, 1.0, 0.0, 1.0]; // Sbase exponent per state
        for i in 0..5 {
            for j in 0..5 {
                let expect = a1[(i, j)] * s.powf(p[i] - p[j]);
                assert_relative_eq!(a2[(i, j)], expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn swap_symmetry_of_symmetric_system() {
        // swapping the machines while flipping the sign of delta12 leaves
        // the dynamics invariant: P A P^-1 = A with P the signed permutation
        let m = case1a_machine();
        let model = build_two_machine(&m, &m, &benchmark_lin(), &base()).unwrap();
        let mut p = DMatrix::zeros(5, 5);
        p[(0, 0)] = -1.0;
        p[(1, 3)] = 1.0;
        p[(2, 4)] = 1.0;
        p[(3, 1)] = 1.0;
        p[(4, 2)] = 1.0;
        let left = &p * &model.a;
        let right = &model.a * &p;
        assert!((left - right).abs().max() < 1e-12);
    }

    #[test]
    fn zero_inertia_is_rejected() {
        let m1 = MachineParams::gfm(0.5, 0.0, 0.05);
        let m2 = case1a_machine();
        assert!(matches!(
            build_two_machine(&m1, &m2, &benchmark_lin(), &base()),
            Err(Error::Assembly(_))
        ));
    }
}
