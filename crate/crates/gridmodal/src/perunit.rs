//! Per-unit / SI conversion layer and the short-circuit-ratio index.
//!
//! Machine parameters are given in per-unit on the machine rating; the
//! dynamic models run on the system base with real angular frequency in
//! rad/s. The conversions are
//!
//! ```text
//! M = 2 H Sn / wb        angular momentum
//! D = D_pu Sn / wb       damping coefficient
//! R = R_pu wb / Sn       governor droop
//! ```
//!
//! with `Sn = S_pu * Sbase` the machine rating and `wb = 2 pi f0`.

use std::f64::consts::PI;

/// System base quantities.
///
/// `f0` is never printed by reports in Hz-relative form, but it fixes the
/// rad/s scale of every eigenvalue: the bundled scenarios assume 50 Hz.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseSystem {
    /// Base frequency, Hz.
    pub f0: f64,
    /// System power base, W (1.0 when working fully in per-unit).
    pub s_base: f64,
    /// Line-to-line RMS voltage base, V (1.0 in per-unit).
    pub v_base: f64,
}

impl BaseSystem {
    /// Per-unit base at the given frequency (Sbase = Vbase = 1).
    pub fn pu(f0: f64) -> Self {
        BaseSystem { f0, s_base: 1.0, v_base: 1.0 }
    }

    /// Base angular frequency, 2*pi*f0 rad/s.
    pub fn omega_b(&self) -> f64 {
        2.0 * PI * self.f0
    }

    /// Base impedance Vbase^2 / Sbase, ohm.
    pub fn z_base(&self) -> f64 {
        self.v_base * self.v_base / self.s_base
    }
}

impl Default for BaseSystem {
    fn default() -> Self {
        BaseSystem::pu(50.0)
    }
}

/// Rating and per-unit dynamic coefficients of one machine, on its own base.
#[derive(Clone, Copy, Debug)]
pub struct MachineRating {
    /// Rating as a fraction of the system base.
    pub s_pu: f64,
    /// Inertia constant, s.
    pub h: f64,
    /// Damping coefficient, pu.
    pub d_pu: f64,
    /// Droop constant, pu.
    pub r_pu: f64,
    /// Governor time constant, s.
    pub tg: f64,
}

impl MachineRating {
    pub fn momentum(&self, base: &BaseSystem) -> f64 {
        momentum(self.h, self.s_pu, base)
    }

    pub fn damping_si(&self, base: &BaseSystem) -> f64 {
        damping_si(self.d_pu, self.s_pu, base)
    }

    pub fn droop_si(&self, base: &BaseSystem) -> f64 {
        droop_si(self.r_pu, self.s_pu, base)
    }
}

/// Angular momentum on the system base, `2 H Sn / wb`.
pub fn momentum(h: f64, s_pu: f64, base: &BaseSystem) -> f64 {
    2.0 * h * s_pu * base.s_base / base.omega_b()
}

/// Damping coefficient on the system base, `D_pu Sn / wb`.
pub fn damping_si(d_pu: f64, s_pu: f64, base: &BaseSystem) -> f64 {
    d_pu * s_pu * base.s_base / base.omega_b()
}

/// Droop constant on the system base, `R_pu wb / Sn` ((rad/s) per W).
pub fn droop_si(r_pu: f64, s_pu: f64, base: &BaseSystem) -> f64 {
    r_pu * base.omega_b() / (s_pu * base.s_base)
}

/// Short-circuit ratio of the split tie: the load sees the two reactance
/// segments in parallel, so `SCR = 1 / (X k (1-k))`.
pub fn scr(x_pu: f64, k: f64) -> f64 {
    1.0 / (x_pu * k * (1.0 - k))
}

/// Tie reactance that realises a given SCR at load split `k`.
pub fn x_from_scr(scr: f64, k: f64) -> f64 {
    1.0 / (scr * k * (1.0 - k))
}
