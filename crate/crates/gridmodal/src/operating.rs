//! Equilibrium solve and analytic linearization.
//!
//! The unknowns are the rotor-angle difference and the load resistance,
//! `(delta12, R_LD)`; voltages and the dispatch are given. Newton iteration
//! uses the same closed-form partial derivatives that later parameterize
//! the state-space model, so the Jacobian is exact.

use crate::error::{Error, Result};
use crate::netred::{electrical_power, load_voltage_phasor, reduced_coefficients, NetworkParams};

/// Generator power setpoints on the system base, pu.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dispatch {
    pub p_ref1: f64,
    pub p_ref2: f64,
}

impl Dispatch {
    pub fn validate(&self) -> Result<()> {
        if self.p_ref1 < 0.0 || self.p_ref2 < 0.0 || self.p_ref1 + self.p_ref2 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "dispatch must be non-negative with positive total, got ({}, {})",
                self.p_ref1, self.p_ref2
            )));
        }
        Ok(())
    }
}

/// Network topology without the load value; the equilibrium solve finds the
/// load resistance that absorbs the dispatch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetworkShape {
    pub x: f64,
    pub k: f64,
    pub v1: f64,
    pub v2: f64,
}

impl NetworkShape {
    pub fn with_load(&self, r_ld: f64) -> NetworkParams {
        NetworkParams { x: self.x, k: self.k, r_ld, v1: self.v1, v2: self.v2 }
    }
}

/// Solved equilibrium of the two-machine network.
///
/// Bus-3 angles follow the convention `delta_i3 = delta_i - delta_3` with
/// the generator angles split symmetrically around zero
/// (`delta_1 = +delta12/2`, `delta_2 = -delta12/2`).
#[derive(Clone, Copy, Debug)]
pub struct OperatingPoint {
    /// Rotor-angle difference, rad.
    pub delta12: f64,
    /// Load resistance absorbing the dispatch, pu.
    pub r_ld: f64,
    /// Load-bus voltage magnitude, pu.
    pub v3: f64,
    pub pe1: f64,
    pub pe2: f64,
    /// Generator-to-load bus angles, rad.
    pub delta13: f64,
    pub delta23: f64,
}

/// Partial derivatives of the generator powers at an equilibrium:
/// `k_lin_i = dPe_i/d delta12`, `d_i = dPe_i/d R_LD`.
#[derive(Clone, Copy, Debug)]
pub struct LinCoeffs {
    pub k_lin1: f64,
    pub k_lin2: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Evaluates the four linearization coefficients at an arbitrary point
/// `(delta12, R_LD)` of a network shape. Used both as the Newton Jacobian
/// and, at the solved equilibrium, as the model coefficients.
pub fn lin_coeffs_at(net: &NetworkParams, delta12: f64) -> LinCoeffs {
    let red = reduced_coefficients(net);
    let (pe1, pe2) = electrical_power(&red, net, delta12);
    let (s, c) = delta12.sin_cos();
    let vv = net.v1 * net.v2;
    let d = red.dcal;
    LinCoeffs {
        k_lin1: vv * (-red.g12 * s + red.b12 * c),
        k_lin2: vv * (-red.g12 * s - red.b12 * c),
        d1: (pe1 * (d - 2.0) + vv / net.x * s) / (d * net.r_ld),
        d2: (pe2 * (d - 2.0) - vv / net.x * s) / (d * net.r_ld),
    }
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// Solves `Pe1 = Pref1`, `Pe2 = Pref2` for `(delta12, R_LD)`.
///
/// Newton with the analytic Jacobian, damped by step halving whenever the
/// residual norm fails to decrease or the step leaves the physical domain.
/// The initial guess `delta12 = 0`, `R_LD = V1 V2 / (Pref1 + Pref2)` selects
/// the high-voltage root of the load flow. The 2x2 linear solve uses
/// Cramer's rule, which keeps perfectly symmetric problems on the
/// `delta12 = 0` axis to the last bit.
pub fn solve_operating_point(shape: &NetworkShape, dispatch: &Dispatch) -> Result<OperatingPoint> {
    dispatch.validate()?;
    shape.with_load(1.0).validate()?;

    let mut delta = 0.0_f64;
    let mut r = shape.v1 * shape.v2 / (dispatch.p_ref1 + dispatch.p_ref2);
    let residual = |delta: f64, r: f64| -> (f64, f64) {
        let net = shape.with_load(r);
        let red = reduced_coefficients(&net);
        let (pe1, pe2) = electrical_power(&red, &net, delta);
        (pe1 - dispatch.p_ref1, pe2 - dispatch.p_ref2)
    };

    let (mut f1, mut f2) = residual(delta, r);
    let mut norm = f1.abs().max(f2.abs());
    let mut iterations = 0;
    for iter in 0..NEWTON_MAX_ITER {
        iterations = iter;
        if norm <= NEWTON_TOL {
            break;
        }
        let j = lin_coeffs_at(&shape.with_load(r), delta);
        let det = j.k_lin1 * j.d2 - j.d1 * j.k_lin2;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Infeasible { iterations: iter, residual: norm });
        }
        // Cramer's rule on J * step = -F
        let mut step_d = (-f1 * j.d2 - j.d1 * -f2) / det;
        let mut step_r = (j.k_lin1 * -f2 - -f1 * j.k_lin2) / det;

        // halve the step until the residual shrinks and R_LD stays positive
        let mut accepted = false;
        for _ in 0..30 {
            let (nd, nr) = (delta + step_d, r + step_r);
            if nr > 0.0 && nd.abs() < std::f64::consts::FRAC_PI_2 {
                let (g1, g2) = residual(nd, nr);
                let gnorm = g1.abs().max(g2.abs());
                if gnorm < norm {
                    delta = nd;
                    r = nr;
                    f1 = g1;
                    f2 = g2;
                    norm = gnorm;
                    accepted = true;
                    break;
                }
            }
            step_d *= 0.5;
            step_r *= 0.5;
        }
        if !accepted {
            return Err(Error::Infeasible { iterations: iter, residual: norm });
        }
    }
    if norm > NEWTON_TOL {
        return Err(Error::Infeasible { iterations, residual: norm });
    }

    let net = shape.with_load(r);
    let red = reduced_coefficients(&net);
    let (pe1, pe2) = electrical_power(&red, &net, delta);
    // recover the bus-3 quantities from the full 3-bus solve
    let v1 = nalgebra::Complex::from_polar(shape.v1, delta / 2.0);
    let v2 = nalgebra::Complex::from_polar(shape.v2, -delta / 2.0);
    let v3 = load_voltage_phasor(&net, v1, v2);
    let delta3 = v3.arg();
    Ok(OperatingPoint {
        delta12: delta,
        r_ld: r,
        v3: v3.norm(),
        pe1,
        pe2,
        delta13: delta / 2.0 - delta3,
        delta23: -delta / 2.0 - delta3,
    })
}

/// Linearization coefficients at a solved operating point.
pub fn linearize(net: &NetworkParams, op: &OperatingPoint) -> LinCoeffs {
    debug_assert!((net.r_ld - op.r_ld).abs() <= 1e-9 * (1.0 + op.r_ld.abs()));
    lin_coeffs_at(net, op.delta12)
}

/// Load sensitivity of the single-machine topology (generator feeding a
/// resistive load through one reactance):
/// `d1 = V1^2 (X^2 - R^2) / (R^2 + X^2)^2`.
pub fn single_load_sensitivity(v1: f64, x: f64, r_ld0: f64) -> f64 {
    let q = r_ld0 * r_ld0 + x * x;
    v1 * v1 * (x * x - r_ld0 * r_ld0) / (q * q)
}

/// Load resistance at which the single-machine topology delivers `p_ref`:
/// the larger root of `Pe = V^2 R / (R^2 + X^2)`, i.e. the high-voltage
/// solution. Fails when the dispatch exceeds the maximum power transfer
/// `V^2 / (2X)`.
pub fn solve_single_load(v1: f64, x: f64, p_ref: f64) -> Result<f64> {
    if p_ref <= 0.0 {
        return Err(Error::InvalidParams(format!("p_ref must be > 0, got {p_ref}")));
    }
    let disc = (v1 * v1 / p_ref).powi(2) - 4.0 * x * x;
    if disc < 0.0 {
        return Err(Error::Infeasible { iterations: 0, residual: p_ref - v1 * v1 / (2.0 * x) });
    }
    Ok((v1 * v1 / p_ref + disc.sqrt()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netred::electrical_power_dform;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn symmetric_shape(x: f64) -> NetworkShape {
        NetworkShape { x, k: 0.5, v1: 1.0, v2: 1.0 }
    }

    #[test]
    fn benchmark_operating_point() {
        let op = solve_operating_point(
            &symmetric_shape(1.0),
            &Dispatch { p_ref1: 0.5, p_ref2: 0.5 },
        )
        .unwrap();
        assert_eq!(op.delta12, 0.0); // symmetry preserved exactly
        assert_relative_eq!(op.r_ld, 0.9330127018922193, max_relative = 1e-10);
        assert_relative_eq!(op.v3, 0.9659258262890684, max_relative = 1e-10);
        assert_relative_eq!(op.delta13.to_degrees(), 15.0, epsilon = 1e-9);
        assert_relative_eq!(op.delta23.to_degrees(), 15.0, epsilon = 1e-9);
        assert_abs_diff_eq!(op.pe1, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn no_load_limit() {
        let op = solve_operating_point(
            &symmetric_shape(1.0),
            &Dispatch { p_ref1: 1e-9, p_ref2: 1e-9 },
        )
        .unwrap();
        assert_eq!(op.delta12, 0.0);
        assert!(1.0 / op.r_ld < 1e-8); // load conductance -> 0
    }

    #[test]
    fn asymmetric_split_solves_with_tight_residuals() {
        // case-2 network: k = 0.25 at SCR = 4
        let shape = NetworkShape { x: 4.0 / 3.0, k: 0.25, v1: 1.0, v2: 1.0 };
        let op = solve_operating_point(&shape, &Dispatch { p_ref1: 0.5, p_ref2: 0.5 }).unwrap();
        assert!(op.delta12 != 0.0);
        assert_relative_eq!(op.delta12.to_degrees(), -21.6246339, epsilon = 1e-5);
        assert_relative_eq!(op.r_ld, 0.9045084971874697, max_relative = 1e-9);
        let net = shape.with_load(op.r_ld);
        let (pe1, pe2) = electrical_power_dform(&net, op.delta12);
        assert_abs_diff_eq!(pe1, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(pe2, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn infeasible_below_scr_two() {
        // at SCR = 2 the full-dispatch load flow is exactly critical;
        // anything weaker has no solution
        let shape = symmetric_shape(2.2);
        let err = solve_operating_point(&shape, &Dispatch { p_ref1: 0.5, p_ref2: 0.5 });
        assert!(matches!(err, Err(Error::Infeasible { .. })));
    }

    #[test]
    fn linearize_at_benchmark_point() {
        let shape = symmetric_shape(1.0);
        let op = solve_operating_point(&shape, &Dispatch { p_ref1: 0.5, p_ref2: 0.5 }).unwrap();
        let lin = linearize(&shape.with_load(op.r_ld), &op);
        assert_relative_eq!(lin.k_lin1, 0.9330127018922194, max_relative = 1e-9);
        assert_relative_eq!(lin.k_lin2, -0.9330127018922194, max_relative = 1e-9);
        // symmetric point: sine term vanishes, d1 = d2 = Pe0 (D-2)/(D R)
        let d = shape.with_load(op.r_ld).dcal();
        let expect = 0.5 * (d - 2.0) / (d * op.r_ld);
        assert_relative_eq!(lin.d1, expect, max_relative = 1e-12);
        assert_relative_eq!(lin.d2, expect, max_relative = 1e-12);
        assert_relative_eq!(lin.d1, -0.4641016151377548, max_relative = 1e-9);
    }

    #[test]
    fn coefficients_match_finite_differences() {
        let net = NetworkParams { x: 0.8, k: 0.35, r_ld: 1.3, v1: 1.02, v2: 0.98 };
        let delta = 0.31;
        let lin = lin_coeffs_at(&net, delta);
        let h = 1e-6;
        let pe = |net: &NetworkParams, d: f64| {
            let red = reduced_coefficients(net);
            electrical_power(&red, net, d)
        };
        let (p1p, p2p) = pe(&net, delta + h);
        let (p1m, p2m) = pe(&net, delta - h);
        assert_relative_eq!(lin.k_lin1, (p1p - p1m) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(lin.k_lin2, (p2p - p2m) / (2.0 * h), max_relative = 1e-6);
        let (q1p, q2p) = pe(&NetworkParams { r_ld: net.r_ld + h, ..net }, delta);
        let (q1m, q2m) = pe(&NetworkParams { r_ld: net.r_ld - h, ..net }, delta);
        assert_relative_eq!(lin.d1, (q1p - q1m) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(lin.d2, (q2p - q2m) / (2.0 * h), max_relative = 1e-6);
    }

    #[test]
    fn single_load_sensitivity_values() {
        // maximum power transfer point
        assert_abs_diff_eq!(single_load_sensitivity(1.0, 0.5, 0.5), 0.0);
        // direct evaluation: (0.0625 - 1) / 1.0625^2
        assert_relative_eq!(
            single_load_sensitivity(1.0, 0.25, 1.0),
            -0.9375 / (1.0625 * 1.0625),
            max_relative = 1e-14
        );
        // resistive-dominated limit: d1 ~ -V^2/R^2
        assert_relative_eq!(
            single_load_sensitivity(1.0, 0.01, 100.0),
            -1.0 / 1e4,
            max_relative = 1e-4
        );
        // cross-check against finite difference of Pe = V^2 R/(R^2+X^2)
        let (v, x, r) = (1.03, 0.4, 1.2);
        let pe = |r: f64| v * v * r / (r * r + x * x);
        let h = 1e-6;
        assert_relative_eq!(
            single_load_sensitivity(v, x, r),
            (pe(r + h) - pe(r - h)) / (2.0 * h),
            max_relative = 1e-6
        );
    }

    #[test]
    fn single_load_solve() {
        // V=1, X=0.25, Pref=0.5: R^2 - 2R + 0.0625 = 0, larger root
        let r = solve_single_load(1.0, 0.25, 0.5).unwrap();
        let pe = r / (r * r + 0.0625);
        assert_relative_eq!(pe, 0.5, max_relative = 1e-12);
        assert!(r > 0.25);
        // beyond maximum power transfer
        assert!(matches!(solve_single_load(1.0, 0.5, 1.01), Err(Error::Infeasible { .. })));
    }
}
