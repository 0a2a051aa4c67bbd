//! 3-bus network reduction.
//!
//! Two generators feed a resistive load through a split tie reactance:
//! bus 1 --(k X)-- bus 3 (load R_LD) --((1-k) X)-- bus 2. Eliminating the
//! load bus with Kron reduction leaves a 2x2 admittance whose entries have
//! closed forms in the voltage-stiffness term
//!
//! ```text
//! Dcal = (X k (k-1) / R_LD)^2 + 1
//! ```
//!
//! Both the reduced coefficients and the generator powers are implemented
//! twice (complex arithmetic and closed form) and cross-checked in debug
//! builds.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

/// Square matrix of complex admittances (conductance + j susceptance, pu).
pub type ComplexMatrix = DMatrix<Complex<f64>>;

/// Relative pivot tolerance for Kron elimination.
const KRON_PIVOT_TOL: f64 = 1e-12;

/// Topology and electrical parameters of the 3-bus network, per-unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetworkParams {
    /// Total tie reactance between the generator buses, pu.
    pub x: f64,
    /// Load split point along the tie, in (0, 1). The load sits at
    /// electrical distance `k X` from generator 1.
    pub k: f64,
    /// Load resistance, pu.
    pub r_ld: f64,
    /// Generator terminal voltage magnitudes, pu.
    pub v1: f64,
    pub v2: f64,
}

impl NetworkParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.x > 0.0) {
            return Err(Error::InvalidParams(format!("x must be > 0, got {}", self.x)));
        }
        if !(self.k > 0.0 && self.k < 1.0) {
            return Err(Error::InvalidParams(format!("k must lie in (0,1), got {}", self.k)));
        }
        if !(self.r_ld > 0.0) {
            return Err(Error::InvalidParams(format!("r_ld must be > 0, got {}", self.r_ld)));
        }
        if !(self.v1 > 0.0 && self.v2 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "voltages must be > 0, got v1={}, v2={}",
                self.v1, self.v2
            )));
        }
        Ok(())
    }

    /// Voltage-stiffness term of the reduced network.
    pub fn dcal(&self) -> f64 {
        let t = self.x * self.k * (self.k - 1.0) / self.r_ld;
        t * t + 1.0
    }
}

/// Kron-reduced 2x2 admittance, split into conductances and susceptances,
/// plus the voltage-stiffness term they share.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedNetwork {
    pub g11: f64,
    pub b11: f64,
    pub g12: f64,
    pub b12: f64,
    pub g22: f64,
    pub b22: f64,
    /// `(X k (k-1) / R_LD)^2 + 1`, >= 1; tends to 1 as the load vanishes.
    pub dcal: f64,
}

/// Nodal admittance matrix of the 3-bus network.
///
/// Diagonal entries sum the admittances connected to the bus, off-diagonal
/// entries are the negated branch admittances; branches are pure reactances
/// `j k X` and `j (1-k) X`, the load is `1/R_LD` at bus 3.
pub fn build_admittance(net: &NetworkParams) -> ComplexMatrix {
    let z = Complex::new(0.0, 0.0);
    let ya = Complex::new(0.0, -1.0 / (net.k * net.x)); // branch 1-3
    let yb = Complex::new(0.0, -1.0 / ((1.0 - net.k) * net.x)); // branch 2-3
    let yl = Complex::new(1.0 / net.r_ld, 0.0);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            ya, z, -ya, //
            z, yb, -yb, //
            -ya, -yb, ya + yb + yl,
        ],
    )
}

/// Eliminates one node from an admittance matrix:
/// `Y'[i][j] = Y[i][j] - Y[i][n] Y[n][j] / Y[n][n]`.
///
/// Fails when the pivot `Y[n][n]` is smaller than `1e-12` relative to the
/// largest entry; a node that weakly couples to everything cannot be
/// eliminated meaningfully.
pub fn kron_reduce(y: &ComplexMatrix, node: usize) -> Result<ComplexMatrix> {
    let n = y.nrows();
    assert_eq!(n, y.ncols(), "admittance matrix must be square");
    assert!(node < n, "node index out of range");
    let pivot = y[(node, node)];
    let scale = y.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if pivot.norm() <= KRON_PIVOT_TOL * scale {
        return Err(Error::SingularPivot { node, pivot: pivot.norm() });
    }
    let mut out = DMatrix::zeros(n - 1, n - 1);
    let keep: Vec<usize> = (0..n).filter(|&i| i != node).collect();
    for (r, &i) in keep.iter().enumerate() {
        for (c, &j) in keep.iter().enumerate() {
            out[(r, c)] = y[(i, j)] - y[(i, node)] * y[(node, j)] / pivot;
        }
    }
    Ok(out)
}

/// Closed forms of the reduced admittance entries.
pub fn reduced_coefficients(net: &NetworkParams) -> ReducedNetwork {
    let (x, k, r) = (net.x, net.k, net.r_ld);
    let d = net.dcal();
    let red = ReducedNetwork {
        g12: k * (1.0 - k) / (r * d),
        b12: 1.0 / (x * d),
        g11: (1.0 - k) * (1.0 - k) / (r * d),
        b11: (1.0 - k - d) / (k * x * d),
        g22: k * k / (r * d),
        b22: (k - d) / ((1.0 - k) * x * d),
        dcal: d,
    };
    debug_assert!({
        let y = kron_reduce(&build_admittance(net), 2).expect("valid network");
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
        close(red.g11, y[(0, 0)].re)
            && close(red.b11, y[(0, 0)].im)
            && close(red.g12, y[(0, 1)].re)
            && close(red.b12, y[(0, 1)].im)
            && close(red.g22, y[(1, 1)].re)
            && close(red.b22, y[(1, 1)].im)
    });
    red
}

/// Electrical power injected by each generator at rotor-angle difference
/// `delta12`, from the reduced admittance:
///
/// ```text
/// Pe1 = V1^2 G'11 + V1 V2 (G'12 cos d12 + B'12 sin d12)
/// Pe2 = V2^2 G'22 + V1 V2 (G'12 cos d12 - B'12 sin d12)
/// ```
pub fn electrical_power(red: &ReducedNetwork, net: &NetworkParams, delta12: f64) -> (f64, f64) {
    let (s, c) = delta12.sin_cos();
    let vv = net.v1 * net.v2;
    let pe1 = net.v1 * net.v1 * red.g11 + vv * (red.g12 * c + red.b12 * s);
    let pe2 = net.v2 * net.v2 * red.g22 + vv * (red.g12 * c - red.b12 * s);
    debug_assert!({
        let (q1, q2) = electrical_power_dform(net, delta12);
        (pe1 - q1).abs() <= 1e-12 * (1.0 + pe1.abs()) && (pe2 - q2).abs() <= 1e-12 * (1.0 + pe2.abs())
    });
    (pe1, pe2)
}

/// Same powers written directly in the voltage-stiffness term. The two
/// algebraic routes are kept public so tests can cross-assert them.
pub fn electrical_power_dform(net: &NetworkParams, delta12: f64) -> (f64, f64) {
    let (x, k, r) = (net.x, net.k, net.r_ld);
    let d = net.dcal();
    let (s, c) = delta12.sin_cos();
    let pe1 = net.v1 / d
        * (net.v1 * (1.0 - k) * (1.0 - k) / r + net.v2 * (k * (1.0 - k) / r * c + s / x));
    let pe2 = net.v2 / d * (net.v2 * k * k / r + net.v1 * (k * (1.0 - k) / r * c - s / x));
    (pe1, pe2)
}

/// Load-bus voltage magnitude: the electrical-distance-weighted phasor sum
/// of the two sources, sagged by `sqrt(Dcal)`.
pub fn load_voltage(net: &NetworkParams, delta12: f64) -> f64 {
    let k = net.k;
    let num = net.v1 * net.v1 * (1.0 - k) * (1.0 - k)
        + net.v2 * net.v2 * k * k
        + 2.0 * net.v1 * net.v2 * k * (1.0 - k) * delta12.cos();
    (num / net.dcal()).sqrt()
}

/// Load-bus voltage phasor given the generator phasors, from the zero
/// current injection at bus 3: `V3 = -(Y31 V1 + Y32 V2) / Y33`.
pub fn load_voltage_phasor(
    net: &NetworkParams,
    v1: Complex<f64>,
    v2: Complex<f64>,
) -> Complex<f64> {
    let y = build_admittance(net);
    -(y[(2, 0)] * v1 + y[(2, 1)] * v2) / y[(2, 2)]
}
