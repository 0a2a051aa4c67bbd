//! A complete two-machine study system: network shape, machine pair,
//! dispatch and base. Bridges the equilibrium solve to model assembly and
//! knows how each sweepable parameter maps onto itself.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::models::{build_two_machine, MachineKind, MachineParams, StateSpaceModel};
use crate::netred::NetworkParams;
use crate::operating::{
    linearize, solve_operating_point, Dispatch, LinCoeffs, NetworkShape, OperatingPoint,
};
use crate::perunit::{scr, BaseSystem};

#[derive(Clone, Copy, Debug)]
pub struct TwoMachineSystem {
    pub base: BaseSystem,
    pub x: f64,
    pub k: f64,
    pub v1: f64,
    pub v2: f64,
    pub m1: MachineParams,
    pub m2: MachineParams,
    pub dispatch: Dispatch,
}

/// Equilibrium bundle: the solved network, operating point and the
/// linearization coefficients evaluated there.
#[derive(Clone, Copy, Debug)]
pub struct SolvedSystem {
    pub net: NetworkParams,
    pub op: OperatingPoint,
    pub lin: LinCoeffs,
}

impl TwoMachineSystem {
    pub fn shape(&self) -> NetworkShape {
        NetworkShape { x: self.x, k: self.k, v1: self.v1, v2: self.v2 }
    }

    pub fn scr(&self) -> f64 {
        scr(self.x, self.k)
    }

    pub fn solve(&self) -> Result<SolvedSystem> {
        let op = solve_operating_point(&self.shape(), &self.dispatch)?;
        let net = self.shape().with_load(op.r_ld);
        let lin = linearize(&net, &op);
        Ok(SolvedSystem { net, op, lin })
    }

    pub fn model(&self) -> Result<StateSpaceModel> {
        let solved = self.solve()?;
        self.model_at(&solved)
    }

    /// Assembles the model at an already-solved equilibrium; lets sweeps
    /// over pure machine parameters skip the Newton solve.
    pub fn model_at(&self, solved: &SolvedSystem) -> Result<StateSpaceModel> {
        build_two_machine(&self.m1, &self.m2, &solved.lin, &self.base)
    }

    /// Returns a copy with one named parameter replaced.
    pub fn with_parameter(&self, param: SweepParameter, value: f64) -> Result<Self> {
        let mut sys = *self;
        fn machine(m: &mut MachineParams) -> &mut MachineKind {
            &mut m.kind
        }
        match param {
            SweepParameter::Scr => {
                if !(value > 0.0) {
                    return Err(Error::InvalidParams(format!("SCR must be > 0, got {value}")));
                }
                sys.x = crate::perunit::x_from_scr(value, sys.k);
            }
            SweepParameter::K => sys.k = value,
            SweepParameter::H1 | SweepParameter::H2 => {
                let m = if param == SweepParameter::H1 { &mut sys.m1 } else { &mut sys.m2 };
                match machine(m) {
                    MachineKind::GcSg { h, .. } => *h = value,
                    MachineKind::Gfm { h_virtual, .. } => *h_virtual = value,
                }
            }
            SweepParameter::D1 | SweepParameter::D2 => {
                let m = if param == SweepParameter::D1 { &mut sys.m1 } else { &mut sys.m2 };
                match machine(m) {
                    MachineKind::GcSg { d_pu, .. } => *d_pu = value,
                    // a grid-forming converter's damping is 1/droop
                    MachineKind::Gfm { r_droop_pu, .. } => *r_droop_pu = 1.0 / value,
                }
            }
            SweepParameter::R1 | SweepParameter::R2 => {
                let m = if param == SweepParameter::R1 { &mut sys.m1 } else { &mut sys.m2 };
                match machine(m) {
                    MachineKind::GcSg { r_pu, .. } => *r_pu = value,
                    MachineKind::Gfm { r_droop_pu, .. } => *r_droop_pu = value,
                }
            }
            SweepParameter::Tg1 | SweepParameter::Tg2 => {
                let m = if param == SweepParameter::Tg1 { &mut sys.m1 } else { &mut sys.m2 };
                match machine(m) {
                    MachineKind::GcSg { tg, .. } => *tg = value,
                    MachineKind::Gfm { .. } => {
                        return Err(Error::InvalidParams(format!(
                            "{param} does not exist on a grid-forming machine"
                        )))
                    }
                }
            }
        }
        Ok(sys)
    }
}

/// Parameters a root-locus sweep can vary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    H1,
    H2,
    D1,
    D2,
    R1,
    R2,
    Tg1,
    Tg2,
    Scr,
    K,
}

impl SweepParameter {
    /// Whether changing the parameter moves the operating point. Network
    /// strength and load split do; machine dynamics do not.
    pub fn requires_resolve(&self) -> bool {
        matches!(self, SweepParameter::Scr | SweepParameter::K)
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepParameter::H1 => "H1",
            SweepParameter::H2 => "H2",
            SweepParameter::D1 => "D1",
            SweepParameter::D2 => "D2",
            SweepParameter::R1 => "R1",
            SweepParameter::R2 => "R2",
            SweepParameter::Tg1 => "Tg1",
            SweepParameter::Tg2 => "Tg2",
            SweepParameter::Scr => "SCR",
            SweepParameter::K => "k",
        };
        f.write_str(s)
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(SweepParameter::H1),
            "h2" => Ok(SweepParameter::H2),
            "d1" => Ok(SweepParameter::D1),
            "d2" => Ok(SweepParameter::D2),
            "r1" => Ok(SweepParameter::R1),
            "r2" => Ok(SweepParameter::R2),
            "tg1" => Ok(SweepParameter::Tg1),
            "tg2" => Ok(SweepParameter::Tg2),
            "scr" => Ok(SweepParameter::Scr),
            "k" => Ok(SweepParameter::K),
            other => Err(Error::InvalidParams(format!(
                "unknown sweep parameter '{other}' (expected one of H1 H2 D1 D2 R1 R2 Tg1 Tg2 SCR k)"
            ))),
        }
    }
}
