//! Small-signal electromechanical models of one- and two-machine
//! microgrids mixing governor-controlled synchronous generators (GC-SG)
//! and droop-based grid-forming (GFM) converters.
//!
//! The toolkit builds the linearized state-space model of a study system,
//! solves its nonlinear operating point, computes eigenstructure with
//! participation-factor mode labels, simulates step responses with exact
//! zero-order-hold discretization, and evaluates frequency-security
//! metrics (windowed RoCoF, nadir) on single-bus aggregates.
//!
//! ## Start with the examples
//!
//! Each major capability has one runnable example:
//!
//! ```text
//! examples/
//! ├── network_reduction.rs   # 3-bus admittance, Kron reduction, power balance
//! ├── operating_point.rs     # Newton equilibrium solve, feasibility edge
//! ├── modal_tables.rs        # eigenvalues/damping of the six study cases
//! ├── governor_tuning.rs     # critical-damping droop per machine technology
//! ├── gfm_equivalence.rs     # droop law as virtual inertia + damping
//! ├── inertia_sweep.rs       # swing damping vs inertia, GC-SG vs GFM
//! ├── scr_sweep.rs           # swing frequency vs network strength + closed form
//! ├── step_response.rs       # -1% load step time-domain responses
//! ├── governor_mode.rs       # differential governor mode decay
//! └── rocof_study.rs         # RoCoF/nadir: conventional vs low-H low-droop
//! ```
//!
//! ```bash
//! cargo run --example modal_tables
//! cargo run --example rocof_study
//! ```
//!
//! ## Library layout
//!
//! * [`netred`] - 3-bus admittance matrix, Kron reduction, reduced
//!   coefficients, electrical powers and load voltage.
//! * [`operating`] - Newton solve of the equilibrium and the analytic
//!   linearization coefficients.
//! * [`perunit`] - per-unit/SI conversions and the short-circuit ratio.
//! * [`models`] - state-space assembly: single GC-SG, GFM equivalence,
//!   generic two-machine system with any machine mix.
//! * [`modal`] - eigendecomposition, participation factors, mode
//!   classification, parameter sweeps.
//! * [`sim`] - zero-order-hold time-domain simulation, governor-mode
//!   demo, RoCoF study.
//! * [`system`] - a complete two-machine study system and its sweepable
//!   parameters.
//! * [`scenario`] - TOML scenario schema and the bundled fixtures.
//! * [`report`] - deterministic number/CSV/SVG formatting.
//! * [`cli`] - the command layer behind the `gridmodal` binary.
//!
//! A thin binary exposes the same analyses as subcommands
//! (`gridmodal <op|modal|sweep|sim|rocof> <scenario>`); scenarios are TOML
//! files, with the bundled study cases addressable by name (`case1a`,
//! `case2d`, `rocof-lowH`, ...).
//!
//! Conventions: powers in per-unit on the system base, speeds in rad/s
//! internally with Hz in reports, angles in radians internally with
//! degrees in reports. The default base frequency of the bundled
//! scenarios is 50 Hz; it is a scenario key, not a constant.

// validation guards use `!(x > 0.0)` on purpose: it rejects NaN along with
// non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod modal;
pub mod models;
pub mod netred;
pub mod operating;
pub mod perunit;
pub mod report;
pub mod scenario;
pub mod sim;
pub mod system;

pub use error::{Error, Result};
