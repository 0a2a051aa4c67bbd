//! Swing-mode frequency against network strength, full model vs the
//! two-mass closed form `fn = sqrt((1/M1 + 1/M2) V^2/X) / 2 pi`. The
//! operating point is re-solved at every SCR because network strength
//! moves the equilibrium.
//!
//! ```bash
//! cargo run --example scr_sweep
//! ```

use gridmodal::cli::load_scenario;
use gridmodal::modal::{sweep, swing_mode_prediction, ModeLabel, SweepOptions};
use gridmodal::perunit::{momentum, x_from_scr};
use gridmodal::report::g6;
use gridmodal::scenario::SystemBlock;
use gridmodal::system::SweepParameter;

fn main() {
    // symmetric H = 1 s machines; scaling by 1/sqrt(H) generalizes the curve
    let scenario = load_scenario("swing-scr").expect("bundled scenario");
    let Some(SystemBlock::TwoMachine(sys)) = scenario.system else { unreachable!() };
    let settings = scenario.sweep.expect("sweep block");
    let result = sweep(&sys, SweepParameter::Scr, &settings.grid(), &SweepOptions::default());

    let m = momentum(1.0, 0.5, &sys.base);
    println!("swing mode vs short-circuit ratio (H1 = H2 = 1 s):");
    println!(
        "  {:>6} {:>12} {:>12} {:>9} {:>8}",
        "SCR", "full (Hz)", "pred (Hz)", "err (%)", "zeta"
    );
    let swing = result
        .trajectories
        .iter()
        .find(|t| t.label == ModeLabel::Swing)
        .expect("swing trajectory");
    for s in &swing.samples {
        let pred = swing_mode_prediction(m, m, 1.0, x_from_scr(s.value, 0.5));
        println!(
            "  {:>6} {:>12} {:>12} {:>9} {:>8}",
            g6(s.value),
            g6(s.freq_hz),
            g6(pred),
            g6((pred - s.freq_hz) / s.freq_hz * 100.0),
            g6(s.zeta),
        );
    }
    println!("\nthe prediction tracks the full model within a few percent for");
    println!("SCR >= 4 and drifts as the network weakens; below SCR = 2 the");
    println!("load flow has no solution at this dispatch.");
}
