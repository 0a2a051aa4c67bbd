//! The differential governor mode: two equal machines whose governors
//! answer at different speeds trade mechanical power through the tie. The
//! mode is real, decays at roughly the inverse of the inertia-weighted
//! average of the two governor time constants, and vanishes the moment one
//! governor leaves the system.
//!
//! ```bash
//! cargo run --example governor_mode
//! ```

use gridmodal::cli::load_scenario;
use gridmodal::report::g6;
use gridmodal::scenario::SystemBlock;
use gridmodal::sim::governor_mode_demo;

fn main() {
    // Tg1 = 0.5 s, Tg2 = 1.5 s, otherwise identical machines at k = 0.5
    let scenario = load_scenario("govmode").expect("bundled scenario");
    let Some(SystemBlock::TwoMachine(sys)) = scenario.system else { unreachable!() };
    let demo = governor_mode_demo(&sys, 12.0, 1e-3).expect("two governors present");

    println!("differential governor mode (Tg1 = 0.5 s, Tg2 = 1.5 s):");
    println!("  inertia-weighted Tg   {} s", g6(demo.tg_weighted));
    println!("  governor eigenvalue   {} 1/s", g6(demo.gov_eigenvalue));
    println!("  fitted decay rate     {} 1/s", g6(demo.fitted_rate));
    println!("  95% settling          {} s (3 Tg_bar would be {})", g6(demo.settle95_s), g6(3.0 * demo.tg_weighted));

    let diff = demo.series.channel("pm_diff_pu").unwrap();
    println!("\n  decay of the mechanical-power imbalance:");
    println!("  {:>6} {:>14}", "t (s)", "pm1-pm2 (pu)");
    for (i, v) in diff.iter().enumerate().step_by(1500) {
        println!("  {:>6} {:>14}", g6(i as f64 * demo.series.dt), g6(*v));
    }
}
