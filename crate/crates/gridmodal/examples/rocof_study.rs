//! Frequency security after a 25% generation loss: a conventional system
//! (H = 4 s, governor droop 0.05, secondary regulation) against a low-H,
//! low-droop alternative (H = 0.5 s, natural droop 0.02). The alternative
//! shows a higher instantaneous RoCoF but a far shallower nadir.
//!
//! ```bash
//! cargo run --example rocof_study
//! ```

use gridmodal::cli::load_scenario;
use gridmodal::report::g6;
use gridmodal::sim::{instantaneous_rocof, rocof_study};

fn main() {
    println!(
        "{:<22} {:>12} {:>12} {:>12} {:>12}",
        "system", "inst (Hz/s)", "50ms (Hz/s)", "500ms (Hz/s)", "nadir (Hz)"
    );
    for name in ["rocof-conventional", "rocof-lowH"] {
        let scenario = load_scenario(name).expect("bundled scenario");
        let settings = scenario.rocof.expect("rocof block");
        let (metrics, _trace) = rocof_study(
            &settings.system,
            settings.dp,
            settings.windows(),
            settings.t_end,
            settings.dt,
            &scenario.base,
        )
        .expect("simulation");
        let inst = instantaneous_rocof(settings.system.h_eq, settings.dp, scenario.base.f0);
        println!(
            "{:<22} {:>12} {:>12} {:>12} {:>12}",
            name,
            g6(inst),
            g6(metrics.rocof_w[0].1),
            g6(metrics.rocof_w[1].1),
            g6(metrics.nadir_hz),
        );
    }
    println!("\nthe low-inertia system spikes to a large RoCoF for a few tens of");
    println!("milliseconds, yet its strong damping bounds the excursion at a");
    println!("quarter of the conventional nadir; windowed protection relays");
    println!("never see the spike.");
}
