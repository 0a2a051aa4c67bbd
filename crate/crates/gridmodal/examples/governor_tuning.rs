//! Turbine-governor mode tuning across machine technologies: the droop
//! needed for critical damping (`R = Tg/H`) and the modal frequency it
//! lands on, evaluated at the corner values of typical parameter ranges.
//!
//! ```bash
//! cargo run --example governor_tuning
//! ```

use gridmodal::models::turbine_governor_summary;
use gridmodal::report::g6;

fn main() {
    let rows = [
        ("hydro", (0.2, 0.5), (3.0, 9.0)),
        ("steam", (0.2, 0.3), (4.0, 10.0)),
        ("gas/genset", (0.1, 0.3), (5.0, 9.0)),
        ("nuclear", (0.2, 0.4), (5.0, 8.0)),
        ("coal-fired", (0.2, 0.3), (4.0, 8.0)),
    ];
    println!("critical-damping tuning R = Tg/H at the range corners:");
    println!(
        "  {:<12} {:>9} {:>9} {:>15} {:>15}",
        "type", "Tg (s)", "H (s)", "R (pu)", "fn (Hz)"
    );
    for (name, (tg_lo, tg_hi), (h_lo, h_hi)) in rows {
        let r_lo = tg_lo / h_hi;
        let r_hi = tg_hi / h_lo;
        // at critical tuning the frequency depends on Tg alone
        let f_lo = turbine_governor_summary(h_hi, tg_hi / h_hi, tg_hi).fn_hz;
        let f_hi = turbine_governor_summary(h_lo, tg_lo / h_lo, tg_lo).fn_hz;
        println!(
            "  {:<12} {:>9} {:>9} {:>15} {:>15}",
            name,
            format!("{}-{}", g6(tg_lo), g6(tg_hi)),
            format!("{}-{}", g6(h_lo), g6(h_hi)),
            format!("{}-{}", g6(r_lo), g6(r_hi)),
            format!("{}-{}", g6(f_lo), g6(f_hi)),
        );
    }

    println!("\nthe trade-off on one machine (H = 4 s, Tg = 0.25 s):");
    println!("  {:>8} {:>10} {:>10} {:>10}", "R (pu)", "fn (Hz)", "zeta", "critical");
    for r in [0.01, 0.02, 0.05, 0.0625, 0.1, 0.2] {
        let s = turbine_governor_summary(4.0, r, 0.25);
        println!(
            "  {:>8} {:>10} {:>10} {:>10}",
            g6(r),
            g6(s.fn_hz),
            g6(s.zeta),
            s.critically_damped
        );
    }
    println!("\nlarger droop damps the governor mode but loosens frequency");
    println!("regulation; only a faster governor escapes the trade-off.");
}
