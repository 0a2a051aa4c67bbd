//! Kron reduction of the 3-bus network, step by step: the full admittance
//! matrix, the closed-form reduced coefficients, the generator powers and
//! the load voltage, with the power balance closing the loop.
//!
//! ```bash
//! cargo run --example network_reduction
//! ```

use gridmodal::netred::{
    build_admittance, electrical_power, electrical_power_dform, kron_reduce, load_voltage,
    reduced_coefficients, NetworkParams,
};
use gridmodal::report::g6;

fn main() {
    // the weak-grid study network: SCR 4 with the load at the midpoint
    let net = NetworkParams { x: 1.0, k: 0.5, r_ld: 0.9330127018922193, v1: 1.0, v2: 1.0 };
    net.validate().expect("valid network");

    let cfmt = |c: nalgebra::Complex<f64>| {
        format!("{} {}{}j", g6(c.re), if c.im < 0.0 { "-" } else { "+" }, g6(c.im.abs()))
    };
    let y = build_admittance(&net);
    println!("3-bus admittance matrix (pu):");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| cfmt(y[(i, j)])).collect();
        println!("  [{}]", row.join(", "));
    }

    let reduced = kron_reduce(&y, 2).expect("load bus eliminated");
    let closed = reduced_coefficients(&net);
    println!("\nreduced 2x2 (complex Kron vs closed forms):");
    println!("  Y'11 = {}   closed G'11 = {}, B'11 = {}",
        cfmt(reduced[(0, 0)]), g6(closed.g11), g6(closed.b11));
    println!("  Y'12 = {}   closed G'12 = {}, B'12 = {}",
        cfmt(reduced[(0, 1)]), g6(closed.g12), g6(closed.b12));
    println!("  voltage stiffness Dcal = {}", g6(closed.dcal));

    println!("\ngenerator powers over the angle difference:");
    println!("  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}", "d12 (deg)", "Pe1 (pu)", "Pe2 (pu)", "|V3| (pu)", "balance");
    for deg in [-20.0, -10.0, 0.0, 10.0, 20.0] {
        let d12 = f64::to_radians(deg);
        let (pe1, pe2) = electrical_power(&closed, &net, d12);
        let (q1, q2) = electrical_power_dform(&net, d12);
        assert!((pe1 - q1).abs() < 1e-12 && (pe2 - q2).abs() < 1e-12);
        let v3 = load_voltage(&net, d12);
        let balance = pe1 + pe2 - v3 * v3 / net.r_ld;
        println!(
            "  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
            g6(deg), g6(pe1), g6(pe2), g6(v3), g6(balance)
        );
    }
}
