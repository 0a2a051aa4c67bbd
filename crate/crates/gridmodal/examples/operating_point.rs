//! Newton solve of the nonlinear equilibrium: the load resistance and
//! rotor-angle difference that absorb a given dispatch, with the bus-3
//! quantities recovered from the full 3-bus solve.
//!
//! ```bash
//! cargo run --example operating_point
//! ```

use gridmodal::operating::{solve_operating_point, Dispatch, NetworkShape};
use gridmodal::perunit::x_from_scr;
use gridmodal::report::g6;

fn main() {
    // symmetric half-load split at SCR 4: the weak-grid base case
    let shape = NetworkShape { x: x_from_scr(4.0, 0.5), k: 0.5, v1: 1.0, v2: 1.0 };
    let dispatch = Dispatch { p_ref1: 0.5, p_ref2: 0.5 };
    let op = solve_operating_point(&shape, &dispatch).expect("feasible dispatch");

    println!("symmetric system, SCR 4, dispatch 0.5/0.5:");
    println!("  R_LD     {} pu", g6(op.r_ld));
    println!("  |V3|     {} pu", g6(op.v3));
    println!("  delta12  {} deg", g6(op.delta12.to_degrees()));
    println!("  delta13  {} deg", g6(op.delta13.to_degrees()));
    println!("  delta23  {} deg", g6(op.delta23.to_degrees()));

    // the same dispatch with the load pushed towards generator 1
    let asym = NetworkShape { x: x_from_scr(4.0, 0.25), k: 0.25, v1: 1.0, v2: 1.0 };
    let op2 = solve_operating_point(&asym, &dispatch).expect("feasible dispatch");
    println!("\nasymmetric split k = 0.25 (generator 2 is electrically farther):");
    println!("  R_LD     {} pu", g6(op2.r_ld));
    println!("  |V3|     {} pu", g6(op2.v3));
    println!("  delta12  {} deg", g6(op2.delta12.to_degrees()));
    println!("  delta13  {} deg", g6(op2.delta13.to_degrees()));
    println!("  delta23  {} deg", g6(op2.delta23.to_degrees()));

    // network strength sweep down to the feasibility edge
    println!("\nload flow vs network strength (full dispatch):");
    for scr in [8.0, 4.0, 3.0, 2.5, 2.1, 1.9] {
        let shape = NetworkShape { x: x_from_scr(scr, 0.5), k: 0.5, v1: 1.0, v2: 1.0 };
        match solve_operating_point(&shape, &dispatch) {
            Ok(op) => println!("  SCR {:>4}: |V3| = {} pu", g6(scr), g6(op.v3)),
            Err(e) => println!("  SCR {:>4}: {e}", g6(scr)),
        }
    }
}
