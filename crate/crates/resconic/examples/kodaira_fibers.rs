//! Kodaira fiber graphs: component multiplicities recovered as the
//! primitive null vector of the intersection matrix, plus a DOT rendering.
//!
//! Run with `cargo run --example kodaira_fibers`.

use resconic::kodaira::{build_fiber_graph, fiber_multiplicities};
use resconic::KodairaType;

fn main() {
    println!("type   components  euler  multiplicities");
    for t in KodairaType::standard_range() {
        let g = build_fiber_graph(&t).unwrap();
        let recomputed = fiber_multiplicities(&g.gram()).unwrap();
        assert_eq!(recomputed, g.multiplicities());
        println!(
            "{:<6} {:>8}  {:>5}  {:?}",
            t.to_string(),
            t.component_count(),
            t.euler_number(),
            g.multiplicities()
        );
    }

    let e8 = build_fiber_graph(&KodairaType::IIStar).unwrap();
    println!("\nII* as DOT:\n{}", e8.to_dot());

    // A path of two (-2)-curves is not a fiber: its matrix is nonsingular.
    let not_a_fiber = vec![vec![-2, 1], vec![1, -2]];
    println!("two-node path: {:?}", fiber_multiplicities(&not_a_fiber));
}
