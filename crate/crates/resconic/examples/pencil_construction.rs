//! Building conic classes from plane pencils whose base points sit inside
//! the blown-up locus, and checking the result against the enumerator.
//!
//! Run with `cargo run --example pencil_construction`.

use resconic::conic_bundles::{enumerate_conic_bundles, enumerate_singular_fibers};
use resconic::construction::conic_class_from_pencil;
use resconic::corpus;
use resconic::{PlanePencil, SurfaceModel};

fn main() {
    let model = SurfaceModel::from_json(corpus::illustration_json()).unwrap();
    println!(
        "model {} with {} declared pencils",
        model.name,
        model.pencils.len()
    );

    for pencil in &model.pencils {
        let certified = conic_class_from_pencil(&model, pencil).unwrap();
        println!("\npencil {:?} base {:?}", pencil.kind, pencil.base);
        println!("  class {}", certified.class);
        for fiber in enumerate_singular_fibers(&model, &certified) {
            let support: Vec<String> = fiber
                .support
                .iter()
                .map(|(l, m)| {
                    if *m == 1 {
                        l.clone()
                    } else {
                        format!("{m}{l}")
                    }
                })
                .collect();
            println!(
                "  singular fiber {} = {}",
                fiber.fiber_type,
                support.join(" + ")
            );
        }
        // The produced class reappears in the bound-limited search.
        let d: i64 = certified.class.coeffs_i64().unwrap()[0];
        let found = enumerate_conic_bundles(&model, d)
            .iter()
            .any(|b| b.class.class == certified.class);
        println!("  found by enumerate_conic_bundles(bound {d}): {found}");
    }

    // A pencil based outside the nine points is refused.
    let bad = PlanePencil::lines_through(11);
    println!(
        "\nlines through point 11: {:?}",
        conic_class_from_pencil(&model, &bad).err()
    );
}
