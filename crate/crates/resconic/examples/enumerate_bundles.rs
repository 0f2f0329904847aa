//! Enumerating conic bundles and their singular fibers over a model.
//!
//! Run with `cargo run --example enumerate_bundles`.

use resconic::conic_bundles::{
    enumerate_conic_bundles, enumerate_singular_fibers, verify_conic_class,
};
use resconic::corpus;
use resconic::{DivisorClass, SurfaceModel};

fn main() {
    // The mixed model: six A2 fibers and one A3 on the bundle of lines
    // through the first base point.
    let model = SurfaceModel::from_json(corpus::fixtures()[2].json).unwrap();
    let target = DivisorClass::from_i64([1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let certified = verify_conic_class(&target, &model).unwrap();
    println!("{}: singular fibers of |{}|", model.name, certified.class);
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
        println!("  {} = {}", fiber.fiber_type, support.join(" + "));
    }

    // Full search over the extremal model: a single conic bundle exists.
    let chain = SurfaceModel::from_json(corpus::fixtures()[0].json).unwrap();
    let bundles = enumerate_conic_bundles(&chain, 3);
    println!(
        "\n{}: {} conic bundle(s) with degree <= 3",
        chain.name,
        bundles.len()
    );
    for bundle in &bundles {
        println!(
            "  |{}| with {} singular fiber(s)",
            bundle.class.class,
            bundle.fibers.len()
        );
    }
}
