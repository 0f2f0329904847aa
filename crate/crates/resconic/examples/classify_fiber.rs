//! Classifying supported divisors into the five conic-bundle fiber shapes.
//!
//! Run with `cargo run --example classify_fiber`.

use resconic::conic_bundles::classify_fiber;
use resconic::corpus;
use resconic::{NamedCurve, SurfaceModel};

fn show(model: &SurfaceModel, support: &[(&str, i64)]) {
    let resolved: Vec<(&NamedCurve, i64)> = support
        .iter()
        .map(|(l, m)| (model.curve(l).expect(l), *m))
        .collect();
    let pretty: Vec<String> = support
        .iter()
        .map(|(l, m)| {
            if *m == 1 {
                l.to_string()
            } else {
                format!("{m}{l}")
            }
        })
        .collect();
    match classify_fiber(&resolved) {
        Ok(t) => println!("  {:<40} type {t}", pretty.join(" + ")),
        Err(e) => println!("  {:<40} {e}", pretty.join(" + ")),
    }
}

fn main() {
    let chain = SurfaceModel::from_json(corpus::fixtures()[0].json).unwrap();
    println!("on {}:", chain.name);
    show(
        &chain,
        &[
            ("E9", 2),
            ("E8", 2),
            ("E7", 2),
            ("E6", 2),
            ("E5", 2),
            ("E4", 2),
            ("E3", 2),
            ("E2", 1),
            ("L", 1),
        ],
    );
    // A lone (-1)-curve is not a fiber.
    show(&chain, &[("E9", 1)]);

    let star = SurfaceModel::from_json(corpus::fixtures()[4].json).unwrap();
    println!("on {}:", star.name);
    show(&star, &[("E2", 1), ("L3", 1), ("E3", 1)]);
    show(&star, &[("F4", 2), ("E4", 1), ("L2", 1)]);
    show(
        &star,
        &[("I1", 2), ("H1", 2), ("G1", 2), ("F1", 1), ("L1", 1)],
    );
    // Wrong multiplicity pattern.
    show(&star, &[("F4", 1), ("E4", 1), ("L2", 1)]);
}
