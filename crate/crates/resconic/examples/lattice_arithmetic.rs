//! Intersection arithmetic in the rank-10 lattice: pairings, adjunction,
//! Riemann-Roch and the numeric part of the conic-class test.
//!
//! Run with `cargo run --example lattice_arithmetic`.

use resconic::DivisorClass;

fn main() {
    let l = DivisorClass::line();
    let e1 = DivisorClass::exceptional(1);
    let k = DivisorClass::canonical();
    let fiber = DivisorClass::anticanonical();

    println!("basis pairings:");
    println!("  l·l   = {}", l.intersect(&l));
    println!("  e1·e1 = {}", e1.intersect(&e1));
    println!("  l·e1  = {}", l.intersect(&e1));
    println!("  K·K   = {}", k.intersect(&k));

    let classes = [
        DivisorClass::exceptional(9),
        fiber.clone(),
        DivisorClass::from_i64([1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
        DivisorClass::from_i64([2, 1, 1, 1, 1, 0, 0, 0, 0, 0]),
        DivisorClass::from_i64([4, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    ];
    println!("\nclass                      D²   D·K  genus  χ     conic-numeric");
    for d in &classes {
        println!(
            "  {:<24} {:>3}  {:>3}  {:>4}  {:>3}   {}",
            d.to_string(),
            d.self_intersection(),
            d.intersect(&k),
            d.arithmetic_genus(),
            d.riemann_roch_chi(),
            d.is_conic_class_numeric()
        );
    }
}
