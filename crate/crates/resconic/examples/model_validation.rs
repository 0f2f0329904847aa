//! Loading and validating a surface model: curve roles, fiber membership
//! graphs, class sums and section incidences.
//!
//! Run with `cargo run --example model_validation`.

use resconic::corpus;
use resconic::SurfaceModel;

fn main() {
    for fixture in corpus::fixtures() {
        let model = SurfaceModel::from_json(fixture.json).unwrap();
        let report = model.validate();
        println!(
            "{}: {} ({} curves, {} declared fibers)",
            model.name,
            if report.valid { "valid" } else { "INVALID" },
            model.curves.len(),
            model.fibers.len()
        );
        for check in &report.checks {
            println!(
                "  [{}] {}",
                if check.passed { "ok" } else { "FAIL" },
                check.name
            );
        }
    }

    // The inventory of the extremal model: one section, nine fiber
    // components.
    let chain = SurfaceModel::from_json(corpus::fixtures()[0].json).unwrap();
    println!("\nnegative curves of {}:", chain.name);
    for curve in chain.negative_curve_inventory() {
        println!(
            "  {:<3} {:<22} {} ",
            curve.label,
            curve.class.to_string(),
            curve.role
        );
    }
}
