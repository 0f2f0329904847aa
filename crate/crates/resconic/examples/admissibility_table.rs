//! Admissible conic-bundle fiber types for a range of Kodaira
//! configurations.
//!
//! Run with `cargo run --example admissibility_table`.

use resconic::admissibility::admits;
use resconic::FiberConfiguration;

fn main() {
    let configs: Vec<Vec<&str>> = vec![
        vec!["II*", "II"],
        vec!["II*", "I1", "I1"],
        vec![
            "II", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1",
        ],
        vec!["IV", "II", "I1", "I1", "I1", "I1", "I1", "I1"],
        vec!["I7", "II", "I1", "I1", "I1"],
        vec!["I2*", "III", "I1"],
        vec!["III*", "I1", "I1", "I1"],
        vec!["I9", "I1", "I1", "I1"],
    ];
    println!("{:<22} rank  A2        An  D3  Dm", "configuration");
    for tags in configs {
        let config = FiberConfiguration::parse(&tags).unwrap();
        let rank = config.mw_rank().unwrap();
        let r = admits(&config).unwrap();
        println!(
            "{:<22} {:>4}  {:<8}  {:<3} {:<3} {:<3}",
            config.to_string(),
            rank,
            r.a2.to_string(),
            r.an,
            r.d3,
            r.dm
        );
    }
}
